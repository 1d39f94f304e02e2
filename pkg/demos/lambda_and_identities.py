"""Walkthrough: the Lambda coefficient system and the exact identities it
drives.

The table Lambda_R(alpha, .) is the unique solution of a polynomial identity
in the binomial basis; substituted into the cell machinery it produces the
interior annihilator (a p^E-scaled theta-power on the right side) and, for
alpha above the depth rho, a double sum that vanishes identically.
"""

from padicslopes.combinatorics import (
    build_interior_annihilator,
    build_rho_annihilator,
    ecal_of,
    lambda_defining_residual,
    lambda_coefficients,
    rho_of,
    rho_zero_row_identity,
    vartheta_profile,
    verify_vanishing_double_sum,
)

p, R, alpha = 5, 3, 7
table = lambda_coefficients(p, R, alpha)
print(f"Lambda table for p={p}, R={R}, alpha={alpha}:")
for beta in sorted(table.values):
    print(f"  beta={beta}: {table[beta]}")
print("defining-identity residual is zero:", all(c == 0 for c in lambda_defining_residual(table)))
print()

p, r, a = 5, 26, 2
sys71 = build_interior_annihilator(p, r, a)
print(f"interior annihilator at (p={p}, r={r}, alpha={a}):")
print(f"  target: {sys71.target}")
print(f"  column constants C_l: {dict(sorted(sys71.column_constants.items()))}")
print(f"  residual rows (must be empty): {sys71.residual()}")
prof = vartheta_profile(sys71)
print(f"  theta functional: zero below alpha={a}: {prof.zero_below_alpha}; "
      f"valuation at alpha equals E={ecal_of(p, r)}: {prof.valuation_at_alpha_is_ecal}")
print()

p, r, a = 5, 14, 3
rep = verify_vanishing_double_sum(p, r, a)
print(f"vanishing double sum at (p={p}, r={r}, alpha={a} > rho={rho_of(p, r)}):")
print(f"  row sums: {rep.row_sums}  -> holds: {rep.holds}")
print()

p, rho = 5, 2
r = rho * (p + 1) + p - 2
sys105 = build_rho_annihilator(p, r)
d0, th, exact = rho_zero_row_identity(sys105)
print(f"rho-case annihilator at (p={p}, r={r}):")
print(f"  target: {sys105.target}; residual empty: {not sys105.residual()}")
print(f"  boundary row zero: D_0 = {d0}, theta_rho = {th}, "
      f"D_0 (1-p)^rho == theta_rho: {exact}")
