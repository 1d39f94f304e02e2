"""Walkthrough: slopes of the Hecke operator and supersingularity measures.

Slopes are Newton-polygon root valuations of the integral Hecke matrix on
the echelon cusp basis.  Dividing each oldform slope pair by k-1 gives point
masses in [0,1]; for a regular prime they stay outside an explicit open
middle interval, and the smallest classically observed exception (p = 59 at
weight 16) lands inside it.
"""

from padicslopes.measures import (
    is_regular,
    mass_in_middle,
    middle_mass_profile,
    supersingularity_measure,
    support_bound,
)
from padicslopes.modforms import hecke_matrix, slopes
from padicslopes.padic import format_rational

print("slope table (p=5):")
for k in range(12, 41, 2):
    vals = ", ".join(format_rational(s) for s in slopes(5, k))
    print(f"  k={k:3d}: {{{vals}}}")
print()

hm = hecke_matrix(2, 24)
print(f"Hecke matrix at (p=2, k=24): {hm.entries}")
print(f"characteristic polynomial (lowest first): {hm.charpoly()}")
print(f"slopes: {slopes(2, 24)}")
print()

print("the p = 59 exception at weight 16:")
m = supersingularity_measure(59, 16)
b = support_bound(59, 16)
count, frac = mass_in_middle(m, b)
print(f"  masses: {[format_rational(x) for x in m.masses]}")
print(f"  middle interval: ({b.left_end}, {b.right_end})")
print(f"  masses strictly inside: {count} (fraction {frac})")
print(f"  59 regular? {is_regular(59).regular}; "
      f"first witness: {is_regular(59).witnesses[0]}")
print()

print("p = 5 stays clean (middle-interval mass is zero on every row):")
profile = middle_mass_profile(5, 12, 80)
nonzero = [row.k for row in profile.rows if row.count_middle]
print(f"  weights 12..80: nonzero rows = {nonzero or 'none'}")
with_new = middle_mass_profile(5, 12, 24, include_newforms=True)
print("  with newforms included, the permanent middle mass appears:")
for row in with_new.rows:
    print(f"    k={row.k}: dim_new={row.dim_new}, count_middle={row.count_middle}")
