"""Walkthrough: exhaustive valuation-lemma sweeps.

Each lemma asserts strict inequalities v_p(X_0) < v_p(.) over a finite index
window; the sweep enumerates every hypothesis-admissible cell up to a bound
and checks each window exactly.  Vacuous cells (empty windows) are counted
separately so a "holds" verdict never hides an empty range.
"""

from padicslopes.lemma_checks import sweep_lemma, sweep_lemma9_with_oracle

print("carry bound (exhaustive, with the exact-binomial factorization oracle):")
for p, rep in sweep_lemma9_with_oracle((2, 3, 5), 300).items():
    print(f"  p={p}: {rep.verdict} on {rep.checked} pairs, "
          f"max valuation seen {rep.max_valuation_seen}")
print()

R_MAX = 120
for lemma in (10, 11, 12, 13, 14, 15):
    summary = sweep_lemma(lemma, (5, 7, 11, 13), R_MAX)
    print(f"lemma {lemma:2d} over r <= {R_MAX}: "
          f"{'holds' if summary.holds else 'FAILS'} on {len(summary.reports)} cells "
          f"({summary.checked} witnesses, {summary.vacuous_count} vacuous, "
          f"min margin {summary.min_margin})")
