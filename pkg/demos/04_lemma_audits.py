# Residuals of the counting and exponential-sum statements
# ========================================================
#
# For a set of density C(n) in [1..n], compare the triple count with
# C(n)^3 n^2 / 2 and the exponential sum with C(n) times the full one.
# These are measurements at finite n; no verdicts are drawn.
from ap3lab import (FamilySpec, family, lemma2_discrepancy_audit, lemma3_residual_audit, r3_table)

horizons = [100, 1000, 10000]
for p in (0.3, 0.5, 0.8):
    S = family(FamilySpec("random_density", 10000, p, seed=1))
    for r in lemma3_residual_audit(S, horizons).rows:
        print(f"p={p}  n={r.n:6d}  C={float(r.density):.4f}  a={r.a_total:9d}  R/n^2={r.normalized:+.5f}")

# Extremal sets: the triple count collapses to the trivial ones, a_total == f(n).
_, ws = r3_table(30)
rep = lemma3_residual_audit(ws, [10, 20, 30])
for r in rep.rows:
    print(f"extremal n={r.n}: f={r.size}  a_total={r.a_total}  R/n^2={r.normalized:+.4f}")

for r in lemma2_discrepancy_audit(ws, [10, 20, 30]).rows:
    print(f"extremal n={r.n}: sup |gap| = {r.sup_abs:.3f}  (/n = {r.sup_over_n:.3f})  grid {r.grid}")
