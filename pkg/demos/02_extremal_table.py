# Largest progression-free subsets of {1..n}
# =========================================
#
# f(n) is the size of the largest subset of [1..n] with no three-term
# progression. The solver proves each value exactly and returns the
# lexicographically smallest optimal set.
from ap3lab import density_limit_estimate, fekete_audit, r3_table, roth_chain_audit

profile, witnesses = r3_table(40)
for w in witnesses[::5] + [witnesses[-1]]:
    print(f"n={w.n:3d}  f(n)={w.size:3d}  f(n)/n={w.size / w.n:.3f}  {w.witness.tolist()}")

# f is subadditive, so f(n)/n converges to its infimum; the table minimum is
# therefore an upper bound on the limiting density.
print("\nsubadditivity violations:", fekete_audit(profile))
print("min f(n)/n over the table:", density_limit_estimate(profile))

# Compare f(n) with 2^(1/3) n^(2/3). Rows above the curve are only flagged.
flagged = [r.n for r in roth_chain_audit(profile) if r.highlighted]
print("n with f(n) > 2^(1/3) n^(2/3):", flagged)
