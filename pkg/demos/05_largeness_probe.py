# Reciprocal sums against counting-function sums
# ==============================================
#
# For any set with counting function f, summation by parts gives
#   sum_{s<=N} 1/s = f(N)/N + sum_{n<N} f(n) / (n(n+1))
# exactly. The probe prints sum 1/s next to sum f(m)/m^2 on a log grid.
from ap3lab import FamilySpec, abel_identity_residual, family, largeness_probe

for name in ("primes", "squares", "powers_of_two"):
    S = family(FamilySpec(name, 10**5))
    pr = largeness_probe(S, 10**5, points=6)
    print(name, "(exact)" if pr.exact else "(float)")
    for r in pr.rows:
        print(f"  n={r.n:7d}  sum 1/s = {r.reciprocal_sum:.6f}  sum f(m)/m^2 = {r.counting_sum:.6f}")
    print("  summation-by-parts residual at N:", pr.abel_residual)

print("\nresidual for the primes at N=1000:", abel_identity_residual(family(FamilySpec("primes", 1000)), 1000))
