# A thin set with arbitrarily long progressions
# =============================================
#
# Blocks {10^k, ..., 10^k + k} for k = 0, 1, 2, ... Block k is a run of k + 1
# consecutive integers, yet the reciprocal sum stays below 1/0.9^2 = 100/81.
from ap3lab import IntegerSet, find_ap_of_length, paper_set_bound_check, paper_small_set

print("B=3:", paper_small_set(3).tolist())
for B in range(0, 9):
    chk = paper_set_bound_check(B)
    print(f"B={B}: sum 1/s = {chk.partial_sum.approx:.12f}  < 100/81 = {float(chk.bound):.12f}: {chk.ok}")

S = paper_small_set(8)
for k in range(2, 9):
    block = IntegerSet([x for x in S if 10**k <= x <= 10**k + k])
    print(f"block {k}: progression {find_ap_of_length(block, k + 1)}")
