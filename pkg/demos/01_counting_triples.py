# Counting three-term progressions two ways
# =========================================
#
# A set S of positive integers has a_total ordered triples (a, b, c) with
# a + c = 2b, equal terms allowed. Each element gives the trivial triple
# (s, s, s); each genuine progression {a, b, c} gives two ordered ones.
import math

import numpy as np

from ap3lab import (IntegerSet, count_triples_bruteforce, count_triples_convolution,
                    digit_construction, has_nontrivial_3ap)

S = IntegerSet([1, 2, 3])
print("S =", S.tolist())
print("pair scan  :", count_triples_bruteforce(S))
print("convolution:", count_triples_convolution(S))

# The convolution route squares the 0/1 indicator polynomial of S, so
# r[m] = #{(a, c) in S^2 : a + c = m}, then sums r[2b] over b in S.
rng = np.random.default_rng(0)
R = IntegerSet(np.flatnonzero(rng.random(5001) < 0.2)[1:])
a, b = count_triples_bruteforce(R), count_triples_convolution(R)
print(f"\nrandom set, |R| = {len(R)}: both routes agree -> {a == b}, a_total = {a.a_total}")

# On [1..n] the count is ceil(n^2 / 2).
for n in (10, 11, 500):
    full = IntegerSet(range(1, n + 1))
    print(f"[1..{n}]: a_total = {count_triples_convolution(full).a_total}, ceil(n^2/2) = {math.ceil(n * n / 2)}")

# A set without progressions only has the trivial triples: a_total == |S|.
D = digit_construction(10**5)
print(f"\nbase-3 digits in {{0,1}} up to 1e5: |D| = {len(D)}, "
      f"a_total = {count_triples_convolution(D).a_total}, witness = {has_nontrivial_3ap(D)}")
