"""Three-term progression detection, counting and exponential-sum discrepancy.

Counting convention: ``a_total`` counts ordered triples ``(a, b, c)`` drawn
from S with ``a + c = 2b``, equal terms allowed. Every element contributes one
trivial triple ``(s, s, s)`` and each nontrivial progression ``{a, b, c}``
contributes two, ``(a, b, c)`` and ``(c, b, a)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import ntt
from .intset import DomainError, IntegerSet


@dataclass(frozen=True)
class TripleCount:
    a_total: int
    trivial: int
    nontrivial_unordered: int

    @classmethod
    def from_total(cls, a_total: int, size: int) -> TripleCount:
        extra = a_total - size
        if extra < 0 or extra % 2:
            raise ArithmeticError(f"inconsistent triple total {a_total} for |S|={size}")
        return cls(a_total, size, extra // 2)


@dataclass(frozen=True)
class APWitness:
    first: int
    difference: int
    length: int

    def terms(self) -> list[int]:
        return [self.first + i * self.difference for i in range(self.length)]


@dataclass(frozen=True)
class DiscrepancyReport:
    n: int
    density_used: Fraction
    grid_size: int
    sup_abs: float
    sup_over_n: float
    argmax_j: int


def count_triples_bruteforce(S: IntegerSet) -> TripleCount:
    """Scan all pairs a < c with a + c even and look the midpoint up."""
    e = S.elements
    nontrivial = 0
    for i in range(e.size - 1):
        c = e[i + 1:]
        s = e[i] + c
        s = s[(s & 1) == 0]
        nontrivial += int(S.contains(s >> 1).sum())
    return TripleCount(len(S) + 2 * nontrivial, len(S), nontrivial)


def pair_sums(S: IntegerSet) -> np.ndarray:
    """r[m] = #{(a, c) in S^2 : a + c = m}, exactly, for 0 <= m <= 2*max(S)."""
    if not len(S):
        return np.zeros(1, dtype=np.int64)
    return ntt.convolve(S.mask.astype(np.int64))


def count_triples_convolution(S: IntegerSet) -> TripleCount:
    if not len(S):
        return TripleCount(0, 0, 0)
    r = pair_sums(S)
    a_total = int(r[2 * S.elements].sum())
    return TripleCount.from_total(a_total, len(S))


def count_triples(S: IntegerSet) -> TripleCount:
    """Pick whichever exact route is cheaper for this set."""
    # pair scan is ~|S|^2 / 2; the transform is ~max(S) log max(S)
    if len(S) ** 2 < 8 * max(S.max_element, 1):
        return count_triples_bruteforce(S)
    return count_triples_convolution(S)


def find_ap_of_length(S: IntegerSet, k: int) -> APWitness | None:
    """First progression with at least ``k`` terms inside S.

    Ties break on smallest first term, then smallest difference. The returned
    length is the full extent of that progression within S, so it may exceed k.
    """
    if k < 3:
        raise ValueError("k must be >= 3")
    e = S.elements
    top = S.max_element
    for i in range(e.size - 1):
        a = int(e[i])
        d = e[i + 1:] - a
        d = d[a + (k - 1) * d <= top]
        if not d.size:
            continue
        for j in range(2, k):
            d = d[S.contains(a + j * d)]
            if not d.size:
                break
        if d.size:
            diff = int(d[0])
            length = k
            while a + length * diff in S:
                length += 1
            return APWitness(a, diff, length)
    return None


def has_nontrivial_3ap(S: IntegerSet) -> APWitness | None:
    """A length-3 witness ``(first, difference, 3)`` or None if S is AP-free."""
    e = S.elements
    for i in range(e.size - 1):
        a = int(e[i])
        d = e[i + 1:] - a
        hit = np.flatnonzero(S.contains(a + 2 * d))
        if hit.size:
            return APWitness(a, int(d[hit[0]]), 3)
    return None


def default_grid(n: int) -> int:
    return 4 * n + 1


def discrepancy(S: IntegerSet, n: int, density, grid: int | None = None) -> DiscrepancyReport:
    """sup over z = exp(2 pi i j / M) of |sum_{a in S} z^a - C sum_{k=1}^n z^k|.

    The polynomial with coefficients ``1_S(k) - C`` is evaluated on the grid
    with one FFT (after folding exponents modulo M), so the full interval with
    C = 1 gives exactly zero.
    """
    if n < 1:
        raise DomainError("horizon must be >= 1")
    if S.max_element > n:
        raise DomainError(f"set element {S.max_element} exceeds horizon {n}")
    M = default_grid(n) if grid is None else int(grid)
    if M < 1:
        raise DomainError("grid size must be >= 1")
    C = Fraction(density)
    coeff = -float(C) * np.ones(n + 1)
    coeff[0] = 0.0
    coeff[S.elements] += 1.0
    folded = np.bincount(np.arange(n + 1) % M, weights=coeff, minlength=M)
    # sum_k c_k exp(+2 pi i j k / M) = M * ifft(c)[j]
    values = np.fft.ifft(folded) * M
    mags = np.abs(values)
    j = int(np.argmax(mags))
    sup = float(mags[j])
    return DiscrepancyReport(n, C, M, sup, sup / n, j)
