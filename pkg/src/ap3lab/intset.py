"""Finite integer sets, counting functions, reciprocal sums and affine maps.

Every set here is a finite, strictly increasing sequence of positive integers.
Sets are immutable; operations return new values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import gmpy2
import numpy as np

# membership falls back to binary search above this many bits
_MASK_LIMIT = 1 << 27


class DomainError(ValueError):
    """A value violates a mathematical precondition (e.g. an element < 1)."""


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class IntegerSet:
    """Sorted array of distinct positive integers with a lazily built bit mask."""

    def __init__(self, elements: Iterable[int] | np.ndarray = ()):
        arr = np.unique(np.asarray(list(elements) if not isinstance(elements, np.ndarray) else elements,
                                   dtype=np.int64))
        if arr.size and arr[0] < 1:
            raise DomainError(f"set elements must be >= 1, got {int(arr[0])}")
        arr.setflags(write=False)
        self._elements = arr

    @classmethod
    def _from_sorted(cls, arr: np.ndarray) -> IntegerSet:
        # caller guarantees sorted, unique, positive
        obj = cls.__new__(cls)
        arr = np.ascontiguousarray(arr, dtype=np.int64)
        arr.setflags(write=False)
        obj._elements = arr
        return obj

    @property
    def elements(self) -> np.ndarray:
        return self._elements

    @property
    def max_element(self) -> int:
        return int(self._elements[-1]) if self._elements.size else 0

    @cached_property
    def mask(self) -> np.ndarray:
        """Boolean array ``m`` with ``m[x]`` true iff ``x`` is in the set."""
        m = np.zeros(self.max_element + 1, dtype=bool)
        m[self._elements] = True
        m.setflags(write=False)
        return m

    def contains(self, values: np.ndarray) -> np.ndarray:
        """Vectorised membership; values outside ``[1, max_element]`` are False."""
        values = np.asarray(values, dtype=np.int64)
        inside = (values >= 1) & (values <= self.max_element)
        if self.max_element <= _MASK_LIMIT:
            out = np.zeros(values.shape, dtype=bool)
            out[inside] = self.mask[values[inside]]
            return out
        idx = np.searchsorted(self._elements, values)
        idx = np.minimum(idx, self._elements.size - 1)
        return inside & (self._elements[idx] == values)

    def restrict(self, n: int) -> IntegerSet:
        """Elements that are <= n."""
        k = int(np.searchsorted(self._elements, n, side="right"))
        return IntegerSet._from_sorted(self._elements[:k])

    def tolist(self) -> list[int]:
        return self._elements.tolist()

    def __len__(self) -> int:
        return int(self._elements.size)

    def __iter__(self):
        return iter(self.tolist())

    def __contains__(self, x: object) -> bool:
        if not isinstance(x, (int, np.integer)):
            return False
        return bool(self.contains(np.array([x]))[0])

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IntegerSet):
            return np.array_equal(self._elements, other._elements)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._elements.tobytes())

    def __repr__(self) -> str:
        if len(self) > 12:
            head = ", ".join(map(str, self._elements[:10].tolist()))
            return f"IntegerSet({{{head}, ...}}, size={len(self)})"
        return f"IntegerSet({{{', '.join(map(str, self.tolist()))}}})"


@dataclass(frozen=True, eq=False)
class CountingProfile:
    """f(1..N): values[n-1] is the number of set elements <= n."""

    horizon: int
    values: np.ndarray

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= self.horizon:
            raise IndexError(n)
        return int(self.values[n - 1])

    def tolist(self) -> list[int]:
        return self.values.tolist()


@dataclass(frozen=True)
class AffineMap:
    alpha: int
    beta: int = 0

    def __post_init__(self):
        if self.alpha == 0:
            raise DomainError("affine map needs alpha != 0")

    def __call__(self, x: int) -> int:
        return self.alpha * x + self.beta


@dataclass(frozen=True)
class RationalSum:
    """An exact rational in lowest terms together with its nearest float."""

    numerator: int
    denominator: int
    approx: float = field(compare=False)

    @classmethod
    def from_mpq(cls, q) -> RationalSum:
        q = gmpy2.mpq(q)
        return cls(int(q.numerator), int(q.denominator), float(q))

    @classmethod
    def from_fraction(cls, q: Fraction | int) -> RationalSum:
        q = Fraction(q)
        return cls(q.numerator, q.denominator, float(q))

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    @property
    def mpq(self):
        return gmpy2.mpq(self.numerator, self.denominator)

    def is_zero(self) -> bool:
        return self.numerator == 0

    def __float__(self) -> float:
        return self.approx

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


def _split_sum(nums: Sequence, dens: Sequence, lo: int, hi: int):
    """Binary-splitting sum of nums[i]/dens[i] as an unreduced (p, q) pair."""
    if hi - lo == 1:
        return gmpy2.mpz(nums[lo]), gmpy2.mpz(dens[lo])
    if hi - lo <= 8:
        p, q = gmpy2.mpz(0), gmpy2.mpz(1)
        for i in range(lo, hi):
            p, q = p * dens[i] + nums[i] * q, q * dens[i]
        return p, q
    mid = (lo + hi) // 2
    p1, q1 = _split_sum(nums, dens, lo, mid)
    p2, q2 = _split_sum(nums, dens, mid, hi)
    return p1 * q2 + p2 * q1, q1 * q2


def exact_sum(nums: Sequence[int], dens: Sequence[int]):
    """Exact sum of nums[i]/dens[i] as a reduced ``gmpy2.mpq``."""
    if len(nums) != len(dens):
        raise ValueError("length mismatch")
    if not len(nums):
        return gmpy2.mpq(0)
    p, q = _split_sum([int(x) for x in nums], [int(x) for x in dens], 0, len(nums))
    return gmpy2.mpq(p, q)


_TOKEN = re.compile(r"[,\s]+")


def parse_set(text: str) -> IntegerSet:
    """Parse integers separated by newlines, commas or whitespace.

    Lines starting with ``#`` are comments. Duplicates collapse; order is
    irrelevant. Raises :class:`ParseError` on a bad token and
    :class:`DomainError` on a value below 1.
    """
    values = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        for tok in _TOKEN.split(line):
            if not tok:
                continue
            try:
                v = int(tok, 10)
            except ValueError:
                raise ParseError(f"not an integer: {tok!r}", lineno) from None
            if v < 1:
                raise DomainError(f"line {lineno}: value {v} is below 1")
            values.append(v)
    return IntegerSet(values)


def counting_profile(S: IntegerSet, N: int) -> CountingProfile:
    if N < 1:
        raise DomainError("horizon N must be >= 1")
    inside = S.restrict(N).elements
    step = np.zeros(N + 1, dtype=np.int64)
    step[inside] = 1
    values = np.cumsum(step)[1:]
    values.setflags(write=False)
    return CountingProfile(N, values)


def reciprocal_partial_sum(S: IntegerSet) -> RationalSum:
    """Exact sum of 1/s over S. The empty set is rejected on purpose."""
    if not len(S):
        raise DomainError("reciprocal sum of an empty set is not defined here")
    e = S.elements
    return RationalSum.from_mpq(exact_sum(np.ones_like(e), e))


def abel_identity_residual(S: IntegerSet, N: int) -> RationalSum:
    """Exact LHS - RHS of the summation-by-parts identity

        sum_{s in S, s <= N} 1/s  =  f(N)/N + sum_{n<N} f(n) / (n (n+1))

    where f is the counting function of S. The result is always zero; this
    computes both sides independently so that it can be checked.
    """
    f = counting_profile(S, N).values
    inside = S.restrict(N).elements
    lhs = exact_sum(np.ones_like(inside), inside)
    n = np.arange(1, N, dtype=np.int64)
    fn = f[: N - 1]
    nz = fn > 0
    nums = [int(x) for x in fn[nz]] + [int(f[-1])]
    dens = [int(a) * (int(a) + 1) for a in n[nz]] + [N]
    rhs = exact_sum(nums, dens)
    return RationalSum.from_mpq(lhs - rhs)


def map_affine(S: IntegerSet, m: AffineMap) -> IntegerSet:
    """Image ``{alpha*s + beta}``; a negative alpha reverses the order."""
    if not len(S):
        return S
    image = [m.alpha * s + m.beta for s in S.tolist()]
    lo = min(image)
    if lo < 1:
        raise DomainError(f"affine image contains {lo} < 1")
    if max(image) > np.iinfo(np.int64).max:
        raise DomainError("affine image exceeds 64-bit range")
    arr = np.array(image, dtype=np.int64)
    return IntegerSet._from_sorted(arr[::-1] if m.alpha < 0 else arr)
