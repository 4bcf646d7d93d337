"""Set generators and the set-source specifier grammar.

Specifiers::

    family:<name>:<N>[:p=<float>][:seed=<int>]
    paper-s:<B>
    digits3:<N>
    file:<path>

Random family
-------------
``random_density`` includes each k in [1..N] independently when
``u_k < p``, where ``u_k = (splitmix64(seed + k * 0x9E3779B97F4A7C15) >> 11) * 2**-53``
and splitmix64 is the standard finaliser (xor-shift 30, multiply
0xBF58476D1CE4E5B9, xor-shift 27, multiply 0x94D049BB133111EB, xor-shift 31),
all arithmetic mod 2**64. The draw for k does not depend on N, so the set for a
smaller horizon is a prefix of the set for a larger one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .intset import (DomainError, IntegerSet, ParseError, RationalSum, parse_set,
                     reciprocal_partial_sum)

FAMILIES = ("primes", "squares", "powers_of_two", "full_interval", "evens", "random_density")

# the displayed majorant 1 + 2x + 3x^2 + ... at x = 1/10, i.e. 1/0.9^2
PAPER_BOUND = Fraction(100, 81)

_MAX_BLOCK = 18  # 10**18 + 18 still fits in int64


class UsageError(ValueError):
    """Malformed specifier or unknown family name."""


@dataclass(frozen=True)
class PaperSetSpec:
    max_block: int
    bound_constant: Fraction = field(default=PAPER_BOUND)

    def blocks(self) -> list[IntegerSet]:
        return [IntegerSet(range(10**k, 10**k + k + 1)) for k in range(self.max_block + 1)]


@dataclass(frozen=True)
class FamilySpec:
    name: str
    N: int
    p: float | None = None
    seed: int | None = None


@dataclass(frozen=True)
class BoundCheck:
    partial_sum: RationalSum
    bound: Fraction
    ok: bool


def paper_small_set(B: int) -> IntegerSet:
    """Union over k = 0..B of the blocks {10^k, 10^k + 1, ..., 10^k + k}.

    Block k has k + 1 consecutive integers, so B = 2 gives {1, 10, 11, 100, 101, 102}.
    """
    if B < 0:
        raise DomainError("block count must be >= 0")
    if B > _MAX_BLOCK:
        raise DomainError(f"10**{B} + {B} does not fit in a 64-bit integer")
    parts = [np.arange(10**k, 10**k + k + 1, dtype=np.int64) for k in range(B + 1)]
    return IntegerSet._from_sorted(np.concatenate(parts))


def paper_set_bound_check(B: int) -> BoundCheck:
    s = reciprocal_partial_sum(paper_small_set(B))
    return BoundCheck(s, PAPER_BOUND, s.fraction < PAPER_BOUND)


def digit_construction(N: int) -> IntegerSet:
    """All 1 <= m <= N whose base-3 digits are only 0 and 1."""
    if N < 1:
        raise DomainError("N must be >= 1")
    vals = np.zeros(1, dtype=np.int64)
    power = 1
    while power <= N:
        vals = np.concatenate([vals, vals + power])
        power *= 3
    vals = np.sort(vals[(vals >= 1) & (vals <= N)])
    return IntegerSet._from_sorted(vals)


def prime_sieve(N: int) -> np.ndarray:
    if N < 2:
        return np.zeros(0, dtype=np.int64)
    is_p = np.ones(N + 1, dtype=bool)
    is_p[:2] = False
    for q in range(2, int(N**0.5) + 1):
        if is_p[q]:
            is_p[q * q :: q] = False
    return np.flatnonzero(is_p).astype(np.int64)


_GOLDEN = np.uint64(0x9E3779B97F4A7C15)


def splitmix_uniform(seed: int, ks: np.ndarray) -> np.ndarray:
    """The counter-based uniforms u_k in [0, 1) described in the module docstring."""
    z = np.uint64(seed % 2**64) + np.asarray(ks, dtype=np.uint64) * _GOLDEN
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    z = z ^ (z >> np.uint64(31))
    return (z >> np.uint64(11)).astype(np.float64) * 2.0**-53


def family(spec: FamilySpec) -> IntegerSet:
    N = spec.N
    if N < 1:
        raise DomainError("horizon N must be >= 1")
    name = spec.name
    if name == "primes":
        e = prime_sieve(N)
    elif name == "squares":
        e = np.arange(1, math.isqrt(N) + 1, dtype=np.int64) ** 2
    elif name == "powers_of_two":
        e = np.array([1 << k for k in range(N.bit_length())], dtype=np.int64)
    elif name == "full_interval":
        e = np.arange(1, N + 1, dtype=np.int64)
    elif name == "evens":
        e = np.arange(2, N + 1, 2, dtype=np.int64)
    elif name == "random_density":
        if spec.p is None or spec.seed is None:
            raise UsageError("random_density needs both p and seed")
        if not 0.0 <= spec.p <= 1.0:
            raise DomainError("p must lie in [0, 1]")
        ks = np.arange(1, N + 1, dtype=np.int64)
        e = ks[splitmix_uniform(spec.seed, ks) < spec.p]
    else:
        raise UsageError(f"unknown family {name!r}; expected one of {', '.join(FAMILIES)}")
    return IntegerSet._from_sorted(e)


def parse_source(spec: str, seed: int | None = None) -> IntegerSet:
    """Resolve a set-source specifier. ``seed`` fills in a missing ``seed=``."""
    kind, _, rest = spec.partition(":")
    try:
        if kind == "file":
            if not rest:
                raise UsageError("file: needs a path")
            return parse_set(Path(rest).read_text(encoding="utf-8"))
        if kind == "paper-s":
            return paper_small_set(int(rest))
        if kind == "digits3":
            return digit_construction(int(rest))
        if kind == "family":
            return family(parse_family(rest, seed))
    except ValueError as exc:
        if isinstance(exc, (UsageError, DomainError, ParseError)):
            raise
        raise UsageError(f"bad specifier {spec!r}: {exc}") from None
    raise UsageError(f"unknown set source {spec!r}")


def parse_family(rest: str, seed: int | None = None) -> FamilySpec:
    parts = rest.split(":")
    if len(parts) < 2:
        raise UsageError("expected family:<name>:<N>[:p=<float>][:seed=<int>]")
    name, N = parts[0], int(parts[1])
    p = None
    for opt in parts[2:]:
        key, _, val = opt.partition("=")
        if key == "p":
            p = float(val)
        elif key == "seed":
            seed = int(val)
        else:
            raise UsageError(f"unknown family option {opt!r}")
    if name not in FAMILIES:
        raise UsageError(f"unknown family {name!r}; expected one of {', '.join(FAMILIES)}")
    return FamilySpec(name, N, p, seed if name == "random_density" else None)
