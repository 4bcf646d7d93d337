"""Exact maximum AP-free subsets of {1..n} by branch and bound.

The search walks sets in lexicographic order of their sorted elements
(prefixes before extensions), so the first set of a given size it reaches is
the lexicographically smallest one. Only sets containing 1 are searched:
translating any AP-free subset of [1..n] down to start at 1 keeps it AP-free,
so an optimum containing 1 always exists, and the lexicographically smallest
optimum contains 1.

Pruning uses the forbidden-value mask (x is forbidden once 2b - a = x for two
chosen a < b) and the exact values of f on shorter intervals: whatever is
picked from [i..n] is AP-free, so contributes at most f(n - i + 1).
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .intset import IntegerSet

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Budget:
    """Node limit (primary) and wall-clock limit in seconds (secondary), per horizon."""

    nodes: int | None = None
    seconds: float | None = None


UNLIMITED = Budget()


@dataclass(frozen=True)
class ExtremalWitness:
    n: int
    size: int
    witness: IntegerSet
    optimal: bool
    nodes: int = 0


@dataclass(frozen=True)
class ProfileEntry:
    n: int
    f: int
    optimal: bool

    @property
    def density(self) -> Fraction:
        return Fraction(self.f, self.n)


@dataclass(frozen=True)
class DensityProfile:
    entries: tuple[ProfileEntry, ...]

    @property
    def horizon(self) -> int:
        return self.entries[-1].n if self.entries else 0

    @property
    def all_optimal(self) -> bool:
        return all(e.optimal for e in self.entries)

    @property
    def table(self) -> list[tuple[int, int, Fraction]]:
        return [(e.n, e.f, e.density) for e in self.entries]

    @property
    def c_upper(self) -> Fraction:
        return min(e.density for e in self.entries)

    def f(self, n: int) -> int:
        return self.entries[n - 1].f

    @classmethod
    def from_values(cls, values: Sequence[int]) -> DensityProfile:
        """Build a profile from known-exact values f(1), f(2), ..."""
        return cls(tuple(ProfileEntry(n, int(v), True) for n, v in enumerate(values, start=1)))


@dataclass(frozen=True)
class Violation:
    m: int
    n: int
    f_sum: int
    bound: int


class NonOptimalProfile(ValueError):
    """The profile holds bounds, not exact values, so the operation is meaningless."""


class _Stop(Exception):
    pass


class _Search:
    """One depth-first search below a fixed prefix."""

    def __init__(self, n: int, floor: int, cap: int, tail: Sequence[int], budget: Budget):
        self.n = n
        self.tail = tail
        self.cap = cap
        self.best_size = floor - 1
        self.best: tuple[int, ...] | None = None
        self.nodes = 0
        self.complete = True
        self.node_limit = budget.nodes
        self.deadline = None if budget.seconds is None else time.monotonic() + budget.seconds
        self.full = (1 << (n + 1)) - 2

    def run(self, prefix: Sequence[int]) -> None:
        chosen = list(prefix)
        forb = 0
        for k, x in enumerate(chosen):
            for a in chosen[:k]:
                if 2 * x - a <= self.n:
                    forb |= 1 << (2 * x - a)
        try:
            self._visit(chosen, forb, chosen[-1] + 1)
        except _Stop:
            pass

    def _visit(self, chosen: list[int], forb: int, start: int) -> None:
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            self.complete = False
            raise _Stop
        if self.deadline is not None and not self.nodes & 0xFFF and time.monotonic() > self.deadline:
            self.complete = False
            raise _Stop
        size = len(chosen)
        if size > self.best_size:
            self.best_size = size
            self.best = tuple(chosen)
            if size >= self.cap:
                raise _Stop
        n = self.n
        if start > n:
            return
        allowed = self.full & ~forb & ~((1 << start) - 1)
        avail = allowed.bit_count()
        tail = self.tail
        if size + min(avail, tail[n - start + 1]) <= self.best_size:
            return
        while allowed:
            low = allowed & -allowed
            x = low.bit_length() - 1
            extra = 0
            for a in chosen:
                y = 2 * x - a
                if y <= n:
                    extra |= 1 << y
            chosen.append(x)
            self._visit(chosen, forb | extra, x + 1)
            chosen.pop()
            allowed ^= low
            avail -= 1
            if size + min(avail, tail[n - x]) <= self.best_size:
                return


def _search_subtree(args):
    n, floor, cap, tail, budget, prefix = args
    s = _Search(n, floor, cap, tail, budget)
    s.run(prefix)
    return s.best_size, s.best, s.nodes, s.complete


def _solve_one(n: int, prev: ExtremalWitness | None, tail: Sequence[int], budget: Budget,
               threads: int, pool: ProcessPoolExecutor | None) -> ExtremalWitness:
    if n == 1:
        return ExtremalWitness(1, 1, IntegerSet([1]), True, 1)
    floor = prev.size if prev is not None else 1
    cap = tail[n - 1] + 1
    if pool is None or threads <= 1:
        results = [_search_subtree((n, floor, cap, tail, budget, (1,)))]
    else:
        # subtree j holds the sets whose second-smallest element is j; {1} alone is below floor
        jobs = [(n, floor, cap, tail, budget, (1, j)) for j in range(2, n + 1)]
        results = list(pool.map(_search_subtree, jobs))
    complete = all(r[3] for r in results)
    nodes = sum(r[2] for r in results)
    found = [(size, best) for size, best, _, _ in results if best is not None]
    if found:
        top = max(size for size, _ in found)
        best = min(best for size, best in found if size == top)
        size = top
    else:
        size, best = prev.size, tuple(prev.witness.tolist())
    if not complete:
        log.info("n=%d: budget exhausted after %d nodes, best size %d", n, nodes, size)
    return ExtremalWitness(n, size, IntegerSet(best), complete, nodes)


def r3_table(N: int, budget: Budget = UNLIMITED, threads: int = 1
             ) -> tuple[DensityProfile, list[ExtremalWitness]]:
    """f(n) = max AP-free subset size of [1..n] for every n <= N, with witnesses.

    Horizons are solved in increasing order. Each search looks only for sets of
    size >= f(n-1), stops as soon as it reaches f(n-1) + 1 (the largest value
    possible), and bounds tails with the values already computed. The budget
    applies to each horizon separately; an exhausted entry keeps its best set
    and is flagged non-optimal.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    # tail[L] is an upper bound on f(L); exact where the entry is optimal
    tail = [0]
    witnesses: list[ExtremalWitness] = []
    pool = ProcessPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        prev = None
        for n in range(1, N + 1):
            tail.append(tail[-1] + 1)
            w = _solve_one(n, prev, tail, budget, threads, pool)
            if w.optimal:
                tail[n] = w.size
            witnesses.append(w)
            prev = w
    finally:
        if pool is not None:
            pool.shutdown()
    profile = DensityProfile(tuple(ProfileEntry(w.n, w.size, w.optimal) for w in witnesses))
    return profile, witnesses


def solve_r3(n: int, budget: Budget = UNLIMITED, threads: int = 1) -> ExtremalWitness:
    """Largest AP-free subset of [1..n]; the canonical (lexicographically least) one when optimal."""
    return r3_table(n, budget, threads)[1][-1]


def fekete_audit(profile: DensityProfile) -> list[Violation]:
    """All (m, n) with m <= n, m + n <= horizon and f(m + n) > f(m) + f(n)."""
    if not profile.all_optimal:
        raise NonOptimalProfile("subadditivity audit needs exact values for every n")
    f = [0] + [e.f for e in profile.entries]
    N = profile.horizon
    out = []
    for m in range(1, N // 2 + 1):
        for n in range(m, N - m + 1):
            if f[m + n] > f[m] + f[n]:
                out.append(Violation(m, n, f[m + n], f[m] + f[n]))
    return out


def density_limit_estimate(profile: DensityProfile) -> Fraction:
    """min f(n)/n over the table.

    By subadditivity the limit of f(n)/n equals its infimum, so this is an
    upper bound on the limiting density and nothing more.
    """
    if not profile.all_optimal:
        raise NonOptimalProfile("density estimate needs exact values for every n")
    return profile.c_upper
