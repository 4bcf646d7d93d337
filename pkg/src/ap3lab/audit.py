"""Finite-n residual reports for the progression-counting and density claims.

Nothing here decides an asymptotic statement. Rows report measured values;
the only hard checks are exact finite identities (an AP-free set has
``a_total == |S|``; the summation-by-parts residual is zero).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2
import numpy as np

from .ap import count_triples, discrepancy
from .extremal import DensityProfile, ExtremalWitness, NonOptimalProfile
from .intset import IntegerSet, RationalSum, abel_identity_residual, counting_profile, exact_sum

CUBE_ROOT_2 = 2.0 ** (1.0 / 3.0)


class IdentityFailure(AssertionError):
    """An exact identity that must hold for every finite input did not."""


@dataclass(frozen=True)
class ResidualRow:
    n: int
    size: int
    density: Fraction
    a_total: int
    residual: Fraction          # a_total - density**3 * n**2 / 2
    normalized: float           # residual / n**2
    optimal: bool | None = None  # only for extremal rows
    roth_identity: bool | None = None


@dataclass(frozen=True)
class DiscrepancyRow:
    n: int
    size: int
    density: Fraction
    grid: int
    sup_abs: float
    sup_over_n: float
    optimal: bool | None = None


@dataclass(frozen=True)
class AuditReport:
    audit: str
    params: dict
    rows: list = field(default_factory=list)


@dataclass(frozen=True)
class BoundChainRow:
    n: int
    f: int
    bound: float                # 2^(1/3) n^(2/3)
    ratio: float                # f / bound
    lemma1_term: Fraction       # f / n^2
    comparison_term: float      # 2^(1/3) / n^(4/3)
    highlighted: bool           # f > bound: would contradict the chain if n were past n_0


@dataclass(frozen=True)
class ProbeRow:
    n: int
    reciprocal_sum: float
    counting_sum: float
    reciprocal_exact: Fraction | None = None
    counting_exact: Fraction | None = None


@dataclass(frozen=True)
class LargenessProbe:
    horizon: int
    rows: list[ProbeRow]
    abel_residual: RationalSum | None
    exact: bool


def _rows_source(source) -> tuple[str, list]:
    if isinstance(source, IntegerSet):
        return "set", [source]
    return "extremal", list(source)


def _pick(by_n: dict, ns) -> list[int]:
    wanted = sorted(by_n if ns is None else set(ns))
    missing = [n for n in wanted if n not in by_n]
    if missing:
        raise ValueError(f"no extremal entry for n={missing[0]}")
    return wanted


def lemma3_residual_audit(source: IntegerSet | Sequence[ExtremalWitness],
                          ns: Iterable[int] | None = None, label: str = "") -> AuditReport:
    """Residual of the ordered triple count against C(n)^3 n^2 / 2.

    ``source`` is either a set (row n uses its elements <= n, C(n) = |S cap [1..n]| / n)
    or a sequence of extremal witnesses (row n uses the witness for n and
    C(n) = f(n) / n). Extremal rows that are optimal must satisfy
    ``a_total == f(n)``; a failure raises :class:`IdentityFailure`.
    """
    kind, _ = _rows_source(source)
    rows = []
    if kind == "set":
        if ns is None:
            raise ValueError("a set source needs explicit horizons")
        for n in sorted(set(ns)):
            T = source.restrict(n)
            rows.append(_residual_row(n, T))
    else:
        by_n = {w.n: w for w in source}
        for n in _pick(by_n, ns):
            w = by_n[n]
            row = _residual_row(n, w.witness, optimal=w.optimal)
            if w.optimal:
                ok = row.a_total == w.size
                if not ok:
                    raise IdentityFailure(
                        f"n={n}: extremal witness has a_total={row.a_total} != f(n)={w.size}")
                row = replace(row, roth_identity=ok)
            rows.append(row)
    params = {"source": label or kind, "horizons": [r.n for r in rows]}
    return AuditReport("lemma3-residual", params, rows)


def _residual_row(n: int, T: IntegerSet, optimal: bool | None = None) -> ResidualRow:
    size = len(T)
    a = count_triples(T).a_total
    C = Fraction(size, n)
    residual = a - Fraction(size**3, 2 * n)
    return ResidualRow(n, size, C, a, residual, float(residual / (n * n)), optimal)


def lemma2_discrepancy_audit(source: IntegerSet | Sequence[ExtremalWitness],
                             ns: Iterable[int] | None = None, grid: int | None = None,
                             label: str = "") -> AuditReport:
    """Sup-norm gap between the set's exponential sum and C(n) times the full one."""
    kind, _ = _rows_source(source)
    rows = []
    if kind == "set":
        if ns is None:
            raise ValueError("a set source needs explicit horizons")
        items = [(n, source.restrict(n), None) for n in sorted(set(ns))]
    else:
        by_n = {w.n: w for w in source}
        items = [(n, by_n[n].witness, by_n[n].optimal) for n in _pick(by_n, ns)]
    for n, T, optimal in items:
        C = Fraction(len(T), n)
        rep = discrepancy(T, n, C, grid)
        rows.append(DiscrepancyRow(n, len(T), C, rep.grid_size, rep.sup_abs, rep.sup_over_n, optimal))
    params = {"source": label or kind, "horizons": [r.n for r in rows], "grid": grid or "4n+1"}
    return AuditReport("lemma2-discrepancy", params, rows)


def roth_chain_audit(profile: DensityProfile) -> list[BoundChainRow]:
    """Evaluate f(n) <= 2^(1/3) n^(2/3) and its series form at every n in the profile.

    Report only: the inequality is claimed past an unspecified n_0, so rows with
    f(n) above the bound are highlighted, not failed.
    """
    if not profile.all_optimal:
        raise NonOptimalProfile("bound chain needs exact f(n) values")
    rows = []
    for e in profile.entries:
        n, f = e.n, e.f
        bound = CUBE_ROOT_2 * n ** (2.0 / 3.0)
        rows.append(BoundChainRow(n, f, bound, f / bound, Fraction(f, n * n),
                                  CUBE_ROOT_2 / n ** (4.0 / 3.0), f > bound))
    return rows


def probe_grid(N: int, points: int = 32) -> list[int]:
    """About ``points`` log-spaced integers in [1, N], always including 1 and N."""
    if N < 1:
        raise ValueError("N must be >= 1")
    g = np.unique(np.rint(np.logspace(0.0, math.log10(N), max(points, 2))).astype(np.int64))
    g = g[(g >= 1) & (g <= N)]
    return sorted(set(g.tolist()) | {1, N})


def largeness_probe(S: IntegerSet, N: int, points: int = 32, exact_limit: int = 10**4,
                    with_residual: bool = True) -> LargenessProbe:
    """Partial sums of 1/s and of f(m)/m^2 side by side on a log grid up to N.

    Sums are exact rationals when N <= ``exact_limit`` and correctly rounded
    floats (``math.fsum``) otherwise. The summation-by-parts residual at N is
    always exact.
    """
    grid = probe_grid(N, points)
    f = counting_profile(S, N).values
    inside = S.restrict(N).elements
    m = np.arange(1, N + 1, dtype=np.int64)
    exact = N <= exact_limit
    rows = []
    if exact:
        left = right = gmpy2.mpq(0)
        lo_s = lo_m = 0
        for n in grid:
            hi_s = int(np.searchsorted(inside, n, side="right"))
            seg = inside[lo_s:hi_s]
            left += exact_sum(np.ones_like(seg), seg)
            nz = f[lo_m:n] > 0
            right += exact_sum(f[lo_m:n][nz], m[lo_m:n][nz] ** 2)
            lo_s, lo_m = hi_s, n
            lq = Fraction(int(left.numerator), int(left.denominator))
            rq = Fraction(int(right.numerator), int(right.denominator))
            rows.append(ProbeRow(n, float(left), float(right), lq, rq))
    else:
        rec = 1.0 / inside.astype(np.float64)
        cnt = f / (m.astype(np.float64) ** 2)
        for n in grid:
            k = int(np.searchsorted(inside, n, side="right"))
            rows.append(ProbeRow(n, math.fsum(rec[:k]), math.fsum(cnt[:n])))
    residual = abel_identity_residual(S, N) if with_residual else None
    return LargenessProbe(N, rows, residual, exact)
