"""Command-line entry point: ``ap3lab <subcommand> ...``.

Exit codes: 0 success, 1 usage error, 2 search budget exhausted (the best
result found is still printed, flagged non-optimal), 3 invalid input data.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .ap import (count_triples, count_triples_bruteforce, count_triples_convolution, discrepancy,
                 find_ap_of_length)
from .audit import (IdentityFailure, largeness_probe, lemma2_discrepancy_audit,
                    lemma3_residual_audit, probe_grid, roth_chain_audit)
from .constructions import UsageError, parse_source
from .extremal import Budget, NonOptimalProfile, density_limit_estimate, fekete_audit, r3_table
from .intset import DomainError, IntegerSet, ParseError, abel_identity_residual
from .report import dumps_csv, dumps_json, dumps_text

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_INPUT = 0, 1, 2, 3

SOURCE_HELP = ("set source: file:<path> | family:<name>:<N>[:p=<float>][:seed=<int>] | "
               "paper-s:<B> | digits3:<N>")

log = logging.getLogger("ap3lab")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class Outcome:
    command: str
    params: dict
    result: object = None
    rows: list = field(default_factory=list)
    text: str | None = None
    code: int = EXIT_OK
    audit: bool = False


def _budget(args) -> Budget:
    return Budget(args.budget_nodes, args.budget_secs)


def _source(args, spec: str) -> IntegerSet:
    return parse_source(spec, args.seed)


def _uses_random(spec: str) -> bool:
    return spec.startswith("family:random_density")


def _check_seed(args, spec: str) -> None:
    if _uses_random(spec) and args.seed is None and ":seed=" not in spec:
        raise UsageError("the random_density family needs --seed (or :seed=<int>)")


def _set_params(args, spec: str) -> dict:
    p = {"source": spec}
    if _uses_random(spec):
        p["seed"] = args.seed
    return p


def cmd_count(args) -> Outcome:
    S = _source(args, args.source)
    fn = {"auto": count_triples, "bruteforce": count_triples_bruteforce,
          "convolution": count_triples_convolution}[args.method]
    tc = fn(S)
    res = {"size": len(S), **tc.__dict__}
    return Outcome("count", {**_set_params(args, args.source), "method": args.method}, res, [res])


def cmd_find_ap(args) -> Outcome:
    S = _source(args, args.source)
    w = find_ap_of_length(S, args.k)
    res = {"found": w is not None, "witness": w, "terms": w.terms() if w else []}
    row = {"found": w is not None, "first": w.first if w else "", "difference": w.difference if w else "",
           "length": w.length if w else ""}
    text = " ".join(map(str, w.terms())) + "\n" if w else "none\n"
    return Outcome("find-ap", {**_set_params(args, args.source), "k": args.k}, res, [row], text)


def _table(args, N: int):
    if N < 1:
        raise UsageError("N must be >= 1")
    return r3_table(N, _budget(args), args.threads)


def _witness_row(w) -> dict:
    return {"n": w.n, "size": w.size, "density": Fraction(w.size, w.n), "optimal": w.optimal,
            "witness": w.witness}


def cmd_r3(args) -> Outcome:
    _, ws = _table(args, args.n)
    w = ws[-1]
    row = _witness_row(w)
    code = EXIT_OK if w.optimal else EXIT_BUDGET
    return Outcome("r3", {"n": args.n, **_budget_params(args)}, row, [row], code=code)


def cmd_r3_table(args) -> Outcome:
    profile, ws = _table(args, args.N)
    rows = [_witness_row(w) for w in ws]
    res = {"rows": rows, "c_upper": profile.c_upper}
    code = EXIT_OK if profile.all_optimal else EXIT_BUDGET
    return Outcome("r3-table", {"N": args.N, **_budget_params(args)}, res, rows, code=code)


def cmd_fekete(args) -> Outcome:
    profile, _ = _table(args, args.N)
    params = {"N": args.N, **_budget_params(args)}
    if not profile.all_optimal:
        msg = "table has non-optimal entries; subadditivity audit refused"
        res = {"refused": True, "reason": msg}
        return Outcome("fekete", params, res, [res], msg + "\n", EXIT_BUDGET)
    v = fekete_audit(profile)
    res = {"violations": v, "pairs_checked": sum(1 for m in range(1, args.N // 2 + 1)
                                                 for _ in range(m, args.N - m + 1)),
           "c_upper": density_limit_estimate(profile)}
    rows = [x.__dict__ for x in v]
    text = (f"{len(v)} violations over {res['pairs_checked']} pairs; "
            f"min f(n)/n = {res['c_upper']}\n")
    return Outcome("fekete", params, res, rows, text)


def cmd_discrepancy(args) -> Outcome:
    S = _source(args, args.source)
    n = args.horizon if args.horizon is not None else max(S.max_element, 1)
    C = Fraction(args.density) if args.density is not None else Fraction(len(S.restrict(n)), n)
    rep = discrepancy(S, n, C, args.grid)
    res = rep.__dict__
    params = {**_set_params(args, args.source), "n": n, "density": C, "grid": rep.grid_size}
    return Outcome("discrepancy", params, res, [res])


def cmd_construct(args) -> Outcome:
    S = _source(args, args.source)
    res = {"size": len(S), "elements": S}
    return Outcome("construct", _set_params(args, args.source), res,
                   [{"element": x} for x in S], " ".join(map(str, S)) + "\n")


def cmd_largeness(args) -> Outcome:
    S = _source(args, args.source)
    pr = largeness_probe(S, args.N, args.points, args.exact_limit)
    rows = [r.__dict__ for r in pr.rows]
    params = {**_set_params(args, args.source), "N": args.N, "points": args.points,
              "exact": pr.exact}
    res = {"rows": rows, "abel_residual": pr.abel_residual}
    code = EXIT_OK
    if not pr.abel_residual.is_zero():
        log.error("summation-by-parts residual is nonzero: %s", pr.abel_residual)
        code = EXIT_INPUT
    return Outcome("largeness", params, res, rows, code=code)


def _ns(args, default_top: int) -> list[int]:
    if args.ns:
        return sorted({int(x) for x in args.ns.split(",") if x})
    return probe_grid(default_top, args.points)


def cmd_audit_lemma3(args) -> Outcome:
    return _audit_rows(args, lemma3_residual_audit, "lemma3-residual")


def cmd_audit_lemma2(args) -> Outcome:
    return _audit_rows(args, lambda src, ns, label: lemma2_discrepancy_audit(src, ns, args.grid, label),
                       "lemma2-discrepancy")


def _audit_rows(args, fn, name) -> Outcome:
    spec = args.source
    code = EXIT_OK
    if spec.startswith("extremal:"):
        N = int(spec.split(":", 1)[1])
        profile, ws = _table(args, N)
        ns = [int(x) for x in args.ns.split(",")] if args.ns else None
        report = fn(ws, ns, spec)
        params = {"source": spec, **_budget_params(args)}
        if not profile.all_optimal:
            code = EXIT_BUDGET
    else:
        S = _source(args, spec)
        ns = _ns(args, max(S.max_element, 1))
        report = fn(S, ns, spec)
        params = _set_params(args, spec)
    params["horizons"] = report.params["horizons"]
    rows = [r.__dict__ for r in report.rows]
    return Outcome(name, params, rows, rows, code=code, audit=True)


def cmd_audit_chain(args) -> Outcome:
    profile, _ = _table(args, args.N)
    params = {"N": args.N, **_budget_params(args)}
    if not profile.all_optimal:
        return Outcome("roth-chain", params, [], [], "table has non-optimal entries\n",
                       EXIT_BUDGET, audit=True)
    rows = [r.__dict__ for r in roth_chain_audit(profile)]
    return Outcome("roth-chain", params, rows, rows, audit=True)


def cmd_abel_check(args) -> Outcome:
    S = _source(args, args.source)
    r = abel_identity_residual(S, args.N)
    res = {"N": args.N, "residual": r, "zero": r.is_zero()}
    return Outcome("abel-check", {**_set_params(args, args.source), "N": args.N}, res, [res],
                   code=EXIT_OK if r.is_zero() else EXIT_INPUT)


def _budget_params(args) -> dict:
    return {"budget_nodes": args.budget_nodes, "budget_secs": args.budget_secs}


def _common(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    g = parser.add_argument_group("common options")
    g.add_argument("--format", choices=("json", "csv", "text"), default=d("text"))
    g.add_argument("--budget-nodes", type=int, default=d(None), metavar="N",
                   help="search node limit per horizon")
    g.add_argument("--budget-secs", type=float, default=d(None), metavar="S",
                   help="wall-clock limit per horizon")
    g.add_argument("--grid", type=int, default=d(None), metavar="M",
                   help="roots-of-unity grid size (default 4n+1)")
    g.add_argument("--threads", type=int, default=d(1), metavar="K")
    g.add_argument("--seed", type=int, default=d(None), metavar="S",
                   help="seed for the random_density family")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ap3lab", description="Finite experiments on three-term progressions.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _common(p, suppress=False)
    sub = p.add_subparsers(dest="command", metavar="SUBCOMMAND", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_, description=help_)
        _common(sp, suppress=True)
        sp.set_defaults(func=fn)
        return sp

    sp = add("count", cmd_count, "count ordered 3-AP triples (equal terms allowed)")
    sp.add_argument("source", help=SOURCE_HELP)
    sp.add_argument("--method", choices=("auto", "bruteforce", "convolution"), default="auto")

    sp = add("find-ap", cmd_find_ap, "find an arithmetic progression with at least k terms")
    sp.add_argument("source", help=SOURCE_HELP)
    sp.add_argument("-k", type=int, default=3)

    sp = add("r3", cmd_r3, "largest AP-free subset of [1..n]")
    sp.add_argument("n", type=int)

    sp = add("r3-table", cmd_r3_table, "f(n) and witnesses for every n <= N")
    sp.add_argument("N", type=int)

    sp = add("fekete", cmd_fekete, "check f(m+n) <= f(m) + f(n) over the exact table")
    sp.add_argument("N", type=int)

    sp = add("discrepancy", cmd_discrepancy, "sup over roots of unity of the exponential-sum gap")
    sp.add_argument("source", help=SOURCE_HELP)
    sp.add_argument("--n", dest="horizon", type=int, help="horizon (default max element)")
    sp.add_argument("--density", help="density C as p/q (default |S|/n)")

    sp = add("construct", cmd_construct, "print the elements of a set source")
    sp.add_argument("source", help=SOURCE_HELP)

    sp = add("largeness", cmd_largeness, "partial sums of 1/s and f(m)/m^2 on a log grid")
    sp.add_argument("source", help=SOURCE_HELP)
    sp.add_argument("N", type=int)
    sp.add_argument("--points", type=int, default=32)
    sp.add_argument("--exact-limit", type=int, default=10**4,
                    help="largest N summed in exact rationals")

    for name, fn, help_ in (("audit-lemma3", cmd_audit_lemma3, "triple count residual a - C^3 n^2/2"),
                            ("audit-lemma2", cmd_audit_lemma2, "exponential-sum discrepancy per n")):
        sp = add(name, fn, help_)
        sp.add_argument("source", help=SOURCE_HELP + " | extremal:<N>")
        sp.add_argument("--ns", help="comma-separated horizons (default log grid)")
        sp.add_argument("--points", type=int, default=16)

    sp = add("audit-chain", cmd_audit_chain, "f(n) against 2^(1/3) n^(2/3), report only")
    sp.add_argument("N", type=int)

    sp = add("abel-check", cmd_abel_check, "exact summation-by-parts residual at N")
    sp.add_argument("source", help=SOURCE_HELP)
    sp.add_argument("N", type=int)
    return p


def render(out: Outcome, fmt: str) -> str:
    if fmt == "json":
        if out.audit:
            return dumps_json({"audit": out.command, "params": out.params, "rows": out.rows})
        return dumps_json({"command": out.command, "params": out.params, "result": out.result})
    if fmt == "csv":
        return dumps_csv(out.rows)
    if out.text is not None:
        return out.text
    return dumps_text(out.rows)


def main(argv: list[str] | None = None) -> int:
    level = os.environ.get("AP3LAB_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be >= 1")
    try:
        if hasattr(args, "source"):
            _check_seed(args, args.source)
        out = args.func(args)
    except UsageError as exc:
        print(f"ap3lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, DomainError, OSError, NonOptimalProfile, IdentityFailure) as exc:
        print(f"ap3lab: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"ap3lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(render(out, args.format))
    if out.code == EXIT_BUDGET:
        print("ap3lab: budget exhausted; result is a lower bound", file=sys.stderr)
    return out.code


if __name__ == "__main__":
    sys.exit(main())
