"""Command line front end.

Every command prints JSON by default and a plain table with
``--format text``.  Exit codes: 0 ok, 1 a check found a violation,
2 bad usage or invalid input.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Sequence

from . import atf, classify, diophantine, germs, markov, milnor, topology, verify
from .adjunction import adjunction_terms, candidate_from_json, virtual_dimension
from .constraints import constraint_filter
from .svg import render_svg

EXIT = {"ok": 0, "violation": 1, "error": 2}


@dataclass
class CommandResult:
    status: str
    payload: Any = None
    diagnostics: list = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return EXIT[self.status]


class UsageError(Exception):
    pass


def _ints(text: str) -> list[int]:
    try:
        return [int(s) for s in text.replace(" ", "").split(",") if s]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _branch(text: str) -> germs.GermBranch:
    """A branch from JSON (``{"Q": 2, "R": [3], "coeffs": [...]}``) or the short form ``Q:R1,R2``."""
    text = text.strip()
    if text.startswith("{"):
        return germs.GermBranch.from_json(json.loads(text))
    if ":" in text:
        q, rs = text.split(":", 1)
        return germs.GermBranch(int(q), tuple(_ints(rs)))
    raise UsageError(f"cannot read branch {text!r}")


def _write_svg(obj, path: Optional[str], diagnostics: list) -> Optional[str]:
    if not path:
        return None
    Path(path).write_text(render_svg(obj))
    diagnostics.append(f"wrote {path}")
    return path


# ---- markov ----

def _markov(args) -> CommandResult:
    if args.action == "enumerate":
        return CommandResult("ok", [t.to_json() for t in markov.enumerate_triples(args.max)])
    if args.action == "check":
        a, b, c = args.entries
        return CommandResult("ok", {"triple": sorted(args.entries), "markov": markov.is_markov_triple(a, b, c)})
    if args.action == "mutate":
        t = markov.MarkovTriple.of(*args.entries)
        return CommandResult("ok", {"from": t.to_json(), "slot": args.slot, "to": markov.mutate(t, args.slot).to_json()})
    if args.action == "residues":
        t = markov.MarkovTriple.of(*args.entries)
        entries = [args.entry] if args.entry else sorted(set(t))
        out = []
        for p in entries:
            res = markov.characteristic_residues(t, p)
            out.append({"p": p, "residues": sorted(res.residues), "canonical": res.canonical})
        return CommandResult("ok", {"triple": t.to_json(), "entries": out})
    if args.action == "partner":
        t = markov.markov_partner(args.p, args.q)
        return CommandResult("ok", {"p": args.p, "q": args.q, "triple": t.to_json() if t else None})
    raise UsageError(args.action)


# ---- dioph ----

def _dioph(args) -> CommandResult:
    if args.action == "check":
        eq = diophantine.RosenbergerEquation.parse(args.eq)
        ok, cert = diophantine.has_positive_solution(eq)
        return CommandResult("ok", {"eq": list(eq.as_tuple()), "solvable": ok, "certificate": cert.to_json()})
    if args.action == "table":
        report = diophantine.verify_rosenberger_table(args.max_gamma)
        return CommandResult("ok" if report.ok else "violation", report.to_json())
    if args.action == "family":
        rows = []
        for t in range(1, args.t_max + 1):
            ok, cert = diophantine.has_positive_solution(diophantine.one_parameter_family(t))
            rows.append({"t": t, "solvable": ok, "witness": list(cert.witness) if cert.witness else None})
        return CommandResult("ok", rows)
    raise UsageError(args.action)


# ---- germ ----

def _germ(args) -> CommandResult:
    if args.action == "K":
        Rs = _ints(args.R)
        seq, M = germs.gcd_sequence(args.Q, Rs)
        out = {"Q": args.Q, "R": Rs, "gcd_sequence": list(seq), "M": M, "K": germs.local_adjunction_K(args.Q, Rs)}
        if args.oracle:
            out["milnor"] = milnor.milnor_number(milnor.branch_from_profile(args.Q, Rs))
        return CommandResult("ok", out)
    if args.action == "nu":
        b0, b1 = _branch(args.b0), _branch(args.b1)
        return CommandResult("ok", {"b0": b0.to_json(), "b1": b1.to_json(), "nu": germs.branch_intersection(b0, b1)})
    if args.action == "weights":
        m1, m2 = germs.equivariance_weights(args.Q, args.R1, args.d)
        return CommandResult("ok", {"m1": m1, "m2": m2})
    raise UsageError(args.action)


# ---- classify ----

def _pairs(values: Sequence[int], n: int) -> list[tuple[int, int]]:
    if len(values) != 2 * n:
        raise UsageError(f"expected {2 * n} integers (p q for each point), got {len(values)}")
    return [(values[2 * i], values[2 * i + 1]) for i in range(n)]


def _classify(args) -> CommandResult:
    if args.action == "one":
        v = classify.classify_one(args.p)
    elif args.action == "pair":
        (p1, q1), (p2, q2) = _pairs(args.values, 2)
        v = classify.classify_pair(p1, q1, p2, q2)
    elif args.action == "triple":
        v = classify.classify_triple(_pairs(args.values, 3))
    else:
        raise UsageError(args.action)
    return CommandResult("ok", v.to_json())


# ---- adjunction ----

def _adjunction(args) -> CommandResult:
    text = sys.stdin.read() if args.candidate == "-" else Path(args.candidate).read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"candidate is not valid JSON: {e}") from None
    surface, cand = candidate_from_json(obj)
    terms = adjunction_terms(surface, cand)
    out = {
        "Delta": surface.Delta,
        "D": cand.D,
        "residual": str(terms.residual),
        "terms": {k: str(getattr(terms, k)) for k in ("self_term", "isotropy", "local", "pairs", "smooth")},
    }
    try:
        out["vdim"] = str(virtual_dimension(surface, cand))
    except ValueError as e:
        out["vdim"] = None
        out["vdim_error"] = str(e)
    status = "ok" if terms.residual == 0 else "violation"
    if cand.D <= surface.Delta:
        report = constraint_filter(surface, cand)
        out["constraints"] = report.to_json()
        out["violated"] = sorted(report.violated_rules)
        if not report.ok:
            status = "violation"
    return CommandResult(status, out)


# ---- pinwheel ----

def _pinwheel(args) -> CommandResult:
    if args.action == "profile":
        prof = topology.topology_profile(args.p, args.q)
        g, tag = topology.reeb_stabiliser(args.p, args.q)
        return CommandResult("ok", {"p": args.p, "q": args.q, **prof.to_json(), "reeb_stabiliser": g, "case": tag})
    if args.action == "stabiliser":
        g, tag = topology.reeb_stabiliser(args.p, args.q)
        return CommandResult("ok", {"p": args.p, "q": args.q, "order": g, "case": tag})
    if args.action == "fib":
        fb = topology.fibonacci_branch(args.p)
        if fb is None:
            return CommandResult("ok", {"p": args.p, "branch": None})
        L, ratio = fb
        return CommandResult("ok", {"p": args.p, "branch": {"lucas": L, "D_ratio": str(ratio)}})
    raise UsageError(args.action)


# ---- atf ----

def _atf(args) -> CommandResult:
    diag: list = []
    if args.action == "cone":
        drawn = atf.wahl_cone(args.p, args.q)
        out = drawn.to_json()
    elif args.action == "triangle":
        drawn = atf.wps_triangle(tuple(args.entries))
        out = drawn.to_json()
    elif args.action == "mutate":
        tri = atf.wps_triangle(tuple(args.entries))
        if not 0 <= args.corner < 3:
            raise UsageError("corner must be 0, 1 or 2")
        drawn, rec = atf.transfer_cut(tri, args.corner)
        out = {
            "before": tri.to_json(),
            "after": drawn.to_json(),
            "scale": str(rec.scale),
            "measured_lengths": [str(rec.measured_lengths[i]) for i in range(3)],
            "area_preserved": rec.area_before == rec.area_after,
            "equivalent_to_standard": atf.lattice_equivalent(drawn, atf.wps_triangle(tuple(drawn.triple))),
        }
    else:
        raise UsageError(args.action)
    _write_svg(drawn, args.svg, diag)
    return CommandResult("ok", out, diag)


# ---- verify ----

def _verify(args) -> CommandResult:
    results = verify.run_all(args.bound, args.seed)
    lines = [r.line() for r in results]
    status = "ok" if all(r.passed for r in results) else "violation"
    return CommandResult(status, {"bound": args.bound, "seed": args.seed, "checks": [r.to_json() for r in results]}, lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pinwheels", description="Markov triples, orbifold curves and pinwheel embeddings.")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    m = sub.add_parser("markov").add_subparsers(dest="action", required=True)
    p = m.add_parser("enumerate")
    p.add_argument("--max", type=int, required=True)
    for name in ("check", "mutate", "residues"):
        p = m.add_parser(name)
        p.add_argument("entries", type=int, nargs=3)
        if name == "mutate":
            p.add_argument("--slot", type=int, required=True, choices=(1, 2, 3))
        if name == "residues":
            p.add_argument("--entry", type=int)
    p = m.add_parser("partner")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)

    d = sub.add_parser("dioph").add_subparsers(dest="action", required=True)
    p = d.add_parser("check")
    p.add_argument("--eq", required=True, help="alpha,beta,gamma,delta")
    p = d.add_parser("table")
    p.add_argument("--max-gamma", type=int, default=6)
    p = d.add_parser("family")
    p.add_argument("--t-max", type=int, default=50)

    g = sub.add_parser("germ").add_subparsers(dest="action", required=True)
    p = g.add_parser("K")
    p.add_argument("--Q", type=int, required=True)
    p.add_argument("--R", default="", help="comma-separated exponents")
    p.add_argument("--oracle", action="store_true", help="also compute the Milnor number independently")
    p = g.add_parser("nu")
    p.add_argument("--b0", required=True, help='JSON branch or "Q:R1,R2"')
    p.add_argument("--b1", required=True)
    p = g.add_parser("weights")
    p.add_argument("--Q", type=int, required=True)
    p.add_argument("--R1", type=int, required=True)
    p.add_argument("--d", type=int, required=True)

    c = sub.add_parser("classify").add_subparsers(dest="action", required=True)
    p = c.add_parser("one")
    p.add_argument("p", type=int)
    for name in ("pair", "triple"):
        p = c.add_parser(name)
        p.add_argument("values", type=int, nargs="+", help="p q for each point")

    a = sub.add_parser("adjunction").add_subparsers(dest="action", required=True)
    p = a.add_parser("check")
    p.add_argument("candidate", help="candidate JSON file, or - for stdin")

    w = sub.add_parser("pinwheel").add_subparsers(dest="action", required=True)
    for name in ("profile", "stabiliser"):
        p = w.add_parser(name)
        p.add_argument("p", type=int)
        p.add_argument("q", type=int)
    p = w.add_parser("fib")
    p.add_argument("p", type=int)

    t = sub.add_parser("atf").add_subparsers(dest="action", required=True)
    p = t.add_parser("cone")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("--svg")
    p = t.add_parser("triangle")
    p.add_argument("entries", type=int, nargs=3)
    p.add_argument("--svg")
    p = t.add_parser("mutate")
    p.add_argument("entries", type=int, nargs=3)
    p.add_argument("--corner", type=int, required=True)
    p.add_argument("--svg", help="draw the mutated triangle")

    v = sub.add_parser("verify").add_subparsers(dest="action", required=True)
    p = v.add_parser("all")
    p.add_argument("--bound", type=int, default=verify.DEFAULT_BOUND)
    p.add_argument("--seed", type=int, default=0)
    _allow_format_anywhere(parser)
    return parser


def _allow_format_anywhere(parser: argparse.ArgumentParser) -> None:
    # leaf commands accept --format too; SUPPRESS keeps the top-level value otherwise
    for action in parser._subparsers._group_actions if parser._subparsers else ():
        for child in action.choices.values():
            if child._subparsers:
                _allow_format_anywhere(child)
            else:
                child.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)


HANDLERS = {
    "markov": _markov,
    "dioph": _dioph,
    "germ": _germ,
    "classify": _classify,
    "adjunction": _adjunction,
    "pinwheel": _pinwheel,
    "atf": _atf,
    "verify": _verify,
}


def run(argv: Optional[Sequence[str]] = None) -> tuple[CommandResult, str]:
    """Parse and dispatch; returns the result and the output format."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        code = e.code if isinstance(e.code, int) else 2
        return CommandResult("ok" if code == 0 else "error", None, ["usage error"] if code else []), "none"
    try:
        return HANDLERS[args.command](args), args.format
    except (UsageError, ValueError, KeyError, TypeError, OSError, AssertionError) as e:
        return CommandResult("error", {"error": str(e)}, [f"{type(e).__name__}: {e}"]), args.format


def _text(payload: Any, indent: str = "") -> str:
    if isinstance(payload, dict):
        lines = []
        for k, v in payload.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{indent}{k}:")
                lines.append(_text(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {json.dumps(v) if isinstance(v, (dict, list)) else v}")
        return "\n".join(lines)
    if isinstance(payload, list):
        lines = []
        for x in payload:
            if isinstance(x, dict):
                lines.append(f"{indent}-")
                lines.append(_text(x, indent + "  "))
            elif isinstance(x, list):
                lines.append(indent + " ".join(map(str, x)))
            else:
                lines.append(f"{indent}{x}")
        return "\n".join(lines)
    return f"{indent}{payload}"


def main(argv: Optional[Sequence[str]] = None) -> int:
    result, fmt = run(argv)
    if fmt == "text":
        if result.payload is not None:
            print(_text(result.payload))
    elif fmt == "json":
        print(json.dumps(result.payload, indent=2, sort_keys=False))
    for line in result.diagnostics:
        print(line, file=sys.stderr)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
