"""Arithmetic consequences of adjunction for curves of low degree.

Each rule is an independent predicate on a candidate with ``D <= Delta``.
Rules never short-circuit one another so a report lists every violation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Optional, Sequence

from .adjunction import (
    CurveCandidate,
    OrbifoldSurface,
    adjunction_residual,
    check_compatible,
    pair_term_values,
    virtual_dimension,
)
from .germs import orbifold_K
from .topology import boundary_divisibility, fibonacci_branch


@dataclass
class RuleResult:
    name: str
    applicable: bool
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"rule": self.name, "applicable": self.applicable, "passed": self.passed, **self.detail}


@dataclass
class ConstraintReport:
    results: list

    @property
    def violations(self) -> list[RuleResult]:
        return [r for r in self.results if r.applicable and not r.passed]

    @property
    def violated_rules(self) -> set[str]:
        return {r.name for r in self.violations}

    @property
    def ok(self) -> bool:
        return not self.violations

    def __getitem__(self, name: str) -> RuleResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_json(self) -> dict:
        return {"ok": self.ok, "rules": [r.to_json() for r in self.results]}


class _Context:
    def __init__(self, surface, cand, others):
        self.surface = surface
        self.cand = cand
        self.others = others
        self.Delta = surface.Delta
        self.D = cand.D
        self.Z = cand.orbifold_points()
        self.K = {id(inc): orbifold_K(inc) for inc in cand.incidences}

    def p_of(self, inc) -> int:
        return self.surface.points[inc.point].p

    def two_point_roles(self):
        """``(z, z')`` with ``z'`` over the smaller order, when ``|Z| = 2`` at distinct points."""
        if len(self.Z) != 2 or self.Z[0].point == self.Z[1].point:
            return None
        z, zp = sorted(self.Z, key=self.p_of, reverse=True)
        return z, zp

    def vdim(self) -> Optional[Fraction]:
        if any(inc.m1 is None or inc.m2 is None for inc in self.Z):
            return None
        return virtual_dimension(self.surface, self.cand)


def _na(name):
    return RuleResult(name, False, True)


def _adjunction(c: _Context) -> RuleResult:
    r = adjunction_residual(c.surface, c.cand)
    return RuleResult("adjunction", True, r == 0, {"residual": str(r)})


def _kzzz(c: _Context) -> RuleResult:
    # local terms only from orbifold points of the curve
    bad = [inc.point for inc in c.cand.incidences if inc.d == 1 and c.K[id(inc)] != 0]
    offenders = [
        (i, j) for i, j, _ in c.cand.pair_terms
        if c.cand.incidences[i].d == 1 or c.cand.incidences[j].d == 1
    ]
    ok = c.cand.smooth_terms == 0 and not bad and not offenders
    return RuleResult(
        "kzzz", True, ok,
        {"smooth_terms": str(c.cand.smooth_terms), "trivial_isotropy_K": bad, "pairs_outside_Z": offenders},
    )


def _contribz(c: _Context) -> RuleResult:
    bad = [
        {"point": inc.point, "d": inc.d, "p_squared": c.p_of(inc) ** 2}
        for inc in c.Z
        if c.K[id(inc)] == 0 and inc.d != c.p_of(inc) ** 2
    ]
    return RuleResult("contribz", bool(c.Z), not bad, {"offenders": bad})


def _nopun(c: _Context) -> RuleResult:
    bad = [inc.point for inc in c.cand.incidences if inc.d == 1]
    return RuleResult("nopun", True, not bad, {"trivial_isotropy_at": bad})


def _z12(c: _Context) -> RuleResult:
    n = len(c.Z)
    return RuleResult("Z12", True, 1 <= n <= 2, {"size": n})


def _no_double_point(c: _Context) -> RuleResult:
    points = [inc.point for inc in c.Z]
    repeated = sorted({p for p in points if points.count(p) > 1})
    nonzero = [str(v) for v in pair_term_values(c.cand) if v != 0]
    return RuleResult("no_double_point", True, not repeated and not nonzero, {"repeated_points": repeated, "pair_terms": nonzero})


def _coprime(c: _Context) -> RuleResult:
    targets = []
    if len(c.Z) == 1:
        targets = [c.Z[0]]
    elif len(c.Z) == 2:
        a, b = c.Z
        if c.K[id(b)] == 0:
            targets.append(a)
        if c.K[id(a)] == 0:
            targets.append(b)
    if not targets:
        return _na("coprime")
    bad = []
    for inc in targets:
        K = c.K[id(inc)]
        R1 = inc.branch.R1
        coprime = R1 is None or gcd(inc.Q, R1) == 1
        if not (K - 1 < inc.d and coprime):
            bad.append({"point": inc.point, "K": K, "d": inc.d, "Q": inc.Q, "R1": R1})
    return RuleResult("coprime", True, not bad, {"offenders": bad})


def _kzneq1(c: _Context) -> RuleResult:
    bad = [inc.point for inc in c.Z if c.K[id(inc)] == 1]
    return RuleResult("Kzneq1", bool(c.Z), not bad, {"K_equal_one_at": bad})


def _vdimbound(c: _Context) -> RuleResult:
    if len(c.Z) != 1:
        return _na("vdimbound")
    v = c.vdim()
    if v is None:
        return _na("vdimbound")
    ok = v <= 1 and (v != 1 or 3 * c.D > c.Delta)
    return RuleResult("vdimbound", True, ok, {"vdim": str(v), "D": c.D, "Delta": c.Delta})


def _oddfib(c: _Context) -> RuleResult:
    if len(c.Z) != 1:
        return _na("oddfib")
    inc = c.Z[0]
    p = c.p_of(inc)
    maximal = p == max(c.surface.ps)
    K = c.K[id(inc)]
    if K == 0:
        branch_ok = inc.d == p * p and fibonacci_branch(p) is not None
    else:
        # D < (3 - sqrt 5)/2 * Delta, squared out exactly
        gap = 3 * c.Delta - 2 * c.D
        branch_ok = gap > 0 and gap * gap > 5 * c.Delta * c.Delta
    below = 3 * c.D < 2 * c.Delta
    return RuleResult(
        "oddfib", True, maximal and branch_ok and below,
        {"point_maximal": maximal, "K": K, "branch_ok": branch_ok, "D_below_two_thirds": below},
    )


def _dsq(c: _Context) -> RuleResult:
    if len(c.Z) != 1 or c.vdim() != 1:
        return _na("dsq")
    inc = c.Z[0]
    p = c.p_of(inc)
    R1 = inc.branch.R1
    if R1 is None:
        return RuleResult("dsq", True, False, {"reason": "germ has no second-coordinate terms"})
    lhs = c.D * c.D * inc.d * inc.d
    rhs = c.Delta * c.Delta * p * p * inc.Q * R1
    return RuleResult("dsq", True, lhs == rhs, {"D": c.D, "Q": inc.Q, "R1": R1, "d": inc.d})


def _cyl_a(c: _Context) -> RuleResult:
    roles = c.two_point_roles()
    if roles is None:
        return _na("cyl_A")
    _, zp = roles
    pp = c.p_of(zp)
    ok = c.K[id(zp)] == 0 and zp.d == pp * pp
    return RuleResult("cyl_A", True, ok, {"smaller_point": zp.point, "K": c.K[id(zp)], "d": zp.d})


def _cyl_b(c: _Context) -> RuleResult:
    roles = c.two_point_roles()
    if roles is None:
        return _na("cyl_B")
    pp = c.p_of(roles[1])
    return RuleResult("cyl_B", True, 3 * pp * c.D < c.Delta, {"D": c.D, "bound": str(Fraction(c.Delta, 3 * pp))})


def _cyl_c(c: _Context) -> RuleResult:
    roles = c.two_point_roles()
    if roles is None:
        return _na("cyl_C")
    pk = c.p_of(roles[0])
    return RuleResult("cyl_C", True, pk == max(c.surface.ps), {"larger_point_order": pk})


def _cyl_d(c: _Context) -> RuleResult:
    roles = c.two_point_roles()
    if roles is None or not c.others:
        return _na("cyl_D")
    pts = {inc.point for inc in c.Z}
    clashes = [
        o.label or o.D for o in c.others
        if o is not c.cand and o.D <= c.Delta and pts <= {inc.point for inc in o.orbifold_points()}
    ]
    return RuleResult("cyl_D", True, not clashes, {"other_curves": clashes})


def _boundary(c: _Context) -> RuleResult:
    div = boundary_divisibility(c.surface.ps, c.cand.met_points())
    return RuleResult("boundary_divisibility", True, c.D % div == 0, {"D": c.D, "divisor": div})


RULES: tuple[Callable[[_Context], RuleResult], ...] = (
    _adjunction, _kzzz, _contribz, _nopun, _z12, _no_double_point, _coprime, _kzneq1,
    _vdimbound, _oddfib, _dsq, _cyl_a, _cyl_b, _cyl_c, _cyl_d, _boundary,
)
RULE_NAMES = (
    "adjunction", "kzzz", "contribz", "nopun", "Z12", "no_double_point", "coprime", "Kzneq1",
    "vdimbound", "oddfib", "dsq", "cyl_A", "cyl_B", "cyl_C", "cyl_D", "boundary_divisibility",
)


def constraint_filter(
    surface: OrbifoldSurface,
    cand: CurveCandidate,
    others: Sequence[CurveCandidate] = (),
) -> ConstraintReport:
    """Evaluate every rule on a candidate with ``D <= Delta``.

    ``others`` are further curves on the same surface, used by the uniqueness
    rule for curves through two points.
    """
    check_compatible(surface, cand)
    if cand.D > surface.Delta:
        raise ValueError(f"D={cand.D} exceeds Delta={surface.Delta}")
    ctx = _Context(surface, cand, list(others))
    return ConstraintReport([rule(ctx) for rule in RULES])
