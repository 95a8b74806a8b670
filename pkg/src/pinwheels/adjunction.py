"""Homology bookkeeping and the orbifold adjunction formula for rational curves.

Classes of curves in the orbifold plane are rational multiples ``D * E`` of a
single class with ``E^2 = 1/Delta^2``, where ``Delta`` is the product of the
orders ``p_i`` of the singular points.  A candidate curve is described by
``D`` and the germs it has at singular points; the residual of the adjunction
formula and the virtual dimension are then exact rationals.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, prod
from typing import Optional, Sequence

from .germs import GermBranch, OrbifoldIncidence, k_pair, orbifold_K
from .markov import MarkovTriple, characteristic_residues, is_markov_triple
from .topology import PinwheelType


@dataclass(frozen=True)
class OrbifoldSurface:
    """The plane with singular points of types ``(p_i, q_i)``; ``chern_k`` is ``c_1 = kH``."""

    points: tuple
    chern_k: int = 3

    def __post_init__(self):
        pts = tuple(pt if isinstance(pt, PinwheelType) else PinwheelType(*pt) for pt in self.points)
        object.__setattr__(self, "points", pts)
        ps = [pt.p for pt in pts]
        for i in range(len(ps)):
            for j in range(i + 1, len(ps)):
                if gcd(ps[i], ps[j]) != 1:
                    raise ValueError(f"orders {ps[i]} and {ps[j]} are not coprime")

    @property
    def ps(self) -> list[int]:
        return [pt.p for pt in self.points]

    @property
    def Delta(self) -> int:
        return prod(self.ps)

    def to_json(self) -> dict:
        return {"points": [[pt.p, pt.q] for pt in self.points], "chern_k": self.chern_k}


@dataclass(frozen=True)
class CurveCandidate:
    """Genus-zero orbifold curve in class ``D * E``.

    ``pair_terms`` lists ``(i, j, value)`` for incidences ``i`` and ``j`` over
    the same point; a ``None`` value is computed from the germs.
    ``smooth_terms`` collects contributions from points away from the
    singular set (double points and singular points of the curve there).
    """

    D: int
    incidences: tuple = ()
    pair_terms: tuple = ()
    smooth_terms: Fraction = Fraction(0)
    label: str = ""

    def __post_init__(self):
        if self.D < 1:
            raise ValueError("D must be positive")
        object.__setattr__(self, "incidences", tuple(self.incidences))
        object.__setattr__(self, "pair_terms", tuple(self.pair_terms))
        object.__setattr__(self, "smooth_terms", Fraction(self.smooth_terms))
        for i, j, _ in self.pair_terms:
            a, b = self.incidences[i], self.incidences[j]
            if i == j or a.point != b.point:
                raise ValueError(f"pair ({i}, {j}) is not two incidences over one point")

    def orbifold_points(self) -> list[OrbifoldIncidence]:
        """The incidences with nontrivial isotropy."""
        return [inc for inc in self.incidences if inc.d > 1]

    def met_points(self) -> set[int]:
        return {inc.point for inc in self.incidences}


def check_compatible(surface: OrbifoldSurface, cand: CurveCandidate) -> None:
    for inc in cand.incidences:
        if not 0 <= inc.point < len(surface.points):
            raise ValueError(f"incidence names point {inc.point}, surface has {len(surface.points)}")
        pt = surface.points[inc.point]
        if (inc.p, inc.q) != (pt.p, pt.q):
            raise ValueError(f"incidence type ({inc.p},{inc.q}) differs from point ({pt.p},{pt.q})")


def homology_pairing(D: int, D2: int, Delta: int) -> Fraction:
    if Delta < 1:
        raise ValueError("Delta must be positive")
    return Fraction(D * D2, Delta * Delta)


def chern_pairing(D: int, Delta: int, k: int = 3) -> Fraction:
    if Delta < 1:
        raise ValueError("Delta must be positive")
    return Fraction(k * D, Delta)


def pair_term_values(cand: CurveCandidate) -> list[Fraction]:
    out = []
    for i, j, value in cand.pair_terms:
        if value is None:
            value = k_pair(cand.incidences[i], cand.incidences[j])
        out.append(Fraction(value))
    return out


@dataclass
class AdjunctionTerms:
    self_term: Fraction
    isotropy: Fraction
    local: Fraction
    pairs: Fraction
    smooth: Fraction

    @property
    def total(self) -> Fraction:
        return self.self_term + self.isotropy + self.local + self.pairs + self.smooth

    @property
    def residual(self) -> Fraction:
        return 1 - self.total


def adjunction_terms(surface: OrbifoldSurface, cand: CurveCandidate) -> AdjunctionTerms:
    check_compatible(surface, cand)
    Delta, D = surface.Delta, cand.D
    self_term = Fraction(surface.chern_k * Delta * D - D * D, 2 * Delta * Delta)
    isotropy = sum((Fraction(1, 2) * (1 - Fraction(1, inc.d)) for inc in cand.orbifold_points()), Fraction(0))
    local = sum((Fraction(orbifold_K(inc), 2 * inc.d) for inc in cand.incidences), Fraction(0))
    pairs = sum(pair_term_values(cand), Fraction(0))
    return AdjunctionTerms(self_term, isotropy, local, pairs, cand.smooth_terms)


def adjunction_residual(surface: OrbifoldSurface, cand: CurveCandidate) -> Fraction:
    """One minus the right-hand side of the genus-zero adjunction formula; zero when it holds."""
    return adjunction_terms(surface, cand).residual


def virtual_dimension(surface: OrbifoldSurface, cand: CurveCandidate) -> Fraction:
    check_compatible(surface, cand)
    Z = cand.orbifold_points()
    total = chern_pairing(cand.D, surface.Delta, surface.chern_k) + 2 - (3 - len(Z))
    for inc in Z:
        if inc.m1 is None or inc.m2 is None:
            raise ValueError(f"incidence at point {inc.point} is missing its weights")
        total -= Fraction(inc.m1 + inc.m2, inc.d)
    return total


def suborbifold_incidence(p: int, q: int, point: int = 0) -> OrbifoldIncidence:
    """Smooth germ with full isotropy, leaving along the weight ``pq - 1`` direction."""
    m2 = p * q - 1
    return OrbifoldIncidence(p, q, p * p, GermBranch(1, (m2,)), 1, m2, point=point)


def one_point_candidate(t: Sequence[int]) -> tuple[OrbifoldSurface, CurveCandidate]:
    """Curve with a single orbifold point over the largest entry ``p`` of a Markov triple.

    For ``(a, b, p)`` the germ is ``(w^{a^2}, w^{b^2} + ...)`` with full isotropy
    and ``D = ab``; the point type uses ``q = 3b/a mod p``.
    """
    a, b, p = sorted(t)
    if not is_markov_triple(a, b, p):
        raise ValueError(f"{tuple(t)} is not a Markov triple")
    if p < 2:
        raise ValueError("the triple (1,1,1) has no orbifold point")
    q = 3 * b * pow(a, -1, p) % p
    Q, R1 = a * a, b * b
    inc = OrbifoldIncidence(p, q, p * p, GermBranch(Q, (R1,)), Q % (p * p), R1 % (p * p))
    surface = OrbifoldSurface(((p, q),))
    return surface, CurveCandidate(a * b, (inc,), label=f"one-point {(a, b, p)}")


def _vdim_zero_residues(x: int, y: int, D: int) -> Optional[tuple[int, int]]:
    t = MarkovTriple.of(x, y, D)
    rx = sorted(characteristic_residues(t, x).residues) if x > 1 else [0]
    ry = sorted(characteristic_residues(t, y).residues) if y > 1 else [0]
    for qx in rx:
        for qy in ry:
            if y * qx + x * qy == 3 * D + x * y:
                return qx, qy
    return None


def pair_candidate(x: int, y: int, D: int) -> tuple[OrbifoldSurface, CurveCandidate]:
    """Curve through the points of orders ``x`` and ``y`` with ``(x, y, D)`` a Markov triple.

    Both germs are smooth with full isotropy.  Residues are chosen so the
    virtual dimension vanishes when that is possible; otherwise the canonical
    residues are used.  Entries equal to 1 are not orbifold points and drop out.
    """
    if not is_markov_triple(x, y, D):
        raise ValueError(f"{(x, y, D)} is not a Markov triple")
    x, y = sorted((x, y))
    qs = _vdim_zero_residues(x, y, D)
    t = MarkovTriple.of(x, y, D)
    if qs is None:
        qs = tuple(characteristic_residues(t, v).canonical or 0 for v in (x, y))
    pts, incs = [], []
    for p, q in zip((x, y), qs):
        if p == 1:
            continue
        incs.append(suborbifold_incidence(p, q, point=len(pts)))
        pts.append((p, q))
    return OrbifoldSurface(tuple(pts)), CurveCandidate(D, tuple(incs), label=f"pair {(x, y)} D={D}")


def pair_candidates(t: Sequence[int]) -> list[tuple[tuple[int, int], int, OrbifoldSurface, CurveCandidate]]:
    """For each pair of entries of ``t``, the candidate whose class is the third entry."""
    a, b, c = sorted(t)
    out = []
    for (x, y), D in (((b, c), a), ((a, c), b), ((a, b), c)):
        surface, cand = pair_candidate(x, y, D)
        out.append(((x, y), D, surface, cand))
    return out


def expects_vdim_zero(x: int, y: int, D: int) -> bool:
    """Whether the pair candidate should have vanishing virtual dimension.

    That happens exactly when both entries are orbifold points and ``D`` is
    the smaller root of ``D^2 - 3xyD + x^2 + y^2``.
    """
    return min(x, y) >= 2 and D < 3 * x * y - D


def quadratic_roots(x: int, y: int) -> Optional[tuple[int, int]]:
    """Integer roots of ``D^2 - 3xyD + x^2 + y^2``, smaller first, if any."""
    disc = 9 * x * x * y * y - 4 * (x * x + y * y)
    if disc < 0:
        return None
    s = isqrt(disc)
    if s * s != disc or (3 * x * y - s) % 2:
        return None
    return (3 * x * y - s) // 2, (3 * x * y + s) // 2


def candidate_to_json(surface: OrbifoldSurface, cand: CurveCandidate) -> dict:
    return {
        "surface": surface.to_json(),
        "D": cand.D,
        "incidences": [
            {
                "point": inc.point,
                "d": inc.d,
                "branch": inc.branch.to_json(),
                "m1": inc.m1,
                "m2": inc.m2,
                **({"K": inc.K} if inc.K is not None else {}),
            }
            for inc in cand.incidences
        ],
        "pair_terms": [[i, j, None if v is None else str(v)] for i, j, v in cand.pair_terms],
        "smooth_terms": str(cand.smooth_terms),
    }


def candidate_from_json(obj: dict) -> tuple[OrbifoldSurface, CurveCandidate]:
    """Parse the candidate schema used by the command line."""
    surf = obj["surface"]
    surface = OrbifoldSurface(tuple(tuple(pt) for pt in surf["points"]), int(surf.get("chern_k", 3)))
    incs = []
    for rec in obj.get("incidences", []):
        point = int(rec["point"])
        pt = surface.points[point]
        if "branch" in rec:
            branch = GermBranch.from_json(rec["branch"])
        else:
            Rs = rec.get("R", [rec["R1"]] if "R1" in rec else [])
            branch = GermBranch.from_json({"Q": rec["Q"], "R": Rs, "axis": rec.get("axis", 0), **({"coeffs": rec["coeffs"]} if "coeffs" in rec else {})})
        incs.append(
            OrbifoldIncidence(
                pt.p, pt.q, int(rec["d"]), branch, rec.get("m1"), rec.get("m2"), rec.get("K"), point
            )
        )
    pairs = tuple(
        (int(i), int(j), None if v is None else Fraction(str(v))) for i, j, v in obj.get("pair_terms", [])
    )
    cand = CurveCandidate(
        int(obj["D"]), tuple(incs), pairs, Fraction(str(obj.get("smooth_terms", 0))), obj.get("label", "")
    )
    return surface, cand
