"""Batch checks tying every module to an independent oracle or identity.

Each check returns a :class:`CheckResult`; :func:`run_all` runs the ten of
them in order.  ``bound`` caps the Markov entries scanned, ``seed`` fixes the
random sampling used by the germ property checks.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Optional

import numpy as np
from sympy import factorint

from . import atf, svg
from .adjunction import (
    CurveCandidate,
    OrbifoldSurface,
    adjunction_residual,
    expects_vdim_zero,
    one_point_candidate,
    pair_candidates,
    quadratic_roots,
    suborbifold_incidence,
    virtual_dimension,
)
from .constraints import constraint_filter
from .diophantine import has_positive_solution, one_parameter_family, verify_rosenberger_table
from .germs import (
    CycCoefficient,
    GermBranch,
    OrbifoldIncidence,
    branch_intersection,
    local_adjunction_K,
)
from .markov import (
    characteristic_residues,
    clear_cache,
    enumerate_triples,
    is_markov_triple,
    iter_tree,
    markov_numbers,
    markov_partners,
)
from .milnor import branch_from_profile, milnor_number, oracle_grid
from .topology import fibonacci_branch

LISTED_TRIPLES = (
    (1, 1, 1), (1, 1, 2), (1, 2, 5), (1, 5, 13), (2, 5, 29),
    (1, 13, 34), (5, 13, 194), (5, 29, 433), (2, 29, 169),
)
DEFAULT_BOUND = 10**6
ADJUNCTION_BOUND = 10**4


@dataclass
class CheckResult:
    name: str
    passed: bool
    seconds: float = 0.0
    limit: Optional[float] = None
    detail: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        budget = f" (limit {self.limit:g}s)" if self.limit else ""
        return f"{tag} {self.name}: {self.seconds:.3f}s{budget}"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "seconds": round(self.seconds, 4),
            "limit": self.limit,
            "detail": self.detail,
            "failures": self.failures[:20],
        }


def _timed(name: str, limit: Optional[float], body: Callable[[dict, list], None]) -> CheckResult:
    detail, failures = {}, []
    start = time.perf_counter()
    body(detail, failures)
    secs = time.perf_counter() - start
    passed = not failures and (limit is None or secs < limit)
    if limit is not None and secs >= limit:
        failures.append(f"took {secs:.2f}s, limit {limit}s")
    return CheckResult(name, passed, secs, limit, detail, failures)


# ---- independent oracles ----

def brute_force_triples(bound: int) -> set[tuple[int, int, int]]:
    """All ``a <= b <= c <= bound`` solving the Markov equation, via a grid over ``(a, b)``."""
    a, b = np.meshgrid(np.arange(1, bound + 1, dtype=np.int64), np.arange(1, bound + 1, dtype=np.int64), indexing="ij")
    mask = a <= b
    a, b = a[mask], b[mask]
    # c solves c^2 - 3ab c + a^2 + b^2 = 0
    disc = 9 * a * a * b * b - 4 * (a * a + b * b)
    root = np.floor(np.sqrt(disc.astype(np.float64))).astype(np.int64)
    out = set()
    for r_shift in (-1, 0, 1):
        s = root + r_shift
        square = (s >= 0) & (s * s == disc)
        for sign in (-1, 1):
            num = 3 * a * b + sign * s
            ok = square & (num % 2 == 0)
            c = num // 2
            ok &= (c >= b) & (c <= bound)
            for x, y, z in zip(a[ok], b[ok], c[ok]):
                out.add((int(x), int(y), int(z)))
    return {t for t in out if is_markov_triple(*t)}


def fibonacci_odd_terms(bound: int) -> list[int]:
    """``F_1, F_3, ...`` from ``F_{n+2} = 3 F_n - F_{n-2}``, independent of the topology module."""
    out = [1, 2]
    while 3 * out[-1] - out[-2] <= bound:
        out.append(3 * out[-1] - out[-2])
    return [f for f in out if f <= bound]


# ---- the ten checks ----

def check_enumeration(bound: int = DEFAULT_BOUND) -> CheckResult:
    def body(detail, failures):
        clear_cache()
        triples = enumerate_triples(bound)
        detail["count"] = len(triples)
        traversal = [tuple(t) for t in iter_tree(bound)][: len(LISTED_TRIPLES)]
        if bound >= 433 and traversal != list(LISTED_TRIPLES):
            failures.append(f"tree prefix {traversal}")
        by_max = [tuple(t) for t in triples][:6]
        if bound >= 34 and by_max != list(LISTED_TRIPLES[:6]):
            failures.append(f"sorted prefix {by_max}")
        small = min(bound, 1000)
        ours = {tuple(t) for t in triples if t.c <= small}
        brute = brute_force_triples(small)
        detail["brute_force"] = len(brute)
        if ours != brute:
            failures.append(f"brute force differs: {sorted(ours ^ brute)}")
        if small == 1000 and len(brute) != 13:
            failures.append(f"expected 13 triples up to 1000, got {len(brute)}")

    return _timed("markov_enumeration", 10.0, body)


def _odd_prime_factors(n: int) -> list[int]:
    return [f for f in factorint(n) if f != 2]


def check_residues(bound: int = DEFAULT_BOUND) -> CheckResult:
    def body(detail, failures):
        checked = 0
        for t in enumerate_triples(bound):
            for p in set(t):
                if p == 1:
                    continue
                for r in characteristic_residues(t, p).residues:
                    checked += 1
                    if (r * r + 9) % p:
                        failures.append(f"{t} at {p}: r={r}")
        nums = markov_numbers(bound)
        for p in nums:
            if p % 3 == 0:
                failures.append(f"{p} divisible by 3")
            bad = [f for f in _odd_prime_factors(p) if f % 4 != 1]
            if bad:
                failures.append(f"{p} has odd prime factors {bad}")
        detail.update(residues=checked, markov_numbers=len(nums))

    return _timed("characteristic_residues", None, body)


def check_partners(bound: int = DEFAULT_BOUND) -> CheckResult:
    def body(detail, failures):
        seen = {}
        for t in enumerate_triples(bound):
            if t.c < 2:
                continue
            key = (t.c, characteristic_residues(t, t.c).canonical)
            if key in seen:
                failures.append(f"{key} shared by {seen[key]} and {t}")
            seen[key] = t
            matches = markov_partners(*key)
            if matches != [t]:
                failures.append(f"{key} -> {matches}")
        detail["keys"] = len(seen)

    return _timed("partner_uniqueness", None, body)


def check_rosenberger(max_t: int = 50) -> CheckResult:
    def body(detail, failures):
        report = verify_rosenberger_table()
        detail["scanned"] = report.scanned
        detail["solvable"] = sorted(report.solvable)
        if not report.ok:
            failures.append(f"solvable set {sorted(report.solvable)}")
        for t in range(1, max_t + 1):
            ok, cert = has_positive_solution(one_parameter_family(t))
            if ok != (t == 1):
                failures.append(f"t={t}: solvable={ok}")
            if not ok and cert.witness is not None:
                failures.append(f"t={t}: witness without solvability")
        detail["family"] = max_t

    return _timed("rosenberger", 30.0, body)


def check_milnor_oracle() -> CheckResult:
    def body(detail, failures):
        n = 0
        for Q, Rs in oracle_grid():
            n += 1
            ours = local_adjunction_K(Q, Rs)
            mu = milnor_number(branch_from_profile(Q, Rs))
            if ours != mu:
                failures.append(f"Q={Q} R={list(Rs)}: K={ours} mu={mu}")
        detail["cases"] = n
        if n < 20:
            failures.append(f"only {n} cases")

    return _timed("germ_oracle", None, body)


def random_profile(rng: random.Random, max_Q: int = 12, max_R: int = 60, d: int = 0) -> tuple[int, tuple]:
    """Exponent profile with ``gcd = 1``; with ``d > 0`` every exponent is ``R_1 mod d``."""
    while True:
        Q = rng.randint(1, max_Q)
        R1 = rng.randint(Q + 1, Q + max_R)
        Rs = [R1]
        step = d or 1
        g = gcd(Q, R1)
        while g != 1 and len(Rs) < 8:
            nxt = Rs[-1] + step * rng.randint(1, max(1, max_R // step))
            Rs.append(nxt)
            g = gcd(g, nxt)
        if g == 1:
            return Q, tuple(Rs)


def _random_coeff(rng: random.Random) -> CycCoefficient:
    r = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))
    n = rng.choice([1, 2, 3, 4, 6])
    return CycCoefficient(r, n, rng.randrange(n))


def check_jet_properties(seed: int = 0, samples: int = 1000) -> CheckResult:
    def body(detail, failures):
        rng = random.Random(seed)
        for _ in range(samples):
            Q, Rs = random_profile(rng)
            K, base = local_adjunction_K(Q, Rs), Q * Rs[0] - Q - Rs[0]
            equal = gcd(Q, Rs[0]) == 1
            if K - 1 < base or (K - 1 == base) != equal:
                failures.append(f"K bound at Q={Q} R={Rs}: K={K}")
        pairs = 0
        while pairs < samples:
            Q, Rs = random_profile(rng, max_Q=6, max_R=20)
            b0 = GermBranch(Q, Rs, tuple(_random_coeff(rng) for _ in Rs))
            b1 = GermBranch(Q, Rs, tuple(_random_coeff(rng) for _ in Rs))
            try:
                nu = branch_intersection(b0, b1)
            except ValueError:
                continue
            pairs += 1
            if nu < Q * Rs[0]:
                failures.append(f"nu={nu} below {Q * Rs[0]} for {b0} {b1}")
        planted = 0
        for _ in range(samples):
            d = rng.randint(2, 30)
            Q, Rs = random_profile(rng, max_Q=8, max_R=40, d=d)
            K = local_adjunction_K(Q, Rs)
            if K - 1 != Q * Rs[0] - Q - Rs[0]:
                planted += 1
                if not K - 1 > d:
                    failures.append(f"K gap: Q={Q} R={Rs} d={d} K={K}")
            b0 = GermBranch(Q, Rs, tuple(_random_coeff(rng) for _ in Rs))
            b1 = GermBranch(Q, Rs, tuple(_random_coeff(rng) for _ in Rs))
            try:
                nu = branch_intersection(b0, b1)
            except ValueError:
                continue
            if nu != Q * Rs[0] and not nu > d:
                failures.append(f"nu gap: Q={Q} R={Rs} d={d} nu={nu}")
        detail.update(samples=samples, coefficient_pairs=pairs, planted_strict=planted, seed=seed)

    return _timed("jet_properties", None, body)


def check_adjunction(bound: int = ADJUNCTION_BOUND) -> CheckResult:
    def body(detail, failures):
        n = 0
        for t in enumerate_triples(bound):
            if t.c >= 2:
                surface, cand = one_point_candidate(t)
                n += 1
                if adjunction_residual(surface, cand) != 0:
                    failures.append(f"one-point {t}: residual")
                if virtual_dimension(surface, cand) != 1:
                    failures.append(f"one-point {t}: vdim {virtual_dimension(surface, cand)}")
                if not 3 * cand.D > surface.Delta:
                    failures.append(f"one-point {t}: D={cand.D} not above Delta/3")
            for (x, y), D, surface, cand in pair_candidates(t):
                n += 1
                if adjunction_residual(surface, cand) != 0:
                    failures.append(f"pair {(x, y)} D={D}: residual")
                if expects_vdim_zero(x, y, D) and virtual_dimension(surface, cand) != 0:
                    failures.append(f"pair {(x, y)} D={D}: vdim {virtual_dimension(surface, cand)}")
                roots = quadratic_roots(x, y)
                if roots is None or D not in roots or sum(roots) != 3 * x * y:
                    failures.append(f"pair {(x, y)}: roots {roots}")
                elif not all(is_markov_triple(x, y, r) for r in roots):
                    failures.append(f"pair {(x, y)}: roots {roots} not partners")
        detail["candidates"] = n

    return _timed("adjunction_identities", 60.0, body)


def check_fibonacci(bound: int = DEFAULT_BOUND) -> CheckResult:
    def body(detail, failures):
        hits = []
        for p in markov_numbers(bound):
            fb = fibonacci_branch(p)
            if fb is None:
                continue
            hits.append(p)
            L, ratio = fb
            if L * L != 5 * p * p - 4:
                failures.append(f"p={p}: L={L}")
            if p >= 2 and not ratio < Fraction(2, 3):
                failures.append(f"p={p}: ratio {ratio}")
        expected = fibonacci_odd_terms(bound)
        if hits != expected:
            failures.append(f"branch set {hits} vs {expected}")
        detail["fibonacci"] = hits

    return _timed("fibonacci_branch", None, body)


def planted_violations() -> list[tuple[str, OrbifoldSurface, CurveCandidate]]:
    """Candidates each breaking one named rule."""
    out = []
    s3 = OrbifoldSurface(((2, 1), (5, 1), (29, 2)))
    incs = tuple(suborbifold_incidence(pt.p, pt.q, i) for i, pt in enumerate(s3.points))
    out.append(("Z12", s3, CurveCandidate(1, incs, label="three orbifold points")))

    s1 = OrbifoldSurface(((5, 1),))
    inc = OrbifoldIncidence(5, 1, 25, GermBranch(1, (4,)), 1, 4, K=1)
    out.append(("Kzneq1", s1, CurveCandidate(5, (inc,), label="K=1 at full isotropy")))

    s2 = OrbifoldSurface(((2, 1), (5, 2)))
    incs = (suborbifold_incidence(2, 1, 0), suborbifold_incidence(5, 2, 1))
    out.append(("cyl_B", s2, CurveCandidate(2, incs, label="D above Delta/3p'")))

    s3b = OrbifoldSurface(((2, 1), (5, 1), (29, 2)))
    inc = suborbifold_incidence(29, 2, 2)
    out.append(("boundary_divisibility", s3b, CurveCandidate(10, (inc,), label="D not divisible")))

    inc_small = OrbifoldIncidence(2, 1, 4, GermBranch(1, (1,)), 1, 1, K=2, point=0)
    out.append(("cyl_A", s2, CurveCandidate(1, (inc_small, suborbifold_incidence(5, 2, 1)), label="K=2 at smaller point")))
    return out


def check_constraints(bound: int = ADJUNCTION_BOUND) -> CheckResult:
    def body(detail, failures):
        n = 0
        for t in enumerate_triples(bound):
            if t.c >= 2:
                surface, cand = one_point_candidate(t)
                n += 1
                report = constraint_filter(surface, cand)
                if not report.ok:
                    failures.append(f"one-point {t}: {sorted(report.violated_rules)}")
            for (x, y), D, surface, cand in pair_candidates(t):
                if not expects_vdim_zero(x, y, D) or D > surface.Delta:
                    continue
                n += 1
                report = constraint_filter(surface, cand)
                if not report.ok:
                    failures.append(f"pair {(x, y)} D={D}: {sorted(report.violated_rules)}")
        flagged = {}
        for rule, surface, cand in planted_violations():
            violated = constraint_filter(surface, cand).violated_rules
            flagged[cand.label] = sorted(violated)
            if rule not in violated:
                failures.append(f"planted {cand.label!r} not flagged by {rule}: {sorted(violated)}")
        detail.update(candidates=n, planted=flagged)

    return _timed("constraint_engine", None, body)


def _expected_counts(tri) -> dict:
    cuts = sum(1 for p in tri.orders if p >= 2)
    return {"path": 1, "cut": cuts, "star": cuts}


def check_atf(steps: int = 3) -> CheckResult:
    def body(detail, failures):
        chain = []
        for tri, rec in atf.mutation_chain(steps=steps):
            chain.append(list(tri.triple))
            lengths = tri.edge_lengths()
            for i, p in enumerate(tri.orders):
                if lengths[i] != p * p:
                    failures.append(f"{tri.triple}: edge opposite corner {i} has length {lengths[i]}")
            if rec is not None:
                if rec.area_before != rec.area_after:
                    failures.append(f"{rec.before}->{rec.after}: area {rec.area_before} -> {rec.area_after}")
                for i, p in enumerate(tri.orders):
                    if rec.measured_lengths[i] * rec.scale != p * p:
                        failures.append(f"{rec.after}: measured {rec.measured_lengths[i]} x {rec.scale}")
            counts = svg.count_elements(svg.render_svg(tri))
            if counts != _expected_counts(tri):
                failures.append(f"{tri.triple}: svg counts {counts}")
        for p, q in ((2, 1), (5, 1), (13, 5)):
            counts = svg.count_elements(svg.render_svg(atf.wahl_cone(p, q)))
            if counts != {"path": 1, "cut": 1, "star": 1}:
                failures.append(f"cone ({p},{q}): svg counts {counts}")
        detail["chain"] = chain
        if chain[-1] != [2, 5, 29] and steps == 3:
            failures.append(f"chain ended at {chain[-1]}")

    return _timed("atf_mutation", None, body)


def run_all(bound: int = DEFAULT_BOUND, seed: int = 0) -> list[CheckResult]:
    """The ten acceptance checks, with Markov scans capped at ``bound``."""
    small = min(bound, ADJUNCTION_BOUND)
    return [
        check_enumeration(bound),
        check_residues(bound),
        check_partners(bound),
        check_rosenberger(),
        check_milnor_oracle(),
        check_jet_properties(seed),
        check_adjunction(small),
        check_fibonacci(bound),
        check_constraints(small),
        check_atf(),
    ]
