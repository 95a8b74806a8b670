"""Vieta descent for equations ``alpha x^2 + beta y^2 + gamma z^2 = delta xyz``.

Every positive solution descends, by replacing one variable with the other
root of its quadratic, to a *fundamental* solution at which no replacement
decreases ``x + y + z``.  Fundamental solutions live in a finite box that can
be computed from the coefficients, so solvability is decided by scanning it.

Box derivation
--------------
At a fundamental solution every jump is non-decreasing, i.e.
``2 alpha x <= delta yz`` and its cyclic analogues.  Let ``z`` be the slot
with the largest weighted square.  Then ``delta xy/(3 gamma) <= z`` and the
other root ``z'`` of the quadratic in ``z`` is at least ``delta xy/(2 gamma)``,
so ``alpha x^2 + beta y^2 = gamma z z' >= delta^2 x^2 y^2 / (6 gamma)``.
Dividing through shows the smaller of the two remaining weighted squares is
at most ``12 alpha beta gamma / delta^2``.  That caps one slot.

With that slot ``x`` fixed, ``(y, z)`` solves ``F(y, z) = -alpha x^2`` for the
binary form ``F = beta y^2 - delta x yz + gamma z^2``.  If ``F`` is
semidefinite there is nothing to find.  Otherwise the jump conditions confine
``y/z`` to the interval between the harmonic and arithmetic means of the
roots of ``F``, where ``-F >= lam (y^2 + z^2)`` with ``lam`` attained on the
boundary rays.  This bounds ``y`` and each ``y`` leaves a quadratic in ``z``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Optional

Solution = tuple[int, int, int]


@dataclass(frozen=True)
class RosenbergerEquation:
    alpha: int
    beta: int
    gamma: int
    delta: int

    def __post_init__(self):
        a, b, c, d = self.coeffs + (self.delta,)
        if min(a, b, c, d) < 1:
            raise ValueError("all coefficients must be positive")
        if not a <= b <= c:
            raise ValueError("expected alpha <= beta <= gamma")
        if gcd(a, b) != 1 or gcd(a, c) != 1 or gcd(b, c) != 1:
            raise ValueError("alpha, beta, gamma must be pairwise coprime")
        if d % (a * b * c):
            raise ValueError("alpha*beta*gamma must divide delta")

    @classmethod
    def parse(cls, text: str) -> "RosenbergerEquation":
        parts = [int(s) for s in text.replace(" ", "").split(",")]
        if len(parts) != 4:
            raise ValueError(f"expected four comma-separated integers, got {text!r}")
        return cls(*parts)

    @property
    def coeffs(self) -> tuple[int, int, int]:
        return (self.alpha, self.beta, self.gamma)

    def evaluate(self, sol: Solution) -> int:
        """Left side minus right side."""
        x, y, z = sol
        a, b, c = self.coeffs
        return a * x * x + b * y * y + c * z * z - self.delta * x * y * z

    def is_solution(self, sol: Solution) -> bool:
        return self.evaluate(sol) == 0

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.alpha, self.beta, self.gamma, self.delta)


@dataclass
class DescentCertificate:
    """Outcome of a solvability decision.

    ``witness`` is a fundamental solution when one exists.  Otherwise the
    record lists every capped slot value that was scanned together with its
    bound on ``y^2 + z^2``; ``candidates`` counts the ``(x, y)`` pairs tried.
    """

    witness: Optional[Solution]
    slot_bound: Fraction
    boxes: list = field(default_factory=list)
    candidates: int = 0

    def to_json(self) -> dict:
        out = {"slot_bound": str(self.slot_bound), "candidates": self.candidates}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        else:
            out["bound"] = [
                {"slot": s, "value": x, "pair_norm_bound": str(b)} for s, x, b in self.boxes
            ]
        return out


def vieta_jump(eq: RosenbergerEquation, sol: Solution, slot: int) -> Solution:
    """Replace ``sol[slot-1]`` by the other root of its quadratic."""
    if slot not in (1, 2, 3):
        raise ValueError(f"slot must be 1, 2 or 3, got {slot!r}")
    if min(sol) < 1 or not eq.is_solution(sol):
        raise ValueError(f"{sol} is not a positive solution of {eq.as_tuple()}")
    i = slot - 1
    j, k = [s for s in range(3) if s != i]
    num = eq.delta * sol[j] * sol[k]
    coef = eq.coeffs[i]
    # coef divides delta, so the sum of roots is an integer
    new = list(sol)
    new[i] = num // coef - sol[i]
    return tuple(new)


def is_fundamental(eq: RosenbergerEquation, sol: Solution) -> bool:
    """True when no single jump lowers ``x + y + z``."""
    for i in range(3):
        j, k = [s for s in range(3) if s != i]
        if 2 * eq.coeffs[i] * sol[i] > eq.delta * sol[j] * sol[k]:
            return False
    return True


def descend(eq: RosenbergerEquation, sol: Solution) -> list[Solution]:
    """Path of strictly sum-decreasing jumps ending at a fundamental solution."""
    path = [tuple(sol)]
    while not is_fundamental(eq, path[-1]):
        cur = path[-1]
        best = min((vieta_jump(eq, cur, s) for s in (1, 2, 3)), key=sum)
        if sum(best) >= sum(cur):
            raise AssertionError(f"descent stalled at {cur}")
        path.append(best)
    return path


def _pair_norm_bound(lead: int, b: int, c: int, N: int) -> Optional[Fraction]:
    """Bound on ``y^2 + z^2`` for ``b y^2 - lead yz + c z^2 = -N`` in the jump cone."""
    disc = lead * lead - 4 * b * c
    if disc <= 0:
        return None
    lam = disc * min(Fraction(b, lead * lead + 4 * b * b), Fraction(c, lead * lead + 4 * c * c))
    return N / lam


def _scan_slot(eq: RosenbergerEquation, i: int, x: int, cert: DescentCertificate) -> list[Solution]:
    j, k = [s for s in range(3) if s != i]
    coef = eq.coeffs
    lead = eq.delta * x
    N = coef[i] * x * x
    bound = _pair_norm_bound(lead, coef[j], coef[k], N)
    if bound is None:
        cert.boxes.append((i + 1, x, Fraction(0)))
        return []
    cert.boxes.append((i + 1, x, bound))
    found = []
    ymax = isqrt(bound.numerator // bound.denominator)
    for y in range(1, ymax + 1):
        cert.candidates += 1
        # coef[k] z^2 - lead*y z + (coef[j] y^2 + N) = 0
        disc = (lead * y) ** 2 - 4 * coef[k] * (coef[j] * y * y + N)
        if disc < 0:
            continue
        s = isqrt(disc)
        if s * s != disc:
            continue
        for num in {lead * y - s, lead * y + s}:
            if num > 0 and num % (2 * coef[k]) == 0:
                sol = [0, 0, 0]
                sol[i], sol[j], sol[k] = x, y, num // (2 * coef[k])
                sol = tuple(sol)
                if eq.is_solution(sol) and is_fundamental(eq, sol):
                    found.append(sol)
    return found


def fundamental_solutions(eq: RosenbergerEquation) -> tuple[list[Solution], DescentCertificate]:
    """All fundamental solutions, found by exhausting the certified box."""
    a, b, c = eq.coeffs
    slot_bound = Fraction(12 * a * b * c, eq.delta ** 2)
    cert = DescentCertificate(witness=None, slot_bound=slot_bound)
    found = set()
    for i, coef in enumerate(eq.coeffs):
        xmax = isqrt(int(slot_bound / coef))
        for x in range(1, xmax + 1):
            found.update(_scan_slot(eq, i, x, cert))
    sols = sorted(found, key=lambda s: (sum(s), s))
    if sols:
        cert.witness = sols[0]
    return sols, cert


def has_positive_solution(eq: RosenbergerEquation) -> tuple[bool, DescentCertificate]:
    sols, cert = fundamental_solutions(eq)
    return bool(sols), cert


ROSENBERGER_TUPLES = frozenset(
    {(1, 1, 1, 1), (1, 1, 1, 3), (1, 1, 2, 2), (1, 1, 2, 4), (1, 2, 3, 6), (1, 1, 5, 5)}
)


def admissible_equations(max_gamma: int = 6, max_multiple: int = 3):
    for gamma in range(1, max_gamma + 1):
        for beta in range(1, gamma + 1):
            for alpha in range(1, beta + 1):
                if gcd(alpha, beta) != 1 or gcd(alpha, gamma) != 1 or gcd(beta, gamma) != 1:
                    continue
                for m in range(1, max_multiple + 1):
                    yield RosenbergerEquation(alpha, beta, gamma, m * alpha * beta * gamma)


@dataclass
class RosenbergerReport:
    scanned: int
    solvable: dict
    expected: frozenset = ROSENBERGER_TUPLES

    @property
    def ok(self) -> bool:
        return set(self.solvable) == set(self.expected)

    def to_json(self) -> dict:
        return {
            "scanned": self.scanned,
            "ok": self.ok,
            "solvable": [
                {"eq": list(k), "witness": list(v)} for k, v in sorted(self.solvable.items())
            ],
        }


def verify_rosenberger_table(max_gamma: int = 6) -> RosenbergerReport:
    scanned = 0
    solvable = {}
    for eq in admissible_equations(max_gamma):
        scanned += 1
        ok, cert = has_positive_solution(eq)
        if ok:
            solvable[eq.as_tuple()] = cert.witness
    return RosenbergerReport(scanned, solvable)


def one_parameter_family(t: int) -> RosenbergerEquation:
    """The equation ``x^2 + y^2 + t z^2 = 3t xyz``."""
    return RosenbergerEquation(1, 1, t, 3 * t)
