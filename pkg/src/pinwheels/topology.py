"""Arithmetic invariants of the rational homology balls ``B_{p,q}`` and their boundaries."""
from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from math import gcd, isqrt, prod
from typing import Iterable, Optional


@dataclass(frozen=True)
class PinwheelType:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 2:
            raise ValueError(f"p must be at least 2, got {self.p}")
        if not 0 < self.q < self.p:
            raise ValueError(f"q must lie in (0, {self.p}), got {self.q}")
        if gcd(self.p, self.q) != 1:
            raise ValueError(f"p={self.p} and q={self.q} are not coprime")

    def normalize(self) -> "PinwheelType":
        """Representative with ``q <= p/2``; ``q`` and ``p - q`` give the same ball."""
        return PinwheelType(self.p, min(self.q, self.p - self.q))


@dataclass(frozen=True)
class TopologyProfile:
    h1_boundary_order: int
    h1_ball_order: int
    h2_cohom_ball_order: int
    chern_residue: int
    restriction_map: str = "reduction mod p"

    def to_json(self) -> dict:
        return asdict(self)


_CASES = {0: ("p=0 mod 4", 2), 1: ("p=1 mod 4", 1), 2: ("p=2 mod 4", 4), 3: ("p=3 mod 4", 1)}


def reeb_stabiliser(p: int, q: int) -> tuple[int, str]:
    """``g = gcd(p^2, pq - 2)``, the order of the stabiliser of a generic Reeb orbit.

    The tag names the residue class of ``p`` mod 4 that predicts ``g``, or
    ``"special"`` when ``pq = 2`` and the whole group fixes every orbit.
    """
    if p * q == 2:
        return p * p, "special"
    g = gcd(p * p, p * q - 2)
    tag, expected = _CASES[p % 4]
    if gcd(p, q) == 1 and g != expected:
        raise AssertionError(f"stabiliser {g} for ({p},{q}) disagrees with the mod 4 table")
    return g, tag


def topology_profile(p: int, q: int) -> TopologyProfile:
    t = PinwheelType(p, q)
    return TopologyProfile(t.p * t.p, t.p, t.p, t.q % t.p)


def chern_divisibility_check(p: int, d: int) -> bool:
    """Whether ``B_{p,q}`` can sit in a manifold whose first Chern class is divisible by ``d``."""
    if p < 1 or d < 1:
        raise ValueError("p and d must be positive")
    return gcd(p, d) == 1


def boundary_divisibility(ps: Iterable[int], met: Iterable[int]) -> int:
    """The integer that must divide ``D`` for a class meeting only the points ``met``.

    ``ps`` lists the orders of all singular points and ``met`` the indices of
    those the class passes through.
    """
    ps = list(ps)
    met = set(met)
    if not met <= set(range(len(ps))):
        raise ValueError(f"indices {sorted(met)} out of range for {len(ps)} points")
    return prod(p * p for i, p in enumerate(ps) if i not in met)


def fibonacci_branch(p: int) -> Optional[tuple[int, Fraction]]:
    """``(L, (3p - L)/(2p))`` when ``5p^2 - 4 = L^2``, else ``None``."""
    if p < 1:
        raise ValueError("p must be positive")
    n = 5 * p * p - 4
    L = isqrt(n)
    if L * L != n:
        return None
    return L, Fraction(3 * p - L, 2 * p)


def odd_fibonacci(bound: int) -> list[int]:
    """``F_1, F_3, F_5, ...`` up to ``bound``, generated by the plain recursion."""
    out = []
    a, b, i = 1, 1, 1
    while a <= bound:
        if i % 2 == 1:
            out.append(a)
        a, b, i = b, a + b, i + 1
    return out
