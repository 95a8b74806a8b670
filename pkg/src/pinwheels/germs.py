"""Local invariants of parametrized curve germs at cyclic quotient points.

A branch is written ``w -> (w^Q, sum_i c_i w^{R_i})`` with ``Q <= R_1 < R_2 < ...``,
or with the two coordinates swapped when it is tangent to the second axis.
Coefficients are rationals times explicit roots of unity, which is all that is
needed once branches get conjugated by the cyclic group of order ``p^2``
acting on the plane with weights ``(1, pq - 1)``.

Functions
---------
gcd_sequence, local_adjunction_K
    The gcd sequence of an exponent list and Milnor's closed form for the
    local adjunction contribution (twice the delta invariant).
branch_intersection
    Intersection multiplicity of two branches with the same ``Q``.
conjugate_branches, orbifold_K, orbifold_k, k_pair
    Lifts of an orbifold germ and the contributions they feed into the
    orbifold adjunction formula.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Optional, Sequence


@dataclass(frozen=True)
class CycCoefficient:
    """The number ``r * exp(2 pi i k / n)``."""

    r: Fraction
    n: int = 1
    k: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("root order must be positive")
        object.__setattr__(self, "r", Fraction(self.r))
        object.__setattr__(self, "k", self.k % self.n)
        if self.r == 0:
            raise ValueError("coefficient must be nonzero")

    def _lift(self, order: int) -> int:
        return self.k * (order // self.n)

    def __eq__(self, other):
        if not isinstance(other, CycCoefficient):
            return NotImplemented
        L = lcm(self.n, other.n)
        diff = (self._lift(L) - other._lift(L)) % L
        if diff == 0 and self.r == other.r:
            return True
        return L % 2 == 0 and diff == L // 2 and self.r == -other.r

    def __hash__(self):
        # hash a canonical form: positive r, reduced root
        r, n, k = self.r, self.n, self.k
        if r < 0:
            r = -r
            k2 = 2 * k + n
            n2 = 2 * n
        else:
            k2, n2 = k, n
        g = gcd(k2, n2)
        return hash((r, n2 // g, (k2 // g) % (n2 // g)))

    def times_root(self, n: int, k: int) -> "CycCoefficient":
        L = lcm(self.n, n)
        return CycCoefficient(self.r, L, self._lift(L) + k * (L // n))

    def is_real(self) -> bool:
        return (2 * self.k) % self.n == 0

    def real_value(self) -> Fraction:
        if not self.is_real():
            raise ValueError(f"{self} is not real")
        return self.r if self.k == 0 else -self.r

    def to_json(self):
        if self.n == 1:
            return _fraction_text(self.r)
        return {"r": _fraction_text(self.r), "root": {"order": self.n, "exp": self.k}}

    @classmethod
    def from_json(cls, obj) -> "CycCoefficient":
        if isinstance(obj, dict):
            root = obj.get("root", {"order": 1, "exp": 0})
            return cls(Fraction(str(obj["r"])), int(root["order"]), int(root["exp"]))
        return cls(Fraction(str(obj)))


def _fraction_text(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


ONE = CycCoefficient(Fraction(1))


@dataclass(frozen=True)
class GermBranch:
    """Branch ``(w^Q, sum c_i w^{R_i})``; ``axis=1`` swaps the coordinates."""

    Q: int
    exponents: tuple = ()
    coeffs: tuple = ()
    axis: int = 0

    def __post_init__(self):
        exps = tuple(int(r) for r in self.exponents)
        coeffs = tuple(self.coeffs) if self.coeffs else tuple(ONE for _ in exps)
        coeffs = tuple(c if isinstance(c, CycCoefficient) else CycCoefficient(c) for c in coeffs)
        object.__setattr__(self, "exponents", exps)
        object.__setattr__(self, "coeffs", coeffs)
        if self.Q < 1:
            raise ValueError("Q must be positive")
        if len(coeffs) != len(exps):
            raise ValueError("one coefficient per exponent")
        if any(b <= a for a, b in zip(exps, exps[1:])):
            raise ValueError("exponents must be strictly increasing")
        # R_1 = Q is a branch leaving along a non-axis line
        if exps and exps[0] < self.Q:
            raise ValueError("exponents must be at least Q")
        if self.Q in exps[1:]:
            raise ValueError("only the first exponent may equal Q")
        if self.axis not in (0, 1):
            raise ValueError("axis is 0 or 1")

    @property
    def R1(self) -> Optional[int]:
        return self.exponents[0] if self.exponents else None

    def is_injective(self) -> bool:
        return reduce(gcd, self.exponents, self.Q) == 1

    def coefficient(self, exponent: int) -> Optional[CycCoefficient]:
        try:
            return self.coeffs[self.exponents.index(exponent)]
        except ValueError:
            return None

    def to_json(self) -> dict:
        return {
            "Q": self.Q,
            "R": list(self.exponents),
            "coeffs": [c.to_json() for c in self.coeffs],
            "axis": self.axis,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "GermBranch":
        exps = obj.get("R", obj.get("exponents", []))
        coeffs = [CycCoefficient.from_json(c) for c in obj.get("coeffs", [1] * len(exps))]
        return cls(int(obj["Q"]), tuple(exps), tuple(coeffs), int(obj.get("axis", 0)))


def gcd_sequence(Q: int, Rs: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Return ``((g_2, ..., g_{M+1}), M)`` with ``g_j = gcd(Q, R_1, ..., R_{j-1})``.

    ``M`` is the least index with ``g_{M+1} = 1``; a smooth branch has ``M = 0``.
    """
    Rs = list(Rs)
    if Q < 1:
        raise ValueError("Q must be positive")
    if any(b <= a for a, b in zip(Rs, Rs[1:])):
        raise ValueError("exponents must be strictly increasing")
    if reduce(gcd, Rs, Q) != 1:
        raise ValueError(f"gcd of {Q} and {Rs} is not 1: branch is multiply covered")
    seq = []
    g = Q
    for r in Rs:
        if g == 1:
            break
        g = gcd(g, r)
        seq.append(g)
    return tuple(seq), len(seq)


def local_adjunction_K(Q: int, Rs: Sequence[int]) -> int:
    """Milnor's formula ``sum_j (g_j - g_{j+1})(R_j - 1)`` with ``g_1 = Q``."""
    seq, M = gcd_sequence(Q, Rs)
    gs = (Q,) + seq
    return sum((gs[j] - gs[j + 1]) * (Rs[j] - 1) for j in range(M))


def _same_axis_order(b0: GermBranch, b1: GermBranch, root_exp: int) -> int:
    # order of h0(zeta z) - h1(z) with zeta = exp(2 pi i root_exp / Q)
    for r in sorted(set(b0.exponents) | set(b1.exponents)):
        c0 = b0.coefficient(r)
        c1 = b1.coefficient(r)
        if c0 is not None:
            c0 = c0.times_root(b0.Q, root_exp * r)
        if c0 != c1:
            return r
    raise ValueError("identical branches have infinite intersection multiplicity")


def branch_intersection(b0: GermBranch, b1: GermBranch) -> int:
    """Intersection multiplicity of two distinct branches.

    Branches tangent to different axes have distinct tangent lines, giving
    ``Q_0 * Q_1``.  Otherwise both must share ``Q`` and the result sums the
    vanishing order of ``h_0(zeta z) - h_1(z)`` over the ``Q``-th roots of unity.
    """
    if b0.axis != b1.axis:
        if b0.R1 == b0.Q and b1.R1 == b1.Q:
            raise ValueError("write both non-axis branches in the same chart")
        return b0.Q * b1.Q
    if b0.Q != b1.Q:
        raise ValueError("branches with different Q are not supported")
    return sum(_same_axis_order(b0, b1, e) for e in range(b0.Q))


@dataclass(frozen=True)
class OrbifoldIncidence:
    """A branch through the image of an orbifold point of type ``(p, q)``.

    ``d`` is the order of the isotropy group of the domain point and
    ``(m1, m2)`` its weights.  ``K`` overrides the computed local contribution
    when a record states it directly.
    """

    p: int
    q: int
    d: int
    branch: GermBranch
    m1: Optional[int] = None
    m2: Optional[int] = None
    K: Optional[int] = None
    point: int = 0
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        validate_incidence(self)

    @property
    def Q(self) -> int:
        return self.branch.Q

    @property
    def R1(self) -> Optional[int]:
        return self.branch.R1

    @property
    def lifts(self) -> int:
        return self.p * self.p // self.d


def validate_incidence(inc: OrbifoldIncidence) -> None:
    p2 = inc.p * inc.p
    if inc.d < 1 or p2 % inc.d:
        raise ValueError(f"isotropy order {inc.d} does not divide {p2}")
    if inc.m1 is None or inc.m2 is None:
        return
    d = inc.d
    if d > 1 and (inc.m1 % d == 0 or inc.m2 % d == 0):
        raise ValueError(f"weights ({inc.m1}, {inc.m2}) vanish mod {d}")
    if (inc.Q - inc.m1) % d:
        raise ValueError(f"Q={inc.Q} is not {inc.m1} mod {d}")
    for r in inc.branch.exponents:
        if (r - inc.m2) % d:
            raise ValueError(f"exponent {r} is not {inc.m2} mod {d}")


def equivariance_weights(Q: int, R1: int, d: int) -> tuple[int, int]:
    if d < 1:
        raise ValueError("isotropy order must be positive")
    m1, m2 = Q % d, R1 % d
    if d > 1 and (m1 == 0 or m2 == 0):
        raise ValueError(f"weights ({m1}, {m2}) vanish mod {d}")
    return m1, m2


def _axis_weights(p: int, q: int, axis: int) -> tuple[int, int]:
    # (weight on the leading coordinate w^Q, weight on the other one)
    return (1, p * q - 1) if axis == 0 else (p * q - 1, 1)


def conjugate_branches(inc: OrbifoldIncidence) -> list[GermBranch]:
    """The ``p^2/d`` lifts, one per coset of the isotropy image.

    Acting by ``zeta = exp(2 pi i j / p^2)`` and reparametrizing so the leading
    coordinate is again ``w^Q`` multiplies the coefficient of ``w^R`` by a root
    of unity of order ``Q p^2``.
    """
    b = inc.branch
    p2 = inc.p * inc.p
    lead, other = _axis_weights(inc.p, inc.q, b.axis)
    order = b.Q * p2
    out = []
    for j in range(p2 // inc.d):
        coeffs = tuple(
            c.times_root(order, j * (b.Q * other - lead * r)) for r, c in zip(b.exponents, b.coeffs)
        )
        out.append(GermBranch(b.Q, b.exponents, coeffs, b.axis))
    return out


def _local_K(inc: OrbifoldIncidence) -> int:
    return local_adjunction_K(inc.Q, inc.branch.exponents)


def orbifold_K(inc: OrbifoldIncidence) -> int:
    """``K_z = 2 N_0 + sum_i N_i`` over the pairings of the first lift with the others."""
    if inc.K is not None:
        return inc.K
    lifts = conjugate_branches(inc)
    return _local_K(inc) + sum(branch_intersection(lifts[0], f) for f in lifts[1:])


def orbifold_K_from_terms(N0: int, Ns: Sequence[int]) -> int:
    return 2 * N0 + sum(Ns)


def orbifold_k(inc: OrbifoldIncidence) -> Fraction:
    return Fraction(orbifold_K(inc), 2 * inc.d)


def orbifold_k_direct(inc: OrbifoldIncidence) -> Fraction:
    """Average over the full group: self terms plus all ordered lift pairs, over ``p^2``."""
    lifts = conjugate_branches(inc)
    half_K = Fraction(_local_K(inc), 2)
    total = len(lifts) * half_K
    for a, fa in enumerate(lifts):
        for b, fb in enumerate(lifts):
            if a != b:
                total += Fraction(branch_intersection(fa, fb), 2)
    return total / (inc.p * inc.p)


def k_pair(a: OrbifoldIncidence, b: OrbifoldIncidence) -> Fraction:
    if (a.p, a.q, a.point) != (b.p, b.q, b.point):
        raise ValueError("incidences lie over different orbifold points")
    total = sum(
        branch_intersection(fa, fb) for fa in conjugate_branches(a) for fb in conjugate_branches(b)
    )
    return Fraction(total, a.p * a.p)


def exceptional_asymptotics_sign(p: int, q: int, d: int, Q: int, R1: int) -> Optional[str]:
    if (p * p) % d:
        raise ValueError(f"{d} does not divide {p * p}")
    if (R1 - Q * (p * q - 1)) % d == 0:
        return "+"
    if (R1 - Q * (-p * q - 1)) % d == 0:
        return "-"
    return None
