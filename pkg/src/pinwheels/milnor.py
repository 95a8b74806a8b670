"""Independent Milnor-number computation for parametrized branches.

The branch ``(t^Q, h(t))`` is implicitized by a resultant, and ``mu`` is the
length of the local algebra ``C[[x, y]]/(F_x, F_y)``.  That length is the
stable value of ``dim C[x, y]/(J + m^N)``; once two consecutive truncations
agree, Nakayama's lemma gives ``m^N`` inside ``J`` and the value is exact.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from itertools import combinations, count
from math import gcd

import sympy as sp
from sympy.polys.matrices import DomainMatrix

from .germs import GermBranch

MAX_TRUNCATION = 40

_x, _y, _t = sp.symbols("x y t")


def implicit_equation(branch: GermBranch) -> sp.Poly:
    h = sum(
        sp.Rational(c.real_value().numerator, c.real_value().denominator) * _t**r
        for r, c in zip(branch.exponents, branch.coeffs)
    )
    if branch.axis == 1:
        raise ValueError("oracle expects a branch tangent to the first axis")
    F = sp.resultant(_t**branch.Q - _x, h - _y, _t)
    return sp.Poly(sp.expand(F), _x, _y, domain=sp.QQ)


def _codim(gens: list[dict], N: int) -> int:
    monos = [(i, n - i) for n in range(N) for i in range(n + 1)]
    index = {m: k for k, m in enumerate(monos)}
    rows = []
    for g in gens:
        for a, b in monos:
            row = [sp.QQ(0)] * len(monos)
            nonzero = False
            for (i, j), c in g.items():
                key = (i + a, j + b)
                if key in index:
                    row[index[key]] = c
                    nonzero = True
            if nonzero:
                rows.append(row)
    if not rows:
        return len(monos)
    rank = DomainMatrix(rows, (len(rows), len(monos)), sp.QQ).rank()
    return len(monos) - rank


def milnor_number(branch: GermBranch) -> int:
    """Milnor number of the curve germ traced by ``branch`` at the origin."""
    F = implicit_equation(branch)
    gens = [dict(F.diff(_x).terms()), dict(F.diff(_y).terms())]
    gens = [{m: sp.QQ.from_sympy(c) for m, c in g.items()} for g in gens]
    prev = None
    for N in count(1):
        if N > MAX_TRUNCATION:
            raise RuntimeError(f"local algebra did not stabilise below degree {MAX_TRUNCATION}")
        cur = _codim(gens, N)
        if prev is not None and cur == prev:
            return cur
        prev = cur


def oracle_grid(max_Q: int = 3, max_R: int = 9, max_terms: int = 3):
    """Every exponent profile ``(Q, R_1 < ... < R_k)`` with ``R_k <= max_R`` and gcd 1."""
    for Q in range(1, max_Q + 1):
        if Q == 1:
            yield (1, ())
        for k in range(1, max_terms + 1):
            for Rs in combinations(range(Q + 1, max_R + 1), k):
                if reduce(gcd, Rs, Q) == 1:
                    yield (Q, Rs)


def branch_from_profile(Q: int, Rs, coeffs=None) -> GermBranch:
    coeffs = coeffs or [Fraction(1)] * len(Rs)
    return GermBranch(Q, tuple(Rs), tuple(coeffs))
