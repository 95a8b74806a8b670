"""Which configurations of disjoint balls ``B_{p,q}`` the Markov arithmetic allows in the plane."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional, Sequence

from .adjunction import quadratic_roots
from .markov import (
    MarkovTriple,
    characteristic_residues,
    enumerate_triples,
    is_markov_number,
    is_markov_triple,
)


@dataclass
class Verdict:
    allowed: bool
    reason: str = ""
    data: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"embeds": self.allowed, **self.data}
        if self.reason:
            out["reason"] = self.reason
        return out


def _minus_nine(p: int, q: int) -> bool:
    return (q * q + 9) % p == 0


def classify_one(p: int) -> Verdict:
    """A single ball ``B_{p,q}``: allowed exactly for Markov numbers ``p``.

    The admissible ``q`` are the residues at ``p`` of the triples ``(b, c, p)``
    with ``b, c < p``.
    """
    if p < 2:
        raise ValueError("p must be at least 2")
    if not is_markov_number(p):
        return Verdict(False, "not a Markov number", {"p": p})
    partners = [t for t in enumerate_triples(p) if t.c == p and t.b < p]
    residues = set()
    for t in partners:
        residues |= characteristic_residues(t, p).residues
    if not all(_minus_nine(p, r) for r in residues):
        raise AssertionError(f"residue with q^2 != -9 mod {p}")
    return Verdict(
        True,
        data={"p": p, "q": sorted(residues), "partners": [[t.a, t.b] for t in partners]},
    )


def classify_pair(p1: int, q1: int, p2: int, q2: int) -> Verdict:
    """Two disjoint balls: the orders must sit in a common Markov triple ``(p1, p2, D)``.

    ``D`` is the smaller root of ``D^2 - 3 p1 p2 D + p1^2 + p2^2`` and must
    satisfy ``3D = +-p1 q2 mod p2`` and ``3D = +-p2 q1 mod p1``.
    """
    # report in a fixed order so swapping the arguments changes nothing
    (p1, q1), (p2, q2) = sorted(((p1, q1), (p2, q2)))
    base = {"p": [p1, p2], "q": [q1, q2]}
    if p1 == p2:
        raise ValueError("the two orders must differ")
    for p, q in ((p1, q1), (p2, q2)):
        if p < 2 or gcd(p, q) != 1:
            raise ValueError(f"({p},{q}) is not a valid pinwheel type")
        if not _minus_nine(p, q):
            return Verdict(False, f"q={q} fails q^2 = -9 mod {p}", base)
    if gcd(p1, p2) != 1:
        return Verdict(False, "orders are not coprime", base)
    roots = quadratic_roots(p1, p2)
    if roots is None:
        return Verdict(False, f"no Markov triple contains both {p1} and {p2}", base)
    D, other = roots
    data = {**base, "D": D, "roots": [D, other], "triple": list(MarkovTriple.of(p1, p2, D))}
    ok2 = (3 * D - p1 * q2) % p2 == 0 or (3 * D + p1 * q2) % p2 == 0
    ok1 = (3 * D - p2 * q1) % p1 == 0 or (3 * D + p2 * q1) % p1 == 0
    if not (ok1 and ok2):
        return Verdict(False, "residue congruences fail", data)
    return Verdict(True, data=data)


def classify_triple(types: Sequence[tuple[int, Optional[int]]]) -> Verdict:
    """Three balls: the orders must form a Markov triple with characteristic residues.

    Entries with ``p = 1`` carry no ball and their ``q`` is ignored.
    """
    if len(types) != 3:
        raise ValueError("expected three (p, q) pairs")
    ps = [int(p) for p, _ in types]
    base = {"p": ps, "q": [q for _, q in types]}
    if not is_markov_triple(*ps):
        return Verdict(False, f"{tuple(sorted(ps))} is not a Markov triple", base)
    t = MarkovTriple.of(*ps)
    bad = []
    for p, q in types:
        if p == 1:
            continue
        if q is None or q % p not in characteristic_residues(t, p).residues:
            bad.append([p, q])
    if bad:
        return Verdict(False, "residues outside the characteristic set", {**base, "bad": bad})
    return Verdict(True, data={**base, "triple": list(t)})


def max_disjoint() -> int:
    """At most three balls: four would force a complete graph on four vertices in the Markov tree."""
    return 3
