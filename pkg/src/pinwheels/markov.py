"""Markov triples: recognition, mutation, tree enumeration and residues.

A Markov triple is a sorted triple of positive integers ``a <= b <= c`` with
``a^2 + b^2 + c^2 = 3abc``.  Every triple is connected to ``(1, 1, 1)`` by
mutations ``x -> 3yz - x``; the mutation graph is a tree.
"""
from __future__ import annotations

from collections import deque
from functools import lru_cache
from typing import Iterator, NamedTuple, Optional


class MarkovTriple(NamedTuple):
    a: int
    b: int
    c: int

    @classmethod
    def of(cls, *entries: int) -> "MarkovTriple":
        """Build a validated triple from entries given in any order."""
        if len(entries) == 1:
            entries = tuple(entries[0])
        if len(entries) != 3:
            raise ValueError(f"a Markov triple has three entries, got {entries!r}")
        a, b, c = sorted(int(e) for e in entries)
        if not is_markov_triple(a, b, c):
            raise ValueError(f"{(a, b, c)} is not a Markov triple")
        return cls(a, b, c)

    def to_json(self) -> list:
        return [self.a, self.b, self.c]


class CharacteristicResidue(NamedTuple):
    p: int
    residues: frozenset

    @property
    def canonical(self) -> Optional[int]:
        """Representative ``min(r, p - r)``; ``None`` when ``p == 1``."""
        if not self.residues:
            return None
        return min(min(r, self.p - r) for r in self.residues)


def is_markov_triple(a: int, b: int, c: int) -> bool:
    if min(a, b, c) < 1:
        return False
    return a * a + b * b + c * c == 3 * a * b * c


def _slot_index(t: MarkovTriple, slot: int) -> int:
    if slot not in (1, 2, 3):
        raise ValueError(f"slot must be 1, 2 or 3, got {slot!r}")
    return slot - 1


def mutate(t: MarkovTriple, slot: int) -> MarkovTriple:
    """Replace the entry at ``slot`` (1-based, sorted order) by ``3xy - entry``."""
    i = _slot_index(t, slot)
    others = [t[j] for j in range(3) if j != i]
    new = 3 * others[0] * others[1] - t[i]
    return MarkovTriple(*sorted(others + [new]))


def mutate_value(t: MarkovTriple, value: int) -> MarkovTriple:
    """Mutate the slot holding ``value``."""
    if value not in t:
        raise ValueError(f"{value} is not an entry of {tuple(t)}")
    return mutate(t, t.index(value) + 1)


def descend(t: MarkovTriple) -> Iterator[MarkovTriple]:
    """Walk from ``t`` to ``(1, 1, 1)`` by mutating the largest entry."""
    yield t
    while t != (1, 1, 1):
        nxt = mutate(t, 3)
        if max(nxt) >= t.c and nxt != (1, 1, 1):
            raise AssertionError(f"descent stalled at {tuple(t)}")
        t = nxt
        yield t


def _children(t: MarkovTriple) -> list[MarkovTriple]:
    # mutating either of the two smaller slots moves away from (1,1,1)
    out = []
    for slot in (1, 2):
        s = mutate(t, slot)
        if s.c > t.c and s not in out:
            out.append(s)
    return out


def _planar_children(node: tuple[int, int, int]) -> tuple[tuple[int, int, int], ...]:
    # node is (left, top, right) with top the largest entry
    l, m, r = node
    return (l, 3 * l * m - r, m), (m, 3 * m * r - l, r)


def iter_tree(max_entry: int) -> Iterator[MarkovTriple]:
    """Breadth-first traversal of the Markov tree, pruned at ``max_entry``.

    Below ``(1, 2, 5)`` the tree is planar: ``(l, m, r)`` with ``m`` largest
    has children ``(l, 3lm - r, m)`` and ``(m, 3mr - l, r)``.  Each level is
    yielded left to right, so the order is ``(1,1,1), (1,1,2), (1,2,5),
    (1,5,13), (2,5,29), (1,13,34), ...``.
    """
    if max_entry < 1:
        raise ValueError("max_entry must be >= 1")
    for t in ((1, 1, 1), (1, 1, 2)):
        if t[2] <= max_entry:
            yield MarkovTriple(*t)
    queue = deque([(1, 5, 2)] if max_entry >= 5 else [])
    while queue:
        node = queue.popleft()
        yield MarkovTriple(*sorted(node))
        queue.extend(c for c in _planar_children(node) if c[1] <= max_entry)


def tree_depths(max_entry: int) -> dict:
    """Map each triple with entries <= ``max_entry`` to its tree depth."""
    depth = {MarkovTriple(1, 1, 1): 0}
    for t in iter_tree(max_entry):
        for s in _children(t):
            if s.c <= max_entry and s not in depth:
                depth[s] = depth[t] + 1
    return depth


@lru_cache(maxsize=64)
def _enumerate_cached(max_entry: int) -> tuple:
    return tuple(sorted(iter_tree(max_entry), key=lambda t: (t.c, t.b, t.a)))


def enumerate_triples(max_entry: int) -> list[MarkovTriple]:
    """All Markov triples with largest entry ``<= max_entry``, ordered by (c, b, a)."""
    return list(_enumerate_cached(int(max_entry)))


def clear_cache() -> None:
    """Forget cached enumerations, e.g. before timing one."""
    _enumerate_cached.cache_clear()


def markov_numbers(bound: int) -> list[int]:
    return sorted({x for t in enumerate_triples(bound) for x in t})


def is_markov_number(p: int) -> bool:
    if p < 1:
        return False
    return any(p in t for t in enumerate_triples(max(p, 2)))


def characteristic_residues(t: MarkovTriple, entry: int) -> CharacteristicResidue:
    """Residues ``q = +-3 p_j / p_k mod p_i`` at the entry ``p_i`` of ``t``.

    For ``p_i = 1`` there is no orbifold point and the residue set is empty.
    """
    if entry not in t:
        raise ValueError(f"{entry} is not an entry of {tuple(t)}")
    if entry == 1:
        return CharacteristicResidue(1, frozenset())
    rest = list(t)
    rest.remove(entry)
    pj, pk = rest
    r = 3 * pj * pow(pk, -1, entry) % entry
    return CharacteristicResidue(entry, frozenset({r, (entry - r) % entry}))


def markov_partners(p: int, q: int) -> list[MarkovTriple]:
    """Every triple ``(a, b, p)`` with ``a, b < p`` whose residue set at ``p`` holds ``q``."""
    if p < 2:
        return []
    q %= p
    return [
        t
        for t in enumerate_triples(p)
        if t.c == p and t.b < p and q in characteristic_residues(t, p).residues
    ]


def markov_partner(p: int, q: int) -> Optional[MarkovTriple]:
    """The unique triple ``(a, b, p)`` with ``a, b < p`` and ``aq = +-3b mod p``."""
    found = markov_partners(p, q)
    if len(found) > 1:
        raise AssertionError(f"residue {q} mod {p} has several partners: {found}")
    return found[0] if found else None
