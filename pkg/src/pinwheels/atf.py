"""Lattice models of almost-toric pictures: Wahl cones, moment triangles and mutation.

Points are pairs of exact rationals.  A triangle for the Markov triple
``(a, b, c)`` is stored on the integer lattice with edges of affine length
``a^2, b^2, c^2``; dividing by ``abc`` gives a triangle of area one half for
every triple, which is the scale shared by a whole mutation chain.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import gcd, isqrt

from .markov import MarkovTriple, is_markov_triple, mutate

Vec = tuple


def _vec(*xs) -> Vec:
    return tuple(Fraction(x) for x in xs)


def _add(u: Vec, v: Vec) -> Vec:
    return (u[0] + v[0], u[1] + v[1])


def _sub(u: Vec, v: Vec) -> Vec:
    return (u[0] - v[0], u[1] - v[1])


def _scale(s, u: Vec) -> Vec:
    return (s * u[0], s * u[1])


def det(u: Vec, v: Vec):
    return u[0] * v[1] - u[1] * v[0]


def primitive(v: Vec) -> tuple[tuple[int, int], Fraction]:
    """Split a rational vector as ``length * e`` with ``e`` a primitive lattice vector."""
    x, y = Fraction(v[0]), Fraction(v[1])
    if x == 0 and y == 0:
        raise ValueError("zero vector has no direction")
    den = x.denominator * y.denominator // gcd(x.denominator, y.denominator)
    X, Y = int(x * den), int(y * den)
    g = gcd(X, Y)
    return (X // g, Y // g), Fraction(g, den)


def affine_length(u: Vec, v: Vec) -> Fraction:
    """Lattice length of the segment ``uv`` (lattice points on it minus one, for lattice ends)."""
    return primitive(_sub(v, u))[1]


def apply(M, v: Vec) -> Vec:
    return (M[0][0] * v[0] + M[0][1] * v[1], M[1][0] * v[0] + M[1][1] * v[1])


def shear(w: tuple[int, int], s: int):
    """``v -> v + s det(w, v) w``: fixes ``w``, determinant one."""
    a, b = w
    return ((1 - s * a * b, s * a * a), (-s * b * b, 1 + s * a * b))


@dataclass(frozen=True)
class DecoratedCone:
    edge1: tuple
    edge2: tuple
    node: tuple
    cut_direction: tuple
    monodromy: tuple
    p: int
    q: int

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "edges": [list(self.edge1), list(self.edge2)],
            "node": list(self.node),
            "cut_direction": list(self.cut_direction),
            "monodromy": [list(r) for r in self.monodromy],
        }


def wahl_cone(p: int, q: int) -> DecoratedCone:
    """Cone on ``(1, 0)`` and ``(pq - 1, p^2)`` after a nodal trade, node at ``(q, p)``."""
    if p < 2 or not 0 < q < p or gcd(p, q) != 1:
        raise ValueError(f"({p},{q}) is not a valid pinwheel type")
    e2 = (p * q - 1, p * p)
    w = (q, p)
    M = shear(w, -1 if det(w, e2) > 0 else 1)
    return DecoratedCone((1, 0), e2, (q, p), w, M, p, q)


@dataclass(frozen=True)
class Cut:
    corner: int
    order: int
    direction: tuple
    node: Vec
    end: Vec
    monodromy: tuple


@dataclass(frozen=True)
class DecoratedTriangle:
    """Lattice triangle; ``orders[i]`` is the order of the corner ``vertices[i]``."""

    triple: MarkovTriple
    vertices: tuple
    orders: tuple
    cuts: tuple = field(default=())

    def edge_lengths(self) -> dict:
        """Affine length of the edge opposite each corner, keyed by corner index."""
        V = self.vertices
        return {i: affine_length(V[(i + 1) % 3], V[(i + 2) % 3]) for i in range(3)}

    def lattice_area(self) -> Fraction:
        V = self.vertices
        return abs(det(_sub(V[1], V[0]), _sub(V[2], V[0]))) / 2

    def normalized_area(self) -> Fraction:
        a, b, c = self.triple
        return self.lattice_area() / (a * b * c) ** 2

    def corner_type(self, i: int) -> tuple[int, int]:
        return corner_type(self.vertices, i)

    def to_json(self) -> dict:
        return {
            "triple": list(self.triple),
            "vertices": [[_num(x) for x in v] for v in self.vertices],
            "orders": list(self.orders),
            "edge_lengths": [_num(self.edge_lengths()[i]) for i in range(3)],
            "cuts": [
                {
                    "corner": c.corner,
                    "direction": list(c.direction),
                    "node": [_num(x) for x in c.node],
                    "monodromy": [list(r) for r in c.monodromy],
                }
                for c in self.cuts
            ],
        }


def _num(x: Fraction):
    return int(x) if x.denominator == 1 else str(x)


def _outgoing(vertices, i: int):
    V = vertices[i]
    f1, _ = primitive(_sub(vertices[(i + 1) % 3], V))
    f2, _ = primitive(_sub(vertices[(i + 2) % 3], V))
    return f1, f2


def corner_type(vertices, i: int) -> tuple[int, int]:
    """``(p, q)`` of a corner, ``q`` up to sign.

    ``det(f1, f2) = p^2`` for the primitive edge directions, and the cut
    direction ``(f1 + f2)/p`` reads ``(q, p)`` in a lattice basis starting with ``f1``.
    """
    f1, f2 = _outgoing(vertices, i)
    p = _isqrt_exact(abs(det(f1, f2)))
    if p == 1:
        return 1, 0
    w = _cut_direction(f1, f2, p)
    h = _basis_partner(f1)
    return p, int(det(w, h)) % p


def _basis_partner(f):
    """A vector ``h`` with ``det(f, h) = 1``."""
    _, u, v = _egcd(*f)
    return (-v, u)


def _egcd(a: int, b: int):
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


def _isqrt_exact(n) -> int:
    n = int(n)
    r = isqrt(n)
    if r * r != n:
        raise AssertionError(f"corner determinant {n} is not a square")
    return r


def _cut_direction(f1, f2, p: int) -> tuple[int, int]:
    s = (f1[0] + f2[0], f1[1] + f2[1])
    if s[0] % p or s[1] % p:
        raise AssertionError(f"corner edges {f1}, {f2} are not a Wahl cone of order {p}")
    return (s[0] // p, s[1] // p)


def _ray_hits_segment(V: Vec, w, A: Vec, B: Vec) -> Vec:
    """Intersection of the ray ``V + t w`` with segment ``AB``."""
    AB = _sub(B, A)
    denom = det(w, AB)
    if denom == 0:
        raise AssertionError("cut is parallel to the opposite edge")
    t = Fraction(det(_sub(A, V), AB), denom)
    return _add(V, _scale(t, w))


def _install_cuts(triple, vertices, orders) -> tuple:
    cuts = []
    for i in range(3):
        p = orders[i]
        if p < 2:
            continue
        cuts.append(_make_cut(vertices, i, p))
    return tuple(cuts)


def _make_cut(vertices, i: int, p: int) -> Cut:
    V = vertices[i]
    f1, f2 = _outgoing(vertices, i)
    w = _cut_direction(f1, f2, p)
    end = _ray_hits_segment(V, w, vertices[(i + 1) % 3], vertices[(i + 2) % 3])
    node = _add(V, _scale(Fraction(1, 3), _sub(end, V)))
    M = shear(w, -1 if det(w, f2) > 0 else 1)
    return Cut(i, p, w, node, end, M)


def _make_triangle(triple: MarkovTriple, vertices, orders) -> DecoratedTriangle:
    vertices = tuple(_vec(*v) for v in vertices)
    tri = DecoratedTriangle(triple, vertices, tuple(orders), _install_cuts(triple, vertices, orders))
    lengths = tri.edge_lengths()
    for i in range(3):
        if lengths[i] != orders[i] ** 2:
            raise AssertionError(f"edge opposite corner {i} has length {lengths[i]}, expected {orders[i] ** 2}")
        if abs(det(*_outgoing(vertices, i))) != orders[i] ** 2:
            raise AssertionError(f"corner {i} is not of order {orders[i]}")
    return tri


def wps_triangle(t) -> DecoratedTriangle:
    """Moment triangle with edges of affine length ``a^2, b^2, c^2``.

    Edge directions ``e1 = (1, 0)``, ``e2 = (x, c^2)`` and ``e3`` satisfy
    ``a^2 e1 + b^2 e2 + c^2 e3 = 0``; ``x = -a^2/b^2 mod c^2`` makes ``e3``
    integral.  The corner where ``e1`` meets ``e2`` has order ``c`` and so on
    around the triangle.
    """
    a, b, c = sorted(t)
    if not is_markov_triple(a, b, c):
        raise ValueError(f"{tuple(t)} is not a Markov triple")
    c2 = c * c
    x = (-a * a * pow(b * b, -1, c2)) % c2 if c2 > 1 else 0
    V0 = (0, 0)
    V1 = (a * a, 0)
    V2 = (a * a + b * b * x, b * b * c2)
    return _make_triangle(MarkovTriple(a, b, c), (V0, V1, V2), (b, c, a))


@dataclass(frozen=True)
class TransferRecord:
    """What happened during one cut transfer, measured before rescaling.

    ``measured_lengths[i]`` is the affine length of the edge opposite corner
    ``i`` of the new triangle, in the lattice of the old one.
    """

    corner: int
    before: MarkovTriple
    after: MarkovTriple
    hit: Vec
    sheared: tuple
    measured_lengths: dict
    scale: Fraction
    area_before: Fraction
    area_after: Fraction
    cut_before: tuple
    cut_after: tuple


def transfer_cut(tri: DecoratedTriangle, corner: int) -> tuple[DecoratedTriangle, TransferRecord]:
    """Push the cut at ``corner`` across the triangle and shear the far half.

    The corner flattens, the point where the cut meets the opposite edge
    becomes the new corner, and the result is rescaled by ``p'/p`` to sit on
    the lattice of the mutated triple.
    """
    if corner not in (0, 1, 2):
        raise ValueError(f"corner must be 0, 1 or 2, got {corner!r}")
    V = tri.vertices[corner]
    iA, iB = (corner + 1) % 3, (corner + 2) % 3
    A, B = tri.vertices[iA], tri.vertices[iB]
    p = tri.orders[corner]
    f1, f2 = _outgoing(tri.vertices, corner)
    w = _cut_direction(f1, f2, p)
    P = _ray_hits_segment(V, w, A, B)
    M = shear(w, -1 if det(w, f2) > 0 else 1)
    B2 = _add(V, apply(M, _sub(B, V)))
    if det(_sub(A, V), _sub(B2, V)) != 0:
        raise AssertionError("flattened corner is not on the new edge")
    sheared = (A, P, B2)
    area_before = tri.lattice_area()
    area_after = abs(det(_sub(P, A), _sub(B2, A))) / 2

    ps = list(tri.triple)
    slot = sorted(ps).index(p) + 1
    new_triple = mutate(MarkovTriple(*sorted(ps)), slot)
    p_new = 3 * tri.orders[iA] * tri.orders[iB] - p
    scale = Fraction(p_new, p)
    new_vertices = [A, P, B2]
    # keyed by the corner of the new triangle opposite each edge
    measured = {i: affine_length(new_vertices[(i + 1) % 3], new_vertices[(i + 2) % 3]) for i in range(3)}
    new_vertices = [_scale(scale, _sub(v, A)) for v in new_vertices]
    for v in new_vertices:
        if v[0].denominator != 1 or v[1].denominator != 1:
            raise AssertionError(f"rescaled vertex {v} is not a lattice point")
    # corner order: A keeps its order, P is new, B2 keeps B's
    orders = (tri.orders[iA], p_new, tri.orders[iB])
    new = _make_triangle(new_triple, new_vertices, orders)
    cut_after = _cut_direction(*_outgoing(new.vertices, 1), p_new)
    if det(w, cut_after) != 0 or w[0] * cut_after[0] + w[1] * cut_after[1] >= 0:
        raise AssertionError("new cut does not continue the old cut line")
    record = TransferRecord(
        corner, MarkovTriple(*sorted(ps)), new_triple, P, sheared, measured, scale,
        area_before, area_after, w, cut_after,
    )
    return new, record


def canonical_form(tri: DecoratedTriangle) -> tuple:
    """Invariant of the triangle up to integral affine equivalence."""
    best = None
    for i, j, k in permutations(range(3)):
        u = _sub(tri.vertices[j], tri.vertices[i])
        v = _sub(tri.vertices[k], tri.vertices[i])
        key = _column_hnf(u, v)
        if best is None or key < best:
            best = key
    return best


def _column_hnf(u: Vec, v: Vec) -> tuple:
    # rows u, v; column operations make the first row (g, 0)
    u = tuple(int(x) for x in u)
    v = tuple(int(x) for x in v)
    g, s, t = _egcd(u[0], u[1])
    # columns c1 = s*col1 + t*col2, c2 = (-u1/g)*col1 + (u0/g)*col2
    b = v[0] * s + v[1] * t
    c = v[0] * (-u[1] // g) + v[1] * (u[0] // g)
    c = abs(c)
    return (g, b % c if c else b, c)


def lattice_equivalent(t1: DecoratedTriangle, t2: DecoratedTriangle) -> bool:
    return canonical_form(t1) == canonical_form(t2)


def mutation_chain(start=(1, 1, 1), corners=None, steps: int = 3):
    """Triangles along a chain of cut transfers; ``corners`` picks the corner each time.

    Without ``corners`` each of ``steps`` transfers uses the corner of
    smallest order, which walks ``(1,1,1) -> (1,1,2) -> (1,2,5) -> (2,5,29)``.
    """
    tri = wps_triangle(start)
    yield tri, None
    picks = iter(corners) if corners is not None else None
    for _ in range(len(corners) if corners is not None else steps):
        corner = next(picks) if picks is not None else smallest_corner(tri)
        tri, rec = transfer_cut(tri, corner)
        yield tri, rec


def smallest_corner(tri: DecoratedTriangle) -> int:
    return min(range(3), key=lambda i: (tri.orders[i], i))
