"""Dessins as permutation pairs.

A dessin with n edges is a pair (sigma0, sigma1) of permutations of the edge
labels {1..n}: the cycles of sigma0 list the edges around each black vertex
counterclockwise, the cycles of sigma1 do the same for white vertices.  Fixed
points are vertices of degree one.  sigma_inf is defined by
``sigma0 * sigma1 * sigma_inf == id`` under the left-to-right product.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter, deque
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

from .group import GroupHandle, generate
from .perm import Permutation, format_cycles, from_cycles, identity

__all__ = [
    "Passport",
    "Dessin",
    "Vertex",
    "Star",
    "OddPath",
    "EvenPath",
    "DiamFour",
    "CleanedDoubleStar",
    "ThreeStarComposite",
    "Sporadic337",
    "FamilyParams",
    "family_passport",
    "family_from_name",
    "canonical_family",
    "monodromy",
    "compose",
    "beta_path",
    "clean",
    "are_isomorphic",
    "canonical_form",
    "count_trees_with_passport",
    "perms_of_cycle_type",
]


# --------------------------------------------------------------------------
# passports


def _partition(parts: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted((int(x) for x in parts), reverse=True))


@dataclass(frozen=True)
class Passport:
    """Black and white vertex degrees, each a partition of n sorted descending."""

    black: tuple[int, ...]
    white: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "black", _partition(self.black))
        object.__setattr__(self, "white", _partition(self.white))
        if sum(self.black) != sum(self.white):
            raise ValueError(f"partitions of different integers: {self.black} vs {self.white}")
        if any(x < 1 for x in self.black + self.white):
            raise ValueError("vertex degrees must be positive")

    @property
    def n(self) -> int:
        return sum(self.black)

    @staticmethod
    def _format_side(parts: tuple[int, ...]) -> str:
        out = []
        for value, group in itertools.groupby(parts):
            k = len(list(group))
            out.append(str(value) if k == 1 else f"{value}^{k}")
        return ",".join(out)

    def __str__(self) -> str:
        return f"[{self._format_side(self.black)};{self._format_side(self.white)}]"

    @classmethod
    def parse(cls, text: str) -> Passport:
        """Parse exponential notation, e.g. ``"[3^3,1^5;2^7]"``."""
        body = re.sub(r"\s+", "", text)
        if body.startswith("[") and body.endswith("]"):
            body = body[1:-1]
        sides = body.split(";")
        if len(sides) != 2:
            raise ValueError(f"passport needs exactly one ';': {text!r}")
        parsed = []
        for side in sides:
            parts: list[int] = []
            for token in side.split(","):
                m = re.fullmatch(r"(\d+)(?:\^(\d+))?", token)
                if not m:
                    raise ValueError(f"bad passport entry {token!r} in {text!r}")
                value, mult = int(m.group(1)), int(m.group(2) or 1)
                parts.extend([value] * mult)
            parsed.append(parts)
        return cls(tuple(parsed[0]), tuple(parsed[1]))

    def to_json(self) -> dict:
        return {"black": list(self.black), "white": list(self.white), "text": str(self)}


# --------------------------------------------------------------------------
# dessins


def _is_transitive(a: Sequence[int], b: Sequence[int]) -> bool:
    n = len(a)
    seen = [False] * n
    seen[0] = True
    todo = [0]
    count = 1
    while todo:
        x = todo.pop()
        for y in (a[x], b[x]):
            if not seen[y]:
                seen[y] = True
                count += 1
                todo.append(y)
    return count == n


@dataclass(frozen=True)
class Dessin:
    n: int
    sigma0: Permutation
    sigma1: Permutation

    def __post_init__(self):
        if self.sigma0.n != self.n or self.sigma1.n != self.n:
            raise ValueError("permutation degrees must equal the edge count")
        if not _is_transitive(self.sigma0._img, self.sigma1._img):
            raise ValueError("sigma0 and sigma1 do not act transitively: the graph is disconnected")

    @classmethod
    def from_cycles(cls, n: int, sigma0, sigma1) -> Dessin:
        return cls(n, from_cycles(sigma0, n), from_cycles(sigma1, n))

    def sigma_infinity(self) -> Permutation:
        return (self.sigma0 * self.sigma1).inverse()

    def passport(self) -> Passport:
        return Passport(self.sigma0.cycle_type(), self.sigma1.cycle_type())

    def euler_characteristic(self) -> int:
        return self.sigma0.num_cycles() + self.sigma1.num_cycles() + self.sigma_infinity().num_cycles() - self.n

    def genus(self) -> int:
        chi = self.euler_characteristic()
        if chi % 2 or chi > 2:
            raise AssertionError(f"impossible Euler characteristic {chi}")
        return (2 - chi) // 2

    def is_tree(self) -> bool:
        return self.sigma_infinity().num_cycles() == 1 and self.genus() == 0

    def relabel(self, pi: Permutation) -> Dessin:
        """The same dessin with every edge x renamed pi(x)."""
        return Dessin(self.n, self.sigma0.conjugate(pi), self.sigma1.conjugate(pi))

    def to_json(self) -> dict:
        return {"n": self.n, "sigma0": self.sigma0.cycles(), "sigma1": self.sigma1.cycles()}

    @classmethod
    def from_json(cls, data: dict) -> Dessin:
        return cls.from_cycles(int(data["n"]), data["sigma0"], data["sigma1"])

    def __str__(self) -> str:
        return f"sigma0={format_cycles(self.sigma0)} sigma1={format_cycles(self.sigma1)} (n={self.n})"


def sigma_infinity(D: Dessin) -> Permutation:
    return D.sigma_infinity()


def passport(D: Dessin) -> Passport:
    return D.passport()


def genus(D: Dessin) -> int:
    return D.genus()


def is_tree(D: Dessin) -> bool:
    return D.is_tree()


def monodromy(D: Dessin) -> GroupHandle:
    return generate([D.sigma0, D.sigma1], D.n)


@dataclass(frozen=True)
class Vertex:
    """A vertex: its color (0 black, 1 white) and incident edges counterclockwise."""

    color: int
    edges: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.edges)


def vertices(D: Dessin) -> list[Vertex]:
    """Black vertices then white ones, each sorted by smallest incident edge.

    The 1-based position in this list is the integer vertex id used by the
    command line.
    """
    out = []
    for color, sigma in ((0, D.sigma0), (1, D.sigma1)):
        out.extend(Vertex(color, tuple(c)) for c in sigma.cycles(include_fixed=True))
    return out


def _vertex(D: Dessin, v: Vertex | int) -> Vertex:
    vs = vertices(D)
    if isinstance(v, int):
        if not 1 <= v <= len(vs):
            raise ValueError(f"vertex id {v} outside 1..{len(vs)}")
        return vs[v - 1]
    for w in vs:
        if w.color == v.color and set(w.edges) == set(v.edges):
            return w
    raise ValueError(f"{v} is not a vertex of the dessin")


# --------------------------------------------------------------------------
# families


@dataclass(frozen=True)
class Star:
    r: int
    name = "star"

    def validate(self):
        if self.r < 1:
            raise ValueError("Star requires r >= 1")


@dataclass(frozen=True)
class OddPath:
    """Path with 2r+1 edges, passport [2^r,1;2^r,1]."""

    r: int
    name = "odd-path"

    def validate(self):
        if self.r < 1:
            raise ValueError("OddPath requires r >= 1")


@dataclass(frozen=True)
class EvenPath:
    """Path with 2r edges, passport [2^r;2^(r-1),1^2]."""

    r: int
    name = "even-path"

    def validate(self):
        if self.r < 2:
            raise ValueError("EvenPath requires r >= 2 (r = 1 is the 2-star)")


@dataclass(frozen=True)
class DiamFour:
    r: int
    s: int
    t: int
    name = "diam-four"

    def validate(self):
        if self.r <= 1:
            raise ValueError("DiamFour requires r > 1")
        if self.s < 1 or self.t < 1:
            raise ValueError("DiamFour requires s, t >= 1")


@dataclass(frozen=True)
class CleanedDoubleStar:
    r: int
    t: int
    name = "cleaned-double-star"

    def validate(self):
        if self.r <= 1 or self.t <= 1:
            raise ValueError("CleanedDoubleStar requires r, t > 1")


@dataclass(frozen=True)
class ThreeStarComposite:
    r: int
    name = "three-star-composite"

    def validate(self):
        if self.r < 2:
            raise ValueError("ThreeStarComposite requires r >= 2")


@dataclass(frozen=True)
class Sporadic337:
    name = "sporadic-337"

    def validate(self):
        pass


FamilyParams = Union[Star, OddPath, EvenPath, DiamFour, CleanedDoubleStar, ThreeStarComposite, Sporadic337]
FAMILIES = {cls.name: cls for cls in (Star, OddPath, EvenPath, DiamFour, CleanedDoubleStar, ThreeStarComposite, Sporadic337)}


def family_from_name(name: str, **params: int | None) -> FamilyParams:
    try:
        cls = FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}") from None
    fields = list(cls.__dataclass_fields__)
    missing = [f for f in fields if params.get(f) is None]
    if missing:
        raise ValueError(f"family {name} needs --{' --'.join(missing)}")
    p = cls(**{f: int(params[f]) for f in fields})
    p.validate()
    return p


def family_params_json(p: FamilyParams) -> dict:
    out = {"family": p.name}
    out.update({f: getattr(p, f) for f in p.__dataclass_fields__})
    return out


def family_passport(p: FamilyParams) -> Passport:
    """The catalogued passport of a family member."""
    p.validate()
    if isinstance(p, Star):
        return Passport((p.r,), (1,) * p.r)
    if isinstance(p, OddPath):
        return Passport((2,) * p.r + (1,), (2,) * p.r + (1,))
    if isinstance(p, EvenPath):
        return Passport((2,) * p.r, (2,) * (p.r - 1) + (1, 1))
    if isinstance(p, DiamFour):
        r, s, t = p.r, p.s, p.t
        return Passport((s,) * (r - 1) + (t,), (r,) + (1,) * ((r - 1) * (s - 1) + (t - 1)))
    if isinstance(p, CleanedDoubleStar):
        r, t = p.r, p.t
        return Passport((r, t) + (1,) * (r + t - 2), (2,) * (r + t - 1))
    if isinstance(p, ThreeStarComposite):
        r = p.r
        return Passport((r, r) + (1,) * (4 * r - 3), (3,) * (2 * r - 1))
    if isinstance(p, Sporadic337):
        return Passport((3, 3, 3, 1, 1, 1, 1, 1), (2,) * 7)
    raise TypeError(f"not a family: {p!r}")


def family_edge_count(p: FamilyParams) -> int:
    return family_passport(p).n


def _path(n: int, black_on_odd: bool = True) -> Dessin:
    # edges 1..n along the path; black vertices join edges (1,2), (3,4), ...
    odd = [[i, i + 1] for i in range(1, n, 2)]
    even = [[i, i + 1] for i in range(2, n, 2)]
    return Dessin.from_cycles(n, odd, even)


def canonical_family(p: FamilyParams) -> Dessin:
    """The dessin of a family member under the edge labeling used in its monodromy proof.

    Overlined labels in the double-star and three-star proofs are encoded as
    follows, with m = r + t - 1 resp. m = 2r - 1: plain label i stays i, the
    overlined label i is m + i, and the hatted label i (three-star only) is
    2m + i.
    """
    p.validate()
    if isinstance(p, Star):
        return Dessin.from_cycles(p.r, [list(range(1, p.r + 1))], [])
    if isinstance(p, OddPath):
        return _path(2 * p.r + 1)
    if isinstance(p, EvenPath):
        return _path(2 * p.r)
    if isinstance(p, DiamFour):
        r, s, t = p.r, p.s, p.t
        n = s * (r - 1) + t
        cycles0 = [list(range(1, t + 1))]
        cycles0 += [list(range(t + k * s + 1, t + (k + 1) * s + 1)) for k in range(r - 1)]
        cycle1 = [1] + [t + k * s + 1 for k in range(r - 1)]
        return Dessin.from_cycles(n, cycles0, [cycle1])
    if isinstance(p, CleanedDoubleStar):
        r, t = p.r, p.t
        m = r + t - 1
        if r != t:
            cycles0 = [list(range(1, r + 1)), [m + i for i in range(r, r + t)]]
            cycles1 = [[i, m + i] for i in range(1, m + 1)]
        else:
            cycles0 = [list(range(1, r + 1)), [m + i for i in range(1, r + 1)]]
            cycles1 = [[i, m + r + i] for i in range(1, r)]
            cycles1 += [[r, m + r]]
            cycles1 += [[r + j, m + j] for j in range(1, r)]
        return Dessin.from_cycles(2 * m, cycles0, cycles1)
    if isinstance(p, ThreeStarComposite):
        r = p.r
        m = 2 * r - 1
        cycles0 = [list(range(1, r + 1)), [m + i for i in range(r, 2 * r)]]
        cycles1 = [[i, m + i, 2 * m + i] for i in range(1, m + 1)]
        return Dessin.from_cycles(3 * m, cycles0, cycles1)
    if isinstance(p, Sporadic337):
        # the cleaning of DiamFour(3, 3, 1) = (2,3,4)(5,6,7) / (1,2,5): edge i keeps its
        # black half as label i, its white half becomes label 7 + i
        return Dessin.from_cycles(
            14,
            [[2, 3, 4], [5, 6, 7], [8, 9, 12]],
            [[i, 7 + i] for i in range(1, 8)],
        )
    raise TypeError(f"not a family: {p!r}")


# --------------------------------------------------------------------------
# composition


@dataclass(frozen=True)
class RotationSystem:
    """Vertices with colors and counterclockwise edge lists; every edge has one
    black and one white end."""

    n: int
    vertices: tuple[Vertex, ...]

    @classmethod
    def of(cls, D: Dessin) -> RotationSystem:
        return cls(D.n, tuple(vertices(D)))

    def to_dessin(self) -> Dessin:
        img = [[None] * self.n, [None] * self.n]
        for v in self.vertices:
            for a, b in zip(v.edges, v.edges[1:] + v.edges[:1]):
                if img[v.color][a - 1] is not None:
                    raise ValueError(f"edge {a} has two {'white' if v.color else 'black'} ends")
                img[v.color][a - 1] = b
        if any(x is None for side in img for x in side):
            raise ValueError("some edge is missing an endpoint")
        return Dessin(self.n, Permutation(img[0]), Permutation(img[1]))


def _tree_path(D: Dessin, start: Vertex, end: Vertex) -> list[int]:
    """Edges on the unique path from ``start`` to ``end``."""
    verts = vertices(D)
    ends: dict[int, list[int]] = {}
    for i, v in enumerate(verts):
        for e in v.edges:
            ends.setdefault(e, []).append(i)
    s, t = verts.index(start), verts.index(end)
    prev: dict[int, tuple[int, int]] = {s: (-1, -1)}
    todo = deque([s])
    while todo:
        i = todo.popleft()
        for e in verts[i].edges:
            for j in ends[e]:
                if j not in prev:
                    prev[j] = (i, e)
                    todo.append(j)
    path = []
    i = t
    while i != s:
        i, e = prev[i]
        path.append(e)
    return path[::-1]


def _rotate_to(edges: tuple[int, ...], first: int) -> tuple[int, ...]:
    k = edges.index(first)
    return edges[k:] + edges[:k]


def compose(P: Dessin, square: Vertex | int, triangle: Vertex | int, Q: Dessin) -> Dessin:
    """The dessin of p o q from the dessins P of p and Q of q.

    ``square`` and ``triangle`` are the vertices of P sitting at 0 and 1.  The
    result has an edge (e, j) for each edge e of P and edge j of Q, labeled
    ``e + n_P * (j - 1)``; copy j of P is the one laid along edge j of Q.

    Unmarked vertices of P are copied once per edge of Q.  The square is
    glued once per black vertex x of Q: its rotation is the square's own
    rotation, started at the edge leading toward the triangle, repeated for
    each edge of Q around x in counterclockwise order.  The triangle is glued
    the same way along the white vertices of Q.
    """
    if not P.is_tree() or not Q.is_tree():
        raise ValueError("composition is implemented for trees only")
    sq, tr = _vertex(P, square), _vertex(P, triangle)
    if sq == tr:
        raise ValueError("square and triangle must be distinct vertices")
    path = _tree_path(P, sq, tr)
    e_sq, e_tr = path[0], path[-1]
    nP, nQ = P.n, Q.n

    def label(e: int, j: int) -> int:
        return e + nP * (j - 1)

    new_vertices = []
    for v in vertices(P):
        if v == sq or v == tr:
            continue
        for j in range(1, nQ + 1):
            new_vertices.append(Vertex(v.color, tuple(label(e, j) for e in v.edges)))
    for marked, first, sigma in ((sq, e_sq, Q.sigma0), (tr, e_tr, Q.sigma1)):
        rot = _rotate_to(marked.edges, first)
        for cyc in sigma.cycles(include_fixed=True):
            new_vertices.append(Vertex(marked.color, tuple(label(e, j) for j in cyc for e in rot)))
    return RotationSystem(nP * nQ, tuple(new_vertices)).to_dessin()


def beta_path() -> Dessin:
    """The two-edge path of 4z(1-z): black leaves at 0 (edge 1) and 1 (edge 2)."""
    return Dessin.from_cycles(2, [], [[1, 2]])


def clean(Q: Dessin) -> Dessin:
    """Compose with the two-edge path: every old vertex turns black, every edge gains a white midpoint."""
    P = beta_path()
    return compose(P, Vertex(0, (1,)), Vertex(0, (2,)), Q)


# --------------------------------------------------------------------------
# isomorphism


def are_isomorphic(D1: Dessin, D2: Dessin) -> Permutation | None:
    """A relabeling pi with pi^-1 sigma_i pi = sigma_i' for i = 0, 1, or None."""
    if D1.n != D2.n or D1.passport() != D2.passport():
        return None
    n = D1.n
    a0, a1 = D1.sigma0._img, D1.sigma1._img
    b0, b1 = D2.sigma0._img, D2.sigma1._img
    for target in range(n):
        pi = [-1] * n
        pi[0] = target
        todo = [0]
        ok = True
        while todo and ok:
            x = todo.pop()
            for a, b in ((a0, b0), (a1, b1)):
                y, img = a[x], b[pi[x]]
                if pi[y] == -1:
                    pi[y] = img
                    todo.append(y)
                elif pi[y] != img:
                    ok = False
                    break
        if ok and len(set(pi)) == n:
            return Permutation._from_zero_based(tuple(pi))
    return None


def canonical_form(D: Dessin) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Smallest breadth-first relabeling over all start edges; equal iff isomorphic."""
    n = D.n
    a0, a1 = D.sigma0._img, D.sigma1._img
    best = None
    for start in range(n):
        new = [-1] * n
        new[start] = 0
        order = [start]
        k = 0
        while k < len(order):
            x = order[k]
            k += 1
            for a in (a0, a1):
                y = a[x]
                if new[y] == -1:
                    new[y] = len(order)
                    order.append(y)
        form = (tuple(new[a0[x]] for x in order), tuple(new[a1[x]] for x in order))
        if best is None or form < best:
            best = form
    return best


# --------------------------------------------------------------------------
# enumeration


def perms_of_cycle_type(shape: Sequence[int], n: int) -> Iterator[tuple[int, ...]]:
    """Every permutation of {0..n-1} (0-based image tuples) with the given cycle type."""
    if sum(shape) != n:
        raise ValueError("cycle type must be a partition of n")
    counts = Counter(shape)
    img = [0] * n
    remaining = list(range(n))

    def rec() -> Iterator[tuple[int, ...]]:
        if not remaining:
            yield tuple(img)
            return
        first = remaining.pop(0)
        for length in sorted(counts):
            if counts[length] == 0:
                continue
            counts[length] -= 1
            for rest in itertools.permutations(remaining, length - 1):
                cyc = (first,) + rest
                for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                    img[a] = b
                left = [x for x in remaining if x not in rest]
                saved = remaining[:]
                remaining[:] = left
                yield from rec()
                remaining[:] = saved
            counts[length] += 1
        remaining.insert(0, first)

    yield from rec()


def _canonical_representative(shape: Sequence[int], n: int) -> Permutation:
    cycles = []
    start = 1
    for length in sorted(shape, reverse=True):
        cycles.append(list(range(start, start + length)))
        start += length
    return from_cycles(cycles, n)


def _centralizer_generators(sigma: Permutation) -> list[Permutation]:
    """Generators of the centralizer: each cycle's rotation, plus swaps of
    consecutive cycles of equal length."""
    n = sigma.n
    cycles = sigma.cycles(include_fixed=True)
    gens = [from_cycles([c], n) for c in cycles if len(c) > 1]
    by_len: dict[int, list[list[int]]] = {}
    for c in cycles:
        by_len.setdefault(len(c), []).append(c)
    for group in by_len.values():
        for c, d in zip(group, group[1:]):
            gens.append(from_cycles([[x, y] for x, y in zip(c, d)], n))
    return gens


def _single_cycle(img: Sequence[int]) -> bool:
    x, steps = img[0], 1
    while x != 0:
        x = img[x]
        steps += 1
    return steps == len(img)


@dataclass
class EnumerationResult:
    passport: Passport
    count: int
    representatives: list[Dessin]
    all_genus_count: int | None = None

    def to_json(self) -> dict:
        return {
            "passport": str(self.passport),
            "tree_count": self.count,
            "representatives": [d.to_json() for d in self.representatives],
            "all_genus_count": self.all_genus_count,
        }


def _orbit_count(sigma0: Permutation, candidates: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """One representative per orbit of the centralizer of sigma0 acting by conjugation."""
    index = {c: i for i, c in enumerate(candidates)}
    parent = list(range(len(candidates)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in _centralizer_generators(sigma0):
        ci = c._img
        for i, s1 in enumerate(candidates):
            # c^-1 s1 c sends c(x) to c(s1(x))
            img = [0] * len(ci)
            for x, y in enumerate(s1):
                img[ci[x]] = ci[y]
            j = index[tuple(img)]
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    return [candidates[i] for i in range(len(candidates)) if find(i) == i]


def count_trees_with_passport(p: Passport, cap: int = 10, all_genus_limit: int = 8) -> EnumerationResult:
    """Number of isomorphism classes of plane trees with passport ``p``.

    sigma0 is fixed to the canonical permutation of cycle type ``p.black``;
    sigma1 runs over the whole conjugacy class of ``p.white``.  Pairs whose
    product is an n-cycle are trees, and isomorphism classes are the orbits
    of the centralizer of sigma0.  For n <= ``all_genus_limit`` the count of
    connected dessins of any genus is reported too.
    """
    n = p.n
    if n > cap:
        raise ValueError(f"passport has {n} edges, above the enumeration cap {cap}")
    sigma0 = _canonical_representative(p.black, n)
    s0 = sigma0._img
    trees = []
    connected = []
    want_all = n <= all_genus_limit
    for s1 in perms_of_cycle_type(p.white, n):
        prod = [s1[s0[x]] for x in range(n)]
        if _single_cycle(prod):
            trees.append(s1)
        if want_all and _is_transitive(s0, s1):
            connected.append(s1)
    reps = _orbit_count(sigma0, trees)
    all_count = len(_orbit_count(sigma0, connected)) if want_all else None
    dessins = [Dessin(n, sigma0, Permutation._from_zero_based(s1)) for s1 in reps]
    return EnumerationResult(p, len(reps), dessins, all_count)
