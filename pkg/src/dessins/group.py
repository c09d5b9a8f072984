"""Permutation groups given by generators.

Order and membership come from a deterministic Schreier-Sims stabilizer chain.
Structural recognition covers the groups that occur as monodromy groups of
the size-one plane trees: cyclic, dihedral, alternating and symmetric groups,
and the imprimitive wreath-type groups built over a block system.

Internally a permutation of degree n <= 256 is a 256-byte string whose first
n bytes are the 0-based images (the tail is the identity).  The left-to-right
product ``a * b`` is then ``a.translate(b)``.
"""

from __future__ import annotations

import itertools
import logging
import math
import random
from collections import deque
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Sequence

from .perm import Permutation, format_cycles, from_cycles, identity

logger = logging.getLogger(__name__)

__all__ = [
    "GroupHandle",
    "BlockSystem",
    "SignSignature",
    "GroupLabel",
    "OrderCapExceeded",
    "generate",
    "brute_force_order",
    "minimal_block_system",
    "all_minimal_block_systems",
    "all_block_systems",
    "block_action_and_kernel",
    "recognize",
    "predicted_order",
    "canonical_label",
    "labels_equivalent",
    "wreath_coordinates",
    "group_report",
    "explicit_group",
    "find_shift",
    "sign_predicate",
]

_ID = bytes(range(256))
MAX_DEGREE = 256


def _encode(p: Permutation) -> bytes:
    if p.n > MAX_DEGREE:
        raise ValueError(f"degree {p.n} exceeds the supported maximum {MAX_DEGREE}")
    return bytes(p._img) + _ID[p.n:]


def _decode(a: bytes, n: int) -> Permutation:
    return Permutation._from_zero_based(tuple(a[:n]))


def _inv(a: bytes, n: int) -> bytes:
    out = bytearray(_ID)
    for i in range(n):
        out[a[i]] = i
    return bytes(out)


def _pow(a: bytes, k: int) -> bytes:
    result = _ID
    while k:
        if k & 1:
            result = result.translate(a)
        a = a.translate(a)
        k >>= 1
    return result


def _order(a: bytes, n: int) -> int:
    return _decode(a, n).order()


class StabilizerChain:
    """Base and strong generating set, built by deterministic Schreier-Sims.

    ``base_prefix`` forces the first base points; the pointwise stabilizer of
    that prefix is then available as ``level_generators(len(prefix))``.
    """

    def __init__(self, n: int, gens: Sequence[bytes], base_prefix: Sequence[int] = ()):
        self.n = n
        self.base: list[int] = []
        self.strong: list[list[bytes]] = []
        self.trans: list[dict[int, bytes]] = []
        self.trans_inv: list[dict[int, bytes]] = []
        self._build([g for g in dict.fromkeys(gens) if g != _ID], list(base_prefix))

    def _add_level(self, point: int) -> None:
        self.base.append(point)
        self.strong.append([])
        self.trans.append({point: _ID})
        self.trans_inv.append({point: _ID})

    def _grow(self, level: int, gen: bytes) -> None:
        gens = self.strong[level]
        gens.append(gen)
        trans, tinv, n = self.trans[level], self.trans_inv[level], self.n
        todo = []
        for p, u in list(trans.items()):
            q = gen[p]
            if q not in trans:
                trans[q] = v = u.translate(gen)
                tinv[q] = _inv(v, n)
                todo.append(q)
        while todo:
            p = todo.pop()
            u = trans[p]
            for x in gens:
                q = x[p]
                if q not in trans:
                    trans[q] = v = u.translate(x)
                    tinv[q] = _inv(v, n)
                    todo.append(q)

    def _first_moved(self, g: bytes) -> int:
        for i in range(self.n):
            if g[i] != i and i not in self.base:
                return i
        raise AssertionError("identity has no moved point")

    def sift(self, h: bytes, start: int = 0) -> tuple[bytes, int]:
        base, tinv = self.base, self.trans_inv
        for level in range(start, len(base)):
            inv = tinv[level].get(h[base[level]])
            if inv is None:
                return h, level
            h = h.translate(inv)
        return h, len(base)

    def _build(self, gens: list[bytes], prefix: list[int]) -> None:
        for b in prefix:
            self._add_level(b)
        for g in gens:
            if all(g[b] == b for b in self.base):
                self._add_level(self._first_moved(g))
        for g in gens:
            for level, b in enumerate(self.base):
                self._grow(level, g)
                if g[b] != b:
                    break
        checked: list[set[tuple[int, int]]] = [set() for _ in self.base]
        i = len(self.base) - 1
        while i >= 0:
            jump = self._check_level(i, checked)
            if jump is None:
                i -= 1
            else:
                i = jump

    def _check_level(self, i: int, checked: list[set[tuple[int, int]]]) -> int | None:
        trans, tinv = self.trans[i], self.trans_inv[i]
        gens = self.strong[i]
        done = checked[i]
        for beta, u in list(trans.items()):
            for gi in range(len(gens)):
                if (beta, gi) in done:
                    continue
                done.add((beta, gi))
                x = gens[gi]
                h = u.translate(x).translate(tinv[x[beta]])
                if h == _ID:
                    continue
                y, j = self.sift(h, i + 1)
                if j == len(self.base):
                    if y == _ID:
                        continue
                    self._add_level(self._first_moved(y))
                    checked.append(set())
                for level in range(i + 1, j + 1):
                    self._grow(level, y)
                return j
        return None

    def order(self) -> int:
        return math.prod(len(t) for t in self.trans)

    def level_order(self, start: int) -> int:
        return math.prod(len(t) for t in self.trans[start:])

    def level_generators(self, level: int) -> list[bytes]:
        """Strong generators of the pointwise stabilizer of ``base[:level]``."""
        if level >= len(self.base):
            return []
        return list(self.strong[level])

    def contains(self, g: bytes) -> bool:
        h, j = self.sift(g)
        return j == len(self.base) and h == _ID

    def random_element(self, rng: random.Random) -> bytes:
        g = _ID
        for trans in reversed(self.trans):
            g = g.translate(trans[rng.choice(list(trans))])
        return g


class GroupHandle:
    """The group generated by a list of permutations of degree ``n``.

    The stabilizer chain is built once at construction; the handle is
    read-only afterwards.
    """

    def __init__(self, gens: Sequence[Permutation], n: int):
        if n < 1:
            raise ValueError("degree must be positive")
        for g in gens:
            if g.n != n:
                raise ValueError(f"generator of degree {g.n} in a group of degree {n}")
        self.n = n
        self.generators: tuple[Permutation, ...] = tuple(gens)
        self._gens = [_encode(g) for g in gens]
        self.chain = StabilizerChain(n, self._gens)
        self._order = self.chain.order()

    def __repr__(self) -> str:
        gens = ", ".join(format_cycles(g) for g in self.generators)
        return f"GroupHandle([{gens}], n={self.n}, order={self._order})"

    @property
    def base(self) -> list[int]:
        return [b + 1 for b in self.chain.base]

    def order(self) -> int:
        return self._order

    def contains(self, p: Permutation) -> bool:
        if p.n != self.n:
            raise ValueError(f"degree mismatch: {p.n} != {self.n}")
        return self.chain.contains(_encode(p))

    def orbit(self, point: int) -> list[int]:
        seen = {point - 1}
        todo = [point - 1]
        while todo:
            x = todo.pop()
            for g in self._gens:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return sorted(x + 1 for x in seen)

    def is_transitive(self) -> bool:
        return len(self.orbit(1)) == self.n

    def is_abelian(self) -> bool:
        return all(a.translate(b) == b.translate(a) for a, b in itertools.combinations(self._gens, 2))

    def exponent_if_abelian(self) -> int:
        return reduce(math.lcm, (g.order() for g in self.generators), 1)

    def random_element(self, rng: random.Random) -> Permutation:
        return _decode(self.chain.random_element(rng), self.n)

    def conjugated(self, by: Permutation) -> GroupHandle:
        return GroupHandle([g.conjugate(by) for g in self.generators], self.n)


def generate(gens: Iterable[Permutation], n: int) -> GroupHandle:
    return GroupHandle(list(gens), n)


class OrderCapExceeded(RuntimeError):
    """Raised by the brute-force oracle once the element count passes the cap."""


def brute_force_order(gens: Iterable[Permutation], n: int, cap: int = 10**6) -> int:
    """Group order by breadth-first closure over products; independent of the chain."""
    enc = []
    for g in gens:
        if g.n != n:
            raise ValueError(f"generator of degree {g.n} in a group of degree {n}")
        enc.append(_encode(g))
    seen = {_ID[:n]}
    frontier = [_ID]
    while frontier:
        nxt = []
        for a in frontier:
            for g in enc:
                b = a.translate(g)
                key = b[:n]
                if key not in seen:
                    seen.add(key)
                    if len(seen) > cap:
                        raise OrderCapExceeded(f"more than {cap} elements")
                    nxt.append(b)
        frontier = nxt
    return len(seen)


# --------------------------------------------------------------------------
# block systems


@dataclass(frozen=True)
class BlockSystem:
    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]]) -> BlockSystem:
        bl = sorted(tuple(sorted(b)) for b in blocks)
        points = [x for b in bl for x in b]
        if not bl or len({len(b) for b in bl}) != 1:
            raise ValueError("blocks must be nonempty and of equal size")
        if sorted(points) != list(range(1, len(points) + 1)):
            raise ValueError("blocks must partition 1..n")
        return cls(tuple(bl))

    @property
    def d(self) -> int:
        return len(self.blocks)

    @property
    def m(self) -> int:
        return len(self.blocks[0])

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    def block_index(self) -> dict[int, int]:
        return {x: i for i, b in enumerate(self.blocks) for x in b}

    def is_invariant(self, gens: Iterable[Permutation]) -> bool:
        index = self.block_index()
        for g in gens:
            for b in self.blocks:
                if len({index[g(x)] for x in b}) != 1:
                    return False
        return True

    def to_json(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]


def _union_find_blocks(gens: Sequence[bytes], n: int, seeds: Iterable[tuple[int, int]]) -> list[list[int]]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    queue = deque()
    for a, b in seeds:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra
            queue.append((a, b))
    while queue:
        a, b = queue.popleft()
        for g in gens:
            ra, rb = find(g[a]), find(g[b])
            if ra != rb:
                parent[rb] = ra
                queue.append((g[a], g[b]))
    classes: dict[int, list[int]] = {}
    for x in range(n):
        classes.setdefault(find(x), []).append(x + 1)
    return list(classes.values())


def _require_transitive(G: GroupHandle) -> None:
    if not G.is_transitive():
        raise ValueError("block systems are only defined here for transitive groups")


def minimal_block_system(G: GroupHandle, pair_seed: tuple[int, int]) -> BlockSystem | None:
    """Finest G-invariant partition in which both seed points share a block.

    Returns None when that partition is the single block {1..n}.
    """
    _require_transitive(G)
    a, b = pair_seed
    parts = _union_find_blocks(G._gens, G.n, [(a - 1, b - 1)])
    if len(parts) == 1:
        return None
    return BlockSystem.from_blocks(parts)


def _blocks_containing_one(G: GroupHandle) -> dict[frozenset[int], BlockSystem]:
    found: dict[frozenset[int], BlockSystem] = {}
    for k in range(2, G.n + 1):
        bs = minimal_block_system(G, (1, k))
        if bs is not None:
            found.setdefault(frozenset(bs.blocks[0]), bs)
    return found


def all_minimal_block_systems(G: GroupHandle) -> list[BlockSystem]:
    found = _blocks_containing_one(G)
    minimal = [bs for key, bs in found.items() if not any(other < key for other in found)]
    return sorted(minimal, key=lambda bs: (bs.m, bs.blocks))


def all_block_systems(G: GroupHandle) -> list[BlockSystem]:
    """Every nontrivial block system, coarsest (fewest blocks) first."""
    found = _blocks_containing_one(G)
    frontier = list(found)
    while frontier:
        new = []
        for a, b in itertools.product(frontier, list(found)):
            union = a | b
            if union in found:
                continue
            parts = _union_find_blocks(G._gens, G.n, [(0, x - 1) for x in union])
            if len(parts) == 1:
                continue
            bs = BlockSystem.from_blocks(parts)
            key = frozenset(bs.blocks[0])
            if key not in found:
                found[key] = bs
                new.append(key)
        frontier = new
    return sorted(found.values(), key=lambda bs: (bs.d, bs.blocks))


@dataclass(frozen=True)
class SignSignature:
    """A subspace of GF(2)^d (bit i set = odd on block i), kept as a reduced basis."""

    d: int
    basis: tuple[int, ...]

    @classmethod
    def span(cls, d: int, vectors: Iterable[int]) -> SignSignature:
        basis: list[int] = []
        for v in vectors:
            for b in basis:
                v = min(v, v ^ b)
            if v:
                basis.append(v)
                basis.sort(reverse=True)
        # reduced echelon form, so equal subspaces get equal bases
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                if (basis[i] >> (basis[j].bit_length() - 1)) & 1:
                    basis[i] ^= basis[j]
        return cls(d, tuple(basis))

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def contains(self, v: int) -> bool:
        for b in self.basis:
            v = min(v, v ^ b)
        return v == 0

    @property
    def all_ones(self) -> int:
        return (1 << self.d) - 1

    def is_full(self) -> bool:
        return self.dimension == self.d

    def is_trivial(self) -> bool:
        return self.dimension == 0

    def is_diagonal(self) -> bool:
        return self.dimension == 1 and self.contains(self.all_ones)

    def is_even_weight(self) -> bool:
        return self.dimension == self.d - 1 and all(bin(b).count("1") % 2 == 0 for b in self.basis)

    def describe(self) -> str:
        if self.is_trivial():
            return "trivial"
        if self.is_full():
            return "full"
        if self.is_diagonal():
            return "equal-sign"
        if self.is_even_weight():
            return "even-product"
        return "other"

    def to_json(self) -> dict:
        vecs = ["".join("-" if (b >> i) & 1 else "+" for i in range(self.d)) for b in self.basis]
        return {"d": self.d, "basis": vecs, "kind": self.describe()}


def _block_signs(g: bytes, blocks: Sequence[Sequence[int]]) -> int:
    """Per-block parity bitmask of an element that fixes every block setwise."""
    vec = 0
    for i, blk in enumerate(blocks):
        pts = [x - 1 for x in blk]
        seen = set()
        transpositions = 0
        for x in pts:
            if x in seen:
                continue
            length = 0
            while x not in seen:
                seen.add(x)
                x = g[x]
                length += 1
            transpositions += length - 1
        if transpositions % 2:
            vec |= 1 << i
    return vec


@dataclass
class BlockAnalysis:
    blocks: BlockSystem
    action: GroupHandle
    kernel_order: int
    kernel_generators: list[Permutation]
    signature: SignSignature

    def to_json(self) -> dict:
        return {
            "blocks": self.blocks.to_json(),
            "block_action_order": str(self.action.order()),
            "kernel_order": str(self.kernel_order),
            "signature": self.signature.to_json(),
        }


def block_action_and_kernel(G: GroupHandle, B: BlockSystem) -> BlockAnalysis:
    """Induced action on blocks, kernel of that action, and the kernel sign signature."""
    if B.n != G.n or not B.is_invariant(G.generators):
        raise ValueError("block system is not invariant under the group")
    n, d = G.n, B.d
    if n + d > MAX_DEGREE:
        raise ValueError("degree too large for the block-extended action")
    index = B.block_index()
    extended = []
    action_gens = []
    for g in G.generators:
        img = [index[g(blk[0])] for blk in B.blocks]
        action_gens.append(Permutation([i + 1 for i in img]))
        ext = bytearray(_ID)
        for x in range(n):
            ext[x] = g._img[x]
        for i, j in enumerate(img):
            ext[n + i] = n + j
        extended.append(bytes(ext))
    chain = StabilizerChain(n + d, extended, base_prefix=range(n, n + d))
    kernel_order = chain.level_order(d)
    kernel = [bytes(k[:n]) + _ID[n:] for k in chain.level_generators(d)]
    vectors = [_block_signs(k, B.blocks) for k in kernel]
    for g, a in zip(G._gens, action_gens):
        vectors.append(_block_signs(_pow(g, a.order()), B.blocks))
    action = GroupHandle(action_gens, d)
    assert action.order() * kernel_order == G.order()
    return BlockAnalysis(
        blocks=B,
        action=action,
        kernel_order=kernel_order,
        kernel_generators=[_decode(k, n) for k in kernel],
        signature=SignSignature.span(d, vectors),
    )


def wreath_coordinates(g: Permutation, B: BlockSystem, shift: Permutation) -> tuple[list[Permutation], Permutation]:
    """Write g as (tau_1, ..., tau_d; pi) in S_m wr S_d.

    Blocks are identified through ``shift``, which must permute the blocks as
    a single d-cycle: block k is shift^k(block of point 1) and the bijection
    block 0 -> block k is x -> shift^k(x).  Each tau_i is returned as a
    permutation of {1..m} indexing the points of block 0 in sorted order.
    """
    index = B.block_index()
    d, m = B.d, B.m
    base_block = sorted(B.blocks[index[1]])
    powers = [identity(g.n)]
    for _ in range(d - 1):
        powers.append(powers[-1] * shift)
    order_of_blocks = [index[powers[k](base_block[0])] for k in range(d)]
    if sorted(order_of_blocks) != list(range(d)):
        raise ValueError("shift does not cycle through all blocks")
    position = {blk: k for k, blk in enumerate(order_of_blocks)}
    local = {x: i for i, x in enumerate(base_block)}
    taus = []
    pi = [0] * d
    for k in range(d):
        target = position[index[g(powers[k](base_block[0]))]]
        pi[k] = target
        back = powers[target].inverse()
        img = [local[back(g(powers[k](x)))] + 1 for x in base_block]
        taus.append(Permutation(img))
    return taus, Permutation([p + 1 for p in pi])


# --------------------------------------------------------------------------
# labels


_KINDS = {
    "Cyclic": 1, "Dihedral": 1, "Alt": 1, "Sym": 1,
    "WreathCyclic": 2, "AltWreath": 2, "SymWreath": 2, "Rtilde": 2,
    "R2": 1, "R3": 1, "AltCross2": 1, "SymCross2": 1, "Unknown": 1,
}


@dataclass(frozen=True)
class GroupLabel:
    """Structured name of a recognized group.

    Parameters: Cyclic(r), Dihedral(order), Alt(n), Sym(n), WreathCyclic(r, s)
    for Z_r wr Z_s, AltWreath(m, d), SymWreath(m, d), Rtilde(m, d), R2(m),
    R3(m), AltCross2(m) for A_m x Z_2, SymCross2(m), Unknown(order).
    """

    kind: str
    params: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown group label kind {self.kind!r}")
        if len(self.params) != _KINDS[self.kind]:
            raise ValueError(f"{self.kind} takes {_KINDS[self.kind]} parameter(s)")

    def __str__(self) -> str:
        k, p = self.kind, self.params
        if k == "Cyclic":
            return f"Z_{p[0]}"
        if k == "Dihedral":
            return f"D_{p[0]}"
        if k == "Alt":
            return f"A_{p[0]}"
        if k == "Sym":
            return f"S_{p[0]}"
        if k == "WreathCyclic":
            return f"Z_{p[0]} wr Z_{p[1]}"
        if k == "AltWreath":
            return f"A_{p[0]} wr Z_{p[1]}"
        if k == "SymWreath":
            return f"S_{p[0]} wr Z_{p[1]}"
        if k == "Rtilde":
            return f"R~_{p[1]} < S_{p[0]} wr Z_{p[1]}"
        if k == "R2":
            return f"R_2 < S_{p[0]} wr Z_2"
        if k == "R3":
            return f"R_3 < S_{p[0]} wr Z_3"
        if k == "AltCross2":
            return f"A_{p[0]} x Z_2"
        if k == "SymCross2":
            return f"S_{p[0]} x Z_2"
        return "unknown" if p[0] is None else f"unknown (order {p[0]})"

    def to_json(self) -> dict:
        return {"label": self.kind, "label_params": [str(x) for x in self.params if x is not None], "name": str(self)}

    @classmethod
    def from_json(cls, data: dict) -> GroupLabel:
        params = tuple(int(x) for x in data["label_params"])
        if data["label"] == "Unknown" and not params:
            params = (None,)
        return cls(data["label"], params)


def Cyclic(r): return GroupLabel("Cyclic", (r,))  # noqa: E704
def Dihedral(order): return GroupLabel("Dihedral", (order,))  # noqa: E704
def Alt(n): return GroupLabel("Alt", (n,))  # noqa: E704
def Sym(n): return GroupLabel("Sym", (n,))  # noqa: E704
def WreathCyclic(r, s): return GroupLabel("WreathCyclic", (r, s))  # noqa: E704
def AltWreath(m, d): return GroupLabel("AltWreath", (m, d))  # noqa: E704
def SymWreath(m, d): return GroupLabel("SymWreath", (m, d))  # noqa: E704
def Rtilde(m, d): return GroupLabel("Rtilde", (m, d))  # noqa: E704
def R2(m): return GroupLabel("R2", (m,))  # noqa: E704
def R3(m): return GroupLabel("R3", (m,))  # noqa: E704
def AltCross2(m): return GroupLabel("AltCross2", (m,))  # noqa: E704
def SymCross2(m): return GroupLabel("SymCross2", (m,))  # noqa: E704
def Unknown(order): return GroupLabel("Unknown", (order,))  # noqa: E704


def predicted_order(label: GroupLabel) -> int:
    k, p = label.kind, label.params
    f = math.factorial
    if k == "Cyclic":
        return p[0]
    if k == "Dihedral":
        return p[0]
    if k == "Alt":
        return max(f(p[0]) // 2, 1)
    if k == "Sym":
        return f(p[0])
    if k == "WreathCyclic":
        r, s = p
        return r**s * s
    if k == "AltWreath":
        m, d = p
        return max(f(m) // 2, 1) ** d * d
    if k == "SymWreath":
        m, d = p
        return f(m) ** d * d
    if k == "Rtilde":
        m, d = p
        return f(m) ** d * d // 2 ** (d - 1)
    if k == "R2":
        return f(p[0]) ** 2
    if k == "R3":
        return f(p[0]) ** 3 * 3 // 2
    if k == "AltCross2":
        return f(p[0])
    if k == "SymCross2":
        return 2 * f(p[0])
    raise ValueError("an Unknown label has no predicted order")


def canonical_label(label: GroupLabel) -> GroupLabel:
    """Normal form identifying labels that name the same permutation group.

    Degenerate parameters collapse (a wreath over Z_1 is its base group,
    Rtilde over two blocks is R2) along with the small coincidences
    S_2 wr Z_d = Z_2 wr Z_d, A_3 wr Z_d = Z_3 wr Z_d, S_3 = D_6,
    S_3 x Z_2 = D_12, A_3 x Z_2 = Z_6, Z_2 wr Z_2 = D_8 and, for
    two-point blocks, R2 = D_4 and Rtilde over odd d = Z_2d.
    """
    while True:
        k, p = label.kind, label.params
        new = label
        if k in ("WreathCyclic", "SymWreath", "AltWreath", "Rtilde") and p[1] == 1:
            new = {"WreathCyclic": Cyclic, "SymWreath": Sym, "AltWreath": Alt, "Rtilde": Sym}[k](p[0])
        elif k == "Rtilde" and p[1] == 2:
            new = R2(p[0])
        elif k == "SymWreath" and p[0] == 2:
            new = WreathCyclic(2, p[1])
        elif k == "AltWreath" and p[0] == 3:
            new = WreathCyclic(3, p[1])
        elif k == "WreathCyclic" and p[0] == 1:
            new = Cyclic(1)
        elif k == "WreathCyclic" and p == (2, 2):
            new = Dihedral(8)
        elif k == "R2" and p[0] == 2:
            new = Dihedral(4)
        elif k == "Rtilde" and p[0] == 2 and p[1] % 2:
            new = Cyclic(2 * p[1])
        elif k == "SymCross2" and p[0] == 3:
            new = Dihedral(12)
        elif k == "AltCross2" and p[0] == 3:
            new = Cyclic(6)
        elif k in ("Sym", "Alt") and p[0] == 1 or k == "Alt" and p[0] == 2:
            new = Cyclic(1)
        elif k == "Sym" and p[0] == 2 or k == "Dihedral" and p[0] == 2:
            new = Cyclic(2)
        elif k == "Alt" and p[0] == 3:
            new = Cyclic(3)
        elif k == "Sym" and p[0] == 3:
            new = Dihedral(6)
        if new == label:
            return label
        label = new


def labels_equivalent(a: GroupLabel, b: GroupLabel) -> bool:
    return canonical_label(a) == canonical_label(b)


# --------------------------------------------------------------------------
# recognition


@dataclass
class Recognition:
    label: GroupLabel
    order: int
    evidence: BlockAnalysis | None = None

    def evidence_json(self) -> dict:
        ev = self.evidence
        if ev is None:
            return {"blocks": None, "kernel_order": None, "signature": None}
        return {
            "blocks": ev.blocks.to_json(),
            "kernel_order": str(ev.kernel_order),
            "signature": ev.signature.to_json(),
        }


def _is_cyclic_of_order(H: GroupHandle, k: int) -> bool:
    return H.order() == k and H.is_abelian() and H.exponent_if_abelian() == k


def _dihedral(G: GroupHandle) -> GroupLabel | None:
    gens = [g for g in dict.fromkeys(G.generators) if not g.is_identity()]
    if len(gens) != 2:
        return None
    a, b = gens
    if a.order() == 2 and b.order() == 2:
        k = (a * b).order()
        if G.order() == 2 * k:
            return Dihedral(2 * k)
        return None
    for x, y in ((a, b), (b, a)):
        if x.order() == 2 and x * y * x == y.inverse() and G.order() == 2 * y.order():
            return Dihedral(2 * y.order())
    return None


def _block_permutation(g: Permutation, B: BlockSystem) -> Permutation:
    index = B.block_index()
    return Permutation([index[g(min(blk))] + 1 for blk in B.blocks])


def _product_even(G: GroupHandle, B: BlockSystem) -> bool:
    """Whether the product of the base coordinates is even for every element.

    That parity equals sgn(g) * sgn(pi)^m for any identification of the
    blocks, where pi is the induced block permutation; it is a character, so
    checking generators suffices.
    """
    m = B.m
    return all(g.sign() * _block_permutation(g, B).sign() ** m == 1 for g in G.generators)


def _equal_signs_hold(G: GroupHandle, B: BlockSystem) -> bool:
    """Whether some identification of the blocks gives every element base coordinates of equal sign."""
    if B.d == 2:
        return _product_even(G, B)
    try:
        shift = find_shift(G, B, random.Random(0))
    except ValueError:
        return False
    return all(len({t.sign() for t in wreath_coordinates(g, B, shift)[0]}) == 1 for g in G.generators)


def _classify_blocks(G: GroupHandle, info: BlockAnalysis) -> GroupLabel | None:
    m, d = info.blocks.m, info.blocks.d
    order, K, H, sig = G.order(), info.kernel_order, info.action, info.signature
    f = math.factorial(m)
    top_cyclic = _is_cyclic_of_order(H, d)
    candidates: list[GroupLabel] = []
    if top_cyclic and K == m**d:
        kernel = GroupHandle(info.kernel_generators, G.n) if info.kernel_generators else None
        if kernel is not None and kernel.is_abelian() and kernel.exponent_if_abelian() == m:
            candidates.append(WreathCyclic(m, d))
    if top_cyclic:
        if K == f**d and sig.is_full():
            candidates.append(SymWreath(m, d))
        if K == (f // 2) ** d and sig.is_trivial():
            candidates.append(AltWreath(m, d))
        # the kernel alone does not decide these: the block-moving elements
        # must satisfy the same sign condition
        if sig.is_diagonal() and K == (f // 2) ** d * 2 and _equal_signs_hold(G, info.blocks):
            candidates.append(R2(m) if d == 2 else Rtilde(m, d))
        if d == 3 and sig.is_even_weight() and K == (f // 2) ** 3 * 4 and _product_even(G, info.blocks):
            candidates.append(R3(m))
    if m == 2 and K == 2:
        if H.order() == math.factorial(d) // 2:
            candidates.append(AltCross2(d))
        elif H.order() == math.factorial(d):
            candidates.append(SymCross2(d))
    for label in candidates:
        if predicted_order(label) == order:
            return label
    return None


def recognize_with_evidence(G: GroupHandle) -> Recognition:
    if not G.is_transitive():
        raise ValueError("recognition expects a transitive group")
    order, n = G.order(), G.n
    if G.is_abelian() and G.exponent_if_abelian() == order:
        return Recognition(Cyclic(order), order)
    label = _dihedral(G)
    if label is not None:
        return Recognition(label, order)
    if order == math.factorial(n):
        return Recognition(Sym(n), order)
    if order == math.factorial(n) // 2:
        return Recognition(Alt(n), order)
    for B in all_block_systems(G):
        info = block_action_and_kernel(G, B)
        label = _classify_blocks(G, info)
        if label is not None:
            return Recognition(label, order, info)
    logger.info("unrecognized transitive group of degree %d and order %d", n, order)
    return Recognition(Unknown(order), order)


def recognize(G: GroupHandle) -> GroupLabel:
    return recognize_with_evidence(G).label


def group_report(G: GroupHandle) -> dict:
    rec = recognize_with_evidence(G) if G.is_transitive() else None
    evidence = rec.evidence_json() if rec is not None else Recognition(Unknown(None), 0).evidence_json()
    label = rec.label if rec is not None else None
    return {
        "generators": [format_cycles(g) for g in G.generators],
        "degree": str(G.n),
        "order": str(G.order()),
        "transitive": G.is_transitive(),
        "label": label.kind if label else None,
        "label_params": [str(x) for x in label.params] if label else [],
        "label_name": str(label) if label else None,
        "evidence": evidence,
    }


# --------------------------------------------------------------------------
# explicit constructions


def _block_points(k: int, m: int) -> list[int]:
    return list(range(k * m + 1, (k + 1) * m + 1))


def _on_block(cycles: Sequence[Sequence[int]], k: int, m: int, n: int) -> Permutation:
    return from_cycles([[k * m + x for x in c] for c in cycles], n)


def _sym_gens(m: int) -> list[list[list[int]]]:
    if m < 2:
        return []
    return [[[1, 2]], [list(range(1, m + 1))]]


def _alt_gens(m: int) -> list[list[list[int]]]:
    return [[[1, 2, k]] for k in range(3, m + 1)]


def explicit_group(label: GroupLabel) -> tuple[GroupHandle, BlockSystem | None, Permutation | None]:
    """Build the named group from its definition, with its block system and shift.

    Wreath-type groups act on m*d points in d consecutive blocks; the shift
    sends point k*m + x to ((k+1) mod d)*m + x, so its d-th power is the
    identity.  The two direct products with Z_2 act on 2m points (i, +-) with
    blocks {i, m + i}.
    """
    k, p = label.kind, label.params
    if k in ("WreathCyclic", "SymWreath", "AltWreath", "Rtilde", "R2", "R3"):
        if k == "R2":
            m, d = p[0], 2
        elif k == "R3":
            m, d = p[0], 3
        else:
            m, d = p
        n = m * d
        shift = Permutation([((x - 1 + m) % n) + 1 for x in range(1, n + 1)])
        gens = [shift]
        if k == "WreathCyclic":
            gens.append(_on_block([list(range(1, m + 1))], 0, m, n))
        elif k == "SymWreath":
            gens += [_on_block(c, 0, m, n) for c in _sym_gens(m)]
        else:
            gens += [_on_block(c, 0, m, n) for c in _alt_gens(m)]
            if k in ("Rtilde", "R2"):
                gens.append(from_cycles([[b * m + 1, b * m + 2] for b in range(d)], n))
            elif k == "R3":
                gens.append(from_cycles([[1, 2], [m + 1, m + 2]], n))
        blocks = BlockSystem.from_blocks([_block_points(b, m) for b in range(d)])
        return generate(gens, n), blocks, shift
    if k in ("AltCross2", "SymCross2"):
        m = p[0]
        n = 2 * m
        base = _alt_gens(m) if k == "AltCross2" else _sym_gens(m)
        diag = [from_cycles([[x for x in c] for c in cyc] + [[m + x for x in c] for c in cyc], n) for cyc in base]
        swap = from_cycles([[i, m + i] for i in range(1, m + 1)], n)
        blocks = BlockSystem.from_blocks([[i, m + i] for i in range(1, m + 1)])
        return generate(diag + [swap], n), blocks, None
    if k == "Cyclic":
        return generate([from_cycles([list(range(1, p[0] + 1))], p[0])], p[0]), None, None
    if k == "Dihedral":
        q = p[0] // 2
        rot = from_cycles([list(range(1, q + 1))], q)
        refl = from_cycles([[i, q + 2 - i] for i in range(2, q // 2 + 2) if i < q + 2 - i], q)
        return generate([rot, refl], q), None, None
    if k in ("Sym", "Alt"):
        m = p[0]
        gens = _sym_gens(m) if k == "Sym" else _alt_gens(m)
        return generate([from_cycles(c, m) for c in gens] or [identity(m)], m), None, None
    raise ValueError(f"no explicit construction for {label}")


def find_shift(G: GroupHandle, B: BlockSystem, rng: random.Random, tries: int = 2000) -> Permutation:
    """An element of G that cycles the blocks and whose d-th power is even on every block.

    Such a shift fixes coordinates in which the shift itself has trivial
    base part up to an even permutation, so the sign predicates are
    meaningful.
    """
    d = B.d
    index = B.block_index()
    for _ in range(tries):
        g = G.random_element(rng)
        cyc = [index[1]]
        x = 1
        for _ in range(d - 1):
            x = g(x)
            cyc.append(index[x])
        if len(set(cyc)) != d:
            continue
        gd = g**d
        if all(_block_signs(_encode(gd), [sorted(b)]) == 0 for b in B.blocks):
            return g
    raise ValueError("no suitable shift found")


def sign_predicate(label: GroupLabel, taus: Sequence[Permutation]) -> bool:
    """The sign condition on base coordinates that defines R2, R3 and Rtilde."""
    signs = [t.sign() for t in taus]
    if label.kind in ("Rtilde", "R2"):
        return len(set(signs)) == 1
    if label.kind == "R3":
        return math.prod(signs) == 1
    raise ValueError(f"{label} has no sign predicate")
