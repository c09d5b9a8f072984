"""Permutations of {1..n}.

Products are evaluated left to right: ``(p * q)(x) == q(p(x))``.  This is the
convention used for every labeling in the package (and by GAP), but *not* the
right-to-left composition common in textbooks.  Points are 1-indexed and the
degree is always explicit; trailing fixed points are part of the value.
"""

from __future__ import annotations

import math
import re
from functools import reduce
from typing import Iterable, Sequence

__all__ = [
    "Permutation",
    "from_cycles",
    "identity",
    "multiply",
    "cycle_type",
    "sign",
    "element_order",
    "inverse",
    "conjugate",
    "parse_cycles",
    "parse_permutation",
    "format_cycles",
]


class Permutation:
    """An immutable bijection of {1..n}.

    ``images[i - 1]`` is the image of point ``i``.
    """

    __slots__ = ("_img", "_hash")

    def __init__(self, images: Sequence[int]):
        img = tuple(int(x) - 1 for x in images)
        n = len(img)
        if n == 0:
            raise ValueError("degree must be positive")
        if sorted(img) != list(range(n)):
            raise ValueError(f"not a bijection of 1..{n}: {list(images)}")
        self._img = img
        self._hash = None

    @classmethod
    def _from_zero_based(cls, img: tuple[int, ...]) -> Permutation:
        p = object.__new__(cls)
        p._img = img
        p._hash = None
        return p

    @property
    def n(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(x + 1 for x in self._img)

    def __call__(self, x: int) -> int:
        if not 1 <= x <= len(self._img):
            raise ValueError(f"point {x} outside 1..{self.n}")
        return self._img[x - 1] + 1

    def __mul__(self, other: Permutation) -> Permutation:
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.n != self.n:
            raise ValueError(f"degree mismatch: {self.n} != {other.n}")
        q = other._img
        return Permutation._from_zero_based(tuple(q[i] for i in self._img))

    def __pow__(self, k: int) -> Permutation:
        if k < 0:
            return self.inverse() ** (-k)
        result = identity(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __invert__(self) -> Permutation:
        return self.inverse()

    def inverse(self) -> Permutation:
        inv = [0] * len(self._img)
        for i, j in enumerate(self._img):
            inv[j] = i
        return Permutation._from_zero_based(tuple(inv))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._img == other._img

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._img)
        return self._hash

    def __lt__(self, other: Permutation) -> bool:
        return (self.n, self._img) < (other.n, other._img)

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)!r}, n={self.n})"

    def __str__(self) -> str:
        return format_cycles(self)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self._img))

    def cycles(self, include_fixed: bool = False) -> list[list[int]]:
        """Disjoint cycles, each starting at its smallest point, ordered by that point."""
        seen = [False] * len(self._img)
        out = []
        for start in range(len(self._img)):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x + 1)
                x = self._img[x]
            if len(cyc) > 1 or include_fixed:
                out.append(cyc)
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles(include_fixed=True)), reverse=True))

    def num_cycles(self) -> int:
        return len(self.cycles(include_fixed=True))

    def sign(self) -> int:
        return -1 if (self.n - self.num_cycles()) % 2 else 1

    def order(self) -> int:
        return reduce(math.lcm, (len(c) for c in self.cycles(include_fixed=True)), 1)

    def conjugate(self, by: Permutation) -> Permutation:
        """``by^-1 * self * by``: relabel every point x as by(x)."""
        return by.inverse() * self * by

    def moved_points(self) -> list[int]:
        return [i + 1 for i, j in enumerate(self._img) if i != j]

    def to_cycles_json(self) -> list[list[int]]:
        return self.cycles()


def identity(n: int) -> Permutation:
    if n < 1:
        raise ValueError("degree must be positive")
    return Permutation._from_zero_based(tuple(range(n)))


def from_cycles(cycles: Iterable[Sequence[int]], n: int) -> Permutation:
    """Build a permutation of degree ``n`` from disjoint cycles.

    >>> from_cycles([[1, 3, 2], [4, 7, 5]], 7).images
    (3, 1, 2, 7, 4, 6, 5)
    """
    img = list(range(n))
    if n < 1:
        raise ValueError("degree must be positive")
    used = set()
    for cyc in cycles:
        cyc = [int(x) for x in cyc]
        for x in cyc:
            if not 1 <= x <= n:
                raise ValueError(f"point {x} outside 1..{n}")
            if x in used:
                raise ValueError(f"point {x} repeated")
            used.add(x)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a - 1] = b - 1
    return Permutation._from_zero_based(tuple(img))


def multiply(p: Permutation, q: Permutation) -> Permutation:
    """Left-to-right product: apply ``p`` first, then ``q``."""
    return p * q


def cycle_type(p: Permutation) -> tuple[int, ...]:
    return p.cycle_type()


def sign(p: Permutation) -> int:
    return p.sign()


def element_order(p: Permutation) -> int:
    return p.order()


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


def conjugate(p: Permutation, by: Permutation) -> Permutation:
    if p.n != by.n:
        raise ValueError(f"degree mismatch: {p.n} != {by.n}")
    return p.conjugate(by)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str) -> list[list[int]]:
    """Parse cycle notation such as ``"(1,3,2)(4,7,5)"``; ``"()"`` is the identity."""
    stripped = re.sub(r"\s+", "", text)
    if not stripped:
        raise ValueError("empty permutation string")
    if _CYCLE_RE.sub("", stripped):
        raise ValueError(f"could not parse permutation {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(stripped):
        if not body:
            continue
        try:
            cycles.append([int(x) for x in body.split(",")])
        except ValueError:
            raise ValueError(f"could not parse permutation {text!r}") from None
    return cycles


def parse_permutation(text: str, n: int | None = None) -> Permutation:
    cycles = parse_cycles(text)
    if n is None:
        n = max((max(c) for c in cycles), default=1)
    return from_cycles(cycles, n)


def format_cycles(p: Permutation) -> str:
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + ",".join(map(str, c)) + ")" for c in cycles)
