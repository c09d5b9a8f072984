"""DOT and SVG drawings of dessins.

Trees are drawn with a planar layout that respects the rotation system:
the edges around every vertex appear counterclockwise in cycle order.
Dessins of higher genus fall back to a circular layout.
"""

from __future__ import annotations

import math

from .dessin import Dessin, vertices

__all__ = ["to_dot", "to_svg", "tree_layout"]


def _incidence(D: Dessin):
    vs = vertices(D)
    ends: dict[int, list[int]] = {}
    for i, v in enumerate(vs):
        for e in v.edges:
            ends.setdefault(e, []).append(i)
    return vs, ends


def to_dot(D: Dessin) -> str:
    vs, ends = _incidence(D)
    lines = ["graph dessin {", "  node [shape=circle, label=\"\", width=0.18];"]
    for i, v in enumerate(vs):
        fill = "black" if v.color == 0 else "white"
        lines.append(f"  v{i + 1} [style=filled, fillcolor={fill}];")
    for e in range(1, D.n + 1):
        a, b = ends[e]
        lines.append(f"  v{a + 1} -- v{b + 1} [label=\"{e}\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def tree_layout(D: Dessin) -> dict[int, tuple[float, float]]:
    """Vertex positions (index into ``vertices(D)``) for a plane tree.

    The root is the vertex holding edge 1; each subtree gets an angular wedge
    proportional to its leaf count, and children are placed counterclockwise
    in rotation order starting after the edge to the parent.
    """
    if not D.is_tree():
        raise ValueError("tree_layout needs a tree")
    vs, ends = _incidence(D)
    root = ends[1][0]

    def other(e, i):
        a, b = ends[e]
        return b if a == i else a

    children: dict[int, list[int]] = {}
    order = [root]
    parent_edge = {root: None}
    k = 0
    while k < len(order):
        i = order[k]
        k += 1
        rot = list(vs[i].edges)
        pe = parent_edge[i]
        if pe is not None:
            j = rot.index(pe)
            rot = rot[j + 1:] + rot[:j]
        kids = []
        for e in rot:
            c = other(e, i)
            parent_edge[c] = e
            kids.append(c)
            order.append(c)
        children[i] = kids

    leaves: dict[int, int] = {}
    for i in reversed(order):
        leaves[i] = max(1, sum(leaves[c] for c in children[i]))

    pos = {root: (0.0, 0.0)}
    depth = {root: 0}

    def place(i, lo, hi):
        span = hi - lo
        total = sum(leaves[c] for c in children[i]) or 1
        a = lo
        for c in children[i]:
            w = span * leaves[c] / total
            mid = a + w / 2
            depth[c] = depth[i] + 1
            pos[c] = (depth[c] * math.cos(mid), depth[c] * math.sin(mid))
            place(c, a, a + w)
            a += w

    place(root, 0.0, 2 * math.pi)
    return pos


def to_svg(D: Dessin, size: int = 420) -> str:
    vs, ends = _incidence(D)
    try:
        pos = tree_layout(D)
    except ValueError:
        pos = {i: (math.cos(2 * math.pi * i / len(vs)), math.sin(2 * math.pi * i / len(vs))) for i in range(len(vs))}
    xs = [p[0] for p in pos.values()]
    ys = [p[1] for p in pos.values()]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    pad = 0.1 * span

    def xy(i):
        x, y = pos[i]
        return ((x - min(xs) + pad) / (span + 2 * pad) * size, (max(ys) - y + pad) / (span + 2 * pad) * size)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">']
    for e in range(1, D.n + 1):
        (x1, y1), (x2, y2) = xy(ends[e][0]), xy(ends[e][1])
        out.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" stroke="#444" stroke-width="1.5"/>')
        out.append(f'<text x="{(x1 + x2) / 2:.2f}" y="{(y1 + y2) / 2 - 3:.2f}" font-size="10" fill="#a00">{e}</text>')
    for i, v in enumerate(vs):
        x, y = xy(i)
        fill = "black" if v.color == 0 else "white"
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="5" fill="{fill}" stroke="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
