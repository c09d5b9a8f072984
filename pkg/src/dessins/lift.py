"""Numerical reconstruction of a dessin from its Shabat polynomial.

Every edge is an arc of F^-1((0, 1)).  Each arc contains exactly one
preimage of 1/2; from there we follow F(z(s)) = s down to 0 and up to 1 with
a predictor-corrector scheme.  Near the end the target vertex may be a
multiple root, so F - c is evaluated as L * prod (z - rho)^m from the exactly
known multiplicities and the approximated roots, and Newton is applied to
log(F - c), which is well conditioned near the whole cluster.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from dataclasses import dataclass, field

import numpy as np

from .dessin import Dessin
from .perm import Permutation
from .shabat import ExactPolynomial, is_shabat, square_free_decomposition

__all__ = ["LiftError", "complex_roots", "roots_with_multiplicity", "TracedGraph", "trace_graph", "trace_dessin"]


class LiftError(RuntimeError):
    """The numerical trace failed; no dessin is returned."""


# --------------------------------------------------------------------------
# roots


def _horner(coeffs: np.ndarray, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Value and derivative; ``coeffs`` highest degree first."""
    p = np.zeros_like(z)
    dp = np.zeros_like(z)
    for c in coeffs:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _aberth(coeffs_low_first: list[complex], eps: float, max_iter: int) -> np.ndarray:
    c = np.array(coeffs_low_first[::-1], dtype=complex)
    c = c / c[0]
    deg = len(c) - 1
    if deg == 0:
        return np.zeros(0, dtype=complex)
    if deg == 1:
        return np.array([-c[1]])
    # Fujiwara bound for the starting circle
    radius = 2 * max(abs(c[k]) ** (1.0 / k) for k in range(1, deg + 1))
    radius = max(radius, 1e-3)
    angles = 2 * np.pi * np.arange(deg) / deg + 0.4
    z = radius * 0.5 * np.exp(1j * angles)
    absc = np.abs(c)
    best = np.inf
    stalled = 0
    for _ in range(max_iter):
        p, dp = _horner(c, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = p / dp
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            corr = ratio / (1 - ratio * inv.sum(axis=1))
        corr = np.where(np.isfinite(corr), corr, 0.0)
        z = z - corr
        size = float(np.max(np.abs(corr) / np.maximum(np.abs(z), 1.0)))
        if size <= eps:
            break
        # once at the rounding floor the corrections stop shrinking
        if size < 1e-6:
            stalled = stalled + 1 if size >= best / 2 else 0
            if stalled >= 8:
                break
        best = min(best, size)
    else:
        raise LiftError(f"root finder did not converge in {max_iter} iterations (degree {deg})")
    p, _ = _horner(c, z)
    # |z| floored at 1 so roots at or near 0 are judged against the coefficient norm
    size, _ = _horner(absc, np.maximum(np.abs(z), 1.0).astype(complex))
    resid = np.abs(p) / np.abs(size)
    if np.any(resid > 1e-9):
        raise LiftError(f"root residual too large: {resid.max():.3g}")
    return z


def roots_with_multiplicity(F: ExactPolynomial, eps: float = 1e-12, max_iter: int = 2000) -> list[tuple[complex, int]]:
    """Distinct roots with multiplicities from the exact square-free decomposition."""
    if F.is_zero():
        raise ValueError("the zero polynomial has no finite root set")
    out = []
    for f, m in square_free_decomposition(F):
        for z in _aberth(f.complex_coefficients(), eps, max_iter):
            out.append((complex(z), m))
    return out


def complex_roots(F: ExactPolynomial, eps: float = 1e-12) -> list[complex]:
    """One approximation per distinct root of F."""
    return [z for z, _ in roots_with_multiplicity(F, eps)]


# --------------------------------------------------------------------------
# tracing


@dataclass
class TracedVertex:
    position: complex
    color: int
    multiplicity: int
    cluster_radius: float = 0.0


@dataclass
class TracedEdge:
    black: int
    white: int
    path: list[complex] = field(default_factory=list)


@dataclass
class TracedGraph:
    vertices: list[TracedVertex]
    edges: list[TracedEdge]
    rotations: list[list[int]]

    def to_dessin(self) -> Dessin:
        n = len(self.edges)
        img = [[0] * n, [0] * n]
        for v, rot in zip(self.vertices, self.rotations):
            for a, b in zip(rot, rot[1:] + rot[:1]):
                img[v.color][a] = b
        return Dessin(n, Permutation._from_zero_based(tuple(img[0])), Permutation._from_zero_based(tuple(img[1])))

    def to_json(self) -> dict:
        def cj(z: complex) -> list[str]:
            return [repr(z.real), repr(z.imag)]

        return {
            "vertices": [
                {"position": cj(v.position), "color": "black" if v.color == 0 else "white",
                 "multiplicity": v.multiplicity, "cluster_radius": repr(v.cluster_radius)}
                for v in self.vertices
            ],
            "edges": [{"black": e.black, "white": e.white, "path": [cj(z) for z in e.path]} for e in self.edges],
            "rotations": [[e + 1 for e in rot] for rot in self.rotations],
        }

    def to_svg(self, size: int = 480) -> str:
        pts = [v.position for v in self.vertices] + [z for e in self.edges for z in e.path]
        xs = [z.real for z in pts]
        ys = [z.imag for z in pts]
        lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
        span = max(hi_x - lo_x, hi_y - lo_y, 1e-9)
        pad = 0.08 * span

        def xy(z: complex) -> tuple[float, float]:
            return ((z.real - lo_x + pad) / (span + 2 * pad) * size, (hi_y - z.imag + pad) / (span + 2 * pad) * size)

        parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">']
        for e in self.edges:
            d = " ".join(f"{x:.2f},{y:.2f}" for x, y in map(xy, e.path))
            parts.append(f'<polyline points="{d}" fill="none" stroke="#444" stroke-width="1.5"/>')
        for v in self.vertices:
            x, y = xy(v.position)
            fill = "black" if v.color == 0 else "white"
            parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="4" fill="{fill}" stroke="black"/>')
        parts.append("</svg>")
        return "\n".join(parts)


def _trace_half(
    starts: np.ndarray,
    roots: np.ndarray,
    mults: np.ndarray,
    lead: complex,
    target: float,
    stop_radius: float,
    steps: int,
    eps: float,
    collision_tol: float,
) -> tuple[np.ndarray, list[list[complex]]]:
    """Follow F(z) = s for s from 1/2 to ``target`` on every start point at once.

    G = F - target = lead * prod (z - rho)^m, and s - target moves along a ray
    toward 0 geometrically, so the log-parameter is lam = log(s - target).
    """
    z = starts.astype(complex).copy()
    n = len(z)
    active = np.ones(n, dtype=bool)
    paths = [[complex(x)] for x in z]
    lam = cmath.log(0.5 - target)
    dlam = math.log(1e6) / steps
    log_lead = cmath.log(lead)
    max_steps = 20 * steps

    def h(zz):
        return (mults[None, :] / (zz[:, None] - roots[None, :])).sum(axis=1)

    def log_ratio(zz, lam_):
        w = log_lead + (mults[None, :] * np.log(zz[:, None] - roots[None, :])).sum(axis=1) - lam_
        # principal branch of log(G / s)
        return w.real + 1j * (np.angle(np.exp(1j * w.imag)))

    base = dlam
    for _ in range(max_steps):
        idx = np.nonzero(active)[0]
        if len(idx) == 0:
            break
        z0 = z[idx]
        # Euler predictor, dz/dlam = G/G'; then Newton on log(G/s).  A step is
        # rejected and halved when the corrector wanders far from the
        # predictor or fails to settle.
        while True:
            lam_new = lam - dlam
            pred = z0 - dlam / h(z0)
            zz = pred
            converged = False
            for it in range(12):
                step = log_ratio(zz, lam_new) / h(zz)
                zz = zz - step
                dist = np.abs(zz[:, None] - roots[None, :]).min(axis=1)
                if np.all(np.abs(step) <= eps * np.maximum(dist, 1e-300)):
                    converged = True
                    break
            moved = np.abs(pred - z0)
            ok = converged and np.all(np.isfinite(zz)) and np.all(np.abs(zz - pred) <= 0.1 * moved + 1e-14)
            if ok:
                break
            dlam /= 2
            if dlam < base / 1024:
                raise LiftError("Newton corrector did not converge")
        lam = lam_new
        if it <= 2:
            dlam = min(dlam * 1.5, 32 * base)
        z[idx] = zz
        for i, y in zip(idx, zz):
            paths[i].append(complex(y))
        # collision monitor on the moving arcs
        if len(idx) > 1:
            gaps = np.abs(zz[:, None] - zz[None, :])
            np.fill_diagonal(gaps, np.inf)
            if gaps.min() < collision_tol:
                raise LiftError(f"two arcs came within {gaps.min():.3g}")
        dist = np.abs(zz[:, None] - roots[None, :]).min(axis=1)
        active[idx[dist < stop_radius]] = False
    else:
        raise LiftError("arcs did not reach a vertex within the step budget")
    return z, paths


def trace_graph(F: ExactPolynomial, steps: int = 256, eps: float = 1e-10) -> TracedGraph:
    """Trace F^-1([0, 1]) and assemble the bicolored graph."""
    if F.degree < 1 or not is_shabat(F):
        raise ValueError("trace_graph needs a nonconstant Shabat polynomial")
    n = F.degree
    lead = complex(F.complex_coefficients()[-1])
    black = roots_with_multiplicity(F)
    white = roots_with_multiplicity(F - 1)
    verts = [TracedVertex(z, 0, m) for z, m in black] + [TracedVertex(z, 1, m) for z, m in white]
    pos = np.array([v.position for v in verts])
    gaps = np.abs(pos[:, None] - pos[None, :])
    np.fill_diagonal(gaps, np.inf)
    sep = float(gaps.min()) if len(verts) > 1 else 1.0
    scale = max(1.0, float(np.abs(pos).max()))

    mids = sorted(complex_roots(F - Fraction(1, 2)),
                  key=lambda z: (round(z.real, 9), round(z.imag, 9)))
    if len(mids) != n:
        raise LiftError(f"expected {n} simple preimages of 1/2, found {len(mids)}")
    starts = np.array(mids)

    ends = {}
    halves = {}
    for color, target in ((0, 0.0), (1, 1.0)):
        vs = [i for i, v in enumerate(verts) if v.color == color]
        roots = np.array([verts[i].position for i in vs])
        mults = np.array([verts[i].multiplicity for i in vs], dtype=float)
        z_end, paths = _trace_half(starts, roots, mults, lead, target, sep / 20, steps, eps, 1e-6 * scale)
        owner = [vs[int(np.argmin(np.abs(roots - z)))] for z in z_end]
        ends[color] = (z_end, owner)
        halves[color] = paths

    edges = []
    for e in range(n):
        edges.append(TracedEdge(ends[0][1][e], ends[1][1][e], halves[0][e][::-1] + halves[1][e][1:]))

    rotations = []
    for vi, v in enumerate(verts):
        z_end, owner = ends[v.color]
        arriving = [e for e in range(n) if owner[e] == vi]
        if len(arriving) != v.multiplicity:
            raise LiftError(f"vertex {vi} at {v.position:.6g} received {len(arriving)} arcs, expected {v.multiplicity}")
        v.cluster_radius = max(abs(z_end[e] - v.position) for e in arriving)

        def angle_key(e, v=v, color=v.color):
            path = halves[color][e]
            # angle of the last segment; earlier points break ties
            return tuple(round(cmath.phase(p - v.position) % (2 * math.pi), 9) for p in (path[-1], path[-2] if len(path) > 1 else path[-1]))

        rotations.append(sorted(arriving, key=angle_key))

    max_radius = max(v.cluster_radius for v in verts)
    if len(verts) > 1 and not sep > 10 * max_radius:
        raise LiftError(f"clusters not separated: separation {sep:.3g}, radius {max_radius:.3g}")
    return TracedGraph(verts, edges, rotations)


def trace_dessin(F: ExactPolynomial, steps: int = 256, eps: float = 1e-10) -> Dessin:
    return trace_graph(F, steps, eps).to_dessin()
