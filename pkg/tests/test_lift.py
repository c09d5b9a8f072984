import cmath

import numpy as np
import pytest

from dessins.catalog import grid
from dessins.dessin import (
    CleanedDoubleStar,
    OddPath,
    Star,
    ThreeStarComposite,
    are_isomorphic,
    beta_path,
    canonical_family,
    compose,
    vertices,
)
from dessins.lift import LiftError, complex_roots, roots_with_multiplicity, trace_dessin, trace_graph
from dessins.shabat import ExactPolynomial, Z, chebyshev_path, shabat_for, three_star_T


def test_cube_roots_of_unity():
    roots = complex_roots(Z**3 - 1)
    want = [cmath.exp(2j * cmath.pi * k / 3) for k in range(3)]
    for w in want:
        assert min(abs(r - w) for r in roots) < 1e-10


def test_quadratic_roots():
    roots = complex_roots(ExactPolynomial([9, 3, 2]))
    want = np.roots([2, 3, 9])
    for w in want:
        assert min(abs(r - w) for r in roots) < 1e-10


def test_multiplicities_are_exact():
    F = (Z - 1) ** 4 * (Z + 2) ** 2 * Z
    got = sorted((round(z.real, 6), m) for z, m in roots_with_multiplicity(F))
    assert got == [(-2.0, 2), (0.0, 1), (1.0, 4)]


@pytest.mark.parametrize("r", [1, 2, 5, 9])
def test_star(r):
    G = trace_graph(Z**r)
    assert len(G.edges) == r
    assert are_isomorphic(G.to_dessin(), canonical_family(Star(r))) is not None
    black = [v for v in G.vertices if v.color == 0]
    assert len(black) == 1 and abs(black[0].position) < 1e-12


def test_chebyshev_three_is_odd_path():
    D = trace_dessin(chebyshev_path(3))
    assert are_isomorphic(D, canonical_family(OddPath(1))) is not None


def test_cleaned_double_star_matches_composition():
    traced = trace_dessin(shabat_for(CleanedDoubleStar(5, 3)))
    assert are_isomorphic(traced, canonical_family(CleanedDoubleStar(5, 3))) is not None


def test_three_star_T_geometry():
    """The 3-star of T has its centre at the critical point and leaves at 0 and 1."""
    G = trace_graph(three_star_T())
    white = [v for v in G.vertices if v.color == 1]
    assert len(white) == 1 and white[0].multiplicity == 3
    leaves = sorted((v.position for v in G.vertices if v.color == 0), key=lambda z: (z.real, z.imag))
    assert min(abs(z) for z in leaves) < 1e-10
    assert min(abs(z - 1) for z in leaves) < 1e-10


def test_three_star_composite_traces_to_family():
    D = trace_dessin(shabat_for(ThreeStarComposite(2)))
    assert are_isomorphic(D, canonical_family(ThreeStarComposite(2))) is not None


@pytest.mark.parametrize("p", [q for q in grid(12, 4)], ids=str)
def test_small_grid_lifts(p):
    F = shabat_for(p)
    D = trace_dessin(F)
    assert are_isomorphic(D, canonical_family(p)) is not None
    assert are_isomorphic(trace_dessin(F, steps=128), D) is not None


def test_rejects_non_shabat():
    with pytest.raises(ValueError):
        trace_graph(Z**3 - Z)


def test_rotation_is_counterclockwise():
    G = trace_graph(Z**4)
    (centre,) = [i for i, v in enumerate(G.vertices) if v.color == 0]
    angles = [cmath.phase(G.edges[e].path[1]) % (2 * cmath.pi) for e in G.rotations[centre]]
    assert angles == sorted(angles)


def test_json_and_svg():
    G = trace_graph(chebyshev_path(4))
    data = G.to_json()
    assert len(data["edges"]) == 4 and data["rotations"]
    assert G.to_svg().startswith("<svg")
    assert isinstance(LiftError("x"), RuntimeError)
