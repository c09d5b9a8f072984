import itertools

import pytest
from hypothesis import given, settings, strategies as st

from dessins import group as grp
from dessins.catalog import grid
from dessins.dessin import (
    CleanedDoubleStar,
    Dessin,
    DiamFour,
    EvenPath,
    OddPath,
    Passport,
    Sporadic337,
    Star,
    ThreeStarComposite,
    Vertex,
    are_isomorphic,
    beta_path,
    canonical_family,
    canonical_form,
    clean,
    compose,
    count_trees_with_passport,
    family_from_name,
    family_passport,
    monodromy,
    perms_of_cycle_type,
    vertices,
)
from dessins.perm import Permutation, from_cycles


def test_passport_parse_and_print():
    p = Passport.parse("[3^3,1^5;2^7]")
    assert p.black == (3, 3, 3, 1, 1, 1, 1, 1)
    assert p.white == (2,) * 7
    assert str(p) == "[3^3,1^5;2^7]"
    assert Passport.parse(" [ 2 , 1 ; 2,1 ] ") == Passport((2, 1), (2, 1))
    with pytest.raises(ValueError):
        Passport.parse("[3;1^2]")
    with pytest.raises(ValueError):
        Passport.parse("[3,x;1^3]")


def test_disconnected_rejected():
    with pytest.raises(ValueError):
        Dessin.from_cycles(4, [[1, 2]], [[3, 4]])


def test_star_is_tree():
    D = canonical_family(Star(5))
    assert D.is_tree() and D.genus() == 0
    assert str(D.passport()) == "[5;1^5]"


def test_genus_one_example():
    # two parallel edges: chi = 1 + 1 + 2 - 2 = 2, planar but not a tree
    D = Dessin.from_cycles(2, [[1, 2]], [[1, 2]])
    assert D.genus() == 0 and not D.is_tree()
    T = Dessin.from_cycles(3, [[1, 2, 3]], [[1, 2, 3]])
    assert T.genus() == 1


def test_sigma_infinity_relation():
    D = canonical_family(Sporadic337())
    assert (D.sigma0 * D.sigma1 * D.sigma_infinity()).is_identity()


def test_json_roundtrip():
    D = canonical_family(ThreeStarComposite(3))
    assert Dessin.from_json(D.to_json()) == D


@pytest.mark.parametrize("p", grid(30, 6))
def test_canonical_family_passports(p):
    D = canonical_family(p)
    assert D.is_tree()
    assert D.passport() == family_passport(p)


def test_family_validation():
    for bad in (EvenPath(1), DiamFour(1, 2, 2), CleanedDoubleStar(1, 3), ThreeStarComposite(1), Star(0)):
        with pytest.raises(ValueError):
            bad.validate()
    with pytest.raises(ValueError):
        family_from_name("diam-four", r=3, s=2)
    assert family_from_name("sporadic-337") == Sporadic337()


def test_small_paths_are_dihedral():
    assert grp.labels_equivalent(grp.recognize(monodromy(canonical_family(OddPath(1)))), grp.Dihedral(6))
    assert grp.labels_equivalent(grp.recognize(monodromy(canonical_family(EvenPath(2)))), grp.Dihedral(8))


def test_sporadic_labeling_is_the_cleaned_diam_four():
    C = clean(canonical_family(DiamFour(3, 3, 1)))
    assert are_isomorphic(C, canonical_family(Sporadic337())) is not None
    assert monodromy(C).order() == 12_700_800


def test_compose_with_beta_matches_cleaned_double_star():
    for r in range(2, 6):
        for t in range(2, 6):
            Q = canonical_family(DiamFour(r, 1, t))
            F = compose(beta_path(), Vertex(0, (1,)), Vertex(0, (2,)), Q)
            assert str(F.passport()) == str(Passport((r, t) + (1,) * (r + t - 2), (2,) * (r + t - 1)))
            assert are_isomorphic(F, canonical_family(CleanedDoubleStar(r, t))) is not None


def test_compose_three_star_matches_three_star_family():
    T = Dessin.from_cycles(3, [], [[1, 2, 3]])
    for r in range(2, 5):
        Q = canonical_family(DiamFour(r, 1, r))
        target = canonical_family(ThreeStarComposite(r))
        results = [
            are_isomorphic(compose(T, Vertex(0, (a,)), Vertex(0, (b,)), Q), target) is not None
            for a, b in itertools.permutations((1, 2, 3), 2)
        ]
        # one orientation of the marked leaves is the right one
        assert any(results)


def test_compose_requires_distinct_vertices():
    with pytest.raises(ValueError):
        compose(beta_path(), 1, 1, canonical_family(Star(3)))


def test_vertices_ids():
    vs = vertices(canonical_family(DiamFour(3, 2, 2)))
    assert [v.color for v in vs].count(0) == 3
    assert sum(v.degree for v in vs) == 12


def test_isomorphism_witness():
    D = canonical_family(CleanedDoubleStar(3, 4))
    pi = Permutation([(i % D.n) + 1 for i in range(1, D.n + 1)])
    E = D.relabel(pi)
    w = are_isomorphic(D, E)
    assert w is not None
    assert D.sigma0.conjugate(w) == E.sigma0 and D.sigma1.conjugate(w) == E.sigma1
    assert are_isomorphic(D, canonical_family(CleanedDoubleStar(2, 5))) is None


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_canonical_form_invariant_under_relabeling(seed):
    import random

    p = grid(12, 4)[seed % len(grid(12, 4))]
    D = canonical_family(p)
    rng = random.Random(seed)
    img = list(range(1, D.n + 1))
    rng.shuffle(img)
    assert canonical_form(D.relabel(Permutation(img))) == canonical_form(D)


def test_conjugacy_class_sizes():
    assert len(list(perms_of_cycle_type((2, 2, 1), 5))) == 15
    assert len(list(perms_of_cycle_type((3, 1, 1), 5))) == 20
    assert len(set(perms_of_cycle_type((2, 2, 2), 6))) == 15


def _brute_force_tree_count(p: Passport) -> int:
    """All pairs from both conjugacy classes in S_n, classes by canonical form."""
    n = p.n
    forms = set()
    for s0 in perms_of_cycle_type(p.black, n):
        for s1 in perms_of_cycle_type(p.white, n):
            a = Permutation._from_zero_based(s0)
            b = Permutation._from_zero_based(s1)
            try:
                D = Dessin(n, a, b)
            except ValueError:
                continue
            if D.is_tree():
                forms.add(canonical_form(D))
    return len(forms)


@pytest.mark.parametrize(
    "text",
    ["[3;1^3]", "[2,1;2,1]", "[3,1^3;2^3]", "[2^2,1^2;3,1^3]", "[2^3;2^2,1^2]", "[3,2,1;2^2,1^2]", "[2^2,1;3,1^2]", "[4,1^2;2^2,1^2]"],
)
def test_enumeration_matches_brute_force(text):
    p = Passport.parse(text)
    assert count_trees_with_passport(p).count == _brute_force_tree_count(p)


def test_enumeration_examples():
    assert count_trees_with_passport(Passport.parse("[3;1^3]")).count == 1
    assert count_trees_with_passport(Passport.parse("[2,1;2,1]")).count == 1
    res = count_trees_with_passport(Passport.parse("[3,1^3;2^3]"))
    assert res.count == _brute_force_tree_count(res.passport)
    assert res.all_genus_count is not None
    with pytest.raises(ValueError):
        count_trees_with_passport(Passport.parse("[11;1^11]"))
