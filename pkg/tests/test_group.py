import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from dessins import group as grp
from dessins.dessin import CleanedDoubleStar, DiamFour, ThreeStarComposite, canonical_family, monodromy
from dessins.group import (
    BlockSystem,
    OrderCapExceeded,
    SignSignature,
    all_block_systems,
    block_action_and_kernel,
    brute_force_order,
    canonical_label,
    explicit_group,
    find_shift,
    generate,
    labels_equivalent,
    minimal_block_system,
    predicted_order,
    recognize,
    sign_predicate,
    wreath_coordinates,
)
from dessins.perm import Permutation, from_cycles

FIG1 = [from_cycles([[1, 3, 2], [4, 7, 5]], 7), from_cycles([[3, 4], [5, 6]], 7)]


def test_figure_one_order():
    G = generate(FIG1, 7)
    assert G.order() == 168
    assert brute_force_order(FIG1, 7) == 168
    assert G.is_transitive()
    # GL_3(F_2) is primitive and not in the recognized list
    assert recognize(G) == grp.Unknown(168)


@pytest.mark.parametrize("n", range(2, 9))
def test_symmetric_generators(n):
    gens = [from_cycles([[1, 2]], n), from_cycles([list(range(1, n + 1))], n)]
    assert generate(gens, n).order() == math.factorial(n)
    assert brute_force_order(gens, n) == math.factorial(n)


def test_symmetric_large():
    n = 30
    gens = [from_cycles([[1, 2]], n), from_cycles([list(range(1, n + 1))], n)]
    assert generate(gens, n).order() == math.factorial(30)


def test_brute_force_cap():
    gens = [from_cycles([[1, 2]], 10), from_cycles([list(range(1, 11))], 10)]
    with pytest.raises(OrderCapExceeded):
        brute_force_order(gens, 10, cap=1000)


def test_membership():
    G = generate(FIG1, 7)
    assert G.contains(FIG1[0] * FIG1[1])
    assert not G.contains(from_cycles([[1, 2]], 7))


@st.composite
def random_gens(draw):
    n = draw(st.integers(2, 7))
    k = draw(st.integers(1, 3))
    gens = [Permutation(draw(st.permutations(list(range(1, n + 1))))) for _ in range(k)]
    return gens, n


@settings(max_examples=60, deadline=None)
@given(random_gens())
def test_schreier_sims_matches_bfs(data):
    gens, n = data
    G = generate(gens, n)
    assert G.order() == brute_force_order(gens, n)
    rng = random.Random(0)
    for _ in range(5):
        assert G.contains(G.random_element(rng))


def test_diam_four_residue_blocks():
    # DiamFour(r=3, s=2, t=4): d = gcd(2,4) = 2 blocks
    G = monodromy(canonical_family(DiamFour(3, 4, 2)))
    systems = [B for B in all_block_systems(G) if B.d == 2]
    assert systems
    assert all(B.is_invariant(G.generators) for B in systems)


def test_minimal_block_trivial_for_primitive():
    G = generate(FIG1, 7)
    assert minimal_block_system(G, (1, 2)) is None


def test_wreath_kernel_and_signature():
    G, B, shift = explicit_group(grp.SymWreath(4, 2))
    info = block_action_and_kernel(G, B)
    assert info.kernel_order == math.factorial(4) ** 2
    assert info.signature.is_full()


def test_sign_signature_predicates():
    diag = SignSignature.span(3, [0b111])
    assert diag.is_diagonal() and not diag.is_full() and not diag.is_trivial()
    even = SignSignature.span(3, [0b011, 0b110])
    assert even.is_even_weight()
    assert SignSignature.span(3, [0b011, 0b110]) == SignSignature.span(3, [0b101, 0b011])
    assert SignSignature.span(2, [0b01, 0b10]).is_full()


def test_predicted_orders():
    assert predicted_order(grp.AltWreath(7, 2)) == 12_700_800
    assert predicted_order(grp.R3(7)) == math.factorial(7) ** 3 * 3 // 2
    assert predicted_order(grp.Rtilde(5, 2)) == predicted_order(grp.R2(5)) == 14400
    assert predicted_order(grp.SymWreath(5, 2)) == 28800
    assert predicted_order(grp.AltCross2(5)) == 120


def test_label_equivalences():
    assert canonical_label(grp.Rtilde(6, 2)) == grp.R2(6)
    assert labels_equivalent(grp.SymWreath(7, 1), grp.Sym(7))
    assert labels_equivalent(grp.SymCross2(3), grp.Dihedral(12))
    assert not labels_equivalent(grp.R2(5), grp.SymWreath(5, 2))


@pytest.mark.parametrize("m", range(2, 7))
@pytest.mark.parametrize("d", [2, 3])
def test_explicit_wreaths_recognized(m, d):
    labels = [grp.WreathCyclic(m, d), grp.SymWreath(m, d), grp.Rtilde(m, d)]
    labels.append(grp.R2(m) if d == 2 else grp.R3(m))
    if m > 2:
        labels.append(grp.AltWreath(m, d))
    for label in labels:
        G, _, _ = explicit_group(label)
        assert G.order() == predicted_order(label)
        assert labels_equivalent(recognize(G), label), label


@pytest.mark.parametrize("m", range(3, 8))
def test_explicit_cross_products(m):
    for label in (grp.AltCross2(m), grp.SymCross2(m)):
        G, _, _ = explicit_group(label)
        assert labels_equivalent(recognize(G), label)


def test_twisted_subgroup_is_not_r2():
    # same order and kernel as R2(4), but the group contains odd permutations
    G = monodromy(canonical_family(DiamFour(3, 2, 4)))
    assert G.order() == 576
    assert recognize(G).kind == "Unknown"


@pytest.mark.parametrize(
    "p, label",
    [
        (CleanedDoubleStar(2, 4), grp.R2(5)),
        (CleanedDoubleStar(4, 6), grp.R2(9)),
        (ThreeStarComposite(2), grp.R3(3)),
        (DiamFour(5, 3, 6), grp.Rtilde(6, 3)),
    ],
)
def test_sign_predicate_on_samples(p, label):
    G = monodromy(canonical_family(p))
    assert labels_equivalent(recognize(G), label)
    B = next(B for B in all_block_systems(G) if B.d == (2 if label.kind == "R2" else 3) and B.m * B.d == G.n)
    rng = random.Random(5)
    shift = find_shift(G, B, rng)
    for _ in range(200):
        taus, _ = wreath_coordinates(G.random_element(rng), B, shift)
        assert sign_predicate(label, taus)


def test_equal_sign_and_even_product_agree_for_two_blocks():
    G, B, shift = explicit_group(grp.R2(5))
    rng = random.Random(2)
    for _ in range(200):
        taus, _ = wreath_coordinates(G.random_element(rng), B, shift)
        assert sign_predicate(grp.R2(5), taus) == sign_predicate(grp.R3(5), taus)


def test_block_system_validation():
    with pytest.raises(ValueError):
        BlockSystem.from_blocks([[1, 2], [3]])
