import pytest
from hypothesis import given, strategies as st

from dessins.perm import (
    Permutation,
    conjugate,
    cycle_type,
    element_order,
    format_cycles,
    from_cycles,
    identity,
    multiply,
    parse_cycles,
    parse_permutation,
    sign,
)


def perms(max_n=9):
    return st.integers(1, max_n).flatmap(
        lambda n: st.permutations(list(range(1, n + 1))).map(Permutation)
    )


def pairs(max_n=9):
    return st.integers(1, max_n).flatmap(
        lambda n: st.tuples(
            st.permutations(list(range(1, n + 1))).map(Permutation),
            st.permutations(list(range(1, n + 1))).map(Permutation),
        )
    )


def test_from_cycles_images():
    assert from_cycles([[1, 3, 2], [4, 7, 5]], 7).images == (3, 1, 2, 7, 4, 6, 5)


def test_product_is_left_to_right():
    p = from_cycles([[1, 2]], 3)
    q = from_cycles([[2, 3]], 3)
    # apply p first: 1 -> 2 -> 3
    assert multiply(p, q)(1) == 3
    assert (p * q).cycles() == [[1, 3, 2]]


def test_cycle_type_and_sign():
    p = from_cycles([[1, 3, 2], [4, 7, 5]], 7)
    assert cycle_type(p) == (3, 3, 1)
    assert sign(p) == 1
    assert sign(from_cycles([[1, 2]], 4)) == -1
    assert element_order(from_cycles([[1, 2], [3, 4, 5]], 5)) == 6


def test_fixed_points_are_kept():
    p = from_cycles([[1, 2]], 5)
    assert p.n == 5
    assert p.cycles(include_fixed=True) == [[1, 2], [3], [4], [5]]


@pytest.mark.parametrize("cycles", [[[1, 2], [2, 3]], [[0, 1]], [[1, 9]]])
def test_bad_cycles(cycles):
    with pytest.raises(ValueError):
        from_cycles(cycles, 4)


def test_degree_mismatch():
    with pytest.raises(ValueError):
        identity(3) * identity(4)


def test_conjugate_relabels():
    p = from_cycles([[1, 2, 3]], 4)
    by = from_cycles([[3, 4]], 4)
    assert conjugate(p, by).cycles() == [[1, 2, 4]]


def test_parse_and_format_roundtrip():
    assert parse_cycles("(1,3,2)(4,7,5)") == [[1, 3, 2], [4, 7, 5]]
    assert parse_cycles("()") == []
    assert format_cycles(parse_permutation("(3,4)(5,6)", 6)) == "(3,4)(5,6)"
    assert format_cycles(identity(3)) == "()"
    with pytest.raises(ValueError):
        parse_cycles("(1,2")
    with pytest.raises(ValueError):
        parse_cycles("1,2")


@given(pairs())
def test_inverse_of_product(pq):
    p, q = pq
    assert (p * q).inverse() == q.inverse() * p.inverse()


@given(perms())
def test_order_annihilates(p):
    assert (p ** p.order()).is_identity()
    assert p * p.inverse() == identity(p.n)


@given(pairs())
def test_conjugation_preserves_cycle_type(pq):
    p, q = pq
    assert conjugate(p, q).cycle_type() == p.cycle_type()
    assert sign(p * q) == sign(p) * sign(q)


@given(perms())
def test_format_parse_roundtrip(p):
    assert parse_permutation(format_cycles(p), p.n) == p
