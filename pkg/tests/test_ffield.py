import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gba.errors import (CapExceededError, FieldDivisionByZero, NonPrimeError, SpecMismatchError,
                        WrongCharacteristicError)
from gba.ffield import (FieldElem, embedding, field_of_order, frobenius_q, make_field,
                        power_residues, prime_power, residue_count, solve_quadratic,
                        subfield_codes, suzuki_theta)

FIELDS = [(2, 1), (2, 3), (2, 4), (3, 2), (5, 1), (7, 2), (13, 1), (2, 6)]


@st.composite
def field_and_elems(draw, k=3):
    p, a = draw(st.sampled_from(FIELDS))
    F = make_field(p, a)
    return F, [draw(st.integers(0, F.q - 1)) for _ in range(k)]


@settings(max_examples=200, deadline=None)
@given(field_and_elems())
def test_field_axioms(data):
    F, (x, y, z) = data
    assert F.add(x, y) == F.add(y, x)
    assert F.mul(x, y) == F.mul(y, x)
    assert F.add(F.add(x, y), z) == F.add(x, F.add(y, z))
    assert F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z))
    assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
    assert F.add(x, F.neg(x)) == 0
    if x:
        assert F.mul(x, F.inv(x)) == 1


@settings(max_examples=100, deadline=None)
@given(field_and_elems(k=1), st.integers(0, 50))
def test_pow_matches_repeated_product(data, k):
    F, (x,) = data
    acc = 1
    for _ in range(k):
        acc = int(F.mul(acc, x))
    assert int(F.pow(x, k)) == acc


@settings(max_examples=100, deadline=None)
@given(field_and_elems(k=2))
def test_frobenius_is_additive(data):
    F, (x, y) = data
    assert F.pow(F.add(x, y), F.p) == F.add(F.pow(x, F.p), F.pow(y, F.p))


def test_multiplicative_group_is_cyclic():
    for p, a in FIELDS:
        F = make_field(p, a)
        xs = np.arange(1, F.q)
        acc, order = xs.copy(), np.zeros(F.q - 1, dtype=int)
        for k in range(1, F.q):
            order[(acc == 1) & (order == 0)] = k
            acc = F.mul(acc, xs)
        assert order.max() == F.q - 1
        assert np.all((F.q - 1) % order == 0)


def test_elem_wrappers():
    F = make_field(2, 3)
    x = F.X
    assert x**7 == F.one
    assert (x * x.inverse()) == F.one
    assert x - x == F.zero
    assert F.elem((1, 1, 0)) == x + 1
    with pytest.raises(FieldDivisionByZero):
        F.zero.inverse()
    G = make_field(3, 2)
    with pytest.raises(SpecMismatchError):
        _ = x + G.X


def test_construction_errors():
    with pytest.raises(NonPrimeError):
        make_field(4, 1)
    with pytest.raises(NonPrimeError):
        field_of_order(12)
    with pytest.raises(CapExceededError):
        make_field(2, 20)
    assert prime_power(1024) == (2, 10)
    assert prime_power(12) is None


def test_subfields_and_embedding():
    F = make_field(2, 6)
    assert len(subfield_codes(F, 8)) == 8
    assert len(subfield_codes(F, 4)) == 4
    small = make_field(2, 3)
    emb = embedding(small, F)
    assert sorted(emb) == sorted(subfield_codes(F, 8))
    for u in range(8):
        for v in range(8):
            assert emb[int(small.mul(u, v))] == int(F.mul(emb[u], emb[v]))
            assert emb[int(small.add(u, v))] == int(F.add(emb[u], emb[v]))
    with pytest.raises(SpecMismatchError):
        embedding(make_field(2, 4), F)


def test_frobenius_q_is_an_involution():
    F = make_field(2, 4)
    for v in range(F.q):
        x = F.from_code(v)
        assert frobenius_q(frobenius_q(x, 4), 4) == x
    with pytest.raises(SpecMismatchError):
        frobenius_q(F.X, 2)


def test_suzuki_theta_squares_to_frobenius():
    for a in (1, 2):
        F = make_field(2, 2 * a + 1)
        for v in range(F.q):
            x = F.from_code(v)
            assert suzuki_theta(suzuki_theta(x, a), a) == x * x
    with pytest.raises(WrongCharacteristicError):
        suzuki_theta(make_field(3, 3).X, 1)


@pytest.mark.parametrize("q", [5, 7, 9, 13, 16, 25, 27, 64])
@pytest.mark.parametrize("n", [2, 3])
def test_power_residue_count(q, n):
    F = field_of_order(q)
    assert len(power_residues(F, n)) == residue_count(F, n)


@settings(max_examples=150, deadline=None)
@given(field_and_elems(k=2))
def test_solve_quadratic_against_scan(data):
    F, (b, c) = data
    bb, cc = F.from_code(b), F.from_code(c)
    roots = {r.value for r in solve_quadratic(F, bb, cc)}
    ys = np.arange(F.q)
    scan = set(np.flatnonzero(F.add(F.add(F.mul(ys, ys), F.mul(b, ys)), c) == 0).tolist())
    assert roots == scan


def test_is_square_odd_and_even():
    F = field_of_order(13)
    sq = {int(F.mul(x, x)) for x in range(1, 13)}
    assert set(np.flatnonzero(F.is_square(np.arange(13))).tolist()) == sq
    E = field_of_order(8)
    assert F.is_square(0) == False  # noqa: E712
    assert E.is_square(np.arange(8)).sum() == 7


def test_field_elem_equality_and_hash():
    F = field_of_order(9)
    assert len({F.from_code(v) for v in range(9)} | {F.from_code(3)}) == 9
    assert isinstance(F.one, FieldElem)
