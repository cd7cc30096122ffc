import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperradius.algebra import (
    EPSILON_TRIPLES,
    UNIT_TABLE,
    Octonion,
    Quaternion,
    SignedUnit,
    as_element,
    build_unit_table,
    conj,
    euclid_norm,
    inverse,
    oct_mul,
    prime_norm_h,
    prime_norm_mt,
    prime_norm_o,
    quat_mul,
)

from oracles import oct_product, quat_product

reals = st.floats(min_value=-100, max_value=100, allow_nan=False, allow_infinity=False)
quats = st.tuples(*[reals] * 4).map(lambda c: Quaternion(*c))
octs = st.tuples(*[reals] * 8).map(lambda c: Octonion(*c))


def close(a, b, tol=1e-9):
    return np.allclose(np.array(a.c, dtype=float), np.array(b.c, dtype=float), rtol=tol, atol=tol)


# unit tables


def test_quaternion_units():
    i, j, k = (Quaternion.unit(n) for n in (1, 2, 3))
    one = Quaternion.one()
    assert i * i == j * j == k * k == -one
    assert i * j == k and j * k == i and k * i == j
    assert j * i == -k and i * j * k == -one


def test_unit_table_matches_triples():
    for a, b, c in EPSILON_TRIPLES:
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            assert UNIT_TABLE[x][y] == SignedUnit(1, z)
            assert UNIT_TABLE[y][x] == SignedUnit(-1, z)
    for n in range(1, 8):
        assert UNIT_TABLE[n][n] == SignedUnit(-1, 0)


def test_unit_table_quaternion_block_is_hamilton():
    for i in range(4):
        for j in range(4):
            u = UNIT_TABLE[i][j]
            assert Quaternion.unit(i) * Quaternion.unit(j) == Quaternion.unit(u.index, u.sign)


def test_signed_unit_products():
    e1, e2 = SignedUnit(1, 1), SignedUnit(1, 2)
    assert e1 * e2 == SignedUnit(1, 3)
    assert e2 * e1 == SignedUnit(-1, 3)
    assert (-e1) * e2 == SignedUnit(-1, 3)
    with pytest.raises(ValueError):
        SignedUnit(2, 1)
    with pytest.raises(ValueError):
        SignedUnit(1, 8)


def test_build_unit_table_rejects_bad_triples():
    with pytest.raises(ValueError, match="overlaps"):
        build_unit_table(list(EPSILON_TRIPLES) + [(1, 2, 3)])
    with pytest.raises(ValueError, match="undefined"):
        build_unit_table(EPSILON_TRIPLES[:-1])


def test_octonion_units_against_epsilon_oracle():
    for i in range(8):
        for j in range(8):
            got = Octonion.unit(i) * Octonion.unit(j)
            want = oct_product(np.eye(8)[i], np.eye(8)[j])
            assert np.array_equal(np.array(got.c, dtype=float), want)


# products


@given(quats, quats)
def test_quaternion_product_matches_matrix_oracle(a, b):
    assert np.allclose((a * b).c, quat_product(a.c, b.c), rtol=1e-12, atol=1e-9)
    assert quat_mul(a, b) == a * b


@given(octs, octs)
def test_octonion_product_matches_epsilon_oracle(a, b):
    assert np.allclose((a * b).c, oct_product(a.c, b.c), rtol=1e-12, atol=1e-8)
    assert oct_mul(a, b) == a * b


@given(quats, quats, quats)
def test_quaternions_associate(a, b, c):
    assert close((a * b) * c, a * (b * c), 1e-6)


def test_octonions_do_not_associate():
    e1, e2, e4 = Octonion.unit(1), Octonion.unit(2), Octonion.unit(4)
    assert (e1 * e2) * e4 == -(e1 * (e2 * e4))


@given(octs, octs)
def test_octonions_are_alternative(a, b):
    assert close((a * a) * b, a * (a * b), 1e-6)
    assert close((a * b) * b, a * (b * b), 1e-6)


@settings(max_examples=300)
@given(quats, quats)
def test_quaternion_norm_multiplicative(a, b):
    assert math.isclose((a * b).norm(), a.norm() * b.norm(), rel_tol=1e-12, abs_tol=1e-300)


@settings(max_examples=300)
@given(octs, octs)
def test_octonion_norm_multiplicative(a, b):
    assert math.isclose((a * b).norm(), a.norm() * b.norm(), rel_tol=1e-12, abs_tol=1e-300)


@given(octs)
def test_conjugate_and_inverse(a):
    assert conj(conj(a)) == a
    n2 = (a * conj(a)).c
    assert math.isclose(n2[0], a.norm2(), rel_tol=1e-12)
    assert all(abs(v) <= 1e-9 * max(1.0, a.norm2()) for v in n2[1:])
    if a.norm() > 1e-3:
        assert close(a * inverse(a), Octonion.one(), 1e-9)
        assert close(inverse(a) * a, Octonion.one(), 1e-9)


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        Quaternion().inverse()


def test_exact_fraction_arithmetic():
    a = Quaternion(Fraction(1, 3), Fraction(-1, 2), 0, 2)
    b = Quaternion(Fraction(2, 5), 1, Fraction(1, 7), 0)
    prod = a * b
    assert all(isinstance(c, (Fraction, int)) for c in prod.c)
    assert prod.norm2() == a.norm2() * b.norm2()
    assert a * a.inverse() == Quaternion.one()


def test_construction_validation():
    with pytest.raises(ValueError):
        Quaternion(float("nan"))
    with pytest.raises(ValueError):
        Quaternion([1, 2, 3, 4, 5])
    with pytest.raises(TypeError):
        Quaternion("1")
    with pytest.raises(AttributeError):
        Quaternion(1).c = (0, 0, 0, 0)
    assert Quaternion([1, 2]) == Quaternion(1, 2, 0, 0)
    assert as_element([0] * 8, 8) == Octonion()
    with pytest.raises(ValueError):
        as_element([0] * 5, 5)


# primed norms


def test_prime_norm_examples():
    assert prime_norm_h(Quaternion(0, 1, 0, 2)) == 2
    assert prime_norm_h(Quaternion(1, 0, 2, 0)) == math.sqrt(5)
    assert prime_norm_h(Quaternion(0, -3, 2, 1.5)) == 3
    assert prime_norm_h(Quaternion(0, 1 / 3, 1 / 3, 1 / 3)) == 1 / 3
    assert prime_norm_mt(Quaternion(0, 3, 4, 0)) == 5
    with pytest.raises(ValueError):
        prime_norm_mt(Quaternion(1, 0, 0, 0))


def test_ball_containment_example():
    x = Quaternion(0, 0.9, 0.9, 0)
    assert prime_norm_h(x) < 1 < euclid_norm(x)


@given(quats)
def test_prime_norm_bounded_by_euclid(q):
    p = prime_norm_h(q)
    assert p <= q.norm() * (1 + 1e-12)
    # |x|^2 <= 3 |x|'^2 since each x_s^2 + x0^2 <= |x|'^2
    assert q.norm() <= math.sqrt(3) * p * (1 + 1e-12) + 1e-300


@given(octs)
def test_octonion_prime_norm_bounds(o):
    p = prime_norm_o(o)
    assert p <= o.norm() * (1 + 1e-12)
    assert o.norm() <= math.sqrt(7) * p * (1 + 1e-12) + 1e-300


@given(quats, quats, reals)
def test_prime_norm_is_a_norm(a, b, t):
    assert prime_norm_h(a + b) <= (prime_norm_h(a) + prime_norm_h(b)) * (1 + 1e-12) + 1e-12
    assert math.isclose(prime_norm_h(a * t), abs(t) * prime_norm_h(a), rel_tol=1e-12, abs_tol=1e-300)


@given(st.tuples(reals, reals, reals))
def test_prime_norm_equals_euclid_on_two_planes(c):
    x0, xs, _ = c
    assert prime_norm_h(Quaternion(x0, xs)) == math.hypot(x0, xs)
    assert prime_norm_h(Quaternion(0, *c)) == max(abs(v) for v in c)


def test_non_submultiplicative_witnesses():
    i, one_2j, i_2k = Quaternion(0, 1), Quaternion(1, 0, 2), Quaternion(0, 1, 0, 2)
    assert prime_norm_h(i * one_2j) == 2 < math.sqrt(5) == prime_norm_h(i) * prime_norm_h(one_2j)
    assert prime_norm_h(i.inverse() * i_2k) == math.sqrt(5) > 2 == prime_norm_h(i.inverse()) * prime_norm_h(i_2k)
