import itertools
import random
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dqm.algebra import (
    FiniteField,
    KElem,
    KMatrix,
    ThetaPoly,
    binom_char_p,
    bracket,
    carlitz_factorial,
    get_field,
    lprod,
    naive_row_space_basis,
    row_reduce_fraction_free,
)
from dqm.algebra.field import default_modulus


def P(F, text):
    return KElem.parse(F, text)


# ---------------------------------------------------------------- F_q


@pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2), (5, 1), (7, 1)])
def test_field_axioms_exhaustive(p, e):
    F = get_field(p, e)
    els = range(F.q)
    for a, b in itertools.product(els, els):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    for a, b, c in itertools.product(els, els, els):
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))


def test_field_axioms_sampled_large_field():
    F = get_field(2, 8)
    rng = random.Random(0)
    for _ in range(10_000):
        a, b, c = (rng.randrange(F.q) for _ in range(3))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        if a:
            assert F.mul(a, F.inv(a)) == 1


def test_default_modulus_and_frobenius():
    assert default_modulus(2, 2) == (1, 1, 1)
    assert default_modulus(3, 2) == (1, 0, 1)
    F = get_field(2, 2)
    w = F.gen()
    assert F.mul(w, w) == F.add(w, 1)
    assert all(F.frobenius(a, 2) == a for a in range(4))


@pytest.mark.parametrize("args", [(4, 1), (2, 0), (2, 9), (2, 2, (1, 0, 1))])
def test_invalid_fields_rejected(args):
    with pytest.raises(ValueError):
        FiniteField(*args)


# ---------------------------------------------------------------- F_q[T], F_q(T)


def test_bracket_lprod_factorial_examples():
    F3, F2 = get_field(3), get_field(2)
    T3 = ThetaPoly.T(F3)
    T2 = ThetaPoly.T(F2)
    assert bracket(F3, 0) == 1
    assert bracket(F3, 1) == T3 ** 3 - T3
    assert bracket(F2, 2) == T2 ** 4 + T2
    assert lprod(F3, 0) == 1 and lprod(F3, 1) == T3 ** 3 - T3
    assert lprod(F2, 2) == (T2 ** 2 + T2) * (T2 ** 4 + T2)
    assert carlitz_factorial(F3, 0) == 1 and carlitz_factorial(F3, 1) == T3 ** 3 - T3
    assert carlitz_factorial(F2, 2) == (T2 ** 4 + T2) * (T2 ** 2 + T2) ** 2


@pytest.mark.parametrize("q", [2, 3, 5])
def test_degrees_of_brackets_and_products(q):
    F = get_field(q)
    for k in range(1, 5):
        assert bracket(F, k).degree() == q ** k
        assert lprod(F, k).degree() == sum(q ** i for i in range(1, k + 1))
        assert carlitz_factorial(F, k).degree() == k * q ** k


@pytest.mark.parametrize("p", [2, 3, 5])
def test_binomials_mod_p_match_integers(p):
    for n in range(p ** 4):
        for i in range(0, min(n, 12) + 1):
            assert binom_char_p(n, i, p) == comb(n, i) % p


def test_binomial_examples_and_negative_upper_index():
    assert binom_char_p(3, 2, 3) == 0
    assert binom_char_p(7, 0, 3) == 1
    assert binom_char_p(5, 2, 3) == 1
    # (-2)(-3)/2 = 3
    assert binom_char_p(-2, 2, 5) == 3
    assert binom_char_p(-1, 4, 3) == 1


def test_kelem_text_and_canonical_form():
    F = get_field(3)
    a = P(F, "(T^3-T)/(T^2+1)")
    assert str(a) == "(T^3-T)/(T^2+1)"
    assert str(P(F, "(T^2-1)/(T+1)")) == "T-1"
    assert str(P(F, "2/(2*T)")) == "1/T"
    F4 = get_field(2, 2)
    assert str(P(F4, "w*T+1")) == "w*T+1"
    assert str(P(F4, "(w+1)*T")) == "(1+w)*T"


elems = st.tuples(
    st.lists(st.integers(0, 2), max_size=6),
    st.lists(st.integers(0, 2), min_size=1, max_size=5).filter(any),
)


def _k(F, pair):
    return KElem(F, bytes(pair[0]), bytes(pair[1]))


@given(elems, elems, elems)
def test_kelem_field_laws(x, y, z):
    F = get_field(3)
    a, b, c = _k(F, x), _k(F, y), _k(F, z)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    if b:
        assert (a / b) * b == a


@given(elems, st.lists(st.integers(0, 2), min_size=1, max_size=4).filter(any))
def test_kelem_canonical_from_unreduced_inputs(x, extra):
    F = get_field(3)
    a = _k(F, x)
    e = ThetaPoly(F, extra)
    b = KElem(F, a.numerator * e, a.denominator * e)
    assert (b.n, b.d) == (a.n, a.d)
    assert b.d[-1] == 1


@given(elems)
def test_frobenius_and_pth_root(x):
    F = get_field(3)
    a = _k(F, x)
    assert a.frobenius() == a ** 3
    assert a.power_p().root_p() == a


# ---------------------------------------------------------------- elimination


def test_row_reduction_examples():
    F = get_field(3)
    one, T = KElem.from_int(F, 1), KElem.theta(F)
    ident = KMatrix.identity(F, 2)
    ech, tr, piv = row_reduce_fraction_free(ident)
    assert ech == ident and piv == [0, 1]
    ech, tr, piv = row_reduce_fraction_free(KMatrix(F, [[T, one], [T, one]]))
    assert piv == [0]
    assert all(not ech[1, j] for j in range(2))
    assert (tr @ KMatrix(F, [[T, one], [T, one]])) == ech


def _random_matrix(F, rng, r, c, rank=None):
    def el():
        n = ThetaPoly(F, [rng.randrange(F.q) for _ in range(rng.randint(0, 3))])
        d = ThetaPoly(F, [rng.randrange(F.q) for _ in range(rng.randint(0, 2))] + [1])
        return KElem(F, n, d)

    rows = [[el() for _ in range(c)] for _ in range(r)]
    if rank is not None:
        for i in range(rank, r):
            a, b = el(), el()
            rows[i] = [a * x + b * y for x, y in zip(rows[0], rows[1])]
    return KMatrix(F, rows)


@pytest.mark.parametrize("seed", range(6))
def test_row_reduction_against_naive_oracle(seed):
    F = get_field(3)
    rng = random.Random(seed)
    m = _random_matrix(F, rng, 5, 8, rank=3 if seed % 2 else None)
    ech, tr, piv = row_reduce_fraction_free(m)
    assert tr @ m == ech
    assert pivots_are_staircase(ech, piv)
    naive = naive_row_space_basis(m)
    assert naive.nrows == len(piv) == m.rank()
    assert naive == naive_row_space_basis(KMatrix(F, [ech.rows[i] for i in range(len(piv))]))


def pivots_are_staircase(ech, piv):
    for r, c in enumerate(piv):
        if not ech[r, c] or any(ech[r, j] for j in range(c)):
            return False
    return all(c1 < c2 for c1, c2 in zip(piv, piv[1:]))


def test_rank_invariant_under_row_scaling():
    F = get_field(5)
    rng = random.Random(3)
    m = _random_matrix(F, rng, 4, 6, rank=2)
    scaled = KMatrix(F, [[x * KElem.parse(F, "T^2+1") for x in m.rows[0]]] + m.rows[1:])
    assert m.rank() == scaled.rank() == 2
