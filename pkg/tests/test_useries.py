import pytest
from hypothesis import given
from hypothesis import strategies as st

from dqm.algebra import KElem, ThetaPoly, bracket, get_field
from dqm.useries import (
    USeries,
    base_expansions,
    carlitz_action,
    cross_checks,
    derive_series,
    eisenstein_gk,
    goss_polynomials,
    monic_polys,
    u_of_az,
)


def K(F, text):
    return KElem.parse(F, text)


def series(F, coeffs, prec):
    return USeries(F, {e: K(F, c) if isinstance(c, str) else c for e, c in coeffs.items()}, prec)


# ---------------------------------------------------------------- series arithmetic


def test_geometric_inverse():
    F = get_field(3)
    for prec in (1, 5, 40):
        one_minus_u = series(F, {0: "1", 1: "-1"}, prec)
        geo = series(F, {n: "1" for n in range(prec)}, prec)
        assert one_minus_u * geo == USeries.one(F, prec)
        assert one_minus_u.inverse() == geo


def test_root_of_one_unit_round_trip():
    for q in (3, 5):
        F = get_field(q)
        s = series(F, {0: "1", 1: "1"}, 50)
        assert (s ** (q - 1)).root_1unit(q - 1) == s


def test_valuation_of_delta_power():
    F = get_field(3)
    h = base_expansions(F, 20).h
    assert (h ** 2).valuation() == 2


coeff = st.lists(st.integers(0, 2), max_size=3)
sparse = st.dictionaries(st.integers(0, 12), coeff, max_size=6)


def _from(F, d, prec):
    return USeries(F, {e: KElem(F, bytes(c)) for e, c in d.items() if any(c)}, prec)


@given(sparse, sparse, sparse)
def test_series_ring_laws(a, b, c):
    F = get_field(3)
    x, y, z = (_from(F, d, 16) for d in (a, b, c))
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x - x).is_zero()


@given(sparse, st.integers(0, 9))
def test_power_matches_repeated_product(a, n):
    F = get_field(3)
    x = _from(F, a, 14)
    prod = USeries.one(F, 14)
    for _ in range(n):
        prod = prod * x
    assert x ** n == prod


@given(sparse)
def test_frobenius_is_qth_power(a):
    F = get_field(3)
    x = _from(F, a, 20)
    assert x.frobenius() == x ** 3


def test_product_precision_rule():
    F = get_field(3)
    a = series(F, {2: "1"}, 10)
    b = series(F, {3: "T"}, 7)
    assert (a * b).prec == min(10 + 3, 7 + 2)


def test_json_round_trip():
    F = get_field(3)
    s = base_expansions(F, 20).E
    assert USeries.from_json(F, s.to_json()).identical(s)


# ---------------------------------------------------------------- Carlitz and Goss


def test_carlitz_action_examples():
    F = get_field(3)
    T = ThetaPoly.T(F)
    one = K(F, "1")
    assert carlitz_action(ThetaPoly(F, [1])).coeffs == [one]
    assert carlitz_action(T).coeffs == [K(F, "T"), one]
    assert carlitz_action(T * T).coeffs == [K(F, "T^2"), K(F, "T^3+T"), one]


def test_carlitz_action_is_a_ring_map():
    F = get_field(2)
    a, b = ThetaPoly(F, [1, 1, 1]), ThetaPoly(F, [0, 1, 0, 1])
    assert carlitz_action(a * b) == carlitz_action(a).compose(carlitz_action(b))
    assert carlitz_action(a + b) == carlitz_action(a) + carlitz_action(b)


def test_u_of_az_examples():
    F = get_field(3)
    assert u_of_az(ThetaPoly(F, [1]), 10) == series(F, {1: "1"}, 10)
    want = series(F, {3 + 2 * n: KElem.theta(F) ** n * (-1) ** n for n in range(5)}, 13)
    assert u_of_az(ThetaPoly.T(F), 13) == want


@pytest.mark.parametrize("q", [2, 3])
def test_u_of_az_valuations(q):
    F = get_field(q)
    for d in range(4):
        for a in monic_polys(F, d):
            assert u_of_az(a, q ** d + 2).valuation() == q ** d


def test_goss_polynomials():
    F = get_field(2)
    G = goss_polynomials(F, 6)
    assert G.poly(1) == {1: K(F, "1")}
    assert G.poly(2) == {2: K(F, "1")}
    assert G.poly(3) == {2: K(F, "1/(T^2+T)"), 3: K(F, "1")}
    F5 = get_field(5)
    for n in range(1, 6):
        assert goss_polynomials(F5, 5).poly(n) == {n: K(F5, "1")}


# ---------------------------------------------------------------- Eisenstein series and generators


@pytest.mark.parametrize("q", [2, 3, 5])
def test_generator_leading_terms(q):
    F = get_field(q)
    b = base_expansions(F, q ** 3)
    assert b.g.coeff(0) == 1 and b.g.coeff(q - 1) == -K(F, str(bracket(F, 1)))
    second = 1 + (q - 1) ** 2
    assert b.E.coeff(1) == 1 and min(e for e in b.E.c if e > 1) == second and b.E.coeff(second) == 1
    assert b.h.coeff(1) == -1 and min(e for e in b.h.c if e > 1) == second and b.h.coeff(second) == -1
    x1 = -(b.E * b.g) - b.h
    assert x1.valuation() == q and x1.coeff(q) == K(F, str(bracket(F, 1)))


@pytest.mark.parametrize("q", [2, 3, 5])
def test_cross_checks_pass(q):
    F = get_field(q)
    assert all(cross_checks(F, base_expansions(F, q * q + q + 2)).values())


def test_frozen_expansions_q3():
    F = get_field(3)
    b = base_expansions(F, 21)
    assert b.E.to_text() == (
        "(1)*u^1 + (1)*u^5 + (1)*u^9 + (-T^3+T)*u^11 + (1)*u^13 + (T^3-T)*u^15"
        " + (T^6+T^4+T^2+1)*u^17 + O(u^21)"
    )
    assert b.g.coeff(14) == K(F, "-T^3+T") and b.g.coeff(20) == K(F, "-T^6-T^4-T^2")
    assert b.h.coeff(7) == K(F, "T^3-T") and b.h.coeff(13) == K(F, "-T^6-T^4-T^2-1")
    assert b.Delta.coeff(8) == K(F, "-T^3+T") and b.Delta.coeff(20) == K(F, "T^9+T^3+T")


@pytest.mark.parametrize("q", [2, 3])
def test_g2_integral_and_quadratic_relation(q):
    F = get_field(q)
    P = q ** 3
    b = base_expansions(F, P)
    g2 = eisenstein_gk(F, 2, P)
    assert all(d == b"\x01" for _, d in g2.c.values())
    assert g2 == (b.h ** (q - 1)).scale(K(F, str(bracket(F, 1)))) + b.g ** (q + 1)


def test_precision_soundness():
    F = get_field(3)
    small, big = base_expansions(F, 27), base_expansions(F, 60)
    for name in ("E", "g", "h", "Delta"):
        assert getattr(big, name).truncate(27).identical(getattr(small, name))


# ---------------------------------------------------------------- the u-level derivation


def test_derivation_on_u_and_h():
    F = get_field(3)
    u = series(F, {1: "1"}, 20)
    assert derive_series(u, 1) == series(F, {2: "1"}, 20)
    b = base_expansions(F, 40)
    assert derive_series(b.h, 1) == b.E * b.h


@pytest.mark.parametrize("q", [2, 3])
def test_derivation_iterativity(q):
    F = get_field(q)
    s = base_expansions(F, 30).E
    from math import comb

    for a in range(1, q + 1):
        for c in range(1, q + 1):
            lhs = derive_series(derive_series(s, c), a)
            rhs = derive_series(s, a + c).scale(KElem.from_int(F, comb(a + c, a)))
            assert lhs == rhs
