import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dqm.algebra import KElem, bracket, get_field, lprod
from dqm.checks import random_form
from dqm.forms import (
    Grading,
    QMForm,
    divides,
    evaluate,
    grading_of,
    nu_infty,
    resultant_in_E,
    sequence,
)
from dqm.hyperderive import dn
from dqm.parser import parse_form


def gens(F):
    return tuple(QMForm.gen(F, c) for c in "Egh")


def br(F, k):
    return KElem(F, bracket(F, k))


def test_grading_examples():
    F = get_field(3)
    E, g, h = gens(F)
    assert grading_of(E) == Grading(2, 1, 1, 1)
    assert grading_of(sequence(F, "xi", 0)) == Grading(8, 0, 4, 4)
    assert grading_of(E + g) == "inhomogeneous"
    with pytest.raises(ValueError):
        grading_of(QMForm.zero(F))


@pytest.mark.parametrize("q", [2, 3, 5])
def test_named_family_formulas(q):
    F = get_field(q)
    E, g, h = gens(F)
    x2 = -(E * (g ** (q + 1) + (h ** (q - 1)).scale(br(F, 1)))) - g ** q * h
    assert sequence(F, "x", 2) == x2
    xi0 = -(E ** (q + 1)).scale(br(F, 1)) + g * h * E + h * h
    assert sequence(F, "xi", 0) == xi0
    assert sequence(F, "Delta", 0) == -(h ** (q - 1))


@pytest.mark.parametrize("q", [2, 3])
def test_recursion_identities(q):
    F = get_field(q)
    E, g, h = gens(F)
    D = sequence(F, "Delta", 0)
    for k in range(6):
        assert sequence(F, "x", k) == -(E * sequence(F, "g", k)) - sequence(F, "h", k)
    for k in range(1, 4):
        xk, yk = sequence(F, "x", k), sequence(F, "y", k)
        assert sequence(F, "x", k + 1) == g.frobenius(k) * xk - yk.scale(br(F, k))
        assert sequence(F, "y", k + 1) == D.frobenius(k) * xk
    for k in range(3):
        x = [sequence(F, "x", k + i) for i in range(3)]
        assert -(D.frobenius(k) * sequence(F, "xi", k)) == x[1] ** (q + 1) - x[0].frobenius(1) * x[2]


@pytest.mark.parametrize("q", [2, 3, 5])
def test_family_gradings(q):
    F = get_field(q)
    m1 = 1 % (q - 1) if q > 2 else 0
    for k in range(1, 4):
        gg = grading_of(sequence(F, "g", k))
        assert (gg.w, gg.m, gg.l) == (q ** k - 1, 0, 0)
        gh = grading_of(sequence(F, "h", k))
        assert (gh.w, gh.m, gh.l) == (q ** k + 1, m1, 0)
        gx = grading_of(sequence(F, "x", k))
        assert (gx.w, gx.m, gx.l) == (q ** k + 1, m1, 1)
        gxi = grading_of(sequence(F, "xi", k))
        assert (gxi.w, gxi.l) == ((q ** k + 1) * (q + 1), q + 1)
    for k in range(1, 3):
        assert nu_infty(sequence(F, "h", k)).nu == 1


@pytest.mark.parametrize("q", [2, 3])
def test_resultants(q):
    F = get_field(q)
    E, g, h = gens(F)
    assert resultant_in_E(QMForm.one(F) * E + 0, E * g + h) in (h, -h)
    for k in range(4):
        gk, hk, gk1, hk1 = (sequence(F, n, k + i) for i in (0, 1) for n in ("g", "h"))
        rho = gk * hk1 - hk * gk1
        assert rho == (h ** (q ** k)).scale(KElem(F, lprod(F, k)) * (-1) ** k)
        res = resultant_in_E(sequence(F, "x", k), sequence(F, "x", k + 1))
        assert res in (rho, -rho)
        assert grading_of(res).w == (q ** k + 1) + (q ** (k + 1) + 1) - 2


def test_divides_examples():
    F = get_field(3)
    E, g, h = gens(F)
    D = sequence(F, "Delta", 0)
    assert divides(h, D) == -h
    assert divides(sequence(F, "x", 1), dn(sequence(F, "x", 1), 1)) == QMForm.zero(F)
    assert divides(-E, dn(E, 1)) == -E
    assert divides(E, g) is None
    assert divides(E + h, (E + h) * (g * g - h * E)) == g * g - h * E


@given(st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_evaluate_is_a_ring_homomorphism(s1, s2):
    F = get_field(3)
    f = random_form(F, random.Random(s1), 8, 3)
    g = random_form(F, random.Random(s2), 8, 3)
    P = 30
    ef, eg = evaluate(f, P), evaluate(g, P)
    assert evaluate(f * g, P) == ef * eg
    assert evaluate(f + g, P) == ef + eg


@pytest.mark.parametrize("q", [2, 3])
def test_leading_terms_of_x_and_xi_identity(q):
    F = get_field(q)
    assert evaluate(sequence(F, "Delta", 0), 10).valuation() == q - 1
    for k in range(4):
        r = nu_infty(sequence(F, "x", k))
        assert (r.nu, r.leading) == (q ** k, KElem(F, lprod(F, k)) * (-1) ** (k + 1))
    for k in range(2):
        x = [sequence(F, "x", k + i) for i in range(3)]
        r = nu_infty(x[1] ** (q + 1) - x[0].frobenius(1) * x[2])
        lead = -(br(F, k + 1) * br(F, 1) * KElem(F, lprod(F, k)) ** (q + 1))
        assert (r.nu, r.leading) == (q ** (k + 1) + q ** (k + 2), lead)


@pytest.mark.parametrize("q,kmax", [(2, 2), (3, 2), (5, 1)])
def test_vanishing_orders_of_xi_and_eta(q, kmax):
    F = get_field(q)
    for k in range(kmax + 1):
        assert nu_infty(sequence(F, "xi", k)).nu == q ** (k + 2) + q ** k
        assert nu_infty(sequence(F, "eta", k)).nu == q ** (k + 1) + q - 1


def test_nu_unresolved_below_cap():
    F = get_field(3)
    r = nu_infty(sequence(F, "x", 3), cap=16)
    assert str(r) == "unresolved at precision cap 16"


@pytest.mark.parametrize("q", [2, 3, 4])
def test_text_and_json_round_trip(q):
    F = get_field(2, 2) if q == 4 else get_field(q)
    rng = random.Random(q)
    forms = [random_form(F, rng, 10, q) for _ in range(30)] + [sequence(F, "xi", 1)]
    forms.append(sequence(F, "x", 2).scale(KElem.parse(F, "1/(T^2+1)")))
    for f in forms:
        assert parse_form(F, str(f)) == f
        assert QMForm.from_json(f.to_json()) == f


def test_form_text_examples():
    F = get_field(3)
    E, g, h = gens(F)
    assert str(sequence(F, "xi", 0)) == "(-T^3+T)*E^4+E*g*h+h^2"
    assert str((g * h ** 3).scale(br(F, 1).inverse())) == "g*h^3/(T^3-T)"
    assert str(QMForm.zero(F)) == "0"


def test_monomial_inverse_and_frobenius():
    F = get_field(3)
    E, g, h = gens(F)
    D = sequence(F, "Delta", 0)
    assert D * D.monomial_inverse() == QMForm.one(F)
    f = E * g + h.scale(KElem.theta(F))
    assert f.frobenius() == f ** 3
    assert f.power_p().root_p() == f


def test_partial_E_examples():
    F = get_field(5)
    E = QMForm.gen(F, "E")
    assert (E * E).partial_E(1) == E.scale(KElem.from_int(F, 2))
    assert (E * E).partial_E(2) == QMForm.one(F)
    assert sequence(F, "x", 1).partial_E(2).is_zero()
    assert sequence(F, "xi", 0).partial_E(F.q + 2).is_zero()
