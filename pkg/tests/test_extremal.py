import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dqm.algebra import get_field
from dqm.checks import random_form
from dqm.extremal import (
    COLUMNS,
    basis,
    experiments_table,
    extremal_form,
    form_id,
    normalise,
    proportional,
    table_cell,
    table_csv,
    table_json,
    verify_multiplicity,
)
from dqm.forms import QMForm, grading_of, nu_infty, sequence


def test_basis_examples():
    for p, e in ((2, 2), (5, 1), (7, 1)):
        assert basis(get_field(p, e), 2, 1, 1).monomials == ((1, 0, 0),)
    F = get_field(3)
    assert basis(F, 4, 0, 2).monomials == ((2, 0, 0), (0, 2, 0))
    assert basis(F, 4, 0, 1).monomials == ((0, 2, 0),)
    assert basis(F, 4, 1, 2).monomials == ((1, 1, 0), (0, 0, 1))
    assert basis(F, 10, 1, -1).dim == 0
    assert basis(F, -2, 0, 3).dim == 0
    for q in (2, 3, 5):
        F = get_field(q)
        for k in range(1, 4):
            assert basis(F, q ** k + 1, 1 if q > 2 else 0, 1).dim >= 2


@pytest.mark.parametrize("q", [2, 3, 5])
def test_basis_gradings(q):
    F = get_field(q)
    for w in range(0, 3 * q + 4):
        for m in range(max(q - 1, 1)):
            for l in range(4):
                B = basis(F, w, m, l)
                for mono in B.monomials:
                    gr = grading_of(QMForm.monomial(F, *mono))
                    assert (gr.w, gr.m) == (w, m) and gr.l <= l
                assert list(B.monomials) == sorted(B.monomials, reverse=True)


def test_empty_space_is_rejected():
    with pytest.raises(ValueError):
        extremal_form(get_field(3), 3, 0, 1)


@pytest.mark.parametrize("q,kmax", [(2, 3), (3, 3)])
def test_extremal_x(q, kmax):
    F = get_field(q)
    for k in range(kmax + 1):
        rep = extremal_form(F, q ** k + 1, 1 if q > 2 else 0, 1)
        assert rep.nu_max == q ** k
        assert proportional(sequence(F, "x", k), rep.extremal_form)
        assert nu_infty(rep.extremal_form).leading.is_one()


@pytest.mark.parametrize("q,kmax", [(3, 1), (5, 1)])
def test_extremal_xi_and_eta(q, kmax):
    F = get_field(q)
    for k in range(kmax + 1):
        w = (q + 1) * (q ** k + 1)
        rep = extremal_form(F, w, (q + 1) % (q - 1), q + 1)
        assert rep.nu_max == q ** (k + 2) + q ** k
        assert proportional(sequence(F, "xi", k), rep.extremal_form)
        rep = extremal_form(F, q * (q ** k + 1), 1, q)
        assert rep.nu_max == q ** (k + 1) + q - 1
        assert proportional(sequence(F, "eta", k), rep.extremal_form)


def test_xi0_in_characteristic_two():
    F = get_field(2)
    rep = extremal_form(F, 6, 0, 3)
    assert rep.nu_max == 6
    assert nu_infty(sequence(F, "xi", 0)).nu == 5


@pytest.mark.parametrize("q,w,m,l", [(3, 10, 1, 1), (3, 8, 0, 2), (2, 9, 0, 3), (5, 12, 0, 2)])
def test_spectrum_properties(q, w, m, l):
    F = get_field(q)
    rep = extremal_form(F, w, m, l)
    assert len(rep.spectrum) == rep.dim == basis(F, w, m, l).dim
    assert rep.spectrum == sorted(set(rep.spectrum))
    for seed in (1, 2):
        other = extremal_form(F, w, m, l, shuffle_seed=seed)
        assert other.spectrum == rep.spectrum
        assert other.extremal_form == rep.extremal_form
    for f, nu in zip(rep.echelon_forms, rep.spectrum):
        r = nu_infty(f, start=2 * rep.precision_used)
        assert r.nu == nu and r.leading.is_one()
    assert json.loads(json.dumps(rep.to_json()))["nu_max"] == rep.nu_max


def test_spectrum_example():
    rep = extremal_form(get_field(3), 10, 1, 1)
    assert (rep.dim, rep.spectrum, rep.nu_max, rep.is_interval) == (3, [1, 3, 9], 9, False)
    assert str(extremal_form(get_field(3), 2, 1, 1).extremal_form) == "E"


@pytest.mark.parametrize("q", [2, 3])
def test_monotone_in_depth(q):
    F = get_field(q)
    for w in range(q + 1, 4 * q + 3):
        for m in range(max(q - 1, 1)):
            prev = None
            for l in range(w // 2 + 1):
                if not basis(F, w, m, l).dim:
                    continue
                nu = extremal_form(F, w, m, l).nu_max
                assert prev is None or nu >= prev
                prev = nu


@pytest.mark.parametrize("q", [2, 3, 5])
def test_modular_bound(q):
    F = get_field(q)
    for w in range(q - 1, 4 * (q + 1), q - 1 if q > 2 else 1):
        for m in range(max(q - 1, 1)):
            if basis(F, w, m, 0).dim:
                assert (q + 1) * extremal_form(F, w, m, 0).nu_max <= w


def test_small_precision_cap_is_unresolved():
    rep = extremal_form(get_field(3), 10, 1, 1, start=2, cap=4)
    assert rep.extremal_form is None
    assert rep.status == "unresolved at precision cap 4"


def test_normalise_and_proportional():
    F = get_field(3)
    x = sequence(F, "x", 1)
    n = normalise(x)
    assert proportional(x, n) and nu_infty(n).leading.is_one()
    assert not proportional(x, sequence(F, "x", 0) * QMForm.gen(F, "g"))
    assert proportional(QMForm.zero(F), QMForm.zero(F))


def test_verify_multiplicity_examples():
    F = get_field(3)
    r = verify_multiplicity(sequence(F, "xi", 0))
    assert (r["nu"], r["w"], r["l"], r["pass"]) == (10, 8, 4, True)
    assert r["bounds"]["depth<=q^2"]["bound"] == 28 * 4
    r = verify_multiplicity(sequence(F, "Delta", 0))
    assert r["bounds"]["modular"] == {"bound": "2", "pass": True, "slack": "0"}
    with pytest.raises(ValueError):
        verify_multiplicity(QMForm.gen(F, "E") + QMForm.gen(F, "g"))


@settings(max_examples=15)
@given(st.integers(0, 10 ** 6))
def test_multiplicity_bounds_hold(seed):
    F = get_field(3)
    f = random_form(F, random.Random(seed), 12, 3)
    r = verify_multiplicity(f)
    assert r["pass"]


def test_table_rows(tmp_path):
    F = get_field(3)
    rows = experiments_table(F, 1, 4, store=str(tmp_path))
    assert all(tuple(r) == COLUMNS for r in rows)
    got = {(r["k"], r["l"]): r for r in rows}
    assert got[(0, 1)]["nu_max"] == 1 and got[(1, 1)]["nu_max"] == 3
    assert got[(1, 2)]["nu_max"] == 6 and got[(1, 2)]["epsilon_D"] == "2"
    assert got[(1, 3)]["nu_max"] == 11
    assert got[(1, 3)]["status"] == "ok (table lists q^k+q-1=5, computed 11)"
    assert got[(1, 4)]["nu_max"] == 30 and got[(1, 4)]["epsilon_D"] == "3"
    assert all(r["status"].startswith("ok") for r in rows)
    assert (tmp_path / f"{got[(1, 4)]['form_id']}.json").exists()
    csv_text = table_csv(rows)
    assert csv_text.splitlines()[0] == ",".join(COLUMNS)
    assert len(csv_text.splitlines()) == len(rows) + 1
    assert json.loads(table_json(rows)) == json.loads(json.dumps(rows))


def test_table_cell_without_epsilon():
    F = get_field(2)
    row, rep = table_cell(F, 0, 3, with_epsilon=False)
    assert row["epsilon_D"] == "skipped"
    assert row["nu_max"] == 6 and "nu 6 != 5" in row["status"]
    assert row["form_id"] == form_id(rep.extremal_form)
