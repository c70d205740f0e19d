"""The experiments table: extremal forms of M^(<=l)_(l(q^k+1), l)."""

import csv
import io
import json

from dqm.extremal.search import extremal_form, proportional, store_form
from dqm.forms.families import sequence
from dqm.hyperderive.operators import differential_exponent

COLUMNS = ("q", "k", "l", "w", "m", "dim", "nu_max", "form_id", "epsilon_D", "status")


def expected_cell(F, k, l):
    """(name, form, nu, epsilon) as listed in the table; eta uses the corrected nu."""
    q, e = F.q, F.e
    if l <= q - 1:
        return f"x[{k}]^{l}", sequence(F, "x", k) ** l, l * q ** k, (k + 1) * e
    if l == q:
        return f"eta[{k}]", sequence(F, "eta", k), q ** (k + 1) + q - 1, 0
    if l == q + 1:
        return f"xi[{k}]", sequence(F, "xi", k), q ** (k + 2) + q ** k, (k + 2) * e
    return None, None, None, None


def table_cell(F, k, l, with_epsilon=True, store=None, cap=None):
    q = F.q
    w = l * (q ** k + 1)
    m = l % (q - 1) if q > 2 else 0
    row = {"q": q, "k": k, "l": l, "w": w, "m": m}
    rep = extremal_form(F, w, m, l, cap=cap) if cap else extremal_form(F, w, m, l)
    row["dim"] = rep.dim
    if rep.status != "resolved":
        row.update(nu_max=None, form_id=None, epsilon_D=None, status="unresolved")
        return row, rep
    row["nu_max"] = rep.nu_max
    row["form_id"] = store_form(store, rep.extremal_form)
    notes = []
    name, expected, nu_exp, eps_exp = expected_cell(F, k, l)
    if expected is not None:
        if not proportional(expected, rep.extremal_form):
            notes.append(f"form not proportional to {name}")
        if rep.nu_max != nu_exp:
            notes.append(f"nu {rep.nu_max} != {nu_exp}")
        if l == q and rep.nu_max == nu_exp:
            notes.append(f"table lists q^k+q-1={q ** k + q - 1}, computed {rep.nu_max}")
    if with_epsilon:
        eps = differential_exponent(rep.extremal_form, (k + 2) * F.e + 1)
        row["epsilon_D"] = str(eps)
        if eps_exp is not None and eps.kind == "exact" and eps.value != eps_exp:
            notes.append(f"epsilon_D {eps.value} != {eps_exp}")
    else:
        row["epsilon_D"] = "skipped"
    row["status"] = "ok" if not notes else "; ".join(notes)
    if l == q and not [n for n in notes if not n.startswith("table lists")]:
        row["status"] = "ok (" + notes[-1] + ")" if notes else "ok"
    return row, rep


def experiments_table(F, kmax, lmax, with_epsilon=True, store=None, progress=None, cap=None):
    rows = []
    for l in range(1, min(lmax, F.q + 1) + 1):
        for k in range(kmax + 1):
            if progress:
                progress(f"cell k={k} l={l}")
            row, _ = table_cell(F, k, l, with_epsilon, store, cap)
            rows.append(row)
    rows.sort(key=lambda r: (r["k"], r["l"]))
    return rows


def table_csv(rows):
    buf = io.StringIO()
    wr = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    wr.writeheader()
    for r in rows:
        wr.writerow({c: ("" if r.get(c) is None else r.get(c)) for c in COLUMNS})
    return buf.getvalue()


def table_json(rows):
    return json.dumps([{c: r.get(c) for c in COLUMNS} for r in rows], indent=2, ensure_ascii=False)
