"""Graded bases, extremal forms by exact elimination, and multiplicity bounds."""

import hashlib
import json
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction

from dqm.algebra.kfield import ONE, KElem
from dqm.algebra.linalg import KMatrix, row_reduce_fraction_free
from dqm.forms.ops import Unresolved, evaluate_monomials, nu_infty
from dqm.forms.qmform import QMForm, grading_of

PRECISION_CAP = 2 ** 14


@dataclass(frozen=True)
class GradedBasis:
    F: object
    w: int
    m: int
    l: int
    monomials: tuple

    @property
    def dim(self):
        return len(self.monomials)


def basis(F, w, m, l):
    """Monomials E^i g^j h^k of weight w, type m and depth <= l."""
    q = F.q
    monos = []
    if w >= 0 and l >= 0:
        for i in range(min(l, w // 2) + 1):
            for k in range((w - 2 * i) // (q + 1) + 1):
                rest = w - 2 * i - (q + 1) * k
                if rest % (q - 1):
                    continue
                if (i + k - m) % (q - 1):
                    continue
                monos.append((i, rest // (q - 1), k))
    monos.sort(reverse=True)
    return GradedBasis(F, w, m % (q - 1) if q > 2 else 0, l, tuple(monos))


@dataclass
class SpectrumReport:
    extremal_form: object
    nu_max: int
    spectrum: list
    dim: int
    precision_used: int
    is_interval: bool = False
    status: str = "resolved"
    echelon_forms: list = field(default_factory=list, repr=False)

    def to_json(self):
        return {
            "extremal_form": str(self.extremal_form) if self.extremal_form is not None else None,
            "nu_max": self.nu_max,
            "spectrum": self.spectrum,
            "dim": self.dim,
            "precision_used": self.precision_used,
            "is_interval": self.is_interval,
            "status": self.status,
        }


def default_start(w, l):
    return 2 * l * (w - l) + w


def extremal_form(F, w, m, l, start=None, cap=PRECISION_CAP, shuffle_seed=None):
    """The normalised extremal form of the space of weight w, type m, depth <= l."""
    B = basis(F, w, m, l)
    if not B.dim:
        raise ValueError(f"the space (w={w}, m={m}, l<={l}) is zero")
    monos = list(B.monomials)
    if shuffle_seed is not None:
        random.Random(shuffle_seed).shuffle(monos)
    N = max(start or default_start(w, l), 1)
    N = min(N, cap)
    while True:
        series = evaluate_monomials(F, monos, N)
        rows = [[KElem.raw(F, *s.c.get(e, (b"", ONE))) for e in range(N)] for s in series]
        ech, tr, pivots = row_reduce_fraction_free(KMatrix(F, rows))
        if len(pivots) == B.dim:
            break
        if N >= cap:
            return SpectrumReport(None, None, sorted(pivots), B.dim, N, status=str(Unresolved(cap)))
        N = min(2 * N, cap)
    forms = []
    for r, piv in enumerate(pivots):
        lead = ech[r, piv]
        terms = {}
        for t, mono in enumerate(monos):
            c = tr[r, t]
            if c:
                terms[mono] = c / lead
        forms.append(QMForm(F, terms))
    spectrum = list(pivots)
    interval = spectrum == list(range(spectrum[0], spectrum[0] + len(spectrum)))
    return SpectrumReport(forms[-1], spectrum[-1], spectrum, B.dim, N, interval, "resolved", forms)


def proportional(f, g):
    """True when g = c f for some nonzero scalar c."""
    if f.is_zero() or g.is_zero():
        return f.is_zero() and g.is_zero()
    if set(f.t) != set(g.t):
        return False
    mono = next(iter(f.t))
    c = g.coeff(*mono) / f.coeff(*mono)
    return f.scale(c) == g


def normalise(f, prec=None):
    """Scale f so that its leading u-coefficient is 1."""
    r = nu_infty(f) if prec is None else nu_infty(f, start=prec)
    if isinstance(r, Unresolved):
        raise ArithmeticError(str(r))
    return f.scale(r.leading.inverse())


def verify_multiplicity(f):
    """nu_infty(f) against the depth <= q, depth <= q^2 and modular bounds."""
    F = f.F
    q = F.q
    gr = grading_of(f)
    if gr == "inhomogeneous":
        raise ValueError("verify_multiplicity needs an isobaric form")
    r = nu_infty(f)
    if isinstance(r, Unresolved):
        return {"nu": None, "status": str(r)}
    nu, w, l, d = r.nu, gr.w, gr.l, gr.d
    report = {"nu": nu, "w": w, "l": l, "d": d, "bounds": {}}
    if l <= q:
        bound = Fraction(q * q + 1, q + 1) * d
        report["bounds"]["depth<=q"] = {"bound": str(bound), "pass": nu <= bound, "slack": str(bound - nu)}
    if l <= q * q:
        bound = (q ** 3 + 1) * (w - l)
        report["bounds"]["depth<=q^2"] = {"bound": bound, "pass": nu <= bound, "slack": bound - nu}
    if l == 0:
        bound = Fraction(w, q + 1)
        report["bounds"]["modular"] = {"bound": str(bound), "pass": nu <= bound, "slack": str(bound - nu)}
    if l * (w - l) > 0:
        report["conjecture_ratio"] = str(Fraction(nu, l * (w - l)))
    report["pass"] = all(b["pass"] for b in report["bounds"].values())
    return report


def form_id(f):
    text = json.dumps(f.to_json(), sort_keys=True)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def store_form(store, f):
    fid = form_id(f)
    if store:
        os.makedirs(store, exist_ok=True)
        path = os.path.join(store, f"{fid}.json")
        if not os.path.exists(path):
            with open(path, "w") as fh:
                json.dump(f.to_json(), fh)
    return fid
