"""Executable identity checks, grouped by acceptance criterion.

Each ``criterion_*`` function returns a ``CheckResult`` whose status is one
of PASS, FAIL, UNRESOLVED or PAPER-DISCREPANCY.  Every comparison is exact.
"""

import random
import time
from dataclasses import dataclass, field

from dqm.algebra.arith import bracket, lprod
from dqm.algebra.field import get_field
from dqm.algebra.kfield import KElem, ThetaPoly
from dqm.extremal import basis, extremal_form, normalise, proportional, verify_multiplicity
from dqm.forms import Unresolved, evaluate, grading_of, nu_infty, sequence
from dqm.forms.qmform import QMForm
from dqm.hyperderive import differential_exponent, dn, dn_on_useries, engine_for, serre_partial
from dqm.hyperderive.taylor import TaylorPoly
from dqm.useries import base_expansions

PASS, FAIL, UNRESOLVED, DISCREPANCY = "PASS", "FAIL", "UNRESOLVED", "PAPER-DISCREPANCY"


@dataclass
class CheckResult:
    key: str
    title: str
    status: str = PASS
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    count: int = 0
    seconds: float = 0.0

    def expect(self, label, actual, expected):
        self.count += 1
        if actual != expected:
            self.failures.append(f"{label}: got {actual}, expected {expected}")
            self.status = FAIL
        return actual == expected

    def unresolved(self, label):
        self.notes.append(f"{label}: unresolved")
        if self.status == PASS:
            self.status = UNRESOLVED

    @property
    def ok(self):
        return self.status == PASS

    def line(self):
        head = f"[{self.status}] {self.key} {self.title} ({self.count} checks, {self.seconds:.1f}s)"
        extra = self.failures[:3] + self.notes[:3]
        return head + "".join(f"\n    {x}" for x in extra)

    def to_json(self):
        return {
            "key": self.key,
            "title": self.title,
            "status": self.status,
            "checks": self.count,
            "failures": self.failures,
            "notes": self.notes,
            "seconds": round(self.seconds, 3),
        }


def _timed(key, title):
    def wrap(fn):
        def run(*args, **kw):
            res = CheckResult(key, title)
            t0 = time.perf_counter()
            fn(res, *args, **kw)
            res.seconds = time.perf_counter() - t0
            return res

        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run

    return wrap


def _k(F, poly):
    return KElem(F, poly)


def _gens(F):
    return tuple(QMForm.gen(F, c) for c in "Egh")


def _first_terms(s, count):
    out = []
    for e in sorted(s.c):
        out.append((e, str(KElem.raw(s.F, *s.c[e]))))
        if len(out) == count:
            break
    return out


# ---------------------------------------------------------------- criteria


@_timed("C1", "base expansions: leading terms of g, h, E")
def criterion_1(res, fields):
    for F in fields:
        q = F.q
        b = base_expansions(F, q ** 3)
        one = str(KElem.from_int(F, 1))
        res.expect(f"q={q} g", _first_terms(b.g, 2), [(0, one), (q - 1, str(-_k(F, bracket(F, 1))))])
        second = 1 + (q - 1) ** 2
        res.expect(f"q={q} h", _first_terms(b.h, 2), [(1, str(KElem.from_int(F, -1))), (second, str(KElem.from_int(F, -1)))])
        res.expect(f"q={q} E", _first_terms(b.E, 2), [(1, one), (second, one)])


@_timed("C2", "nu(x_k) = q^k with leading coefficient (-1)^(k+1) L_k")
def criterion_2(res, cells):
    for F, kmax in cells:
        for k in range(kmax + 1):
            r = nu_infty(sequence(F, "x", k))
            if isinstance(r, Unresolved):
                res.unresolved(f"q={F.q} x_{k}")
                continue
            res.expect(f"q={F.q} nu(x_{k})", r.nu, F.q ** k)
            lead = _k(F, lprod(F, k)) * (-1) ** (k + 1)
            res.expect(f"q={F.q} lead(x_{k})", r.leading, lead)


@_timed("C3", "xi_k: nu, weight, depth and the x-identity")
def criterion_3(res, cells):
    for F, kmax in cells:
        q = F.q
        for k in range(kmax + 1):
            xi = sequence(F, "xi", k)
            r = nu_infty(xi)
            if isinstance(r, Unresolved):
                res.unresolved(f"q={q} xi_{k}")
            else:
                res.expect(f"q={q} nu(xi_{k})", r.nu, q ** (k + 2) + q ** k)
            gr = grading_of(xi)
            res.expect(f"q={q} w(xi_{k})", gr.w, (q ** k + 1) * (q + 1))
            res.expect(f"q={q} l(xi_{k})", gr.l, q + 1)
            x = [sequence(F, "x", k + i) for i in range(3)]
            lhs = -(sequence(F, "Delta", 0).frobenius(k) * xi)
            res.expect(f"q={q} identity k={k}", lhs, x[1] ** (q + 1) - x[0].frobenius(1) * x[2])


@_timed("C4", "rho_k = (-1)^k L_k h^(q^k)")
def criterion_4(res, cells):
    for F, kmax in cells:
        h = QMForm.gen(F, "h")
        for k in range(kmax + 1):
            g0, h0, g1, h1 = (sequence(F, n, k + i) for i in (0, 1) for n in ("g", "h"))
            rho = g0 * h1 - h0 * g1
            want = (h ** (F.q ** k)).scale(_k(F, lprod(F, k)) * (-1) ** k)
            res.expect(f"q={F.q} rho_{k}", rho, want)


@_timed("C5", "Taylor closed forms for Delta, Delta^-1 and g_s")
def criterion_5(res, fields, smax=3):
    for F in fields:
        q = F.q
        eng = engine_for(F)
        E, g, h = _gens(F)
        D = sequence(F, "Delta", 0)
        b1inv = _k(F, bracket(F, 1)).inverse()
        res.expect(f"q={q} T1(Delta)", eng.delta(q), TaylorPoly(F, {0: D, 1: -(D * E)}, q))
        N = q * q
        core = TaylorPoly(F, {
            0: QMForm.one(F),
            1: -E,
            q: (g * h).scale(b1inv) - E ** q,
            q + 1: E ** (q + 1) - (E * g * h + h * h).scale(b1inv),
        }, N)
        geo = TaylorPoly(F, {i * q: E ** (i * q) for i in range(q)}, N)
        want = core.mul(geo, N).scale(D)
        got = eng.delta(N)
        for n in range(N):
            res.expect(f"q={q} T2(Delta) X^{n}", got.coeff(n), want.coeff(n))
        inv = {i: E ** i for i in range(q)}
        inv[q] = E ** q - (g * h).scale(b1inv)
        want = TaylorPoly(F, inv, q + 1).scale(D.monomial_inverse())
        got = eng.delta_inverse(q + 1)
        for n in range(q + 1):
            res.expect(f"q={q} T2(Delta^-1) X^{n}", got.coeff(n), want.coeff(n))
        for s in range(1, smax + 1):
            got = eng.g(s, q ** s)
            want = TaylorPoly(F, {0: sequence(F, "g", s), 1: sequence(F, "x", s)}, q ** s)
            res.expect(f"q={q} T_s(g_{s})", got, want)


@_timed("C6", "coefficients of X^(q^(s+1)) and X^(q^(s+1)+1) in T(g_s), T(x_s)")
def criterion_6(res, fields, smax=2):
    for F in fields:
        q = F.q
        eng = engine_for(F)
        E, g, h = _gens(F)
        b1 = _k(F, bracket(F, 1))
        for s in range(1, smax + 1):
            bs = _k(F, bracket(F, s + 1))
            M = q ** (s + 1)
            gs, xs, gs1, xs1 = (sequence(F, n, s + i) for i in (0, 1) for n in ("g", "x"))
            hq, gq, b1q = h.frobenius(s), g.frobenius(s), b1.frobenius(s)
            Eq = E.frobenius(s + 1)
            c0 = Eq * gs - hq * (-gs1.scale(bs.inverse()) + (gq * gs).scale(b1q.inverse()))
            c1 = Eq * xs - hq * (-xs1.scale(bs.inverse()) + (gq * xs).scale(b1q.inverse()))
            T = eng.g(s, M + 2)
            res.expect(f"q={q} s={s} T(g_s) X^{M}", T.coeff(M), c0)
            res.expect(f"q={q} s={s} T(g_s) X^{M + 1}", T.coeff(M + 1), c1)
            res.expect(f"q={q} s={s} T(x_s) X^{M}", dn(xs, M), c1)


@_timed("C7", "differential exponents of x_k, eta_k and x_k^p")
def criterion_7(res, cells, eta_kmax=1):
    for F, kmax in cells:
        q, e, p = F.q, F.e, F.p
        for k in range(kmax + 1):
            x = sequence(F, "x", k)
            cap = (k + 1) * e + 2
            r = differential_exponent(x, cap)
            if r.kind != "exact":
                res.unresolved(f"q={q} eps(x_{k}) {r}")
                continue
            res.expect(f"q={q} eps(x_{k})", r.value, (k + 1) * e)
            rp = differential_exponent(x ** p, cap + 1)
            res.expect(f"q={q} eps(x_{k}^p)", rp.value, r.value + 1)
        for k in range(eta_kmax + 1):
            r = differential_exponent(sequence(F, "eta", k), 2)
            res.expect(f"q={q} eps(eta_{k})", r.value, 0)


@_timed("C8", "D_q(Delta) = g h^q/[1] and D_(q^2-q)(h) = g^(q-1) h^q/[1]^(q-1)")
def criterion_8(res, fields):
    for F in fields:
        q = F.q
        E, g, h = _gens(F)
        b1 = _k(F, bracket(F, 1))
        dd = dn(sequence(F, "Delta", 0), q)
        want = (g * h ** q).scale(b1.inverse())
        if not res.expect(f"q={q} D_q(Delta)", dd, want) and dd == -want:
            res.notes.append(f"q={q}: computed D_q(Delta) = {dd} (opposite sign)")
        res.expect(f"q={q} depth D_q(Delta)", dd.depth(), 0)
        dh = dn(h, q * q - q)
        res.expect(f"q={q} D_(q^2-q)(h)", dh, (g ** (q - 1) * h ** q).scale(b1.inverse() ** (q - 1)))
        res.expect(f"q={q} depth D_(q^2-q)(h)", dh.depth(), 0)


def random_form(F, rng, wmax, lmax, coeff_deg=2):
    """A random isobaric form of weight <= wmax and depth <= lmax (never zero)."""
    q = F.q
    while True:
        w = rng.randint(1, wmax)
        l = rng.randint(0, lmax)
        m = rng.randrange(q - 1) if q > 2 else 0
        monos = basis(F, w, m, l).monomials
        if not monos:
            continue
        terms = {}
        for mono in monos:
            if rng.random() < 0.7:
                c = ThetaPoly(F, [rng.randrange(F.q) for _ in range(rng.randint(1, coeff_deg + 1))])
                if not c.is_zero():
                    terms[mono] = KElem(F, c)
        if terms:
            return QMForm(F, terms)


@_timed("C9", "Serre operators: depth preservation, x_k annihilation, h_k from g_k")
def criterion_9(res, fields, samples=50, seed=2024, kmax=1, hk_max=3):
    for F in fields:
        q = F.q
        rng = random.Random(seed + q)
        for t in range(samples):
            f = random_form(F, rng, 3 * q + 3, q)
            gr = grading_of(f)
            n = rng.randint(1, q * q)
            d = serre_partial(f, n, gr.w - gr.l)
            res.expect(f"q={q} sample {t} depth", d.is_zero() or d.depth() <= gr.l, True)
        for k in range(kmax + 1):
            x = sequence(F, "x", k)
            for n in range(1, q ** (k + 1)):
                res.expect(f"q={q} d_{n}^(q^{k}) x_{k}", serre_partial(x, n, q ** k).is_zero(), True)
        for k in range(1, hk_max + 1):
            got = -serre_partial(sequence(F, "g", k), 1, q ** k - 1)
            res.expect(f"q={q} h_{k}", got, sequence(F, "h", k))


@_timed("C10", "extremal search returns x_k, xi_k and eta_k")
def criterion_10(res, cells):
    for F, kind, k in cells:
        q = F.q
        if kind == "x":
            w, m, l, f, nu = q ** k + 1, 1 % (q - 1) if q > 2 else 0, 1, sequence(F, "x", k), q ** k
        elif kind == "xi":
            w, m, l, f, nu = (q + 1) * (q ** k + 1), 2 % (q - 1) if q > 2 else 0, q + 1, sequence(F, "xi", k), q ** (k + 2) + q ** k
        else:
            w, m, l, f, nu = q * (q ** k + 1), 1 % (q - 1) if q > 2 else 0, q, sequence(F, "eta", k), q ** (k + 1) + q - 1
        rep = extremal_form(F, w, m, l)
        if rep.status != "resolved":
            res.unresolved(f"q={q} {kind}_{k}")
            continue
        res.expect(f"q={q} {kind}_{k} nu_max", rep.nu_max, nu)
        if kind == "eta":
            res.expect(f"q={q} eta_{k} proportional", proportional(f, rep.extremal_form), True)
        else:
            res.expect(f"q={q} {kind}_{k} normalised form", rep.extremal_form, normalise(f))


def family_members(F, kmax=2):
    out = []
    for k in range(kmax + 1):
        for name in ("g", "h", "x", "eta", "xi"):
            f = sequence(F, name, k)
            if not f.is_zero() and not f.is_constant():
                out.append((f"{name}_{k}", f))
        if k >= 1:
            out.append((f"y_{k}", sequence(F, "y", k)))
    return out


@_timed("C11", "multiplicity bounds on family members and modular outputs")
def criterion_11(res, cells):
    for F, kmax in cells:
        q = F.q
        forms = family_members(F, kmax)
        forms.append(("D_q(Delta)", dn(sequence(F, "Delta", 0), q)))
        for k in range(kmax + 1):
            g0, h0, g1, h1 = (sequence(F, n, k + i) for i in (0, 1) for n in ("g", "h"))
            forms.append((f"rho_{k}", g0 * h1 - h0 * g1))
        for name, f in forms:
            rep = verify_multiplicity(f)
            if rep["nu"] is None:
                res.unresolved(f"q={q} {name}")
                continue
            for bname, b in rep["bounds"].items():
                res.expect(f"q={q} {name} {bname} (nu={rep['nu']}, bound {b['bound']})", b["pass"], True)


@_timed("C12", "symbolic D_n against the u-series oracle")
def criterion_12(res, fields, samples=20, seed=7):
    for F in fields:
        q = F.q
        P = q ** 3
        rng = random.Random(seed + q)
        for t in range(samples):
            f = random_form(F, rng, 2 * q + 2, q)
            n = rng.randint(1, q * q)
            lhs = evaluate(dn(f, n), P)
            rhs = dn_on_useries(evaluate(f, P), n)
            res.expect(f"q={q} sample {t} n={n}", lhs, rhs)


@_timed("C13", "extension field q = 4")
def criterion_13(res):
    F = get_field(2, 2)
    for sub in (criterion_1([F]), criterion_2([(F, 2)]), criterion_4([(F, 3)]), criterion_5([F])):
        res.count += sub.count
        res.failures += [f"{sub.key}: {x}" for x in sub.failures]
        res.notes += [f"{sub.key}: {x}" for x in sub.notes]
        if sub.status != PASS and res.status == PASS:
            res.status = sub.status
    r = differential_exponent(sequence(F, "x", 1), 2 * F.e + 1)
    res.expect("q=4 eps(x_1)", r.value, 2 * F.e)


@_timed("ETA", "nu(eta_k) equals the text value q^(k+1)+q-1")
def criterion_eta(res, cells):
    for F, kmax in cells:
        q = F.q
        for k in range(kmax + 1):
            r = nu_infty(sequence(F, "eta", k))
            if isinstance(r, Unresolved):
                res.unresolved(f"q={q} eta_{k}")
                continue
            res.count += 1
            want = q ** (k + 1) + q - 1
            if r.nu != want:
                res.failures.append(f"q={q} eta_{k}: computed {r.nu}, text value {want}")
                res.status = DISCREPANCY
            else:
                res.notes.append(f"q={q} eta_{k}: {r.nu} (table entry q^k+q-1 = {q ** k + q - 1})")


# ---------------------------------------------------------------- suites


def _q(*ps):
    return [get_field(p) for p in ps]


def acceptance_plan():
    """The criteria at their stated ranges, keyed by name."""
    F2, F3, F5 = _q(2, 3, 5)
    return {
        "C1": lambda: criterion_1([F2, F3, F5]),
        "C2": lambda: criterion_2([(F2, 3), (F3, 3), (F5, 2)]),
        "C3": lambda: criterion_3([(F2, 2), (F3, 2), (F5, 1)]),
        "C4": lambda: criterion_4([(F2, 3), (F3, 3)]),
        "C5": lambda: criterion_5([F2, F3]),
        "C6": lambda: criterion_6([F2, F3]),
        "C7": lambda: criterion_7([(F2, 2), (F3, 2), (F5, 1)]),
        "C8": lambda: criterion_8([F2, F3, F5]),
        "C9": lambda: criterion_9([F2, F3]),
        "C10": lambda: criterion_10(
            [(F3, "x", k) for k in range(3)]
            + [(F3, "xi", k) for k in range(2)]
            + [(F3, "eta", k) for k in range(2)]
            + [(F2, "xi", k) for k in range(2)]
        ),
        "C11": lambda: criterion_11([(F2, 2), (F3, 2), (F5, 1)]),
        "C12": lambda: criterion_12([F2, F3]),
        "C13": criterion_13,
        "ETA": lambda: criterion_eta([(F2, 2), (F3, 2)]),
    }


def fast_plan(F):
    """Identity checks with k <= 1 on one field."""
    return {
        "C1": lambda: criterion_1([F]),
        "C2": lambda: criterion_2([(F, 1)]),
        "C3": lambda: criterion_3([(F, 1)]),
        "C4": lambda: criterion_4([(F, 1)]),
        "C5": lambda: criterion_5([F], smax=2),
        "C6": lambda: criterion_6([F], smax=1),
        "C7": lambda: criterion_7([(F, 1)], eta_kmax=1),
        "C8": lambda: criterion_8([F]),
        "C9": lambda: criterion_9([F], samples=10, kmax=1, hk_max=2),
        "C11": lambda: criterion_11([(F, 1)]),
        "C12": lambda: criterion_12([F], samples=5),
        "ETA": lambda: criterion_eta([(F, 1)]),
    }


def paper_plan():
    """The closed-form identities plus the eps_D(x_k) sweep (no random sampling)."""
    plan = acceptance_plan()
    for key in ("C9", "C12", "C13"):
        plan.pop(key)
    return plan


def suite(name, F=None):
    if name == "fast":
        return fast_plan(F or get_field(3))
    if name == "paper":
        return paper_plan()
    if name == "full":
        return acceptance_plan()
    raise ValueError(f"unknown suite {name!r}")
