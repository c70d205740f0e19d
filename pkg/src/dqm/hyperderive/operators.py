"""Hyperderivatives D_n on forms, Serre operators, E-direction Taylor
coefficients, differential exponents and Hecke candidates."""

from dataclasses import dataclass, field

from dqm.algebra.arith import binom_char_p
from dqm.algebra.kfield import KElem
from dqm.forms.ops import divides
from dqm.forms.qmform import QMForm, grading_of
from dqm.hyperderive.engine import engine_for
from dqm.hyperderive.taylor import TaylorPoly, _sum
from dqm.useries.derivation import derive_series


class _PowerCache:
    """Powers T(v)^e modulo X^N for the generators v."""

    def __init__(self, eng, N):
        self.eng, self.N = eng, N
        self.base = {}
        self.cache = {}

    def get(self, v, e):
        key = (v, e)
        got = self.cache.get(key)
        if got is None:
            if v not in self.base:
                self.base[v] = self.eng.generator(v, self.N)
            got = self.base[v].power(e, self.N)
            self.cache[key] = got
        return got


def dn(f, n, engine=None):
    """D_n f: the X^n coefficient of f(T(E), T(g), T(h)).

    p-th powers use D_(pn)(f^p) = (D_n f)^p and D_m(f^p) = 0 for p not dividing m.
    """
    F = f.F
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0 or f.is_zero():
        return f if n == 0 else f
    eng = engine or engine_for(F)
    root = f.root_p() if not f.is_constant() else None
    if root is not None:
        if n % F.p:
            return QMForm.zero(F)
        return dn(root, n // F.p, eng).power_p(1)
    return dn_many(f, [n], eng)[n]


def dn_many(f, ns, engine=None):
    """{n: D_n f} for several n sharing one expansion."""
    F = f.F
    eng = engine or engine_for(F)
    N = max(ns) + 1
    pc = _PowerCache(eng, N)
    # group monomials by (i, j) so the E,g part is shared across powers of h
    groups = {}
    for (i, j, k) in f.t:
        groups.setdefault((i, j), []).append(k)
    out = {n: [] for n in ns}
    for (i, j), ks in groups.items():
        eg = pc.get("E", i).mul(pc.get("g", j), N) if i and j else (pc.get("E", i) if i else pc.get("g", j))
        for k in ks:
            c = QMForm._raw(F, {(0, 0, 0): f.t[(i, j, k)]}, f.den)
            hp = pc.get("h", k) if k else None
            for n in ns:
                if hp is None:
                    term = eg.coeff(n) if n < eg.xprec else QMForm.zero(F)
                else:
                    term = eg.coefficient_of_product(hp, n)
                if not term.is_zero():
                    out[n].append(term * c)
    return {n: _sum(F, terms) for n, terms in out.items()}


def taylor_of(f, N, engine=None):
    """T_X(f) modulo X^N for an arbitrary form."""
    F = f.F
    eng = engine or engine_for(F)
    vals = dn_many(f, list(range(N)), eng)
    return TaylorPoly(F, vals, N)


def dn_on_useries(s, n):
    """D_n on a u-expansion, independent of the symbolic engine."""
    return derive_series(s, n)


def serre_partial(f, n, d, engine=None):
    """d_n^(d) f = D_n f + sum_{i=1}^n (-1)^i binom(d+n-1, i) (D_(n-i) f)(D_(i-1) E)."""
    F = f.F
    p = F.p
    E = QMForm.gen(F, "E")
    dfs = dn_many(f, list(range(n + 1)), engine)
    dEs = dn_many(E, list(range(max(n, 1))), engine) if n else {}
    terms = [dfs[n]]
    for i in range(1, n + 1):
        b = binom_char_p(d + n - 1, i, p)
        if not b:
            continue
        if i % 2:
            b = -b
        t = dfs[n - i] * dEs[i - 1]
        terms.append(t.scale(KElem.from_int(F, b)))
    return _sum(F, terms)


def partial_E(f, j):
    """Coefficient of X^j in f(E + X, g, h)."""
    return f.partial_E(j)


def associated_coefficients(f):
    """[d^(E)_0 f, ..., d^(E)_l f] for l the depth of f."""
    return [f.partial_E(j) for j in range(max(f.depth(), 0) + 1)]


@dataclass(frozen=True)
class EpsilonReport:
    """value is an int, or None with kind 'infinite' / 'at_least'."""

    value: object
    kind: str
    cap: int
    trace: tuple = field(default=(), compare=False)

    def __str__(self):
        if self.kind == "infinite":
            return "∞-flagged"
        if self.kind == "at_least":
            return f"≥ {self.cap}"
        return str(self.value)

    def to_json(self):
        if self.kind == "exact":
            return self.value
        return str(self)


def is_unit_times_h_power(f):
    return len(f.t) == 1 and all(i == 0 and j == 0 for i, j, _ in f.t)


def differential_exponent(f, cap, engine=None):
    """Smallest k with f not dividing D_(p^k) f."""
    if f.is_zero():
        raise ValueError("differential exponent of the zero form")
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if is_unit_times_h_power(f):
        return EpsilonReport(None, "infinite", cap)
    p = f.F.p
    trace = []
    for j in range(cap):
        d = dn(f, p ** j, engine)
        if not d.is_polynomial():
            raise ArithmeticError("derivative left the polynomial ring")
        quot = divides(f, d)
        trace.append((p ** j, quot is not None))
        if quot is None:
            return EpsilonReport(j, "exact", cap, tuple(trace))
    return EpsilonReport(None, "at_least", cap, tuple(trace))


@dataclass
class HeckeCandidate:
    k: int
    n: int
    binomials_vanish: bool
    derivative: object = None


def hecke_candidates(F, d, kmax, f=None, engine=None):
    """n = 1 - d + p^(k+1) with p^k (p-1) >= d-1, for k <= kmax."""
    if d < 2:
        raise ValueError("d must be >= 2")
    p = F.p
    if f is not None:
        gr = grading_of(f)
        if gr == "inhomogeneous" or gr.l != 0 or gr.w != d:
            raise ValueError(f"the form is not modular of weight {d}")
    out = []
    for k in range(kmax + 1):
        if p ** k * (p - 1) < d - 1:
            continue
        n = 1 - d + p ** (k + 1)
        if n < 1:
            continue
        vanish = all(binom_char_p(d + n - 1, i, p) == 0 for i in range(1, n + 1))
        der = None
        if f is not None:
            der = dn(f, n, engine)
            if der.depth() > 0:
                raise ArithmeticError("D_n f is not modular")
        out.append(HeckeCandidate(k, n, vanish, der))
    return out
