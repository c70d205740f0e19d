"""Resultants, exact division, u-expansions and orders of vanishing."""

from dataclasses import dataclass

from dqm import kernels as kn
from dqm.algebra.kfield import ONE, KElem
from dqm.forms.qmform import QMForm, grading_of
from dqm.useries.eisenstein import base_expansions
from dqm.useries.series import USeries

# ---------------------------------------------------------------- resultant


def _coeffs_in_E(f):
    """f = sum_i c_i E^i with c_i in K[g, h]; returns [c_0, ..., c_l]."""
    F = f.F
    l = f.depth()
    parts = [dict() for _ in range(l + 1)]
    for (i, j, k), c in f.t.items():
        parts[i][(0, j, k)] = c
    return [QMForm._make(F, p, f.den) for p in parts]


def _det_bareiss(mat):
    """Determinant of a square matrix of forms with exact divisions."""
    n = len(mat)
    F = mat[0][0].F
    a = [row[:] for row in mat]
    sign = 1
    prev = QMForm.one(F)
    for c in range(n - 1):
        piv = next((r for r in range(c, n) if not a[r][c].is_zero()), None)
        if piv is None:
            return QMForm.zero(F)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                num = a[c][c] * a[i][j] - a[i][c] * a[c][j]
                if prev.is_constant():
                    a[i][j] = num / prev.coeff(0, 0, 0)
                else:
                    qt = divides(prev, num)
                    if qt is None:
                        raise ArithmeticError("inexact Bareiss step")
                    a[i][j] = qt
            a[i][c] = QMForm.zero(F)
        prev = a[c][c]
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def sylvester_matrix(f, g):
    cf = _coeffs_in_E(f)[::-1]
    cg = _coeffs_in_E(g)[::-1]
    m, n = len(cf) - 1, len(cg) - 1
    F = f.F
    size = m + n
    z = QMForm.zero(F)
    rows = []
    for r in range(n):
        rows.append([z] * r + cf + [z] * (size - r - m - 1))
    for r in range(m):
        rows.append([z] * r + cg + [z] * (size - r - n - 1))
    return rows


def resultant_in_E(f, g):
    """Res_E(f, g) via the Sylvester determinant; the result has depth 0."""
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of a zero form")
    if f.depth() == 0 and g.depth() == 0:
        raise ValueError("both forms have E-degree 0")
    if f.depth() == 0:
        return f ** g.depth()
    if g.depth() == 0:
        return g ** f.depth()
    return _det_bareiss(sylvester_matrix(f, g))


# ---------------------------------------------------------------- division


def _order_key(m):
    i, j, k = m
    return (i + j + k, i, j, k)


def divides(f, g):
    """Quotient g/f in K[E, g, h] if f divides g, else None.

    Division by a single polynomial under graded-lex order with E > g > h; a
    leading term of the running remainder that is not divisible by the leading
    monomial of f can never cancel, so it certifies non-divisibility.
    """
    if f.is_zero():
        raise ValueError("division by the zero form")
    F, ctx = f.F, f.F.ctx
    if g.is_zero():
        return QMForm.zero(F)
    if not f.is_polynomial() or not g.is_polynomial():
        raise ValueError("division is defined on polynomial forms")
    lm = max(f.t, key=_order_key)
    # work with f scaled to have leading coefficient 1
    lc_n = f.t[lm]
    fn = {m: kn.kmake(ctx, c, lc_n) for m, c in f.t.items()}
    rest = [(m, v) for m, v in fn.items() if m != lm]
    r = {m: (c, g.den) for m, c in g.t.items()}
    r = {m: kn.kmake(ctx, *v) for m, v in r.items()}
    quot = {}
    while r:
        m = max(r, key=_order_key)
        if m[0] < lm[0] or m[1] < lm[1] or m[2] < lm[2]:
            return None
        c = r.pop(m)
        qm = (m[0] - lm[0], m[1] - lm[1], m[2] - lm[2])
        quot[qm] = c
        for (a, b, d), v in rest:
            key = (a + qm[0], b + qm[1], d + qm[2])
            t = kn.kmul(ctx, *c, *v)
            if key in r:
                s = kn.ksub(ctx, *r[key], *t)
                if s[0]:
                    r[key] = s
                else:
                    del r[key]
            else:
                r[key] = (kn.pneg(ctx, t[0]), t[1])
    # quotient = quot * (lc_f)^-1 ... f was scaled by 1/lc, so g/f = quot * lc^-1 * den_f
    scale = KElem(F, f.den, lc_n)
    qf = QMForm(F, {m: KElem.raw(F, *v) for m, v in quot.items()})
    return qf.scale(scale)


# ---------------------------------------------------------------- evaluation


def evaluate(f, prec, base=None):
    """The u-expansion of a polynomial form modulo u^prec."""
    F = f.F
    if not f.is_polynomial():
        raise ValueError("evaluate needs a polynomial form")
    if base is None:
        base = base_expansions(F, prec)
    elif base.prec < prec:
        raise ValueError(f"base expansions known to u^{base.prec} only, {prec} requested")
    E, g, h = (s.truncate(prec) for s in (base.E, base.g, base.h))
    ctx = F.ctx
    groups = {}
    for (i, j, k), c in f.t.items():
        if i + k < prec:
            groups.setdefault((i, k), {})[j] = c
    gp = _Powers(g, prec)
    ep = _Powers(E, prec)
    hp = _Powers(h, prec)
    acc = {}
    for (i, k), js in groups.items():
        inner = {}
        for j, c in js.items():
            for e, v in gp.get(j).c.items():
                t = kn.pmul(ctx, c, v[0]) if v[1] == ONE else None
                if t is not None:
                    _acc_poly(ctx, inner, e, t, ONE)
                else:
                    _acc_pair(ctx, inner, e, kn.kmul(ctx, c, ONE, *v))
        if not inner:
            continue
        s = USeries._raw(F, {e: v for e, v in inner.items() if v[0]}, prec)
        s = (s * ep.get(i)).truncate(prec) if i else s
        s = (s * hp.get(k)).truncate(prec) if k else s
        for e, v in s.c.items():
            _acc_pair(ctx, acc, e, v)
    out = USeries._raw(F, {e: v for e, v in acc.items() if v[0]}, prec)
    if f.den != ONE:
        out = out.scale(KElem(F, ONE, f.den))
    return out


def _acc_poly(ctx, acc, e, n, d):
    _acc_pair(ctx, acc, e, (n, d))


def _acc_pair(ctx, acc, e, v):
    if e in acc:
        acc[e] = kn.kadd(ctx, *acc[e], *v)
    else:
        acc[e] = v


class _Powers:
    def __init__(self, s, prec):
        self.s, self.prec = s, prec
        self.cache = {0: USeries.one(s.F, prec), 1: s}

    def get(self, n):
        got = self.cache.get(n)
        if got is None:
            half = self.get(n // 2)
            got = (half * half).truncate(self.prec)
            if n % 2:
                got = (got * self.s).truncate(self.prec)
            self.cache[n] = got
        return got


# ---------------------------------------------------------------- vanishing order

CAP_DEFAULT = 2 ** 14


@dataclass(frozen=True)
class Unresolved:
    """No nonzero coefficient below the precision cap."""

    cap: int

    def __str__(self):
        return f"unresolved at precision cap {self.cap}"


@dataclass(frozen=True)
class NuResult:
    nu: int
    leading: KElem
    precision_used: int


def nu_infty(f, start=None, cap=CAP_DEFAULT):
    """Order of vanishing at infinity, with its leading coefficient.

    Evaluates at increasing precision (doubling from ``start``, default four
    times the largest weight) until a nonzero coefficient appears.  Returns
    ``Unresolved`` when the cap is reached.
    """
    if f.is_zero():
        raise ValueError("nu_infty of the zero form")
    w = max(f.weights())
    N = start or max(4 * w, 8)
    N = min(N, cap)
    while True:
        s = evaluate(f, N)
        if s.c:
            v = s.valuation()
            return NuResult(v, s.coeff(v), N)
        if N >= cap:
            return Unresolved(cap)
        N = min(2 * N, cap)


def modular_bound_holds(f, nu):
    """nu <= w/(q+1) for a depth-0 isobaric form."""
    gr = grading_of(f)
    return nu * (f.F.q + 1) <= gr.w


def evaluate_monomials(F, monos, prec, base=None):
    """u-expansions of several monomials E^i g^j h^k sharing power caches."""
    if base is None:
        base = base_expansions(F, prec)
    E, g, h = (s.truncate(prec) for s in (base.E, base.g, base.h))
    ep, gp, hp = _Powers(E, prec), _Powers(g, prec), _Powers(h, prec)
    out = []
    for i, j, k in monos:
        if i + k >= prec:
            out.append(USeries.zero(F, prec))
            continue
        s = gp.get(j)
        if i:
            s = (s * ep.get(i)).truncate(prec)
        if k:
            s = (s * hp.get(k)).truncate(prec)
        out.append(s)
    return out
