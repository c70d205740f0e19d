"""Quasi-modular forms as sparse polynomials in E, g, h over K.

A form is stored as ``{(i, j, k): numerator}`` over one common monic
denominator, kept coprime to the numerators.  The exponent ``k`` of h may
be negative for intermediate values (Delta^-1 = -h^(1-q)); public results
are checked to be polynomial where that matters.
"""

from dataclasses import dataclass

from dqm import kernels as kn
from dqm.algebra.kfield import ONE, KElem, spread

GENERATORS = {"E": (1, 0, 0), "g": (0, 1, 0), "h": (0, 0, 1)}


def _lcm(ctx, a, b):
    if a == b or b == ONE:
        return a
    if a == ONE:
        return b
    g = kn.pgcd(ctx, a, b)
    return kn.pmul(ctx, kn.pdivexact(ctx, a, g), b)


def _normalize(F, t, den):
    """Canonical (terms, den): zero terms dropped, den monic and coprime."""
    ctx = F.ctx
    t = {m: c for m, c in t.items() if c}
    if not t:
        return {}, ONE
    if den != ONE:
        g = den
        for c in t.values():
            g = kn.pgcd(ctx, g, c)
            if len(g) == 1:
                break
        if len(g) > 1:
            den = kn.pdivexact(ctx, den, g)
            t = {m: kn.pdivexact(ctx, c, g) for m, c in t.items()}
        lc = den[-1]
        if lc != 1:
            inv = F.inv(lc)
            den = kn.pscale(ctx, den, inv)
            t = {m: kn.pscale(ctx, c, inv) for m, c in t.items()}
    return t, den


@dataclass(frozen=True)
class Grading:
    w: int
    m: int
    l: int
    d: int


class QMForm:
    __slots__ = ("F", "t", "den")

    def __init__(self, F, terms=None, den=ONE):
        """``terms`` maps (i, j, k) to KElem/int coefficients or raw numerators."""
        self.F = F
        if not terms:
            self.t, self.den = {}, ONE
            return
        ctx = F.ctx
        raw = {}
        common = den
        pairs = {}
        for m, c in terms.items():
            if isinstance(c, KElem):
                pairs[m] = (c.n, c.d)
            elif isinstance(c, int):
                a = F.from_int(c)
                pairs[m] = (bytes([a]) if a else b"", ONE)
            else:
                pairs[m] = (bytes(c), ONE)
        if den != ONE:
            pairs = {m: kn.kmul(ctx, n, d, ONE, den) for m, (n, d) in pairs.items()}
            common = ONE
        for n, d in pairs.values():
            if n:
                common = _lcm(ctx, common, d)
        for m, (n, d) in pairs.items():
            if n:
                raw[tuple(m)] = kn.pmul(ctx, n, kn.pdivexact(ctx, common, d)) if d != common else n
        self.t, self.den = _normalize(F, raw, common)

    @classmethod
    def _raw(cls, F, t, den):
        obj = cls.__new__(cls)
        obj.F, obj.t, obj.den = F, t, den
        return obj

    @classmethod
    def _make(cls, F, t, den):
        t, den = _normalize(F, t, den)
        return cls._raw(F, t, den)

    # -- constructors
    @classmethod
    def zero(cls, F):
        return cls._raw(F, {}, ONE)

    @classmethod
    def one(cls, F):
        return cls._raw(F, {(0, 0, 0): ONE}, ONE)

    @classmethod
    def gen(cls, F, name):
        return cls._raw(F, {GENERATORS[name]: ONE}, ONE)

    @classmethod
    def const(cls, F, c):
        if isinstance(c, int):
            c = KElem.from_int(F, c)
        if not c:
            return cls.zero(F)
        return cls._raw(F, {(0, 0, 0): c.n}, c.d)

    @classmethod
    def monomial(cls, F, i, j, k, c=None):
        if c is None:
            return cls._raw(F, {(i, j, k): ONE}, ONE)
        if isinstance(c, int):
            c = KElem.from_int(F, c)
        if not c:
            return cls.zero(F)
        return cls._raw(F, {(i, j, k): c.n}, c.d)

    # -- inspection
    def coeff(self, i, j, k):
        n = self.t.get((i, j, k))
        if not n:
            return KElem.from_int(self.F, 0)
        return KElem(self.F, n, self.den)

    @property
    def terms(self):
        return {m: KElem(self.F, n, self.den) for m, n in self.t.items()}

    def monomials(self):
        return sorted(self.t, reverse=True)

    def is_zero(self):
        return not self.t

    def is_polynomial(self):
        return all(k >= 0 for _, _, k in self.t)

    def depth(self):
        return max((i for i, _, _ in self.t), default=-1)

    def degree_in(self, var):
        idx = "Egh".index(var)
        return max((m[idx] for m in self.t), default=-1)

    def is_constant(self):
        return not self.t or list(self.t) == [(0, 0, 0)]

    def __len__(self):
        return len(self.t)

    def __eq__(self, other):
        if isinstance(other, int):
            other = QMForm.const(self.F, other)
        if isinstance(other, KElem):
            other = QMForm.const(self.F, other)
        return isinstance(other, QMForm) and self.t == other.t and self.den == other.den

    def __hash__(self):
        return hash((frozenset(self.t.items()), self.den))

    # -- arithmetic
    def _coerce(self, other):
        if isinstance(other, QMForm):
            return other
        if isinstance(other, (int, KElem)):
            return QMForm.const(self.F, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.t:
            return self
        if not self.t:
            return other
        ctx = self.F.ctx
        d1, d2 = self.den, other.den
        if d1 == d2:
            out = dict(self.t)
            for m, c in other.t.items():
                out[m] = kn.padd(ctx, out[m], c) if m in out else c
            return QMForm._make(self.F, out, d1)
        den = _lcm(ctx, d1, d2)
        f1 = kn.pdivexact(ctx, den, d1)
        f2 = kn.pdivexact(ctx, den, d2)
        out = {m: kn.pmul(ctx, c, f1) for m, c in self.t.items()}
        for m, c in other.t.items():
            c = kn.pmul(ctx, c, f2)
            out[m] = kn.padd(ctx, out[m], c) if m in out else c
        return QMForm._make(self.F, out, den)

    __radd__ = __add__

    def __neg__(self):
        ctx = self.F.ctx
        return QMForm._raw(self.F, {m: kn.pneg(ctx, c) for m, c in self.t.items()}, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        if isinstance(c, int):
            c = KElem.from_int(self.F, c)
        if not c or not self.t:
            return QMForm.zero(self.F)
        ctx = self.F.ctx
        n, d = c.n, c.d
        t = {m: kn.pmul(ctx, v, n) for m, v in self.t.items()} if n != ONE else self.t
        return QMForm._make(self.F, t, kn.pmul(ctx, self.den, d))

    def __mul__(self, other):
        if isinstance(other, (int, KElem)):
            return self.scale(other)
        if not isinstance(other, QMForm):
            return NotImplemented
        if not self.t or not other.t:
            return QMForm.zero(self.F)
        ctx = self.F.ctx
        a, b = self.t, other.t
        if len(a) > len(b):
            a, b = b, a
        out = {}
        padd, pmul = kn.padd, kn.pmul
        bl = list(b.items())
        for (i1, j1, k1), c1 in a.items():
            for (i2, j2, k2), c2 in bl:
                m = (i1 + i2, j1 + j2, k1 + k2)
                v = pmul(ctx, c1, c2)
                if m in out:
                    out[m] = padd(ctx, out[m], v)
                else:
                    out[m] = v
        den = pmul(ctx, self.den, other.den)
        return QMForm._make(self.F, out, den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, KElem)):
            if isinstance(other, int):
                other = KElem.from_int(self.F, other)
            return self.scale(other.inverse())
        return NotImplemented

    def __pow__(self, e):
        if e < 0:
            inv = self.monomial_inverse()
            return inv ** (-e)
        if e == 0:
            return QMForm.one(self.F)
        p = self.F.p
        result = None
        small = [None, self]
        k = 0
        while e:
            d = e % p
            if d:
                while len(small) <= d:
                    small.append(small[-1] * self)
                t = small[d].power_p(k) if k else small[d]
                result = t if result is None else result * t
            e //= p
            k += 1
        return result

    def monomial_inverse(self):
        """Inverse of a single term c E^i g^j h^k (used for Delta^-1)."""
        if len(self.t) != 1:
            raise ArithmeticError("only monomials are invertible")
        ((i, j, k), n), = self.t.items()
        if i or j:
            raise ArithmeticError("only c h^k is invertible in K[E, g, h, 1/h]")
        inv = KElem(self.F, n, self.den).inverse()
        return QMForm._raw(self.F, {(0, 0, -k): inv.n}, inv.d)

    def frobenius(self, s=1):
        """self^(q^s): exponents times q^s and T -> T^(q^s) in coefficients."""
        m = self.F.q ** s
        if s == 0:
            return self
        return QMForm._raw(
            self.F,
            {(i * m, j * m, k * m): spread(c, m) for (i, j, k), c in self.t.items()},
            spread(self.den, m),
        )

    def power_p(self, k=1):
        """self^(p^k)."""
        from dqm.algebra.kfield import poly_power_p

        if k == 0:
            return self
        F = self.F
        m = F.p ** k
        return QMForm._raw(
            F,
            {(i * m, j * m, kk * m): poly_power_p(F, c, k) for (i, j, kk), c in self.t.items()},
            poly_power_p(F, self.den, k),
        )

    def root_p(self):
        """The p-th root inside K[E, g, h], or None."""
        from dqm.algebra.kfield import poly_root_p

        F = self.F
        p = F.p
        out = {}
        for (i, j, k), c in self.t.items():
            if i % p or j % p or k % p:
                return None
            r = poly_root_p(F, c)
            if r is None:
                return None
            out[(i // p, j // p, k // p)] = r
        den = poly_root_p(F, self.den)
        if den is None:
            return None
        return QMForm._raw(F, out, den)

    def partial_E(self, j):
        """Coefficient of X^j in f(E + X, g, h)."""
        from dqm.algebra.arith import binom_char_p

        F = self.F
        p = F.p
        out = {}
        for (i, jj, k), c in self.t.items():
            if i < j:
                continue
            b = binom_char_p(i, j, p)
            if b:
                out[(i - j, jj, k)] = kn.pscale(F.ctx, c, F.from_int(b))
        return QMForm._make(F, out, self.den)

    def map_coeffs(self, fn):
        """Apply fn to each coefficient (as KElem) and rebuild."""
        return QMForm(self.F, {m: fn(c) for m, c in self.terms.items()})

    def weights(self):
        q = self.F.q
        return {2 * i + (q - 1) * j + (q + 1) * k for i, j, k in self.t}

    # -- text
    def __str__(self):
        from dqm.parser import format_form

        return format_form(self)

    def __repr__(self):
        return f"QMForm({self})"

    def to_json(self):
        return {
            "q": self.F.descriptor(),
            "terms": [[i, j, k, str(c)] for (i, j, k), c in sorted(self.terms.items(), reverse=True)],
        }

    @classmethod
    def from_json(cls, obj, F=None):
        from dqm.algebra.field import get_field
        from dqm.parser import parse_kelem

        if F is None:
            d = obj["q"]
            F = get_field(d["p"], d["e"], tuple(d["modulus"]) if d.get("modulus") else None)
        return cls(F, {(int(i), int(j), int(k)): parse_kelem(F, s) for i, j, k, s in obj["terms"]})


def grading_of(f):
    """Grading(w, m, l, d) if f is isobaric of one type, else "inhomogeneous"."""
    if f.is_zero():
        raise ValueError("the zero form has no grading")
    q = f.F.q
    wm = set()
    for i, j, k in f.t:
        wm.add((2 * i + (q - 1) * j + (q + 1) * k, (i + k) % (q - 1)))
    if len(wm) != 1:
        return "inhomogeneous"
    (w, m), = wm
    l = f.depth()
    return Grading(w, m, l, w - l)
