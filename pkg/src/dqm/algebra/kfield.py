"""Polynomials in T over F_q and the rational function field K = F_q(T).

``ThetaPoly`` and ``KElem`` are thin immutable wrappers around the ``bytes``
encoding used by the kernels.  Hot loops elsewhere work with the raw
``(num, den)`` pairs and call :mod:`dqm.kernels` directly.
"""

from dqm import kernels as kn

ONE = kn.ONE


def _format_coeff(F, c):
    """Return (sign, text) with text '' for a unit coefficient."""
    if F.e == 1:
        if c > F.p // 2 and F.p > 2:
            c = F.p - c
            return "-", "" if c == 1 else str(c)
        return "+", "" if c == 1 else str(c)
    if c == 1:
        return "+", ""
    if c == F.neg(1):
        return "-", ""
    s = F.format_elem(c)
    if "+" in s:
        s = f"({s})"
    return "+", s


def format_poly(F, c, var="T"):
    if not c:
        return "0"
    out = []
    for i in range(len(c) - 1, -1, -1):
        a = c[i]
        if not a:
            continue
        sign, txt = _format_coeff(F, a)
        if i == 0:
            mono = txt or "1"
        else:
            pw = var if i == 1 else f"{var}^{i}"
            mono = f"{txt}*{pw}" if txt else pw
        if not out:
            out.append(mono if sign == "+" else "-" + mono)
        else:
            out.append(("+" if sign == "+" else "-") + mono)
    return "".join(out)


def _strip(c):
    c = bytes(c)
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return c[:n]


def _nterms(c):
    return sum(1 for x in c if x)


def spread(c, m):
    """Substitute T -> T^m in a coefficient string."""
    if m == 1 or len(c) <= 1:
        return c
    out = bytearray((len(c) - 1) * m + 1)
    out[::m] = c
    return bytes(out)


def frob_coeffs(F, c, k=1):
    """Apply x -> x^(p^k) to each coefficient (identity on prime fields)."""
    if F.e == 1 or k % F.e == 0:
        return c
    return bytes(F.frobenius(a, k) for a in c)


def poly_power_p(F, c, k=1):
    """c^(p^k) for a polynomial over F_q."""
    return spread(frob_coeffs(F, c, k), F.p ** k)


def poly_root_p(F, c):
    """The p-th root of c, or None when c is not a p-th power."""
    p = F.p
    if any(c[i] for i in range(len(c)) if i % p):
        return None
    sub = c[::p]
    return frob_coeffs(F, sub, F.e - 1) if F.e > 1 else sub


class ThetaPoly:
    """A polynomial in T over F_q."""

    __slots__ = ("F", "c")

    def __init__(self, F, coeffs=b""):
        if isinstance(coeffs, (bytes, bytearray)):
            c = bytes(coeffs)
        else:
            c = bytes(int(x) for x in coeffs)
        n = len(c)
        while n and not c[n - 1]:
            n -= 1
        self.F = F
        self.c = c[:n]

    @classmethod
    def T(cls, F):
        return cls(F, b"\x00\x01")

    @classmethod
    def const(cls, F, a):
        return cls(F, bytes([a]) if a else b"")

    def degree(self):
        return len(self.c) - 1

    def is_zero(self):
        return not self.c

    def coefficients(self):
        return list(self.c)

    def _coerce(self, other):
        if isinstance(other, ThetaPoly):
            return other.c
        if isinstance(other, int):
            a = self.F.from_int(other)
            return bytes([a]) if a else b""
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ThetaPoly(self.F, kn.padd(self.F.ctx, self.c, o))

    __radd__ = __add__

    def __neg__(self):
        return ThetaPoly(self.F, kn.pneg(self.F.ctx, self.c))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ThetaPoly(self.F, kn.psub(self.F.ctx, self.c, o))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ThetaPoly(self.F, kn.pmul(self.F.ctx, self.c, o))

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = ONE, self.c
        while n:
            if n & 1:
                result = kn.pmul(self.F.ctx, result, base)
            n >>= 1
            if n:
                base = kn.pmul(self.F.ctx, base, base)
        return ThetaPoly(self.F, result)

    def __divmod__(self, other):
        o = self._coerce(other)
        qq, r = kn.pdivmod(self.F.ctx, self.c, o)
        return ThetaPoly(self.F, qq), ThetaPoly(self.F, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def gcd(self, other):
        return ThetaPoly(self.F, kn.pgcd(self.F.ctx, self.c, self._coerce(other)))

    def monic(self):
        return ThetaPoly(self.F, kn.pmonic(self.F.ctx, self.c)[1])

    def frobenius(self, k=1):
        """self^(q^k), i.e. T -> T^(q^k)."""
        return ThetaPoly(self.F, spread(self.c, self.F.q ** k))

    def __eq__(self, other):
        if isinstance(other, int):
            other = ThetaPoly.const(self.F, self.F.from_int(other))
        return isinstance(other, ThetaPoly) and self.F == other.F and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __str__(self):
        return format_poly(self.F, self.c)

    def __repr__(self):
        return f"ThetaPoly({self})"


class KElem:
    """An element n/d of F_q(T), kept with d monic and gcd(n, d) = 1."""

    __slots__ = ("F", "n", "d")

    def __init__(self, F, n=b"", d=ONE, normalize=True):
        if isinstance(n, ThetaPoly):
            n = n.c
        if isinstance(d, ThetaPoly):
            d = d.c
        if normalize:
            n, d = kn.kmake(F.ctx, _strip(n), _strip(d))
        self.F, self.n, self.d = F, n, d

    @classmethod
    def raw(cls, F, n, d):
        obj = cls.__new__(cls)
        obj.F, obj.n, obj.d = F, n, d
        return obj

    @classmethod
    def from_int(cls, F, a):
        a = F.from_int(a)
        return cls.raw(F, bytes([a]) if a else b"", ONE)

    @classmethod
    def from_fq(cls, F, a):
        return cls.raw(F, bytes([a]) if a else b"", ONE)

    @classmethod
    def theta(cls, F):
        return cls.raw(F, b"\x00\x01", ONE)

    @property
    def numerator(self):
        return ThetaPoly(self.F, self.n)

    @property
    def denominator(self):
        return ThetaPoly(self.F, self.d)

    def is_zero(self):
        return not self.n

    def is_one(self):
        return self.n == ONE and self.d == ONE

    def is_polynomial(self):
        return self.d == ONE

    def pair(self):
        return self.n, self.d

    def _coerce(self, other):
        if isinstance(other, KElem):
            return other.n, other.d
        if isinstance(other, int):
            a = self.F.from_int(other)
            return (bytes([a]) if a else b""), ONE
        if isinstance(other, ThetaPoly):
            return other.c, ONE
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return KElem.raw(self.F, *kn.kadd(self.F.ctx, self.n, self.d, *o))

    __radd__ = __add__

    def __neg__(self):
        return KElem.raw(self.F, kn.pneg(self.F.ctx, self.n), self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return KElem.raw(self.F, *kn.ksub(self.F.ctx, self.n, self.d, *o))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return KElem.raw(self.F, *kn.kmul(self.F.ctx, self.n, self.d, *o))

    __rmul__ = __mul__

    def inverse(self):
        return KElem.raw(self.F, *kn.kinv(self.F.ctx, self.n, self.d))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return KElem.raw(self.F, *kn.kdiv(self.F.ctx, self.n, self.d, *o))

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        ctx = self.F.ctx
        rn, rd = ONE, ONE
        bn, bd = self.n, self.d
        while n:
            if n & 1:
                rn, rd = kn.pmul(ctx, rn, bn), kn.pmul(ctx, rd, bd)
            n >>= 1
            if n:
                bn, bd = kn.pmul(ctx, bn, bn), kn.pmul(ctx, bd, bd)
        # powers of coprime polynomials stay coprime
        return KElem.raw(self.F, rn, rd)

    def frobenius(self, k=1):
        """self^(q^k)."""
        m = self.F.q ** k
        return KElem.raw(self.F, spread(self.n, m), spread(self.d, m))

    def power_p(self, k=1):
        """self^(p^k)."""
        return KElem.raw(self.F, poly_power_p(self.F, self.n, k), poly_power_p(self.F, self.d, k))

    def root_p(self):
        """The p-th root in K, or None."""
        n = poly_root_p(self.F, self.n)
        d = poly_root_p(self.F, self.d)
        if n is None or d is None:
            return None
        return KElem.raw(self.F, n, d)

    def __eq__(self, other):
        if isinstance(other, KElem):
            return self.n == other.n and self.d == other.d and self.F == other.F
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self.n, self.d) == o

    def __hash__(self):
        return hash((self.n, self.d))

    def __bool__(self):
        return bool(self.n)

    def __str__(self):
        num = format_poly(self.F, self.n)
        if self.d == ONE:
            return num
        den = format_poly(self.F, self.d)
        if _nterms(self.n) > 1:
            num = f"({num})"
        if _nterms(self.d) > 1:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"KElem({self})"

    @classmethod
    def parse(cls, F, text):
        from dqm.parser import parse_kelem

        return parse_kelem(F, text)
