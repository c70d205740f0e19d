"""Truncated power series in u with coefficients in F_q(T)."""

from dqm import kernels as kn
from dqm.algebra.kfield import ONE, KElem, poly_power_p, spread

ZERO = (b"", ONE)


class USeries:
    """A sparse series sum c_i u^i known modulo u^prec.

    ``c`` maps exponents to raw ``(num, den)`` pairs; use :meth:`coeff` for
    ``KElem`` values.
    """

    __slots__ = ("F", "c", "prec")

    def __init__(self, F, coeffs, prec):
        self.F = F
        self.prec = prec
        c = {}
        for i, v in coeffs.items():
            if i >= prec:
                continue
            if isinstance(v, KElem):
                v = (v.n, v.d)
            elif isinstance(v, int):
                a = F.from_int(v)
                v = (bytes([a]) if a else b"", ONE)
            if v[0]:
                c[i] = v
        self.c = c

    @classmethod
    def _raw(cls, F, c, prec):
        obj = cls.__new__(cls)
        obj.F, obj.c, obj.prec = F, c, prec
        return obj

    @classmethod
    def zero(cls, F, prec):
        return cls._raw(F, {}, prec)

    @classmethod
    def one(cls, F, prec):
        return cls._raw(F, {0: (ONE, ONE)} if prec > 0 else {}, prec)

    @classmethod
    def monomial(cls, F, exp, prec, coeff=None):
        v = (ONE, ONE) if coeff is None else (coeff.n, coeff.d)
        return cls._raw(F, {exp: v} if exp < prec and v[0] else {}, prec)

    # -- inspection
    def coeff(self, i):
        n, d = self.c.get(i, ZERO)
        return KElem.raw(self.F, n, d)

    def valuation(self):
        """Smallest exponent with nonzero coefficient, or ``prec`` if none is known."""
        return min(self.c) if self.c else self.prec

    def leading(self):
        v = self.valuation()
        return v, self.coeff(v)

    def is_zero(self):
        return not self.c

    def exponents(self):
        return sorted(self.c)

    def truncate(self, prec):
        if prec >= self.prec:
            return self
        return USeries._raw(self.F, {i: v for i, v in self.c.items() if i < prec}, prec)

    def __eq__(self, other):
        """Equality of the known parts at the common precision."""
        if not isinstance(other, USeries):
            return NotImplemented
        p = min(self.prec, other.prec)
        return self.truncate(p).c == other.truncate(p).c

    def identical(self, other):
        return self.prec == other.prec and self.c == other.c

    def __repr__(self):
        return f"USeries({self.to_text(8)})"

    def to_text(self, limit=None):
        items = sorted(self.c.items())
        parts = []
        for i, (n, d) in items[:limit]:
            parts.append(f"({KElem.raw(self.F, n, d)})*u^{i}")
        if limit is not None and len(items) > limit:
            parts.append("...")
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(u^{self.prec})"

    # -- arithmetic
    def _scalar(self, other):
        if isinstance(other, KElem):
            return other.n, other.d
        if isinstance(other, int):
            a = self.F.from_int(other)
            return (bytes([a]) if a else b""), ONE
        return None

    def __add__(self, other):
        if not isinstance(other, USeries):
            s = self._scalar(other)
            if s is None:
                return NotImplemented
            other = USeries._raw(self.F, {0: s} if s[0] else {}, self.prec)
        ctx = self.F.ctx
        prec = min(self.prec, other.prec)
        out = {i: v for i, v in self.c.items() if i < prec}
        for i, (n, d) in other.c.items():
            if i >= prec:
                continue
            if i in out:
                r = kn.kadd(ctx, *out[i], n, d)
                if r[0]:
                    out[i] = r
                else:
                    del out[i]
            else:
                out[i] = (n, d)
        return USeries._raw(self.F, out, prec)

    __radd__ = __add__

    def __neg__(self):
        ctx = self.F.ctx
        return USeries._raw(self.F, {i: (kn.pneg(ctx, n), d) for i, (n, d) in self.c.items()}, self.prec)

    def __sub__(self, other):
        if isinstance(other, USeries):
            return self + (-other)
        s = self._scalar(other)
        if s is None:
            return NotImplemented
        return self + KElem.raw(self.F, kn.pneg(self.F.ctx, s[0]), s[1])

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, k):
        n2, d2 = k.n, k.d
        if not n2:
            return USeries.zero(self.F, self.prec)
        ctx = self.F.ctx
        return USeries._raw(self.F, {i: kn.kmul(ctx, n, d, n2, d2) for i, (n, d) in self.c.items()}, self.prec)

    def shift(self, k):
        """Multiply by u^k (k may be negative when the valuation allows it)."""
        if self.c and min(self.c) + k < 0:
            raise ValueError("shift below exponent 0")
        return USeries._raw(self.F, {i + k: v for i, v in self.c.items()}, self.prec + k)

    def __mul__(self, other):
        if not isinstance(other, USeries):
            s = self._scalar(other)
            if s is None:
                return NotImplemented
            return self.scale(KElem.raw(self.F, *s))
        v1, v2 = self.valuation(), other.valuation()
        prec = min(self.prec + v2, other.prec + v1)
        return USeries._raw(self.F, _mul_dicts(self.F.ctx, self.c, other.c, prec), prec)

    __rmul__ = __mul__

    def frobenius_p(self, k=1):
        """self^(p^k); precision scales by p^k."""
        F = self.F
        m = F.p ** k
        return USeries._raw(
            F,
            {i * m: (poly_power_p(F, n, k), poly_power_p(F, d, k)) for i, (n, d) in self.c.items()},
            self.prec * m,
        )

    def frobenius(self, k=1):
        """self^(q^k)."""
        m = self.F.q ** k
        return USeries._raw(
            self.F, {i * m: (spread(n, m), spread(d, m)) for i, (n, d) in self.c.items()}, self.prec * m
        )

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return USeries.one(self.F, self.prec)
        # base-p digits: f^e = prod_i (f^(e_i))^(p^i), Frobenius being cheap
        target = self.prec + (e - 1) * self.valuation()
        p = self.F.p
        small = [None, self]
        result = None
        k = 0
        while e:
            d = e % p
            if d:
                while len(small) <= d:
                    small.append(small[-1] * self)
                t = small[d].frobenius_p(k) if k else small[d]
                result = t if result is None else result * t
            e //= p
            k += 1
        return result.truncate(target)

    def inverse(self):
        if 0 not in self.c:
            raise ZeroDivisionError("series with non-unit constant term")
        ctx = self.F.ctx
        N = self.prec
        a0n, a0d = self.c[0]
        inv0 = kn.kinv(ctx, a0n, a0d)
        terms = sorted((i, v) for i, v in self.c.items() if i > 0)
        b = [None] * N
        b[0] = inv0
        out = {0: inv0}
        for n in range(1, N):
            acc = ZERO
            for i, (an, ad) in terms:
                if i > n:
                    break
                bn = b[n - i]
                if bn is not None and bn[0]:
                    acc = kn.kadd(ctx, *acc, *kn.kmul(ctx, an, ad, *bn))
            if acc[0]:
                val = kn.kmul(ctx, kn.pneg(ctx, acc[0]), acc[1], *inv0)
                b[n] = val
                out[n] = val
            else:
                b[n] = ZERO
        return USeries._raw(self.F, out, N)

    def root_1unit(self, n):
        """The unique n-th root congruent to 1, for p not dividing n.

        One-units modulo u^N form a group killed by p^r once p^r >= N, so the
        root is the power with exponent n^(-1) mod p^r.
        """
        p = self.F.p
        if n % p == 0:
            raise ValueError("root index divisible by the characteristic")
        if self.c.get(0) != (ONE, ONE):
            raise ValueError("root_1unit needs constant term 1")
        N = self.prec
        r = 1
        while p ** r < N:
            r += 1
        m = pow(n, -1, p ** r)
        return (self ** m).truncate(N)

    # -- serialization
    def to_json(self):
        return {
            "prec": self.prec,
            "coeffs": [[i, str(KElem.raw(self.F, n, d))] for i, (n, d) in sorted(self.c.items())],
        }

    @classmethod
    def from_json(cls, F, obj):
        from dqm.parser import parse_kelem

        return cls(F, {int(i): parse_kelem(F, s) for i, s in obj["coeffs"]}, int(obj["prec"]))


def _mul_dicts(ctx, a, b, prec):
    if len(a) > len(b):
        a, b = b, a
    bl = sorted(b.items())
    acc = {}
    for i, (n1, d1) in a.items():
        lim = prec - i
        for j, (n2, d2) in bl:
            if j >= lim:
                break
            t = kn.kmul(ctx, n1, d1, n2, d2)
            k = i + j
            if k in acc:
                acc[k] = kn.kadd(ctx, *acc[k], *t)
            else:
                acc[k] = t
    return {k: v for k, v in acc.items() if v[0]}
