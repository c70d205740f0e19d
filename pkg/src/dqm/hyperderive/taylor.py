"""Truncated polynomials in X with form coefficients."""

from dqm import kernels as kn
from dqm.algebra.kfield import KElem
from dqm.forms.qmform import QMForm, _lcm


class TaylorPoly:
    """sum_n c_n X^n modulo X^xprec, with c_n a QMForm."""

    __slots__ = ("F", "c", "xprec")

    def __init__(self, F, coeffs, xprec):
        self.F = F
        self.xprec = xprec
        self.c = {n: f for n, f in coeffs.items() if n < xprec and not f.is_zero()}

    @classmethod
    def const(cls, F, f, xprec):
        return cls(F, {0: f}, xprec)

    def coeff(self, n):
        if n >= self.xprec:
            raise ValueError(f"coefficient X^{n} is beyond the precision X^{self.xprec}")
        return self.c.get(n) or QMForm.zero(self.F)

    def truncate(self, N):
        if N >= self.xprec:
            return self
        return TaylorPoly(self.F, {n: f for n, f in self.c.items() if n < N}, N)

    def support(self):
        return sorted(self.c)

    def __eq__(self, other):
        return isinstance(other, TaylorPoly) and self.xprec == other.xprec and self.c == other.c

    def agrees(self, other):
        """Equality modulo the smaller precision."""
        N = min(self.xprec, other.xprec)
        return self.truncate(N).c == other.truncate(N).c

    # -- arithmetic
    def __add__(self, other):
        N = min(self.xprec, other.xprec)
        out = {n: f for n, f in self.c.items() if n < N}
        for n, f in other.c.items():
            if n < N:
                out[n] = out[n] + f if n in out else f
        return TaylorPoly(self.F, out, N)

    def __neg__(self):
        return TaylorPoly(self.F, {n: -f for n, f in self.c.items()}, self.xprec)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        """Multiply by a KElem or a QMForm."""
        if isinstance(k, KElem):
            return TaylorPoly(self.F, {n: f.scale(k) for n, f in self.c.items()}, self.xprec)
        return TaylorPoly(self.F, {n: f * k for n, f in self.c.items()}, self.xprec)

    def mul(self, other, N=None):
        N = min(self.xprec, other.xprec) if N is None else min(N, self.xprec, other.xprec)
        a = sorted(self.c.items())
        b = sorted(other.c.items())
        buckets = {}
        for n1, f1 in a:
            if n1 >= N:
                break
            for n2, f2 in b:
                n = n1 + n2
                if n >= N:
                    break
                buckets.setdefault(n, []).append(f1 * f2)
        return TaylorPoly(self.F, {n: _sum(self.F, fs) for n, fs in buckets.items()}, N)

    __mul__ = mul

    def coefficient_of_product(self, other, n):
        """The X^n coefficient of self*other without forming the product."""
        acc = []
        for n1, f1 in self.c.items():
            f2 = other.c.get(n - n1)
            if f2 is not None:
                acc.append(f1 * f2)
        return _sum(self.F, acc)

    def frobenius(self, s=1, N=None):
        """self^(q^s): X^n -> X^(n q^s) and coefficients raised to q^s."""
        m = self.F.q ** s
        xprec = self.xprec * m if N is None else min(N, self.xprec * m)
        return TaylorPoly(self.F, {n * m: f.frobenius(s) for n, f in self.c.items() if n * m < xprec}, xprec)

    def power_p(self, k=1, N=None):
        m = self.F.p ** k
        xprec = self.xprec * m if N is None else min(N, self.xprec * m)
        return TaylorPoly(self.F, {n * m: f.power_p(k) for n, f in self.c.items() if n * m < xprec}, xprec)

    def power(self, e, N=None):
        """self^e modulo X^N, using base-p digits and Frobenius."""
        N = self.xprec if N is None else min(N, self.xprec)
        F = self.F
        if e == 0:
            return TaylorPoly(F, {0: QMForm.one(F)}, N)
        p = F.p
        digits = []
        while e:
            digits.append(e % p)
            e //= p
        result = None
        for k, d in enumerate(digits):
            if not d:
                continue
            need = -(-N // p ** k)
            base = self.truncate(need)
            t = base
            for _ in range(d - 1):
                t = t.mul(base)
            if k:
                t = t.power_p(k, N)
            result = t if result is None else result.mul(t, N)
        return result.truncate(N)

    def derivative(self):
        """d/dX; precision drops by one unless p divides the precision."""
        F = self.F
        out = {}
        for n, f in self.c.items():
            if n and n % F.p:
                out[n - 1] = f.scale(KElem.from_int(F, n))
        N = self.xprec if self.xprec % F.p == 0 else self.xprec - 1
        return TaylorPoly(F, out, N)

    def inverse_one_unit(self, N=None):
        """Inverse of a series with constant coefficient 1.

        With q^r >= N, f^(q^r) = 1 mod X^N, so f^-1 = prod_{i<r} (f^(q-1))^(q^i).
        """
        F = self.F
        N = self.xprec if N is None else min(N, self.xprec)
        if self.c.get(0) != QMForm.one(F):
            raise ValueError("constant coefficient must be 1")
        q = F.q
        r = 0
        while q ** r < N:
            r += 1
        g = self.power(q - 1, N)
        result = TaylorPoly(F, {0: QMForm.one(F)}, N)
        for i in range(r):
            need = -(-N // q ** i)
            result = result.mul(g.truncate(need).frobenius(i, N), N)
        return result

    def __repr__(self):
        return f"TaylorPoly({format_taylor(self)})"

    def to_json(self):
        return {"xprec": self.xprec, "coeffs": [[n, f.to_json()["terms"]] for n, f in sorted(self.c.items())]}


def _sum(F, forms):
    """Sum of forms with a single final normalisation."""
    if not forms:
        return QMForm.zero(F)
    if len(forms) == 1:
        return forms[0]
    ctx = F.ctx
    den = forms[0].den
    for f in forms[1:]:
        den = _lcm(ctx, den, f.den)
    out = {}
    for f in forms:
        if f.den == den:
            items = f.t.items()
        else:
            m = kn.pdivexact(ctx, den, f.den)
            items = ((k, kn.pmul(ctx, v, m)) for k, v in f.t.items())
        for k, v in items:
            out[k] = kn.padd(ctx, out[k], v) if k in out else v
    return QMForm._make(F, out, den)


def format_taylor(tp, var="X"):
    if not tp.c:
        return f"O({var}^{tp.xprec})"
    parts = []
    for n, f in sorted(tp.c.items()):
        s = str(f)
        if n == 0:
            parts.append(s if len(f) == 1 else f"({s})")
        else:
            mono = var if n == 1 else f"{var}^{n}"
            parts.append(f"({s})*{mono}")
    return " + ".join(parts) + f" + O({var}^{tp.xprec})"
