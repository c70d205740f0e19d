"""The Carlitz module and the series u(az) = 1/C_a(1/u)."""

from functools import lru_cache
from itertools import product

from dqm.algebra.kfield import ONE, KElem, ThetaPoly
from dqm.useries.series import USeries


class AdditivePoly:
    """sum c_i x^(q^i) with coefficients in K."""

    __slots__ = ("F", "coeffs")

    def __init__(self, F, coeffs):
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.F = F
        self.coeffs = coeffs

    def degree(self):
        """Degree in x, i.e. q^(len-1)."""
        return self.F.q ** (len(self.coeffs) - 1) if self.coeffs else -1

    def __call__(self, x):
        out = KElem.from_int(self.F, 0)
        for i, c in enumerate(self.coeffs):
            if c:
                out = out + c * x.frobenius(i)
        return out

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        z = KElem.from_int(self.F, 0)
        a = self.coeffs + [z] * (n - len(self.coeffs))
        b = other.coeffs + [z] * (n - len(other.coeffs))
        return AdditivePoly(self.F, [x + y for x, y in zip(a, b)])

    def compose(self, other):
        """(self o other)(x) = self(other(x))."""
        z = KElem.from_int(self.F, 0)
        out = [z] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b.frobenius(i)
        return AdditivePoly(self.F, out)

    def __eq__(self, other):
        return isinstance(other, AdditivePoly) and self.coeffs == other.coeffs

    def __repr__(self):
        return "AdditivePoly(" + ", ".join(str(c) for c in self.coeffs) + ")"


def carlitz_action(a):
    """C_a for a nonzero a in F_q[T], from C_T(x) = T x + x^q."""
    F = a.F
    if a.is_zero():
        raise ValueError("C_0 is not used")
    return AdditivePoly(F, [KElem.raw(F, c, ONE) for c in _carlitz_coeffs(F, a.c)])


@lru_cache(maxsize=None)
def _carlitz_coeffs(F, a):
    # Horner in T: C_a = C_T o C_{a'} + c_0 for a = T a' + c_0
    theta = KElem.theta(F)
    ct = AdditivePoly(F, [theta, KElem.from_int(F, 1)])
    acc = AdditivePoly(F, [])
    for c in reversed(a):
        acc = ct.compose(acc) if acc.coeffs else acc
        acc = acc + AdditivePoly(F, [KElem.from_fq(F, c)])
    out = []
    for c in acc.coeffs:
        if not c.is_polynomial():
            raise ArithmeticError("Carlitz coefficient outside F_q[T]")
        out.append(c.n)
    return tuple(out)


def u_of_az(a, prec):
    """u_a = 1/C_a(1/u) as a series; ``a`` must be monic."""
    F = a.F
    if a.is_zero() or a.c[-1] != 1:
        raise ValueError("u_of_az needs a monic polynomial")
    return _u_of_az(F, a.c, prec)


@lru_cache(maxsize=4096)
def _u_of_az(F, a, prec):
    coeffs = _carlitz_coeffs(F, a)
    d = len(coeffs) - 1
    top = F.q ** d
    if top >= prec:
        return USeries.zero(F, prec)
    # C_a(1/u) = u^(-q^d) (1 + sum_{i<d} c_i u^(q^d - q^i))
    den = {0: (ONE, ONE)}
    for i in range(d):
        if coeffs[i]:
            den[top - F.q ** i] = (coeffs[i], ONE)
    inv = USeries._raw(F, dict(den), prec - top).inverse()
    return inv.shift(top)


def monic_polys(F, degree):
    """Monic polynomials of the given degree, coefficients in lexicographic order."""
    for tail in product(range(F.q), repeat=degree):
        yield ThetaPoly(F, bytes(reversed(tail)) + b"\x01")


def monics_below(F, prec):
    """Monic a with q^deg(a) < prec, ordered by degree then coefficients."""
    d = 0
    while F.q ** d < prec:
        yield from monic_polys(F, d)
        d += 1
