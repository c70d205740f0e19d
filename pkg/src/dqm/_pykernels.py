"""Pure-Python kernels for polynomials over F_q and fractions in F_q(T).

Polynomials are ``bytes`` objects, coefficient codes from low to high degree,
without trailing zeros; ``b""`` is the zero polynomial.  A field element code
is the integer whose base-p digits are its coordinates in the modulus basis,
so for prime fields the code is the residue itself.

Fractions are pairs ``(num, den)`` with ``den`` monic and coprime to ``num``.
The compiled module ``dqm._kernels`` implements the same functions.
"""

ONE = b"\x01"


class Ctx:
    """Arithmetic tables of one finite field, shared by every kernel call."""

    __slots__ = ("p", "q", "e", "add", "mul", "neg", "inv", "sub")

    def __init__(self, p, q, e, add, mul, neg, inv):
        self.p = p
        self.q = q
        self.e = e
        self.add = add
        self.mul = mul
        self.neg = neg
        self.inv = inv
        # sub[a*q+b] = a - b
        self.sub = bytes(add[a * q + neg[b]] for a in range(q) for b in range(q))


def make_ctx(p, q, e, add, mul, neg, inv):
    return Ctx(p, q, e, add, mul, neg, inv)


def _strip(c):
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return bytes(c[:n])


def padd(ctx, a, b):
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return a
    if ctx.e == 1:
        p = ctx.p
        c = bytearray(a)
        for i, y in enumerate(b):
            c[i] = (c[i] + y) % p
    else:
        add, q = ctx.add, ctx.q
        c = bytearray(a)
        for i, y in enumerate(b):
            c[i] = add[c[i] * q + y]
    return _strip(c)


def psub(ctx, a, b):
    return padd(ctx, a, pneg(ctx, b))


def pneg(ctx, a):
    if ctx.e == 1:
        p = ctx.p
        return bytes((p - x) % p for x in a)
    neg = ctx.neg
    return bytes(neg[x] for x in a)


def pscale(ctx, a, c):
    if not c or not a:
        return b""
    if c == 1:
        return a
    if ctx.e == 1:
        p = ctx.p
        return bytes(x * c % p for x in a)
    mul, q = ctx.mul, ctx.q
    row = c * q
    return bytes(mul[row + x] for x in a)


def pmul(ctx, a, b):
    if not a or not b:
        return b""
    if len(a) == 1:
        return pscale(ctx, b, a[0])
    if len(b) == 1:
        return pscale(ctx, a, b[0])
    if ctx.e == 1:
        p = ctx.p
        if len(a) > 24 and len(b) > 24:
            return _kronecker_mul(p, a, b)
        acc = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    acc[i + j] += x * y
        return _strip(bytes(v % p for v in acc))
    add, mul, q = ctx.add, ctx.mul, ctx.q
    c = bytearray(len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            row = x * q
            for j, y in enumerate(b):
                if y:
                    c[i + j] = add[c[i + j] * q + mul[row + y]]
    return _strip(c)


def _kronecker_mul(p, a, b):
    # pack into big integers; slot wide enough for min(len)*(p-1)^2
    bound = min(len(a), len(b)) * (p - 1) * (p - 1)
    bits = bound.bit_length() + 1
    ia = int.from_bytes(_spread(a, bits), "little")
    ib = int.from_bytes(_spread(b, bits), "little")
    prod = ia * ib
    n = len(a) + len(b) - 1
    mask = (1 << bits) - 1
    out = bytearray(n)
    for k in range(n):
        out[k] = (prod & mask) % p
        prod >>= bits
    return _strip(out)


def _spread(a, bits):
    total = 0
    for i, x in enumerate(a):
        if x:
            total |= x << (i * bits)
    nbytes = (len(a) * bits + 7) // 8
    return total.to_bytes(nbytes, "little")


def pdivmod(ctx, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return b"", a
    q_ = ctx.q
    db = len(b) - 1
    lead_inv = ctx.inv[b[-1]]
    r = bytearray(a)
    quo = bytearray(len(a) - db)
    if ctx.e == 1:
        p = ctx.p
        for k in range(len(a) - 1, db - 1, -1):
            c = r[k]
            if c:
                c = c * lead_inv % p
                quo[k - db] = c
                off = k - db
                for j in range(db + 1):
                    if b[j]:
                        r[off + j] = (r[off + j] - c * b[j]) % p
    else:
        mul, sub = ctx.mul, ctx.sub
        for k in range(len(a) - 1, db - 1, -1):
            c = r[k]
            if c:
                c = mul[c * q_ + lead_inv]
                quo[k - db] = c
                off = k - db
                row = c * q_
                for j in range(db + 1):
                    if b[j]:
                        r[off + j] = sub[r[off + j] * q_ + mul[row + b[j]]]
    return _strip(quo), _strip(r[:db])


def pmonic(ctx, a):
    """Return ``(lead, a/lead)``; the zero polynomial maps to ``(0, b"")``."""
    if not a:
        return 0, a
    lc = a[-1]
    if lc == 1:
        return 1, a
    return lc, pscale(ctx, a, ctx.inv[lc])


def pgcd(ctx, a, b):
    """Monic gcd."""
    while b:
        if len(b) == 1:
            return ONE
        a, b = b, pdivmod(ctx, a, b)[1]
    return pmonic(ctx, a)[1]


def pdivexact(ctx, a, b):
    quo, rem = pdivmod(ctx, a, b)
    if rem:
        raise ArithmeticError("inexact polynomial division")
    return quo


# ---------------------------------------------------------------- fractions

def kmake(ctx, n, d):
    """Canonical fraction n/d."""
    if not d:
        raise ZeroDivisionError("zero denominator")
    if not n:
        return b"", ONE
    if len(d) > 1:
        g = pgcd(ctx, n, d)
        if len(g) > 1:
            n = pdivexact(ctx, n, g)
            d = pdivexact(ctx, d, g)
    lc = d[-1]
    if lc != 1:
        inv = ctx.inv[lc]
        n = pscale(ctx, n, inv)
        d = pscale(ctx, d, inv)
    return n, d


def kadd(ctx, n1, d1, n2, d2):
    if not n1:
        return n2, d2
    if not n2:
        return n1, d1
    if d1 == d2:
        if d1 == ONE:
            return padd(ctx, n1, n2), ONE
        return kmake(ctx, padd(ctx, n1, n2), d1)
    if d1 == ONE:
        return padd(ctx, pmul(ctx, n1, d2), n2), d2
    if d2 == ONE:
        return padd(ctx, n1, pmul(ctx, n2, d1)), d1
    g = pgcd(ctx, d1, d2)
    if len(g) == 1:
        n = padd(ctx, pmul(ctx, n1, d2), pmul(ctx, n2, d1))
        if not n:
            return b"", ONE
        return n, pmul(ctx, d1, d2)
    d1g = pdivexact(ctx, d1, g)
    d2g = pdivexact(ctx, d2, g)
    n = padd(ctx, pmul(ctx, n1, d2g), pmul(ctx, n2, d1g))
    if not n:
        return b"", ONE
    g2 = pgcd(ctx, n, g)
    if len(g2) > 1:
        n = pdivexact(ctx, n, g2)
        d2 = pdivexact(ctx, d2, g2)
    return n, pmul(ctx, d1g, d2)


def ksub(ctx, n1, d1, n2, d2):
    return kadd(ctx, n1, d1, pneg(ctx, n2), d2)


def kmul(ctx, n1, d1, n2, d2):
    if not n1 or not n2:
        return b"", ONE
    if d1 == ONE and d2 == ONE:
        return pmul(ctx, n1, n2), ONE
    if d2 != ONE:
        g1 = pgcd(ctx, n1, d2)
        if len(g1) > 1:
            n1 = pdivexact(ctx, n1, g1)
            d2 = pdivexact(ctx, d2, g1)
    if d1 != ONE:
        g2 = pgcd(ctx, n2, d1)
        if len(g2) > 1:
            n2 = pdivexact(ctx, n2, g2)
            d1 = pdivexact(ctx, d1, g2)
    return pmul(ctx, n1, n2), pmul(ctx, d1, d2)


def kinv(ctx, n, d):
    if not n:
        raise ZeroDivisionError("inverse of zero in F_q(T)")
    lc = n[-1]
    if lc == 1:
        return d, n
    inv = ctx.inv[lc]
    return pscale(ctx, d, inv), pscale(ctx, n, inv)


def kdiv(ctx, n1, d1, n2, d2):
    n2, d2 = kinv(ctx, n2, d2)
    return kmul(ctx, n1, d1, n2, d2)
