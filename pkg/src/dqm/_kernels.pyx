# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for polynomials over F_q and fractions in F_q(T).

Same calling conventions as ``dqm._pykernels``: polynomials are ``bytes``
of coefficient codes (low degree first, no trailing zeros), fractions are
``(num, den)`` pairs with monic coprime denominators.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy
from libc.stdint cimport uint8_t, uint64_t
from cpython.bytes cimport PyBytes_FromStringAndSize, PyBytes_AS_STRING, PyBytes_GET_SIZE

ONE = b"\x01"


cdef class Ctx:
    cdef public int p, q, e
    cdef public bytes add, mul, neg, inv, sub
    cdef const uint8_t* tadd
    cdef const uint8_t* tmul
    cdef const uint8_t* tneg
    cdef const uint8_t* tinv
    cdef const uint8_t* tsub

    def __init__(self, int p, int q, int e, bytes add, bytes mul, bytes neg, bytes inv):
        self.p = p
        self.q = q
        self.e = e
        self.add = add
        self.mul = mul
        self.neg = neg
        self.inv = inv
        self.sub = bytes([add[a * q + neg[b]] for a in range(q) for b in range(q)])
        self.tadd = <const uint8_t*> PyBytes_AS_STRING(self.add)
        self.tmul = <const uint8_t*> PyBytes_AS_STRING(self.mul)
        self.tneg = <const uint8_t*> PyBytes_AS_STRING(self.neg)
        self.tinv = <const uint8_t*> PyBytes_AS_STRING(self.inv)
        self.tsub = <const uint8_t*> PyBytes_AS_STRING(self.sub)

    def __reduce__(self):
        return (Ctx, (self.p, self.q, self.e, self.add, self.mul, self.neg, self.inv))


def make_ctx(p, q, e, add, mul, neg, inv):
    return Ctx(p, q, e, bytes(add), bytes(mul), bytes(neg), bytes(inv))


cdef inline Py_ssize_t _deg(const uint8_t* c, Py_ssize_t n) noexcept nogil:
    while n > 0 and c[n - 1] == 0:
        n -= 1
    return n


cdef inline bytes _mk(const uint8_t* c, Py_ssize_t n):
    n = _deg(c, n)
    return PyBytes_FromStringAndSize(<const char*> c, n)


cdef bytes _add(Ctx ctx, bytes a, bytes b):
    cdef Py_ssize_t la = PyBytes_GET_SIZE(a), lb = PyBytes_GET_SIZE(b), i
    if la < lb:
        a, b = b, a
        la, lb = lb, la
    if lb == 0:
        return a
    cdef const uint8_t* pa = <const uint8_t*> PyBytes_AS_STRING(a)
    cdef const uint8_t* pb = <const uint8_t*> PyBytes_AS_STRING(b)
    cdef uint8_t* c = <uint8_t*> malloc(la)
    cdef int q = ctx.q
    memcpy(c, pa, la)
    for i in range(lb):
        c[i] = ctx.tadd[c[i] * q + pb[i]]
    try:
        return _mk(c, la)
    finally:
        free(c)


cdef bytes _neg(Ctx ctx, bytes a):
    cdef Py_ssize_t la = PyBytes_GET_SIZE(a), i
    cdef const uint8_t* pa = <const uint8_t*> PyBytes_AS_STRING(a)
    cdef bytes out = PyBytes_FromStringAndSize(NULL, la)
    cdef uint8_t* c = <uint8_t*> PyBytes_AS_STRING(out)
    for i in range(la):
        c[i] = ctx.tneg[pa[i]]
    return out


cdef bytes _scale(Ctx ctx, bytes a, int s):
    cdef Py_ssize_t la = PyBytes_GET_SIZE(a), i
    if s == 0 or la == 0:
        return b""
    if s == 1:
        return a
    cdef const uint8_t* pa = <const uint8_t*> PyBytes_AS_STRING(a)
    cdef bytes out = PyBytes_FromStringAndSize(NULL, la)
    cdef uint8_t* c = <uint8_t*> PyBytes_AS_STRING(out)
    cdef int row = s * ctx.q
    for i in range(la):
        c[i] = ctx.tmul[row + pa[i]]
    return out


cdef bytes _mul(Ctx ctx, bytes a, bytes b):
    cdef Py_ssize_t la = PyBytes_GET_SIZE(a), lb = PyBytes_GET_SIZE(b), i, j, n
    if la == 0 or lb == 0:
        return b""
    if la == 1:
        return _scale(ctx, b, (<const uint8_t*> PyBytes_AS_STRING(a))[0])
    if lb == 1:
        return _scale(ctx, a, (<const uint8_t*> PyBytes_AS_STRING(b))[0])
    cdef const uint8_t* pa = <const uint8_t*> PyBytes_AS_STRING(a)
    cdef const uint8_t* pb = <const uint8_t*> PyBytes_AS_STRING(b)
    n = la + lb - 1
    cdef uint64_t* acc
    cdef uint8_t* c
    cdef uint64_t x, p
    cdef int q = ctx.q, row
    cdef bytes out = PyBytes_FromStringAndSize(NULL, n)
    c = <uint8_t*> PyBytes_AS_STRING(out)
    if ctx.e == 1:
        p = ctx.p
        acc = <uint64_t*> malloc(n * sizeof(uint64_t))
        for i in range(n):
            acc[i] = 0
        for i in range(la):
            x = pa[i]
            if x:
                for j in range(lb):
                    acc[i + j] += x * pb[j]
        for i in range(n):
            c[i] = <uint8_t> (acc[i] % p)
        free(acc)
    else:
        for i in range(n):
            c[i] = 0
        for i in range(la):
            if pa[i]:
                row = pa[i] * q
                for j in range(lb):
                    if pb[j]:
                        c[i + j] = ctx.tadd[c[i + j] * q + ctx.tmul[row + pb[j]]]
    n = _deg(c, n)
    if n == la + lb - 1:
        return out
    return out[:n]


cdef tuple _divmod(Ctx ctx, bytes a, bytes b):
    cdef Py_ssize_t la = PyBytes_GET_SIZE(a), lb = PyBytes_GET_SIZE(b), k, j, off, db
    if lb == 0:
        raise ZeroDivisionError("polynomial division by zero")
    if la < lb:
        return b"", a
    cdef const uint8_t* pb = <const uint8_t*> PyBytes_AS_STRING(b)
    db = lb - 1
    cdef int q = ctx.q
    cdef int lead_inv = ctx.tinv[pb[db]]
    cdef int c, row, p = ctx.p
    cdef uint8_t* r = <uint8_t*> malloc(la)
    cdef uint8_t* quo = <uint8_t*> malloc(la - db)
    memcpy(r, PyBytes_AS_STRING(a), la)
    for k in range(la - db):
        quo[k] = 0
    if ctx.e == 1:
        for k in range(la - 1, db - 1, -1):
            c = r[k]
            if c:
                c = (c * lead_inv) % p
                quo[k - db] = c
                off = k - db
                for j in range(db + 1):
                    if pb[j]:
                        r[off + j] = (r[off + j] + (p - c) * pb[j]) % p
    else:
        for k in range(la - 1, db - 1, -1):
            c = r[k]
            if c:
                c = ctx.tmul[c * q + lead_inv]
                quo[k - db] = c
                off = k - db
                row = c * q
                for j in range(db + 1):
                    if pb[j]:
                        r[off + j] = ctx.tsub[r[off + j] * q + ctx.tmul[row + pb[j]]]
    try:
        return _mk(quo, la - db), _mk(r, db)
    finally:
        free(r)
        free(quo)


cdef bytes _rem_inplace_gcd(Ctx ctx, bytes a, bytes b):
    # Euclid on private buffers; returns monic gcd
    cdef Py_ssize_t la = PyBytes_GET_SIZE(a), lb = PyBytes_GET_SIZE(b), k, j, off, db, tmpn
    cdef uint8_t* x = <uint8_t*> malloc(la + 1)
    cdef uint8_t* y = <uint8_t*> malloc(lb + 1)
    cdef uint8_t* t
    cdef int q = ctx.q, p = ctx.p, c, lead_inv, row
    cdef bint prime = ctx.e == 1
    memcpy(x, PyBytes_AS_STRING(a), la)
    memcpy(y, PyBytes_AS_STRING(b), lb)
    try:
        while lb > 0:
            if lb == 1:
                return ONE
            # x <- x mod y
            db = lb - 1
            lead_inv = ctx.tinv[y[db]]
            if prime:
                for k in range(la - 1, db - 1, -1):
                    c = x[k]
                    if c:
                        c = (c * lead_inv) % p
                        off = k - db
                        for j in range(db + 1):
                            if y[j]:
                                x[off + j] = (x[off + j] + (p - c) * y[j]) % p
            else:
                for k in range(la - 1, db - 1, -1):
                    c = x[k]
                    if c:
                        c = ctx.tmul[c * q + lead_inv]
                        off = k - db
                        row = c * q
                        for j in range(db + 1):
                            if y[j]:
                                x[off + j] = ctx.tsub[x[off + j] * q + ctx.tmul[row + y[j]]]
            if la > db:
                la = db
            la = _deg(x, la)
            t = x; x = y; y = t
            tmpn = la; la = lb; lb = tmpn
        # x holds gcd of length la
        if la == 0:
            return b""
        lead_inv = ctx.tinv[x[la - 1]]
        row = lead_inv * q
        for k in range(la):
            x[k] = ctx.tmul[row + x[k]]
        return PyBytes_FromStringAndSize(<const char*> x, la)
    finally:
        free(x)
        free(y)


cdef bytes _gcd(Ctx ctx, bytes a, bytes b):
    if PyBytes_GET_SIZE(a) < PyBytes_GET_SIZE(b):
        a, b = b, a
    if PyBytes_GET_SIZE(b) == 0:
        if PyBytes_GET_SIZE(a) == 0:
            return b""
        return _monic(ctx, a)
    return _rem_inplace_gcd(ctx, a, b)


cdef bytes _monic(Ctx ctx, bytes a):
    cdef Py_ssize_t la = PyBytes_GET_SIZE(a)
    if la == 0:
        return a
    cdef int lc = (<const uint8_t*> PyBytes_AS_STRING(a))[la - 1]
    if lc == 1:
        return a
    return _scale(ctx, a, ctx.tinv[lc])


cdef bytes _divexact(Ctx ctx, bytes a, bytes b):
    cdef tuple qr = _divmod(ctx, a, b)
    if PyBytes_GET_SIZE(<bytes> qr[1]) != 0:
        raise ArithmeticError("inexact polynomial division")
    return <bytes> qr[0]


# ---------------------------------------------------------------- public API

def padd(Ctx ctx, bytes a, bytes b):
    return _add(ctx, a, b)


def psub(Ctx ctx, bytes a, bytes b):
    return _add(ctx, a, _neg(ctx, b))


def pneg(Ctx ctx, bytes a):
    return _neg(ctx, a)


def pscale(Ctx ctx, bytes a, int c):
    return _scale(ctx, a, c)


def pmul(Ctx ctx, bytes a, bytes b):
    return _mul(ctx, a, b)


def pdivmod(Ctx ctx, bytes a, bytes b):
    return _divmod(ctx, a, b)


def pmonic(Ctx ctx, bytes a):
    cdef Py_ssize_t la = PyBytes_GET_SIZE(a)
    if la == 0:
        return 0, a
    cdef int lc = (<const uint8_t*> PyBytes_AS_STRING(a))[la - 1]
    return lc, _monic(ctx, a)


def pgcd(Ctx ctx, bytes a, bytes b):
    return _gcd(ctx, a, b)


def pdivexact(Ctx ctx, bytes a, bytes b):
    return _divexact(ctx, a, b)


cdef tuple _kmake(Ctx ctx, bytes n, bytes d):
    cdef bytes g
    cdef int lc
    if PyBytes_GET_SIZE(d) == 0:
        raise ZeroDivisionError("zero denominator")
    if PyBytes_GET_SIZE(n) == 0:
        return b"", ONE
    if PyBytes_GET_SIZE(d) > 1:
        g = _gcd(ctx, d, n)
        if PyBytes_GET_SIZE(g) > 1:
            n = _divexact(ctx, n, g)
            d = _divexact(ctx, d, g)
    lc = (<const uint8_t*> PyBytes_AS_STRING(d))[PyBytes_GET_SIZE(d) - 1]
    if lc != 1:
        lc = ctx.tinv[lc]
        n = _scale(ctx, n, lc)
        d = _scale(ctx, d, lc)
    return n, d


def kmake(Ctx ctx, bytes n, bytes d):
    return _kmake(ctx, n, d)


cdef tuple _kadd(Ctx ctx, bytes n1, bytes d1, bytes n2, bytes d2):
    cdef bytes g, d1g, d2g, n, g2
    if PyBytes_GET_SIZE(n1) == 0:
        return n2, d2
    if PyBytes_GET_SIZE(n2) == 0:
        return n1, d1
    cdef bint one1 = PyBytes_GET_SIZE(d1) == 1
    cdef bint one2 = PyBytes_GET_SIZE(d2) == 1
    if one1 and one2:
        return _add(ctx, n1, n2), ONE
    if one1:
        return _add(ctx, _mul(ctx, n1, d2), n2), d2
    if one2:
        return _add(ctx, n1, _mul(ctx, n2, d1)), d1
    if d1 == d2:
        return _kmake(ctx, _add(ctx, n1, n2), d1)
    g = _gcd(ctx, d1, d2)
    if PyBytes_GET_SIZE(g) == 1:
        n = _add(ctx, _mul(ctx, n1, d2), _mul(ctx, n2, d1))
        if PyBytes_GET_SIZE(n) == 0:
            return b"", ONE
        return n, _mul(ctx, d1, d2)
    d1g = _divexact(ctx, d1, g)
    d2g = _divexact(ctx, d2, g)
    n = _add(ctx, _mul(ctx, n1, d2g), _mul(ctx, n2, d1g))
    if PyBytes_GET_SIZE(n) == 0:
        return b"", ONE
    g2 = _gcd(ctx, g, n)
    if PyBytes_GET_SIZE(g2) > 1:
        n = _divexact(ctx, n, g2)
        d2 = _divexact(ctx, d2, g2)
    return n, _mul(ctx, d1g, d2)


def kadd(Ctx ctx, bytes n1, bytes d1, bytes n2, bytes d2):
    return _kadd(ctx, n1, d1, n2, d2)


def ksub(Ctx ctx, bytes n1, bytes d1, bytes n2, bytes d2):
    return _kadd(ctx, n1, d1, _neg(ctx, n2), d2)


cdef tuple _kmul(Ctx ctx, bytes n1, bytes d1, bytes n2, bytes d2):
    cdef bytes g
    if PyBytes_GET_SIZE(n1) == 0 or PyBytes_GET_SIZE(n2) == 0:
        return b"", ONE
    cdef bint one1 = PyBytes_GET_SIZE(d1) == 1
    cdef bint one2 = PyBytes_GET_SIZE(d2) == 1
    if one1 and one2:
        return _mul(ctx, n1, n2), ONE
    if not one2:
        g = _gcd(ctx, d2, n1)
        if PyBytes_GET_SIZE(g) > 1:
            n1 = _divexact(ctx, n1, g)
            d2 = _divexact(ctx, d2, g)
    if not one1:
        g = _gcd(ctx, d1, n2)
        if PyBytes_GET_SIZE(g) > 1:
            n2 = _divexact(ctx, n2, g)
            d1 = _divexact(ctx, d1, g)
    return _mul(ctx, n1, n2), _mul(ctx, d1, d2)


def kmul(Ctx ctx, bytes n1, bytes d1, bytes n2, bytes d2):
    return _kmul(ctx, n1, d1, n2, d2)


def kinv(Ctx ctx, bytes n, bytes d):
    cdef Py_ssize_t ln = PyBytes_GET_SIZE(n)
    if ln == 0:
        raise ZeroDivisionError("inverse of zero in F_q(T)")
    cdef int lc = (<const uint8_t*> PyBytes_AS_STRING(n))[ln - 1]
    if lc == 1:
        return d, n
    lc = ctx.tinv[lc]
    return _scale(ctx, d, lc), _scale(ctx, n, lc)


def kdiv(Ctx ctx, bytes n1, bytes d1, bytes n2, bytes d2):
    n2, d2 = kinv(ctx, n2, d2)
    return _kmul(ctx, n1, d1, n2, d2)
