"""Finite fields F_q, q = p^e, with table-driven arithmetic.

An element is an integer code in ``range(q)`` whose base-p digits are its
coordinates in the basis 1, w, ..., w^(e-1), where w is a root of the
modulus.  For prime fields the code is the residue.
"""

from functools import lru_cache
from itertools import product

from dqm import kernels

MAX_Q = 256


def is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _fp_poly_rem(a, m, p):
    # a, m: coefficient lists low->high over F_p, m monic
    a = list(a)
    dm = len(m) - 1
    for k in range(len(a) - 1, dm - 1, -1):
        c = a[k] % p
        if c:
            for j in range(dm + 1):
                a[k - dm + j] = (a[k - dm + j] - c * m[j]) % p
    a = [x % p for x in a[:dm]]
    while a and not a[-1]:
        a.pop()
    return a


def is_irreducible_fp(m, p):
    """Trial division of the monic polynomial ``m`` (list, low->high) by all
    monic polynomials of degree 1..deg(m)//2."""
    d = len(m) - 1
    if d < 1 or m[-1] % p != 1:
        return False
    for k in range(1, d // 2 + 1):
        for tail in product(range(p), repeat=k):
            if not _fp_poly_rem(m, list(tail) + [1], p):
                return False
    return True


def default_modulus(p, e):
    """Lexicographically first monic irreducible of degree e over F_p
    (tail coefficients read as a base-p number, smallest first)."""
    for n in range(p ** e):
        tail = [(n // p ** i) % p for i in range(e)]
        m = tail + [1]
        if is_irreducible_fp(m, p):
            return tuple(m)
    raise ValueError(f"no irreducible polynomial of degree {e} over F_{p}")


class FiniteField:
    """The field F_q with q = p^e.

    >>> F = FiniteField(2, 2)
    >>> F.q, F.modulus
    (4, (1, 1, 1))
    >>> F.mul(2, 2)  # w*w = w + 1
    3
    """

    def __init__(self, p, e=1, modulus=None):
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        q = p ** e
        if q > MAX_Q:
            raise ValueError(f"q={q} exceeds the supported maximum {MAX_Q}")
        if e == 1:
            modulus = (0, 1)
        elif modulus is None:
            modulus = default_modulus(p, e)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != e + 1 or not is_irreducible_fp(list(modulus), p):
                raise ValueError(f"modulus {modulus} is not a monic irreducible of degree {e}")
        self.p, self.e, self.q, self.modulus = p, e, q, modulus
        self._build_tables()

    def _build_tables(self):
        p, e, q = self.p, self.e, self.q
        vecs = [[(c // p ** i) % p for i in range(e)] for c in range(q)]

        def code(v):
            return sum((x % p) * p ** i for i, x in enumerate(v))

        add = bytearray(q * q)
        mul = bytearray(q * q)
        for a in range(q):
            va = vecs[a]
            for b in range(q):
                vb = vecs[b]
                add[a * q + b] = code([x + y for x, y in zip(va, vb)])
                if e == 1:
                    mul[a * q + b] = a * b % p
                else:
                    prod_ = [0] * (2 * e - 1)
                    for i, x in enumerate(va):
                        if x:
                            for j, y in enumerate(vb):
                                prod_[i + j] += x * y
                    r = _fp_poly_rem(prod_, list(self.modulus), p)
                    mul[a * q + b] = code(r + [0] * (e - len(r)))
        neg = bytes(code([-x for x in vecs[a]]) for a in range(q))
        inv = bytearray(q)
        for a in range(1, q):
            for b in range(1, q):
                if mul[a * q + b] == 1:
                    inv[a] = b
                    break
        self.add_table, self.mul_table = bytes(add), bytes(mul)
        self.neg_table, self.inv_table = neg, bytes(inv)
        self.ctx = kernels.make_ctx(p, q, e, self.add_table, self.mul_table, neg, bytes(inv))

    # -- element arithmetic on codes
    def add(self, a, b):
        return self.add_table[a * self.q + b]

    def sub(self, a, b):
        return self.add_table[a * self.q + self.neg_table[b]]

    def neg(self, a):
        return self.neg_table[a]

    def mul(self, a, b):
        return self.mul_table[a * self.q + b]

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of 0 in F_q")
        return self.inv_table[a]

    def pow(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        r = 1
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def frobenius(self, a, k=1):
        """a^(p^k)."""
        return self.pow(a, self.p ** (k % self.e)) if self.e > 1 else a

    def from_int(self, n):
        return n % self.p

    def elements(self):
        return range(self.q)

    # -- text form
    def format_elem(self, a):
        if self.e == 1:
            return str(a)
        p = self.p
        parts = []
        for i in range(self.e):
            c = (a // p ** i) % p
            if c:
                if i == 0:
                    parts.append(str(c))
                elif i == 1:
                    parts.append("w" if c == 1 else f"{c}*w")
                else:
                    parts.append(f"w^{i}" if c == 1 else f"{c}*w^{i}")
        return "+".join(parts) if parts else "0"

    def gen(self):
        """Code of the root w of the modulus (e > 1) or 1."""
        return self.p if self.e > 1 else 1

    def descriptor(self):
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus) if self.e > 1 else None}

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.e, self.modulus) == (
            other.p,
            other.e,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        if self.e == 1:
            return f"FiniteField({self.p})"
        return f"FiniteField({self.p}, {self.e}, modulus={self.modulus})"

    def __reduce__(self):
        return (get_field, (self.p, self.e, self.modulus if self.e > 1 else None))


@lru_cache(maxsize=None)
def get_field(p, e=1, modulus=None):
    """Shared instance per (p, e, modulus)."""
    if modulus is not None:
        modulus = tuple(modulus)
    return FiniteField(p, e, modulus)
