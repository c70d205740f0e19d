"""Brackets [k], the products L_k, Carlitz factorials and binomials mod p."""

from functools import lru_cache

from dqm import kernels as kn
from dqm.algebra.kfield import ONE, ThetaPoly, spread


@lru_cache(maxsize=None)
def _bracket(F, k):
    if k == 0:
        return ONE
    c = bytearray(F.q ** k + 1)
    c[-1] = 1
    c[1] = F.neg(1)
    return bytes(c)


@lru_cache(maxsize=None)
def _lprod(F, k):
    out = ONE
    for i in range(1, k + 1):
        out = kn.pmul(F.ctx, out, _bracket(F, i))
    return out


@lru_cache(maxsize=None)
def _carlitz_factorial(F, i):
    if i == 0:
        return ONE
    prev = _carlitz_factorial(F, i - 1)
    return kn.pmul(F.ctx, _bracket(F, i), spread(prev, F.q))


def bracket(F, k):
    """[k] = T^(q^k) - T, with [0] = 1."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return ThetaPoly(F, _bracket(F, k))


def lprod(F, k):
    """L_k = [k][k-1]...[1], with L_0 = 1."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return ThetaPoly(F, _lprod(F, k))


def carlitz_factorial(F, i):
    """D_i = [i] * D_(i-1)^q, D_0 = 1."""
    if i < 0:
        raise ValueError("i must be >= 0")
    return ThetaPoly(F, _carlitz_factorial(F, i))


def binom_char_p(n, i, p):
    """binom(n, i) mod p for any integer n and i >= 0.

    Non-negative n goes through Lucas' theorem.  Negative n uses the
    falling-product convention n(n-1)...(n-i+1)/i!, which equals
    (-1)^i binom(i-n-1, i).
    """
    if i < 0:
        return 0
    if n < 0:
        r = binom_char_p(i - n - 1, i, p)
        return (p - r) % p if i % 2 else r
    result = 1
    while i:
        ni, ii = n % p, i % p
        if ii > ni:
            return 0
        result = result * _small_binom(ni, ii) % p
        n //= p
        i //= p
    return result


@lru_cache(maxsize=4096)
def _small_binom(n, k):
    from math import comb

    return comb(n, k)
