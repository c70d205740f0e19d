"""Eisenstein series g_k and the expansions of E, g, h and Delta."""

from dataclasses import dataclass
from functools import lru_cache

from dqm.algebra.arith import _bracket, _lprod
from dqm.algebra.kfield import ONE, KElem
from dqm.useries.carlitz import _u_of_az, monics_below
from dqm.useries.goss import goss_polynomials
from dqm.useries.series import USeries


def eval_poly_at(F, poly, s, prec):
    """sum_e c_e s^e truncated to prec, for a raw polynomial dict."""
    out = USeries.zero(F, prec)
    if not poly:
        return out
    v = s.valuation()
    power = None
    last = 0
    for e in sorted(poly):
        if v * e >= prec:
            break
        step = s ** (e - last) if power is not None else s ** e
        power = step if power is None else (power * step).truncate(prec)
        last = e
        out = out + power.truncate(prec).scale(KElem.raw(F, *poly[e]))
    return out.truncate(prec)


def goss_sum(F, w, prec):
    """sum over monic a with q^deg(a) < prec of G_w(u_a)."""
    G = goss_polynomials(F, w).polys[w]
    total = USeries.zero(F, prec)
    for a in monics_below(F, prec):
        total = total + eval_poly_at(F, G, _u_of_az(F, a.c, prec), prec)
    return total


@lru_cache(maxsize=256)
def eisenstein_gk(F, k, prec):
    """g_k = 1 + (-1)^k L_k sum_{a monic} G_(q^k-1)(u_a), modulo u^prec."""
    if k < 1:
        raise ValueError("k must be >= 1")
    s = goss_sum(F, F.q ** k - 1, prec)
    c = KElem.raw(F, _lprod(F, k), ONE)
    if k % 2:
        c = -c
    return (s.scale(c) + 1).truncate(prec)


@lru_cache(maxsize=64)
def series_E(F, prec):
    """E = sum over monic a of a * u_a."""
    total = USeries.zero(F, prec)
    for a in monics_below(F, prec):
        total = total + _u_of_az(F, a.c, prec).scale(KElem.raw(F, a.c, ONE))
    return total


@dataclass(frozen=True)
class BaseExpansions:
    E: USeries
    g: USeries
    h: USeries
    Delta: USeries
    prec: int


class ConsistencyError(ArithmeticError):
    pass


def _compute(F, prec):
    q = F.q
    # extracting h from Delta = -h^(q-1) costs q-2 digits of precision
    work = prec + q - 2
    g = eisenstein_gk(F, 1, work)
    g2 = eisenstein_gk(F, 2, work)
    b1 = KElem.raw(F, _bracket(F, 1), ONE)
    delta = (g ** (q + 1) - g2).scale(b1.inverse())
    # Delta = -h^(q-1), h = -u U with U a one-unit
    v = delta.valuation()
    if v != q - 1:
        raise ConsistencyError(f"valuation of Delta is {v}, expected {q - 1}")
    # U^(q-1) = -Delta / (-1)^(q-1) u^(q-1); the sign is -1 in every characteristic
    unit = -delta.shift(-(q - 1))
    if unit.c.get(0) != (ONE, ONE):
        raise ConsistencyError("Delta does not have the expected leading coefficient")
    U = unit.root_1unit(q - 1)
    h = (-U).shift(1).truncate(prec)
    E = series_E(F, prec)
    return BaseExpansions(E, g.truncate(prec), h, delta.truncate(prec), prec)


def cross_checks(F, b):
    """Run the consistency checks; return a dict name -> bool."""
    q = F.q
    out = {}
    prec = b.prec
    x1 = -(b.E * b.g) - b.h
    if prec > q:
        out["x1_leading"] = x1.valuation() == q and x1.coeff(q) == KElem.raw(F, _bracket(F, 1), ONE)
    out["delta_root"] = (-(b.h ** (q - 1))) == b.Delta
    v, c = b.Delta.leading()
    out["delta_leading"] = v == q - 1 and c == KElem.from_int(F, -((-1) ** (q - 1)))
    if prec > 2:
        from dqm.useries.derivation import derive_series

        out["D1h_equals_Eh"] = derive_series(b.h, 1) == (b.E * b.h)
    return out


@lru_cache(maxsize=32)
def _cached(F, prec):
    b = _compute(F, prec)
    bad = [k for k, ok in cross_checks(F, b).items() if not ok]
    if bad:
        raise ConsistencyError("base expansion cross-checks failed: " + ", ".join(bad))
    return b


def base_expansions(F, prec):
    """The u-expansions of E, g, h and Delta modulo u^prec, cross-checked."""
    if prec < F.q ** 2:
        b = _cached(F, F.q ** 2)
        return BaseExpansions(
            b.E.truncate(prec), b.g.truncate(prec), b.h.truncate(prec), b.Delta.truncate(prec), prec
        )
    return _cached(F, prec)
