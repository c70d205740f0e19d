"""Hyperderivatives acting directly on u-expansions.

The Taylor map sends u to T_X(u) = sum_n G_(n+1)(u) X^n and is
multiplicative, so D_n(sum c_m u^m) = sum c_m [X^n] T_X(u)^m.  This is
independent of the symbolic engine and serves as its oracle.
"""

from dqm import kernels as kn
from dqm.algebra.kfield import ONE
from dqm.useries.goss import goss_polynomials
from dqm.useries.series import USeries

_CACHE = {}


def _add_into(ctx, acc, e, v):
    if e in acc:
        r = kn.kadd(ctx, *acc[e], *v)
        if r[0]:
            acc[e] = r
        else:
            del acc[e]
    else:
        acc[e] = v


def _power_table(F, n, prec):
    """[X^n] T_X(u)^m for m < prec, each a dict exponent -> pair."""
    key = (F, n, prec)
    got = _CACHE.get(key)
    if got is not None:
        return got
    for (F2, n2, p2), tab in _CACHE.items():
        if F2 == F and n2 == n and p2 >= prec:
            out = [{e: v for e, v in d.items() if e < prec} for d in tab[:prec]]
            _CACHE[key] = out
            return out
    ctx = F.ctx
    G = goss_polynomials(F, n + 1).polys
    tu = [G[k + 1] for k in range(n + 1)]
    cur = [{0: (ONE, ONE)}] + [{} for _ in range(n)]
    table = [dict(cur[n])]
    for m in range(1, prec):
        nxt = [{} for _ in range(n + 1)]
        for i, row in enumerate(cur):
            if not row:
                continue
            for k in range(n + 1 - i):
                tk = tu[k]
                acc = nxt[i + k]
                for e1, v1 in row.items():
                    for e2, v2 in tk.items():
                        e = e1 + e2
                        if e < prec:
                            _add_into(ctx, acc, e, kn.kmul(ctx, *v1, *v2))
        cur = nxt
        table.append(dict(cur[n]))
    _CACHE[key] = table
    return table


def derive_series(s, n):
    """D_n applied to a u-series; precision is preserved."""
    F, ctx = s.F, s.F.ctx
    if n == 0:
        return s
    prec = s.prec
    table = _power_table(F, n, prec)
    acc = {}
    for m, c in s.c.items():
        for e, v in table[m].items():
            _add_into(ctx, acc, e, kn.kmul(ctx, *c, *v))
    return USeries._raw(F, acc, prec)
