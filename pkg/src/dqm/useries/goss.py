"""Goss polynomials G_n over K."""

from dqm import kernels as kn
from dqm.algebra.arith import _carlitz_factorial
from dqm.algebra.kfield import ONE, KElem


class GossTable:
    """G_1..G_nmax; ``polys[n]`` maps exponents to raw (num, den) pairs."""

    def __init__(self, F, nmax):
        self.F = F
        self.nmax = nmax
        self.polys = _build(F, nmax)

    def poly(self, n):
        return {i: KElem.raw(self.F, *v) for i, v in sorted(self.polys[n].items())}

    def __len__(self):
        return self.nmax


_TABLES = {}


def goss_polynomials(F, nmax):
    """G_n = X (G_(n-1) + sum_{i>=1, q^i<n} G_(n-q^i)/D_i), G_0 = 0, G_n = X^n for n <= q."""
    if nmax < 1:
        raise ValueError("nmax must be >= 1")
    t = _TABLES.get(F)
    if t is None or t.nmax < nmax:
        t = GossTable(F, max(nmax, 2 * t.nmax if t else nmax))
        _TABLES[F] = t
    return t


def _build(F, nmax):
    ctx, q = F.ctx, F.q
    inv_d = []
    i = 1
    while q ** i < nmax:
        inv_d.append((q ** i,) + kn.pmonic(ctx, _carlitz_factorial(F, i)))
        i += 1
    polys = [{}]
    for n in range(1, nmax + 1):
        if n <= q:
            polys.append({n: (ONE, ONE)})
            continue
        acc = dict(polys[n - 1])
        for qi, lc, dm in inv_d:
            if qi >= n:
                break
            # 1/D_i = lc^-1 / monic
            scale_n = bytes([F.inv(lc)])
            for e, (a, b) in polys[n - qi].items():
                t = kn.kmul(ctx, a, b, scale_n, dm)
                acc[e] = kn.kadd(ctx, *acc[e], *t) if e in acc else t
        polys.append({e + 1: v for e, v in acc.items() if v[0]})
    return polys
