"""Demand-driven Taylor expansions of g_s, Delta, h and E.

Every quantity is requested modulo X^N for the N actually needed and
memoized per field.  The recursion is

    T(g_s) = [s+1]^-1 T(Delta^-1)^(q^s) (T(g)^(q^(s+1)) T(g_(s+1)) - T(g_(s+2)))

with the first approximation (g_s + x_s X) sum_{i<q} E^(i q^s) X^(i q^s),
valid modulo X^(q^(s+1)), as its base case, and

    T(Delta) = [1]^-1 (T(g)^(q+1) - T(g_2)).
"""

import json
import logging
import os
import threading

from dqm.algebra.arith import _bracket
from dqm.algebra.kfield import ONE, KElem
from dqm.forms.families import sequence
from dqm.forms.qmform import QMForm
from dqm.hyperderive.taylor import TaylorPoly

log = logging.getLogger("dqm.taylor")


def ceil_div(a, b):
    return -(-a // b)


class TaylorEngine:
    """Memoized Taylor expansions for one field."""

    def __init__(self, F, cache_dir=None):
        self.F = F
        self.q = F.q
        self.cache_dir = cache_dir
        self._g = {}
        self._delta = {}
        self._h = {}
        self._E = {}
        self._lock = threading.RLock()

    # -- memo helpers
    @staticmethod
    def _lookup(memo, key, N):
        best = None
        for (k, n), v in memo.items():
            if k == key and n >= N and (best is None or n < best[0]):
                best = (n, v)
        return None if best is None else best[1].truncate(N)

    def _br(self, k):
        return KElem.raw(self.F, _bracket(self.F, k), ONE)

    # -- g_s
    def first_approximation(self, s, N):
        """(g_s + x_s X) sum_{i<q} E^(i q^s) X^(i q^s) modulo X^N (s >= 1)."""
        F, q = self.F, self.q
        gs = sequence(F, "g", s)
        xs = sequence(F, "x", s)
        step = q ** s
        Eq = QMForm.gen(F, "E").frobenius(s)
        coeffs = {}
        Ei = QMForm.one(F)
        for i in range(q):
            n = i * step
            if n >= N:
                break
            coeffs[n] = gs * Ei
            if n + 1 < N:
                coeffs[n + 1] = xs * Ei
            Ei = Ei * Eq
        return TaylorPoly(F, coeffs, N)

    def g(self, s, N):
        """T(g_s) modulo X^N."""
        F = self.F
        if N <= 0:
            return TaylorPoly(F, {}, 0)
        if s == 0:
            return TaylorPoly(F, {0: QMForm.one(F)}, N)
        got = self._lookup(self._g, s, N)
        if got is not None:
            return got
        got = self._disk_load("g", s, N)
        if got is None:
            if N <= self.q ** (s + 1):
                got = self.first_approximation(s, N)
            else:
                log.info("T(g_%d) mod X^%d", s, N)
                got = self.recurse_g(s, N, self.g(1, ceil_div(N, self.q ** (s + 1))),
                                     self.g(s + 1, N), self.g(s + 2, N),
                                     self.delta_inverse(ceil_div(N, self.q ** s)))
            self._disk_store("g", s, got)
        with self._lock:
            self._g[(s, N)] = got
        return got

    def recurse_g(self, s, N, tg, tgs1, tgs2, tdinv):
        """The recursion step, given T(g), T(g_(s+1)), T(g_(s+2)), T(Delta^-1)."""
        q = self.q
        a = tg.frobenius(s + 1, N).mul(tgs1, N)
        inner = a - tgs2.truncate(N)
        out = tdinv.frobenius(s, N).mul(inner, N)
        return out.scale(self._br(s + 1).inverse()).truncate(N)

    # -- Delta and its inverse
    def delta(self, M):
        """T(Delta) modulo X^M."""
        F, q = self.F, self.q
        if M <= 1:
            return TaylorPoly(F, {0: sequence(F, "Delta", 0)}, max(M, 0))
        got = self._lookup(self._delta, "D", M)
        if got is not None:
            return got
        got = self._disk_load("Delta", 0, M)
        if got is None:
            got = self.delta_from(self.g(1, M), self.g(2, M), M)
            self._disk_store("Delta", 0, got)
        with self._lock:
            self._delta[("D", M)] = got
        return got

    def delta_from(self, tg1, tg2, M):
        q = self.q
        g1q = tg1.truncate(ceil_div(M, q)).frobenius(1, M)
        return (g1q.mul(tg1, M) - tg2.truncate(M)).scale(self._br(1).inverse())

    def f_delta(self, M):
        """T(Delta)/Delta, a one-unit."""
        dinv = sequence(self.F, "Delta", 0).monomial_inverse()
        return self.delta(M).scale(dinv)

    def delta_inverse(self, M):
        """T(Delta^-1) modulo X^M."""
        F = self.F
        got = self._lookup(self._delta, "Dinv", M)
        if got is not None:
            return got
        dinv = sequence(F, "Delta", 0).monomial_inverse()
        got = self.f_delta(M).inverse_one_unit(M).scale(dinv)
        with self._lock:
            self._delta[("Dinv", M)] = got
        return got

    # -- h and E
    def f_h(self, M):
        """f_h = T(h)/h from f_h * f_Delta = f_h^q, coefficient by coefficient."""
        got = self._lookup(self._h, "fh", M)
        if got is not None:
            return got
        F, q = self.F, self.q
        fd = self.f_delta(M)
        d = sorted((j, f) for j, f in fd.c.items() if j > 0)
        c = [QMForm.one(F)]
        from dqm.hyperderive.taylor import _sum

        for n in range(1, M):
            terms = []
            if n % q == 0:
                terms.append(c[n // q].frobenius(1))
            for j, dj in d:
                if j > n:
                    break
                if not c[n - j].is_zero():
                    terms.append(-(c[n - j] * dj))
            c.append(_sum(F, terms))
        got = TaylorPoly(F, dict(enumerate(c)), M)
        with self._lock:
            self._h[("fh", M)] = got
        return got

    def h(self, M):
        """T(h) modulo X^M."""
        return self.f_h(M).scale(QMForm.gen(self.F, "h"))

    def E(self, M, cross_check=False):
        """T(E) modulo X^M, from T(E) = (d/dX f_h) / f_h."""
        got = self._lookup(self._E, "E", M)
        if got is not None and not cross_check:
            return got
        p = self.F.p
        need = M if M % p == 0 else M + 1
        fh = self.f_h(need)
        dfh = fh.derivative().truncate(M)
        got = dfh.mul(fh.inverse_one_unit(M), M)
        if cross_check:
            fd = self.f_delta(need)
            alt = -(fd.derivative().truncate(M).mul(fd.inverse_one_unit(M), M))
            if not alt.agrees(got):
                raise ArithmeticError("the two routes to T(E) disagree")
        with self._lock:
            self._E[("E", M)] = got
        return got

    def generator(self, name, M):
        if name == "E":
            return self.E(M)
        if name == "g":
            return self.g(1, M)
        if name == "h":
            return self.h(M)
        raise ValueError(name)

    # -- disk cache
    def _disk_path(self, obj, s, N):
        F = self.F
        tag = f"p{F.p}e{F.e}" + ("m" + "".join(map(str, F.modulus)) if F.e > 1 else "")
        return os.path.join(self.cache_dir, tag, f"taylor_{obj}_s{s}_N{N}.json")

    def _disk_load(self, obj, s, N):
        if not self.cache_dir:
            return None
        d = os.path.dirname(self._disk_path(obj, s, N))
        if not os.path.isdir(d):
            return None
        prefix = f"taylor_{obj}_s{s}_N"
        best = None
        for name in os.listdir(d):
            if name.startswith(prefix) and name.endswith(".json"):
                try:
                    n = int(name[len(prefix):-5])
                except ValueError:
                    continue
                if n >= N and (best is None or n < best):
                    best = n
        if best is None:
            return None
        path = self._disk_path(obj, s, best)
        try:
            with open(path) as fh:
                data = json.load(fh)
            tp = stage_from_json(self.F, data)
        except (OSError, ValueError, KeyError, TypeError) as exc:
            log.warning("discarding unreadable cache file %s (%s)", path, exc)
            try:
                os.remove(path)
            except OSError:
                pass
            return None
        return tp.truncate(N)

    def _disk_store(self, obj, s, tp):
        if not self.cache_dir:
            return
        path = self._disk_path(obj, s, tp.xprec)
        os.makedirs(os.path.dirname(path), exist_ok=True)
        tmp = path + f".tmp{os.getpid()}"
        with open(tmp, "w") as fh:
            json.dump(stage_to_json(self.F, obj, s, tp), fh)
        os.replace(tmp, path)


def _stage_index(q, s, xprec):
    r, n = 0, 1
    while n < xprec:
        n *= q
        r += 1
    return r - s if n == xprec else None


def stage_to_json(F, obj, s, tp):
    return {
        "q": F.descriptor(),
        "object": obj,
        "r": _stage_index(F.q, s, tp.xprec),
        "s": s,
        "xprec": tp.xprec,
        "coeffs": [[n, f.to_json()["terms"]] for n, f in sorted(tp.c.items())],
    }


def stage_from_json(F, data):
    from dqm.parser import parse_kelem

    if data["q"] != F.descriptor():
        raise ValueError("cache file belongs to another field")
    coeffs = {}
    for n, terms in data["coeffs"]:
        coeffs[int(n)] = QMForm(F, {(int(i), int(j), int(k)): parse_kelem(F, c) for i, j, k, c in terms})
    return TaylorPoly(F, coeffs, int(data["xprec"]))


_ENGINES = {}
_ENGINES_LOCK = threading.Lock()
_DEFAULT_CACHE = [None]


def set_default_cache_dir(path):
    """Disk cache used by engines created without an explicit cache_dir."""
    _DEFAULT_CACHE[0] = path
    with _ENGINES_LOCK:
        for eng in _ENGINES.values():
            if not eng.cache_dir:
                eng.cache_dir = path


def engine_for(F, cache_dir=None):
    """Shared engine per field (cache_dir is attached on first request)."""
    cache_dir = cache_dir or _DEFAULT_CACHE[0]
    with _ENGINES_LOCK:
        eng = _ENGINES.get(F)
        if eng is None:
            eng = TaylorEngine(F, cache_dir)
            _ENGINES[F] = eng
        elif cache_dir and not eng.cache_dir:
            eng.cache_dir = cache_dir
        return eng


def reset_engines():
    with _ENGINES_LOCK:
        _ENGINES.clear()
