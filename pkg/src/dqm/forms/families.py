"""The families g_k, h_k, x_k, y_k, xi_k, eta_k and Delta."""

import threading

from dqm.algebra.arith import _bracket, _lprod
from dqm.algebra.kfield import ONE, KElem
from dqm.forms.qmform import QMForm

SEQ_NAMES = ("g", "h", "x", "y", "xi", "eta", "Delta")

_LOCK = threading.Lock()
_MEMO = {}


def _br(F, k):
    return KElem.raw(F, _bracket(F, k), ONE)


def _lp(F, k):
    return KElem.raw(F, _lprod(F, k), ONE)


def delta(F):
    return -(QMForm.gen(F, "h") ** (F.q - 1))


def _three_term(F, name, k):
    """u_k = u_(k-1) g^(q^(k-1)) - [k-1] u_(k-2) Delta^(q^(k-2))."""
    g, d = QMForm.gen(F, "g"), delta(F)
    prev2 = sequence(F, name, k - 2)
    prev1 = sequence(F, name, k - 1)
    return prev1 * g.frobenius(k - 1) - (prev2 * d.frobenius(k - 2)).scale(_br(F, k - 1))


def _build(F, name, k):
    E, g, h = (QMForm.gen(F, c) for c in "Egh")
    q = F.q
    if name == "Delta":
        return delta(F)
    if name in ("g", "h", "x"):
        if k == 0:
            return {"g": QMForm.one(F), "h": QMForm.zero(F), "x": -E}[name]
        if k == 1:
            return {"g": g, "h": h, "x": -(E * g) - h}[name]
        return _three_term(F, name, k)
    if name == "y":
        if k < 1:
            raise ValueError("y_k needs k >= 1")
        return delta(F).frobenius(k - 1) * sequence(F, "x", k - 1)
    if name == "xi":
        # x_(-1)^q is read as -h
        xm1q = -h if k == 0 else sequence(F, "x", k - 1).frobenius(1)
        a = (sequence(F, "x", k + 1) * xm1q).scale(_br(F, k).frobenius(1))
        b = (sequence(F, "x", k) ** (q + 1)).scale(_br(F, k + 1))
        return a - b
    if name == "eta":
        xk = sequence(F, "x", k)
        return xk.frobenius(1).scale(_lp(F, k + 1)) + (g * sequence(F, "x", k + 1)).scale(_lp(F, k).frobenius(1))
    raise ValueError(f"unknown family {name!r}")


def sequence(F, name, k):
    """The named family member; results are memoized per field."""
    if name not in SEQ_NAMES:
        raise ValueError(f"unknown family {name!r}")
    if k < 0:
        raise ValueError("family index must be >= 0")
    key = (F, name, k)
    got = _MEMO.get(key)
    if got is not None:
        return got
    value = _build(F, name, k)
    with _LOCK:
        _MEMO.setdefault(key, value)
    return _MEMO[key]
