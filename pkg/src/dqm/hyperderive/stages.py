"""The staged form of the algorithm: ladders T_(X,r+s)(g_s) and T_(X,r+1)(Delta)."""

from dataclasses import dataclass

from dqm.hyperderive.engine import engine_for
from dqm.hyperderive.taylor import TaylorPoly


@dataclass
class StageState:
    F: object
    r: int
    gs_ladder: dict
    delta: TaylorPoly
    s_max: int


def stage_init(F, s_max, engine=None):
    """Stage 1: first approximations T_(X,s+1)(g_s) and T_(X,2)(Delta)."""
    if s_max < 2:
        raise ValueError("s_max must be >= 2 (T(Delta) needs g_1 and g_2)")
    eng = engine or engine_for(F)
    q = F.q
    ladder = {s: eng.first_approximation(s, q ** (s + 1)) for s in range(1, s_max + 1)}
    delta = eng.delta_from(ladder[1].truncate(q * q), ladder[2].truncate(q * q), q * q)
    return StageState(F, 1, ladder, delta, s_max)


def stage_advance(state, engine=None):
    """Stage r -> r+1 using the recursion on each ladder entry.

    Entry s needs g_(s+1) and g_(s+2); the top entry's g_(s_max+1) is not on
    the ladder and is supplied by the demand-driven engine.
    """
    if state.s_max < 3:
        raise ValueError("ladder exhausted: re-initialise with a larger s_max")
    F = state.F
    eng = engine or engine_for(F)
    q, r = F.q, state.r
    old = state.gs_ladder
    ladder = {}
    for s in range(1, state.s_max):
        N = q ** (r + 1 + s)
        g2 = old[s + 2] if s + 2 in old else eng.g(s + 2, N)
        tdinv = eng.delta_inverse(q ** (r + 1)) if state.delta is None else _delta_inverse(eng, state.delta)
        ladder[s] = eng.recurse_g(s, N, old[1].truncate(q ** r), old[s + 1].truncate(N), g2, tdinv)
    M = q ** (r + 2)
    delta = eng.delta_from(ladder[1].truncate(M), ladder[2].truncate(M), M)
    return StageState(F, r + 1, ladder, delta, state.s_max - 1)


def _delta_inverse(eng, tdelta):
    from dqm.forms.families import sequence

    dinv = sequence(eng.F, "Delta", 0).monomial_inverse()
    return tdelta.scale(dinv).inverse_one_unit().scale(dinv)


def taylor_h_E(state, engine=None):
    """(T(h), T(E)) modulo X^(q^(r+1)), with T(E) checked against -d/dX log T(Delta)."""
    eng = engine or engine_for(state.F)
    M = state.delta.xprec
    if not eng.delta(M).agrees(state.delta):
        raise ArithmeticError("stage Delta disagrees with the engine")
    return eng.h(M), eng.E(M, cross_check=True)


def stages_for(F, n):
    """Smallest stage r with q^(r+1) > n (the X-precision of T(h), T(E))."""
    r = 1
    while F.q ** (r + 1) <= n:
        r += 1
    return r
