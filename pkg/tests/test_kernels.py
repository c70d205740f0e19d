import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dqm import _pykernels, kernels
from dqm.algebra import get_field

try:
    from dqm import _kernels
except ImportError:  # extension not built
    _kernels = None

BACKENDS = [pytest.param(_pykernels, id="python")]
if _kernels is not None:
    BACKENDS.append(pytest.param(_kernels, id="cython"))


def ctx_for(mod, F):
    return mod.make_ctx(F.p, F.q, F.e, F.add_table, F.mul_table, F.neg_table, F.inv_table)


def polys(q, max_len=30):
    return st.lists(st.integers(0, q - 1), max_size=max_len).map(lambda c: _strip(bytes(c)))


def _strip(c):
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return c[:n]


FIELDS = [get_field(3), get_field(2, 2), get_field(5)]


def test_selected_backend_is_reported():
    assert kernels.BACKEND in ("python", "cython")


@pytest.mark.skipif(_kernels is None, reason="compiled extension not built")
@pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"q{F.q}")
def test_backends_agree_on_random_inputs(F):
    rng = random.Random(F.q)
    cp, cc = ctx_for(_pykernels, F), ctx_for(_kernels, F)
    for _ in range(300):
        a = _strip(bytes(rng.randrange(F.q) for _ in range(rng.randint(0, 40))))
        b = _strip(bytes(rng.randrange(F.q) for _ in range(rng.randint(1, 40))))
        if not b:
            b = b"\x01"
        for name in ("padd", "psub", "pmul", "pgcd"):
            assert getattr(_pykernels, name)(cp, a, b) == getattr(_kernels, name)(cc, a, b), name
        assert _pykernels.pdivmod(cp, a, b) == _kernels.pdivmod(cc, a, b)
        d1 = _pykernels.pmonic(cp, b)[1]
        d2 = _pykernels.pmonic(cp, _strip(bytes(rng.randrange(F.q) for _ in range(5))) or b"\x01")[1]
        n1, n2 = _pykernels.kmake(cp, a or b"\x01", d1), _pykernels.kmake(cp, b, d2)
        assert n1 == _kernels.kmake(cc, a or b"\x01", d1)
        for name in ("kadd", "ksub", "kmul", "kdiv"):
            assert getattr(_pykernels, name)(cp, *n1, *n2) == getattr(_kernels, name)(cc, *n1, *n2), name


@pytest.mark.parametrize("mod", BACKENDS)
@pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"q{F.q}")
def test_divmod_reconstructs(mod, F):
    ctx = ctx_for(mod, F)

    @given(polys(F.q), polys(F.q).filter(bool))
    def check(a, b):
        quo, rem = mod.pdivmod(ctx, a, b)
        assert len(rem) < len(b)
        assert mod.padd(ctx, mod.pmul(ctx, quo, b), rem) == a

    check()


@pytest.mark.parametrize("mod", BACKENDS)
def test_gcd_divides_both_and_is_monic(mod):
    F = get_field(3)
    ctx = ctx_for(mod, F)

    @given(polys(3, 15), polys(3, 15), polys(3, 8).filter(bool))
    def check(a, b, c):
        a, b = mod.pmul(ctx, a, c), mod.pmul(ctx, b, c)
        g = mod.pgcd(ctx, a, b)
        if a or b:
            assert g[-1] == 1
            assert not mod.pdivmod(ctx, a, g)[1]
            assert not mod.pdivmod(ctx, b, g)[1]
            assert not mod.pdivmod(ctx, g, mod.pmonic(ctx, c)[1])[1]

    check()


@pytest.mark.parametrize("mod", BACKENDS)
def test_fraction_canonical_form(mod):
    F = get_field(5)
    ctx = ctx_for(mod, F)
    # (2T^2 - 2) / (3T - 3) = (2T + 2)/3 -> numerator scaled by 1/3, denominator 1
    n, d = mod.kmake(ctx, bytes([3, 0, 2]), bytes([2, 3]))
    assert d == b"\x01"
    assert n == mod.pscale(ctx, bytes([2, 2]), F.inv(3))


@pytest.mark.parametrize("mod", BACKENDS)
def test_inexact_division_raises(mod):
    ctx = ctx_for(mod, get_field(3))
    with pytest.raises(ArithmeticError):
        mod.pdivexact(ctx, bytes([1, 0, 1]), bytes([0, 1]))
    with pytest.raises(ZeroDivisionError):
        mod.pdivmod(ctx, b"\x01", b"")
