"""Backend selection for the polynomial/fraction kernels.

The compiled extension ``dqm._kernels`` is used when it imports; otherwise
(or when ``DQM_PURE_PYTHON=1``) the pure-Python module is used.  Both expose
the same functions, see ``dqm._pykernels``.
"""

import os

if os.environ.get("DQM_PURE_PYTHON", "") not in ("", "0"):
    from dqm import _pykernels as _impl
    BACKEND = "python"
else:
    try:
        from dqm import _kernels as _impl
        BACKEND = "cython"
    except ImportError:  # extension not built
        from dqm import _pykernels as _impl
        BACKEND = "python"

make_ctx = _impl.make_ctx
padd = _impl.padd
psub = _impl.psub
pneg = _impl.pneg
pscale = _impl.pscale
pmul = _impl.pmul
pdivmod = _impl.pdivmod
pmonic = _impl.pmonic
pgcd = _impl.pgcd
pdivexact = _impl.pdivexact
kmake = _impl.kmake
kadd = _impl.kadd
ksub = _impl.ksub
kmul = _impl.kmul
kinv = _impl.kinv
kdiv = _impl.kdiv
ONE = b"\x01"
