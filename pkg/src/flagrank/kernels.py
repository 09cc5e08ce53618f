"""Backend selection for the F_p kernels.

The compiled ``_kernels`` extension is used when it imports; otherwise (or
with ``FLAGRANK_PURE_PYTHON=1``) the numpy fallback in ``_pykernels``.
Primes must stay below 2**31 so products fit in int64.
"""

import os

import numpy as np

from . import _pykernels

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS = {"python": _pykernels}
if _compiled is not None:
    BACKENDS["cython"] = _compiled

if os.environ.get("FLAGRANK_PURE_PYTHON", "") not in ("", "0") or _compiled is None:
    BACKEND = "python"
else:
    BACKEND = "cython"

_impl = BACKENDS[BACKEND]
rref_mod_p = _impl.rref_mod_p
rank_mod_p = _impl.rank_mod_p
nullspace_mod_p = _impl.nullspace_mod_p
inverse_mod_p = _impl.inverse_mod_p


def matmul_mod(a, b, p):
    """``a @ b mod p`` without int64 overflow for ``p < 2**31``.

    ``b`` is split into 16-bit halves so each partial product stays below
    ``n * 2**47``.
    """
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    hi = (a @ (b >> 16)) % p
    lo = a @ (b & 0xFFFF)
    return (hi * 65536 + lo) % p
