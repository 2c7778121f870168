"""Hot numerical kernels: periodized filter-bank steps for the spatial DWT.

Two interchangeable backends compute the same circular analysis/synthesis
steps on row stacks:

* a numba ``@njit`` backend (default when numba imports cleanly), and
* a pure-numpy fallback.

Set the environment variable ``FUNCDECONV_NO_NUMBA=1`` to force the numpy
path; the package also falls back automatically when numba is unavailable.
``benchmarks/bench_kernels.py`` compares the two.

Both backends are deterministic and bit-identical to each other up to the
usual floating-point associativity of the summation order, which is fixed
(filter-tap order) in both implementations.
"""

import os

import numpy as np

_FORCED_OFF = os.environ.get("FUNCDECONV_NO_NUMBA", "").strip() not in ("", "0")

if not _FORCED_OFF:
    try:
        from numba import njit

        _HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - depends on environment
        _HAVE_NUMBA = False
else:
    _HAVE_NUMBA = False


def backend() -> str:
    """Name of the active backend: ``"numba"`` or ``"numpy"``."""
    return "numba" if _HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# numpy backend
# ---------------------------------------------------------------------------

def dwt_step_numpy(a, lo, hi):
    """One periodized analysis step along the last axis.

    a : (R, n) array, n even. Returns (approx, detail), each (R, n//2):
    approx[r, k] = sum_t lo[t] * a[r, (2k+t) mod n], likewise detail with hi.
    """
    r, n = a.shape
    half = n // 2
    ca = np.zeros((r, half), dtype=a.dtype)
    cd = np.zeros((r, half), dtype=a.dtype)
    base = 2 * np.arange(half)
    for t in range(len(lo)):
        cols = (base + t) % n
        ca += lo[t] * a[:, cols]
        cd += hi[t] * a[:, cols]
    return ca, cd


def idwt_step_numpy(ca, cd, lo, hi):
    """One periodized synthesis step, the exact adjoint of :func:`dwt_step_numpy`.

    out[r, (2k+t) mod n] += lo[t]*ca[r, k] + hi[t]*cd[r, k]
    """
    r, half = ca.shape
    n = 2 * half
    out = np.zeros((r, n), dtype=np.result_type(ca, cd))
    base = 2 * np.arange(half)
    for t in range(len(lo)):
        cols = (base + t) % n
        # cols are distinct for fixed t, so fancy += is a safe scatter
        out[:, cols] += lo[t] * ca + hi[t] * cd
    return out


# ---------------------------------------------------------------------------
# numba backend
# ---------------------------------------------------------------------------

if _HAVE_NUMBA:

    @njit(cache=True)
    def _dwt_step_nb(a, lo, hi, ca, cd):  # pragma: no cover - compiled
        r, n = a.shape
        half = n // 2
        taps = lo.shape[0]
        for i in range(r):
            for k in range(half):
                sa = a[i, 0] * 0.0
                sd = a[i, 0] * 0.0
                for t in range(taps):
                    v = a[i, (2 * k + t) % n]
                    sa += lo[t] * v
                    sd += hi[t] * v
                ca[i, k] = sa
                cd[i, k] = sd

    @njit(cache=True)
    def _idwt_step_nb(ca, cd, lo, hi, out):  # pragma: no cover - compiled
        r, half = ca.shape
        n = 2 * half
        taps = lo.shape[0]
        for i in range(r):
            for k in range(half):
                va = ca[i, k]
                vd = cd[i, k]
                for t in range(taps):
                    out[i, (2 * k + t) % n] += lo[t] * va + hi[t] * vd

    def dwt_step(a, lo, hi):
        a = np.ascontiguousarray(a)
        r, n = a.shape
        ca = np.empty((r, n // 2), dtype=a.dtype)
        cd = np.empty((r, n // 2), dtype=a.dtype)
        _dwt_step_nb(a, lo, hi, ca, cd)
        return ca, cd

    def idwt_step(ca, cd, lo, hi):
        out = np.zeros((ca.shape[0], 2 * ca.shape[1]),
                       dtype=np.result_type(ca, cd))
        _idwt_step_nb(np.ascontiguousarray(ca), np.ascontiguousarray(cd),
                      lo, hi, out)
        return out

else:
    dwt_step = dwt_step_numpy
    idwt_step = idwt_step_numpy
