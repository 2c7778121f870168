"""Periodized Daubechies discrete wavelet transform along the profile axes.

Uses the 12-tap extremal-phase Daubechies filter (6 vanishing moments) with
circular (periodic) boundary handling. Coefficients are packed WaveLab-style
into a vector of the input length 2^L:

    [ scaling V_{m0'}: 2^{m0'} | details j'=m0': 2^{m0'} | ... | details L-1: 2^{L-1} ]

with the scaling block labeled level ``m0' - 1``. The analysis step is

    approx[k] = sum_t lo[t] * a[(2k+t) mod n],
    detail[k] = sum_t hi[t] * a[(2k+t) mod n],   hi[t] = (-1)^t lo[L-1-t],

and the synthesis step is its exact adjoint, giving an orthonormal transform.
The hot steps are dispatched through :mod:`funcdeconv._kernels` (numba or
numpy backend).
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .exceptions import ConfigError

# 12-tap extremal-phase Daubechies filter, 6 vanishing moments,
# normalized so sum = sqrt(2) and sum of squares = 1.
DB6_LO = np.array([
    0.11154074335008017,
    0.4946238903983854,
    0.7511339080215775,
    0.3152503517092432,
    -0.22626469396516913,
    -0.12976686756709563,
    0.09750160558707936,
    0.02752286553001629,
    -0.031582039318031156,
    0.0005538422009938016,
    0.004777257511010651,
    -0.00107730108499558,
])
DB6_HI = np.array([(-1.0) ** t * DB6_LO[len(DB6_LO) - 1 - t]
                   for t in range(len(DB6_LO))])


def spatial_level_slices(m0p: int, big_l: int) -> dict[int, slice]:
    """Packed-layout slices keyed by level label (m0'-1 = scaling block)."""
    slices = {m0p - 1: slice(0, 2**m0p)}
    for j in range(m0p, big_l):
        slices[j] = slice(2**j, 2**(j + 1))
    return slices


class SpatialBasis:
    """Periodized Daubechies filter pair plus the coarsest-level choice."""

    def __init__(self, vanishing_moments: int = 6, m0p: int = 3):
        if vanishing_moments != 6:
            raise ConfigError(
                "only the 12-tap (6 vanishing moments) Daubechies filter ships"
            )
        if m0p < 0:
            raise ConfigError("coarsest spatial level m0' must be >= 0")
        self.vanishing_moments = vanishing_moments
        self.m0p = int(m0p)
        self.lo = DB6_LO
        self.hi = DB6_HI

    def _check_length(self, n: int) -> int:
        if n < 1 or (n & (n - 1)) != 0:
            raise ConfigError(f"length {n} is not a power of two")
        big_l = n.bit_length() - 1
        if big_l < self.m0p:
            raise ConfigError(
                f"length {n} shorter than the coarsest block 2^{self.m0p}"
            )
        return big_l

    def dwt_forward(self, v: np.ndarray) -> np.ndarray:
        """Packed orthonormal DWT along the last axis (length 2^L)."""
        v = np.asarray(v)
        n = v.shape[-1]
        big_l = self._check_length(n)
        lead = v.shape[:-1]
        a = v.reshape(-1, n)
        if not np.iscomplexobj(a):
            a = a.astype(float)
        out = np.empty_like(a)
        for j in range(big_l - 1, self.m0p - 1, -1):
            a, d = _kernels.dwt_step(a, self.lo, self.hi)
            out[:, 2**j:2**(j + 1)] = d
        out[:, :2**self.m0p] = a
        return out.reshape(lead + (n,))

    def dwt_inverse(self, packed: np.ndarray) -> np.ndarray:
        """Exact inverse of :func:`dwt_forward`."""
        packed = np.asarray(packed)
        n = packed.shape[-1]
        big_l = self._check_length(n)
        lead = packed.shape[:-1]
        c = packed.reshape(-1, n)
        a = np.ascontiguousarray(c[:, :2**self.m0p])
        for j in range(self.m0p, big_l):
            a = _kernels.idwt_step(a, c[:, 2**j:2**(j + 1)], self.lo, self.hi)
        return a.reshape(lead + (n,))

    def dwt_tensor_forward(self, a: np.ndarray, axes=None) -> np.ndarray:
        """Separable DWT along each listed axis (default: all axes)."""
        a = np.asarray(a)
        if axes is None:
            axes = range(a.ndim)
        out = a
        for ax in axes:
            out = np.moveaxis(self.dwt_forward(np.moveaxis(out, ax, -1)), -1, ax)
        return out

    def dwt_tensor_inverse(self, packed: np.ndarray, axes=None) -> np.ndarray:
        """Inverse of :func:`dwt_tensor_forward`."""
        packed = np.asarray(packed)
        if axes is None:
            axes = range(packed.ndim)
        out = packed
        for ax in axes:
            out = np.moveaxis(self.dwt_inverse(np.moveaxis(out, ax, -1)), -1, ax)
        return out
