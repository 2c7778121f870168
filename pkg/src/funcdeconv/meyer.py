"""Periodized band-limited Meyer wavelets, executed entirely in frequency space.

The periodized Meyer wavelet on [0, 1] has Fourier coefficients

    psi_{j,k,m} = 2^{-j/2} * psi_hat(2 pi m / 2^j) * exp(-i 2 pi m k / 2^j),

nonzero only on the band ceil(2^j/3) <= |m| <= floor(2^{j+2}/3). The degree-3
auxiliary polynomial theta(x) = x^4 (35 - 84 x + 70 x^2 - 20 x^3) shapes the
window; the half-sample phase exp(i omega / 2) makes levels orthogonal.

Analysis/synthesis along the time axis work on spectrum rows (fftfreq
frequency layout) and a packed coefficient layout of length 2^J:

    [ scaling V_{m0}: 2^{m0} | details j=m0: 2^{m0} | ... | details J-1: 2^{J-1} ]

The scaling block is labeled level ``m0 - 1`` by convention.
"""

from __future__ import annotations

import numpy as np

from .exceptions import LevelTooCoarse, LevelTooFine

_AUX = np.array([-20.0, 70.0, -84.0, 35.0, 0.0, 0.0, 0.0, 0.0])

_SUPPORT_TOL = 1e-14


def meyer_aux(x):
    """Degree-3 auxiliary polynomial, clamped to [0, 1] outside its ramp."""
    return np.polyval(_AUX, np.clip(x, 0.0, 1.0))


def psi_hat(omega):
    """Fourier transform of the Meyer wavelet (complex, half-sample phase)."""
    omega = np.asarray(omega, dtype=float)
    a = np.abs(omega)
    window = np.zeros_like(a)
    lo = (a >= 2 * np.pi / 3) & (a <= 4 * np.pi / 3)
    hi = (a > 4 * np.pi / 3) & (a <= 8 * np.pi / 3)
    window[lo] = np.sin(np.pi / 2 * meyer_aux(3 * a[lo] / (2 * np.pi) - 1))
    window[hi] = np.cos(np.pi / 2 * meyer_aux(3 * a[hi] / (4 * np.pi) - 1))
    return np.exp(1j * omega / 2) * window


def phi_hat(omega):
    """Fourier transform of the Meyer scaling function (real, no phase)."""
    omega = np.asarray(omega, dtype=float)
    a = np.abs(omega)
    out = np.zeros_like(a)
    out[a <= 2 * np.pi / 3] = 1.0
    mid = (a > 2 * np.pi / 3) & (a <= 4 * np.pi / 3)
    out[mid] = np.cos(np.pi / 2 * meyer_aux(3 * a[mid] / (2 * np.pi) - 1))
    return out


def time_level_slices(m0: int, big_j: int) -> dict[int, slice]:
    """Packed-layout slices keyed by level label (m0-1 = scaling block)."""
    slices = {m0 - 1: slice(0, 2**m0)}
    for j in range(m0, big_j):
        slices[j] = slice(2**j, 2**(j + 1))
    return slices


class MeyerBasis:
    """Immutable periodized Meyer basis with cached per-level coefficient tables."""

    aux_degree = 3

    def __init__(self, m0: int = 3):
        if m0 < 3:
            raise LevelTooCoarse(f"coarsest Meyer level m0={m0} must be >= 3")
        self.m0 = int(m0)
        self._cache: dict = {}

    # -- supports ---------------------------------------------------------

    def support_set(self, j: int) -> np.ndarray:
        """Ordered integer frequencies W_j = { m : psi_{j,0,m} != 0 }."""
        if j < self.m0:
            raise LevelTooCoarse(f"level j={j} below coarsest level m0={self.m0}")
        lo = int(np.ceil(2**j / 3))
        hi = int(np.floor(2**(j + 2) / 3))
        pos = np.arange(lo, hi + 1)
        keep = np.abs(psi_hat(2 * np.pi * pos / 2**j)) > _SUPPORT_TOL
        pos = pos[keep]
        return np.concatenate([-pos[::-1], pos])

    def scaling_support(self) -> np.ndarray:
        """Frequencies where the level-m0 scaling coefficients are nonzero."""
        hi = int(np.floor(2**(self.m0 + 1) / 3))
        ms = np.arange(-hi, hi + 1)
        keep = np.abs(phi_hat(2 * np.pi * ms / 2**self.m0)) > _SUPPORT_TOL
        return ms[keep]

    def union_band(self, big_j: int) -> np.ndarray:
        """All frequencies used by levels [m0-1, big_j), ascending."""
        ms = [self.scaling_support()]
        ms += [self.support_set(j) for j in range(self.m0, big_j)]
        return np.unique(np.concatenate(ms))

    # -- pointwise coefficients -------------------------------------------

    def psi_fourier(self, j: int, k: int, m) :
        """Fourier coefficient psi_{j,k,m} of the periodized wavelet."""
        if j < self.m0:
            raise LevelTooCoarse(f"level j={j} below coarsest level m0={self.m0}")
        if not 0 <= k < 2**j:
            raise IndexError(f"shift k={k} outside [0, 2^{j})")
        m = np.asarray(m, dtype=float)
        return (2.0**(-j / 2) * psi_hat(2 * np.pi * m / 2**j)
                * np.exp(-2j * np.pi * m * k / 2**j))

    def phi_fourier(self, k: int, m):
        """Fourier coefficient of the periodized level-m0 scaling function."""
        if not 0 <= k < 2**self.m0:
            raise IndexError(f"shift k={k} outside [0, 2^{self.m0})")
        m = np.asarray(m, dtype=float)
        return (2.0**(-self.m0 / 2) * phi_hat(2 * np.pi * m / 2**self.m0)
                * np.exp(-2j * np.pi * m * k / 2**self.m0))

    # -- per-level tables ---------------------------------------------------

    def _level_table(self, j: int):
        """(frequencies, matrix) with matrix[k, idx] = psi_{j,k,ms[idx]}."""
        key = ("psi", j)
        if key not in self._cache:
            ms = self.support_set(j)
            base = 2.0**(-j / 2) * psi_hat(2 * np.pi * ms / 2**j)
            ks = np.arange(2**j)
            phases = np.exp(-2j * np.pi * np.outer(ks, ms) / 2**j)
            self._cache[key] = (ms, base[None, :] * phases)
        return self._cache[key]

    def _scaling_table(self):
        key = ("phi",)
        if key not in self._cache:
            ms = self.scaling_support()
            base = 2.0**(-self.m0 / 2) * phi_hat(2 * np.pi * ms / 2**self.m0)
            ks = np.arange(2**self.m0)
            phases = np.exp(-2j * np.pi * np.outer(ks, ms) / 2**self.m0)
            self._cache[key] = (ms, base[None, :] * phases)
        return self._cache[key]

    def _check_capacity(self, big_j: int, n: int) -> None:
        if 2 * 2**(big_j + 2) / 3 > n:
            raise LevelTooFine(
                f"levels up to J={big_j} need N >= {int(np.ceil(2 * 2**(big_j + 2) / 3))}, "
                f"grid has N={n} (offending level j={big_j - 1})"
            )

    # -- transforms ---------------------------------------------------------

    def analyze_t(self, spectrum_rows: np.ndarray, big_j: int) -> np.ndarray:
        """Wavelet coefficients of spectrum rows over levels [m0-1, big_j).

        spectrum_rows : (..., N) complex, fftfreq layout. Returns the packed
        (..., 2^big_j) coefficient array: b_{j,k} = sum_{m in W_j}
        row(m) * conj(psi_{j,k,m}), scaling block analogous via phi.
        """
        spectrum_rows = np.asarray(spectrum_rows)
        n = spectrum_rows.shape[-1]
        if big_j < self.m0:
            raise LevelTooCoarse(f"J={big_j} below coarsest level m0={self.m0}")
        self._check_capacity(big_j, n)
        out = np.empty(spectrum_rows.shape[:-1] + (2**big_j,), dtype=complex)
        slices = time_level_slices(self.m0, big_j)
        ms, mat = self._scaling_table()
        out[..., slices[self.m0 - 1]] = spectrum_rows[..., ms % n] @ mat.conj().T
        for j in range(self.m0, big_j):
            ms, mat = self._level_table(j)
            out[..., slices[j]] = spectrum_rows[..., ms % n] @ mat.conj().T
        return out

    def synthesize_t(self, packed: np.ndarray, n: int) -> np.ndarray:
        """Adjoint/inverse of :func:`analyze_t`: packed coeffs -> spectrum rows."""
        packed = np.asarray(packed)
        size = packed.shape[-1]
        big_j = int(round(np.log2(size)))
        if 2**big_j != size:
            raise IndexError(f"packed length {size} is not a power of two")
        if big_j < self.m0:
            raise LevelTooCoarse(f"packed length {size} shorter than scaling block 2^{self.m0}")
        self._check_capacity(big_j, n)
        out = np.zeros(packed.shape[:-1] + (n,), dtype=complex)
        slices = time_level_slices(self.m0, big_j)
        ms, mat = self._scaling_table()
        out[..., ms % n] += packed[..., slices[self.m0 - 1]] @ mat
        for j in range(self.m0, big_j):
            ms, mat = self._level_table(j)
            out[..., ms % n] += packed[..., slices[j]] @ mat
        return out
