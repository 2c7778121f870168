"""Fourier layer: per-profile spectra of data and kernel, ill-posedness estimation.

Conventions
-----------
Grids are 0-based: ``u_l = l/M`` (rows), ``t_i = i/N`` (columns). Fourier
coefficients follow the Riemann-sum convention

    coeffs(m) = (1/N) * sum_i row(t_i) * exp(-i 2 pi m t_i),

computed exactly by ``fft(row)/N``. Integer frequencies live in the fftfreq
layout ``m in [-N/2, N/2)``: index ``m % N`` addresses frequency ``m``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import ConfigError, IllPosedKernel, InsufficientRange


def _is_pow2(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass
class ObservationGrid:
    """M x N real sample array y(u_l, t_i) with known noise level sigma."""

    samples: np.ndarray
    sigma: float = 0.0

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=float)
        if self.samples.ndim != 2:
            raise ConfigError("samples must be a 2-D (profiles x time) array")
        m, n = self.samples.shape
        if m < 1:
            raise ConfigError("need at least one profile")
        if n < 2 or not _is_pow2(n):
            raise ConfigError(f"time length N={n} must be a power of two >= 2")
        if not np.all(np.isfinite(self.samples)):
            raise ConfigError("samples contain non-finite values")
        if self.sigma < 0:
            raise ConfigError("sigma must be >= 0")

    @property
    def m(self) -> int:
        return self.samples.shape[0]

    @property
    def n(self) -> int:
        return self.samples.shape[1]


@dataclass
class ProfileSpectrum:
    """Per-profile Fourier coefficients, fftfreq frequency layout."""

    coeffs: np.ndarray  # (M, N) complex

    @property
    def m(self) -> int:
        return self.coeffs.shape[0]

    @property
    def n(self) -> int:
        return self.coeffs.shape[1]

    def at_freq(self, freqs) -> np.ndarray:
        """Columns for integer frequencies ``freqs`` (negative allowed)."""
        return self.coeffs[:, np.asarray(freqs) % self.n]


@dataclass
class KernelSpectrum:
    """Kernel Fourier coefficients g_m(u_l) plus ill-posedness diagnostics.

    ``nu`` stays 0 until :func:`estimate_nu` runs or a value is supplied;
    ``c1``/``c2`` bound |g_m(u_l)|^2 * |m|^(2 nu) from below/above over the
    frequency window used for the fit.
    """

    g_coeffs: np.ndarray  # (M, N) complex
    nu: float = 0.0
    c1: float | None = None
    c2: float | None = None

    @property
    def m(self) -> int:
        return self.g_coeffs.shape[0]

    @property
    def n(self) -> int:
        return self.g_coeffs.shape[1]

    def at_freq(self, freqs) -> np.ndarray:
        return self.g_coeffs[:, np.asarray(freqs) % self.n]


def fourier_coeffs(grid: ObservationGrid | np.ndarray) -> ProfileSpectrum:
    """Fourier coefficients of every profile row: ``fft(rows)/N``."""
    samples = grid.samples if isinstance(grid, ObservationGrid) else np.asarray(grid)
    if samples.ndim != 2:
        raise ConfigError("expected a 2-D (profiles x time) array")
    n = samples.shape[1]
    if not _is_pow2(n) or n < 2:
        raise ConfigError(f"time length N={n} must be a power of two >= 2")
    return ProfileSpectrum(np.fft.fft(samples, axis=1) / n)


def spectrum_to_samples(spec: ProfileSpectrum | np.ndarray) -> np.ndarray:
    """Inverse of :func:`fourier_coeffs` (complex output; caller takes .real)."""
    coeffs = spec.coeffs if isinstance(spec, ProfileSpectrum) else np.asarray(spec)
    return np.fft.ifft(coeffs, axis=-1) * coeffs.shape[-1]


def kernel_spectrum(kernel_samples: np.ndarray) -> KernelSpectrum:
    """Per-profile Fourier coefficients of a sampled kernel g(u_l, t_i).

    Zero coefficients are allowed here; invertibility over the wavelet bands
    actually used is validated when an estimator is built (see
    :func:`validate_invertible`).
    """
    samples = np.asarray(kernel_samples, dtype=float)
    if not np.all(np.isfinite(samples)):
        raise ConfigError("kernel samples contain non-finite values")
    return KernelSpectrum(fourier_coeffs(samples).coeffs)


# Coefficients at or below this fraction of a profile's peak amplitude count
# as zeros: FFTs of analytically band-limited kernels leave ~1e-16 residues
# where the true coefficient vanishes.
_ZERO_REL = 1e-12


def _zero_floor(ks: KernelSpectrum) -> np.ndarray:
    return _ZERO_REL * np.abs(ks.g_coeffs).max(axis=1, keepdims=True)


def validate_invertible(ks: KernelSpectrum, freqs) -> None:
    """Raise :class:`IllPosedKernel` naming (l, m) where |g_m(u_l)| vanishes on ``freqs``."""
    freqs = np.asarray(freqs, dtype=int)
    block = np.abs(ks.at_freq(freqs))
    zeros = np.argwhere(block <= _zero_floor(ks))
    if zeros.size:
        l, mi = zeros[0]
        raise IllPosedKernel(profile=int(l), frequency=int(freqs[mi]))


def _fit_window(ks: KernelSpectrum, m_range: tuple[int, int] | None):
    n = ks.n
    if m_range is None:
        m_range = (n // 16, n // 4)
    lo, hi = int(m_range[0]), int(m_range[1])
    if lo < 1 or hi >= n // 2 + 1 or hi < lo:
        raise InsufficientRange(f"frequency window [{lo}, {hi}] not representable at N={n}")
    freqs = np.arange(lo, hi + 1)
    if freqs.size < 8:
        raise InsufficientRange(f"need at least 8 frequencies, window [{lo}, {hi}] has {freqs.size}")
    amps = np.abs(ks.at_freq(freqs))
    if np.any(amps <= _zero_floor(ks)):
        raise InsufficientRange("vanishing kernel coefficients inside the fit window")
    return freqs, amps


def kernel_bounds(ks: KernelSpectrum, nu: float,
                  m_range: tuple[int, int] | None = None) -> tuple[float, float]:
    """Empirical (c1, c2) bounding |g_m(u_l)|^2 |m|^(2 nu) over the fit window."""
    freqs, amps = _fit_window(ks, m_range)
    scaled = amps**2 * freqs.astype(float) ** (2.0 * nu)
    return float(scaled.min()), float(scaled.max())


def estimate_nu(ks: KernelSpectrum, m_range: tuple[int, int] | None = None) -> float:
    """Least-squares estimate of the kernel's polynomial decay exponent.

    Fits ``log mean_l |g_m(u_l)|`` against ``log m`` over the inclusive window
    ``m_range`` (default ``[N/16, N/4]``) and returns ``nu_hat = -slope``.
    Updates ``ks.nu`` and the empirical ``c1``/``c2`` diagnostics in place.
    """
    freqs, amps = _fit_window(ks, m_range)
    mean_amp = amps.mean(axis=0)
    slope, _ = np.polyfit(np.log(freqs.astype(float)), np.log(mean_amp), 1)
    nu_hat = -float(slope)
    ks.nu = nu_hat
    ks.c1, ks.c2 = kernel_bounds(ks, nu_hat, m_range)
    return nu_hat
