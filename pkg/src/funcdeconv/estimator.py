"""Hyperbolic wavelet coefficient estimation, hard thresholding, reconstruction.

Pipeline (functional mode): divide the data spectrum by the kernel spectrum
on the wavelet bands, run the Meyer analysis along time per profile, run the
orthonormal spatial DWT across profiles scaled by 1/sqrt(M), hard-threshold
with level-dependent lambda_j = C_beta * sqrt(ln(1/eps)) * 2^(j nu) * eps,
and invert. Separate mode runs the per-profile 1-D estimator (no spatial
transform) with per-profile eps = sigma/sqrt(N).

Coefficient arrays are packed: time axis of length 2^J laid out as
[V_{m0} | W_{m0} | ... | W_{J-1}] (scaling block labeled j = m0-1), spatial
axis of length 2^J' laid out the same way with labels j' (m0'-1 = scaling).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from .exceptions import ConfigError, LevelTooFine, NumericalError
from .meyer import MeyerBasis, time_level_slices
from .spatial import SpatialBasis, spatial_level_slices
from .spectra import (KernelSpectrum, ObservationGrid, ProfileSpectrum,
                      estimate_nu, fourier_coeffs, kernel_bounds,
                      kernel_spectrum, spectrum_to_samples,
                      validate_invertible)

FUNCTIONAL = "functional"
SEPARATE = "separate"


def j_capacity(n: int) -> int:
    """Largest time cutoff J the grid supports: 2 * 2^(J+2) / 3 <= N."""
    return (3 * n // 2).bit_length() - 3


def jprime_capacity(m: int) -> int:
    """Largest spatial cutoff J' the grid supports: 2^J' <= M."""
    return m.bit_length() - 1


class ResolutionLimits(NamedTuple):
    j: int
    j_prime: int
    raw_j: float
    raw_j_prime: float
    degenerate: bool


def resolution_limits(epsilon: float, nu: float, *, n: int, m: int,
                      m0: int = 3, m0p: int = 3) -> ResolutionLimits:
    """Finest usable levels from the effective noise level.

    J = floor(log2(eps^(-2/(2 nu + 1)))), J' = floor(log2(eps^(-2))), each
    clamped to [m0, capacity(N)] and [m0', log2 M]. eps >= 1 degenerates to
    the coarsest levels (flagged); eps <= 0 (noiseless) returns capacity.
    """
    cap_j, cap_jp = j_capacity(n), jprime_capacity(m)
    if cap_j < m0:
        raise LevelTooFine(f"grid N={n} cannot host the coarsest time level m0={m0}")
    if cap_jp < m0p:
        raise ConfigError(f"grid M={m} cannot host the coarsest spatial level m0'={m0p}")
    if epsilon >= 1.0:
        return ResolutionLimits(m0, m0p, 0.0, 0.0, True)
    if epsilon <= 0.0:
        return ResolutionLimits(cap_j, cap_jp, math.inf, math.inf, False)
    log2e = math.log2(epsilon)
    raw_j = -2.0 * log2e / (2.0 * nu + 1.0)
    raw_jp = -2.0 * log2e
    j = min(max(int(math.floor(raw_j + 1e-9)), m0), cap_j)
    jp = min(max(int(math.floor(raw_jp + 1e-9)), m0p), cap_jp)
    return ResolutionLimits(j, jp, raw_j, raw_jp, False)


@dataclass
class EstimatorConfig:
    """Threshold constant, ill-posedness, levels, mode, effective noise."""

    c_beta: float
    nu: float
    epsilon: float
    m0: int = 3
    m0p: int = 3
    j: int | None = None        # finest time cutoff (exclusive); None = auto
    j_prime: int | None = None  # finest spatial cutoff (exclusive); None = auto
    mode: str = FUNCTIONAL

    def __post_init__(self):
        if self.c_beta < 0:
            raise ConfigError("c_beta must be >= 0")
        if self.nu < 0:
            raise ConfigError("nu must be >= 0")
        if self.epsilon < 0:
            raise ConfigError("epsilon must be >= 0")
        if self.mode not in (FUNCTIONAL, SEPARATE):
            raise ConfigError(f"unknown mode {self.mode!r}")
        if self.j is not None and self.j < self.m0:
            raise ConfigError(f"J={self.j} below coarsest level m0={self.m0}")
        if self.j_prime is not None and self.j_prime < self.m0p:
            raise ConfigError(f"J'={self.j_prime} below coarsest level m0'={self.m0p}")

    def resolved(self, m: int, n: int) -> "EstimatorConfig":
        """Copy with auto levels filled in and capacities enforced."""
        limits = resolution_limits(self.epsilon, self.nu, n=n, m=m,
                                   m0=self.m0, m0p=self.m0p)
        j = self.j if self.j is not None else limits.j
        jp = self.j_prime if self.j_prime is not None else limits.j_prime
        if j > j_capacity(n):
            raise LevelTooFine(f"J={j} exceeds grid capacity {j_capacity(n)} at N={n}")
        if self.mode == FUNCTIONAL and jp > jprime_capacity(m):
            raise LevelTooFine(f"J'={jp} exceeds grid capacity {jprime_capacity(m)} at M={m}")
        return replace(self, j=j, j_prime=jp)


def _resolve_c1(ks: KernelSpectrum, nu: float | None) -> tuple:
    if nu is None or nu == ks.nu:
        if ks.c1 is None:
            estimate_nu(ks)
        return ks.nu, ks.c1
    c1, _ = kernel_bounds(ks, nu)
    return nu, c1


def default_c_beta(ks: KernelSpectrum, nu: float | None = None) -> float:
    """Practical default C_beta = 4 (2 pi / 3)^nu / sqrt(c1-empirical)."""
    nu, c1 = _resolve_c1(ks, nu)
    return 4.0 * (2.0 * np.pi / 3.0) ** nu / math.sqrt(c1)


def c_beta_bound(ks: KernelSpectrum, nu: float | None = None) -> float:
    """Theoretical lower bound sqrt(80 / c1) (2 pi / 3)^nu.

    Diagnostic only — wildly conservative in practice, never enforced.
    """
    nu, c1 = _resolve_c1(ks, nu)
    return math.sqrt(80.0 / c1) * (2.0 * np.pi / 3.0) ** nu


def config_for(grid: ObservationGrid, ks: KernelSpectrum, mode: str = FUNCTIONAL,
               c_beta: float | None = None, nu: float | None = None,
               m0: int = 3, m0p: int = 3,
               j: int | None = None, j_prime: int | None = None) -> EstimatorConfig:
    """Resolve defaults: nu estimated from the kernel, C_beta from c1, eps from sigma."""
    if nu is None:
        nu = ks.nu if ks.c1 is not None else estimate_nu(ks)
    if c_beta is None:
        c_beta = default_c_beta(ks, nu)
    if mode == SEPARATE:
        epsilon = grid.sigma / math.sqrt(grid.n)
    else:
        epsilon = grid.sigma / math.sqrt(grid.m * grid.n)
    return EstimatorConfig(c_beta=c_beta, nu=nu, epsilon=epsilon, m0=m0,
                           m0p=m0p, j=j, j_prime=j_prime, mode=mode)


def threshold_value(j: int, cfg: EstimatorConfig) -> float:
    """Level-j hard threshold lambda_j = C_beta sqrt(ln(1/eps)) 2^(j nu) eps."""
    eps = cfg.epsilon
    if eps == 0.0:
        return 0.0
    if eps >= 1.0:
        raise ConfigError(f"epsilon={eps} outside (0, 1)")
    return cfg.c_beta * math.sqrt(math.log(1.0 / eps)) * 2.0 ** (j * cfg.nu) * eps


class HyperCoeffs:
    """Dense hyperbolic coefficient array plus kept/killed flags.

    Functional mode: ``entries[s, tau]`` indexed by packed spatial position s
    (levels j' in [m0'-1, J')) and packed time position tau (levels j in
    [m0-1, J)). Separate mode: ``entries[l, tau]`` with raw profile rows.
    """

    def __init__(self, entries: np.ndarray, m0: int, big_j: int, mode: str,
                 m0p: int | None = None, big_jp: int | None = None,
                 kept: np.ndarray | None = None):
        self.entries = entries
        self.kept = np.ones(entries.shape, dtype=bool) if kept is None else kept
        self.m0 = m0
        self.big_j = big_j
        self.m0p = m0p
        self.big_jp = big_jp
        self.mode = mode
        # level label of each packed position along each axis
        self.time_levels = _position_levels(m0, big_j)
        if mode == FUNCTIONAL:
            self.spatial_levels = _position_levels(m0p, big_jp)
        else:
            self.spatial_levels = None

    def time_slices(self) -> dict[int, slice]:
        return time_level_slices(self.m0, self.big_j)

    def spatial_slices(self) -> dict[int, slice]:
        if self.mode != FUNCTIONAL:
            raise ConfigError("separate-mode coefficients have no spatial levels")
        return spatial_level_slices(self.m0p, self.big_jp)

    def block(self, j: int, j_prime: int | None = None) -> np.ndarray:
        """View of the (j', j) coefficient block (functional) or level j (separate)."""
        ts = self.time_slices()[j]
        if self.mode == FUNCTIONAL:
            return self.entries[self.spatial_slices()[j_prime], ts]
        return self.entries[:, ts]

    def thresholded(self) -> np.ndarray:
        """Entries with killed coefficients zeroed."""
        return np.where(self.kept, self.entries, 0.0)


def _position_levels(m0: int, big_j: int) -> np.ndarray:
    levels = np.empty(2**big_j, dtype=int)
    levels[:2**m0] = m0 - 1
    for j in range(m0, big_j):
        levels[2**j:2**(j + 1)] = j
    return levels


def estimate_coeffs(spec: ProfileSpectrum, ks: KernelSpectrum,
                    cfg: EstimatorConfig,
                    meyer_basis: MeyerBasis | None = None,
                    spatial_basis: SpatialBasis | None = None) -> HyperCoeffs:
    """Pre-threshold coefficient estimates beta-tilde from the data spectrum."""
    if spec.coeffs.shape != ks.g_coeffs.shape:
        raise ConfigError("data and kernel spectra have mismatched shapes")
    m, n = spec.coeffs.shape
    cfg = cfg.resolved(m, n)
    basis = meyer_basis if meyer_basis is not None else MeyerBasis(cfg.m0)
    band = basis.union_band(cfg.j)
    validate_invertible(ks, band)
    ratio = np.zeros((m, n), dtype=complex)
    cols = band % n
    ratio[:, cols] = spec.coeffs[:, cols] / ks.g_coeffs[:, cols]
    timec = basis.analyze_t(ratio, cfg.j)  # (M, 2^J)
    if cfg.mode == SEPARATE:
        return HyperCoeffs(timec, cfg.m0, cfg.j, SEPARATE)
    sbasis = spatial_basis if spatial_basis is not None else SpatialBasis(m0p=cfg.m0p)
    packed = sbasis.dwt_forward(timec.T) / math.sqrt(m)  # (2^J, M)
    entries = packed[:, :2**cfg.j_prime].T.copy()        # (2^J', 2^J)
    return HyperCoeffs(entries, cfg.m0, cfg.j, FUNCTIONAL,
                       m0p=cfg.m0p, big_jp=cfg.j_prime)


def hard_threshold(coeffs: HyperCoeffs, cfg: EstimatorConfig) -> HyperCoeffs:
    """Keep entries with |beta-tilde| strictly above the level-j threshold.

    Only the pure scaling (x) scaling block (j = m0-1 and j' = m0'-1) is
    exempt; mixed detail/scaling blocks carry the literal level-j threshold.
    In separate mode the per-profile scaling block is exempt.
    """
    lam = np.array([threshold_value(j, cfg) for j in coeffs.time_levels])
    kept = np.abs(coeffs.entries) > lam[None, :]
    if coeffs.mode == FUNCTIONAL:
        exempt = (coeffs.spatial_levels[:, None] == coeffs.m0p - 1) \
            & (coeffs.time_levels[None, :] == coeffs.m0 - 1)
    else:
        exempt = np.broadcast_to(coeffs.time_levels[None, :] == coeffs.m0 - 1,
                                 coeffs.entries.shape)
    kept = kept | exempt
    return HyperCoeffs(coeffs.entries, coeffs.m0, coeffs.big_j, coeffs.mode,
                       m0p=coeffs.m0p, big_jp=coeffs.big_jp, kept=kept)


@dataclass
class Reconstruction:
    """Grid estimate plus the coefficients and configuration that made it."""

    values: np.ndarray          # (M, N) real
    coeffs: HyperCoeffs
    config: EstimatorConfig


_IMAG_TOL = 1e-6


def reconstruct(coeffs: HyperCoeffs, cfg: EstimatorConfig, m: int, n: int,
                meyer_basis: MeyerBasis | None = None,
                spatial_basis: SpatialBasis | None = None) -> Reconstruction:
    """Invert thresholded coefficients back to grid samples."""
    basis = meyer_basis if meyer_basis is not None else MeyerBasis(cfg.m0)
    arr = coeffs.thresholded()
    if coeffs.mode == FUNCTIONAL:
        sbasis = spatial_basis if spatial_basis is not None else SpatialBasis(m0p=cfg.m0p)
        full = np.zeros((arr.shape[1], m), dtype=complex)  # (2^J, M)
        full[:, :arr.shape[0]] = arr.T
        timec = sbasis.dwt_inverse(full).T * math.sqrt(m)        # (M, 2^J)
    else:
        timec = arr
    spectrum = basis.synthesize_t(timec, n)
    values = spectrum_to_samples(ProfileSpectrum(spectrum))
    residue = float(np.abs(values.imag).max()) if values.size else 0.0
    if residue > _IMAG_TOL * max(1.0, float(np.abs(values.real).max())):
        raise NumericalError(
            f"imaginary residue {residue:.3e} signals broken conjugate symmetry"
        )
    return Reconstruction(values.real, coeffs, cfg)


def deconvolve(grid: ObservationGrid, kernel, cfg: EstimatorConfig | None = None,
               mode: str = FUNCTIONAL, meyer_basis: MeyerBasis | None = None,
               spatial_basis: SpatialBasis | None = None,
               **config_kwargs) -> Reconstruction:
    """Full pipeline: spectra -> coefficient estimates -> threshold -> inverse.

    ``kernel`` is a :class:`KernelSpectrum` or a sampled M x N kernel grid.
    With ``cfg=None`` the configuration is resolved from the grid and kernel
    (estimated nu, default C_beta, eps from sigma and the mode).
    """
    ks = kernel if isinstance(kernel, KernelSpectrum) else kernel_spectrum(kernel)
    if cfg is None:
        cfg = config_for(grid, ks, mode=mode, **config_kwargs)
    elif config_kwargs:
        raise ConfigError("pass either cfg or config keyword overrides, not both")
    cfg = cfg.resolved(grid.m, grid.n)
    spec = fourier_coeffs(grid)
    tilde = estimate_coeffs(spec, ks, cfg, meyer_basis, spatial_basis)
    hat = hard_threshold(tilde, cfg)
    return reconstruct(hat, cfg, grid.m, grid.n, meyer_basis, spatial_basis)
