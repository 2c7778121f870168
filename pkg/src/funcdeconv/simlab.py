"""Simulation laboratory: reference kernel, test signals, MISE benchmarks.

The reference kernel is ``g(u, t) = 0.5 exp(-(1 + (u - 0.5)^2) d(t))`` with
``d(t) = min(t mod 1, 1 - t mod 1)`` the periodic distance to 0. Test signals
are the classic Quadratic/Blip/Bumps profiles, each rescaled to unit discrete
L2 norm. Data generation follows the observation model

    y(u_l, t_i) = (1/N) sum_x g(u_l, t_i - x) f(u_l, x) + sigma * z_{l,i}

so that row-wise Fourier coefficients multiply exactly: h_m = g_m f_m.
Replicate ``rep`` of a run seeded with ``seed`` draws its noise from
``numpy.random.default_rng([seed, rep])``, which makes every cell of the
benchmark table bitwise reproducible.
"""

from __future__ import annotations

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .estimator import FUNCTIONAL, SEPARATE, config_for, deconvolve
from .exceptions import ConfigError
from .meyer import MeyerBasis
from .spatial import SpatialBasis
from .spectra import KernelSpectrum, ObservationGrid, estimate_nu, kernel_spectrum

PAIR_ORDER = (
    ("Quadratic", "Blip"),
    ("Quadratic", "Bumps"),
    ("Blip", "Blip"),
    ("Blip", "Bumps"),
    ("Bumps", "Blip"),
    ("Bumps", "Bumps"),
)

TABLE1_COLUMNS = ("f1", "f2", "M", "sigma", "mode", "mean_mise", "sd_mise",
                  "runs", "seed")


def paper_kernel(u, t):
    """Pointwise reference kernel, periodic in t with period 1."""
    u = np.asarray(u, dtype=float)
    t = np.asarray(t, dtype=float)
    frac = np.mod(t, 1.0)
    dist = np.minimum(frac, 1.0 - frac)
    a = 1.0 + (u - 0.5) ** 2
    return 0.5 * np.exp(-a * dist)


def kernel_grid(m: int, n: int) -> np.ndarray:
    """Reference kernel sampled on the (l/M, i/N) grid, shape (M, N)."""
    u = np.arange(m, dtype=float)[:, None] / m
    t = np.arange(n, dtype=float)[None, :] / n
    return paper_kernel(u, t)


# --- test signals ---------------------------------------------------------

_BUMPS_POS = np.array([0.1, 0.13, 0.15, 0.23, 0.25, 0.40, 0.44, 0.65, 0.76,
                       0.78, 0.81])
_BUMPS_HGT = np.array([4.0, 5.0, 3.0, 4.0, 5.0, 4.2, 2.1, 4.3, 3.1, 5.1, 4.2])
_BUMPS_WTH = np.array([0.005, 0.005, 0.006, 0.01, 0.01, 0.03, 0.01, 0.01,
                       0.005, 0.008, 0.005])


def _quadratic_raw(t):
    return (t - 0.5) ** 2


def _blip_raw(t):
    left = 0.32 + 0.6 * t + 0.3 * np.exp(-100.0 * (t - 0.3) ** 2)
    right = -0.28 + 0.6 * t + 0.3 * np.exp(-100.0 * (t - 1.3) ** 2)
    return np.where(t <= 0.8, left, right)


def _bumps_raw(t):
    t = np.asarray(t, dtype=float)
    u = (t[..., None] - _BUMPS_POS) / _BUMPS_WTH
    return (_BUMPS_HGT / (1.0 + np.abs(u)) ** 4).sum(axis=-1)


_RAW_SIGNALS = {
    "quadratic": _quadratic_raw,
    "blip": _blip_raw,
    "bumps": _bumps_raw,
}


def signal_names() -> tuple:
    return ("Quadratic", "Blip", "Bumps")


def test_function(name: str, n: int) -> np.ndarray:
    """Samples of a named test signal at i/n, rescaled to unit discrete L2.

    The discrete norm (1/n) sum f^2 = 1 exactly; it matches the continuous
    L2 normalisation to Riemann accuracy (about 1e-5 at n = 512).
    """
    try:
        raw = _RAW_SIGNALS[name.lower()]
    except KeyError:
        raise ConfigError(
            f"unknown test signal {name!r}; choose from {signal_names()}"
        ) from None
    t = np.arange(n, dtype=float) / n
    vals = raw(t)
    rms = np.sqrt(np.mean(vals**2))
    return vals / rms


def product_truth(f1: str, f2: str, m: int, n: int) -> np.ndarray:
    """Separable target f(u_l, t_i) = f1(u_l) f2(t_i), shape (M, N)."""
    return np.outer(test_function(f1, m), test_function(f2, n))


# --- data synthesis -------------------------------------------------------

def convolve_rows(kernel_rows: np.ndarray, truth: np.ndarray) -> np.ndarray:
    """Row-wise (1/N)-normalised circular convolution of kernel and target."""
    n = truth.shape[-1]
    prod = np.fft.fft(kernel_rows, axis=-1) * np.fft.fft(truth, axis=-1)
    return np.fft.ifft(prod, axis=-1).real / n


def synthesize_data(truth: np.ndarray, sigma: float, *, seed: int = 0,
                    rep: int = 0, kernel: np.ndarray | None = None
                    ) -> ObservationGrid:
    """Noisy convolved observations of ``truth`` under the reference kernel.

    A custom ``kernel`` (same shape as ``truth``) replaces the reference one.
    """
    truth = np.asarray(truth, dtype=float)
    m, n = truth.shape
    if kernel is None:
        kernel = kernel_grid(m, n)
    clean = convolve_rows(kernel, truth)
    if sigma > 0:
        rng = np.random.default_rng([seed, rep])
        clean = clean + sigma * rng.standard_normal(truth.shape)
    return ObservationGrid(clean, sigma=sigma)


# --- MISE benchmark -------------------------------------------------------

@dataclass
class SimConfig:
    """One benchmark cell: target pair, grid size, noise level, mode."""

    f1: str = "Quadratic"
    f2: str = "Blip"
    m: int = 128
    n: int = 512
    sigma: float = 0.5
    mode: str = FUNCTIONAL
    runs: int = 25
    seed: int = 0
    c_beta: float | None = None
    nu: float | None = None
    threads: int = 1


@dataclass
class MiseResult:
    """Replicate MISEs plus their summary statistics."""

    per_run: np.ndarray
    mode: str
    config: SimConfig | None = None

    @property
    def mean_mise(self) -> float:
        return float(np.mean(self.per_run))

    @property
    def sd_mise(self) -> float:
        if len(self.per_run) < 2:
            return 0.0
        return float(np.std(self.per_run, ddof=1))

    @property
    def stderr(self) -> float:
        return self.sd_mise / np.sqrt(len(self.per_run))


def mise(estimate: np.ndarray, truth: np.ndarray) -> float:
    """(1/(MN)) sum (fhat - f)^2 over the grid."""
    return float(np.mean((estimate - truth) ** 2))


def run_mise(sim: SimConfig, kernel_spec: KernelSpectrum | None = None
             ) -> MiseResult:
    """Monte-Carlo MISE of the thresholding estimator for one cell.

    Kernel diagnostics (nu hat, C_beta) and both bases are computed once and
    shared across replicates; replicate seeds are ``[sim.seed, rep]``.
    """
    truth = product_truth(sim.f1, sim.f2, sim.m, sim.n)
    kernel = kernel_grid(sim.m, sim.n)
    if kernel_spec is None:
        kernel_spec = kernel_spectrum(kernel)
        estimate_nu(kernel_spec)
    template = ObservationGrid(np.zeros((sim.m, sim.n)), sigma=sim.sigma)
    cfg = config_for(template, kernel_spec, mode=sim.mode,
                     c_beta=sim.c_beta, nu=sim.nu)
    cfg = cfg.resolved(sim.m, sim.n)
    meyer = MeyerBasis(m0=cfg.m0)
    spatial = SpatialBasis(m0p=cfg.m0p)

    def one(rep: int) -> float:
        grid = synthesize_data(truth, sim.sigma, seed=sim.seed, rep=rep,
                               kernel=kernel)
        rec = deconvolve(grid, kernel_spec, cfg=cfg, meyer_basis=meyer,
                         spatial_basis=spatial)
        return mise(rec.values, truth)

    per_run = np.empty(sim.runs)
    if sim.threads > 1:
        with ThreadPoolExecutor(max_workers=sim.threads) as pool:
            for rep, val in enumerate(pool.map(one, range(sim.runs))):
                per_run[rep] = val
    else:
        for rep in range(sim.runs):
            per_run[rep] = one(rep)
    return MiseResult(per_run=per_run, mode=sim.mode, config=sim)


def table1(runs: int = 25, seed: int = 0, m_values=(128, 256),
           sigmas=(0.5, 1.0), n: int = 512, threads: int = 1) -> list:
    """Full benchmark table: six signal pairs x grid sizes x noise x modes.

    Returns one dict per cell, ordered pair-major then M, sigma, mode —
    48 rows under the defaults.
    """
    rows = []
    spectra_cache = {}
    for m in m_values:
        ks = kernel_spectrum(kernel_grid(m, n))
        estimate_nu(ks)
        spectra_cache[m] = ks
    for f1, f2 in PAIR_ORDER:
        for m in m_values:
            for sigma in sigmas:
                for mode in (FUNCTIONAL, SEPARATE):
                    sim = SimConfig(f1=f1, f2=f2, m=m, n=n, sigma=sigma,
                                    mode=mode, runs=runs, seed=seed, threads=threads)
                    res = run_mise(sim, kernel_spec=spectra_cache[m])
                    rows.append({
                        "f1": f1, "f2": f2, "M": m, "sigma": sigma,
                        "mode": mode, "mean_mise": res.mean_mise,
                        "sd_mise": res.sd_mise, "runs": runs, "seed": seed,
                    })
    return rows


def write_table_csv(rows: list, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=TABLE1_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)


def read_table_csv(path) -> list:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        rows = []
        for row in reader:
            row["M"] = int(row["M"])
            row["sigma"] = float(row["sigma"])
            row["mean_mise"] = float(row["mean_mise"])
            row["sd_mise"] = float(row["sd_mise"])
            row["runs"] = int(row["runs"])
            row["seed"] = int(row["seed"])
            rows.append(row)
        return rows


def write_xy(path, xs, ys) -> None:
    """Two-column whitespace file (gnuplot-ready), one "x y" pair per line."""
    xs, ys = np.asarray(xs, dtype=float), np.asarray(ys, dtype=float)
    if xs.shape != ys.shape or xs.ndim != 1:
        raise ConfigError("xs and ys must be 1-D arrays of equal length")
    with open(path, "w") as fh:
        for x, y in zip(xs, ys):
            fh.write(f"{float(x)!r} {float(y)!r}\n")


def slope_files(rows: list, prefix, n: int = 512) -> list:
    """Write one MISE-vs-MN file per (f1, f2, sigma, mode) group of table rows.

    Points are sorted by MN so the files plot as monotone curves; returns the
    written paths.
    """
    groups: dict = {}
    for row in rows:
        key = (row["f1"], row["f2"], row["sigma"], row["mode"])
        groups.setdefault(key, []).append((row["M"] * n, row["mean_mise"]))
    paths = []
    for (f1, f2, sigma, mode), pts in groups.items():
        pts.sort()
        path = f"{prefix}_{f1.lower()}x{f2.lower()}_s{sigma:g}_{mode}.dat"
        write_xy(path, [p[0] for p in pts], [p[1] for p in pts])
        paths.append(path)
    return paths
