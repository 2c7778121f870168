"""Read/write observation grids.

Two interchangeable on-disk forms:

* binary (``.fdg``): magic ``FDG1``, little-endian u64 M, u64 N, f64 sigma,
  then M*N f64 samples in row-major order;
* CSV (``.csv``): first line ``M,N,sigma``, then M rows of N samples.

``load_grid``/``save_grid`` dispatch on file extension, falling back to
magic-byte sniffing on read.
"""

from __future__ import annotations

import os
import struct

import numpy as np

from .exceptions import ConfigError
from .spectra import ObservationGrid

MAGIC = b"FDG1"
_HEADER = struct.Struct("<QQd")


def save_grid_binary(path, grid: ObservationGrid) -> None:
    samples = np.ascontiguousarray(grid.samples, dtype="<f8")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(_HEADER.pack(grid.m, grid.n, float(grid.sigma)))
        fh.write(samples.tobytes())


def load_grid_binary(path) -> ObservationGrid:
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != MAGIC:
            raise ConfigError(f"{path}: bad magic {magic!r}, expected {MAGIC!r}")
        m, n, sigma = _HEADER.unpack(fh.read(_HEADER.size))
        flat = np.frombuffer(fh.read(8 * m * n), dtype="<f8")
    if flat.size != m * n:
        raise ConfigError(f"{path}: truncated payload ({flat.size} of {m * n} samples)")
    return ObservationGrid(flat.reshape(m, n).copy(), sigma=sigma)


def save_grid_csv(path, grid: ObservationGrid) -> None:
    with open(path, "w") as fh:
        fh.write(f"{grid.m},{grid.n},{grid.sigma!r}\n")
        for row in grid.samples:
            fh.write(",".join(repr(float(v)) for v in row) + "\n")


def load_grid_csv(path) -> ObservationGrid:
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        if len(header) != 3:
            raise ConfigError(f"{path}: expected header 'M,N,sigma', got {header}")
        m, n, sigma = int(header[0]), int(header[1]), float(header[2])
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    if data.shape != (m, n):
        raise ConfigError(f"{path}: header promises {(m, n)}, file holds {data.shape}")
    return ObservationGrid(data, sigma=sigma)


def save_grid(path, grid: ObservationGrid) -> None:
    """Write a grid, choosing the format from the file extension."""
    if _is_csv(path):
        save_grid_csv(path, grid)
    else:
        save_grid_binary(path, grid)


def load_grid(path) -> ObservationGrid:
    """Read a grid, sniffing the binary magic when the extension is ambiguous."""
    if _is_csv(path):
        return load_grid_csv(path)
    with open(path, "rb") as fh:
        magic = fh.read(4)
    if magic == MAGIC:
        return load_grid_binary(path)
    return load_grid_csv(path)


def _is_csv(path) -> bool:
    return os.fspath(path).lower().endswith(".csv")
