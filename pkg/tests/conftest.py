"""Shared fixtures: cached bases, kernel spectra, and the 48-cell table."""

import numpy as np
import pytest

import funcdeconv as fd
from funcdeconv import simlab


@pytest.fixture(scope="session")
def meyer():
    return fd.MeyerBasis()


@pytest.fixture(scope="session")
def spatial():
    return fd.SpatialBasis()


@pytest.fixture(scope="session")
def kernel_for():
    """Factory: (M, N) -> (kernel grid, fitted KernelSpectrum) with nu estimated."""
    cache = {}

    def build(m, n):
        if (m, n) not in cache:
            grid = simlab.kernel_grid(m, n)
            ks = fd.kernel_spectrum(grid)
            fd.estimate_nu(ks)
            cache[(m, n)] = (grid, ks)
        return cache[(m, n)]

    return build


@pytest.fixture(scope="session")
def table25():
    """Full benchmark table at 25 replicates (shared by the slow statistics tests)."""
    return simlab.table1(runs=25, seed=0)


def cell(rows, f1, f2, m, sigma, mode):
    """Pull one table cell's mean MISE."""
    for row in rows:
        if (row["f1"], row["f2"], row["M"], row["sigma"], row["mode"]) == \
                (f1, f2, m, sigma, mode):
            return row["mean_mise"]
    raise KeyError((f1, f2, m, sigma, mode))


@pytest.fixture(scope="session")
def table_cell():
    return cell
