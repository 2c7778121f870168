"""Closed-form minimax-rate calculators and Besov-ball sequence norms.

The convergence exponent for the 2-D problem is

    d = min( 2 s2 / (2 s2 + 1),
             2 s1 / (2 s1 + 2 nu + 1),
             2 s1' / (2 s1' + 2 nu) ),      s1' = s1 + 1/2 - 1/min(p, 2),

equivalently the three-case form selected by comparing s1 with
s2 (2 nu + 1) and (1/p - 1/2)(2 nu + 1). The log-power d1 counts boundary
equalities. The multivariate exponent replaces s2 by s_{2,0} = min_l s_{2,l}
and adds the tie count to D1. Boundary equalities are decided in exact
rational arithmetic when all inputs are ints/Fractions, with a 1e-12
relative tolerance otherwise.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from .exceptions import ConfigError, RegimeWarning

DENSE_SPATIAL = "DenseSpatial"
DENSE_TIME = "DenseTime"
SPARSE = "Sparse"

FUNCTIONAL_BETTER = "FunctionalBetter"
SEPARATE_BETTER = "SeparateBetter"
BOUNDARY = "Boundary"

_TOL = 1e-12


def _exactify(x):
    """ints/Fractions stay exact; floats (and inf) pass through."""
    if isinstance(x, Rational):
        return Fraction(x)
    return x


def _inv(p):
    """1/p with p = inf allowed (gives exact 0)."""
    if p == math.inf:
        return Fraction(0)
    return Fraction(1) / p if isinstance(p, Fraction) else 1.0 / p


def _eq(a, b) -> bool:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    return abs(a - b) <= _TOL * max(1.0, abs(a), abs(b))


def _gt(a, b) -> bool:
    """Strictly greater, tolerance-aware for floats."""
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a > b
    return a > b and not _eq(a, b)


@dataclass
class BesovBall:
    """Mixed-smoothness Besov ball parameters plus derived exponents."""

    s1: object
    s2_vec: tuple
    p: object = 2
    q: object = 2
    a_radius: float = 1.0

    def __post_init__(self):
        self.s1 = _exactify(self.s1)
        if not isinstance(self.s2_vec, (tuple, list)):
            self.s2_vec = (self.s2_vec,)
        self.s2_vec = tuple(_exactify(s) for s in self.s2_vec)
        self.p = _exactify(self.p)
        self.q = _exactify(self.q)
        if len(self.s2_vec) < 1:
            raise ConfigError("need at least one spatial smoothness component")
        if not (self.p == math.inf or self.p >= 1) or not (self.q == math.inf or self.q >= 1):
            raise ConfigError("p and q must lie in [1, inf]")
        if self.a_radius <= 0:
            raise ConfigError("radius A must be positive")

    @property
    def r(self) -> int:
        return len(self.s2_vec)

    @property
    def p_prime(self):
        return min(self.p, 2)

    @property
    def s1_prime(self):
        return self.s1 + Fraction(1, 2) - _inv(self.p_prime)

    @property
    def s1_star(self):
        return self.s1 + Fraction(1, 2) - _inv(self.p)

    def s2_star(self, l: int = 0):
        return self.s2_vec[l] + Fraction(1, 2) - _inv(self.p)

    @property
    def s2_min(self):
        return min(self.s2_vec)

    @property
    def l_min(self) -> int:
        s20 = self.s2_min
        return next(l for l, s in enumerate(self.s2_vec) if _eq(s, s20))

    def in_regime(self) -> bool:
        """min(s1, s_{2,0}) >= max(1/p, 1/2), the theorem regime."""
        bound = max(_inv(self.p), Fraction(1, 2))
        m = min(self.s1, self.s2_min)
        return _gt(m, bound) or _eq(m, bound)


@dataclass
class RateReport:
    """Exponent d (or D), log power d1 (or D1), regime and comparison info."""

    d: object
    d1: int
    regime: str
    regime_warning: bool = False
    on_dense_boundary: bool = False
    on_sparse_boundary: bool = False
    verdict: str | None = None
    surrogate: float | None = None

    def as_dict(self) -> dict:
        out = {"d": float(self.d), "d1": self.d1, "regime": self.regime}
        if self.regime_warning:
            out["regime_warning"] = True
        if self.verdict is not None:
            out["verdict"] = self.verdict
        if self.surrogate is not None:
            out["surrogate"] = self.surrogate
        return out


def _candidates(ball: BesovBall, nu):
    s20 = ball.s2_min
    s1 = ball.s1
    s1p = ball.s1_prime
    c_spatial = 2 * s20 / (2 * s20 + 1)
    c_time = 2 * s1 / (2 * s1 + 2 * nu + 1)
    denom = 2 * s1p + 2 * nu
    c_sparse = (2 * s1p / denom) if denom != 0 else _exactify(0)
    return c_spatial, c_time, c_sparse


def exponent_min_form(ball: BesovBall, nu) -> object:
    """The min-form evaluation of the exponent (cross-check for the case form)."""
    nu = _exactify(nu)
    return min(_candidates(ball, nu))


def exponent_multi(ball: BesovBall, nu) -> RateReport:
    """Multivariate rate exponent D and log power D1 via s_{2,0} = min_l s_{2,l}."""
    nu = _exactify(nu)
    if nu < 0:
        raise ConfigError("nu must be >= 0")
    c_spatial, c_time, c_sparse = _candidates(ball, nu)
    b_dense = ball.s2_min * (2 * nu + 1)
    b_sparse = (_inv(ball.p) - Fraction(1, 2)) * (2 * nu + 1)
    if _gt(ball.s1, b_dense):
        d, regime = c_spatial, DENSE_SPATIAL
    elif _gt(b_sparse, ball.s1):
        d, regime = c_sparse, SPARSE
    else:
        d, regime = c_time, DENSE_TIME
    on_dense = _eq(ball.s1, b_dense)
    on_sparse = _eq(ball.s1, b_sparse)
    ties = sum(1 for l, s in enumerate(ball.s2_vec)
               if l != ball.l_min and _eq(s, ball.s2_min))
    d1 = int(on_dense) + int(on_sparse) + ties
    warn = not ball.in_regime()
    if warn:
        warnings.warn(
            "smoothness parameters outside the theorem regime "
            "min(s1, s2) >= max(1/p, 1/2); exponent still computed",
            RegimeWarning, stacklevel=2,
        )
    return RateReport(d=d, d1=d1, regime=regime, regime_warning=warn,
                      on_dense_boundary=on_dense, on_sparse_boundary=on_sparse)


def exponent_2d(ball: BesovBall, nu) -> RateReport:
    """2-D (single spatial axis) rate exponent d and log power d1."""
    if ball.r != 1:
        raise ConfigError("exponent_2d expects exactly one spatial smoothness")
    return exponent_multi(ball, nu)


def besov_norm(coeffs, s1, s2, p=2, q=2) -> float:
    """Mixed-smoothness sequence norm of a hyperbolic coefficient array.

    norm = ( sum_{j,j'} 2^{(j s1* + j' s2*) q} ( sum_{k,k'} |beta|^p )^{q/p} )^{1/q}

    with s* = s + 1/2 - 1/p and p, q = inf handled as suprema. ``coeffs`` is
    a functional-mode :class:`~funcdeconv.estimator.HyperCoeffs`.
    """
    if getattr(coeffs, "spatial_levels", None) is None:
        raise ConfigError("besov_norm needs functional-mode hyperbolic coefficients")
    inv_p = 0.0 if p == math.inf else 1.0 / p
    s1s = float(s1) + 0.5 - inv_p
    s2s = float(s2) + 0.5 - inv_p
    tslices = coeffs.time_slices()
    sslices = coeffs.spatial_slices()
    terms = []
    for j, ts in tslices.items():
        for jp, ss in sslices.items():
            block = np.abs(coeffs.entries[ss, ts])
            if p == math.inf:
                inner = block.max() if block.size else 0.0
            else:
                inner = float((block**p).sum()) ** (1.0 / p)
            terms.append(2.0 ** (j * s1s + jp * s2s) * inner)
    if q == math.inf:
        return max(terms)
    return float(sum(t**q for t in terms)) ** (1.0 / q)


@dataclass
class ComparisonReport:
    """Finite-sample functional-vs-separate verdict (asymptotic surrogate)."""

    verdict: str
    surrogate: float
    exponent: float
    note: str = "asymptotic surrogate: limit dropped, finite M, N plugged in"

    def as_dict(self) -> dict:
        return {"verdict": self.verdict, "surrogate": self.surrogate,
                "exponent": self.exponent}


def compare_strategies(s1, s2, nu, m: int, n: int) -> ComparisonReport:
    """Evaluate M * N^(-(s1 - s2(2 nu + 1)) / (s2 (2 s1 + 2 nu + 1))) against 1.

    SeparateBetter iff the surrogate is < 1 (possible only when
    s1 > s2 (2 nu + 1)); Boundary within 1e-9 of 1.
    """
    s1f, s2f, nuf = float(s1), float(s2), float(nu)
    if s2f <= 0:
        raise ConfigError("s2 must be positive")
    exponent = (s1f - s2f * (2 * nuf + 1)) / (s2f * (2 * s1f + 2 * nuf + 1))
    surrogate = m * n ** (-exponent)
    if abs(surrogate - 1.0) <= 1e-9:
        verdict = BOUNDARY
    elif s1f > s2f * (2 * nuf + 1) and surrogate < 1.0:
        verdict = SEPARATE_BETTER
    else:
        verdict = FUNCTIONAL_BETTER
    return ComparisonReport(verdict=verdict, surrogate=surrogate, exponent=exponent)
