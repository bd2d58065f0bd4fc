"""Dimension and measure-density estimators for attractor samples.

Box counting stands in for Hausdorff dimension, and histogram refinement
diagnostics stand in for absolute continuity; both are desk-scale
heuristics with explicit verdict hints, not proofs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .baker import PointCloud
from .beta_shift import DomainError

CONSISTENT_WITH_AC = "ConsistentWithAC"
CONSISTENT_WITH_SINGULAR = "ConsistentWithSingular"
INCONCLUSIVE = "Inconclusive"

AC_GROWTH_LIMIT = 1.10  # < 10% max_over_mean growth per refinement
SINGULAR_GROWTH_LIMIT = 1.50  # >= 50% growth per refinement
SATURATION_POINTS_PER_BOX = 10


def dimension_formula(beta: float, lam: float) -> float:
    """The predicted dimension 1 + log(beta) / log(1/lambda)."""
    if beta <= 1.0 or not 0.0 < lam < 1.0:
        raise DomainError("need beta > 1 and 0 < lambda < 1")
    return 1.0 + math.log(beta) / math.log(1.0 / lam)


def is_trivial_bound(beta: float, lam: float) -> bool:
    """True when lambda*beta >= 1, where the formula value is >= 2."""
    return lam * beta >= 1.0


@dataclass(frozen=True)
class DimensionEstimate:
    value: float
    scales_used: tuple  # dyadic exponents k, boxes of side 2^-k
    counts: tuple  # occupied boxes N(2^-k) per scale
    fit_r2: float
    formula_value: float | None = None
    trivial_bound: bool = False


def _occupied_boxes(points: np.ndarray, k: int) -> int:
    side = 1 << k
    ij = np.minimum((points * side).astype(np.int64), side - 1)
    return len(np.unique(ij[:, 0] * side + ij[:, 1]))


def box_dimension(cloud: PointCloud, k_min: int, k_max: int) -> DimensionEstimate:
    """Box-counting estimate over dyadic scales 2^-k, k in [k_min, k_max].

    The finest scale is capped so occupied boxes keep on average at least
    10 points; counting saturated scales would bias the slope downward.
    """
    if k_max < k_min or k_min < 0:
        raise DomainError("need 0 <= k_min <= k_max")
    pts = cloud.points
    scales, counts = [], []
    for k in range(k_min, k_max + 1):
        n = _occupied_boxes(pts, k)
        if len(pts) < SATURATION_POINTS_PER_BOX * n:
            break
        scales.append(k)
        counts.append(n)
    if len(scales) < 3:
        raise DomainError(
            f"only {len(scales)} usable scales (saturation guard); "
            "use more points or coarser scales")
    logs = np.log(2.0) * np.array(scales)  # log(1/eps)
    logn = np.log(np.array(counts, dtype=float))
    slope, intercept = np.polyfit(logs, logn, 1)
    resid = logn - (slope * logs + intercept)
    ss_tot = float(((logn - logn.mean()) ** 2).sum())
    r2 = 1.0 - float((resid ** 2).sum()) / ss_tot if ss_tot > 0 else 0.0
    prov = cloud.provenance
    formula = trivial = None
    if "beta" in prov and "lambda" in prov:
        formula = dimension_formula(prov["beta"], prov["lambda"])
        trivial = is_trivial_bound(prov["beta"], prov["lambda"])
    return DimensionEstimate(float(slope), tuple(scales), tuple(counts),
                             r2, formula, bool(trivial))


@dataclass(frozen=True)
class DensityReport:
    bins: int
    histogram: np.ndarray  # masses, sums to 1
    max_over_mean: tuple  # at bins/4, bins/2, bins (coarse to fine)
    verdict_hint: str


def marginal_density(cloud: PointCloud, bins: int) -> DensityReport:
    """Histogram diagnostic of the x-marginal across three refinements.

    max_over_mean stabilizing under refinement (growth < 10% per step)
    hints at an absolutely continuous marginal; growth of at least 50%
    per step hints at singularity.  Anything else is inconclusive.
    """
    if bins < 8 or bins & (bins - 1):
        raise DomainError("bins must be a power of two, at least 8")
    if len(cloud) < 100_000:
        raise DomainError("need at least 1e5 points for a stable diagnostic")
    counts, _ = np.histogram(cloud.xs, bins=bins, range=(0.0, 1.0))
    hist = counts / counts.sum()
    moms = []
    for level in (bins // 4, bins // 2, bins):
        coarse = hist.reshape(level, bins // level).sum(axis=1)
        moms.append(float(coarse.max() * level))
    growth = (moms[1] / moms[0], moms[2] / moms[1])
    if all(g < AC_GROWTH_LIMIT for g in growth):
        verdict = CONSISTENT_WITH_AC
    elif all(g >= SINGULAR_GROWTH_LIMIT for g in growth):
        verdict = CONSISTENT_WITH_SINGULAR
    else:
        verdict = INCONCLUSIVE
    return DensityReport(bins, hist, tuple(moms), verdict)


def cylinder_decay(cloud: PointCloud, beta: float, n_max: int):
    """Maximal n-cylinder frequency of the y-digit words, fitted to K b^-n.

    Returns (fitted_exponent, fitted_K, per_n_max_mass) where the
    exponent is the decay rate of log(max mass) per digit; it should be
    close to log(beta).
    """
    if n_max < 2:
        raise DomainError("n_max must be at least 2 for a regression")
    if n_max > 12:
        raise DomainError("n_max above 12 makes cylinders empty at desk scale")
    y = cloud.ys.copy()
    base = math.floor(beta) + 1
    codes = np.zeros(len(y), dtype=np.int64)
    max_mass = []
    total = len(y)
    for _ in range(n_max):
        y *= beta
        d = np.floor(y).astype(np.int64)
        y -= d
        codes = codes * base + d
        _, freq = np.unique(codes, return_counts=True)
        max_mass.append(float(freq.max()) / total)
    if max_mass[-1] * total < 1.0:
        raise DomainError("cylinders degenerate: no points left at n_max")
    ns = np.arange(1, n_max + 1)
    slope, intercept = np.polyfit(ns, np.log(max_mass), 1)
    return float(-slope), float(math.exp(intercept)), max_mass
