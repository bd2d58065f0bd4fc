"""The baker-like skew product on the unit square and its samplers.

The map contracts x-fibers by lambda while the y-coordinate runs the
beta-transformation; the attractor is the projection of the two-sided
beta-shift.  Two independent samplers are provided: forward orbits of a
random point (SRB sampling) and projections of random admissible two-sided
words, so each can cross-check the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .beta_shift import BetaSystem, DomainError
from .transversality import PrefixAutomaton

DEFAULT_TRUNCATION_EPS = 1e-9


def _check_params(beta: float, lam: float):
    if not 1.0 < beta <= 2.0:
        raise DomainError(f"beta={beta} outside (1, 2]")
    if not 0.0 < lam < 1.0:
        raise DomainError(f"lambda={lam} outside (0, 1)")


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (0.0 <= self.x < 1.0 and 0.0 <= self.y < 1.0):
            raise DomainError(f"({self.x}, {self.y}) outside [0,1)^2")


def step(p: Point, beta: float, lam: float) -> Point:
    """One application of the skew-product map."""
    _check_params(beta, lam)
    if p.y < 1.0 / beta:
        return Point(lam * p.x, beta * p.y)
    return Point(lam * p.x + 1.0 - lam, beta * p.y - 1.0)


@dataclass(frozen=True)
class PointCloud:
    """Finite sample of the attractor or the SRB measure.

    ``provenance`` records everything needed to regenerate the cloud.
    """

    points: np.ndarray  # shape (M, 2)
    provenance: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.points)

    @property
    def xs(self):
        return self.points[:, 0]

    @property
    def ys(self):
        return self.points[:, 1]


def srb_sample(beta: float, lam: float, seed: int = 0, burn_in: int = 1000,
               count: int = 100_000) -> PointCloud:
    """Forward-orbit sample: a random start iterated past the burn-in.

    Time averages of a Lebesgue-random start approximate the SRB measure;
    deterministic given (seed, parameters).
    """
    _check_params(beta, lam)
    if burn_in < 0 or count < 1:
        raise DomainError("burn_in must be >= 0 and count >= 1")
    rng = np.random.default_rng(seed)
    x = float(rng.random())
    y = float(rng.random())
    one_over_beta = 1.0 / beta
    one_minus_lam = 1.0 - lam
    total = burn_in + count
    # The float orbit of the y-map sheds low bits (catastrophically so for
    # beta = 2, where it dies at 0 within 53 steps); a dither far below any
    # observable scale keeps the orbit generic while staying seeded.
    dither = rng.random(total) * 1e-12
    pts = np.empty((count, 2))
    for i in range(-burn_in, count):
        if y < one_over_beta:
            x, y = lam * x, beta * y
        else:
            x, y = lam * x + one_minus_lam, beta * y - 1.0
        y += dither[i + burn_in]
        if y >= 1.0:
            y -= 1.0
        if i >= 0:
            pts[i, 0] = x
            pts[i, 1] = y
    return PointCloud(pts, {
        "method": "srb_sample", "beta": beta, "lambda": lam,
        "seed": seed, "burn_in": burn_in, "count": count,
    })


@dataclass(frozen=True)
class TwoSidedWord:
    """A finite window (a_-m ... a_0 | a_1 ... a_n) of a two-sided word.

    ``past`` lists (a_0, a_-1, ..., a_-m); ``future`` lists (a_1, ..., a_n).
    """

    past: tuple
    future: tuple
    digit_bound: int = 1

    def concatenated(self) -> tuple:
        """Digits in time order a_-m, ..., a_0, a_1, ..., a_n."""
        return tuple(reversed(self.past)) + tuple(self.future)


def word_window_admissible(word: TwoSidedWord, sys: BetaSystem) -> bool:
    """Every suffix of the window must be an admissible prefix.

    This is the finite-window form of the two-sided shift condition that
    all tails lie in the one-sided beta-shift.
    """
    digits = word.concatenated()
    if not sys.exact and len(digits) > sys.dminus_depth:
        raise DomainError("window longer than the truncated dminus depth")
    return PrefixAutomaton(sys).is_admissible_prefix(digits)


def project(word: TwoSidedWord, beta: float, lam: float,
            sys: BetaSystem | None = None):
    """Symbolic projection onto the square, with truncation error bounds.

    x = (1-lambda) sum_k a_-k lambda^k, y = sum_k a_k beta^-k, both over
    the available window.  Returns (Point, x_error, y_error) where the
    errors bound the contribution of the discarded infinite tails.
    """
    _check_params(beta, lam)
    if sys is None:
        sys = BetaSystem.from_beta(beta)
    if not word_window_admissible(word, sys):
        raise DomainError("word window is not admissible")
    x = (1.0 - lam) * sum(a * lam ** k for k, a in enumerate(word.past))
    y = sum(a * beta ** -(k + 1) for k, a in enumerate(word.future))
    bound = word.digit_bound
    x_err = bound * lam ** len(word.past)  # (1-lam) * sum_{k>m} D lam^k
    y_err = beta ** -len(word.future) if word.future else 1.0
    return Point(min(x, math.nextafter(1.0, 0.0)),
                 min(y, math.nextafter(1.0, 0.0))), x_err, y_err


def truncation_depths(beta: float, lam: float,
                      tol: float = DEFAULT_TRUNCATION_EPS) -> tuple[int, int]:
    """Past and future depths with geometric truncation error below tol."""
    m = max(2, math.ceil(math.log(tol) / math.log(lam)))
    n = max(2, math.ceil(-math.log(tol) / math.log(beta)))
    return m, n


def attractor_cloud(beta: float, lam: float, seed: int = 0,
                    count: int = 100_000,
                    sys: BetaSystem | None = None) -> PointCloud:
    """Symbolic sample: projections of random admissible two-sided words.

    Windows are deep enough that both truncation errors are below 1e-9.
    Independent of srb_sample by construction, which makes the two
    samplers mutual oracles.
    """
    _check_params(beta, lam)
    if count < 1:
        raise DomainError("count must be >= 1")
    if sys is None:
        sys = BetaSystem.from_beta(beta)
    automaton = PrefixAutomaton(sys)
    m, n = truncation_depths(beta, lam)
    rng = np.random.default_rng(seed)
    length = m + 1 + n
    lam_pows = lam ** np.arange(m, -1, -1)  # matches time order a_-m .. a_0
    beta_pows = beta ** -np.arange(1, n + 1)
    pts = np.empty((count, 2))
    top = math.nextafter(1.0, 0.0)
    for i in range(count):
        digits = np.array(automaton.sample_word(rng, length))
        x = (1.0 - lam) * float(digits[:m + 1] @ lam_pows)
        y = float(digits[m + 1:] @ beta_pows)
        pts[i, 0] = min(x, top)
        pts[i, 1] = min(y, top)
    return PointCloud(pts, {
        "method": "attractor_cloud", "beta": beta, "lambda": lam,
        "seed": seed, "count": count, "past_depth": m, "future_depth": n,
    })


@dataclass(frozen=True)
class GridRaster:
    width: int
    height: int
    counts: np.ndarray  # shape (height, width), row 0 = y near 1

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def rasterize(cloud: PointCloud, width: int, height: int) -> GridRaster:
    """Bin the cloud into a grid; conserves the point count.

    Row 0 corresponds to y near 1 (image convention).
    """
    if width < 1 or height < 1:
        raise DomainError("raster dimensions must be positive")
    if len(cloud) == 0:
        return GridRaster(width, height, np.zeros((height, width), dtype=np.int64))
    i = np.minimum((cloud.xs * width).astype(np.int64), width - 1)
    j = np.minimum((cloud.ys * height).astype(np.int64), height - 1)
    flat = np.bincount((height - 1 - j) * width + i, minlength=width * height)
    return GridRaster(width, height, flat.reshape(height, width))


def raster_to_pgm(raster: GridRaster) -> bytes:
    """Binary 8-bit PGM (P5), counts max-normalized to 0..255."""
    counts = raster.counts
    peak = counts.max()
    if peak == 0:
        pixels = np.zeros_like(counts, dtype=np.uint8)
    else:
        pixels = (counts * 255 // peak).astype(np.uint8)
    header = f"P5\n{raster.width} {raster.height}\n255\n".encode()
    return header + pixels.tobytes()


def cloud_to_csv(cloud: PointCloud) -> str:
    """CSV with header x,y and 17 significant digits per coordinate."""
    lines = ["x,y"]
    for x, y in cloud.points:
        lines.append(f"{x:.17g},{y:.17g}")
    return "\n".join(lines) + "\n"
