"""Transversality of difference power series over a beta-shift.

The series class is g(x) = 1 + sum_k (a_k - b_k) x^k with both digit words
admissible.  Transversality at level delta on an interval means |g(x)| <
delta forces g'(x) < -delta for every series of the class.  This module
provides the closed-form epsilon bound extending the interval past 1/beta,
a randomized search for counterexamples, and a certified branch-and-bound
verifier that prunes coefficient prefixes through the Parry criterion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .beta_shift import BetaSystem, DomainError

TERM_SLACK = 1e-12  # outward rounding slack per polynomial term
X_WIDTH_FLOOR = 1e-9  # stop splitting x-intervals narrower than this
DELTA_GRID = tuple(2.0 ** -k for k in range(4, 21))


class TruncationTooShallowError(ValueError):
    """Tail bands at the interval end exceed what delta could discharge."""


def epsilon_bound(beta: float) -> float:
    """Closed-form epsilon for which transversality holds on [0, 1/beta + eps].

    Valid for 1 < beta < 2 (digit bound 1).  The value is clamped below
    min((1 - 1/beta)/2, 1) so the general epsilon condition applies.
    """
    if not 1.0 < beta < 2.0:
        raise DomainError(f"beta={beta} outside (1, 2)")
    u = 1.0 - 1.0 / beta
    denom = 32.0 / math.log(2.0 / (1.0 + 1.0 / beta)) \
        + 16.0 / math.log(2.0 / u)
    eps = (16.0 / 9.0) * u ** 8 / denom ** 2
    return min(eps, 0.5 * u * (1.0 - 1e-9), 1.0 - 1e-9)


def check_epsilon_condition(beta: float, epsilon: float) -> bool:
    """True iff epsilon satisfies both sufficient inequalities.

    The first caps epsilon by min((1-1/beta)/2, 1/[beta]); the second is
    2^5 [beta]^2 eps log([beta] eps) / log((1+1/beta)/2) + 2^4 [beta]^2 eps
    < (1 - 1/beta)^4, where both logs are negative so the first term is
    positive for small epsilon.
    """
    if epsilon <= 0.0:
        raise DomainError("epsilon must be positive")
    if beta <= 1.0:
        raise DomainError(f"beta={beta} must exceed 1")
    fl = math.floor(beta)
    if epsilon >= min((1.0 - 1.0 / beta) / 2.0, 1.0 / fl):
        return False
    lhs = (32.0 * fl * fl / math.log((1.0 + 1.0 / beta) / 2.0)) \
        * epsilon * math.log(fl * epsilon) + 16.0 * fl * fl * epsilon
    return lhs < (1.0 - 1.0 / beta) ** 4


@dataclass(frozen=True)
class DiffSeries:
    """Truncated coefficient sequence c_k = a_k - b_k, k >= 1.

    The constant term is implicitly +1.  ``source`` records the admissible
    pair of digit prefixes the differences came from.
    """

    coeffs: tuple
    source: tuple = ((), ())
    digit_bound: int = 1

    def __post_init__(self):
        if any(abs(c) > self.digit_bound for c in self.coeffs):
            raise DomainError("coefficients exceed the digit bound")

    @classmethod
    def from_pair(cls, a: tuple, b: tuple, digit_bound: int = 1) -> "DiffSeries":
        if len(a) != len(b):
            raise DomainError("prefixes must have equal length")
        return cls(tuple(x - y for x, y in zip(a, b)), (tuple(a), tuple(b)),
                   digit_bound)


def _tail_g(xhi: float, m: int, bound: int) -> float:
    """|sum_{k>m} c_k x^k| <= bound * x^(m+1) / (1-x) on [0, xhi]."""
    return bound * xhi ** (m + 1) / (1.0 - xhi)


def _tail_gprime(xhi: float, m: int, bound: int) -> float:
    """|sum_{k>m} k c_k x^(k-1)| <= bound x^m (m+1 - m x) / (1-x)^2."""
    return bound * xhi ** m * (m + 1 - m * xhi) / (1.0 - xhi) ** 2


def _poly_ranges(coeffs, xlo, xhi):
    """Interval enclosures of the known polynomial parts of g - 1 and g'."""
    glo = ghi = 0.0
    plo = phi = 0.0
    plo_k = xlo  # xlo^k running powers
    phi_k = xhi
    dlo_k, dhi_k = 1.0, 1.0  # x^(k-1)
    for k, c in enumerate(coeffs, start=1):
        if c > 0:
            glo += c * plo_k - TERM_SLACK
            ghi += c * phi_k + TERM_SLACK
            plo += k * c * dlo_k - TERM_SLACK
            phi += k * c * dhi_k + TERM_SLACK
        elif c < 0:
            glo += c * phi_k - TERM_SLACK
            ghi += c * plo_k + TERM_SLACK
            plo += k * c * dhi_k - TERM_SLACK
            phi += k * c * dlo_k + TERM_SLACK
        dlo_k, dhi_k = plo_k, phi_k
        plo_k *= xlo
        phi_k *= xhi
    return glo, ghi, plo, phi


def eval_series(s: DiffSeries, xlo: float, xhi: float):
    """Enclosures of g and g' over [xlo, xhi] for all admissible tails.

    The known coefficients are evaluated with outward slack; coefficients
    beyond the truncation are absorbed by the geometric tail bounds, so
    the returned intervals contain the exact values of every infinite
    admissible continuation.
    """
    if not 0.0 <= xlo <= xhi < 1.0:
        raise DomainError(f"x-interval [{xlo}, {xhi}] must lie inside [0, 1)")
    glo, ghi, plo, phi = _poly_ranges(s.coeffs, xlo, xhi)
    tg = _tail_g(xhi, len(s.coeffs), s.digit_bound)
    tp = _tail_gprime(xhi, len(s.coeffs), s.digit_bound)
    return (1.0 + glo - tg, 1.0 + ghi + tg), (plo - tp, phi + tp)


# -- admissible-prefix automaton ----------------------------------------

class PrefixAutomaton:
    """Tracks which digits may extend an admissible prefix.

    State: sorted tuple of suffix-match lengths L such that the last L
    digits equal the first L digits of dminus.  Length 0 is always active
    and enforces the global digit cap.  A digit t extends iff t <= d_{L+1}
    for every active L; matches with t == d_{L+1} survive lengthened.
    """

    def __init__(self, sys: BetaSystem):
        self.dminus = sys.dminus
        self.max_digit = sys.dminus[0]

    INITIAL = (0,)

    def allowed_max(self, state) -> int:
        return min(self.dminus[length] for length in state)

    def step(self, state, t: int):
        """Next state after emitting digit t, or None if inadmissible."""
        d = self.dminus
        if t > self.allowed_max(state):
            return None
        nxt = [0]
        for length in state:
            if d[length] == t:
                nxt.append(length + 1)
        return tuple(nxt)

    def sample_word(self, rng, depth: int) -> tuple:
        """Random admissible word of the given depth (uniform digit draws)."""
        state, out = self.INITIAL, []
        for _ in range(depth):
            t = int(rng.integers(0, self.allowed_max(state) + 1))
            out.append(t)
            state = self.step(state, t)
        return tuple(out)

    def is_admissible_prefix(self, digits) -> bool:
        state = self.INITIAL
        for t in digits:
            state = self.step(state, t)
            if state is None:
                return False
        return True


# -- reports -------------------------------------------------------------

@dataclass(frozen=True)
class TransversalityReport:
    beta: float
    epsilon: float
    delta: float
    interval: tuple
    truncation: int
    mode: str  # "Randomized" or "Certified"
    status: str  # "Verified", "CounterexampleCandidate", "Inconclusive"
    witness: tuple | None = None  # (DiffSeries, x)
    boxes_checked: int = 0

    def to_dict(self):
        w = None
        if self.witness is not None:
            s, x = self.witness
            w = {"coeffs": list(s.coeffs), "source_a": list(s.source[0]),
                 "source_b": list(s.source[1]), "x": x}
        return {"beta": self.beta, "epsilon": self.epsilon,
                "delta": self.delta, "interval": list(self.interval),
                "truncation": self.truncation, "mode": self.mode,
                "status": self.status, "witness": w,
                "boxes_checked": self.boxes_checked}


@dataclass(frozen=True)
class Randomized:
    samples: int = 10_000
    seed: int = 0
    x_grid: int = 64


@dataclass(frozen=True)
class Certified:
    max_boxes: int = 5_000_000


def _check_truncation(xmax: float, depth: int, delta: float, bound: int):
    if _tail_g(xmax, depth, bound) >= delta:
        raise TruncationTooShallowError(
            f"tail band {2 * _tail_g(xmax, depth, bound):.3e} at x={xmax:.6f} "
            f"is at least 2*delta={2 * delta:.3e}; increase the depth")


def _randomized(sys, epsilon, delta, depth, mode, xmax, bound):
    """Sample admissible pairs on an x-grid, hunting for violations.

    A sample is a counterexample candidate when, with tail bands granted
    to the adversary, |g(x)| < delta and g'(x) >= -delta are both
    possible.
    """
    rng = np.random.default_rng(mode.seed)
    automaton = PrefixAutomaton(sys)
    xs = np.linspace(0.0, xmax, mode.x_grid)
    powers = xs[None, :] ** np.arange(1, depth + 1)[:, None]
    dpowers = np.arange(1, depth + 1)[:, None] * xs[None, :] ** np.arange(0, depth)[:, None]
    tg = _tail_g(xmax, depth, bound)
    tp = _tail_gprime(xmax, depth, bound)
    boxes = 0
    batch = 1024
    remaining = mode.samples
    while remaining > 0:
        n = min(batch, remaining)
        remaining -= n
        coeff_rows = np.empty((n, depth))
        pairs = []
        for i in range(n):
            a = automaton.sample_word(rng, depth)
            b = automaton.sample_word(rng, depth)
            pairs.append((a, b))
            coeff_rows[i] = np.subtract(a, b)
        g = 1.0 + coeff_rows @ powers
        gp = coeff_rows @ dpowers
        bad = (np.abs(g) - tg < delta) & (gp + tp >= -delta)
        boxes += n * mode.x_grid
        if bad.any():
            i, j = np.argwhere(bad)[0]
            series = DiffSeries.from_pair(*pairs[i], digit_bound=bound)
            return TransversalityReport(
                sys.beta, epsilon, delta, (0.0, xmax), depth, "Randomized",
                "CounterexampleCandidate", (series, float(xs[j])), boxes)
    return TransversalityReport(sys.beta, epsilon, delta, (0.0, xmax),
                                depth, "Randomized", "Verified", None, boxes)


def _certified(sys, epsilon, delta, depth, mode, xmax, bound, box_log=None):
    """Depth-first branch and bound over (a-prefix, b-prefix, x-interval).

    A box covers every admissible continuation of both prefixes and every
    x in its subinterval; it is discharged when the g-enclosure misses
    (-delta, delta) or the g'-enclosure lies in (-inf, -delta].  Branching
    extends whichever of the coefficient prefix or the x-interval
    dominates the enclosure width.  Traversal order is deterministic.
    """
    automaton = PrefixAutomaton(sys)
    init = automaton.INITIAL
    # box: (coeffs, a_digits, a_state, b_digits, b_state, xlo, xhi)
    stack = [((), (), init, (), init, 0.0, xmax)]
    boxes = 0
    while stack:
        if boxes >= mode.max_boxes:
            return TransversalityReport(
                sys.beta, epsilon, delta, (0.0, xmax), depth, "Certified",
                "Inconclusive", None, boxes)
        coeffs, a_dig, a_st, b_dig, b_st, xlo, xhi = stack.pop()
        boxes += 1
        m = len(coeffs)
        glo, ghi, plo, phi = _poly_ranges(coeffs, xlo, xhi)
        tg = _tail_g(xhi, m, bound)
        tp = _tail_gprime(xhi, m, bound)
        g_lo, g_hi = 1.0 + glo - tg, 1.0 + ghi + tg
        gp_hi = phi + tp
        if g_lo >= delta or g_hi <= -delta or gp_hi <= -delta:
            if box_log is not None:
                rule = "slope" if gp_hi <= -delta else "value"
                box_log.append((m, xlo, xhi, rule))
            continue
        coeff_width = 2.0 * tg  # band from unknown coefficients
        x_width = ghi - glo  # spread of the known part over the x-interval
        can_extend = m < depth
        can_split = xhi - xlo > X_WIDTH_FLOOR
        if not can_extend and not can_split:
            mid = 0.5 * (xlo + xhi)
            witness = (DiffSeries(coeffs, (a_dig, b_dig), bound), mid)
            return TransversalityReport(
                sys.beta, epsilon, delta, (0.0, xmax), depth, "Certified",
                "CounterexampleCandidate", witness, boxes)
        if can_extend and (not can_split or coeff_width >= x_width):
            for ta in range(automaton.allowed_max(a_st) + 1):
                na = automaton.step(a_st, ta)
                for tb in range(automaton.allowed_max(b_st) + 1):
                    nb = automaton.step(b_st, tb)
                    stack.append((coeffs + (ta - tb,), a_dig + (ta,), na,
                                  b_dig + (tb,), nb, xlo, xhi))
        else:
            mid = 0.5 * (xlo + xhi)
            stack.append((coeffs, a_dig, a_st, b_dig, b_st, mid, xhi))
            stack.append((coeffs, a_dig, a_st, b_dig, b_st, xlo, mid))
    return TransversalityReport(sys.beta, epsilon, delta, (0.0, xmax),
                                depth, "Certified", "Verified", None, boxes)


def verify_transversality(sys: BetaSystem, epsilon: float, delta: float,
                          depth: int = 25, mode=None,
                          x_max: float | None = None,
                          digit_bound: int | None = None,
                          box_log: list | None = None) -> TransversalityReport:
    """Verify the transversality property for the class over sys.

    ``x_max`` overrides the default interval end 1/beta + epsilon (used
    e.g. to restrict the unrestricted class to [0, 0.6]).  ``digit_bound``
    overrides the coefficient magnitude bound used in the tail estimates.
    """
    if delta <= 0.0:
        raise DomainError("delta must be positive")
    mode = mode if mode is not None else Randomized()
    xmax = 1.0 / sys.beta + epsilon if x_max is None else x_max
    if not 0.0 < xmax < 1.0:
        raise DomainError(f"x interval end {xmax} must lie in (0, 1)")
    bound = digit_bound if digit_bound is not None else PrefixAutomaton(sys).max_digit
    _check_truncation(xmax, depth, delta, bound)
    if isinstance(mode, Randomized):
        return _randomized(sys, epsilon, delta, depth, mode, xmax, bound)
    return _certified(sys, epsilon, delta, depth, mode, xmax, bound, box_log)


def find_delta(sys: BetaSystem, epsilon: float, depth: int = 25,
               mode: Certified = Certified(),
               grid=DELTA_GRID) -> tuple[float, TransversalityReport] | None:
    """Largest grid delta with a Certified Verified report, or None."""
    for delta in sorted(grid, reverse=True):
        report = verify_transversality(sys, epsilon, delta, depth, mode)
        if report.status == "Verified":
            return delta, report
    return None
