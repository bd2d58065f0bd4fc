"""Beta-expansions, Parry admissibility and root solving for beta.

The quasi-greedy expansion of 1 acts as the admissibility oracle: a word
belongs to the one-sided beta-shift iff none of its shifts exceeds it
lexicographically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .digits import EPWord, GT, comparison_horizon, lex_compare

PHI_TOL = 1e-12
DEFAULT_DMINUS_DEPTH = 256
BISECTION_ITERATIONS = 200


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class NoRootError(ValueError):
    """phi_beta(c) = 1 has no root with beta > 1."""


class InconsistentWordError(ValueError):
    """The word is not the greedy expansion of 1 for its solved beta."""

    def __init__(self, message, mismatch_index):
        super().__init__(message)
        self.mismatch_index = mismatch_index


class IndeterminateError(ValueError):
    """A truncated dminus is too shallow to decide admissibility."""


def greedy_expansion(x: float, beta: float, depth: int) -> tuple:
    """First `depth` digits of the greedy beta-expansion of x.

    Iterates y -> beta*y, emitting floor(beta*y) and keeping the
    fractional part.
    """
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x={x} outside [0, 1]")
    if beta <= 1.0:
        raise DomainError(f"beta={beta} must exceed 1")
    if depth < 1:
        raise DomainError("depth must be positive")
    if x == 1.0 and float(beta).is_integer():
        # d(1, beta) for integer beta has no agreed convention here.
        raise DomainError("expansion of x=1 rejected for integer beta")
    digits = []
    y = x
    for _ in range(depth):
        y *= beta
        d = math.floor(y)
        digits.append(d)
        y -= d
    return tuple(digits)


def phi_eval(w: EPWord, beta: float) -> float:
    """Value of sum_k w_k beta^-k, summed in closed form.

    The periodic tail is a geometric series, so the result is exact up to
    floating rounding for any eventually periodic word.
    """
    if beta <= 1.0:
        raise DomainError(f"beta={beta} must exceed 1")
    m, p = len(w.preperiod), len(w.period)
    head = 0.0
    for k in range(m, 0, -1):
        head = (head + w.preperiod[k - 1]) / beta
    tail = 0.0
    for k in range(p, 0, -1):
        tail = (tail + w.period[k - 1]) / beta
    return head + tail * beta ** (-m) / (1.0 - beta ** (-p))


def quasi_greedy_one(d1: EPWord) -> EPWord:
    """Quasi-greedy expansion d_-(1, beta) from the greedy one d(1, beta).

    Identical to d1 when d1 has infinitely many nonzero digits; otherwise
    the last nonzero digit decrements and the truncated word repeats
    periodically.
    """
    if d1.is_zero:
        raise DomainError("the zero word is not an expansion of 1")
    if not d1.is_finite:
        return d1
    m = d1.nonzero_length()
    per = d1.preperiod[:m]
    per = per[:-1] + (per[-1] - 1,)
    if not any(per):
        raise DomainError("quasi-greedy word degenerates to zero (beta=1)")
    return EPWord((), per, d1.digit_bound)


def is_shift_maximal(w: EPWord) -> bool:
    """True iff no shift of w is lexicographically above w."""
    distinct = len(w.preperiod) + len(w.period)
    return all(lex_compare(w.shift(k), w) != GT for k in range(1, distinct))


@dataclass(frozen=True)
class BetaSystem:
    """A beta > 1 together with its quasi-greedy expansion of 1.

    ``dminus`` is exact when the system was built from an explicit word
    via solve_beta; otherwise it is a depth-limited truncation and
    admissibility queries may raise IndeterminateError.
    """

    beta: float
    dminus: EPWord
    exact: bool = True
    dminus_depth: int = field(default=0)  # meaningful when not exact

    def __post_init__(self):
        if self.beta <= 1.0:
            raise DomainError(f"beta={self.beta} must exceed 1")
        if max(self.dminus.preperiod + self.dminus.period) > math.floor(self.beta):
            raise DomainError("dminus digits exceed floor(beta)")
        if self.exact and not is_shift_maximal(self.dminus):
            raise DomainError("dminus is not shift-maximal")

    @classmethod
    def from_beta(cls, beta: float, depth: int = DEFAULT_DMINUS_DEPTH):
        """Numeric system from a floating beta; dminus is truncated.

        The quasi-greedy word is approximated by expanding a point just
        below 1, which agrees with d_-(1, beta) to the requested depth for
        all but boundary-grazing betas.
        """
        d1 = greedy_expansion(1.0, beta, depth) if not float(beta).is_integer() \
            else greedy_expansion(1.0 - 1e-14, beta, depth)
        w = EPWord(d1, (0,))
        if w.is_finite and w.nonzero_length() < depth:
            return cls(beta, quasi_greedy_one(w), exact=True)
        return cls(beta, w, exact=False, dminus_depth=depth)

    @property
    def digit_bound(self) -> int:
        return math.floor(self.beta)


def _compare_truncated(u: EPWord, v: EPWord, depth: int) -> int:
    """lex_compare(u, v) using only the first `depth` digits of v."""
    horizon = comparison_horizon(u, v)
    for k in range(min(horizon, depth)):
        a, b = u[k], v[k]
        if a != b:
            return -1 if a < b else 1
    if horizon <= depth:
        return 0
    raise IndeterminateError(
        f"comparison undecided within truncation depth {depth}; "
        "rebuild the system with a larger depth"
    )


def is_admissible(w: EPWord, sys: BetaSystem) -> bool:
    """Parry criterion: every shift of w is <= dminus.

    Checked exactly over the distinct shifts of w.  For a truncated
    dminus, comparisons undecided within the truncation depth raise
    IndeterminateError rather than guessing.
    """
    distinct = len(w.preperiod) + len(w.period)
    for k in range(distinct):
        wk = w.shift(k)
        if sys.exact:
            if lex_compare(wk, sys.dminus) == GT:
                return False
        else:
            if _compare_truncated(wk, sys.dminus, sys.dminus_depth) > 0:
                return False
    return True


def solve_beta(c: EPWord) -> tuple[float, BetaSystem]:
    """Solve 1 = phi_beta(c) for beta by bisection.

    c must be the greedy expansion d(1, beta) of its solution; this is
    verified by re-expanding 1 at the solved beta and comparing digits to
    the horizon preperiod + 3 * period.
    """
    if c.is_zero:
        raise DomainError("cannot solve for the zero word")
    if c[0] < 1:
        raise NoRootError("first digit must be at least 1")
    lo, hi = 1.0 + 1e-9, c[0] + 1.0
    f = lambda b: phi_eval(c, b) - 1.0
    if f(lo) <= 0.0:
        raise NoRootError("phi is already <= 1 at beta just above 1 "
                          "(root would be the excluded boundary beta=1)")
    if f(hi) > 0.0:
        raise NoRootError(f"no root in (1, {hi}]")
    for _ in range(BISECTION_ITERATIONS):
        mid = 0.5 * (lo + hi)
        if f(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    beta = 0.5 * (lo + hi)
    if abs(phi_eval(c, beta) - 1.0) > PHI_TOL:
        raise NoRootError(f"bisection did not converge at beta={beta}")
    horizon = len(c.preperiod) + 3 * len(c.period)
    expanded = greedy_expansion(1.0, beta, horizon)
    expected = c.prefix(horizon)
    if expanded != expected:
        idx = next(i for i, (a, b) in enumerate(zip(expanded, expected)) if a != b)
        raise InconsistentWordError(
            f"word is not a greedy expansion of 1 (first mismatch at digit {idx})",
            mismatch_index=idx,
        )
    return beta, BetaSystem(beta, quasi_greedy_one(c), exact=True)
