"""Run-length derivation of digit words and the infinite-derivability test.

A word over two adjacent digits a and b = a - 1, starting with a, splits
uniquely as (a^n1, b, a^n2, b, ...); its derived sequence is (n1, n2, ...).
A beta belongs to the symmetric set S exactly when d(1, beta) survives
this derivation forever, which for eventually periodic words reduces to
detecting a cycle in the derivation chain.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .beta_shift import DomainError
from .digits import EPWord

DEFAULT_MAX_STEPS = 64


class Derivability(Enum):
    INFINITELY_DERIVABLE = "InfinitelyDerivable"
    NOT_DERIVABLE = "NotDerivable"
    UNKNOWN = "Unknown"


class NotAllowableError(ValueError):
    """The word is not of the allowable (a / a-1) run form."""


class InfiniteRunError(ValueError):
    """The word ends in an infinite run of its larger digit.

    The derived sequence would contain an infinite entry; derivation past
    it is undefined, so the word is treated as not further derivable.
    ``prefix`` holds the finite run lengths read before the infinite one.
    """

    def __init__(self, prefix):
        super().__init__(f"infinite run of the larger digit after runs {prefix}")
        self.prefix = tuple(prefix)


def allowability_reason(w: EPWord) -> str | None:
    """None if w is allowable, else a human-readable failure reason."""
    if w.is_zero:
        raise DomainError("the zero word is not allowable")
    digitset = set(w.preperiod) | set(w.period)
    a = max(digitset)
    if a < 1:
        return "largest digit must be at least 1"
    if not digitset <= {a, a - 1}:
        return f"digit set {sorted(digitset)} is not {{a, a-1}} for a={a}"
    if w[0] != a:
        return f"word must start with its largest digit {a} (n1 >= 1)"
    return None


def is_allowable(w: EPWord) -> bool:
    return allowability_reason(w) is None


def _runs_of_prefix(digits, a):
    """Complete run lengths of a in a finite digit list split by b's.

    Returns (runs, trailing) where trailing is the length of the final,
    unterminated run.
    """
    runs, current = [], 0
    for d in digits:
        if d == a:
            current += 1
        else:
            runs.append(current)
            current = 0
    return runs, current


def derive(w: EPWord) -> EPWord:
    """The run-length (derived) word of an allowable word.

    Eventual periodicity of the input forces eventual periodicity of the
    output; the result is found by expanding enough of the input to pin
    down the output's (preperiod, period) pair and then verified against a
    longer expansion.
    """
    reason = allowability_reason(w)
    if reason is not None:
        raise NotAllowableError(reason)
    a = max(set(w.preperiod) | set(w.period))
    if set(w.period) == {a}:
        runs, _ = _runs_of_prefix(w.preperiod, a)
        raise InfiniteRunError(runs)

    # Each period of w contains >= 1 separator, so expanding k periods
    # yields >= k complete runs; the derived word's period length divides
    # the separator count per period and its preperiod ends within the
    # first period, so this window is ample.
    m, p = len(w.preperiod), len(w.period)
    seps_per_period = sum(1 for d in w.period if d != a)
    window_periods = 4 * (m + p) + 8
    runs, _ = _runs_of_prefix(w.prefix(m + p * window_periods), a)

    runs_in_head, _ = _runs_of_prefix(w.prefix(m + p), a)
    max_pre = len(runs_in_head) + 1
    for pre_len in range(0, max_pre + 1):
        for per_len in range(1, seps_per_period + 1):
            if seps_per_period % per_len:
                continue
            candidate = EPWord(tuple(runs[:pre_len]),
                               tuple(runs[pre_len:pre_len + per_len]))
            if candidate.prefix(len(runs)) == tuple(runs):
                return candidate
    raise AssertionError("derived word not eventually periodic within window")


@dataclass(frozen=True)
class DerivationOutcome:
    """Result of iterating derive: a status, the chain, and why it stopped."""

    status: Derivability
    steps: tuple = field(default=())
    reason: str = ""


def derivability_status(w: EPWord, max_steps: int = DEFAULT_MAX_STEPS) -> DerivationOutcome:
    """Iterate derive, detecting a cycle (infinitely derivable) or failure.

    A repeated canonical word certifies infinite derivability, since the
    chain is then periodic.  Allowability failure or an infinite run stops
    the chain as NotDerivable.  Unknown only when max_steps is exhausted.
    """
    chain = [w]
    seen = {w}
    current = w
    for _ in range(max_steps):
        reason = None
        try:
            if allowability_reason(current) is not None:
                return DerivationOutcome(
                    Derivability.NOT_DERIVABLE, tuple(chain),
                    f"not allowable: {allowability_reason(current)}")
            current = derive(current)
        except InfiniteRunError as e:
            return DerivationOutcome(
                Derivability.NOT_DERIVABLE, tuple(chain),
                f"infinite run of the larger digit (finite runs {e.prefix})")
        chain.append(current)
        if current in seen:
            return DerivationOutcome(
                Derivability.INFINITELY_DERIVABLE, tuple(chain),
                f"cycle at {current}")
        seen.add(current)
    return DerivationOutcome(Derivability.UNKNOWN, tuple(chain),
                             f"no repetition within {max_steps} steps")


def beta_n_word(n: int) -> EPWord:
    """The word d(1, beta_n) = (1, 0^n, (1, 0^(n+1))^inf) of the beta_n family."""
    if n < 1:
        raise DomainError("n must be at least 1")
    return EPWord((1,) + (0,) * n, (1,) + (0,) * (n + 1))
