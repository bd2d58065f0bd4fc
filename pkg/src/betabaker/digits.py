"""Eventually periodic digit words: canonical form, lexicographic order, shifts.

An infinite word over a finite digit alphabet is stored as a (preperiod,
period) pair.  Finite words are encoded with period (0,), so the space is
closed under shifting and run-length derivation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

LT, EQ, GT = -1, 0, 1


def _primitive_period(period: tuple) -> tuple:
    """Shortest tuple p such that period is a repetition of p."""
    n = len(period)
    for d in range(1, n + 1):
        if n % d == 0 and period == period[:d] * (n // d):
            return period[:d]
    return period


@dataclass(frozen=True)
class EPWord:
    """An eventually periodic infinite digit word.

    ``EPWord((1, 0), (1, 0, 0))`` is the word 1,0,(1,0,0),(1,0,0),...
    Instances are always canonical: the period is primitive and the
    preperiod is as short as possible.  Two EPWords compare equal iff they
    denote the same infinite word.
    """

    preperiod: tuple = ()
    period: tuple = (0,)
    digit_bound: int = field(default=-1, compare=False)

    def __post_init__(self):
        pre = tuple(int(d) for d in self.preperiod)
        per = tuple(int(d) for d in self.period)
        if not per:
            raise ValueError("period must be non-empty")
        if any(d < 0 for d in pre + per):
            raise ValueError("digits must be non-negative")
        per = _primitive_period(per)
        # Absorb preperiod digits that merely repeat the tail of the period.
        while pre and pre[-1] == per[-1]:
            pre = pre[:-1]
            per = per[-1:] + per[:-1]
        per = _primitive_period(per)
        bound = self.digit_bound
        maxdig = max(pre + per)
        if bound < 0:
            bound = maxdig
        elif maxdig > bound:
            raise ValueError(f"digit {maxdig} exceeds declared bound {bound}")
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)
        object.__setattr__(self, "digit_bound", bound)

    # -- basic queries ---------------------------------------------------

    def __getitem__(self, k: int) -> int:
        """Digit at 0-based position k."""
        if k < 0:
            raise IndexError(k)
        if k < len(self.preperiod):
            return self.preperiod[k]
        return self.period[(k - len(self.preperiod)) % len(self.period)]

    def digits(self):
        """Infinite iterator over the digits."""
        yield from self.preperiod
        yield from itertools.cycle(self.period)

    def prefix(self, n: int) -> tuple:
        """First n digits as a tuple."""
        return tuple(itertools.islice(self.digits(), n))

    @property
    def is_finite(self) -> bool:
        """True when the word ends in an infinite run of zeros."""
        return self.period == (0,)

    @property
    def is_zero(self) -> bool:
        return self.is_finite and not any(self.preperiod)

    def nonzero_length(self) -> int:
        """Position (1-based) of the last nonzero digit of a finite word."""
        if not self.is_finite:
            raise ValueError("word has infinitely many nonzero digits")
        m = 0
        for i, d in enumerate(self.preperiod):
            if d:
                m = i + 1
        return m

    # -- operations ------------------------------------------------------

    def shift(self, k: int) -> "EPWord":
        """Drop the first k digits."""
        if k < 0:
            raise ValueError("shift distance must be non-negative")
        pre, per = self.preperiod, self.period
        if k <= len(pre):
            return EPWord(pre[k:], per, self.digit_bound)
        r = (k - len(pre)) % len(per)
        return EPWord((), per[r:] + per[:r], self.digit_bound)

    def __str__(self):
        pre = ",".join(map(str, self.preperiod))
        per = ",".join(map(str, self.period))
        return f"{pre};{per}"

    @classmethod
    def parse(cls, text: str, digit_bound: int = -1) -> "EPWord":
        """Parse the ``pre;per`` text form (inverse of str)."""
        if ";" not in text:
            raise ValueError(f"expected 'pre;per', got {text!r}")
        pre_s, per_s = text.split(";", 1)
        pre = tuple(int(t) for t in pre_s.split(",") if t.strip() != "")
        per = tuple(int(t) for t in per_s.split(",") if t.strip() != "")
        return cls(pre, per, digit_bound)


def word(pre, per=(0,), digit_bound=-1) -> EPWord:
    """Convenience constructor accepting any iterables."""
    return EPWord(tuple(pre), tuple(per), digit_bound)


def canonicalize(w: EPWord) -> EPWord:
    """Minimal (preperiod, period) representation; idempotent.

    EPWord construction canonicalizes already, so this is the identity on
    EPWord instances; it exists so callers can normalize hand-built pairs.
    """
    return EPWord(w.preperiod, w.period, w.digit_bound)


def comparison_horizon(u: EPWord, v: EPWord) -> int:
    """Number of positions after which two EPWords are jointly periodic."""
    lcm = math.lcm(len(u.period), len(v.period))
    return len(u.preperiod) + len(v.preperiod) + lcm


def lex_compare(u: EPWord, v: EPWord) -> int:
    """Lexicographic order of the infinite words: LT (-1), EQ (0) or GT (1).

    Decided within ``comparison_horizon(u, v)`` positions; beyond that both
    words are jointly periodic, so agreement there means equality.
    """
    for k in range(comparison_horizon(u, v)):
        a, b = u[k], v[k]
        if a != b:
            return LT if a < b else GT
    return EQ
