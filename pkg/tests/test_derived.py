import pytest

from betabaker.beta_shift import DomainError, solve_beta
from betabaker.derived import (Derivability, InfiniteRunError, NotAllowableError,
                               allowability_reason, beta_n_word, derivability_status,
                               derive, is_allowable)
from betabaker.digits import word


def naive_run_lengths(digits, a):
    """Brute-force run-length parser over a finite digit list."""
    runs, current = [], 0
    for d in digits:
        if d == a:
            current += 1
        else:
            runs.append(current)
            current = 0
    return runs


class TestAllowability:
    def test_two_digit_word(self):
        assert is_allowable(word((1, 1, 0), (1, 0)))

    def test_digit_gap_rejected(self):
        assert not is_allowable(word((2,), (0,)))
        assert "digit set" in allowability_reason(word((2,), (0,)))

    def test_must_start_with_largest(self):
        assert not is_allowable(word((0, 1), (1,)))

    def test_zero_word_is_domain_error(self):
        with pytest.raises(DomainError):
            is_allowable(word((), (0,)))


class TestDerive:
    def test_worked_chain_first_step(self):
        assert derive(word((1, 1, 0), (1, 0))) == word((2,), (1,))

    def test_all_ones_after_two(self):
        assert derive(word((2,), (1,))) == word((1,), (0,))

    def test_fixed_point(self):
        assert derive(word((1,), (0,))) == word((1,), (0,))

    def test_beta1_word(self):
        assert derive(word((1, 0), (1, 0, 0))) == word((1, 1, 0), (1, 0))

    def test_infinite_run(self):
        with pytest.raises(InfiniteRunError) as exc:
            derive(word((), (1,)))
        assert exc.value.prefix == ()

    def test_not_allowable_raises(self):
        with pytest.raises(NotAllowableError):
            derive(word((2,), (0,)))

    @pytest.mark.parametrize("pre,per", [
        ((1, 1, 0), (1, 0)),
        ((1, 0), (1, 0, 0)),
        ((2, 1, 2), (2, 1)),
        ((1,), (1, 0, 0, 1, 0)),
    ])
    def test_matches_naive_parser(self, pre, per):
        w = word(pre, per)
        a = max(set(pre) | set(per))
        expected = naive_run_lengths(w.prefix(200), a)
        got = derive(w).prefix(len(expected))
        assert got == tuple(expected)

    def test_period_growth_bounded(self):
        for pre, per in [((1, 1, 0), (1, 0)), ((1, 0), (1, 0, 0)),
                         ((1,), (1, 0, 0, 1, 0))]:
            w = word(pre, per)
            d = derive(w)
            assert len(d.period) <= len(w.preperiod) + len(w.period)


class TestDerivabilityStatus:
    def test_beta1_chain(self):
        outcome = derivability_status(word((1, 0), (1, 0, 0)), max_steps=10)
        assert outcome.status is Derivability.INFINITELY_DERIVABLE
        assert len(outcome.steps) == 5  # four distinct words, then the repeat
        assert outcome.steps[-1] == word((1,), (0,))

    def test_infinite_run_not_derivable(self):
        outcome = derivability_status(word((), (1,)))
        assert outcome.status is Derivability.NOT_DERIVABLE
        assert "infinite run" in outcome.reason

    def test_failing_word(self):
        outcome = derivability_status(word((1, 0, 1, 1), (0,)))
        assert outcome.status is Derivability.NOT_DERIVABLE
        assert "not allowable" in outcome.reason

    def test_unknown_when_budget_zero(self):
        outcome = derivability_status(word((1, 0), (1, 0, 0)), max_steps=1)
        assert outcome.status is Derivability.UNKNOWN


class TestBetaNFamily:
    def test_n1(self):
        assert beta_n_word(1) == word((1, 0), (1, 0, 0))

    def test_n2(self):
        assert beta_n_word(2) == word((1, 0, 0), (1, 0, 0, 0))

    def test_rejects_zero(self):
        with pytest.raises(DomainError):
            beta_n_word(0)

    @pytest.mark.parametrize("n", range(2, 7))
    def test_chain_property(self, n):
        assert derive(beta_n_word(n)) == beta_n_word(n - 1)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_infinitely_derivable(self, n):
        outcome = derivability_status(beta_n_word(n), max_steps=12)
        assert outcome.status is Derivability.INFINITELY_DERIVABLE

    def test_betas_strictly_decreasing(self):
        betas = [solve_beta(beta_n_word(n))[0] for n in range(1, 7)]
        assert all(a > b for a, b in zip(betas, betas[1:]))
