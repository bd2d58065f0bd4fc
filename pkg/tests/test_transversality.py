import math

import numpy as np
import pytest

from betabaker.beta_shift import BetaSystem, DomainError, solve_beta
from betabaker.derived import beta_n_word
from betabaker.digits import EPWord, word
from betabaker.transversality import (Certified, DiffSeries, PrefixAutomaton,
                                      Randomized, TruncationTooShallowError,
                                      check_epsilon_condition, epsilon_bound,
                                      eval_series, find_delta,
                                      verify_transversality)


@pytest.fixture(scope="module")
def beta1_system():
    _, sys = solve_beta(beta_n_word(1))
    return sys


def full_class_system():
    """beta = 2 with dminus (1)^inf: every 0/1 word is admissible."""
    return BetaSystem(2.0, EPWord((), (1,)))


class TestEpsilonBound:
    def test_value_at_1_5(self):
        # independent evaluation of the closed form:
        # (16/9)(1/3)^8 / (32/ln(1.2) + 16/ln 6)^2 = 7.9649e-9
        assert epsilon_bound(1.5) == pytest.approx(7.9649e-9, rel=1e-4)

    def test_vanishes_toward_one(self):
        assert epsilon_bound(1.0 + 1e-6) < 1e-40

    def test_satisfies_general_condition_at_1_9(self):
        eps = epsilon_bound(1.9)
        assert check_epsilon_condition(1.9, eps)

    def test_domain(self):
        with pytest.raises(DomainError):
            epsilon_bound(2.5)

    def test_grid_soundness(self):
        for beta in np.linspace(1.05, 1.95, 50):
            eps = epsilon_bound(float(beta))
            assert eps > 0.0
            assert check_epsilon_condition(float(beta), eps)


class TestEpsilonCondition:
    def test_large_epsilon_fails(self):
        assert not check_epsilon_condition(1.5, 0.3)

    def test_tiny_epsilon_passes(self):
        assert check_epsilon_condition(1.5, 1e-15)

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            check_epsilon_condition(1.5, 0.0)


class TestEvalSeries:
    def test_zero_coefficients(self):
        s = DiffSeries((0,) * 10)
        (glo, ghi), (plo, phi) = eval_series(s, 0.5, 0.5)
        tail = 0.5 ** 11 / 0.5
        assert glo <= 1.0 <= ghi
        assert ghi - 1.0 == pytest.approx(tail, rel=1e-2)
        assert plo < 0.0 < phi

    def test_geometric_oracle(self):
        # g(0.5) = 1 - sum_{k=1..20} 2^-k = 2^-20
        s = DiffSeries((-1,) * 20)
        (glo, ghi), (plo, phi) = eval_series(s, 0.5, 0.5)
        assert glo <= 2.0 ** -20 <= ghi
        assert ghi < 1e-5
        assert phi < 0.0  # derivative certainly negative here

    def test_evaluation_at_zero(self):
        s = DiffSeries((1,) + (0,) * 9)
        (glo, ghi), (plo, phi) = eval_series(s, 0.0, 0.0)
        assert glo == pytest.approx(1.0, abs=1e-9)
        assert plo <= 1.0 <= phi

    def test_rejects_x_at_one(self):
        with pytest.raises(DomainError):
            eval_series(DiffSeries((0,)), 0.5, 1.0)

    def test_enclosure_soundness(self, beta1_system):
        # exact 200-term evaluations of random admissible continuations
        # must land inside the reported enclosures
        rng = np.random.default_rng(0)
        automaton = PrefixAutomaton(beta1_system)
        for _ in range(300):
            a = automaton.sample_word(rng, 200)
            b = automaton.sample_word(rng, 200)
            n = int(rng.integers(3, 20))
            x = float(rng.uniform(0.0, 0.65))
            s = DiffSeries.from_pair(a[:n], b[:n])
            c_full = np.subtract(a, b)
            ks = np.arange(1, 201)
            g = 1.0 + float((c_full * x ** ks).sum())
            gp = float((c_full * ks * x ** (ks - 1)).sum())
            (glo, ghi), (plo, phi) = eval_series(s, x, x)
            assert glo <= g <= ghi
            assert plo <= gp <= phi

    def test_derivative_matches_finite_difference(self):
        rng = np.random.default_rng(1)
        for _ in range(100):
            coeffs = tuple(int(c) for c in rng.integers(-1, 2, 15))
            x = float(rng.uniform(0.05, 0.6))
            h = 1e-6
            poly = lambda t: 1.0 + sum(c * t ** (k + 1)
                                       for k, c in enumerate(coeffs))
            dpoly = sum((k + 1) * c * x ** k for k, c in enumerate(coeffs))
            central = (poly(x + h) - poly(x - h)) / (2 * h)
            assert dpoly == pytest.approx(central, abs=1e-6)


class TestPrefixAutomaton:
    def test_rejects_11_for_golden(self):
        _, sys = solve_beta(word((1, 1), (0,)))
        automaton = PrefixAutomaton(sys)
        assert automaton.is_admissible_prefix((1, 0, 1))
        assert not automaton.is_admissible_prefix((1, 1))

    def test_full_class_allows_everything(self):
        automaton = PrefixAutomaton(full_class_system())
        assert automaton.is_admissible_prefix((1,) * 30)

    def test_sampled_words_are_admissible(self, beta1_system):
        from betabaker.beta_shift import is_admissible
        rng = np.random.default_rng(2)
        automaton = PrefixAutomaton(beta1_system)
        for _ in range(200):
            w = word(automaton.sample_word(rng, 25), (0,))
            assert is_admissible(w, beta1_system)


class TestVerify:
    def test_certified_verifies_beta1(self, beta1_system):
        eps = epsilon_bound(beta1_system.beta)
        report = verify_transversality(beta1_system, eps, 1e-3, 25,
                                       Certified(1_000_000))
        assert report.status == "Verified"
        assert report.boxes_checked > 0

    def test_absurd_delta_finds_witness(self, beta1_system):
        eps = epsilon_bound(beta1_system.beta)
        report = verify_transversality(beta1_system, eps, 0.9, 25,
                                       Certified(1_000_000))
        assert report.status == "CounterexampleCandidate"
        assert report.witness is not None
        series, x = report.witness
        assert 0.0 <= x <= report.interval[1]

    def test_certified_monotone_in_delta(self, beta1_system):
        eps = epsilon_bound(beta1_system.beta)
        big = verify_transversality(beta1_system, eps, 2.0 ** -6, 25,
                                    Certified(1_000_000))
        small = verify_transversality(beta1_system, eps, 2.0 ** -10, 25,
                                      Certified(1_000_000))
        assert big.status == "Verified"
        assert small.status == "Verified"

    def test_certified_deterministic(self, beta1_system):
        eps = epsilon_bound(beta1_system.beta)
        runs = [verify_transversality(beta1_system, eps, 1e-3, 25,
                                      Certified(1_000_000)) for _ in range(2)]
        assert runs[0] == runs[1]

    def test_randomized_agrees(self, beta1_system):
        eps = epsilon_bound(beta1_system.beta)
        report = verify_transversality(beta1_system, eps, 1e-3, 25,
                                       Randomized(2000, seed=0))
        assert report.status == "Verified"

    def test_full_class_on_solomyak_interval(self):
        report = verify_transversality(full_class_system(), 0.0, 1e-4, 25,
                                       Randomized(2000, seed=0), x_max=0.6)
        assert report.status == "Verified"

    def test_truncation_too_shallow(self, beta1_system):
        eps = epsilon_bound(beta1_system.beta)
        with pytest.raises(TruncationTooShallowError):
            verify_transversality(beta1_system, eps, 1e-9, 10,
                                  Certified(1000))

    def test_budget_exhaustion_is_inconclusive(self, beta1_system):
        eps = epsilon_bound(beta1_system.beta)
        report = verify_transversality(beta1_system, eps, 1e-3, 25,
                                       Certified(5))
        assert report.status == "Inconclusive"

    def test_report_serializes(self, beta1_system):
        import json
        eps = epsilon_bound(beta1_system.beta)
        report = verify_transversality(beta1_system, eps, 1e-3, 25,
                                       Certified(1_000_000))
        blob = json.loads(json.dumps(report.to_dict()))
        assert blob["status"] == "Verified"


class TestFindDelta:
    def test_beta1_delta_exists(self, beta1_system):
        eps = epsilon_bound(beta1_system.beta)
        found = find_delta(beta1_system, eps, 25, Certified(1_000_000))
        assert found is not None
        delta, report = found
        assert delta >= 2.0 ** -20
        assert report.status == "Verified"

    def test_failure_mode_returns_none(self, beta1_system):
        # deltas above the attainable slope magnitude never verify
        found = find_delta(beta1_system, epsilon_bound(beta1_system.beta),
                           25, Certified(200_000), grid=(0.9, 0.8))
        assert found is None
