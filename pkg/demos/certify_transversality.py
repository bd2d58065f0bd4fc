"""Certify a transversality level delta for the beta_1 system.

Searches a descending delta grid with the interval branch-and-bound
checker, then cross-checks the certified level with a large randomized
search.  Transversality of the difference series g(x) = 1 + sum c_k x^k
(c_k in {-1, 0, 1}, both summands admissible) is what makes the
projected measures well-behaved.
"""

from betabaker import (Certified, Randomized, beta_n_word, epsilon_bound,
                       find_delta, solve_beta, verify_transversality)


def main():
    beta, system = solve_beta(beta_n_word(1))
    eps = epsilon_bound(beta)
    print(f"beta_1 = {beta:.6f}, epsilon = {eps:.3e}")

    found = find_delta(system, eps, 25, Certified(5_000_000))
    if found is None:
        print("no delta on the grid could be certified")
        return
    delta, report = found
    print(f"certified delta = {delta:.3e} "
          f"({report.boxes_checked} boxes, interval {report.interval})")

    recheck = verify_transversality(system, eps, delta, 25,
                                    Randomized(100_000, seed=0))
    print(f"randomized re-check at the same delta: {recheck.status}")


if __name__ == "__main__":
    main()
