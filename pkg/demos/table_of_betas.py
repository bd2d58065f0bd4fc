"""Solve the beta_n family and print the reference table.

Each beta_n is the root of 1 = phi_beta(d_n) where d_n is the eventually
periodic word (1, 0^n, (1, 0^(n+1))^inf).  The reciprocals 1/beta_n are
the fiber contraction rates at which the skew-product attractor first
becomes area-degenerate.
"""

from betabaker import beta_n_word, solve_beta


def main():
    print(f"{'n':>2}  {'word':<22}  {'beta_n':>9}  {'1/beta_n':>9}")
    for n in range(1, 9):
        w = beta_n_word(n)
        beta, _ = solve_beta(w)
        print(f"{n:>2}  {str(w):<22}  {beta:>9.6f}  {1.0 / beta:>9.6f}")


if __name__ == "__main__":
    main()
