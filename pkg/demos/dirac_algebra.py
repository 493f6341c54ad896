"""Matrix identities behind the first-order wave operator.

Prints the anticommutator table, the exact factorization of the quadratic
form, and the constant matrix relating the two operator orderings used by
the residual diagnostics.
"""
import numpy as np

from fourvel import (NATURAL_UNITS, clifford_residual, factorization_residual,
                     form_relation_matrix, gamma_dot, gamma_matrices)


def main():
    g = gamma_matrices()
    print("representation:", g.representation)
    print("clifford closure residual:", clifford_residual(g))

    print("\nanticommutator diagonal (gamma_mu gamma_mu = I):")
    for mu in range(4):
        sq = g.gammas[mu] @ g.gammas[mu]
        print(f"  mu = {mu + 1}: max|gamma^2 - I| =",
              float(np.max(np.abs(sq - np.eye(4)))))

    rng = np.random.default_rng(99)
    worst_sq = 0.0
    worst_fact = 0.0
    for _ in range(200):
        p = rng.normal(size=4) + 1j * rng.normal(size=4)
        gp = gamma_dot(g, p)
        worst_sq = max(worst_sq, float(np.max(np.abs(
            gp @ gp - complex(np.sum(p * p)) * np.eye(4)))))
        worst_fact = max(worst_fact,
                         factorization_residual(g, p, NATURAL_UNITS))
    print("\n200 random complex 4-vectors:")
    print(f"  worst |(gamma.P)^2 - P.P I|          = {worst_sq:.3e}")
    print(f"  worst factorization residual         = {worst_fact:.3e}")

    m_rel = form_relation_matrix(NATURAL_UNITS)
    print("\nconstant matrix M with residual_gamma = M residual_alphabeta:")
    print(np.round(m_rel, 12))


if __name__ == "__main__":
    main()
