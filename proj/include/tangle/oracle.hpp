#pragma once

// Brute-force verification path: dense 8-dimensional propagation, Wootters
// concurrence, and the CKW (monogamy) form of the 3-tangle. Shares no code
// with the closed-form production path.

#include <random>

#include "tangle/ghz_state.hpp"

namespace tangle {

Matrix4 kron(const Matrix2& a, const Matrix2& b);
Matrix8 kron(const Matrix4& a, const Matrix2& b);

// H = gx X(x)X(x)X + gy Y(x)Y(x)Y; Hermitian, H^2 = (gx^2+gy^2) I
Matrix8 hamiltonian_matrix(const HamiltonianParams& h);

// exp(A) for an 8x8 matrix by scaling-and-squaring Taylor summation
Matrix8 matrix_exponential(const Matrix8& a);

// psi(t) = exp(-i H t / hbar) psi; norm is checked to 1e-10
State8 matrix_exp_evolve(const State8& psi, const HamiltonianParams& h, double t);

// dense unitary of a LocalOp (phase shift / sigma_z on one qubit, X on all three)
Matrix8 unitary_of(const LocalOp& op);

// partial traces; qubit index 0 is the leftmost label in |nlm>
Matrix2 reduce_single(const State8& psi, int qubit);
Matrix4 reduce_pair(const State8& psi, int q1, int q2);

// Wootters concurrence C = max(0, l1-l2-l3-l4) from the decreasing square
// roots of eigenvalues of rho (sy(x)sy) rho* (sy(x)sy)
double concurrence_2q(const Matrix4& rho);

// tau = C^2_{a|bc} - C^2_{a|b} - C^2_{a|c} with C^2_{a|bc} = 2(1 - Tr rho_a^2)
double ckw_tangle(const State8& psi);

// deterministic uniform in [0,1) from the raw engine (distribution-free, so
// results are identical across standard library implementations)
inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform_unit(rng);
}

double gaussian(std::mt19937_64& rng);  // Box-Muller on uniform_unit

State8 haar_state(std::mt19937_64& rng);
GHZState random_ghz(std::mt19937_64& rng);

}  // namespace tangle
