#include "tangle/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>

namespace tangle {

namespace {

const Matrix2 sigma_x = (Matrix2() << 0, 1, 1, 0).finished();
const Matrix2 sigma_y = (Matrix2() << 0, Complex(0, -1), Complex(0, 1), 0).finished();

}  // namespace

Matrix4 kron(const Matrix2& a, const Matrix2& b) {
  Matrix4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

Matrix8 kron(const Matrix4& a, const Matrix2& b) {
  Matrix8 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

Matrix8 hamiltonian_matrix(const HamiltonianParams& h) {
  validate(h);
  return h.gamma_x * kron(kron(sigma_x, sigma_x), sigma_x) +
         h.gamma_y * kron(kron(sigma_y, sigma_y), sigma_y);
}

Matrix8 matrix_exponential(const Matrix8& a) {
  // scale so the Taylor series converges fast, sum to machine tail, square back
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Matrix8 b = a / std::pow(2.0, squarings);
  Matrix8 term = Matrix8::Identity();
  Matrix8 sum = Matrix8::Identity();
  for (int k = 1; k <= 40; ++k) {
    term = (term * b / static_cast<double>(k)).eval();
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-16) break;
  }
  for (int s = 0; s < squarings; ++s) sum = (sum * sum).eval();
  return sum;
}

State8 matrix_exp_evolve(const State8& psi, const HamiltonianParams& h, double t) {
  require_finite(t, "t");
  if (std::abs(psi.squaredNorm() - 1.0) > 1e-8)
    throw std::invalid_argument("matrix_exp_evolve: input state not normalized");
  const Matrix8 u = matrix_exponential(Complex(0.0, -t / h.hbar) * hamiltonian_matrix(h));
  State8 out = u * psi;
  if (std::abs(out.norm() - 1.0) > 1e-10)
    throw std::logic_error("matrix_exp_evolve: propagator lost unitarity");
  return out;
}

Matrix8 unitary_of(const LocalOp& op) {
  if (op.kind == LocalOp::Kind::Flip) {
    const Matrix8 xxx = kron(kron(sigma_x, sigma_x), sigma_x);
    return xxx;
  }
  Matrix2 g = Matrix2::Identity();
  g(1, 1) = op.kind == LocalOp::Kind::SigmaZ ? Complex(-1.0, 0.0) : std::polar(1.0, op.delta);
  std::array<Matrix2, 3> f = {Matrix2::Identity(), Matrix2::Identity(), Matrix2::Identity()};
  f[static_cast<std::size_t>(op.target)] = g;
  return kron(kron(f[0], f[1]), f[2]);
}

namespace {

// bit position of a qubit inside the basis index 4n+2l+m
inline int bit_of(int qubit) { return 2 - qubit; }

}  // namespace

Matrix2 reduce_single(const State8& psi, int qubit) {
  if (qubit < 0 || qubit > 2) throw std::invalid_argument("qubit index must be 0, 1 or 2");
  const int b = bit_of(qubit);
  Matrix2 rho = Matrix2::Zero();
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      if ((i & ~(1 << b)) != (j & ~(1 << b))) continue;
      rho((i >> b) & 1, (j >> b) & 1) += psi(i) * std::conj(psi(j));
    }
  return rho;
}

Matrix4 reduce_pair(const State8& psi, int q1, int q2) {
  if (q1 < 0 || q1 > 2 || q2 < 0 || q2 > 2 || q1 == q2)
    throw std::invalid_argument("need two distinct qubit indices in {0,1,2}");
  const int b1 = bit_of(q1), b2 = bit_of(q2);
  const int keep = (1 << b1) | (1 << b2);
  Matrix4 rho = Matrix4::Zero();
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      if ((i & ~keep) != (j & ~keep)) continue;
      const int ri = (((i >> b1) & 1) << 1) | ((i >> b2) & 1);
      const int rj = (((j >> b1) & 1) << 1) | ((j >> b2) & 1);
      rho(ri, rj) += psi(i) * std::conj(psi(j));
    }
  return rho;
}

double concurrence_2q(const Matrix4& rho) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
    throw std::invalid_argument("concurrence_2q: density matrix not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > 1e-9)
    throw std::invalid_argument("concurrence_2q: trace must be 1");
  Eigen::SelfAdjointEigenSolver<Matrix4> es_rho(rho);
  if (es_rho.eigenvalues().minCoeff() < -1e-9)
    throw std::invalid_argument("concurrence_2q: density matrix not positive semidefinite");

  // eigenvalues of rho (yy) rho* (yy) through the Hermitian-similar form
  // sqrt(rho) (yy) rho* (yy) sqrt(rho): same spectrum, but the self-adjoint
  // solver keeps the structural zeros at machine precision
  Matrix4 sqrt_rho = Matrix4::Zero();
  for (int i = 0; i < 4; ++i)
    sqrt_rho += std::sqrt(std::max(0.0, es_rho.eigenvalues()(i))) *
                es_rho.eigenvectors().col(i) * es_rho.eigenvectors().col(i).adjoint();
  const Matrix4 yy = kron(sigma_y, sigma_y);
  const Matrix4 m = sqrt_rho * yy * rho.conjugate() * yy * sqrt_rho;
  Eigen::SelfAdjointEigenSolver<Matrix4> es(m, Eigen::EigenvaluesOnly);
  const double top = std::max(es.eigenvalues().maxCoeff(), 0.0);
  std::array<double, 4> lam{};
  for (int i = 0; i < 4; ++i) {
    double v = es.eigenvalues()(i);
    if (v < -1e-9) throw std::logic_error("concurrence_2q: spin-flip spectrum negative");
    if (v < 1e-12 * std::max(top, 1e-300)) v = 0.0;  // exact rank deficiency
    lam[static_cast<std::size_t>(i)] = std::sqrt(v);
  }
  std::sort(lam.begin(), lam.end(), std::greater<>());
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double ckw_tangle(const State8& psi) {
  if (std::abs(psi.squaredNorm() - 1.0) > 1e-8)
    throw std::invalid_argument("ckw_tangle: state not normalized");
  const Matrix2 rho_a = reduce_single(psi, 0);
  const double c2_a_bc = 2.0 * (1.0 - (rho_a * rho_a).trace().real());
  const double c_ab = concurrence_2q(reduce_pair(psi, 0, 1));
  const double c_ac = concurrence_2q(reduce_pair(psi, 0, 2));
  const double tau = c2_a_bc - c_ab * c_ab - c_ac * c_ac;
  if (tau < -1e-8) throw std::logic_error("ckw_tangle: negative beyond tolerance");
  return std::max(0.0, tau);
}

double gaussian(std::mt19937_64& rng) {
  double u1 = uniform_unit(rng);
  while (u1 <= 0.0) u1 = uniform_unit(rng);
  const double u2 = uniform_unit(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

State8 haar_state(std::mt19937_64& rng) {
  State8 v;
  for (int i = 0; i < 8; ++i) v(i) = Complex(gaussian(rng), gaussian(rng));
  return v / v.norm();
}

GHZState random_ghz(std::mt19937_64& rng) {
  return GHZState(uniform_unit(rng), uniform(rng, 0.0, two_pi));
}

}  // namespace tangle
