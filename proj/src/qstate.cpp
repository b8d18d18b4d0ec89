#include "qgossip/qstate.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace qgossip {

QubitState standard_state(StandardState s) {
  QubitState out;
  switch (s) {
    case StandardState::ket0:
      out << 1, 0, 0, 0;
      break;
    case StandardState::ket1:
      out << 0, 0, 0, 1;
      break;
    case StandardState::plus:
      out << 0.5, 0.5, 0.5, 0.5;
      break;
    case StandardState::minus:
      out << 0.5, -0.5, -0.5, 0.5;
      break;
  }
  return out;
}

DensityMatrix::DensityMatrix(int num_qubits, Eigen::MatrixXcd data)
    : num_qubits_(num_qubits), data_(std::move(data)) {
  if (num_qubits_ < 1) throw std::invalid_argument("density matrix needs at least one qubit");
  const Eigen::Index expected = Eigen::Index(1) << num_qubits_;
  if (data_.rows() != expected || data_.cols() != expected)
    throw std::invalid_argument("density matrix dimension does not match qubit count");
  if (std::abs(data_.trace().real() - 1.0) > kTraceTol || std::abs(data_.trace().imag()) > kTraceTol)
    throw std::invalid_argument("density matrix trace is not 1");
  if ((data_ - data_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol)
    throw std::invalid_argument("density matrix is not Hermitian");
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(data_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double DensityMatrix::purity() const {
  return (data_ * data_).trace().real();
}

DensityMatrix product_state(const std::vector<QubitState>& factors, int qubit_cap) {
  if (factors.empty()) throw std::invalid_argument("product_state needs at least one factor");
  if (static_cast<int>(factors.size()) > qubit_cap)
    throw std::invalid_argument("product_state exceeds the qubit cap");
  Eigen::MatrixXcd acc = factors.front();
  for (std::size_t f = 1; f < factors.size(); ++f) {
    const Eigen::MatrixXcd& next = factors[f];
    Eigen::MatrixXcd out(acc.rows() * 2, acc.cols() * 2);
    for (Eigen::Index r = 0; r < acc.rows(); ++r)
      for (Eigen::Index c = 0; c < acc.cols(); ++c)
        out.block<2, 2>(2 * r, 2 * c) = acc(r, c) * next;
    acc = std::move(out);
  }
  return DensityMatrix(static_cast<int>(factors.size()), std::move(acc));
}

std::vector<std::uint32_t> basis_index_map(const Permutation& p) {
  const int n = p.size();
  if (n > 30) throw std::invalid_argument("basis_index_map: too many qubits");
  const std::uint32_t dim = 1u << n;
  std::vector<std::uint32_t> sigma(dim, 0);
  // Bit position of qubit j in a basis index (qubit 0 most significant).
  std::vector<int> pos(n);
  for (int j = 0; j < n; ++j) pos[j] = n - 1 - j;
  for (std::uint32_t a = 0; a < dim; ++a) {
    std::uint32_t out = 0;
    for (int j = 0; j < n; ++j) out |= ((a >> pos[p(j)]) & 1u) << pos[j];
    sigma[a] = out;
  }
  return sigma;
}

Eigen::MatrixXd permutation_unitary(const Permutation& p, int qubit_cap) {
  if (p.size() > qubit_cap) throw std::invalid_argument("permutation_unitary exceeds the qubit cap");
  const auto sigma = basis_index_map(p);
  const auto dim = static_cast<Eigen::Index>(sigma.size());
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) u(sigma[static_cast<std::size_t>(c)], c) = 1.0;
  return u;
}

DensityMatrix conjugate_by_permutation(const DensityMatrix& rho, const Permutation& p) {
  if (p.size() != rho.num_qubits())
    throw std::invalid_argument("conjugate_by_permutation: qubit count mismatch");
  const auto sigma = basis_index_map(p);
  const auto& in = rho.matrix();
  const Eigen::Index dim = in.rows();
  Eigen::MatrixXcd out(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a)
    for (Eigen::Index b = 0; b < dim; ++b)
      out(a, b) = in(sigma[static_cast<std::size_t>(a)], sigma[static_cast<std::size_t>(b)]);
  return DensityMatrix(rho.num_qubits(), std::move(out));
}

QubitState partial_trace_qubit(const DensityMatrix& rho, int qubit) {
  const int n = rho.num_qubits();
  if (qubit < 0 || qubit >= n) throw std::invalid_argument("partial_trace_qubit: index out of range");
  const int pos = n - 1 - qubit;
  const std::uint32_t bit = 1u << pos;
  const std::uint32_t rest = 1u << (n - 1);
  const auto& in = rho.matrix();
  QubitState out = QubitState::Zero();
  for (std::uint32_t env = 0; env < rest; ++env) {
    // Spread env bits around the traced qubit's position.
    const std::uint32_t low = env & (bit - 1);
    const std::uint32_t high = (env >> pos) << (pos + 1);
    const std::uint32_t base = high | low;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        out(r, c) += in(base | (static_cast<std::uint32_t>(r) * bit),
                        base | (static_cast<std::uint32_t>(c) * bit));
  }
  return out;
}

std::vector<QubitState> reduced_states(const DensityMatrix& rho) {
  std::vector<QubitState> out;
  out.reserve(static_cast<std::size_t>(rho.num_qubits()));
  for (int q = 0; q < rho.num_qubits(); ++q) out.push_back(partial_trace_qubit(rho, q));
  return out;
}

double hs_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("hs_distance: shape mismatch");
  return (a - b).norm();
}

}  // namespace qgossip
