#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qgossip/perm.hpp"

namespace qgossip {

// Tensor-order convention, used everywhere: qubit 0 occupies the MOST
// significant bit of a basis index. Basis index b of an n-qubit space is
// read as the bit string (b_0 b_1 ... b_{n-1}) with b_0 = bit of qubit 0.
//
// The permutation operator U_p sends |c_0 ... c_{n-1}> to the basis vector
// whose qubit-j bit is c_{p(j)}. Conjugation U_p^dag rho U_p is therefore a
// pure relabeling: entry (a, b) of the result is rho(sigma(a), sigma(b))
// where sigma is basis_index_map(p).

using Complex = std::complex<double>;
using QubitState = Eigen::Matrix2cd;

inline constexpr int kDefaultQubitCap = 10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kHermitianTol = 1e-10;

enum class StandardState { ket0, ket1, plus, minus };

// Rank-1 projector onto |0>, |1>, |+> = (|0>+|1>)/sqrt2, |-> = (|0>-|1>)/sqrt2.
QubitState standard_state(StandardState s);

// n-qubit density operator: Hermitian, trace one, positive semidefinite.
// Trace and Hermiticity are enforced on construction; positivity is checked
// on demand via min_eigenvalue().
class DensityMatrix {
 public:
  DensityMatrix(int num_qubits, Eigen::MatrixXcd data);

  int num_qubits() const { return num_qubits_; }
  Eigen::Index dim() const { return data_.rows(); }
  const Eigen::MatrixXcd& matrix() const { return data_; }

  double min_eigenvalue() const;
  double purity() const;  // tr(rho^2), real by Hermiticity

 private:
  int num_qubits_;
  Eigen::MatrixXcd data_;
};

// Tensor product of single-qubit states, qubit 0 first (most significant).
DensityMatrix product_state(const std::vector<QubitState>& factors,
                            int qubit_cap = kDefaultQubitCap);

// sigma with sigma(a)'s qubit-j bit equal to a's qubit-p(j) bit; the
// relabeling realized by U_p on basis indices, U_p e_a = e_{sigma(a)}.
std::vector<std::uint32_t> basis_index_map(const Permutation& p);

// Explicit 2^n x 2^n 0/1 matrix of U_p. Intended for small n; throws once
// 2^n exceeds the cap.
Eigen::MatrixXd permutation_unitary(const Permutation& p, int qubit_cap = kDefaultQubitCap);

// U_p^dag rho U_p via index relabeling; never materializes U_p.
DensityMatrix conjugate_by_permutation(const DensityMatrix& rho, const Permutation& p);

// Reduced state of one qubit (0-based index), tracing out all others.
QubitState partial_trace_qubit(const DensityMatrix& rho, int qubit);

// All single-qubit reduced states at once.
std::vector<QubitState> reduced_states(const DensityMatrix& rho);

// Frobenius (Hilbert-Schmidt) norm of a - b.
double hs_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace qgossip
