#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace depthforge {

using cxd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

constexpr double kHermitianTol = 1e-12;
constexpr double kUnitaryTol = 1e-12;

// Local basis convention, fixed globally: bit p of a local index is the value
// of the p-th qubit of the support tuple, so support[0] is the least
// significant bit. A ket string "011" lists qubit values left to right
// starting with support[0].
uint64_t ket_index(const std::string& bits);

// |a><b| on bits.size() qubits.
Mat ket_bra(const std::string& a, const std::string& b);

// Projector |b><b|.
Mat ket_proj(const std::string& b);

double max_abs(const Mat& m);
bool is_hermitian(const Mat& m, double tol = kHermitianTol);
bool is_unitary(const Mat& m, double tol = kUnitaryTol);

// exp(i theta H) for Hermitian H via eigendecomposition. Exact up to the
// eigensolver; used as the structure-blind oracle for local exponentials.
Mat expi_hermitian(const Mat& h, double theta);

// True if U is block-diagonal in the standard basis of local qubit position
// `bit`, i.e. the gate only reads that qubit (control-like action).
bool block_diagonal_on_bit(const Mat& u, int bit, double tol = 1e-12);

double spectral_norm(const Mat& h);

std::string format_double(double v);  // shortest round-trip decimal

}  // namespace depthforge
