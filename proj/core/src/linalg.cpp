#include "depthforge/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <charconv>
#include <stdexcept>

namespace depthforge {

uint64_t ket_index(const std::string& bits) {
  uint64_t idx = 0;
  for (size_t p = 0; p < bits.size(); ++p) {
    if (bits[p] == '1') {
      idx |= uint64_t{1} << p;
    } else if (bits[p] != '0') {
      throw std::invalid_argument("ket string must be over {0,1}: " + bits);
    }
  }
  return idx;
}

Mat ket_bra(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) throw std::invalid_argument("ket_bra size mismatch");
  const auto dim = int64_t{1} << a.size();
  Mat m = Mat::Zero(dim, dim);
  m(static_cast<int64_t>(ket_index(a)), static_cast<int64_t>(ket_index(b))) = 1.0;
  return m;
}

Mat ket_proj(const std::string& b) { return ket_bra(b, b); }

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

bool is_hermitian(const Mat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(Mat(m - m.adjoint())) <= tol;
}

bool is_unitary(const Mat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  Mat d = m.adjoint() * m - Mat::Identity(m.rows(), m.cols());
  return max_abs(d) <= tol;
}

Mat expi_hermitian(const Mat& h, double theta) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  const auto& lam = es.eigenvalues();
  const Mat& v = es.eigenvectors();
  Vec phases(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    phases(i) = std::exp(cxd(0.0, theta * lam(i)));
  }
  return v * phases.asDiagonal() * v.adjoint();
}

bool block_diagonal_on_bit(const Mat& u, int bit, double tol) {
  const int64_t dim = u.rows();
  const int64_t mask = int64_t{1} << bit;
  for (int64_t r = 0; r < dim; ++r) {
    for (int64_t c = 0; c < dim; ++c) {
      if (((r ^ c) & mask) != 0 && std::abs(u(r, c)) > tol) return false;
    }
  }
  return true;
}

double spectral_norm(const Mat& h) {
  if (is_hermitian(h, 1e-9)) {
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::JacobiSVD<Mat> svd(h);
  return svd.singularValues()(0);
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace depthforge
