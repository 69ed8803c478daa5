#include "depthforge/dense.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>
#include <stdexcept>

namespace depthforge {

DenseState DenseState::zero_state(int n) { return basis_state(n, 0); }

DenseState DenseState::basis_state(int n, uint64_t index) {
  if (n < 0 || n > 30) throw std::invalid_argument("width overflow");
  DenseState s;
  s.n_qubits = n;
  s.amps = Vec::Zero(int64_t{1} << n);
  s.amps(static_cast<int64_t>(index)) = 1.0;
  return s;
}

DenseState DenseState::from_bitstring(const std::string& bits) {
  return basis_state(static_cast<int>(bits.size()), bitstring_to_index(bits));
}

uint64_t bitstring_to_index(const std::string& bits) {
  uint64_t idx = 0;
  for (size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') idx |= uint64_t{1} << i;
  }
  return idx;
}

namespace {

struct SupportLayout {
  uint64_t support_mask = 0;
  std::vector<uint64_t> deposit;  // local index -> scattered bit pattern
  std::vector<int> free_bits;     // non-support qubit positions
};

SupportLayout layout_for(int n_qubits, const std::vector<int>& support) {
  SupportLayout lay;
  for (int q : support) {
    if (q < 0 || q >= n_qubits) throw std::invalid_argument("support qubit out of range");
    if ((lay.support_mask >> q) & 1) throw std::invalid_argument("duplicate support qubit");
    lay.support_mask |= uint64_t{1} << q;
  }
  const size_t k = support.size();
  lay.deposit.assign(size_t{1} << k, 0);
  for (uint64_t b = 0; b < (uint64_t{1} << k); ++b) {
    uint64_t dep = 0;
    for (size_t p = 0; p < k; ++p) {
      if ((b >> p) & 1) dep |= uint64_t{1} << support[p];
    }
    lay.deposit[b] = dep;
  }
  for (int q = 0; q < n_qubits; ++q) {
    if (!((lay.support_mask >> q) & 1)) lay.free_bits.push_back(q);
  }
  return lay;
}

bool matrix_is_diagonal(const Mat& m, double tol = 0.0) {
  for (int64_t r = 0; r < m.rows(); ++r) {
    for (int64_t c = 0; c < m.cols(); ++c) {
      if (r != c && std::abs(m(r, c)) > tol) return false;
    }
  }
  return true;
}

}  // namespace

void apply_local(Vec& amps, int n_qubits, const std::vector<int>& support, const Mat& u) {
  const size_t k = support.size();
  const int64_t dim_local = int64_t{1} << k;
  if (u.rows() != dim_local || u.cols() != dim_local) {
    throw std::invalid_argument("local matrix dimension mismatch");
  }
  const SupportLayout lay = layout_for(n_qubits, support);

  if (matrix_is_diagonal(u)) {
    const int64_t dim = amps.size();
    std::vector<cxd> diag(dim_local);
    for (int64_t b = 0; b < dim_local; ++b) diag[b] = u(b, b);
    for (int64_t idx = 0; idx < dim; ++idx) {
      uint64_t b = 0;
      for (size_t p = 0; p < k; ++p) b |= ((idx >> support[p]) & 1) << p;
      amps(idx) *= diag[b];
    }
    return;
  }

  const int n_free = static_cast<int>(lay.free_bits.size());
  const int64_t n_groups = int64_t{1} << n_free;
  std::vector<cxd> in(dim_local), out(dim_local);
  for (int64_t g = 0; g < n_groups; ++g) {
    uint64_t base = 0;
    for (int fb = 0; fb < n_free; ++fb) {
      if ((g >> fb) & 1) base |= uint64_t{1} << lay.free_bits[fb];
    }
    for (int64_t b = 0; b < dim_local; ++b) in[b] = amps(base | lay.deposit[b]);
    for (int64_t r = 0; r < dim_local; ++r) {
      cxd acc = 0.0;
      for (int64_t c = 0; c < dim_local; ++c) acc += u(r, c) * in[c];
      out[r] = acc;
    }
    for (int64_t b = 0; b < dim_local; ++b) amps(base | lay.deposit[b]) = out[b];
  }
}

void LocalOperator::add_term(std::vector<int> support, const Mat& matrix, double scale) {
  LocalTerm t;
  t.support = std::move(support);
  t.matrix = scale == 1.0 ? matrix : Mat(scale * matrix);
  if (!is_hermitian(t.matrix, 1e-9)) throw std::invalid_argument("local term not Hermitian");
  t.diagonal = matrix_is_diagonal(t.matrix, 0.0);
  t.snorm = spectral_norm(t.matrix);
  norm_bound_ += t.snorm;
  terms_.push_back(std::move(t));
}

Vec LocalOperator::apply(const Vec& in) const {
  Vec out = Vec::Zero(in.size());
  for (const auto& t : terms_) {
    Vec tmp = in;
    apply_local(tmp, n_, t.support, t.matrix);
    out += tmp;
  }
  return out;
}

Mat LocalOperator::materialize() const {
  if (n_ > 14) throw std::invalid_argument("refusing to materialize above 14 qubits");
  const int64_t dim = int64_t{1} << n_;
  Mat full = Mat::Zero(dim, dim);
  Vec e = Vec::Zero(dim);
  for (int64_t c = 0; c < dim; ++c) {
    e.setZero();
    e(c) = 1.0;
    full.col(c) = apply(e);
  }
  return full;
}

double LocalOperator::expectation(const Vec& psi) const {
  const cxd v = psi.dot(apply(psi));  // Eigen dot conjugates the left side
  return v.real();
}

Vec LocalOperator::expi_apply_taylor(double theta, const Vec& in, double tol) const {
  const double total = std::abs(theta) * norm_bound_;
  int64_t s = 1;
  while (total / static_cast<double>(s) > 1.0) s <<= 1;
  const double x = total / static_cast<double>(s);
  // degree d with x^(d+1)/(d+1)! below the per-step budget
  const double step_tol = tol / static_cast<double>(s);
  int degree = 1;
  double term = x;
  while (term > step_tol && degree < 60) {
    ++degree;
    term *= x / degree;
  }
  const cxd it(0.0, theta / static_cast<double>(s));
  Vec psi = in;
  for (int64_t rep = 0; rep < s; ++rep) {
    Vec acc = psi;
    Vec pow = psi;
    cxd coeff = 1.0;
    for (int d = 1; d <= degree; ++d) {
      pow = apply(pow);
      coeff *= it / static_cast<double>(d);
      acc += coeff * pow;
    }
    psi = std::move(acc);
  }
  return psi;
}

Vec LocalOperator::expi_apply_product(double theta, const Vec& in) const {
  Vec psi = in;
  for (const auto& t : terms_) {
    expi_apply_local(psi, n_, t.support, t.matrix, theta);
  }
  return psi;
}

void expi_apply_local(Vec& amps, int n_qubits, const std::vector<int>& support, const Mat& h,
                      double theta) {
  apply_local(amps, n_qubits, support, expi_hermitian(h, theta));
}

double fidelity(const Vec& a, const Vec& b) { return std::abs(a.dot(b)); }

LanczosEigen lanczos_smallest(const LocalOperator& h, const LanczosOptions& opt,
                              const Vec* deflate) {
  const int64_t dim = int64_t{1} << h.n_qubits();
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> nd;
  Vec v(dim);
  for (int64_t i = 0; i < dim; ++i) v(i) = cxd(nd(rng), nd(rng));

  auto project_out = [&](Vec& x) {
    if (deflate != nullptr) x -= deflate->dot(x) * (*deflate);
  };
  project_out(v);
  v.normalize();

  std::vector<Vec> basis;
  std::vector<double> alpha, beta;
  basis.push_back(v);
  LanczosEigen best;
  Eigen::VectorXd ritz;

  for (int it = 0; it < opt.max_iters; ++it) {
    Vec w = h.apply(basis.back());
    project_out(w);
    const double a = basis.back().dot(w).real();
    alpha.push_back(a);
    w -= a * basis.back();
    if (basis.size() >= 2) w -= beta.back() * basis[basis.size() - 2];
    for (const Vec& u : basis) w -= u.dot(w) * u;  // full reorthogonalization
    for (const Vec& u : basis) w -= u.dot(w) * u;
    const double b = w.norm();

    const int k = static_cast<int>(alpha.size());
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) {
      tri(i, i) = alpha[i];
      if (i + 1 < k) tri(i, i + 1) = tri(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    ritz = es.eigenvectors().col(0);
    best.value = es.eigenvalues()(0);
    best.iterations = it + 1;
    best.residual = b * std::abs(ritz(k - 1));
    if (best.residual < opt.tol || b < 1e-14) break;

    beta.push_back(b);
    basis.push_back(w / b);
  }
  return best;
}

}  // namespace depthforge
