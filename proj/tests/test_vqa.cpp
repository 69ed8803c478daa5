#include <doctest.h>

#include <cmath>
#include <random>

#include "depthforge/dense.hpp"
#include "depthforge/serialize.hpp"
#include "depthforge/simulator.hpp"
#include "depthforge/vqa.hpp"
#include "fixtures.hpp"

using namespace depthforge;
namespace fx = depthforge::fixtures;

namespace {

// Independent table of the four defining equations, coded directly from the
// ket patterns rather than through the builder helpers.
Mat expected_f() {
  Mat m = Mat::Zero(4, 4);
  m(ket_index("01"), ket_index("10")) = 1.0;
  m(ket_index("10"), ket_index("01")) = 1.0;
  return m;
}

Mat expected_g() {
  Mat m = Mat::Zero(8, 8);
  m(ket_index("011"), ket_index("101")) = 1.0;
  m(ket_index("101"), ket_index("011")) = 1.0;
  return m;
}

Mat expected_p() {
  Mat m = Mat::Zero(8, 8);
  m(ket_index("111"), ket_index("011")) = 1.0;
  m(ket_index("011"), ket_index("111")) = 1.0;
  return m;
}

Mat expected_q(const Mat& v) {
  const int gq = v.rows() == 2 ? 1 : 2;
  const int64_t gdim = int64_t{1} << gq;
  Mat m = Mat::Zero(4 * gdim, 4 * gdim);
  for (int64_t r = 0; r < gdim; ++r) {
    for (int64_t c = 0; c < gdim; ++c) {
      // |01><10| on the C pair occupies local bits gq and gq+1
      m(r + 2 * gdim, c + gdim) += v(r, c);
      m(r + gdim, c + 2 * gdim) += std::conj(v(c, r));
    }
  }
  return m;
}

}  // namespace

TEST_CASE("thresholds and counts on the reference instance") {
  const VqaInstance inst = fx::ref_vqa();
  CHECK(inst.regs.a == 2);
  CHECK(inst.regs.b == 4);
  CHECK(inst.regs.c == 6);
  CHECK(inst.regs.d == 4);
  CHECK(inst.m == 12);        // 1*(2*4-1) + 2 + 3
  CHECK(inst.m_prime == 19);  // 2*7 + 2 + 3
  CHECK(inst.generators.size() == 10);  // 2|A| + L + |D| - 1
  CHECK(inst.m_prime - inst.m ==
        (inst.source.g_prime - inst.source.g) * (2LL * inst.regs.d - 1));
}

TEST_CASE("zero thresholds collapse to |A| + L") {
  const VqaInstance inst = build_vqa(fx::qmsa_of(fx::core_zero_gate(2), 0, 0), 0.1, 4);
  CHECK(inst.m == inst.regs.a + inst.verifier_gate_count());
  CHECK(inst.m == inst.m_prime);
}

TEST_CASE("build rejects unpreprocessed circuits and tiny D") {
  QmsaInstance raw;
  raw.circuit = fx::core_y1_acceptor(2);
  raw.g = 1;
  raw.g_prime = 2;
  CHECK_THROWS(build_vqa(raw, 0.1, 4));
  CHECK_THROWS(build_vqa(fx::qmsa_of(fx::core_y1_acceptor(2), 1, 2), 0.1, 1));
}

TEST_CASE("default |D| follows ceil(L^(1+delta))") {
  const VqaInstance inst = build_vqa(fx::qmsa_of(fx::core_y1_acceptor(2), 1, 2), 0.25);
  const double l = inst.verifier_gate_count();
  CHECK(inst.regs.d == static_cast<int>(std::ceil(std::pow(l, 1.25))));
}

TEST_CASE("every generator matches its defining equation entrywise") {
  // n_V = 3, L = 4, |D| = 6 stays within the checked desk range
  const VqaInstance big = build_vqa(fx::qmsa_of(fx::core_zero_gate(3), 1, 3), 0.1, 6);
  for (const VqaInstance& inst : {fx::ref_vqa(), big}) {
    for (const Generator& g : inst.generators) {
      Mat expected;
      switch (g.family) {
        case Family::F: expected = expected_f(); break;
        case Family::G: expected = expected_g(); break;
        case Family::P: expected = expected_p(); break;
        case Family::Q: {
          const Gate& gate = inst.source.circuit.gates[static_cast<size_t>(g.index - 1)];
          expected = expected_q(gate.matrix);
          break;
        }
        default: FAIL("unexpected family"); continue;
      }
      CHECK(max_abs(Mat(g.matrix - expected)) <= 1e-15);
    }
    Mat m_expected = Mat::Identity(4, 4);
    m_expected(ket_index("11"), ket_index("11")) = 0.0;
    CHECK(max_abs(Mat(inst.observable.matrix - m_expected)) <= 1e-15);
  }
}

TEST_CASE("squared generators are the projectors behind the closed forms") {
  const VqaInstance inst = fx::ref_vqa();
  for (const Generator& g : inst.generators) {
    const Mat h2 = g.matrix * g.matrix;
    CHECK(is_hermitian(h2, 1e-12));
    // H^2 is idempotent (a projector) for every family
    CHECK(max_abs(Mat(h2 * h2 - h2)) <= 1e-12);
    CHECK(max_abs(Mat(h2 * g.matrix - g.matrix)) <= 1e-12);
  }
  // spot-check the displayed identities: F^2 and Q^2 project onto {01,10}
  const Generator* f1 = inst.find(Family::F, 1);
  Mat proj = Mat::Zero(4, 4);
  proj(ket_index("01"), ket_index("01")) = 1.0;
  proj(ket_index("10"), ket_index("10")) = 1.0;
  CHECK(max_abs(Mat(f1->matrix * f1->matrix - proj)) <= 1e-15);
  const Generator* p1 = inst.find(Family::P, 1);
  Mat pproj = Mat::Zero(8, 8);
  pproj(ket_index("011"), ket_index("011")) = 1.0;
  pproj(ket_index("111"), ket_index("111")) = 1.0;
  CHECK(max_abs(Mat(p1->matrix * p1->matrix - pproj)) <= 1e-15);
}

TEST_CASE("conjugation by the zero string is the identity") {
  const VqaInstance inst = fx::ref_vqa();
  const VqaInstance same = conjugate_instance(inst, std::string(inst.regs.total(), '0'));
  for (size_t i = 0; i < inst.generators.size(); ++i) {
    CHECK(max_abs(Mat(inst.generators[i].matrix - same.generators[i].matrix)) == 0.0);
  }
}

TEST_CASE("conjugation by the start-state string rewrites P1 as expected") {
  const VqaInstance inst = fx::ref_vqa();
  std::string x(inst.regs.total(), '0');
  x[static_cast<size_t>(inst.regs.qc(1))] = '1';
  x[static_cast<size_t>(inst.regs.qd(1))] = '1';
  const VqaInstance conj = conjugate_instance(inst, x);
  // P1 supports (A_1, C_1, D_|D|); only C_1 is flipped, so the |1><1|_{C_1}
  // control becomes |0><0|.
  Mat expected = Mat::Zero(8, 8);
  expected(ket_index("101"), ket_index("001")) = 1.0;
  expected(ket_index("001"), ket_index("101")) = 1.0;
  CHECK(max_abs(Mat(conj.find(Family::P, 1)->matrix - expected)) <= 1e-15);
}

TEST_CASE("conjugated instance evolves |0...0> like the original evolves |x>") {
  const VqaInstance inst = fx::ref_vqa();
  const int n = inst.regs.total();
  std::mt19937_64 rng(5150);
  std::uniform_real_distribution<double> angle(-3.14159, 3.14159);
  std::uniform_int_distribution<size_t> pick(0, inst.generators.size() - 1);

  std::string x(static_cast<size_t>(n), '0');
  for (auto& ch : x) ch = (rng() & 1) ? '1' : '0';
  const VqaInstance conj = conjugate_instance(inst, x);

  Vec from_x = DenseState::from_bitstring(x).amps;
  Vec from_zero = DenseState::zero_state(n).amps;
  for (int step = 0; step < 5; ++step) {
    const size_t gi = pick(rng);
    const double th = angle(rng);
    expi_apply_local(from_x, n, inst.generators[gi].support, inst.generators[gi].matrix, th);
    expi_apply_local(from_zero, n, conj.generators[gi].support, conj.generators[gi].matrix, th);
  }
  // undo the basis change on the conjugated run
  for (int q = 0; q < n; ++q) {
    if (x[static_cast<size_t>(q)] == '1') {
      Mat xm = Mat::Zero(2, 2);
      xm(0, 1) = 1.0;
      xm(1, 0) = 1.0;
      apply_local(from_zero, n, {q}, xm);
    }
  }
  CHECK((from_x - from_zero).norm() <= 1e-10);
}

TEST_CASE("encoding size is the documented deterministic count") {
  const VqaInstance inst = fx::ref_vqa();
  // 10 generators on 16 qubits: 10*(64+4*4) + (64+2*4) + bits(12) + bits(19)
  CHECK(encoding_size(inst) == 10 * (64 + 16) + (64 + 8) + 4 + 5);
  CHECK(encoding_size(inst) >= static_cast<long long>(inst.generators.size()));
}

TEST_CASE("hardness ratio is exact rational arithmetic") {
  CHECK(hardness_ratio(fx::ref_vqa()).str() == "19/12");
  const VqaInstance flat = build_vqa(fx::qmsa_of(fx::core_zero_gate(2), 2, 2), 0.1, 4);
  CHECK(hardness_ratio(flat).str() == "1");

  double prev = 0.0;
  for (int d : {10, 100, 1000}) {
    const VqaInstance inst = build_vqa(fx::qmsa_of(fx::core_zero_gate(2), 1, 10), 0.1, d);
    const double r = hardness_ratio(inst).value();
    CHECK(r < 10.0);
    CHECK(r > prev);  // approaches g'/g = 10 from below
    prev = r;
  }
  CHECK(prev == doctest::Approx(10.0).epsilon(1e-2));
}

TEST_CASE("parameter planning finds exponents for large L' and fails for small") {
  const auto plan = plan_parameters(0.5, 1000000, 1000, 8.0);
  REQUIRE(plan.has_value());
  CHECK(plan->epsilon_prime < 0.5);
  CHECK(plan->delta < 0.3);
  CHECK(ratio_inequality_holds(0.5, plan->epsilon_prime, plan->delta, 1000000, 1000, 8.0));

  CHECK(!plan_parameters(0.5, 4, 2, 8.0).has_value());
}
