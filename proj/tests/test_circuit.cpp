#include <doctest.h>

#include <random>

#include "depthforge/circuit.hpp"
#include "fixtures.hpp"

using namespace depthforge;
namespace fx = depthforge::fixtures;

namespace {

std::string bits(uint32_t y, int n) {
  std::string s(n, '0');
  for (int i = 0; i < n; ++i) {
    if ((y >> i) & 1) s[i] = '1';
  }
  return s;
}

}  // namespace

TEST_CASE("gate invariants are enforced") {
  VerifierCircuit c;
  c.n_proof = 1;
  c.n_ancilla = 1;
  c.output_qubit = 1;
  Mat not_unitary = Mat::Identity(2, 2);
  not_unitary(0, 0) = 2.0;
  c.gates.push_back(make_1q(0, not_unitary));
  CHECK_THROWS(validate(c));

  c.gates.clear();
  c.gates.push_back(make_cnot(0, 0));
  CHECK_THROWS(validate(c));

  c.gates.clear();
  c.gates.push_back(make_cnot(0, 5));
  CHECK_THROWS(validate(c));
}

TEST_CASE("preprocess sizes follow L' + n_V' + 1") {
  const VerifierCircuit pre = preprocess(fx::core_zero_gate(2));
  CHECK(pre.gate_count() == 3);  // two transversal copies plus the output CNOT
  CHECK(pre.n_proof == 2);
  CHECK(pre.n_ancilla == 4);
  CHECK(pre.output_qubit == 2);
  CHECK(pre.flags.read_only_proof);
  CHECK(pre.flags.delayed_output);
}

TEST_CASE("preprocess is idempotent on compliant circuits") {
  const VerifierCircuit pre = preprocess(fx::core_y1_acceptor(2));
  const VerifierCircuit again = preprocess(pre);
  CHECK(again.gate_count() == pre.gate_count());
  CHECK(again.n_ancilla == pre.n_ancilla);
}

TEST_CASE("preprocessed y1 acceptor accepts exactly {10, 11}") {
  const VerifierCircuit pre = preprocess(fx::core_y1_acceptor(2));
  CHECK(accept_probability(pre, "10") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(accept_probability(pre, "11") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(accept_probability(pre, "00") == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(accept_probability(pre, "01") == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("preprocess preserves acceptance on every proof string") {
  std::mt19937_64 rng(11);
  VerifierCircuit c;
  c.n_proof = 2;
  c.n_ancilla = 2;
  c.output_qubit = 2;
  c.gates.push_back(make_2q(0, 2, fx::random_unitary(4, rng)));
  c.gates.push_back(make_2q(1, 3, fx::random_unitary(4, rng)));
  c.gates.push_back(make_2q(3, 2, fx::random_unitary(4, rng)));
  c.gates.push_back(make_1q(2, fx::random_unitary(2, rng)));
  const VerifierCircuit pre = preprocess(c);
  for (uint32_t y = 0; y < 4; ++y) {
    const double before = accept_probability(c, bits(y, 2));
    const double after = accept_probability(pre, bits(y, 2));
    CHECK(std::abs(before - after) <= 1e-12);
  }
}

TEST_CASE("accept_probability basics") {
  CHECK(accept_probability(fx::core_zero_gate(2), "11") == doctest::Approx(0.0));
  VerifierCircuit x_on_output;
  x_on_output.n_proof = 1;
  x_on_output.n_ancilla = 1;
  x_on_output.output_qubit = 1;
  x_on_output.gates.push_back(make_x(1));
  CHECK(accept_probability(x_on_output, "0") == doctest::Approx(1.0));
  CHECK(accept_probability(x_on_output, "1") == doctest::Approx(1.0));

  VerifierCircuit wide;
  wide.n_proof = 20;
  wide.n_ancilla = 6;
  wide.output_qubit = 20;
  CHECK_THROWS(accept_probability(wide, std::string(20, '0')));
}

TEST_CASE("min_satisfying_weight enumerates the acceptance oracle") {
  QmsaInstance y1;
  y1.circuit = preprocess(fx::core_y1_acceptor(2));
  y1.g = 1;
  y1.g_prime = 2;
  CHECK(min_satisfying_weight(y1, 2.0 / 3.0) == 1);

  QmsaInstance both;
  both.circuit = preprocess(fx::core_and_acceptor());
  both.g = 0;
  both.g_prime = 1;
  CHECK(min_satisfying_weight(both, 2.0 / 3.0) == 2);

  QmsaInstance never;
  never.circuit = preprocess(fx::core_zero_gate(2));
  never.g = 0;
  never.g_prime = 1;
  CHECK(!min_satisfying_weight(never, 2.0 / 3.0).has_value());
}

TEST_CASE("monotone acceptance on the designated test circuits") {
  for (const VerifierCircuit& core :
       {fx::core_y1_acceptor(2), fx::core_and_acceptor(), fx::core_const_rotation(2, 0.9)}) {
    const VerifierCircuit pre = preprocess(core);
    for (uint32_t y = 0; y < 4; ++y) {
      if (accept_probability(pre, bits(y, 2)) < 2.0 / 3.0) continue;
      for (uint32_t mask = 0; mask < 4; ++mask) {
        const uint32_t above = y | mask;
        CHECK(accept_probability(pre, bits(above, 2)) >= 2.0 / 3.0);
      }
    }
  }
}

TEST_CASE("amplify rejects even repetition counts") {
  const VerifierCircuit pre = preprocess(fx::core_y1_acceptor(2));
  CHECK_THROWS(amplify(pre, 2));
  CHECK_THROWS(amplify(fx::core_y1_acceptor(2), 3));  // not preprocessed
}

TEST_CASE("amplify k=1 only marks the circuit") {
  const VerifierCircuit pre = preprocess(fx::core_y1_acceptor(2));
  const VerifierCircuit amp = amplify(pre, 1);
  CHECK(amp.flags.amplified);
  CHECK(amp.gate_count() == pre.gate_count());
  CHECK(accept_probability(amp, "10") == doctest::Approx(1.0));
}

TEST_CASE("amplify keeps deterministic circuits deterministic") {
  const VerifierCircuit amp = amplify(preprocess(fx::core_y1_acceptor(2)), 3);
  CHECK(accept_probability(amp, "10") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(accept_probability(amp, "01") == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("amplify matches the binomial majority formula") {
  const double p = 0.75;
  const VerifierCircuit pre = preprocess(fx::core_controlled_rotation(1, p));
  CHECK(accept_probability(pre, "1") == doctest::Approx(p).epsilon(1e-12));
  const VerifierCircuit amp = amplify(pre, 3);
  // p^3 + 3 p^2 (1-p) = 0.84375
  CHECK(accept_probability(amp, "1") == doctest::Approx(0.84375).epsilon(1e-10));
  CHECK(accept_probability(amp, "0") == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(majority_probability(p, 3) == doctest::Approx(0.84375).epsilon(1e-14));

  // dense simulation against the formula on a second acceptance value
  const double q = 0.9;
  const VerifierCircuit amp5 = amplify(preprocess(fx::core_controlled_rotation(1, q)), 5);
  CHECK(accept_probability(amp5, "1") ==
        doctest::Approx(majority_probability(q, 5)).epsilon(1e-10));
}

TEST_CASE("one-sided error decays with the repetition count") {
  const double p = 0.9;
  const double chernoff = 2.0 * (p - 0.5) * (p - 0.5);
  double prev = 1.0;
  for (int k : {1, 3, 5}) {
    const double err = 1.0 - majority_probability(p, k);
    CHECK(err <= std::exp(-chernoff * k));
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("amplified instances update epsilon_q") {
  QmsaInstance q;
  q.circuit = preprocess(fx::core_controlled_rotation(1, 0.9));
  q.g = 1;
  q.g_prime = 1;
  q.epsilon_q = 0.1;
  const QmsaInstance amp = amplify(q, 5);
  CHECK(amp.circuit.flags.amplified);
  CHECK(amp.epsilon_q == doctest::Approx(majority_probability(0.1, 5)).epsilon(1e-14));
  CHECK(amp.epsilon_q < q.epsilon_q);
}
