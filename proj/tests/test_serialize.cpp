#include <doctest.h>

#include "depthforge/serialize.hpp"
#include "fixtures.hpp"

using namespace depthforge;
namespace fx = depthforge::fixtures;

TEST_CASE("circuit files round-trip bit-identically") {
  const VerifierCircuit pre = amplify(preprocess(fx::core_controlled_rotation(1, 0.375)), 3);
  const VerifierCircuit back = circuit_from_json(circuit_to_json(pre));
  CHECK(bit_identical(pre, back));
}

TEST_CASE("vqa instances round-trip bit-identically and recompile equal") {
  const VqaInstance inst = fx::ref_vqa_yes();
  const VqaInstance parsed = vqa_from_json(vqa_to_json(inst));
  CHECK(bit_identical(inst, parsed));
  // recompiling from the parsed source gives the same instance
  const VqaInstance again = build_vqa(parsed.source, parsed.delta, parsed.regs.d);
  CHECK(bit_identical(parsed, again));
}

TEST_CASE("qaoa instances round-trip bit-identically and recompile equal") {
  const QaoaInstance inst = fx::ref_qaoa_no();
  const QaoaInstance parsed = qaoa_from_json(qaoa_to_json(inst));
  CHECK(bit_identical(inst, parsed));
  const QaoaInstance again = build_qaoa(parsed.source, parsed.delta, parsed.regs.d);
  CHECK(bit_identical(parsed, again));
}

TEST_CASE("schedules round-trip through their id strings") {
  Schedule s;
  s.push(HamiltonianId::term(Family::F, 3), 0.25);
  s.push(HamiltonianId::term(Family::Q, 12), -1.5);
  s.push(HamiltonianId::hb(), 2.0943951023931953);
  s.push(HamiltonianId::hc(), -0.125);
  const Schedule back = schedule_from_json(schedule_to_json(s));
  REQUIRE(back.size() == s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    CHECK(back.steps[i].id == s.steps[i].id);
    CHECK(back.steps[i].theta == s.steps[i].theta);
  }
}

TEST_CASE("malformed documents are rejected with diagnostics") {
  CHECK_THROWS(circuit_from_json("{\"n_proof\": 1}"));
  CHECK_THROWS(vqa_from_json("{\"kind\": \"qaoa\"}"));
  CHECK_THROWS(instance_from_json("{\"kind\": \"unknown\"}"));
  CHECK_THROWS(schedule_from_json("{\"steps\": [{\"id\": \"Z9\", \"theta\": 0.0}]}"));
}
