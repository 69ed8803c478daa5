#pragma once

#include <optional>
#include <string>

#include "depthforge/circuit.hpp"
#include "depthforge/qaoa.hpp"
#include "depthforge/schedule.hpp"
#include "depthforge/vqa.hpp"

namespace depthforge {

// JSON document formats are described in README.md. Matrices are serialized
// as row-major [re, im, ...] pairs with round-trip-exact decimal doubles.

std::string circuit_to_json(const VerifierCircuit& c);
VerifierCircuit circuit_from_json(const std::string& text);

std::string qmsa_to_json(const QmsaInstance& q);
QmsaInstance qmsa_from_json(const std::string& text);

std::string vqa_to_json(const VqaInstance& inst);
VqaInstance vqa_from_json(const std::string& text);

std::string qaoa_to_json(const QaoaInstance& inst);
QaoaInstance qaoa_from_json(const std::string& text);

std::string schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const std::string& text);

void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

struct LoadedInstance {
  std::optional<VqaInstance> vqa;
  std::optional<QaoaInstance> qaoa;
};

LoadedInstance instance_from_json(const std::string& text);

// Bitwise equality of every field including matrix entries; used by the
// compile -> serialize -> parse round-trip check.
bool bit_identical(const VerifierCircuit& a, const VerifierCircuit& b);
bool bit_identical(const VqaInstance& a, const VqaInstance& b);
bool bit_identical(const QaoaInstance& a, const QaoaInstance& b);

}  // namespace depthforge
