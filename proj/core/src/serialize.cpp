#include "depthforge/serialize.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace depthforge {

using nlohmann::json;

namespace {

json matrix_to_json(const Mat& m) {
  json arr = json::array();
  for (int64_t r = 0; r < m.rows(); ++r) {
    for (int64_t c = 0; c < m.cols(); ++c) {
      arr.push_back(m(r, c).real());
      arr.push_back(m(r, c).imag());
    }
  }
  return arr;
}

Mat matrix_from_json(const json& arr, int64_t dim) {
  if (!arr.is_array() || static_cast<int64_t>(arr.size()) != 2 * dim * dim) {
    throw std::invalid_argument("matrix field has wrong length");
  }
  Mat m(dim, dim);
  size_t i = 0;
  for (int64_t r = 0; r < dim; ++r) {
    for (int64_t c = 0; c < dim; ++c) {
      const double re = arr[i++].get<double>();
      const double im = arr[i++].get<double>();
      m(r, c) = cxd(re, im);
    }
  }
  return m;
}

json gate_to_json(const Gate& g) {
  return json{{"targets", g.targets}, {"matrix", matrix_to_json(g.matrix)}};
}

Gate gate_from_json(const json& j) {
  Gate g;
  g.targets = j.at("targets").get<std::vector<int>>();
  g.matrix = matrix_from_json(j.at("matrix"), int64_t{1} << g.targets.size());
  return g;
}

json circuit_to_json_obj(const VerifierCircuit& c) {
  json gates = json::array();
  for (const Gate& g : c.gates) gates.push_back(gate_to_json(g));
  return json{{"format", "depthforge-circuit"},
              {"n_proof", c.n_proof},
              {"n_ancilla", c.n_ancilla},
              {"output_qubit", c.output_qubit},
              {"assumption_flags",
               {{"read_only_proof", c.flags.read_only_proof},
                {"delayed_output", c.flags.delayed_output},
                {"amplified", c.flags.amplified}}},
              {"gates", gates}};
}

VerifierCircuit circuit_from_json_obj(const json& j) {
  VerifierCircuit c;
  c.n_proof = j.at("n_proof").get<int>();
  c.n_ancilla = j.at("n_ancilla").get<int>();
  c.output_qubit = j.at("output_qubit").get<int>();
  if (j.contains("assumption_flags")) {
    const json& f = j.at("assumption_flags");
    c.flags.read_only_proof = f.value("read_only_proof", false);
    c.flags.delayed_output = f.value("delayed_output", false);
    c.flags.amplified = f.value("amplified", false);
  }
  for (const json& gj : j.at("gates")) c.gates.push_back(gate_from_json(gj));
  validate(c);
  return c;
}

json qmsa_to_json_obj(const QmsaInstance& q) {
  return json{{"circuit", circuit_to_json_obj(q.circuit)},
              {"g", q.g},
              {"g_prime", q.g_prime},
              {"epsilon_q", q.epsilon_q}};
}

QmsaInstance qmsa_from_json_obj(const json& j) {
  QmsaInstance q;
  q.circuit = circuit_from_json_obj(j.at("circuit"));
  q.g = j.at("g").get<int>();
  q.g_prime = j.at("g_prime").get<int>();
  q.epsilon_q = j.at("epsilon_q").get<double>();
  validate(q);
  return q;
}

json generator_to_json(const Generator& g) {
  return json{{"family", family_name(g.family)},
              {"index", g.index},
              {"support", g.support},
              {"matrix", matrix_to_json(g.matrix)}};
}

Generator generator_from_json(const json& j) {
  Generator g;
  g.family = family_from_name(j.at("family").get<std::string>());
  g.index = j.at("index").get<int>();
  g.support = j.at("support").get<std::vector<int>>();
  g.matrix = matrix_from_json(j.at("matrix"), int64_t{1} << g.support.size());
  return g;
}

json registers_to_json(const Registers& r) {
  return json{{"a", r.a}, {"b", r.b}, {"c", r.c}, {"d", r.d}};
}

Registers registers_from_json(const json& j, ReductionMode mode) {
  Registers r;
  r.a = j.at("a").get<int>();
  r.b = j.at("b").get<int>();
  r.c = j.at("c").get<int>();
  r.d = j.at("d").get<int>();
  r.mode = mode;
  return r;
}

}  // namespace

std::string circuit_to_json(const VerifierCircuit& c) { return circuit_to_json_obj(c).dump(2); }

VerifierCircuit circuit_from_json(const std::string& text) {
  return circuit_from_json_obj(json::parse(text));
}

std::string qmsa_to_json(const QmsaInstance& q) { return qmsa_to_json_obj(q).dump(2); }

QmsaInstance qmsa_from_json(const std::string& text) {
  return qmsa_from_json_obj(json::parse(text));
}

std::string vqa_to_json(const VqaInstance& inst) {
  json gens = json::array();
  for (const auto& g : inst.generators) gens.push_back(generator_to_json(g));
  json j{{"format", "depthforge-instance"},
         {"kind", "vqa"},
         {"registers", registers_to_json(inst.regs)},
         {"generators", gens},
         {"observable", generator_to_json(inst.observable)},
         {"m", inst.m},
         {"m_prime", inst.m_prime},
         {"delta", inst.delta},
         {"source", qmsa_to_json_obj(inst.source)},
         {"provenance", inst.provenance}};
  return j.dump(2);
}

VqaInstance vqa_from_json(const std::string& text) {
  const json j = json::parse(text);
  if (j.value("kind", "") != "vqa") throw std::invalid_argument("not a vqa instance file");
  VqaInstance inst;
  inst.regs = registers_from_json(j.at("registers"), ReductionMode::Vqa);
  for (const json& gj : j.at("generators")) inst.generators.push_back(generator_from_json(gj));
  inst.observable = generator_from_json(j.at("observable"));
  inst.m = j.at("m").get<long long>();
  inst.m_prime = j.at("m_prime").get<long long>();
  inst.delta = j.at("delta").get<double>();
  inst.source = qmsa_from_json_obj(j.at("source"));
  inst.provenance = j.value("provenance", "");
  validate(inst);
  return inst;
}

std::string qaoa_to_json(const QaoaInstance& inst) {
  json g1 = json::array(), g2 = json::array();
  for (const auto& g : inst.group1) g1.push_back(generator_to_json(g));
  for (const auto& g : inst.group2) g2.push_back(generator_to_json(g));
  json j{{"format", "depthforge-instance"},
         {"kind", "qaoa"},
         {"registers", registers_to_json(inst.regs)},
         {"group1", g1},
         {"group2", g2},
         {"h0", generator_to_json(inst.h0)},
         {"observable", generator_to_json(inst.observable)},
         {"kappa", inst.kappa},
         {"epsilon_q", inst.epsilon_q},
         {"m", inst.m},
         {"m_prime", inst.m_prime},
         {"delta", inst.delta},
         {"ground_state_string", inst.ground_state_string},
         {"source", qmsa_to_json_obj(inst.source)},
         {"provenance", inst.provenance}};
  return j.dump(2);
}

QaoaInstance qaoa_from_json(const std::string& text) {
  const json j = json::parse(text);
  if (j.value("kind", "") != "qaoa") throw std::invalid_argument("not a qaoa instance file");
  QaoaInstance inst;
  inst.regs = registers_from_json(j.at("registers"), ReductionMode::Qaoa);
  for (const json& gj : j.at("group1")) inst.group1.push_back(generator_from_json(gj));
  for (const json& gj : j.at("group2")) inst.group2.push_back(generator_from_json(gj));
  inst.h0 = generator_from_json(j.at("h0"));
  inst.observable = generator_from_json(j.at("observable"));
  inst.kappa = j.at("kappa").get<double>();
  inst.epsilon_q = j.at("epsilon_q").get<double>();
  inst.m = j.at("m").get<long long>();
  inst.m_prime = j.at("m_prime").get<long long>();
  inst.delta = j.at("delta").get<double>();
  inst.ground_state_string = j.at("ground_state_string").get<std::string>();
  inst.source = qmsa_from_json_obj(j.at("source"));
  inst.provenance = j.value("provenance", "");
  validate(inst);
  return inst;
}

std::string schedule_to_json(const Schedule& s) {
  json steps = json::array();
  for (const auto& step : s.steps) {
    steps.push_back(json{{"id", step.id.str()}, {"theta", step.theta}});
  }
  return json{{"format", "depthforge-schedule"}, {"steps", steps}}.dump(2);
}

Schedule schedule_from_json(const std::string& text) {
  const json j = json::parse(text);
  Schedule s;
  for (const json& sj : j.at("steps")) {
    s.push(HamiltonianId::parse(sj.at("id").get<std::string>()), sj.at("theta").get<double>());
  }
  return s;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << contents;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LoadedInstance instance_from_json(const std::string& text) {
  const json j = json::parse(text);
  const std::string kind = j.value("kind", "");
  LoadedInstance out;
  if (kind == "vqa") {
    out.vqa = vqa_from_json(text);
  } else if (kind == "qaoa") {
    out.qaoa = qaoa_from_json(text);
  } else {
    throw std::invalid_argument("instance file must declare kind vqa or qaoa");
  }
  return out;
}

namespace {

bool same_matrix(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int64_t r = 0; r < a.rows(); ++r) {
    for (int64_t c = 0; c < a.cols(); ++c) {
      if (a(r, c).real() != b(r, c).real() || a(r, c).imag() != b(r, c).imag()) return false;
    }
  }
  return true;
}

bool same_generator(const Generator& a, const Generator& b) {
  return a.family == b.family && a.index == b.index && a.support == b.support &&
         same_matrix(a.matrix, b.matrix);
}

}  // namespace

bool bit_identical(const VerifierCircuit& a, const VerifierCircuit& b) {
  if (a.n_proof != b.n_proof || a.n_ancilla != b.n_ancilla || a.output_qubit != b.output_qubit)
    return false;
  if (a.flags.read_only_proof != b.flags.read_only_proof ||
      a.flags.delayed_output != b.flags.delayed_output || a.flags.amplified != b.flags.amplified)
    return false;
  if (a.gates.size() != b.gates.size()) return false;
  for (size_t i = 0; i < a.gates.size(); ++i) {
    if (a.gates[i].targets != b.gates[i].targets) return false;
    if (!same_matrix(a.gates[i].matrix, b.gates[i].matrix)) return false;
  }
  return true;
}

bool bit_identical(const VqaInstance& a, const VqaInstance& b) {
  if (a.regs.a != b.regs.a || a.regs.b != b.regs.b || a.regs.c != b.regs.c || a.regs.d != b.regs.d)
    return false;
  if (a.m != b.m || a.m_prime != b.m_prime || a.delta != b.delta) return false;
  if (a.generators.size() != b.generators.size()) return false;
  for (size_t i = 0; i < a.generators.size(); ++i) {
    if (!same_generator(a.generators[i], b.generators[i])) return false;
  }
  if (!same_generator(a.observable, b.observable)) return false;
  return bit_identical(a.source.circuit, b.source.circuit) && a.source.g == b.source.g &&
         a.source.g_prime == b.source.g_prime && a.source.epsilon_q == b.source.epsilon_q;
}

bool bit_identical(const QaoaInstance& a, const QaoaInstance& b) {
  if (a.regs.a != b.regs.a || a.regs.b != b.regs.b || a.regs.c != b.regs.c || a.regs.d != b.regs.d)
    return false;
  if (a.m != b.m || a.m_prime != b.m_prime || a.delta != b.delta || a.kappa != b.kappa ||
      a.epsilon_q != b.epsilon_q || a.ground_state_string != b.ground_state_string)
    return false;
  if (a.group1.size() != b.group1.size() || a.group2.size() != b.group2.size()) return false;
  for (size_t i = 0; i < a.group1.size(); ++i) {
    if (!same_generator(a.group1[i], b.group1[i])) return false;
  }
  for (size_t i = 0; i < a.group2.size(); ++i) {
    if (!same_generator(a.group2[i], b.group2[i])) return false;
  }
  if (!same_generator(a.h0, b.h0) || !same_generator(a.observable, b.observable)) return false;
  return bit_identical(a.source.circuit, b.source.circuit) && a.source.g == b.source.g &&
         a.source.g_prime == b.source.g_prime && a.source.epsilon_q == b.source.epsilon_q;
}

}  // namespace depthforge
