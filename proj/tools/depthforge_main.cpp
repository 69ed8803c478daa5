// depthforge: compile QMSA verifier circuits into MIN-VQA / MIN-QAOA
// instances, run honest provers and simulators, and verify the
// construction's invariants at desk scale.

#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "depthforge/checker.hpp"
#include "depthforge/log.hpp"
#include "depthforge/parallel.hpp"
#include "depthforge/prover.hpp"
#include "depthforge/serialize.hpp"
#include "depthforge/simulator.hpp"

namespace df = depthforge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

struct GlobalOpts {
  uint64_t seed = 0;
  int threads = df::default_thread_count();
};

df::QmsaInstance load_qmsa_for_compile(const std::string& circuit_path, int g, int gp,
                                       double epsilon_q) {
  df::QmsaInstance qmsa;
  qmsa.circuit = df::circuit_from_json(df::read_file(circuit_path));
  if (!qmsa.circuit.flags.read_only_proof || !qmsa.circuit.flags.delayed_output) {
    qmsa.circuit = df::preprocess(qmsa.circuit);
  }
  qmsa.g = g;
  qmsa.g_prime = gp;
  qmsa.epsilon_q = epsilon_q;
  df::validate(qmsa);
  return qmsa;
}

void emit_trajectory(const std::string& path, const std::vector<df::TrajectoryRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "step,expectation,span_residual\n";
  for (const auto& r : rows) {
    out << r.step << "," << df::format_double(r.expectation) << ","
        << df::format_double(r.span_residual) << "\n";
  }
}

int run_ratio(const df::LoadedInstance& loaded, double epsilon, double c_const) {
  long long m = 0, m_prime = 0, n_bits = 0;
  long long l_core = 0, n_v_core = 0;
  df::Rational ratio(0, 1);
  if (loaded.vqa) {
    const auto& inst = *loaded.vqa;
    m = inst.m;
    m_prime = inst.m_prime;
    ratio = df::hardness_ratio(inst);
    n_bits = df::encoding_size(inst);
    n_v_core = inst.regs.a;
    l_core = inst.verifier_gate_count() - n_v_core - 1;
  } else {
    const auto& inst = *loaded.qaoa;
    m = inst.m;
    m_prime = inst.m_prime;
    ratio = df::Rational(inst.m_prime, inst.m);
    // same encoding convention; H0 counted through its 2-local pieces
    df::VqaInstance proxy;  // reuse the per-generator rule
    proxy.regs = inst.regs;
    for (const auto& g : inst.group1) proxy.generators.push_back(g);
    for (const auto& g : inst.group2) proxy.generators.push_back(g);
    proxy.observable = inst.observable;
    proxy.m = inst.m;
    proxy.m_prime = inst.m_prime;
    n_bits = df::encoding_size(proxy) +
             (inst.regs.a + inst.regs.b + 1) *
                 (df::kEncodingMatrixBits +
                  2 * static_cast<long long>(std::ceil(std::log2(inst.regs.total()))));
    n_v_core = inst.regs.a;
    l_core = inst.verifier_gate_count() - n_v_core - 1;
  }
  std::printf("m        %lld\n", m);
  std::printf("m_prime  %lld\n", m_prime);
  std::printf("ratio    %s (= %.6f)\n", ratio.str().c_str(), ratio.value());
  std::printf("N_bits   %lld\n", n_bits);
  if (l_core >= 2 && n_v_core >= 2) {
    const auto plan = df::plan_parameters(epsilon, l_core, n_v_core, c_const);
    if (plan) {
      const bool ok = df::ratio_inequality_holds(epsilon, plan->epsilon_prime, plan->delta,
                                                 l_core, n_v_core, c_const);
      std::printf("plan     feasible: epsilon_prime=%.4f delta=%.4f (recheck %s)\n",
                  plan->epsilon_prime, plan->delta, ok ? "ok" : "FAILED");
      if (!ok) return kExitCheckFailed;
    } else {
      std::printf("plan     infeasible on the grid (L'=%lld too small)\n", l_core);
    }
  } else {
    std::printf("plan     skipped (needs core sizes L' >= 2, n_V' >= 2; got L'=%lld n_V'=%lld)\n",
                l_core, n_v_core);
  }
  return kExitOk;
}

int run_check(const df::LoadedInstance& loaded, const std::string& suite, int trials, int max_len,
              int beam, const GlobalOpts& opts) {
  bool pass = true;
  std::printf("{\n  \"suite\": \"%s\",\n", suite.c_str());
  if (suite == "span") {
    if (!loaded.vqa) throw std::invalid_argument("span suite needs a vqa instance");
    const auto& inst = *loaded.vqa;
    const df::LogicalSpace space = df::LogicalSpace::for_vqa(inst);
    std::vector<double> residuals(static_cast<size_t>(trials), 0.0);
    const auto gens = space.generators();
    df::parallel_for(trials, opts.threads, [&](int64_t ti) {
      std::mt19937_64 rng(opts.seed * 0x9e3779b97f4a7c15ULL + static_cast<uint64_t>(ti) + 17);
      std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
      std::uniform_real_distribution<double> angle(-3.141592653589793, 3.141592653589793);
      std::uniform_int_distribution<int> len(0, max_len > 0 ? max_len : 50);
      df::Schedule sched;
      const int n = len(rng);
      for (int i = 0; i < n; ++i) {
        const df::Generator* g = gens[pick(rng)];
        sched.push(df::HamiltonianId::term(g->family, g->index), angle(rng));
      }
      const df::SimResult res = df::simulate_vqa(inst, sched, df::Engine::Closed);
      residuals[static_cast<size_t>(ti)] = space.project(*res.dense).second;
    });
    double worst = 0.0;
    for (double r : residuals) worst = std::max(worst, r);
    pass = worst <= 1e-9;
    std::printf("  \"trials\": %d,\n  \"max_residual\": %s,\n", trials,
                df::format_double(worst).c_str());
  } else if (suite == "hw") {
    if (!loaded.vqa) throw std::invalid_argument("hw suite needs a vqa instance");
    const auto& inst = *loaded.vqa;
    const df::LogicalSpace space = df::LogicalSpace::for_vqa(inst);
    long long worst_gap = 0;
    for (uint32_t y = 0; y < (uint32_t{1} << inst.regs.a); ++y) {
      const long long dist =
          df::min_gates_to_reach(space, df::LogicalIndex{y, inst.regs.a + 1, 1});
      const long long predicted =
          static_cast<long long>(__builtin_popcount(y)) * (2LL * inst.regs.d - 1) + inst.regs.a;
      worst_gap = std::max(worst_gap, std::abs(dist - predicted));
    }
    pass = worst_gap == 0;
    std::printf("  \"max_distance_gap\": %lld,\n", worst_gap);
  } else if (suite == "fewerL") {
    if (!loaded.vqa) throw std::invalid_argument("fewerL suite needs a vqa instance");
    const df::LogicalSpace space = df::LogicalSpace::for_vqa(*loaded.vqa);
    const auto rep = df::check_lemma_fewer_than_l(space, trials, opts.seed, 50, opts.threads);
    pass = rep.pass;
    std::printf("  \"trials\": %d,\n  \"max_deviation\": %s,\n", rep.trials,
                df::format_double(rep.max_deviation).c_str());
  } else if (suite == "rounding") {
    if (!loaded.qaoa) throw std::invalid_argument("rounding suite needs a qaoa instance");
    const auto& inst = *loaded.qaoa;
    std::mt19937_64 rng(opts.seed + 5);
    std::uniform_real_distribution<double> angle(-3.141592653589793, 3.141592653589793);
    double worst_slack = -1e300;
    for (int t = 0; t < trials; ++t) {
      df::Schedule sched;
      const int len = max_len > 0 ? max_len : static_cast<int>(inst.m_prime);
      for (int i = 0; i < len; ++i) {
        sched.push(i % 2 == 0 ? df::HamiltonianId::hc() : df::HamiltonianId::hb(), angle(rng));
      }
      const auto rep = df::check_rounding_lemma(inst, sched);
      pass = pass && rep.pass;
      worst_slack = std::max(worst_slack, rep.max_distance_slack);
    }
    std::printf("  \"trials\": %d,\n  \"max_distance_minus_bound\": %s,\n", trials,
                df::format_double(worst_slack).c_str());
  } else if (suite == "soundness") {
    df::SoundnessOptions sopt;
    sopt.max_len = max_len;
    sopt.beam_width = beam;
    sopt.seed = opts.seed;
    sopt.threads = opts.threads;
    df::SoundnessReport rep;
    long long m_prime = 0;
    if (loaded.vqa) {
      const df::LogicalSpace space = df::LogicalSpace::for_vqa(*loaded.vqa);
      if (sopt.max_len <= 0) sopt.max_len = static_cast<int>(loaded.vqa->m_prime);
      m_prime = loaded.vqa->m_prime;
      rep = df::brute_force_soundness(space, sopt);
    } else {
      const df::LogicalSpace space = df::LogicalSpace::for_qaoa(*loaded.qaoa);
      if (sopt.max_len <= 0) sopt.max_len = static_cast<int>(loaded.qaoa->m_prime);
      m_prime = loaded.qaoa->m_prime;
      rep = df::brute_force_soundness(space, sopt);
    }
    pass = rep.min_expectation >= 2.0 / 3.0 - 1e-6;
    std::printf("  \"max_len\": %lld,\n  \"min_expectation\": %s,\n  \"states\": %lld,\n"
                "  \"probe_only\": true,\n",
                m_prime, df::format_double(rep.min_expectation).c_str(), rep.states_explored);
  } else {
    throw std::invalid_argument("unknown suite: " + suite);
  }
  std::printf("  \"pass\": %s\n}\n", pass ? "true" : "false");
  return pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"depthforge: MIN-VQA / MIN-QAOA reduction compiler and exact simulator"};
  app.require_subcommand(1);
  GlobalOpts opts;
  app.add_option("--seed", opts.seed, "seed for all randomized procedures");
  app.add_option("--threads", opts.threads, "worker thread cap");

  // compile-vqa
  auto* cv = app.add_subcommand("compile-vqa", "compile a circuit into a MIN-VQA instance");
  std::string cv_circuit, cv_out;
  int cv_g = 0, cv_gp = 0, cv_dsize = 0;
  double cv_delta = 0.1, cv_eps = 1.0 / 3.0;
  cv->add_option("--circuit", cv_circuit)->required();
  cv->add_option("--g", cv_g)->required();
  cv->add_option("--gp", cv_gp)->required();
  cv->add_option("--delta", cv_delta)->required();
  cv->add_option("--d-size", cv_dsize);
  cv->add_option("--epsilon-q", cv_eps);
  cv->add_option("-o,--output", cv_out)->required();

  // compile-qaoa
  auto* cq = app.add_subcommand("compile-qaoa", "compile a circuit into a MIN-QAOA instance");
  std::string cq_circuit, cq_out;
  int cq_g = 0, cq_gp = 0, cq_dsize = 0, cq_amplify = 1;
  double cq_delta = 0.1, cq_eps = 1.0 / 3.0;
  cq->add_option("--circuit", cq_circuit)->required();
  cq->add_option("--g", cq_g)->required();
  cq->add_option("--gp", cq_gp)->required();
  cq->add_option("--delta", cq_delta)->required();
  cq->add_option("--d-size", cq_dsize);
  cq->add_option("--amplify", cq_amplify);
  cq->add_option("--epsilon-q", cq_eps);
  cq->add_option("-o,--output", cq_out)->required();

  // simulate
  auto* sim = app.add_subcommand("simulate", "run a schedule on a compiled instance");
  std::string sim_inst, sim_sched, sim_engine = "logical", sim_traj;
  sim->add_option("--instance", sim_inst)->required();
  sim->add_option("--schedule", sim_sched)->required();
  sim->add_option("--engine", sim_engine)->check(CLI::IsMember({"logical", "dense", "closed"}));
  sim->add_option("--emit-trajectory", sim_traj);

  // prove
  auto* prove = app.add_subcommand("prove", "run the honest prover for a witness");
  std::string pr_inst, pr_witness, pr_engine = "logical", pr_sched_out;
  prove->add_option("--instance", pr_inst)->required();
  prove->add_option("--witness", pr_witness)->required();
  prove->add_option("--engine", pr_engine)->check(CLI::IsMember({"logical", "dense", "closed"}));
  prove->add_option("--emit-schedule", pr_sched_out);

  // check-lemmas
  auto* chk = app.add_subcommand("check-lemmas", "verify lemma-level properties");
  std::string ck_inst, ck_suite;
  int ck_trials = 20, ck_maxlen = 0, ck_beam = 10000;
  chk->add_option("--instance", ck_inst)->required();
  chk->add_option("--suite", ck_suite)
      ->required()
      ->check(CLI::IsMember({"span", "hw", "fewerL", "rounding", "soundness"}));
  chk->add_option("--trials", ck_trials);
  chk->add_option("--max-len", ck_maxlen);
  chk->add_option("--beam", ck_beam);

  // ratio
  auto* rat = app.add_subcommand("ratio", "print thresholds, ratio, encoding size, feasibility");
  std::string rt_inst;
  double rt_eps = 0.5, rt_c = 8.0;
  rat->add_option("--instance", rt_inst)->required();
  rat->add_option("--epsilon", rt_eps);
  rat->add_option("--c", rt_c);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cv->parsed()) {
      const df::QmsaInstance qmsa = load_qmsa_for_compile(cv_circuit, cv_g, cv_gp, cv_eps);
      const auto inst = df::build_vqa(
          qmsa, cv_delta, cv_dsize > 0 ? std::optional<int>(cv_dsize) : std::nullopt);
      df::write_file(cv_out, df::vqa_to_json(inst));
      std::printf("wrote %s: %d qubits, %zu generators, m=%lld m'=%lld\n", cv_out.c_str(),
                  inst.regs.total(), inst.generators.size(), inst.m, inst.m_prime);
      return kExitOk;
    }
    if (cq->parsed()) {
      df::QmsaInstance qmsa = load_qmsa_for_compile(cq_circuit, cq_g, cq_gp, cq_eps);
      qmsa = df::amplify(qmsa, cq_amplify);
      const auto inst = df::build_qaoa(
          qmsa, cq_delta, cq_dsize > 0 ? std::optional<int>(cq_dsize) : std::nullopt);
      df::write_file(cq_out, df::qaoa_to_json(inst));
      std::printf("wrote %s: %d qubits, |G1|=%zu |G2|=%zu, m=%lld m'=%lld kappa=%s\n",
                  cq_out.c_str(), inst.regs.total(), inst.group1.size(), inst.group2.size(),
                  inst.m, inst.m_prime, df::format_double(inst.kappa).c_str());
      return kExitOk;
    }
    if (sim->parsed()) {
      const auto loaded = df::instance_from_json(df::read_file(sim_inst));
      const auto sched = df::schedule_from_json(df::read_file(sim_sched));
      const df::Engine engine = df::engine_from_name(sim_engine);
      const bool traj = !sim_traj.empty();
      const df::SimResult res = loaded.vqa ? df::simulate_vqa(*loaded.vqa, sched, engine, traj)
                                           : df::simulate_qaoa(*loaded.qaoa, sched, engine, traj);
      if (traj) emit_trajectory(sim_traj, res.trajectory);
      std::printf("steps %zu\nexpectation %s\n", sched.size(),
                  df::format_double(res.expectation).c_str());
      return kExitOk;
    }
    if (prove->parsed()) {
      const auto loaded = df::instance_from_json(df::read_file(pr_inst));
      const df::Engine engine = df::engine_from_name(pr_engine);
      df::HonestPlan plan;
      double expectation = 0.0;
      double bound = 1.0 / 3.0;
      if (loaded.vqa) {
        plan = df::honest_vqa_schedule(pr_witness, *loaded.vqa);
        expectation = df::simulate_vqa(*loaded.vqa, plan.schedule, engine).expectation;
      } else {
        plan = df::honest_qaoa_schedule(pr_witness, *loaded.qaoa);
        expectation = df::simulate_qaoa(*loaded.qaoa, plan.schedule, engine).expectation;
      }
      if (!pr_sched_out.empty()) df::write_file(pr_sched_out, df::schedule_to_json(plan.schedule));
      std::printf("schedule_length %lld\nexpectation %s\nyes_threshold %s\nverdict %s\n",
                  plan.predicted_length, df::format_double(expectation).c_str(),
                  df::format_double(bound).c_str(),
                  expectation <= bound ? "YES-consistent" : "above-threshold");
      return kExitOk;
    }
    if (chk->parsed()) {
      const auto loaded = df::instance_from_json(df::read_file(ck_inst));
      return run_check(loaded, ck_suite, ck_trials, ck_maxlen, ck_beam, opts);
    }
    if (rat->parsed()) {
      const auto loaded = df::instance_from_json(df::read_file(rt_inst));
      return run_ratio(loaded, rt_eps, rt_c);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    df::log::error(e.what());
    return kExitInputError;
  }
  return kExitInputError;
}
