// Command-line front end: builds Temperley-Lieb channels, runs the
// entropic/structural reports and the verification suites, emits JSON/CSV.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "tlchan/infoquant.hpp"
#include "tlchan/recoupling.hpp"
#include "tlchan/structure.hpp"
#include "tlchan/verify.hpp"

using json = nlohmann::ordered_json;
using namespace tlchan;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr double kLn2 = 0.6931471805599453;

struct RunConfig {
  std::string group_str;
  std::vector<int> triple;
  std::vector<int> triple2;
  std::string traced = "right";
  std::uint64_t seed = 0;
  bool seed_set = false;
  int samples = 2000;
  double tol = 1e-8;
  std::size_t max_ambient = 250000;
  std::string format = "json";
  std::string out;
  int threads = 0;
  bool bits = false;
  int i_label = 0;
  std::string strategy = "witness";
  std::string suite = "all";
};

GroupSpec parse_group(const std::string& s) {
  if (s == "su2") return GroupSpec::su2();
  if (s.rfind("onplus:", 0) == 0) {
    int n = 0;
    try {
      n = std::stoi(s.substr(7));
    } catch (const std::exception&) {
      throw InvalidInputError("bad group '" + s + "'");
    }
    return GroupSpec::onplus(n);
  }
  throw InvalidInputError("unknown group '" + s + "' (expected su2 or onplus:<N>)");
}

Traced parse_traced(const std::string& s) {
  if (s == "left") return Traced::Left;
  if (s == "right") return Traced::Right;
  throw InvalidInputError("traced must be 'left' or 'right'");
}

AdmissibleTriple parse_triple(const std::vector<int>& t) {
  if (t.size() != 3) throw InvalidInputError("triple must be k,l,m");
  return AdmissibleTriple::make(t[0], t[1], t[2]);
}

// entropy-valued fields are converted when --bits is given
double in_units(double nats, const RunConfig& cfg) { return cfg.bits ? nats / kLn2 : nats; }

json base_json(const RunConfig& cfg, const GroupSpec& g, const char* op) {
  json j;
  j["version"] = kVersion;
  j["group"] = g.name();
  j["N"] = g.N;
  if (cfg.triple.size() == 3) j["triple"] = cfg.triple;
  j["traced"] = cfg.traced;
  j["operation"] = op;
  if (cfg.seed_set) j["seed"] = cfg.seed;
  j["units"] = cfg.bits ? "bits" : "nats";
  j["tolerances"] = {{"isometry", 1e-8}, {"psd", 1e-10}, {"entropy_eigenvalue_clamp", 1e-12}};
  return j;
}

void emit(const RunConfig& cfg, const std::string& payload) {
  if (cfg.out.empty()) {
    std::cout << payload;
    if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
    return;
  }
  // atomic write: temp file in the same directory, then rename
  const std::string tmp = cfg.out + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw InvalidInputError("cannot open output file " + tmp);
    f << payload;
    if (!payload.empty() && payload.back() != '\n') f << '\n';
  }
  if (std::rename(tmp.c_str(), cfg.out.c_str()) != 0)
    throw InvalidInputError("cannot rename temporary output to " + cfg.out);
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(row);
  }
  return rows;
}

json spectrum_json(const SpectrumReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back(
        json{{"l", e.l}, {"eigenvalue", e.eigenvalue}, {"multiplicity", e.multiplicity}});
  return json{{"source", r.source == SpectrumSource::Formula ? "formula" : "bruteforce"},
              {"entries", entries},
              {"total_trace", r.total_trace},
              {"ambiguous", r.ambiguous}};
}

std::string spectrum_csv(const SpectrumReport& r) {
  std::string out = "l,eigenvalue,multiplicity\n";
  char buf[96];
  for (const auto& e : r.entries) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%lld\n", e.l, e.eigenvalue, e.multiplicity);
    out += buf;
  }
  return out;
}

int cmd_info(const RunConfig& cfg) {
  const GroupSpec g = parse_group(cfg.group_str);
  TLContext ctx(g, cfg.max_ambient);
  const AdmissibleTriple t = parse_triple(cfg.triple);
  const TLChannel ch = build_channel(ctx, t, parse_traced(cfg.traced));
  const CapacityBounds b = capacity_bounds(ch);
  json j = base_json(cfg, g, "info");
  j["result"] = {
      {"d_A", ch.dA},
      {"d_B", ch.dB},
      {"d_E", ch.dE},
      {"q", g.q},
      {"loop_value", g.loop_value},
      {"theta", theta_net(t, g.q)},
      {"moe_theory_lower",
       in_units(theta_net_log(t, g.q) - std::log(quantum_integer(t.k + 1, g.q)), cfg)},
      {"q1_lower", in_units(b.q1_lower, cfg)},
      {"c_upper", {in_units(b.c_upper[0], cfg), in_units(b.c_upper[1], cfg),
                   in_units(b.c_upper[2], cfg)}},
  };
  emit(cfg, j.dump(2));
  return 0;
}

int cmd_choi(const RunConfig& cfg) {
  const GroupSpec g = parse_group(cfg.group_str);
  TLContext ctx(g, cfg.max_ambient);
  const AdmissibleTriple t = parse_triple(cfg.triple);
  const TLChannel ch = build_channel(ctx, t, parse_traced(cfg.traced));
  const Matrix c = choi(ch, true);
  const ChoiTheoremCheck check = choi_theorem_check(ctx, ch);
  json j = base_json(cfg, g, "choi");
  j["result"] = {{"dims", {ch.dB, ch.dA}},
                 {"normalized", true},
                 {"rank", check.rank},
                 {"covariant_projector_deviation", check.frobenius_deviation},
                 {"matrix", matrix_json(c)}};
  emit(cfg, j.dump(2));
  return 0;
}

int cmd_ppt(const RunConfig& cfg) {
  const GroupSpec g = parse_group(cfg.group_str);
  TLContext ctx(g, cfg.max_ambient);
  const AdmissibleTriple t = parse_triple(cfg.triple);
  const TLChannel ch = build_channel(ctx, t, parse_traced(cfg.traced));
  const PPTReport rep = ppt_check(ch, cfg.tol > 0 ? cfg.tol : 1e-10);
  const PPTClass cls = classify_ppt(rep.min_eigenvalue);
  json j = base_json(cfg, g, "ppt");
  j["tolerances"] = {{"accept", 1e-10}, {"reject", 1e-8}};  // dead-band rule
  j["result"] = {{"min_eigenvalue", rep.min_eigenvalue},
                 {"is_ppt", rep.is_ppt},
                 {"classification", cls == PPTClass::PPT      ? "ppt"
                                    : cls == PPTClass::NotPPT ? "not_ppt"
                                                              : "indeterminate"}};
  emit(cfg, j.dump(2));
  return cls == PPTClass::Indeterminate ? 2 : 0;
}

int cmd_moe(const RunConfig& cfg) {
  const GroupSpec g = parse_group(cfg.group_str);
  TLContext ctx(g, cfg.max_ambient);
  const AdmissibleTriple t = parse_triple(cfg.triple);
  const TLChannel ch = build_channel(ctx, t, parse_traced(cfg.traced));
  MOEStrategy s;
  if (cfg.strategy == "witness") {
    s = MOEStrategy::witness();
    s.samples = cfg.samples;
    s.seed = cfg.seed;
    // the fallback random search needs a seed when no witness applies
    if (!cfg.seed_set && (g.kind != GroupKind::ONPlus || g.N < 3))
      throw InvalidInputError(
          "--seed is required when the witness strategy falls back to random search");
  } else if (cfg.strategy == "random") {
    if (!cfg.seed_set) throw InvalidInputError("--seed is required for the random strategy");
    s = MOEStrategy::random_pure(cfg.samples, cfg.seed);
  } else if (cfg.strategy == "descent") {
    if (!cfg.seed_set) throw InvalidInputError("--seed is required for the descent strategy");
    s = MOEStrategy::descent(cfg.samples, cfg.seed);
  } else {
    throw InvalidInputError("strategy must be witness, random or descent");
  }
  const MOEReport rep = min_output_entropy(ctx, ch, s);
  json j = base_json(cfg, g, "moe");
  j["samples"] = cfg.samples;
  j["result"] = {{"strategy", cfg.strategy},
                 {"best_entropy", in_units(rep.best_entropy, cfg)},
                 {"theory_lower", in_units(rep.theory_lower, cfg)},
                 {"theory_upper_hint", in_units(rep.theory_upper_hint, cfg)},
                 {"note", "best_entropy is an upper bound on H_min"}};
  emit(cfg, j.dump(2));
  return 0;
}

int cmd_capacity(const RunConfig& cfg) {
  const GroupSpec g = parse_group(cfg.group_str);
  TLContext ctx(g, cfg.max_ambient);
  const AdmissibleTriple t = parse_triple(cfg.triple);
  const TLChannel ch = build_channel(ctx, t, parse_traced(cfg.traced));
  const CapacityBounds b = capacity_bounds(ch);
  json j = base_json(cfg, g, "capacity");
  j["result"] = {{"q1_lower", in_units(b.q1_lower, cfg)},
                 {"c_upper_log_dA", in_units(b.c_upper[0], cfg)},
                 {"c_upper_log_dB", in_units(b.c_upper[1], cfg)},
                 {"c_upper_log_dAdB_over_dE", in_units(b.c_upper[2], cfg)}};
  emit(cfg, j.dump(2));
  return 0;
}

int cmd_tensor_spectrum(const RunConfig& cfg) {
  const GroupSpec g = parse_group(cfg.group_str);
  TLContext ctx(g, cfg.max_ambient);
  const AdmissibleTriple t1 = parse_triple(cfg.triple);
  const AdmissibleTriple t2 = parse_triple(cfg.triple2);
  if (!is_admissible(cfg.i_label, t1.k, t2.k))
    throw AdmissibilityError("(i, k1, k2) is not admissible: " +
                             admissibility_violation(cfg.i_label, t1.k, t2.k));
  const SpectrumReport formula = tensor_output_spectrum_formula(ctx, cfg.i_label, t1, t2);
  const SpectrumReport brute = tensor_output_spectrum_bruteforce(ctx, cfg.i_label, t1, t2);
  if (cfg.format == "csv") {
    emit(cfg, spectrum_csv(formula));
    return 0;
  }
  json j = base_json(cfg, g, "tensor_spectrum");
  j["i"] = cfg.i_label;
  j["triple2"] = cfg.triple2;
  j["result"] = {{"formula", spectrum_json(formula)}, {"bruteforce", spectrum_json(brute)}};
  emit(cfg, j.dump(2));
  return 0;
}

int cmd_haar_sep(const RunConfig& cfg) {
  const GroupSpec g = parse_group(cfg.group_str);
  TLContext ctx(g, cfg.max_ambient);
  const AdmissibleTriple t = parse_triple(cfg.triple);
  // the lowest-weight channel Phi^{l-bar,m}_{l-m}: triple (l-m, l, m)
  if (t.k != t.l - t.m)
    throw InvalidInputError("haar-sep expects the lowest-weight triple k = l - m");
  if (!cfg.seed_set) throw InvalidInputError("--seed is required for haar-sep");
  const HaarAverageResult r = haar_average_state(ctx, t.l, t.m, cfg.samples, cfg.seed);
  json j = base_json(cfg, g, "haar_sep");
  j["samples"] = cfg.samples;
  j["result"] = {{"distance", r.distance},
                 {"bound_5_over_sqrt_samples", 5.0 / std::sqrt(double(cfg.samples))}};
  emit(cfg, j.dump(2));
  return 0;
}

int cmd_degrade_check(const RunConfig& cfg) {
  const GroupSpec g = parse_group(cfg.group_str);
  TLContext ctx(g, cfg.max_ambient);
  const AdmissibleTriple t = parse_triple(cfg.triple);
  // the highest-weight triple (l+m, l, m) names the degraded channel
  if (t.k != t.l + t.m)
    throw InvalidInputError("degrade-check expects the highest-weight triple k = l + m");
  if (t.l < t.m) throw InvalidInputError("degrade-check expects l >= m");
  const double dev = verify_degrading_identity(ctx, t.l, t.m);
  json j = base_json(cfg, g, "degrade_check");
  j["result"] = {{"max_choi_deviation", dev}, {"tolerance", 1e-8}, {"pass", dev <= 1e-8}};
  emit(cfg, j.dump(2));
  return dev <= 1e-8 ? 0 : 2;
}

int cmd_verify(const RunConfig& cfg) {
  const GroupSpec g = parse_group(cfg.group_str);
  TLContext ctx(g, cfg.max_ambient);
  const std::vector<CheckResult> results =
      cfg.suite == "all" ? run_all_suites(ctx) : run_suite(ctx, cfg.suite);
  std::string lines;
  bool failed = false;
  for (const CheckResult& r : results) {
    json j;
    j["suite"] = r.suite;
    j["check"] = r.name;
    j["status"] = r.status == CheckResult::Status::Pass   ? "pass"
                  : r.status == CheckResult::Status::Fail ? "fail"
                                                          : "skipped";
    j["value"] = r.value;
    j["detail"] = r.detail;
    lines += j.dump() + "\n";
    if (r.status == CheckResult::Status::Fail) failed = true;
  }
  emit(cfg, lines);
  return failed ? 2 : 0;
}

void add_common(CLI::App* cmd, RunConfig& cfg, bool needs_triple) {
  cmd->add_option("--group", cfg.group_str, "group: su2 or onplus:<N>")->required();
  if (needs_triple)
    cmd->add_option("--triple", cfg.triple, "channel triple k,l,m")->delimiter(',')->required();
  cmd->add_option("--traced", cfg.traced, "traced factor: left (H_l) or right (H_m)");
  auto* seed = cmd->add_option("--seed", cfg.seed, "RNG seed (per-task streams derive from it)");
  cmd->parse_complete_callback([&cfg, seed] { cfg.seed_set = seed->count() > 0; });
  cmd->add_option("--samples", cfg.samples, "sample count for stochastic estimates");
  cmd->add_option("--tol", cfg.tol, "numerical tolerance override");
  cmd->add_option("--max-ambient", cfg.max_ambient, "ambient dimension cap");
  cmd->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", cfg.out, "output path (written atomically)");
  cmd->add_option("--threads", cfg.threads, "worker thread cap (default: hardware)");
  cmd->add_flag("--bits", cfg.bits, "display entropies in bits instead of nats");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temperley-Lieb quantum channel toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* info = app.add_subcommand("info", "channel dimensions, theta net and capacity sandwich");
  add_common(info, cfg, true);
  auto* choi_cmd =
      app.add_subcommand("choi", "normalized Choi matrix and covariant-projector check");
  add_common(choi_cmd, cfg, true);
  auto* ppt = app.add_subcommand("ppt", "partial-transpose spectrum of the Choi matrix");
  add_common(ppt, cfg, true);
  auto* moe = app.add_subcommand("moe", "minimum output entropy report");
  add_common(moe, cfg, true);
  moe->add_option("--strategy", cfg.strategy, "witness, random or descent");
  auto* capacity = app.add_subcommand("capacity", "bistochastic capacity sandwich");
  add_common(capacity, cfg, true);
  auto* tensor_cmd =
      app.add_subcommand("tensor-spectrum", "spectrum of the tensor-product output state");
  add_common(tensor_cmd, cfg, true);
  tensor_cmd->add_option("--triple2", cfg.triple2, "second channel triple k,l,m")
      ->delimiter(',')
      ->required();
  tensor_cmd->add_option("--i", cfg.i_label, "covariant input label i")->required();
  auto* haar = app.add_subcommand("haar-sep", "Monte-Carlo Haar separability check");
  add_common(haar, cfg, true);
  auto* degrade = app.add_subcommand("degrade-check", "highest-weight degrading identity");
  add_common(degrade, cfg, true);
  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  add_common(verify, cfg, false);
  verify->add_option("--suite", cfg.suite, "suite name or 'all'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (cfg.threads > 0) set_thread_count(cfg.threads);
    if (info->parsed()) return cmd_info(cfg);
    if (choi_cmd->parsed()) return cmd_choi(cfg);
    if (ppt->parsed()) return cmd_ppt(cfg);
    if (moe->parsed()) return cmd_moe(cfg);
    if (capacity->parsed()) return cmd_capacity(cfg);
    if (tensor_cmd->parsed()) return cmd_tensor_spectrum(cfg);
    if (haar->parsed()) return cmd_haar_sep(cfg);
    if (degrade->parsed()) return cmd_degrade_check(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    std::cerr << "no subcommand given\n";
    return 1;
  } catch (const ResourceCapError& e) {
    std::cerr << "resource cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const InvalidInputError& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return 1;
  } catch (const TlError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return 1;
  }
}
