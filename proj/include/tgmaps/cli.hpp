#pragma once

// Command-line dispatcher. Exit codes: 0 ok, 1 a check failed, 2 usage or
// bound error.

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "tgmaps/acceptance.hpp"

namespace tgmaps::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

enum class Format { json, text, csv };

struct RunConfig {
  Format format = Format::json;
  bool format_given = false;
  std::uint64_t seed = 1;
  int threads = std::max(1u, std::thread::hardware_concurrency());
};

namespace detail {

inline Json big(const BigInt& b) { return b.get_str(); }

inline Json big_list(const std::vector<BigInt>& v) {
  Json a = Json::array();
  for (const auto& b : v) a.push_back(b.get_str());
  return a;
}

inline Json header(const std::string& kind) { return Json{{"schema_version", kSchemaVersion}, {"kind", kind}}; }

/// "a.b[2].c: value" lines.
inline void flatten(const Json& j, const std::string& path, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out << path << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

inline void emit(const Json& j, const RunConfig& cfg, std::ostream& out) {
  if (cfg.format == Format::json)
    out << j.dump(2) << '\n';
  else
    flatten(j, "", out);
}

inline int status(bool ok) { return ok ? kExitOk : kExitCheckFailed; }

}  // namespace detail

// ------------------------------------------------------------- commands

inline int run_tau(unsigned max_g, const RunConfig& cfg, std::ostream& out) {
  const auto tau = tau_sequence(max_g);
  if (cfg.format == Format::csv) {
    out << "g,tau,t_coeff,t_sqrt_pi_exp\n";
    for (unsigned g = 0; g <= max_g; ++g) {
      const auto t = t_constant(g, tau);
      out << g << ',' << tau[g].str() << ',' << t.coeff.str() << ',' << t.sqrt_pi_exp << '\n';
    }
    return kExitOk;
  }
  Json j = detail::header("tau");
  j["max_g"] = max_g;
  Json ts = Json::array(), cs = Json::array();
  for (unsigned g = 0; g <= max_g; ++g) {
    ts.push_back(tau[g].str());
    const auto t = t_constant(g, tau);
    cs.push_back({{"coeff", t.coeff.str()}, {"sqrt_pi_exp", t.sqrt_pi_exp}});
  }
  j["tau"] = ts;
  j["t"] = cs;
  detail::emit(j, cfg, out);
  return kExitOk;
}

inline int run_series_verify(const std::string& which, std::size_t order, const RunConfig& cfg, std::ostream& out) {
  const std::vector<std::string> names = which == "all" ? std::vector<std::string>{"ode", "eliminate", "kernel"}
                                                        : std::vector<std::string>{which};
  Json j = detail::header("series_verify");
  j["order"] = order;
  Json checks = Json::array();
  bool ok = true;
  for (const auto& name : names) {
    const TruncatedSeries r = name == "ode"         ? verify_tau_ode(order)
                              : name == "eliminate" ? verify_eliminate_identity(order)
                                                    : kernel_check(order);
    Json c{{"which", name}, {"zero", r.is_zero()}};
    if (const auto i = r.first_nonzero()) c["first_nonzero"] = {{"index", *i}, {"coefficient", r[*i].str()}};
    ok = ok && r.is_zero();
    checks.push_back(c);
  }
  j["checks"] = checks;
  j["ok"] = ok;
  detail::emit(j, cfg, out);
  return detail::status(ok);
}

inline std::string canonical_elimination(const IdentityDerivation& d) {
  std::ostringstream s;
  for (int i = 0; i < 4; ++i) s << "U" << i + 2 << " =\n" << d.solution.u[i].str();
  s << "residual: " << (d.residual.is_zero() ? std::string("0\n") : "\n" + d.residual.str());
  return s.str();
}

/// Canonical text by default; JSON only when asked for.
inline int run_eliminate(const std::string& dump_terms, const RunConfig& cfg, std::ostream& out) {
  const auto d = derive_rhs_identity();
  const std::string text = canonical_elimination(d);
  if (!dump_terms.empty()) {
    std::ofstream f(dump_terms);
    if (!f) throw CLI::ValidationError("--dump-terms", "cannot open " + dump_terms);
    f << text;
  }
  const bool ok = d.residual.is_zero();
  if (cfg.format_given && cfg.format == Format::json) {
    Json j = detail::header("eliminate");
    Json u = Json::array();
    for (int i = 0; i < 4; ++i) u.push_back({{"name", "U" + std::to_string(i + 2)}, {"terms", d.solution.u[i].str()}});
    j["solved"] = u;
    j["residual"] = ok ? std::string("0") : d.residual.str();
    j["ok"] = ok;
    out << j.dump(2) << '\n';
  } else {
    out << text;
  }
  return detail::status(ok);
}

inline int run_enumerate(int n, int g, bool labelled, bool two_face, const RunConfig& cfg, std::ostream& out) {
  Json j = detail::header("enumerate");
  j["edges"] = n;
  j["genus"] = g;
  j["labelled"] = labelled;
  j["two_face"] = two_face;
  if (two_face && labelled) {
    const auto c = brute_force_A_split(n, g);
    j["count"] = std::to_string(c.all());
    j["by_eps"] = {{"-1", std::to_string(c.eps(-1))}, {"0", std::to_string(c.eps(0))}, {"1", std::to_string(c.eps(1))}};
  } else if (two_face) {
    if (n < 1 || n > kTwoFaceMaxEdges)
      throw BoundError("enumerate --two-face: edges outside [1, " + std::to_string(kTwoFaceMaxEdges) + "]");
    std::uint64_t count = 0;
    for (int p = 1; p < 2 * n; ++p)
      for_each_pairing(n, [&](const std::vector<int>& alpha) {
        const CombMap m = two_face_from_pairing(alpha, p);
        if (is_connected(m) && genus(m) == g) ++count;
      });
    j["count"] = std::to_string(count);
  } else if (labelled) {
    j["count"] = std::to_string(brute_force_L(n, g));
  } else {
    j["count"] = std::to_string(enumerate_unicellular(n, g).size());
  }
  detail::emit(j, cfg, out);
  return kExitOk;
}

inline int run_verify_tutte(int max_edges, int g_target, const RunConfig& cfg, std::ostream& out) {
  const auto rep = verify_tutte_equation(max_edges, g_target);
  Json j = detail::header("verify_tutte");
  j["max_edges"] = max_edges;
  j["genus_target"] = g_target;
  Json rows = Json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"n", r.n},
                    {"lhs", detail::big(r.lhs)},
                    {"isthmic_term", detail::big(r.isthmic_term)},
                    {"a_term", detail::big(r.a_term)},
                    {"direct_total", std::to_string(r.direct_total)},
                    {"direct_isthmic", std::to_string(r.direct_isthmic)},
                    {"direct_nonisthmic", std::to_string(r.direct_nonisthmic)},
                    {"formula_ok", r.formula_ok},
                    {"ok", r.ok()}});
  j["rows"] = rows;
  j["ok"] = rep.ok();
  detail::emit(j, cfg, out);
  return detail::status(rep.ok());
}

inline int run_verify_cases(int max_edges, const RunConfig& cfg, std::ostream& out) {
  const auto rep = verify_case_decomposition(max_edges);
  Json j = detail::header("verify_cases");
  j["max_edges"] = max_edges;
  j["genus"] = rep.G;
  Json rows = Json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"n", r.n},
                    {"K", detail::big(r.K)},
                    {"K_dominant", detail::big(r.K_dominant)},
                    {"L_dominant", detail::big(r.L_dominant)},
                    {"case_i", detail::big(r.by_case[0])},
                    {"case_ii", detail::big(r.by_case[1])},
                    {"case_iii", detail::big(r.by_case[2])},
                    {"case_i_series", detail::big(r.case1_series)},
                    {"case_ii_series_literal", detail::big(r.case2_series_literal)},
                    {"case_ii_series_refined", detail::big(r.case2_series_refined)}});
  j["rows"] = rows;
  const Json checks{{"case_i", rep.case1_ok()},
                    {"case_ii_literal", rep.case2_literal_ok()},
                    {"case_ii_refined", rep.case2_refined_ok()},
                    {"s_both_ways", rep.s_both_ways_ok()},
                    {"rerooting", rep.rerooting_ok()},
                    {"dominant_identity", rep.dominant_identity_ok()}};
  bool ok = true;
  for (const auto& [k, v] : checks.items()) ok = ok && v.get<bool>();
  j["checks"] = checks;
  j["ok"] = ok;
  detail::emit(j, cfg, out);
  return detail::status(ok);
}

inline int run_verify_bijections(int max_edges, int g, const std::string& which, const RunConfig& cfg,
                                 std::ostream& out) {
  const bool all = which == "all";
  Json j = detail::header("verify_bijections");
  j["max_edges"] = max_edges;
  j["genus"] = g;
  bool ok = true;
  if (all || which == "ms") {
    Json rows = Json::array();
    for (int n = 1; n <= max_edges; ++n) {
      const auto r = ms_count_check(n, g);
      rows.push_back({{"n", n},
                      {"inputs", std::to_string(r.inputs)},
                      {"distinct_outputs", std::to_string(r.distinct_outputs)},
                      {"invalid_outputs", std::to_string(r.invalid_outputs)},
                      {"expected", std::to_string(r.expected)},
                      {"ok", r.ok()}});
      ok = ok && r.ok();
    }
    j["ms"] = rows;
  }
  if (all || which == "miermont") {
    Json rows = Json::array();
    for (int n = 1; n <= max_edges; ++n) {
      const auto r = miermont_suite(n, g);
      rows.push_back({{"n", n},
                      {"instances", std::to_string(r.instances)},
                      {"failures", std::to_string(r.failures)},
                      {"m2_fail", std::to_string(r.m2_fail)},
                      {"m2prime_fail", std::to_string(r.m2prime_fail)},
                      {"m3_fail", std::to_string(r.m3_fail)},
                      {"crossed_fail", std::to_string(r.crossed_fail)},
                      {"ok", r.ok()}});
      ok = ok && r.ok();
    }
    j["miermont"] = rows;
  }
  if (all || which == "audit") {
    Json rows = Json::array();
    for (int n = 1; n <= max_edges; ++n) {
      const auto r = m3_vs_m3prime_audit(n, g);
      Json gaps = Json::object();
      for (const auto& [gap, c] : r.deficit_gaps) gaps[std::to_string(gap)] = std::to_string(c);
      Json weighted = Json::array(), direct = Json::array();
      for (int e = 0; e < 3; ++e) {
        weighted.push_back(r.m3_weighted[e].str());
        direct.push_back(std::to_string(r.a_counts[e]));
      }
      rows.push_back({{"n", n},
                      {"quadrangulations", std::to_string(r.quadrangulations)},
                      {"tuples", std::to_string(r.tuples)},
                      {"m3", std::to_string(r.m3)},
                      {"m3prime", std::to_string(r.m3prime)},
                      {"deficit", std::to_string(r.deficit)},
                      {"deficit_gaps", gaps},
                      {"inclusion_failures", std::to_string(r.inclusion_failures)},
                      {"slack_failures", std::to_string(r.slack_failures)},
                      {"label_failures", std::to_string(r.label_failures)},
                      {"crossed_failures", std::to_string(r.crossed_failures)},
                      {"m3_weighted_by_eps", weighted},
                      {"a_by_eps", direct},
                      {"counts_match", r.counts_match()},
                      {"ok", r.ok()}});
      ok = ok && r.ok();
    }
    j["audit"] = rows;
  }
  j["ok"] = ok;
  detail::emit(j, cfg, out);
  return detail::status(ok);
}

struct VoronoiArgs {
  int genus = 0;
  long faces = 1000;
  std::uint64_t trials = 100;
  int points = 2;
  std::string out_path;
  std::string csv_path;
};

inline int run_sample_voronoi(const VoronoiArgs& a, const RunConfig& cfg, std::ostream& out) {
  std::ofstream json_file, csv_file;
  if (!a.out_path.empty()) {
    json_file.open(a.out_path);
    if (!json_file) throw CLI::ValidationError("--out", "cannot open " + a.out_path);
  }
  if (!a.csv_path.empty()) {
    csv_file.open(a.csv_path);
    if (!csv_file) throw CLI::ValidationError("--csv-per-trial", "cannot open " + a.csv_path);
  }
  const auto rep = estimate_moments(a.genus, a.faces, a.points, a.trials, cfg.seed, cfg.threads);
  const Json j = to_json(rep);
  if (json_file.is_open()) json_file << j.dump(2) << '\n';
  if (csv_file.is_open()) write_trials_csv(rep, csv_file);
  detail::emit(j, cfg, out);
  return kExitOk;
}

inline int run_moments_dirichlet(int k, const std::vector<int>& exponents, const RunConfig& cfg, std::ostream& out) {
  Json j = detail::header("dirichlet_moment");
  j["points"] = k;
  j["exponents"] = exponents;
  j["moment"] = dirichlet_moment(k, exponents).str();
  detail::emit(j, cfg, out);
  return kExitOk;
}

inline int run_selftest(bool slow, McSettings mc, const RunConfig& cfg, std::ostream& out) {
  std::vector<CriterionResult> results;
  auto record = [&](CriterionResult r) {
    if (cfg.format != Format::json) out << r.line() << std::endl;
    results.push_back(std::move(r));
  };
  for (auto& r : exact_criteria()) record(std::move(r));
  if (slow)
    for (auto& r : monte_carlo_criteria(mc)) record(std::move(r));
  bool ok = true;
  for (const auto& r : results) ok = ok && (r.pass || !r.blocking);
  if (cfg.format == Format::json) {
    Json j = detail::header("selftest");
    Json rs = Json::array();
    for (const auto& r : results)
      rs.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"blocking", r.blocking}, {"detail", r.detail}});
    j["criteria"] = rs;
    j["ok"] = ok;
    out << j.dump(2) << '\n';
  }
  return detail::status(ok);
}

// ------------------------------------------------------------ dispatch

/// args excludes the program name.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"tgmaps: exact map combinatorics and Voronoi cell sampling"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML/INI file with the same keys as the flags; flags win");

  RunConfig cfg;
  std::string format = "json";
  app.add_option("--format", format, "json, text or csv (csv: tau only)")
      ->check(CLI::IsMember({"json", "text", "csv"}))
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "64-bit seed")->envname("TGMAPS_SEED")->capture_default_str();
  app.add_option("--threads", cfg.threads, "thread cap")->check(CLI::PositiveNumber)->capture_default_str();

  std::function<int()> action;

  unsigned max_g = 5;
  auto* tau = app.add_subcommand("tau", "tau_g and t_g for g <= G");
  tau->add_option("--max-g", max_g)->check(CLI::Range(0, 100000))->capture_default_str();
  tau->callback([&] { action = [&] { return run_tau(max_g, cfg, out); }; });

  std::string series_which = "all";
  std::size_t order = 50;
  auto* series = app.add_subcommand("series", "generating-function identities");
  series->require_subcommand(1);
  auto* series_verify = series->add_subcommand("verify", "residual of a series identity");
  series_verify->add_option("--which", series_which)
      ->check(CLI::IsMember({"ode", "eliminate", "kernel", "all"}))
      ->capture_default_str();
  series_verify->add_option("--order", order)->check(CLI::Range(1, 2000))->capture_default_str();
  series_verify->callback([&] { action = [&] { return run_series_verify(series_which, order, cfg, out); }; });

  std::string dump_terms;
  auto* elim = app.add_subcommand("eliminate", "eliminate U_2..U_5 and print the residual");
  elim->add_flag("--derive", "run the derivation (the only mode)");
  elim->add_option("--dump-terms", dump_terms, "also write the canonical text to FILE");
  elim->callback([&] { action = [&] { return run_eliminate(dump_terms, cfg, out); }; });

  int edges = 3, genus_opt = 0;
  bool labelled = false, two_face = false;
  auto* enumerate = app.add_subcommand("enumerate", "exact counts by brute force");
  enumerate->add_option("--edges", edges)->required();
  enumerate->add_option("--genus", genus_opt)->check(CLI::NonNegativeNumber)->capture_default_str();
  enumerate->add_flag("--labelled", labelled, "count well-labelled maps");
  enumerate->add_flag("--two-face", two_face, "two-face maps with marked corners");
  enumerate->callback([&] { action = [&] { return run_enumerate(edges, genus_opt, labelled, two_face, cfg, out); }; });

  auto* verify = app.add_subcommand("verify", "exact cross-checks");
  verify->require_subcommand(1);
  int max_edges = 4, genus_target = 1, bij_genus = 0;
  std::string bij_which = "all";
  auto* tutte = verify->add_subcommand("tutte", "root-edge deletion identity");
  tutte->add_option("--max-edges", max_edges)->capture_default_str();
  tutte->add_option("--genus-target", genus_target)->check(CLI::PositiveNumber)->capture_default_str();
  tutte->callback([&] { action = [&] { return run_verify_tutte(max_edges, genus_target, cfg, out); }; });
  auto* cases = verify->add_subcommand("cases", "genus-2 case decomposition");
  cases->add_option("--max-edges", max_edges)->capture_default_str();
  cases->callback([&] { action = [&] { return run_verify_cases(max_edges, cfg, out); }; });
  auto* bij = verify->add_subcommand("bijections", "bijection suites");
  bij->add_option("--max-edges", max_edges)->capture_default_str();
  bij->add_option("--genus", bij_genus)->check(CLI::NonNegativeNumber)->capture_default_str();
  bij->add_option("--which", bij_which)->check(CLI::IsMember({"ms", "miermont", "audit", "all"}))->capture_default_str();
  bij->callback([&] { action = [&] { return run_verify_bijections(max_edges, bij_genus, bij_which, cfg, out); }; });

  VoronoiArgs va;
  auto* sample = app.add_subcommand("sample", "Monte-Carlo sampling");
  sample->require_subcommand(1);
  auto* voronoi = sample->add_subcommand("voronoi", "Voronoi cell-mass moments");
  voronoi->add_option("--genus", va.genus)->capture_default_str();
  voronoi->add_option("--faces", va.faces)->capture_default_str();
  voronoi->add_option("--trials", va.trials)->capture_default_str();
  voronoi->add_option("--points", va.points)->capture_default_str();
  voronoi->add_option("--out", va.out_path, "JSON report file");
  voronoi->add_option("--csv-per-trial", va.csv_path, "per-trial masses");
  voronoi->callback([&] { action = [&] { return run_sample_voronoi(va, cfg, out); }; });

  int dir_points = 2;
  std::vector<int> exponents;
  auto* moments = app.add_subcommand("moments", "exact reference moments");
  moments->require_subcommand(1);
  auto* dirichlet = moments->add_subcommand("dirichlet", "E[prod Y_i^a_i] for uniform spacings");
  dirichlet->add_option("--points", dir_points)->capture_default_str();
  dirichlet->add_option("--exponents", exponents, "comma-separated")->delimiter(',')->required();
  dirichlet->callback([&] { action = [&] { return run_moments_dirichlet(dir_points, exponents, cfg, out); }; });

  bool slow = false;
  McSettings mc;
  auto* selftest = app.add_subcommand("selftest", "acceptance criteria 1-10 (--slow adds 11-13)");
  selftest->add_flag("--slow", slow, "include the Monte-Carlo criteria");
  selftest->add_option("--faces", mc.faces, "faces for the slow criteria")->capture_default_str();
  selftest->add_option("--trials", mc.trials, "trials for the slow criteria")->capture_default_str();
  selftest->callback([&] {
    action = [&] {
      mc.seed = cfg.seed;
      mc.threads = cfg.threads;
      return run_selftest(slow, mc, cfg, out);
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  cfg.format = format == "csv" ? Format::csv : format == "text" ? Format::text : Format::json;
  cfg.format_given = app.count("--format") > 0;
  if (cfg.format == Format::csv && !tau->parsed()) {
    err << "--format csv is only available for tau\n";
    return kExitUsage;
  }
  try {
    return action();
  } catch (const BoundError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

inline int dispatch(int argc, char** argv) {
  return dispatch(std::vector<std::string>(argv + 1, argv + argc));
}

}  // namespace tgmaps::cli
