#pragma once

// JSON and CSV serialization of Monte-Carlo reports. Exact values are
// written as "p/q" strings.

#include "json.hpp"

#include <ostream>
#include <string>

#include "tgmaps/montecarlo.hpp"

namespace tgmaps {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

inline Json to_json(const MomentEstimate& m) {
  return Json{{"name", m.name},
              {"estimate", m.estimate},
              {"stderr", m.stderr_},
              {"trials", m.trials},
              {"reference", m.reference.str()},
              {"z", m.z()}};
}

/// Everything but "run" and "runtime_seconds" depends only on the
/// parameters and the seed.
inline Json to_json(const MomentReport& r) {
  Json moments = Json::array();
  for (const auto& m : r.moments) moments.push_back(to_json(m));
  Json q = Json::array();
  for (double x : r.tie_rate.q) q.push_back(x);
  return Json{{"schema_version", kSchemaVersion},
              {"kind", "moments"},
              {"params", {{"genus", r.genus}, {"faces", r.n}, {"points", r.k}, {"trials", r.trials}, {"seed", r.seed}}},
              {"seed", r.seed},
              {"trials", r.trials},
              {"moments", moments},
              {"tie_rate", {{"mean", r.tie_rate.mean}, {"by_trial_quantiles", q}}},
              {"parity", {{"first_pair_even_fraction", r.first_pair_even_fraction}}},
              {"runtime_seconds", r.runtime_seconds},
              {"run", {{"threads", r.threads}, {"runtime_seconds", r.runtime_seconds}}}};
}

inline Json deterministic_view(Json j) {
  j.erase("run");
  j.erase("runtime_seconds");
  return j;
}

inline void write_trials_csv(const MomentReport& r, std::ostream& out) {
  out << "trial";
  for (int i = 0; i < r.k; ++i) out << ",mass_" << i + 1;
  out << ",tie\n";
  out.precision(17);
  for (std::size_t t = 0; t < r.per_trial.size(); ++t) {
    out << t;
    for (double m : r.per_trial[t].masses) out << ',' << m;
    out << ',' << r.per_trial[t].tie << '\n';
  }
}

}  // namespace tgmaps
