#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pvosc/decide.hpp"
#include "pvosc/oracle.hpp"

namespace pvosc {

struct RunOptions {
  bool refined = false;
  bool verify = false;
  int verify_depth = 8;
  std::optional<std::string> emit_dot;
  std::optional<std::string> emit_json;
  bool force_general_T1 = false;
  std::optional<std::string> emit_vertices;  // command line only, not part of the saved config
};

struct RunConfig {
  std::vector<Integer> minpoly;  // lowest degree first
  std::vector<int> p;
  std::vector<Rational> b;
  RunOptions options;
};

/// Accepts the documented schema; a saved report is also accepted since it
/// carries the config under "config". Throws InvalidInput.
RunConfig parse_config(const nlohmann::json& doc);
nlohmann::json config_to_json(const RunConfig& config);

IFSSpec make_spec(const RunConfig& config);

struct RunResult {
  int exit_code = 0;  // 0 decided, 2 invalid input, 3 internal verification failure
  nlohmann::json report;
  std::string error;
};

/// validate -> scale -> sets -> graph -> decide (-> refined, -> oracle), then
/// writes the DOT / JSON outputs named in the options.
RunResult run(const RunConfig& config, bool with_timings = true);

/// Report section for one witness, including its replay.
nlohmann::json witness_to_json(const DecisionReport& report, const DecisionGraph& g, const std::string& property,
                               const WitnessPath& w, const ReplayResult& replay);

}  // namespace pvosc
