#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "pvosc/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Decide the open set and strong separation conditions for x -> lambda^{p_i} x + b_i"};
  std::string config_path;
  bool refined = false, verify = false, force_general = false, no_timings = false;
  std::optional<int> depth;
  std::optional<std::string> dot, json_out, dump;
  app.add_option("--config", config_path, "JSON config file")->required();
  app.add_flag("--refined", refined, "also run the refined-graph test and compare");
  app.add_flag("--verify", verify, "run the brute-force oracles");
  app.add_option("--depth", depth, "word weight / cylinder depth for --verify");
  app.add_option("--dot", dot, "write the graph in Graphviz format");
  app.add_option("--json", json_out, "write the report here instead of stdout");
  app.add_option("--dump", dump, "write the vertex list, one per line");
  app.add_flag("--force-general", force_general, "skip the reduced vertex set when all p_i = 1");
  app.add_flag("--no-timings", no_timings, "leave runtimes out of the report");
  CLI11_PARSE(app, argc, argv);

  pvosc::RunConfig config;
  try {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "decide: cannot open " << config_path << '\n';
      return 2;
    }
    config = pvosc::parse_config(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "decide: " << config_path << ": " << e.what() << '\n';
    return 2;
  } catch (const pvosc::Error& e) {
    std::cerr << "decide: " << config_path << ": " << e.what() << '\n';
    return 2;
  }

  if (refined) config.options.refined = true;
  if (verify) config.options.verify = true;
  if (depth) config.options.verify_depth = *depth;
  if (force_general) config.options.force_general_T1 = true;
  if (dot) config.options.emit_dot = *dot;
  if (json_out) config.options.emit_json = *json_out;
  config.options.emit_vertices = dump;

  const pvosc::RunResult result = pvosc::run(config, !no_timings);
  if (!config.options.emit_json || result.exit_code == 2) std::cout << result.report.dump(2) << '\n';
  if (!result.error.empty()) std::cerr << "decide: " << result.error << '\n';
  return result.exit_code;
}
