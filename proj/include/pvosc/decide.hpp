#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pvosc/graph.hpp"
#include "pvosc/ifs.hpp"
#include "pvosc/vertexset.hpp"

namespace pvosc {

enum class Verdict { Holds, Fails };

const char* to_string(Verdict v) noexcept;

struct Decision {
  Verdict verdict = Verdict::Holds;
  std::optional<WitnessPath> witness;  // present exactly when the verdict is Fails
};

struct DecisionOptions {
  bool refined = false;        // also run the test on the refined graph
  bool force_general = false;  // do not use the reduced vertex set when T = 1
  SearchMethod method = SearchMethod::Bfs;
};

struct Corollaries {
  bool dim_equality = false;  // dim_H = dim_S
  std::optional<bool> interior_nonempty;
  std::string interior_reason;
  std::optional<bool> lipschitz_symbolic;
  std::string lipschitz_reason;
};

struct Diagnostics {
  std::size_t card_C = 0;
  std::size_t card_Xi = 0;
  std::size_t card_Lambda = 0;
  std::size_t edges = 0;
  int k0 = 0;
  bool t1_reduced = false;
  std::size_t short_words = 0;
  std::optional<std::pair<std::size_t, std::size_t>> duplicate_maps;
  std::size_t card_A = 0;
  std::size_t card_Theta = 0;
  std::size_t card_Psi = 0;
  std::size_t refined_edges = 0;
  std::vector<std::pair<std::string, double>> runtimes_ms;
};

/// Everything built for one system, kept so witnesses can be interpreted.
struct DecisionReport {
  ScaledIFS scaled;
  std::shared_ptr<const ShortWordSet> words;
  std::shared_ptr<const DSet> C;
  std::shared_ptr<const VertexSpace> xi;
  StartSet lambda;
  std::shared_ptr<const DecisionGraph> graph;

  std::shared_ptr<const DSet> A;
  std::shared_ptr<const VertexSpace> theta;
  StartSet psi;
  std::shared_ptr<const DecisionGraph> refined_graph;

  Decision osc;
  Decision ssc;
  std::optional<Decision> refined_osc;
  double dim_s = 0.0;
  Corollaries corollaries;
  Diagnostics diagnostics;
};

DecisionReport analyze(const IFSSpec& spec, const DecisionOptions& options = {});

Decision decide_osc(const IFSSpec& spec);
Decision decide_ssc(const IFSSpec& spec);
Decision decide_osc_refined(const IFSSpec& spec);

Corollaries corollary_report(const IFSSpec& spec, Verdict osc);

}  // namespace pvosc
