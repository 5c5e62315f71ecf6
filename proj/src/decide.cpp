#include "pvosc/decide.hpp"

#include <algorithm>
#include <chrono>

namespace pvosc {

const char* to_string(Verdict v) noexcept { return v == Verdict::Holds ? "holds" : "fails"; }

namespace {

class Stopwatch {
 public:
  explicit Stopwatch(std::vector<std::pair<std::string, double>>& sink) : sink_(sink) {}

  void lap(const std::string& name) {
    const auto now = std::chrono::steady_clock::now();
    sink_.emplace_back(name, std::chrono::duration<double, std::milli>(now - last_).count());
    last_ = now;
  }

 private:
  std::vector<std::pair<std::string, double>>& sink_;
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

Decision to_decision(std::optional<WitnessPath> witness) {
  Decision d;
  d.verdict = witness ? Verdict::Fails : Verdict::Holds;
  d.witness = std::move(witness);
  return d;
}

}  // namespace

Corollaries corollary_report(const IFSSpec& spec, Verdict osc) {
  Corollaries c;
  const bool holds = osc == Verdict::Holds;
  c.dim_equality = holds;

  // dim_S = 1 exactly when sum lambda^{p_i} = 1 in Q(eta).
  if (ratio_sum(spec) == FieldElement(spec.pisot, Rational(1))) {
    c.interior_nonempty = holds;
  } else {
    c.interior_reason = "similarity dimension is not 1";
  }

  const bool uniform = std::all_of(spec.p.begin(), spec.p.end(), [&](int p) { return p == spec.p.front(); });
  if (!uniform) {
    c.lipschitz_reason = "exponents p_i are not all equal";
  } else {
    const FieldElement slack =
        FieldElement(spec.pisot, Rational(1)) - lambda_power(spec.pisot, spec.p.front()) * Rational(static_cast<long>(spec.m()));
    if (sign(slack) > 0) {
      c.lipschitz_symbolic = holds;
    } else {
      c.lipschitz_reason = "common ratio is not below 1/m";
    }
  }
  return c;
}

DecisionReport analyze(const IFSSpec& spec, const DecisionOptions& options) {
  DecisionReport r;
  Diagnostics& diag = r.diagnostics;
  Stopwatch clock(diag.runtimes_ms);

  r.scaled = scale_to_integers(spec);
  const ScaledIFS& s = r.scaled;
  diag.duplicate_maps = find_duplicate_maps(spec);
  auto words = std::make_shared<const ShortWordSet>(enumerate_short_words(s));
  r.words = words;
  diag.short_words = words->size();
  clock.lap("words");

  diag.t1_reduced = s.T == 1 && !options.force_general;
  r.C = std::make_shared<const DSet>(diag.t1_reduced ? build_t1_cprime(s) : compute_C(s));
  r.xi = std::make_shared<const VertexSpace>(diag.t1_reduced ? build_t1_space(r.C) : build_xi(r.C, s.T));
  r.lambda = build_lambda(s, *r.xi);
  diag.card_C = r.C->size();
  diag.card_Xi = r.xi->size();
  diag.card_Lambda = r.lambda.size();
  diag.k0 = r.C->stabilization_k();
  clock.lap("vertex_sets");

  r.graph = std::make_shared<const DecisionGraph>(build_graph(s, r.xi, words));
  diag.edges = r.graph->edge_count();
  clock.lap("graph");

  r.osc = to_decision(find_path_to_zero(*r.graph, r.lambda, options.method));
  r.ssc = to_decision(find_infinite_path(*r.graph, r.lambda, options.method));
  clock.lap("search");

  if (options.refined) {
    r.A = std::make_shared<const DSet>(compute_A(s));
    r.theta = std::make_shared<const VertexSpace>(build_theta(r.A, s.T));
    r.psi = build_psi(s, *r.theta);
    r.refined_graph = std::make_shared<const DecisionGraph>(build_refinement_graph(s, r.theta, words));
    r.refined_osc = to_decision(find_path_to_zero(*r.refined_graph, r.psi, options.method));
    diag.card_A = r.A->size();
    diag.card_Theta = r.theta->size();
    diag.card_Psi = r.psi.size();
    diag.refined_edges = r.refined_graph->edge_count();
    clock.lap("refined");
  }

  r.dim_s = similarity_dimension(spec);
  r.corollaries = corollary_report(spec, r.osc.verdict);
  clock.lap("corollaries");
  return r;
}

Decision decide_osc(const IFSSpec& spec) { return analyze(spec).osc; }

Decision decide_ssc(const IFSSpec& spec) { return analyze(spec).ssc; }

Decision decide_osc_refined(const IFSSpec& spec) {
  DecisionOptions options;
  options.refined = true;
  return *analyze(spec, options).refined_osc;
}

}  // namespace pvosc
