// One line per acceptance criterion. Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>

#include "property_suites.hpp"
#include "pvosc/decide.hpp"
#include "pvosc/oracle.hpp"
#include "support/fixtures.hpp"

using namespace pvosc;

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream note;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!passed) note << "; ";
      note << what;
      passed = false;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

DecisionReport timed(const IFSSpec& spec, const DecisionOptions& options, double& secs) {
  const auto t0 = std::chrono::steady_clock::now();
  DecisionReport r = analyze(spec, options);
  secs = seconds_since(t0);
  return r;
}

// Displayed (q, c) of a start set, as a sorted list of (q, text).
std::vector<std::pair<int, std::string>> displayed(const DecisionReport& r, const StartSet& set,
                                                   const VertexSpace& space) {
  std::vector<std::pair<int, std::string>> out;
  for (const auto& sv : set.elements) out.emplace_back(space.q_of(sv.index), to_string(display_value(r.scaled, space.y_of(sv.index))));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<int, std::string>> expected_set(const Field& f, std::vector<std::pair<int, std::vector<long>>> items) {
  std::vector<std::pair<int, std::string>> out;
  for (auto& [q, c] : items) out.emplace_back(q, to_string(fx::el(f, c)));
  std::sort(out.begin(), out.end());
  return out;
}

bool cycle_contains(const WitnessPath& w, std::size_t v) {
  for (std::size_t k = w.cycle_start; k < w.vertices.size(); ++k)
    if (w.vertices[k] == v) return true;
  return false;
}

// Replays a witness; counts it and records any mismatch.
void replay_into(Outcome& out, std::size_t& count, const std::string& name, const DecisionReport& r,
                 const DecisionGraph& g, const WitnessPath& w) {
  try {
    const ReplayResult rep = replay_witness(r.scaled, g, w);
    if (w.kind == WitnessKind::PathToZero) {
      out.require(rep.collision && rep.sigma != rep.tau &&
                      word_element(r.scaled, rep.sigma) == word_element(r.scaled, rep.tau),
                  name + ": replayed words do not collide");
    }
    ++count;
  } catch (const Error& e) {
    out.require(false, name + ": " + e.what());
  }
}

Outcome criterion1() {
  Outcome out;
  for (int n = 1; n <= 3; ++n) {
    const std::string tag = "n=" + std::to_string(n);
    double secs = 0;
    const DecisionReport r = timed(fx::example1(n), {}, secs);
    const Field& f = r.scaled.field();
    out.require(displayed(r, r.lambda, *r.xi) == expected_set(f, {{0, {-6}}, {0, {6}}}), tag + ": start set");
    out.require(r.osc.verdict == Verdict::Fails && r.osc.witness, tag + ": OSC should fail");
    if (r.osc.witness) {
      const WitnessPath& w = *r.osc.witness;
      out.require(w.length() == static_cast<std::size_t>(n), tag + ": witness length " + std::to_string(w.length()));
      // (0,6) -> (0,2*3^2) -> ... -> (0,2*3^n) -> (0,0)
      std::vector<std::string> want;
      long c = 6;
      for (int k = 1; k <= n; ++k, c *= 3) want.push_back(to_string(fx::el(f, {c})));
      want.push_back(to_string(fx::el(f, {0})));
      std::vector<std::string> got;
      bool all_q0 = true;
      for (auto v : w.vertices) {
        got.push_back(to_string(display_value(r.scaled, r.xi->y_of(v))));
        all_q0 = all_q0 && r.xi->q_of(v) == 0;
      }
      out.require(all_q0 && got == want, tag + ": path differs from the displayed pattern");
    }
    out.require(r.ssc.verdict == Verdict::Fails, tag + ": SSC should fail");
    out.require(secs < 5.0, tag + ": took " + std::to_string(secs) + " s");
    if (n == 3) out.note << (out.passed ? "" : "; ") << "n=3 in " << secs << " s";
  }
  return out;
}

Outcome criterion2() {
  Outcome out;
  double secs = 0;
  const DecisionReport r = timed(fx::example2(), {}, secs);
  const Field& f = r.scaled.field();
  out.require(r.C->bound() == fx::el(f, {72}), "d = " + to_string(r.C->bound()));
  bool all_integers = r.C->size() == 145;
  for (long k = -72; k <= 72 && all_integers; ++k) all_integers = r.C->contains(fx::el(f, {k}));
  out.require(all_integers, "C is not [-72,72] (size " + std::to_string(r.C->size()) + ")");
  out.require(displayed(r, r.lambda, *r.xi) ==
                  expected_set(f, {{-1, {9}}, {0, {-36}}, {0, {36}}, {1, {-3}}, {1, {33}}}),
              "start set");
  out.require(r.osc.verdict == Verdict::Holds, "OSC should hold");
  out.require(r.ssc.verdict == Verdict::Fails, "SSC should fail");
  const auto v18 = r.xi->index_of(0, fx::el(f, {18}));
  out.require(v18.has_value(), "(0,18) not in the vertex set");
  if (v18) {
    const auto lasso = find_infinite_path_through(*r.graph, r.lambda, *v18);
    out.require(lasso && cycle_contains(*lasso, *v18), "no lasso with (0,18) on its cycle");
    if (lasso) {
      try {
        replay_witness(r.scaled, *r.graph, *lasso);
      } catch (const Error& e) {
        out.require(false, std::string("(0,18) lasso: ") + e.what());
      }
    }
  }
  out.require(secs < 30.0, "took " + std::to_string(secs) + " s");
  if (out.passed) out.note << "#C=145, |Lambda|=5, lasso through (0,18) found, " << secs << " s";
  return out;
}

Outcome criterion3() {
  Outcome out;
  double secs = 0;
  const DecisionReport r = timed(fx::example3(), {}, secs);
  const Field& f = r.scaled.field();
  // 15 + 10 sqrt2 = 5 + 10 eta, sqrt2 = eta - 1
  out.require(r.C->bound() == fx::el(f, {5, 10}), "d = " + to_string(r.C->bound()));
  out.require(r.xi->size() == 1059, "#Xi = " + std::to_string(r.xi->size()));
  out.require(displayed(r, r.lambda, *r.xi) == expected_set(f, {{1, {0, 4}},
                                                                 {0, {0, 5}},
                                                                 {-1, {-4, -8}},
                                                                 {-1, {1, 2}},
                                                                 {0, {0, -5}},
                                                                 {1, {0, -1}}}),
              "start set");
  out.require(r.osc.verdict == Verdict::Fails && r.osc.witness && r.osc.witness->vertices.back() == r.xi->zero_index(),
              "OSC should fail with a path to (0,0)");
  out.require(r.ssc.verdict == Verdict::Fails, "SSC should fail");
  out.require(secs < 60.0, "took " + std::to_string(secs) + " s");
  if (out.passed) out.note << "#Xi=1059, |Lambda|=6, " << secs << " s";
  return out;
}

Outcome criterion4() {
  Outcome out;
  std::size_t count = 0;
  for (int n = 1; n <= 3; ++n) {
    const DecisionReport r = analyze(fx::example1(n));
    const std::string tag = "n=" + std::to_string(n);
    if (r.osc.witness) replay_into(out, count, tag + " osc", r, *r.graph, *r.osc.witness);
    if (r.ssc.witness) replay_into(out, count, tag + " ssc", r, *r.graph, *r.ssc.witness);
  }
  {
    const DecisionReport r = analyze(fx::example2());
    if (r.ssc.witness) replay_into(out, count, "(1,2,1)/3 ssc", r, *r.graph, *r.ssc.witness);
    const auto v18 = r.xi->index_of(0, fx::el(r.scaled.field(), {18}));
    if (v18) {
      if (auto w = find_infinite_path_through(*r.graph, r.lambda, *v18))
        replay_into(out, count, "(1,2,1)/3 lasso via (0,18)", r, *r.graph, *w);
    }
  }
  {
    DecisionOptions o;
    o.refined = true;
    const DecisionReport r = analyze(fx::example3(), o);
    if (r.osc.witness) replay_into(out, count, "silver osc", r, *r.graph, *r.osc.witness);
    if (r.ssc.witness) replay_into(out, count, "silver ssc", r, *r.graph, *r.ssc.witness);
    if (r.refined_osc && r.refined_osc->witness)
      replay_into(out, count, "silver refined osc", r, *r.refined_graph, *r.refined_osc->witness);
  }
  out.require(count == 11, "replayed " + std::to_string(count) + " of 11 witnesses");
  if (out.passed) out.note << count << " witnesses replayed, 0 mismatches";
  return out;
}

std::vector<fx::RandomInstance> random_suite(std::size_t count, bool t1_only, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<fx::RandomInstance> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(fx::random_instance(rng, t1_only));
  return out;
}

Outcome criterion5() {
  Outcome out;
  DecisionOptions o;
  o.refined = true;
  std::size_t compared = 0, fails = 0;
  for (const IFSSpec& spec : {fx::example1(1), fx::example1(2), fx::example1(3), fx::example2(), fx::example3()}) {
    const DecisionReport r = analyze(spec, o);
    ++compared;
    out.require(r.refined_osc && r.refined_osc->verdict == r.osc.verdict, "worked example disagrees");
  }
  for (const auto& inst : random_suite(120, false, 20261015)) {
    try {
      const DecisionReport r = analyze(fx::to_spec(inst), o);
      ++compared;
      fails += r.osc.verdict == Verdict::Fails ? 1 : 0;
      out.require(r.refined_osc && r.refined_osc->verdict == r.osc.verdict, "disagreement on " + inst.describe());
    } catch (const Error& e) {
      out.require(false, inst.describe() + ": " + e.what());
    }
  }
  if (out.passed) out.note << compared << " systems agree (" << fails << " with OSC failing)";
  return out;
}

Outcome criterion6() {
  Outcome out;
  std::size_t implications = 0;
  for (const auto& inst : random_suite(120, false, 20261015)) {
    const DecisionReport r = analyze(fx::to_spec(inst));
    ++implications;
    if (r.osc.verdict == Verdict::Fails)
      out.require(r.ssc.verdict == Verdict::Fails, "OSC fails but SSC holds on " + inst.describe());
  }
  DecisionOptions general;
  general.force_general = true;
  std::size_t t1 = 0;
  std::vector<IFSSpec> specs{fx::example1(1), fx::example1(2), fx::example1(3)};
  for (const auto& inst : random_suite(50, true, 77)) specs.push_back(fx::to_spec(inst));
  for (const IFSSpec& spec : specs) {
    const DecisionReport a = analyze(spec);
    const DecisionReport b = analyze(spec, general);
    ++t1;
    out.require(a.diagnostics.t1_reduced && !b.diagnostics.t1_reduced, "T = 1 routing");
    out.require(a.osc.verdict == b.osc.verdict && a.ssc.verdict == b.ssc.verdict,
                "reduced and general pipelines disagree");
  }
  if (out.passed) out.note << implications << " implication checks, " << t1 << " T=1 systems agree";
  return out;
}

Outcome criterion7() {
  Outcome out;
  const double s3 = similarity_dimension(fx::example3());
  const double s2 = similarity_dimension(fx::example2());
  const double want2 = std::log(1 + std::sqrt(2.0)) / std::log(3.0);
  out.require(std::abs(s3 - 1.0) <= 1e-9, "silver system s = " + std::to_string(s3));
  out.require(std::abs(s2 - want2) <= 1e-9, "(1,2,1)/3 s = " + std::to_string(s2));
  if (out.passed) out.note << "s=" << s3 << " and s=" << s2 << " (tol 1e-9)";
  return out;
}

Outcome criterion8() {
  Outcome out;
  std::ostringstream log;
  for (const auto& r : props::run_all(log)) out.require(r.passed, r.name + ": " + r.detail);
  std::cout << log.str();
  if (out.passed) out.note << "all property suites pass";
  return out;
}

double median_seconds(const IFSSpec& spec, int reps, std::size_t& xi) {
  std::vector<double> t;
  for (int k = 0; k < reps; ++k) {
    double secs = 0;
    xi = timed(spec, {}, secs).diagnostics.card_Xi;
    t.push_back(secs);
  }
  std::sort(t.begin(), t.end());
  return t[t.size() / 2];
}

Outcome criterion9() {
  Outcome out;
  const IFSSpec doubled =
      make_ifs(fx::eta3(), {1, 2, 1}, {Rational(0), fx::q("11/18"), fx::q("4/3")});
  std::size_t xi1 = 0, xi2 = 0;
  const double t1 = median_seconds(fx::example2(), 7, xi1);
  const double t2 = median_seconds(doubled, 7, xi2);
  const double growth = static_cast<double>(xi2) / static_cast<double>(xi1);
  const double ratio = t2 / t1;
  out.require(ratio < growth * growth * growth, "time ratio " + std::to_string(ratio) + " >= cube of #Xi growth");
  out.note << (out.passed ? "" : "; ") << "#Xi " << xi1 << " -> " << xi2 << " (x" << growth << "), time x" << ratio
           << " < " << growth * growth * growth;
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 (1,1,1) systems, n = 1..3", criterion1},
      {"2 (1,2,1) system over 1/3", criterion2},
      {"3 (1,2,1) system over sqrt2-1", criterion3},
      {"4 witness replay", criterion4},
      {"5 refined vs basic OSC", criterion5},
      {"6 implication and T = 1 agreement", criterion6},
      {"7 similarity dimension", criterion7},
      {"8 property suites", criterion8},
      {"9 polynomial growth", criterion9},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::cout << (o.passed ? "PASS " : "FAIL ") << "criterion " << name << ": " << o.note.str() << std::endl;
    failed += o.passed ? 0 : 1;
  }
  std::cout << (9 - failed) << "/9 criteria passed\n";
  return failed;
}
