#include "pvosc/report.hpp"

#include <fstream>

namespace pvosc {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

Integer parse_integer(const json& v, const std::string& field) {
  if (v.is_number_integer()) return Integer(std::to_string(v.get<long long>()));
  if (v.is_string()) {
    const Rational r = parse_rational(v.get<std::string>());
    if (r.get_den() != 1) invalid(field + ": expected an integer");
    return r.get_num();
  }
  invalid(field + ": expected an integer");
}

Rational parse_rational_value(const json& v, const std::string& field) {
  if (v.is_number_integer()) return Rational(Integer(std::to_string(v.get<long long>())));
  if (v.is_string()) return parse_rational(v.get<std::string>());
  invalid(field + ": expected \"num/den\"");
}

json vertex_json(const ScaledIFS& s, const VertexSpace& space, std::size_t v) {
  const FieldElement c = display_value(s, space.y_of(v));
  return {{"q", space.q_of(v)}, {"c", to_string(c)}, {"c_approx", to_double(c)}};
}

}  // namespace

RunConfig parse_config(const json& doc_in) {
  if (!doc_in.is_object()) invalid("config must be a JSON object");
  const json& doc = doc_in.contains("config") ? doc_in.at("config") : doc_in;
  for (const char* key : {"minpoly", "p", "b"}) {
    if (!doc.contains(key) || !doc.at(key).is_array()) invalid(std::string("config needs an array '") + key + "'");
  }
  RunConfig c;
  for (const auto& v : doc.at("minpoly")) c.minpoly.push_back(parse_integer(v, "minpoly"));
  for (const auto& v : doc.at("p")) {
    if (!v.is_number_integer()) invalid("p: expected integers");
    c.p.push_back(v.get<int>());
  }
  for (const auto& v : doc.at("b")) c.b.push_back(parse_rational_value(v, "b"));
  if (c.p.size() != c.b.size()) invalid("p and b must have the same length");

  if (doc.contains("options")) {
    const json& o = doc.at("options");
    if (!o.is_object()) invalid("options must be an object");
    try {
      c.options.refined = o.value("refined", false);
      c.options.verify = o.value("verify", false);
      c.options.verify_depth = o.value("verify_depth", 8);
      c.options.force_general_T1 = o.value("force_general_T1", false);
      if (o.contains("emit_dot") && !o.at("emit_dot").is_null()) c.options.emit_dot = o.at("emit_dot").get<std::string>();
      if (o.contains("emit_json") && !o.at("emit_json").is_null()) c.options.emit_json = o.at("emit_json").get<std::string>();
    } catch (const json::exception& e) {
      invalid(std::string("options: ") + e.what());
    }
    if (c.options.verify_depth < 1) invalid("verify_depth must be positive");
  }
  return c;
}

json config_to_json(const RunConfig& c) {
  json minpoly = json::array();
  for (const auto& x : c.minpoly) minpoly.push_back(x.fits_slong_p() ? json(x.get_si()) : json(x.get_str()));
  json b = json::array();
  for (const auto& x : c.b) b.push_back(x.get_str());
  json options = {{"refined", c.options.refined},
                  {"verify", c.options.verify},
                  {"verify_depth", c.options.verify_depth},
                  {"force_general_T1", c.options.force_general_T1}};
  if (c.options.emit_dot) options["emit_dot"] = *c.options.emit_dot;
  if (c.options.emit_json) options["emit_json"] = *c.options.emit_json;
  return {{"minpoly", minpoly}, {"p", c.p}, {"b", b}, {"options", options}};
}

IFSSpec make_spec(const RunConfig& config) {
  return make_ifs(pisot_from_minpoly(IntPolynomial(config.minpoly)), config.p, config.b);
}

json witness_to_json(const DecisionReport& report, const DecisionGraph& g, const std::string& property,
                     const WitnessPath& w, const ReplayResult& replay) {
  const ScaledIFS& s = report.scaled;
  json vertices = json::array();
  for (auto v : w.vertices) vertices.push_back(vertex_json(s, g.space(), v));
  json labels = json::array();
  for (const auto& l : w.labels) labels.push_back({{"alpha", to_string(g.words()[l.alpha].word)}, {"beta", to_string(g.words()[l.beta].word)}});
  json out = {{"property", property},
              {"kind", w.kind == WitnessKind::PathToZero ? "path_to_zero" : "lasso"},
              {"start_pair", {w.start_i + 1, w.start_j + 1}},
              {"vertices", vertices},
              {"labels", labels},
              {"length", w.length()}};
  json rep = {{"verified", true}, {"sigma", to_string(replay.sigma)}, {"tau", to_string(replay.tau)}};
  if (w.kind == WitnessKind::Lasso) {
    out["cycle_start"] = w.cycle_start;
    rep["cycle_sigma"] = to_string(replay.cycle_sigma);
    rep["cycle_tau"] = to_string(replay.cycle_tau);
  }
  out["replay"] = rep;
  return out;
}

RunResult run(const RunConfig& config, bool with_timings) {
  RunResult result;
  try {
    const IFSSpec spec = make_spec(config);
    DecisionOptions options;
    options.refined = config.options.refined;
    options.force_general = config.options.force_general_T1;
    const DecisionReport r = analyze(spec, options);
    const ScaledIFS& s = r.scaled;
    const Diagnostics& d = r.diagnostics;

    json& j = result.report;
    j["config"] = config_to_json(config);
    j["field"] = {{"minpoly", to_string(s.field()->minpoly())},
                  {"degree", s.field()->degree()},
                  {"eta_approx", s.field()->approx()}};
    json b_int = json::array();
    for (const auto& x : s.b_int) b_int.push_back(x.get_str());
    j["scaled"] = {{"scale_a", s.scale_a.get_str()}, {"b_int", b_int}, {"T", s.T}};

    j["verdicts"] = {{"osc", to_string(r.osc.verdict)}, {"ssc", to_string(r.ssc.verdict)}};
    if (r.refined_osc) j["verdicts"]["refined_osc"] = to_string(r.refined_osc->verdict);

    json witnesses = json::array();
    auto add_witness = [&](const std::string& property, const DecisionGraph& g, const Decision& dec) {
      if (!dec.witness) return;
      witnesses.push_back(witness_to_json(r, g, property, *dec.witness, replay_witness(s, g, *dec.witness)));
    };
    add_witness("osc", *r.graph, r.osc);
    add_witness("ssc", *r.graph, r.ssc);
    if (r.refined_osc) add_witness("refined_osc", *r.refined_graph, *r.refined_osc);
    j["witnesses"] = witnesses;

    json starts = json::array();
    for (const auto& sv : r.lambda.elements) {
      json v = vertex_json(s, *r.xi, sv.index);
      v["pair"] = {sv.i + 1, sv.j + 1};
      starts.push_back(v);
    }
    j["start_set"] = starts;

    j["dim_s"] = r.dim_s;
    json cor = {{"dim_equality", r.corollaries.dim_equality}};
    if (r.corollaries.interior_nonempty) cor["interior_nonempty"] = *r.corollaries.interior_nonempty;
    else cor["interior_reason"] = r.corollaries.interior_reason;
    if (r.corollaries.lipschitz_symbolic) cor["lipschitz_symbolic"] = *r.corollaries.lipschitz_symbolic;
    else cor["lipschitz_reason"] = r.corollaries.lipschitz_reason;
    j["corollaries"] = cor;

    const CardinalityBounds bounds = cardinality_bounds(s);
    json diag = {{"card_C", d.card_C},
                 {"card_Xi", d.card_Xi},
                 {"card_Lambda", d.card_Lambda},
                 {"edges", d.edges},
                 {"k0", d.k0},
                 {"t1_reduced", d.t1_reduced},
                 {"short_words", d.short_words},
                 {"bound", to_string(r.C->bound())},
                 {"card_C_bound_literal", bounds.literal.get_d()},
                 {"card_C_bound_corrected", bounds.corrected.get_d()}};
    if (bounds.t1_reduced) diag["card_Cprime_bound"] = bounds.t1_reduced->get_d();
    if (d.duplicate_maps) diag["duplicate_maps"] = {d.duplicate_maps->first + 1, d.duplicate_maps->second + 1};
    if (r.refined_osc) {
      diag["refined"] = {{"card_A", d.card_A}, {"card_Theta", d.card_Theta}, {"card_Psi", d.card_Psi}, {"edges", d.refined_edges}};
    }
    if (with_timings) {
      json times = json::object();
      for (const auto& [name, ms] : d.runtimes_ms) times[name] = ms;
      diag["runtimes_ms"] = times;
    }
    j["diagnostics"] = diag;

    std::vector<std::string> problems;
    if (r.osc.verdict == Verdict::Fails && r.ssc.verdict == Verdict::Holds)
      problems.push_back("OSC fails while SSC holds");
    if (r.refined_osc && r.refined_osc->verdict != r.osc.verdict)
      problems.push_back("refined graph disagrees with the basic graph on OSC");

    if (config.options.verify) {
      json v;
      try {
        const auto collision = find_word_collision(s, config.options.verify_depth);
        if (collision) {
          v["collision"] = {{"sigma", to_string(collision->sigma)}, {"tau", to_string(collision->tau)}};
          if (r.osc.verdict == Verdict::Holds) problems.push_back("word collision found although OSC holds");
        } else {
          v["collision"] = "none up to weight " + std::to_string(config.options.verify_depth);
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::BudgetExceeded) throw;
        v["collision"] = "budget exceeded";
      }
      const SeparationResult sep = cylinder_separation(s, config.options.verify_depth);
      v["cylinders"] = {{"status", to_string(sep.status)}, {"depth", sep.depth}};
      if (sep.status == Separation::Separated && r.ssc.verdict == Verdict::Fails)
        problems.push_back("cylinders separate although SSC fails");
      if (sep.status == Separation::Overlapping && r.ssc.verdict == Verdict::Holds)
        problems.push_back("cylinders overlap although SSC holds");
      j["verification"] = v;
    }

    if (config.options.emit_dot) {
      std::ofstream out(*config.options.emit_dot);
      if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + *config.options.emit_dot);
      std::vector<const WitnessPath*> ws;
      if (r.osc.witness) ws.push_back(&*r.osc.witness);
      if (r.ssc.witness) ws.push_back(&*r.ssc.witness);
      write_dot(out, s, *r.graph, r.lambda, ws);
    }

    if (config.options.emit_vertices) {
      std::ofstream out(*config.options.emit_vertices);
      if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + *config.options.emit_vertices);
      dump_vertices(out, s, *r.xi);
    }

    if (!problems.empty()) {
      result.exit_code = 3;
      for (const auto& p : problems) result.error += (result.error.empty() ? "" : "; ") + p;
      j["errors"] = problems;
    }
    if (config.options.emit_json) {
      std::ofstream out(*config.options.emit_json);
      if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + *config.options.emit_json);
      out << j.dump(2) << '\n';
    }
  } catch (const Error& e) {
    const bool internal = e.kind() == ErrorKind::ReplayMismatch || e.kind() == ErrorKind::Disagreement;
    result.exit_code = internal ? 3 : 2;
    result.error = e.what();
    result.report["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
  }
  return result;
}

}  // namespace pvosc
