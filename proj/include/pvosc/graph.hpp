#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "pvosc/ifs.hpp"
#include "pvosc/vertexset.hpp"

namespace pvosc {

/// Plain adjacency lists; the searches below work on this form.
using Digraph = std::vector<std::vector<std::size_t>>;

/// Shortest path (by edge count) from any source to target, sources tried in
/// the given order on ties. The result starts at a source and ends at target.
std::optional<std::vector<std::size_t>> shortest_path(const Digraph& g, const std::vector<std::size_t>& sources,
                                                      std::size_t target);

struct Lasso {
  std::vector<std::size_t> stem;   // source .. entry vertex, inclusive
  std::vector<std::size_t> cycle;  // entry vertex .. entry vertex, at least one edge
};

/// Shortest stem to a vertex on a cycle, then the shortest cycle through it.
std::optional<Lasso> find_lasso(const Digraph& g, const std::vector<std::size_t>& sources);
/// Same, but the cycle must pass through `through`.
std::optional<Lasso> find_lasso_through(const Digraph& g, const std::vector<std::size_t>& sources,
                                        std::size_t through);

/// Strongly connected component id per vertex (Tarjan, iterative).
std::vector<std::size_t> strongly_connected_components(const Digraph& g);

/// All-pairs costs on the complete graph with weight 1 on edges and |V|+1
/// elsewhere; a path exists iff the cost is <= |V|. Dense, meant for small graphs.
bool penalty_reaches(const Digraph& g, const std::vector<std::size_t>& sources, std::size_t target);
bool penalty_has_infinite_path(const Digraph& g, const std::vector<std::size_t>& sources);

enum class SearchMethod { Bfs, Penalty };

/// Edge labels index into the ShortWordSet the graph was built from.
struct EdgeLabel {
  std::size_t alpha;
  std::size_t beta;

  friend bool operator==(const EdgeLabel&, const EdgeLabel&) = default;
};

struct Edge {
  std::size_t target;
  EdgeLabel label;
};

class DecisionGraph {
 public:
  DecisionGraph(std::shared_ptr<const VertexSpace> space, std::shared_ptr<const ShortWordSet> words, bool refined,
                std::vector<std::vector<Edge>> adjacency);

  const VertexSpace& space() const noexcept { return *space_; }
  std::shared_ptr<const VertexSpace> space_ptr() const noexcept { return space_; }
  const ShortWordSet& words() const noexcept { return *words_; }
  bool refined() const noexcept { return refined_; }
  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  const std::vector<Edge>& out_edges(std::size_t v) const { return adjacency_[v]; }
  std::optional<EdgeLabel> label(std::size_t from, std::size_t to) const;
  Digraph digraph() const;

 private:
  std::shared_ptr<const VertexSpace> space_;
  std::shared_ptr<const ShortWordSet> words_;
  bool refined_;
  std::vector<std::vector<Edge>> adjacency_;
  std::size_t edge_count_ = 0;
};

/// (p_beta, b_beta)^{-1} (q, c) (p_alpha, b_alpha) in stored coordinates;
/// the vertex it lands on, if any.
std::optional<std::size_t> edge_target(const ScaledIFS& s, const VertexSpace& space, std::size_t from,
                                       const ShortWord& alpha, const ShortWord& beta);

/// The sign pattern q, q - p_beta, q' required in the refined graph.
bool alternating_signs(int q, int p_beta, int q_next);

DecisionGraph build_graph(const ScaledIFS& s, std::shared_ptr<const VertexSpace> space,
                          std::shared_ptr<const ShortWordSet> words);
DecisionGraph build_refinement_graph(const ScaledIFS& s, std::shared_ptr<const VertexSpace> theta,
                                     std::shared_ptr<const ShortWordSet> words);

enum class WitnessKind { PathToZero, Lasso };

/// A start pair followed by labelled edges. For a lasso the edges from
/// cycle_start on form the cycle, so vertices.back() == vertices[cycle_start].
struct WitnessPath {
  WitnessKind kind = WitnessKind::PathToZero;
  std::size_t start_i = 0;
  std::size_t start_j = 0;
  std::vector<std::size_t> vertices;
  std::vector<EdgeLabel> labels;
  std::size_t cycle_start = 0;

  std::size_t length() const noexcept { return labels.size(); }
};

std::optional<WitnessPath> find_path_to_zero(const DecisionGraph& g, const StartSet& sources,
                                             SearchMethod method = SearchMethod::Bfs);
std::optional<WitnessPath> find_infinite_path(const DecisionGraph& g, const StartSet& sources,
                                              SearchMethod method = SearchMethod::Bfs);
/// A lasso whose cycle contains the given vertex, if one exists.
std::optional<WitnessPath> find_infinite_path_through(const DecisionGraph& g, const StartSet& sources,
                                                      std::size_t through);

/// Graphviz rendering; start vertices outlined, (0,0) double circled and the
/// witness edges drawn bold.
void write_dot(std::ostream& out, const ScaledIFS& s, const DecisionGraph& g, const StartSet& starts,
               const std::vector<const WitnessPath*>& witnesses);

}  // namespace pvosc
