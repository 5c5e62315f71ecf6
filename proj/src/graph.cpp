#include "pvosc/graph.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <limits>
#include <ostream>
#include <unordered_map>

namespace pvosc {

// ---------------------------------------------------------------------------
// Searches on plain digraphs

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

std::vector<std::size_t> unwind(const std::vector<std::size_t>& parent, std::size_t v) {
  std::vector<std::size_t> path{v};
  while (parent[path.back()] != kNone) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

// Multi-source BFS; returns parents (kNone for sources and unreached) and the
// visit order.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> bfs(const Digraph& g,
                                                                  const std::vector<std::size_t>& sources) {
  std::vector<std::size_t> parent(g.size(), kNone);
  std::vector<char> seen(g.size(), 0);
  std::vector<std::size_t> order;
  for (auto s : sources) {
    if (!seen[s]) {
      seen[s] = 1;
      order.push_back(s);
    }
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    const std::size_t u = order[head];
    for (auto w : g[u]) {
      if (seen[w]) continue;
      seen[w] = 1;
      parent[w] = u;
      order.push_back(w);
    }
  }
  return {std::move(parent), std::move(order)};
}

std::optional<std::vector<std::size_t>> shortest_cycle(const Digraph& g, std::size_t v) {
  auto [parent, order] = bfs(g, {v});
  for (auto u : order) {
    for (auto w : g[u]) {
      if (w != v) continue;
      auto path = unwind(parent, u);
      path.push_back(v);
      return path;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<std::size_t>> shortest_path(const Digraph& g, const std::vector<std::size_t>& sources,
                                                      std::size_t target) {
  auto [parent, order] = bfs(g, sources);
  if (std::find(order.begin(), order.end(), target) == order.end()) return std::nullopt;
  return unwind(parent, target);
}

std::vector<std::size_t> strongly_connected_components(const Digraph& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> index(n, kNone), low(n, 0), comp(n, kNone);
  std::vector<char> on_stack(n, 0);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> calls;  // vertex, next edge
  std::size_t counter = 0, components = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kNone) continue;
    calls.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!calls.empty()) {
      auto& [v, next] = calls.back();
      if (next < g[v].size()) {
        const std::size_t w = g[v][next++];
        if (index[w] == kNone) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          calls.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const std::size_t done = v;
      calls.pop_back();
      if (!calls.empty()) low[calls.back().first] = std::min(low[calls.back().first], low[done]);
      if (low[done] == index[done]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = components;
        } while (w != done);
        ++components;
      }
    }
  }
  return comp;
}

namespace {

std::vector<char> cyclic_vertices(const Digraph& g) {
  const auto comp = strongly_connected_components(g);
  std::vector<std::size_t> comp_size(g.size(), 0);
  for (auto c : comp) ++comp_size[c];
  std::vector<char> cyclic(g.size(), 0);
  for (std::size_t v = 0; v < g.size(); ++v) {
    cyclic[v] = comp_size[comp[v]] >= 2 || std::find(g[v].begin(), g[v].end(), v) != g[v].end();
  }
  return cyclic;
}

}  // namespace

std::optional<Lasso> find_lasso(const Digraph& g, const std::vector<std::size_t>& sources) {
  const auto cyclic = cyclic_vertices(g);
  auto [parent, order] = bfs(g, sources);
  for (auto v : order) {
    if (!cyclic[v]) continue;
    return Lasso{unwind(parent, v), *shortest_cycle(g, v)};
  }
  return std::nullopt;
}

std::optional<Lasso> find_lasso_through(const Digraph& g, const std::vector<std::size_t>& sources,
                                        std::size_t through) {
  auto stem = shortest_path(g, sources, through);
  if (!stem) return std::nullopt;
  auto cycle = shortest_cycle(g, through);
  if (!cycle) return std::nullopt;
  return Lasso{std::move(*stem), std::move(*cycle)};
}

namespace {

// Dense Dijkstra over the complete graph with weights 1 (edge) or |V|+1.
// `dist` holds the initial labels; every vertex starts unsettled.
void dense_dijkstra(const Digraph& g, std::vector<std::size_t>& dist) {
  const std::size_t n = g.size();
  const std::size_t penalty = n + 1;
  std::vector<std::vector<char>> edge(n, std::vector<char>(n, 0));
  for (std::size_t u = 0; u < n; ++u) {
    for (auto w : g[u]) edge[u][w] = 1;
  }
  std::vector<char> settled(n, 0);
  for (std::size_t round = 0; round < n; ++round) {
    std::size_t u = kNone;
    for (std::size_t v = 0; v < n; ++v) {
      if (!settled[v] && (u == kNone || dist[v] < dist[u])) u = v;
    }
    if (u == kNone || dist[u] == kNone) break;
    settled[u] = 1;
    for (std::size_t v = 0; v < n; ++v) {
      const std::size_t w = edge[u][v] ? 1 : penalty;
      if (!settled[v] && dist[u] + w < dist[v]) dist[v] = dist[u] + w;
    }
  }
}

}  // namespace

bool penalty_reaches(const Digraph& g, const std::vector<std::size_t>& sources, std::size_t target) {
  std::vector<std::size_t> dist(g.size(), kNone);
  for (auto s : sources) dist[s] = 0;
  dense_dijkstra(g, dist);
  return dist[target] <= g.size();
}

bool penalty_has_infinite_path(const Digraph& g, const std::vector<std::size_t>& sources) {
  const std::size_t n = g.size();
  if (sources.empty()) return false;
  const std::size_t penalty = n + 1;
  // c(i,i): cheapest closed walk through i of positive length.
  std::vector<char> in_delta(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> dist(n, penalty);
    for (auto w : g[i]) dist[w] = 1;
    dense_dijkstra(g, dist);
    in_delta[i] = dist[i] <= n;
  }
  std::vector<std::size_t> dist(n, kNone);
  for (auto s : sources) dist[s] = 0;
  dense_dijkstra(g, dist);
  for (std::size_t i = 0; i < n; ++i) {
    if (in_delta[i] && dist[i] <= n) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// The decision graphs

DecisionGraph::DecisionGraph(std::shared_ptr<const VertexSpace> space, std::shared_ptr<const ShortWordSet> words,
                             bool refined, std::vector<std::vector<Edge>> adjacency)
    : space_(std::move(space)), words_(std::move(words)), refined_(refined), adjacency_(std::move(adjacency)) {
  for (const auto& out : adjacency_) edge_count_ += out.size();
}

std::optional<EdgeLabel> DecisionGraph::label(std::size_t from, std::size_t to) const {
  for (const auto& e : adjacency_[from]) {
    if (e.target == to) return e.label;
  }
  return std::nullopt;
}

Digraph DecisionGraph::digraph() const {
  Digraph g(adjacency_.size());
  for (std::size_t v = 0; v < adjacency_.size(); ++v) {
    for (const auto& e : adjacency_[v]) g[v].push_back(e.target);
  }
  return g;
}

bool alternating_signs(int q, int p_beta, int q_next) {
  auto sgn_int = [](int x) { return (x > 0) - (x < 0); };
  const int mid = sgn_int(q - p_beta);
  return sgn_int(q) * mid <= 0 && mid * sgn_int(q_next) <= 0;
}

std::optional<std::size_t> edge_target(const ScaledIFS& s, const VertexSpace& space, std::size_t from,
                                       const ShortWord& alpha, const ShortWord& beta) {
  const Field& f = s.field();
  const int q = space.q_of(from);
  const int pa = alpha.element.p;
  const int pb = beta.element.p;
  const int q_next = q + pa - pb;
  // y' = eta^{p_b} y + eta^{p_b+T-2-q} b_a - eta^{p_b+T-2} b_b
  const FieldElement y_next = eta_power(f, pb) * space.y_of(from) +
                              eta_power(f, pb + s.T - 2 - q) * alpha.element.b -
                              eta_power(f, pb + s.T - 2) * beta.element.b;
  return space.index_of(q_next, y_next);
}

namespace {

constexpr std::size_t kMaxLatticeDegree = 8;
constexpr std::int64_t kSmall = std::int64_t{1} << 40;
using Wide = __int128;
using Key = std::array<std::int64_t, kMaxLatticeDegree>;

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    std::size_t seed = 0;
    for (auto x : k) hash_combine(seed, static_cast<std::size_t>(x));
    return seed;
  }
};

bool to_small(const FieldElement& a, Key& out) {
  out.fill(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].get_den() != 1 || abs(a[i].get_num()) > kSmall) return false;
    out[i] = a[i].get_num().get_si();
  }
  return true;
}

// Integer coefficients of magnitude < 2^120, or nothing.
std::optional<std::array<Wide, kMaxLatticeDegree>> to_wide(const FieldElement& a) {
  std::array<Wide, kMaxLatticeDegree> out{};
  static const Integer limit = Integer(1) << 120;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].get_den() != 1 || abs(a[i].get_num()) >= limit) return std::nullopt;
    Integer x = a[i].get_num();
    const bool neg = x < 0;
    if (neg) x = -x;
    const Integer hi = x >> 60;
    const Integer lo = x - (hi << 60);
    Wide w = (static_cast<Wide>(hi.get_si()) << 60) + static_cast<Wide>(lo.get_si());
    out[i] = neg ? -w : w;
  }
  return out;
}

// Edge enumeration in the integer lattice Z^k. Every coordinate of an element
// of D is below 2^40 and so are the multiplication matrices, so products fit
// comfortably in 128 bits; anything landing outside 2^40 cannot be in D.
class LatticeKernel {
 public:
  static std::optional<LatticeKernel> make(const ScaledIFS& s, const VertexSpace& space, const ShortWordSet& words) {
    const std::size_t k = static_cast<std::size_t>(s.field()->degree());
    if (k > kMaxLatticeDegree) return std::nullopt;
    LatticeKernel kernel;
    kernel.k_ = k;
    const DSet& D = space.values();
    for (std::size_t i = 0; i < D.size(); ++i) {
      Key key;
      if (!to_small(D[i], key)) return std::nullopt;
      kernel.values_.push_back(key);
      kernel.lookup_.emplace(key, static_cast<int>(i));
    }
    const int max_p = 2 * s.T - 1;
    kernel.mult_.resize(static_cast<std::size_t>(max_p + 1));
    for (int p = 1; p <= max_p; ++p) {
      auto& m = kernel.mult_[static_cast<std::size_t>(p)];
      m.assign(k * k, 0);
      for (std::size_t j = 0; j < k; ++j) {
        Key col;
        if (!to_small(eta_power(s.field(), p + static_cast<int>(j)), col)) return std::nullopt;
        for (std::size_t i = 0; i < k; ++i) m[i * k + j] = col[i];
      }
    }
    const Field& f = s.field();
    const std::size_t nq = static_cast<std::size_t>(space.q_max() - space.q_min() + 1);
    const std::size_t n = words.size();
    kernel.shift_.resize(n * n * nq);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        const int pb = words[b].element.p;
        for (std::size_t qi = 0; qi < nq; ++qi) {
          const int q = space.q_min() + static_cast<int>(qi);
          const FieldElement w = eta_power(f, pb + s.T - 2 - q) * words[a].element.b -
                                 eta_power(f, pb + s.T - 2) * words[b].element.b;
          auto& slot = kernel.shift_[(a * n + b) * nq + qi];
          if (w.is_integral()) {
            auto wide = to_wide(w);
            if (!wide) return std::nullopt;
            slot = *wide;
          }
        }
      }
    }
    return kernel;
  }

  std::size_t degree() const noexcept { return k_; }

  void multiply(int p, std::size_t position, std::array<Wide, kMaxLatticeDegree>& out) const {
    const auto& m = mult_[static_cast<std::size_t>(p)];
    const Key& y = values_[position];
    out.fill(0);
    for (std::size_t i = 0; i < k_; ++i) {
      Wide acc = 0;
      for (std::size_t j = 0; j < k_; ++j) acc += static_cast<Wide>(m[i * k_ + j]) * y[j];
      out[i] = acc;
    }
  }

  const std::optional<std::array<Wide, kMaxLatticeDegree>>& shift(std::size_t index) const { return shift_[index]; }

  int find(const std::array<Wide, kMaxLatticeDegree>& z) const {
    Key key{};
    for (std::size_t i = 0; i < k_; ++i) {
      if (z[i] > kSmall || z[i] < -kSmall) return -1;
      key[i] = static_cast<std::int64_t>(z[i]);
    }
    const auto it = lookup_.find(key);
    return it == lookup_.end() ? -1 : it->second;
  }

 private:
  std::size_t k_ = 0;
  std::vector<Key> values_;
  std::unordered_map<Key, int, KeyHash> lookup_;
  std::vector<std::vector<std::int64_t>> mult_;
  std::vector<std::optional<std::array<Wide, kMaxLatticeDegree>>> shift_;
};

DecisionGraph build(const ScaledIFS& s, std::shared_ptr<const VertexSpace> space_ptr,
                    std::shared_ptr<const ShortWordSet> words_ptr, bool refined) {
  const VertexSpace& space = *space_ptr;
  const ShortWordSet& words = *words_ptr;
  const std::size_t n = words.size();
  const std::size_t nq = static_cast<std::size_t>(space.q_max() - space.q_min() + 1);
  const std::size_t count = space.size();
  const std::size_t per_q = space.values().size();
  std::vector<std::vector<Edge>> adjacency(count);
  std::vector<std::size_t> stamp(count, kNone);

  auto admissible = [&](int q, int pa, int pb, int& q_next) {
    q_next = q + pa - pb;
    if (q_next < space.q_min() || q_next > space.q_max()) return false;
    return !refined || alternating_signs(q, pb, q_next);
  };

  if (auto kernel = LatticeKernel::make(s, space, words)) {
    const int max_p = 2 * s.T - 1;
    std::vector<std::array<Wide, kMaxLatticeDegree>> scaled(static_cast<std::size_t>(max_p + 1));
    std::array<Wide, kMaxLatticeDegree> z{};
    for (std::size_t v = 0; v < count; ++v) {
      const int q = space.q_of(v);
      const std::size_t position = v % per_q;
      const std::size_t qi = static_cast<std::size_t>(q - space.q_min());
      for (int p = 1; p <= max_p; ++p) kernel->multiply(p, position, scaled[static_cast<std::size_t>(p)]);
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          int q_next;
          if (!admissible(q, words[a].element.p, words[b].element.p, q_next)) continue;
          const auto& shift = kernel->shift((a * n + b) * nq + qi);
          if (!shift) continue;
          const auto& base = scaled[static_cast<std::size_t>(words[b].element.p)];
          for (std::size_t i = 0; i < kernel->degree(); ++i) z[i] = base[i] + (*shift)[i];
          const int pos = kernel->find(z);
          if (pos < 0) continue;
          const std::size_t target = *space.index_of_position(q_next, pos);
          if (stamp[target] == v) continue;
          stamp[target] = v;
          adjacency[v].push_back({target, {a, b}});
        }
      }
    }
  } else {
    for (std::size_t v = 0; v < count; ++v) {
      const int q = space.q_of(v);
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          int q_next;
          if (!admissible(q, words[a].element.p, words[b].element.p, q_next)) continue;
          const auto target = edge_target(s, space, v, words[a], words[b]);
          if (!target || stamp[*target] == v) continue;
          stamp[*target] = v;
          adjacency[v].push_back({*target, {a, b}});
        }
      }
    }
  }
  return DecisionGraph(std::move(space_ptr), std::move(words_ptr), refined, std::move(adjacency));
}

}  // namespace

DecisionGraph build_graph(const ScaledIFS& s, std::shared_ptr<const VertexSpace> space,
                          std::shared_ptr<const ShortWordSet> words) {
  return build(s, std::move(space), std::move(words), false);
}

DecisionGraph build_refinement_graph(const ScaledIFS& s, std::shared_ptr<const VertexSpace> theta,
                                     std::shared_ptr<const ShortWordSet> words) {
  return build(s, std::move(theta), std::move(words), true);
}

// ---------------------------------------------------------------------------
// Witnesses

namespace {

std::vector<std::size_t> source_indices(const StartSet& sources) {
  std::vector<std::size_t> out;
  for (const auto& sv : sources.elements) out.push_back(sv.index);
  return out;
}

WitnessPath make_witness(const DecisionGraph& g, const StartSet& sources, std::vector<std::size_t> vertices,
                         WitnessKind kind, std::size_t cycle_start) {
  WitnessPath w;
  w.kind = kind;
  const auto start = std::find_if(sources.elements.begin(), sources.elements.end(),
                                  [&](const StartVertex& sv) { return sv.index == vertices.front(); });
  w.start_i = start->i;
  w.start_j = start->j;
  for (std::size_t k = 0; k + 1 < vertices.size(); ++k) w.labels.push_back(*g.label(vertices[k], vertices[k + 1]));
  w.vertices = std::move(vertices);
  w.cycle_start = cycle_start;
  return w;
}

WitnessPath from_lasso(const DecisionGraph& g, const StartSet& sources, const Lasso& lasso) {
  std::vector<std::size_t> vertices = lasso.stem;
  const std::size_t cycle_start = vertices.size() - 1;
  vertices.insert(vertices.end(), lasso.cycle.begin() + 1, lasso.cycle.end());
  return make_witness(g, sources, std::move(vertices), WitnessKind::Lasso, cycle_start);
}

}  // namespace

std::optional<WitnessPath> find_path_to_zero(const DecisionGraph& g, const StartSet& sources, SearchMethod method) {
  const Digraph digraph = g.digraph();
  const auto src = source_indices(sources);
  const std::size_t zero = g.space().zero_index();
  auto path = shortest_path(digraph, src, zero);
  if (method == SearchMethod::Penalty && penalty_reaches(digraph, src, zero) != path.has_value())
    throw Error(ErrorKind::Disagreement, "breadth-first and penalty searches disagree on reachability");
  if (!path) return std::nullopt;
  return make_witness(g, sources, std::move(*path), WitnessKind::PathToZero, 0);
}

std::optional<WitnessPath> find_infinite_path(const DecisionGraph& g, const StartSet& sources, SearchMethod method) {
  const Digraph digraph = g.digraph();
  const auto src = source_indices(sources);
  auto lasso = find_lasso(digraph, src);
  if (method == SearchMethod::Penalty && penalty_has_infinite_path(digraph, src) != lasso.has_value())
    throw Error(ErrorKind::Disagreement, "breadth-first and penalty searches disagree on infinite paths");
  if (!lasso) return std::nullopt;
  return from_lasso(g, sources, *lasso);
}

std::optional<WitnessPath> find_infinite_path_through(const DecisionGraph& g, const StartSet& sources,
                                                      std::size_t through) {
  auto lasso = find_lasso_through(g.digraph(), source_indices(sources), through);
  if (!lasso) return std::nullopt;
  return from_lasso(g, sources, *lasso);
}

// ---------------------------------------------------------------------------
// DOT

namespace {

std::string vertex_label(const ScaledIFS& s, const VertexSpace& space, std::size_t v) {
  return "(" + std::to_string(space.q_of(v)) + ", " + to_string(display_value(s, space.y_of(v))) + ")";
}

}  // namespace

void write_dot(std::ostream& out, const ScaledIFS& s, const DecisionGraph& g, const StartSet& starts,
               const std::vector<const WitnessPath*>& witnesses) {
  const VertexSpace& space = g.space();
  std::vector<char> is_start(space.size(), 0);
  for (const auto& sv : starts.elements) is_start[sv.index] = 1;
  std::vector<std::pair<std::size_t, std::size_t>> highlighted;
  for (const auto* w : witnesses) {
    if (!w) continue;
    for (std::size_t k = 0; k + 1 < w->vertices.size(); ++k) highlighted.emplace_back(w->vertices[k], w->vertices[k + 1]);
  }
  const std::size_t zero = space.zero_index();

  out << "digraph " << (g.refined() ? "G_star" : "G") << " {\n";
  out << "  node [shape=ellipse, fontsize=10];\n";
  for (std::size_t v = 0; v < space.size(); ++v) {
    out << "  v" << v << " [label=\"" << vertex_label(s, space, v) << "\"";
    if (v == zero) out << ", shape=doublecircle";
    if (is_start[v]) out << ", penwidth=2.5, color=blue";
    out << "];\n";
  }
  for (std::size_t v = 0; v < space.size(); ++v) {
    for (const auto& e : g.out_edges(v)) {
      out << "  v" << v << " -> v" << e.target;
      const bool bold = std::find(highlighted.begin(), highlighted.end(), std::make_pair(v, e.target)) != highlighted.end();
      if (bold) out << " [color=red, penwidth=2.5]";
      out << ";\n";
    }
  }
  out << "}\n";
}

}  // namespace pvosc
