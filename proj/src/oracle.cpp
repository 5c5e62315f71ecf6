#include "pvosc/oracle.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace pvosc {

namespace {

// lambda^n for n >= 0, grown on demand.
class LambdaPowers {
 public:
  explicit LambdaPowers(const Field& field)
      : lambda_(FieldElement::eta(field).inverse()), powers_{FieldElement(field, Rational(1))} {}

  const FieldElement& operator()(int n) {
    while (static_cast<int>(powers_.size()) <= n) powers_.push_back(powers_.back() * lambda_);
    return powers_[static_cast<std::size_t>(n)];
  }

 private:
  FieldElement lambda_;
  std::vector<FieldElement> powers_;
};

struct MapKey {
  int p;
  FieldElement b;
  bool operator==(const MapKey&) const = default;
};

struct MapKeyHash {
  std::size_t operator()(const MapKey& k) const noexcept {
    std::size_t seed = hash_value(k.b);
    hash_combine(seed, static_cast<std::size_t>(k.p));
    return seed;
  }
};

}  // namespace

std::optional<CollisionWitness> find_word_collision(const ScaledIFS& s, int max_weight, std::size_t budget) {
  if (max_weight < 1) throw Error(ErrorKind::InvalidInput, "max_weight must be at least 1");
  const Field& field = s.field();
  LambdaPowers lambda(field);
  std::vector<FieldElement> letters;
  for (const auto& b : s.b_int) letters.emplace_back(field, Rational(b));

  std::unordered_map<MapKey, Word, MapKeyHash> first;
  std::deque<std::pair<Word, GroupElement>> queue;
  queue.emplace_back(Word{}, GroupElement{0, FieldElement(field)});
  std::size_t nodes = 0;
  while (!queue.empty()) {
    auto [word, element] = std::move(queue.front());
    queue.pop_front();
    for (std::size_t i = 0; i < s.m(); ++i) {
      const int p = element.p + s.base.p[i];
      if (p > max_weight) continue;
      if (++nodes > budget) throw Error(ErrorKind::BudgetExceeded, "word enumeration exceeded its node budget");
      Word next = word;
      next.push_back(static_cast<int>(i));
      // (p, b) (p_i, b_i) = (p + p_i, lambda^p b_i + b)
      GroupElement g{p, lambda(element.p) * letters[i] + element.b};
      auto [it, inserted] = first.try_emplace(MapKey{g.p, g.b}, next);
      if (!inserted) return CollisionWitness{it->second, next, g};
      queue.emplace_back(std::move(next), std::move(g));
    }
  }
  return std::nullopt;
}

ReplayResult replay_witness(const ScaledIFS& s, const DecisionGraph& g, const WitnessPath& w) {
  const VertexSpace& space = g.space();
  const ShortWordSet& words = g.words();
  const Field& field = s.field();
  auto mismatch = [](const std::string& what) { throw Error(ErrorKind::ReplayMismatch, what); };

  if (w.vertices.empty() || w.labels.size() + 1 != w.vertices.size()) mismatch("malformed witness");
  if (w.start_i == w.start_j || w.start_i >= s.m() || w.start_j >= s.m()) mismatch("bad start pair");

  // The stored vertex must hold c = lambda^{T-2} y for the recomputed state.
  auto check_state = [&](const GroupElement& state, std::size_t vertex, std::size_t step) {
    const FieldElement y = eta_power(field, s.T - 2) * state.b;
    const auto index = space.index_of(state.p, y);
    if (!index) mismatch("state " + std::to_string(step) + " lies outside the vertex set");
    if (*index != vertex) mismatch("state " + std::to_string(step) + " differs from the stored vertex");
  };

  ReplayResult out;
  out.kind = w.kind;
  GroupElement state = group_mul(group_inv(s.letter(w.start_i)), s.letter(w.start_j));
  Word sigma{static_cast<int>(w.start_j)};
  Word tau{static_cast<int>(w.start_i)};
  check_state(state, w.vertices[0], 0);

  for (std::size_t k = 0; k < w.labels.size(); ++k) {
    const EdgeLabel label = w.labels[k];
    if (label.alpha >= words.size() || label.beta >= words.size()) mismatch("label out of range");
    const ShortWord& alpha = words[label.alpha];
    const ShortWord& beta = words[label.beta];
    const int weight_a = weight(s, alpha.word);
    const int weight_b = weight(s, beta.word);
    if (weight_a < 1 || weight_a > 2 * s.T - 1 || weight_b < 1 || weight_b > 2 * s.T - 1) mismatch("label weight");
    if (g.refined() && !alternating_signs(state.p, weight_b, state.p + weight_a - weight_b))
      mismatch("refined edge violates the sign pattern");
    // Rebuild the label maps from their words rather than trusting the stored elements.
    state = group_mul(group_mul(group_inv(word_element(s, beta.word)), state), word_element(s, alpha.word));
    check_state(state, w.vertices[k + 1], k + 1);

    Word& sig = (w.kind == WitnessKind::Lasso && k >= w.cycle_start) ? out.cycle_sigma : sigma;
    Word& ta = (w.kind == WitnessKind::Lasso && k >= w.cycle_start) ? out.cycle_tau : tau;
    sig.insert(sig.end(), alpha.word.begin(), alpha.word.end());
    ta.insert(ta.end(), beta.word.begin(), beta.word.end());
    ++out.steps_checked;
  }

  if (w.kind == WitnessKind::PathToZero) {
    if (state.p != 0 || !state.b.is_zero()) mismatch("path does not end at (0,0)");
    const GroupElement a = word_element(s, sigma);
    const GroupElement b = word_element(s, tau);
    if (!(a == b)) mismatch("replayed words induce different maps");
    if (sigma == tau) mismatch("replayed words coincide");
    out.collision = CollisionWitness{sigma, tau, a};
  } else {
    if (w.cycle_start >= w.labels.size()) mismatch("lasso without a cycle");
    if (w.vertices.back() != w.vertices[w.cycle_start]) mismatch("cycle does not close");
  }
  out.sigma = std::move(sigma);
  out.tau = std::move(tau);
  return out;
}

const char* to_string(Separation s) noexcept {
  switch (s) {
    case Separation::Separated: return "separated";
    case Separation::Overlapping: return "overlapping";
    case Separation::Unknown: return "unknown";
  }
  return "unknown";
}

SeparationResult cylinder_separation(const ScaledIFS& s, int depth) {
  if (depth < 1) throw Error(ErrorKind::InvalidInput, "depth must be at least 1");
  if (s.m() < 2) return {Separation::Separated, 0};
  const Field& field = s.field();
  LambdaPowers lambda(field);
  const FieldElement one(field, Rational(1));

  // The hull of the attractor is spanned by the extreme fixed points b_i / (1 - lambda^{p_i}).
  std::vector<FieldElement> fixed;
  for (std::size_t i = 0; i < s.m(); ++i)
    fixed.push_back(FieldElement(field, Rational(s.b_int[i])) / (one - lambda(s.base.p[i])));
  auto less = [](const FieldElement& a, const FieldElement& b) { return compare(a, b) < 0; };
  const FieldElement lo = *std::min_element(fixed.begin(), fixed.end(), less);
  const FieldElement hi = *std::max_element(fixed.begin(), fixed.end(), less);

  struct Cylinder {
    std::size_t letter;
    GroupElement map;
  };
  std::vector<Cylinder> level;
  for (std::size_t i = 0; i < s.m(); ++i) level.push_back({i, s.letter(i)});

  constexpr std::size_t kMaxCylinders = 1u << 16;
  for (int k = 1; k <= depth; ++k) {
    struct Piece {
      FieldElement lo, hi;
      std::size_t letter;
    };
    std::vector<Piece> pieces;
    for (const auto& c : level) {
      const FieldElement& r = lambda(c.map.p);
      pieces.push_back({r * lo + c.map.b, r * hi + c.map.b, c.letter});
    }
    std::sort(pieces.begin(), pieces.end(), [&](const Piece& a, const Piece& b) { return less(a.lo, b.lo); });

    // Sweep keeping the largest right end seen for two different letters.
    bool separated = true;
    std::optional<std::pair<FieldElement, std::size_t>> best, other;
    for (const auto& piece : pieces) {
      for (const auto* cand : {&best, &other}) {
        if (*cand && (*cand)->second != piece.letter && compare(piece.lo, (*cand)->first) <= 0) separated = false;
      }
      if (!separated) break;
      if (!best || compare(piece.hi, best->first) > 0) {
        if (best && best->second != piece.letter) other = best;
        best = std::make_pair(piece.hi, piece.letter);
      } else if (piece.letter != best->second && (!other || compare(piece.hi, other->first) > 0)) {
        other = std::make_pair(piece.hi, piece.letter);
      }
    }
    if (separated) return {Separation::Separated, k};

    // Images of the hull endpoints lie in the attractor; a value shared by two
    // first letters is a common point of two first-level pieces.
    std::unordered_map<FieldElement, std::size_t> owner;
    for (const auto& piece : pieces) {
      for (const auto* x : {&piece.lo, &piece.hi}) {
        auto [it, inserted] = owner.emplace(*x, piece.letter);
        if (!inserted && it->second != piece.letter) return {Separation::Overlapping, k};
      }
    }

    if (k == depth || level.size() * s.m() > kMaxCylinders) return {Separation::Unknown, k};
    std::vector<Cylinder> next;
    for (const auto& c : level) {
      for (std::size_t i = 0; i < s.m(); ++i) {
        GroupElement g{c.map.p + s.base.p[i], lambda(c.map.p) * FieldElement(field, Rational(s.b_int[i])) + c.map.b};
        next.push_back({c.letter, std::move(g)});
      }
    }
    level = std::move(next);
  }
  return {Separation::Unknown, depth};
}

}  // namespace pvosc
