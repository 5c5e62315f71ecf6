#include "pvosc/vertexset.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <unordered_set>

namespace pvosc {

FieldElement display_value(const ScaledIFS& s, const FieldElement& y) { return lambda_power(s.field(), s.T - 2) * y; }

DSet::DSet(std::vector<FieldElement> elements, FieldElement bound, BoundKind kind, int k0)
    : elements_(std::move(elements)), bound_(std::move(bound)), kind_(kind), k0_(k0) {
  index_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], static_cast<int>(i));
}

int DSet::find(const FieldElement& y) const {
  const auto it = index_.find(y);
  return it == index_.end() ? -1 : it->second;
}

DSet compute_D(const ScaledIFS& s, const FieldElement& bound, BoundKind kind, std::vector<std::size_t>* history) {
  const Field& field = s.field();
  const FieldElement zero(field);
  if (history) history->clear();
  // Degenerate translations: the ball collapses and only R = 0 survives.
  if (sign(bound) <= 0) {
    if (history) history->push_back(1);
    return DSet({zero}, bound, kind, 0);
  }
  auto inside = [&](const FieldElement& y) {
    return kind == BoundKind::Closed ? compare_abs(y, bound) == AbsOrder::LessOrEqual
                                     : compare_abs_strict(y, bound) == StrictAbsOrder::Less;
  };

  std::vector<FieldElement> diffs;
  for (const auto& x : s.BminusB) diffs.emplace_back(field, Rational(x));

  std::unordered_set<FieldElement> all;
  std::vector<FieldElement> frontier;
  for (const auto& b : diffs) {
    if (inside(b) && all.insert(b).second) frontier.push_back(b);
  }
  if (history) history->push_back(all.size());

  const FieldElement eta = FieldElement::eta(field);
  int k = 0;
  for (;;) {
    std::vector<FieldElement> next;
    for (const auto& y : frontier) {
      const FieldElement ey = eta * y;
      for (const auto& b : diffs) {
        FieldElement z = ey + b;
        if (all.contains(z) || !inside(z)) continue;
        all.insert(z);
        next.push_back(std::move(z));
      }
    }
    if (next.empty()) break;
    frontier = std::move(next);
    ++k;
    if (history) history->push_back(all.size());
  }

  std::vector<FieldElement> elements(all.begin(), all.end());
  std::sort(elements.begin(), elements.end(),
            [](const FieldElement& a, const FieldElement& b) { return compare(a, b) < 0; });
  return DSet(std::move(elements), bound, kind, k);
}

FieldElement compute_bound_d(const ScaledIFS& s) {
  const Field& f = s.field();
  const FieldElement one(f, Rational(1));
  const FieldElement eta = FieldElement::eta(f);
  // 1 / (1 - lambda) = eta / (eta - 1)
  return eta_power(f, s.T - 2) * (one + eta_power(f, s.T - 1)) * Rational(s.max_abs_b) * eta / (eta - one);
}

FieldElement compute_bound_t1(const ScaledIFS& s) {
  const Field& f = s.field();
  const FieldElement one(f, Rational(1));
  return FieldElement(f, Rational(s.max_abs_BminusB)) / (FieldElement::eta(f) - one);
}

FieldElement compute_bound_a(const ScaledIFS& s) {
  const Field& f = s.field();
  const FieldElement one(f, Rational(1));
  const FieldElement eta = FieldElement::eta(f);
  const FieldElement q = eta / (eta - one);
  return eta_power(f, s.T - 2) * Rational(2 * s.max_abs_b) * q * q;
}

DSet compute_C(const ScaledIFS& s) { return compute_D(s, compute_bound_d(s), BoundKind::Closed); }

DSet build_t1_cprime(const ScaledIFS& s) {
  if (s.T != 1) throw Error(ErrorKind::NotApplicable, "the reduced vertex set needs all p_i = 1");
  return compute_D(s, compute_bound_t1(s), BoundKind::Closed);
}

DSet compute_A(const ScaledIFS& s) { return compute_D(s, compute_bound_a(s), BoundKind::Open); }

// ---------------------------------------------------------------------------

VertexSpace::VertexSpace(int q_min, int q_max, std::shared_ptr<const DSet> values)
    : q_min_(q_min), q_max_(q_max), values_(std::move(values)) {}

Vertex VertexSpace::vertex(std::size_t index) const { return {q_of(index), y_of(index)}; }

std::optional<std::size_t> VertexSpace::index_of_position(int q, int position) const {
  if (q < q_min_ || q > q_max_ || position < 0) return std::nullopt;
  return static_cast<std::size_t>(q - q_min_) * values_->size() + static_cast<std::size_t>(position);
}

std::optional<std::size_t> VertexSpace::index_of(int q, const FieldElement& y) const {
  if (q < q_min_ || q > q_max_) return std::nullopt;
  return index_of_position(q, values_->find(y));
}

std::size_t VertexSpace::zero_index() const {
  return *index_of(0, FieldElement(values_->bound().field()));
}

VertexSpace build_xi(std::shared_ptr<const DSet> C, int T) { return VertexSpace(-T + 1, T - 1, std::move(C)); }
VertexSpace build_t1_space(std::shared_ptr<const DSet> Cprime) { return VertexSpace(0, 0, std::move(Cprime)); }
VertexSpace build_theta(std::shared_ptr<const DSet> A, int T) { return VertexSpace(0, T - 1, std::move(A)); }

namespace {

StartSet build_starts(const ScaledIFS& s, const VertexSpace& space, bool require_ordered_p) {
  StartSet out;
  std::unordered_set<std::size_t> used;
  for (std::size_t i = 0; i < s.m(); ++i) {
    for (std::size_t j = 0; j < s.m(); ++j) {
      if (i == j) continue;
      const int pi = s.base.p[i];
      const int pj = s.base.p[j];
      if (require_ordered_p && pj < pi) continue;
      const FieldElement y = eta_power(s.field(), s.T - 2 + pi) * Rational(s.b_int[j] - s.b_int[i]);
      const auto index = space.index_of(pj - pi, y);
      if (index && used.insert(*index).second) out.elements.push_back({*index, i, j});
    }
  }
  return out;
}

}  // namespace

StartSet build_lambda(const ScaledIFS& s, const VertexSpace& space) { return build_starts(s, space, false); }
StartSet build_psi(const ScaledIFS& s, const VertexSpace& space) { return build_starts(s, space, true); }

Rational separation_bound(const ScaledIFS& s) {
  const Integer height = 2 * s.max_abs_BminusB;
  return garsia_lower_bound(*s.field(), Rational(height > 0 ? height : Integer(1)));
}

CardinalityBounds cardinality_bounds(const ScaledIFS& s) {
  const PisotNumber& pisot = *s.field();
  const RealInterval eta = pisot.root_interval();
  const std::size_t l = pisot.conjugates().size();

  // a_lambda = 2^{l+1} / (1 - lambda) / prod (1 - |eta_i|); 1/(1-lambda) = eta/(eta-1) decreases in eta.
  Rational a = Rational(Integer(1) << static_cast<mp_bitcnt_t>(l + 1)) * eta.lo / (eta.lo - 1);
  for (const auto& conj : pisot.conjugates()) a /= Rational(1) - conj.modulus_upper;
  const int e = 2 * s.T - 3;
  Rational bT = 1;
  for (int i = 0; i < std::abs(e); ++i) bT *= e > 0 ? eta.hi : Rational(1) / eta.lo;
  Rational cB = 1;
  for (std::size_t i = 0; i <= l; ++i) cB *= Rational(s.max_abs_b);

  CardinalityBounds out;
  out.literal = a * bT * cB;
  const FieldElement d = compute_bound_d(s);
  out.corrected = 2 * enclose(d).hi / separation_bound(s) + 1;
  if (s.T == 1) out.t1_reduced = 2 * eta.lo / (eta.lo - 1) * Rational(s.max_abs_BminusB) + 1;
  return out;
}

void dump_vertices(std::ostream& out, const ScaledIFS& s, const VertexSpace& space) {
  for (std::size_t i = 0; i < space.size(); ++i) {
    const Vertex v = space.vertex(i);
    out << "q=" << v.q << " y=(";
    if (v.y.size() == 0) out << '0';
    for (std::size_t k = 0; k < v.y.size(); ++k) out << (k ? ", " : "") << v.y[k].get_str();
    out << ") c≈" << std::setprecision(12) << to_double(display_value(s, v.y)) << '\n';
  }
}

}  // namespace pvosc
