#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "pvosc/algebraic.hpp"
#include "pvosc/ifs.hpp"

namespace pvosc {

/// A vertex (q, c) stored through y = lambda^{-T+2} c, an element of Z[eta].
struct Vertex {
  int q = 0;
  FieldElement y;

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Scale between the stored coordinate y and the displayed c = lambda^{T-2} y.
FieldElement display_value(const ScaledIFS& s, const FieldElement& y);

enum class BoundKind { Closed, Open };

/// Values R(eta) with coefficients in B - B inside the ball |y| <= bound
/// (or < bound), as the fixed point of the frontier recursion.
class DSet {
 public:
  DSet(std::vector<FieldElement> elements, FieldElement bound, BoundKind kind, int k0);

  const std::vector<FieldElement>& elements() const noexcept { return elements_; }
  const FieldElement& bound() const noexcept { return bound_; }
  BoundKind bound_kind() const noexcept { return kind_; }
  /// Smallest k with D_{k+1} = D_k.
  int stabilization_k() const noexcept { return k0_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const FieldElement& operator[](std::size_t i) const { return elements_[i]; }

  /// Position in ascending order of real value, or -1.
  int find(const FieldElement& y) const;
  bool contains(const FieldElement& y) const { return find(y) >= 0; }

 private:
  std::vector<FieldElement> elements_;
  FieldElement bound_;
  BoundKind kind_;
  int k0_;
  std::unordered_map<FieldElement, int> index_;
};

/// Runs the recursion D_0 = ball & (B-B), D_k = D_{k-1} + (ball & (eta * new + (B-B))).
/// Every intermediate set is kept when `history` is given.
DSet compute_D(const ScaledIFS& s, const FieldElement& bound, BoundKind kind,
               std::vector<std::size_t>* history = nullptr);

/// eta^{T-2} (1 + eta^{T-1}) max|b_i| / (1 - lambda).
FieldElement compute_bound_d(const ScaledIFS& s);
/// max|B-B| / (eta - 1): the T = 1 bound in y-coordinates.
FieldElement compute_bound_t1(const ScaledIFS& s);
/// eta^{T-2} 2 max|b_i| / (1 - lambda)^2, the open bound for A.
FieldElement compute_bound_a(const ScaledIFS& s);

DSet compute_C(const ScaledIFS& s);
DSet build_t1_cprime(const ScaledIFS& s);
DSet compute_A(const ScaledIFS& s);

/// {q_min..q_max} x D, indexed by (q - q_min) * #D + position in D.
class VertexSpace {
 public:
  VertexSpace(int q_min, int q_max, std::shared_ptr<const DSet> values);

  int q_min() const noexcept { return q_min_; }
  int q_max() const noexcept { return q_max_; }
  const DSet& values() const noexcept { return *values_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(q_max_ - q_min_ + 1) * values_->size(); }

  Vertex vertex(std::size_t index) const;
  int q_of(std::size_t index) const { return q_min_ + static_cast<int>(index / values_->size()); }
  const FieldElement& y_of(std::size_t index) const { return (*values_)[index % values_->size()]; }
  std::optional<std::size_t> index_of(int q, const FieldElement& y) const;
  std::optional<std::size_t> index_of_position(int q, int position) const;
  std::size_t zero_index() const;

 private:
  int q_min_;
  int q_max_;
  std::shared_ptr<const DSet> values_;
};

VertexSpace build_xi(std::shared_ptr<const DSet> C, int T);
VertexSpace build_t1_space(std::shared_ptr<const DSet> Cprime);
VertexSpace build_theta(std::shared_ptr<const DSet> A, int T);

struct StartVertex {
  std::size_t index;
  std::size_t i;  // the start state is (p_i, b_i)^{-1} (p_j, b_j)
  std::size_t j;
};

/// Start states in generating-pair order (i, j), one entry per distinct vertex.
struct StartSet {
  std::vector<StartVertex> elements;

  std::size_t size() const noexcept { return elements.size(); }
};

/// (p_j - p_i, lambda^{-p_i}(b_j - b_i)) for i != j, kept if it lies in the space.
StartSet build_lambda(const ScaledIFS& s, const VertexSpace& space);
/// Same with the extra condition p_j >= p_i.
StartSet build_psi(const ScaledIFS& s, const VertexSpace& space);

/// Lower bound on |y - y'| for distinct y, y' in a DSet (Garsia with height 2 max|B-B|).
Rational separation_bound(const ScaledIFS& s);

struct CardinalityBounds {
  Rational literal;    // a_lambda * b_T * c_B as stated for the running-time estimate
  Rational corrected;  // 2 d / separation + 1
  std::optional<Rational> t1_reduced;  // T = 1 only: 2 max|B-B| / (1 - lambda) + 1, a bound on #C'
};

/// Upper bounds (rounded up) on #C.
CardinalityBounds cardinality_bounds(const ScaledIFS& s);

/// One vertex per line: "q=<int> y=<coeff vector> c≈<decimal>".
void dump_vertices(std::ostream& out, const ScaledIFS& s, const VertexSpace& space);

}  // namespace pvosc
