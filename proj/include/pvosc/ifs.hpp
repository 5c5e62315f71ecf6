#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pvosc/algebraic.hpp"

namespace pvosc {

/// The system x -> lambda^{p_i} x + b_i, i = 0..m-1, with lambda = 1/eta.
struct IFSSpec {
  Field pisot;
  std::vector<int> p;
  std::vector<Rational> b;

  std::size_t m() const noexcept { return p.size(); }
};

/// Checks p_i >= 1, matching lengths and m >= 1.
IFSSpec make_ifs(Field pisot, std::vector<int> p, std::vector<Rational> b);

/// The affine map x -> lambda^p x + b.
struct GroupElement {
  int p = 0;
  FieldElement b;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

GroupElement identity(const Field& field);
GroupElement group_mul(const GroupElement& x, const GroupElement& y);
GroupElement group_inv(const GroupElement& x);

/// lambda^n = eta^{-n}.
FieldElement lambda_power(const Field& field, int n);

/// The system with translations multiplied by the least a making them integral.
struct ScaledIFS {
  IFSSpec base;
  Integer scale_a;
  std::vector<Integer> b_int;
  int T = 1;
  std::vector<Integer> B;          // {0} and the b_int, sorted, distinct
  std::vector<Integer> BminusB;    // sorted, distinct
  Integer max_abs_b;               // max_i |b_int[i]|
  Integer max_abs_BminusB;

  const Field& field() const noexcept { return base.pisot; }
  std::size_t m() const noexcept { return base.m(); }
  GroupElement letter(std::size_t i) const;
};

ScaledIFS scale_to_integers(const IFSSpec& spec);

/// Letters are 0-based internally; text forms are 1-based.
using Word = std::vector<int>;

std::string to_string(const Word& word);
int weight(const ScaledIFS& s, const Word& word);
GroupElement word_element(const ScaledIFS& s, const Word& word);

struct ShortWord {
  GroupElement element;
  Word word;  // first word found realizing the element
};

/// Distinct maps realized by words of weight 1..2T-1, in breadth-first,
/// lexicographic discovery order.
struct ShortWordSet {
  std::vector<ShortWord> elements;

  std::size_t size() const noexcept { return elements.size(); }
  const ShortWord& operator[](std::size_t i) const { return elements[i]; }
};

ShortWordSet enumerate_short_words(const ScaledIFS& s);

/// First pair i < j of identical maps, if any.
std::optional<std::pair<std::size_t, std::size_t>> find_duplicate_maps(const IFSSpec& spec);

/// s with sum_i lambda^{s p_i} = 1, to within tol.
double similarity_dimension(const IFSSpec& spec, double tol = 1e-12);

/// sum_i lambda^{p_i}, exactly.
FieldElement ratio_sum(const IFSSpec& spec);

}  // namespace pvosc
