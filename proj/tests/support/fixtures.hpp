#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pvosc/decide.hpp"
#include "pvosc/ifs.hpp"
#include "pvosc/vertexset.hpp"

namespace fx {

using pvosc::Field;
using pvosc::FieldElement;
using pvosc::IFSSpec;
using pvosc::Rational;

inline Field eta3() { return pvosc::pisot_from_minpoly({-3, 1}); }
inline Field silver() { return pvosc::pisot_from_minpoly({-1, -2, 1}); }
inline Field golden() { return pvosc::pisot_from_minpoly({-1, -1, 1}); }

inline Rational q(const std::string& s) { return pvosc::parse_rational(s); }

// lambda = 1/3, p = (1,1,1), b = (0, 2/3^{n+1}, 2/3)
inline IFSSpec example1(int n) {
  long a = 1;
  for (int i = 0; i <= n; ++i) a *= 3;
  return pvosc::make_ifs(eta3(), {1, 1, 1}, {Rational(0), Rational(2, a), Rational(2, 3)});
}

inline IFSSpec example2() { return pvosc::make_ifs(eta3(), {1, 2, 1}, {Rational(0), q("11/18"), q("2/3")}); }

inline IFSSpec example3() { return pvosc::make_ifs(silver(), {1, 2, 1}, {Rational(0), q("2/5"), q("1/2")}); }

// Field element from integer coefficients in powers of eta.
inline FieldElement el(const Field& f, std::vector<long> c) {
  std::vector<Rational> r;
  for (long x : c) r.emplace_back(x);
  return FieldElement(f, r);
}

inline std::optional<std::size_t> vertex(const pvosc::VertexSpace& space, int qv, const FieldElement& y) {
  return space.index_of(qv, y);
}

// Start set as (q, y) pairs, for set comparisons.
inline std::vector<std::pair<int, FieldElement>> start_pairs(const pvosc::VertexSpace& space,
                                                            const pvosc::StartSet& set) {
  std::vector<std::pair<int, FieldElement>> out;
  for (const auto& sv : set.elements) out.emplace_back(space.q_of(sv.index), space.y_of(sv.index));
  return out;
}

inline bool same_set(std::vector<std::pair<int, FieldElement>> a, std::vector<std::pair<int, FieldElement>> b) {
  if (a.size() != b.size()) return false;
  for (const auto& x : a) {
    bool found = false;
    for (const auto& y : b) found = found || (x.first == y.first && x.second == y.second);
    if (!found) return false;
  }
  return true;
}

// Randomized small instances: lambda in {1/2, 1/3, 1/5, sqrt2-1, 1/phi},
// m in 2..4, p_i in 1..2 (or all 1), b_i = k/den with den in {1,2}, |b_i| <= 6.
struct RandomInstance {
  std::vector<long> minpoly;
  std::vector<int> p;
  std::vector<Rational> b;
  std::string describe() const;
};

inline std::string RandomInstance::describe() const {
  std::string s = "minpoly=[";
  for (std::size_t i = 0; i < minpoly.size(); ++i) s += (i ? "," : "") + std::to_string(minpoly[i]);
  s += "] p=[";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  s += "] b=[";
  for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + b[i].get_str();
  return s + "]";
}

inline RandomInstance random_instance(std::mt19937_64& rng, bool t1_only) {
  static const std::vector<std::vector<long>> polys = {{-2, 1}, {-3, 1}, {-5, 1}, {-1, -2, 1}, {-1, -1, 1}};
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  RandomInstance r;
  r.minpoly = polys[static_cast<std::size_t>(pick(0, 4))];
  const int m = pick(2, 4);
  const int den = pick(1, 2);
  for (int i = 0; i < m; ++i) {
    r.p.push_back(t1_only ? 1 : pick(1, 2));
    Rational b(pick(-6 * den, 6 * den), den);
    b.canonicalize();
    r.b.push_back(b);
  }
  return r;
}

inline IFSSpec to_spec(const RandomInstance& r) {
  std::vector<pvosc::Integer> coeffs;
  for (long c : r.minpoly) coeffs.emplace_back(c);
  return pvosc::make_ifs(pvosc::pisot_from_minpoly(pvosc::IntPolynomial(coeffs)), r.p, r.b);
}

}  // namespace fx
