#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pvosc/error.hpp"

namespace pvosc {

using Integer = mpz_class;
using Rational = mpq_class;

/// Integer polynomial, coefficients stored lowest degree first.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Integer> coefficients);
  IntPolynomial(std::initializer_list<long> coefficients);

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back() == 1; }
  const std::vector<Integer>& coefficients() const noexcept { return coeffs_; }
  const Integer& operator[](std::size_t i) const { return coeffs_[i]; }

  Rational operator()(const Rational& x) const;

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

 private:
  std::vector<Integer> coeffs_;
};

std::string to_string(const IntPolynomial& poly);

/// Closed rational interval [lo, hi].
struct RealInterval {
  Rational lo;
  Rational hi;

  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains_zero() const { return lo <= 0 && 0 <= hi; }
  Rational width() const { return hi - lo; }
};

/// Certified disc {z : |z - center| <= radius} holding exactly one conjugate.
struct ConjugateEnclosure {
  Rational re;
  Rational im;
  Rational radius;
  Rational modulus_upper;  // |center| + radius, rounded up
};

/// A validated Pisot-Vijayaraghavan number eta > 1. The stored polynomial is
/// the minimal polynomial of eta (monic, irreducible over Q).
class PisotNumber {
 public:
  static std::shared_ptr<const PisotNumber> from_minpoly(const IntPolynomial& poly);

  const IntPolynomial& minpoly() const noexcept { return minpoly_; }
  int degree() const noexcept { return minpoly_.degree(); }

  /// Isolating interval for eta, width at most 2^-80.
  const RealInterval& root_interval() const noexcept { return root_; }

  /// rho < 1 with |eta_i| <= rho for every conjugate; 0 in degree one.
  const Rational& conjugate_moduli_bound() const noexcept { return rho_; }
  std::span<const ConjugateEnclosure> conjugates() const noexcept { return conjugates_; }

  /// Fresh isolating interval of width <= 2^-bits, computed from the cached
  /// one by bisection. Does not touch shared state.
  RealInterval refine_root(int bits) const;

  /// Powers lo^i, hi^i of the cached interval endpoints for i < degree.
  std::span<const Rational> lower_powers() const noexcept { return lo_powers_; }
  std::span<const Rational> upper_powers() const noexcept { return hi_powers_; }

  double approx() const;

 private:
  PisotNumber() = default;

  IntPolynomial minpoly_;
  RealInterval root_;
  Rational rho_;
  std::vector<ConjugateEnclosure> conjugates_;
  std::vector<Rational> lo_powers_;
  std::vector<Rational> hi_powers_;
};

using Field = std::shared_ptr<const PisotNumber>;

inline Field pisot_from_minpoly(const IntPolynomial& poly) { return PisotNumber::from_minpoly(poly); }

/// Element c0 + c1*eta + ... + c_{k-1}*eta^{k-1} of Q(eta), always reduced
/// modulo the minimal polynomial, so equality is coefficientwise.
class FieldElement {
 public:
  explicit FieldElement(Field field);
  FieldElement(Field field, std::vector<Rational> coefficients);
  FieldElement(Field field, const Rational& value);

  static FieldElement eta(Field field);

  const Field& field() const noexcept { return field_; }
  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
  const Rational& operator[](std::size_t i) const { return coeffs_[i]; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  bool is_zero() const;
  bool is_integral() const;  // all coefficients in Z, i.e. an element of Z[eta]

  FieldElement inverse() const;

  FieldElement& operator+=(const FieldElement& rhs);
  FieldElement& operator-=(const FieldElement& rhs);
  FieldElement& operator*=(const FieldElement& rhs);
  FieldElement& operator*=(const Rational& rhs);

  friend FieldElement operator+(FieldElement lhs, const FieldElement& rhs) { return lhs += rhs; }
  friend FieldElement operator-(FieldElement lhs, const FieldElement& rhs) { return lhs -= rhs; }
  friend FieldElement operator*(const FieldElement& lhs, const FieldElement& rhs);
  friend FieldElement operator*(FieldElement lhs, const Rational& rhs) { return lhs *= rhs; }
  friend FieldElement operator*(const Rational& lhs, FieldElement rhs) { return rhs *= lhs; }
  friend FieldElement operator/(const FieldElement& lhs, const FieldElement& rhs) { return lhs * rhs.inverse(); }
  FieldElement operator-() const;

  friend bool operator==(const FieldElement& lhs, const FieldElement& rhs);

 private:
  Field field_;
  std::vector<Rational> coeffs_;
};

/// eta^n; negative n goes through the inverse of eta.
FieldElement eta_power(const Field& field, int n);

/// Exact sign of the real embedding (eta -> the isolated root > 1).
int sign(const FieldElement& a);

/// Three-way comparison of real embeddings: -1, 0, +1.
int compare(const FieldElement& a, const FieldElement& b);

enum class AbsOrder { LessOrEqual, Greater };
enum class StrictAbsOrder { Less, GreaterOrEqual };

/// |a| <= bound ? Requires bound > 0.
AbsOrder compare_abs(const FieldElement& a, const FieldElement& bound);
/// |a| < bound ? Requires bound > 0.
StrictAbsOrder compare_abs_strict(const FieldElement& a, const FieldElement& bound);

/// Interval enclosure of a, using eta's isolating interval refined to `bits`.
RealInterval enclose(const FieldElement& a, int bits = 0);

double to_double(const FieldElement& a);

/// "c0 + c1*eta + ... + c{k-1}*eta^{k-1}", rationals as num/den.
std::string to_string(const FieldElement& a);
FieldElement parse_field_element(const Field& field, std::string_view text);

/// "n" or "n/d" with d != 0; throws InvalidInput otherwise.
Rational parse_rational(std::string_view text);

/// Lower bound for |L(eta)| over nonzero integer polynomials L with
/// coefficients bounded by `height` in absolute value.
Rational garsia_lower_bound(const PisotNumber& pisot, const Rational& height);

/// Rational upper / lower bounds on sqrt(x), x >= 0, with 2^-bits resolution.
Rational sqrt_upper(const Rational& x, int bits = 64);
Rational sqrt_lower(const Rational& x, int bits = 64);

std::size_t hash_value(const Integer& x) noexcept;
std::size_t hash_value(const FieldElement& a) noexcept;

inline void hash_combine(std::size_t& seed, std::size_t value) noexcept {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace pvosc

template <>
struct std::hash<pvosc::FieldElement> {
  std::size_t operator()(const pvosc::FieldElement& a) const noexcept { return pvosc::hash_value(a); }
};
