#include "pvosc/algebraic.hpp"

#include "detail/qpoly.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cmath>
#include <sstream>
#include <utility>

namespace pvosc {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotMonic: return "NotMonic";
    case ErrorKind::NotPisot: return "NotPisot";
    case ErrorKind::CertificationFailed: return "CertificationFailed";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::NonpositiveBound: return "NonpositiveBound";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::ReplayMismatch: return "ReplayMismatch";
    case ErrorKind::Disagreement: return "Disagreement";
  }
  return "Error";
}

// ---------------------------------------------------------------------------
// IntPolynomial

IntPolynomial::IntPolynomial(std::vector<Integer> coefficients) : coeffs_(std::move(coefficients)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPolynomial::IntPolynomial(std::initializer_list<long> coefficients) {
  for (long c : coefficients) coeffs_.emplace_back(c);
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational IntPolynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + Rational(*it);
  return acc;
}

std::string to_string(const IntPolynomial& poly) {
  if (poly.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = poly.degree(); i >= 0; --i) {
    const Integer& c = poly[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    Integer mag = abs(c);
    if (mag != 1 || i == 0) out << mag.get_str();
    if (i > 0) out << (mag != 1 ? "*x" : "x");
    if (i > 1) out << "^" << i;
    first = false;
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// FieldElement

namespace {

void require_same_field(const FieldElement& a, const FieldElement& b) {
  if (a.field() == b.field()) return;
  if (a.field() && b.field() && a.field()->minpoly() == b.field()->minpoly()) return;
  throw Error(ErrorKind::FieldMismatch, "operands live in different fields");
}

// Reduce a coefficient vector of arbitrary length modulo the monic minpoly.
void reduce_in_place(std::vector<Rational>& c, const IntPolynomial& g) {
  const std::size_t k = static_cast<std::size_t>(g.degree());
  for (std::size_t j = c.size(); j-- > k;) {
    if (c[j] == 0) continue;
    const Rational lead = c[j];
    // x^j = x^{j-k} * x^k and x^k = -sum_{i<k} g_i x^i
    for (std::size_t i = 0; i < k; ++i) {
      if (g[i] != 0) c[j - k + i] -= lead * Rational(g[i]);
    }
  }
  c.resize(k);
}

using detail::QPoly;
using detail::divmod;
using detail::mul;
using detail::sub;
using detail::trim;

// Interval evaluation of a over [lo, hi] given the powers of the endpoints.
RealInterval evaluate(const std::vector<Rational>& c, std::span<const Rational> lo_pow,
                      std::span<const Rational> hi_pow) {
  RealInterval out{Rational(0), Rational(0)};
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    if (c[i] > 0) {
      out.lo += c[i] * lo_pow[i];
      out.hi += c[i] * hi_pow[i];
    } else {
      out.lo += c[i] * hi_pow[i];
      out.hi += c[i] * lo_pow[i];
    }
  }
  return out;
}

std::vector<Rational> powers(const Rational& x, std::size_t n) {
  std::vector<Rational> out;
  out.reserve(n);
  Rational acc = 1;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(acc);
    acc *= x;
  }
  return out;
}

}  // namespace

FieldElement::FieldElement(Field field) : field_(std::move(field)) {
  coeffs_.assign(static_cast<std::size_t>(field_->degree()), Rational(0));
}

FieldElement::FieldElement(Field field, std::vector<Rational> coefficients)
    : field_(std::move(field)), coeffs_(std::move(coefficients)) {
  const std::size_t k = static_cast<std::size_t>(field_->degree());
  if (coeffs_.size() > k) reduce_in_place(coeffs_, field_->minpoly());
  coeffs_.resize(k, Rational(0));
}

FieldElement::FieldElement(Field field, const Rational& value) : FieldElement(std::move(field)) {
  coeffs_[0] = value;
}

FieldElement FieldElement::eta(Field field) {
  std::vector<Rational> c{Rational(0), Rational(1)};
  return FieldElement(std::move(field), std::move(c));
}

bool FieldElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

bool FieldElement::is_integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.get_den() == 1; });
}

FieldElement& FieldElement::operator+=(const FieldElement& rhs) {
  require_same_field(*this, rhs);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& rhs) {
  require_same_field(*this, rhs);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& rhs) {
  *this = *this * rhs;
  return *this;
}

FieldElement& FieldElement::operator*=(const Rational& rhs) {
  for (auto& c : coeffs_) c *= rhs;
  return *this;
}

FieldElement operator*(const FieldElement& lhs, const FieldElement& rhs) {
  require_same_field(lhs, rhs);
  const std::size_t k = lhs.coeffs_.size();
  if (k == 1) return FieldElement(lhs.field_, lhs.coeffs_[0] * rhs.coeffs_[0]);
  std::vector<Rational> prod(2 * k - 1, Rational(0));
  for (std::size_t i = 0; i < k; ++i) {
    if (lhs.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < k; ++j) {
      if (rhs.coeffs_[j] != 0) prod[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
    }
  }
  return FieldElement(lhs.field_, std::move(prod));
}

FieldElement FieldElement::operator-() const {
  FieldElement out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

bool operator==(const FieldElement& lhs, const FieldElement& rhs) {
  require_same_field(lhs, rhs);
  return lhs.coeffs_ == rhs.coeffs_;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  const IntPolynomial& g = field_->minpoly();
  if (coeffs_.size() == 1) return FieldElement(field_, Rational(1) / coeffs_[0]);

  // Extended Euclid: track s with s*a == r (mod g) until r is a constant.
  QPoly r0(g.coefficients().begin(), g.coefficients().end());
  QPoly r1 = coeffs_;
  trim(r1);
  QPoly s0, s1{Rational(1)};
  while (r1.size() > 1) {
    auto [q, r] = divmod(r0, r1);
    QPoly s = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  // g is irreducible, so the final remainder is a nonzero constant.
  const Rational c = r1.at(0);
  for (auto& x : s1) x /= c;
  return FieldElement(field_, std::move(s1));
}

FieldElement eta_power(const Field& field, int n) {
  FieldElement base = FieldElement::eta(field);
  if (n < 0) {
    base = base.inverse();
    n = -n;
  }
  FieldElement result(field, Rational(1));
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Sign determination

RealInterval enclose(const FieldElement& a, int bits) {
  const PisotNumber& pisot = *a.field();
  if (a.size() == 1) return {a[0], a[0]};
  if (bits <= 0) return evaluate(a.coefficients(), pisot.lower_powers(), pisot.upper_powers());
  const RealInterval root = pisot.refine_root(bits);
  const auto lo = powers(root.lo, a.size());
  const auto hi = powers(root.hi, a.size());
  return evaluate(a.coefficients(), lo, hi);
}

int sign(const FieldElement& a) {
  if (a.is_zero()) return 0;
  if (a.size() == 1) return sgn(a[0]);
  // a != 0 exactly, so refinement eventually separates it from zero.
  RealInterval iv = enclose(a);
  for (int bits = 160; iv.contains_zero(); bits *= 2) iv = enclose(a, bits);
  return iv.lo > 0 ? 1 : -1;
}

int compare(const FieldElement& a, const FieldElement& b) { return sign(a - b); }

AbsOrder compare_abs(const FieldElement& a, const FieldElement& bound) {
  if (sign(bound) <= 0) throw Error(ErrorKind::NonpositiveBound, "bound must be positive");
  const bool le = sign(bound - a) >= 0 && sign(bound + a) >= 0;
  return le ? AbsOrder::LessOrEqual : AbsOrder::Greater;
}

StrictAbsOrder compare_abs_strict(const FieldElement& a, const FieldElement& bound) {
  if (sign(bound) <= 0) throw Error(ErrorKind::NonpositiveBound, "bound must be positive");
  const bool lt = sign(bound - a) > 0 && sign(bound + a) > 0;
  return lt ? StrictAbsOrder::Less : StrictAbsOrder::GreaterOrEqual;
}

double to_double(const FieldElement& a) {
  const double eta = a.field()->approx();
  double acc = 0.0;
  for (std::size_t i = a.size(); i-- > 0;) acc = acc * eta + a[i].get_d();
  return acc;
}

// ---------------------------------------------------------------------------
// Text form

std::string to_string(const FieldElement& a) {
  std::ostringstream out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i > 0) out << " + ";
    out << a[i].get_str();
    if (i == 1) out << "*eta";
    if (i > 1) out << "*eta^" << i;
  }
  return out.str();
}

namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = strip(text);
  const auto slash = text.find('/');
  auto valid_int = [](std::string_view s, bool allow_sign) {
    if (!s.empty() && allow_sign && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
  };
  std::string num(text.substr(0, slash));
  std::string den = slash == std::string_view::npos ? "1" : std::string(text.substr(slash + 1));
  if (!valid_int(num, true) || !valid_int(den, false))
    throw Error(ErrorKind::InvalidInput, "malformed rational '" + std::string(text) + "'");
  if (num[0] == '+') num.erase(0, 1);
  Integer d(den);
  if (d == 0) throw Error(ErrorKind::InvalidInput, "zero denominator in '" + std::string(text) + "'");
  Rational r(Integer(num), d);
  r.canonicalize();
  return r;
}

FieldElement parse_field_element(const Field& field, std::string_view text) {
  std::vector<Rational> coeffs;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t plus = text.find('+', start);
    // a '+' directly after '/' or at the start of a number would be a sign; the
    // canonical form never emits those, so split on every '+'.
    std::string_view term = strip(text.substr(start, plus == std::string_view::npos ? std::string_view::npos : plus - start));
    if (term.empty()) throw Error(ErrorKind::InvalidInput, "empty term in '" + std::string(text) + "'");
    std::size_t power = 0;
    Rational coeff = 1;
    const auto star = term.find("eta");
    if (star == std::string_view::npos) {
      coeff = parse_rational(term);
    } else {
      std::string_view head = strip(term.substr(0, star));
      if (!head.empty()) {
        if (head.back() != '*') throw Error(ErrorKind::InvalidInput, "expected '*' before eta");
        head.remove_suffix(1);
        coeff = parse_rational(head);
      }
      std::string_view tail = strip(term.substr(star + 3));
      power = 1;
      if (!tail.empty()) {
        if (tail.front() != '^') throw Error(ErrorKind::InvalidInput, "expected '^' after eta");
        tail = strip(tail.substr(1));
        if (!tail.empty() && tail.front() == '{' && tail.back() == '}') tail = tail.substr(1, tail.size() - 2);
        const auto [end, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), power);
        if (ec != std::errc() || end != tail.data() + tail.size() || power > 64)
          throw Error(ErrorKind::InvalidInput, "bad exponent in '" + std::string(text) + "'");
      }
    }
    if (coeffs.size() <= power) coeffs.resize(power + 1, Rational(0));
    coeffs[power] += coeff;
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  return FieldElement(field, std::move(coeffs));
}

// ---------------------------------------------------------------------------
// Separation bound and helpers

Rational garsia_lower_bound(const PisotNumber& pisot, const Rational& height) {
  if (height < 1) throw Error(ErrorKind::InvalidInput, "height must be at least 1");
  Rational bound = 1;
  for (const auto& conj : pisot.conjugates()) bound *= Rational(1) - conj.modulus_upper;
  for (std::size_t i = 0; i < pisot.conjugates().size(); ++i) bound /= height;
  return bound;
}

Rational sqrt_upper(const Rational& x, int bits) {
  if (x < 0) throw Error(ErrorKind::InvalidInput, "sqrt of a negative number");
  Integer scaled;
  mpz_mul_2exp(scaled.get_mpz_t(), x.get_num_mpz_t(), static_cast<mp_bitcnt_t>(2 * bits));
  mpz_fdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), x.get_den_mpz_t());
  Integer s;
  mpz_sqrt(s.get_mpz_t(), scaled.get_mpz_t());
  s += 1;
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(bits));
  Rational r(s, den);
  r.canonicalize();
  return r;
}

Rational sqrt_lower(const Rational& x, int bits) {
  if (x < 0) throw Error(ErrorKind::InvalidInput, "sqrt of a negative number");
  Integer scaled;
  mpz_mul_2exp(scaled.get_mpz_t(), x.get_num_mpz_t(), static_cast<mp_bitcnt_t>(2 * bits));
  mpz_fdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), x.get_den_mpz_t());
  Integer s;
  mpz_sqrt(s.get_mpz_t(), scaled.get_mpz_t());
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(bits));
  Rational r(s, den);
  r.canonicalize();
  return r;
}

std::size_t hash_value(const Integer& x) noexcept {
  const mpz_srcptr z = x.get_mpz_t();
  std::size_t seed = static_cast<std::size_t>(z->_mp_size);
  const int limbs = std::abs(z->_mp_size);
  for (int i = 0; i < limbs; ++i) hash_combine(seed, static_cast<std::size_t>(z->_mp_d[i]));
  return seed;
}

std::size_t hash_value(const FieldElement& a) noexcept {
  std::size_t seed = a.size();
  for (const auto& c : a.coefficients()) {
    hash_combine(seed, hash_value(c.get_num()));
    hash_combine(seed, hash_value(c.get_den()));
  }
  return seed;
}

}  // namespace pvosc
