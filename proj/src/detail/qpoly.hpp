#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "pvosc/algebraic.hpp"

// Dense polynomials over Q, lowest degree first. Internal helpers only.
namespace pvosc::detail {

using QPoly = std::vector<Rational>;

inline void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly to_qpoly(const IntPolynomial& g) {
  QPoly out;
  for (const auto& c : g.coefficients()) out.emplace_back(c);
  return out;
}

inline std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  trim(a);
  QPoly q;
  if (a.size() < b.size()) return {q, a};
  q.assign(a.size() - b.size() + 1, Rational(0));
  const Rational& lead = b.back();
  for (std::size_t shift = q.size(); shift-- > 0;) {
    const Rational factor = a[shift + b.size() - 1] / lead;
    q[shift] = factor;
    if (factor == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= factor * b[j];
  }
  trim(a);
  return {q, a};
}

inline QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

inline QPoly sub(const QPoly& a, const QPoly& b) {
  QPoly out(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

inline QPoly derivative(const QPoly& a) {
  QPoly out;
  for (std::size_t i = 1; i < a.size(); ++i) out.push_back(a[i] * Rational(static_cast<long>(i)));
  trim(out);
  return out;
}

inline QPoly gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace pvosc::detail
