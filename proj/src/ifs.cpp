#include "pvosc/ifs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

namespace pvosc {

IFSSpec make_ifs(Field pisot, std::vector<int> p, std::vector<Rational> b) {
  if (!pisot) throw Error(ErrorKind::InvalidInput, "missing field");
  if (p.size() != b.size()) throw Error(ErrorKind::InvalidInput, "p and b have different lengths");
  if (p.empty()) throw Error(ErrorKind::InvalidInput, "need at least one map");
  for (int pi : p) {
    if (pi < 1) throw Error(ErrorKind::InvalidInput, "exponents must be positive integers");
  }
  for (auto& bi : b) bi.canonicalize();
  return IFSSpec{std::move(pisot), std::move(p), std::move(b)};
}

FieldElement lambda_power(const Field& field, int n) { return eta_power(field, -n); }

GroupElement identity(const Field& field) { return {0, FieldElement(field)}; }

GroupElement group_mul(const GroupElement& x, const GroupElement& y) {
  return {x.p + y.p, lambda_power(x.b.field(), x.p) * y.b + x.b};
}

GroupElement group_inv(const GroupElement& x) { return {-x.p, -(lambda_power(x.b.field(), -x.p) * x.b)}; }

GroupElement ScaledIFS::letter(std::size_t i) const {
  return {base.p[i], FieldElement(field(), Rational(b_int[i]))};
}

ScaledIFS scale_to_integers(const IFSSpec& spec) {
  ScaledIFS s{spec, Integer(1), {}, 1, {}, {}, Integer(0), Integer(0)};
  for (const auto& bi : spec.b) mpz_lcm(s.scale_a.get_mpz_t(), s.scale_a.get_mpz_t(), bi.get_den_mpz_t());
  for (const auto& bi : spec.b) {
    const Rational scaled = bi * s.scale_a;
    s.b_int.push_back(scaled.get_num());
    s.max_abs_b = std::max(s.max_abs_b, Integer(abs(scaled.get_num())));
  }
  s.T = *std::max_element(spec.p.begin(), spec.p.end());

  s.B = s.b_int;
  s.B.emplace_back(0);
  std::sort(s.B.begin(), s.B.end());
  s.B.erase(std::unique(s.B.begin(), s.B.end()), s.B.end());
  for (const auto& x : s.B) {
    for (const auto& y : s.B) s.BminusB.push_back(x - y);
  }
  std::sort(s.BminusB.begin(), s.BminusB.end());
  s.BminusB.erase(std::unique(s.BminusB.begin(), s.BminusB.end()), s.BminusB.end());
  s.max_abs_BminusB = s.B.back() - s.B.front();
  return s;
}

std::string to_string(const Word& word) {
  std::ostringstream out;
  for (std::size_t i = 0; i < word.size(); ++i) out << (i ? " " : "") << word[i] + 1;
  return out.str();
}

int weight(const ScaledIFS& s, const Word& word) {
  int w = 0;
  for (int letter : word) w += s.base.p[static_cast<std::size_t>(letter)];
  return w;
}

GroupElement word_element(const ScaledIFS& s, const Word& word) {
  GroupElement acc = identity(s.field());
  for (int letter : word) acc = group_mul(acc, s.letter(static_cast<std::size_t>(letter)));
  return acc;
}

namespace {

struct ElementKey {
  int p;
  FieldElement b;
  bool operator==(const ElementKey&) const = default;
};

struct ElementKeyHash {
  std::size_t operator()(const ElementKey& k) const noexcept {
    std::size_t seed = hash_value(k.b);
    hash_combine(seed, static_cast<std::size_t>(k.p));
    return seed;
  }
};

}  // namespace

ShortWordSet enumerate_short_words(const ScaledIFS& s) {
  const int max_weight = 2 * s.T - 1;
  ShortWordSet out;
  std::unordered_map<ElementKey, std::size_t, ElementKeyHash> seen;
  std::deque<std::pair<Word, GroupElement>> queue;
  queue.emplace_back(Word{}, identity(s.field()));
  while (!queue.empty()) {
    auto [word, element] = std::move(queue.front());
    queue.pop_front();
    for (std::size_t i = 0; i < s.m(); ++i) {
      if (element.p + s.base.p[i] > max_weight) continue;
      Word next = word;
      next.push_back(static_cast<int>(i));
      GroupElement g = group_mul(element, s.letter(i));
      if (seen.emplace(ElementKey{g.p, g.b}, out.elements.size()).second) out.elements.push_back({g, next});
      queue.emplace_back(std::move(next), std::move(g));
    }
  }
  return out;
}

std::optional<std::pair<std::size_t, std::size_t>> find_duplicate_maps(const IFSSpec& spec) {
  for (std::size_t i = 0; i < spec.m(); ++i) {
    for (std::size_t j = i + 1; j < spec.m(); ++j) {
      if (spec.p[i] == spec.p[j] && spec.b[i] == spec.b[j]) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

double similarity_dimension(const IFSSpec& spec, double tol) {
  // f(s) = sum lambda^{s p_i} is strictly decreasing from m at s = 0.
  const long double log_lambda = -std::log(static_cast<long double>(spec.pisot->approx()));
  auto f = [&](long double s) {
    long double acc = 0;
    for (int pi : spec.p) acc += std::exp(s * pi * log_lambda);
    return acc;
  };
  long double lo = 0, hi = 1;
  while (f(hi) > 1) hi *= 2;
  while (hi - lo > tol) {
    const long double mid = (lo + hi) / 2;
    (f(mid) > 1 ? lo : hi) = mid;
  }
  return static_cast<double>((lo + hi) / 2);
}

FieldElement ratio_sum(const IFSSpec& spec) {
  FieldElement acc(spec.pisot);
  for (int pi : spec.p) acc += lambda_power(spec.pisot, pi);
  return acc;
}

}  // namespace pvosc
