#include "pvosc/algebraic.hpp"

#include "detail/qpoly.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <complex>
#include <numeric>

namespace pvosc {

namespace {

struct Complex {
  Rational re;
  Rational im;
};

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
Complex operator*(const Complex& a, const Complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Rational norm2(const Complex& a) { return a.re * a.re + a.im * a.im; }
Complex divide(const Complex& a, const Complex& b) {
  const Rational n = norm2(b);
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

Complex horner(const IntPolynomial& g, const Complex& z) {
  Complex acc{Rational(0), Rational(0)};
  for (std::size_t i = g.coefficients().size(); i-- > 0;) {
    acc = acc * z;
    acc.re += Rational(g[i]);
  }
  return acc;
}

Integer pow2(int bits) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(bits));
  return p;
}

// Round to the nearest multiple of 2^-bits, symmetric under x -> -x so that
// conjugate pairs stay exact conjugates.
Rational round_dyadic(const Rational& x, int bits) {
  const Integer scale = pow2(bits);
  Rational y = abs(x) * scale + Rational(1, 2);
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
  if (x < 0) f = -f;
  Rational r(f, scale);
  r.canonicalize();
  return r;
}

Rational floor_dyadic(const Rational& x, int bits) {
  const Integer scale = pow2(bits);
  Rational y = x * scale;
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
  Rational r(f, scale);
  r.canonicalize();
  return r;
}

int sign_changes(const std::vector<int>& signs) {
  int count = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

// Number of distinct real roots of a squarefree polynomial (Sturm).
int count_real_roots(const detail::QPoly& p) {
  std::vector<detail::QPoly> chain{p, detail::derivative(p)};
  while (chain.back().size() > 1) {
    auto rem = detail::divmod(chain[chain.size() - 2], chain.back()).second;
    if (rem.empty()) break;
    for (auto& c : rem) c = -c;
    chain.push_back(std::move(rem));
  }
  std::vector<int> at_neg, at_pos;
  for (const auto& q : chain) {
    const int lead = sgn(q.back());
    at_pos.push_back(lead);
    at_neg.push_back((q.size() - 1) % 2 == 0 ? lead : -lead);
  }
  return sign_changes(at_neg) - sign_changes(at_pos);
}

// Double-precision starting points from the companion matrix, made exactly
// conjugation-symmetric using the known number of real roots.
std::vector<Complex> initial_roots(const IntPolynomial& g, int real_roots) {
  const int k = g.degree();
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(k, k);
  for (int i = 1; i < k; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < k; ++i) companion(i, k - 1) = -g[static_cast<std::size_t>(i)].get_d();
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  std::vector<std::complex<double>> ev(solver.eigenvalues().begin(), solver.eigenvalues().end());

  std::sort(ev.begin(), ev.end(), [](auto a, auto b) { return std::abs(a.imag()) < std::abs(b.imag()); });
  std::vector<Complex> out;
  for (int i = 0; i < real_roots; ++i) out.push_back({Rational(ev[i].real()), Rational(0)});
  std::vector<std::complex<double>> rest(ev.begin() + real_roots, ev.end());
  std::sort(rest.begin(), rest.end(), [](auto a, auto b) {
    return a.real() != b.real() ? a.real() < b.real() : std::abs(a.imag()) < std::abs(b.imag());
  });
  for (std::size_t i = 0; i + 1 < rest.size(); i += 2) {
    const double re = 0.5 * (rest[i].real() + rest[i + 1].real());
    double im = 0.5 * (std::abs(rest[i].imag()) + std::abs(rest[i + 1].imag()));
    if (im == 0.0) im = 1e-6;
    out.push_back({Rational(re), Rational(im)});
    out.push_back({Rational(re), Rational(-im)});
  }
  return out;
}

// Weierstrass corrections W_i = g(z_i) / prod_{j != i} (z_i - z_j). Returns
// false if two approximations coincide.
bool corrections(const IntPolynomial& g, const std::vector<Complex>& z, std::vector<Complex>& w) {
  w.resize(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    Complex den{Rational(1), Rational(0)};
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (j != i) den = den * (z[i] - z[j]);
    }
    if (norm2(den) == 0) return false;
    w[i] = divide(horner(g, z[i]), den);
  }
  return true;
}

struct Disc {
  Complex center;
  Rational radius;
};

enum class Outcome { Certified, Retry, NotPisot };

struct Certificate {
  std::size_t dominant = 0;
  std::vector<Disc> discs;
};

// Gerschgorin discs of the Weierstrass matrix diag(z) - W 1^T each hold
// exactly one root when they are pairwise disjoint.
Outcome certify(const IntPolynomial& g, const std::vector<Complex>& z, int bits, Certificate& cert) {
  std::vector<Complex> w;
  if (!corrections(g, z, w)) return Outcome::Retry;
  const std::size_t n = z.size();
  const Rational spread(static_cast<long>(n - 1));
  cert.discs.clear();
  for (std::size_t i = 0; i < n; ++i)
    cert.discs.push_back({z[i] - w[i], spread * sqrt_upper(norm2(w[i]), bits + 8)});

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Rational reach = cert.discs[i].radius + cert.discs[j].radius;
      if (norm2(cert.discs[i].center - cert.discs[j].center) <= reach * reach) return Outcome::Retry;
    }
  }

  int outside = 0;
  bool ambiguous = false;
  for (std::size_t i = 0; i < n; ++i) {
    const Disc& d = cert.discs[i];
    const Rational c2 = norm2(d.center);
    const Rational upper = sqrt_upper(c2, bits + 8) + d.radius;
    const Rational lower = sqrt_lower(c2, bits + 8) - d.radius;
    if (lower >= 1) {
      ++outside;
      cert.dominant = i;
    } else if (upper >= 1) {
      ambiguous = true;
    } else if (d.radius * d.radius * Rational(pow2(64)) > c2 && c2 > 0) {
      ambiguous = true;  // inside, but too coarse to be useful
    }
  }
  if (outside > 1) return Outcome::NotPisot;
  if (ambiguous || outside == 0) return outside == 0 && !ambiguous ? Outcome::NotPisot : Outcome::Retry;

  const Disc& d = cert.discs[cert.dominant];
  if (d.center.im != 0) return Outcome::NotPisot;  // its conjugate would also be outside
  if (d.center.re < 0) return Outcome::NotPisot;
  if (d.center.re - d.radius <= 1) return Outcome::Retry;
  return Outcome::Certified;
}

void bisect_once(const IntPolynomial& g, RealInterval& iv, int lo_sign) {
  const Rational width = iv.width();
  // 2^-b <= width / 4, so the rounded midpoint stays strictly inside
  const int b = static_cast<int>(mpz_sizeinbase(width.get_den_mpz_t(), 2)) -
                static_cast<int>(mpz_sizeinbase(width.get_num_mpz_t(), 2)) + 3;
  const Rational mid = floor_dyadic((iv.lo + iv.hi) / 2, b);
  const int s = sgn(g(mid));
  if (s == 0) {
    iv = {mid, mid};
  } else if (s == lo_sign) {
    iv.lo = mid;
  } else {
    iv.hi = mid;
  }
}

RealInterval refine(const IntPolynomial& g, RealInterval iv, int bits) {
  if (iv.width() == 0) return iv;
  const int lo_sign = sgn(g(iv.lo));
  const Rational target(Integer(1), pow2(bits));
  while (iv.width() > target) bisect_once(g, iv, lo_sign);
  return iv;
}

std::vector<Rational> endpoint_powers(const Rational& x, int n) {
  std::vector<Rational> out;
  Rational acc = 1;
  for (int i = 0; i < n; ++i) {
    out.push_back(acc);
    acc *= x;
  }
  return out;
}

}  // namespace

std::shared_ptr<const PisotNumber> PisotNumber::from_minpoly(const IntPolynomial& poly) {
  if (poly.is_zero() || poly.degree() < 1) throw Error(ErrorKind::InvalidInput, "polynomial must have degree >= 1");
  if (!poly.is_monic()) throw Error(ErrorKind::NotMonic, to_string(poly) + " is not monic");

  // A monic factor whose roots all lie in the open unit disc has constant
  // term of modulus < 1, hence 0; such factors are powers of x. Drop them.
  std::size_t shift = 0;
  while (poly[shift] == 0) ++shift;
  IntPolynomial g(std::vector<Integer>(poly.coefficients().begin() + static_cast<long>(shift), poly.coefficients().end()));
  if (g.degree() < 1) throw Error(ErrorKind::NotPisot, to_string(poly) + " has no root of modulus > 1");

  std::shared_ptr<PisotNumber> out(new PisotNumber());
  out->minpoly_ = g;
  out->rho_ = 0;

  if (g.degree() == 1) {
    const Rational eta(-g[0]);
    if (eta < 2) throw Error(ErrorKind::NotPisot, to_string(poly) + ": integer root must be at least 2");
    out->root_ = {eta, eta};
    out->lo_powers_ = {Rational(1)};
    out->hi_powers_ = {Rational(1)};
    return out;
  }

  const detail::QPoly q = detail::to_qpoly(g);
  if (detail::gcd(q, detail::derivative(q)).size() > 1)
    throw Error(ErrorKind::NotPisot, to_string(poly) + " has repeated roots, so it is not a minimal polynomial");
  // A root on the unit circle would keep the certification below ambiguous
  // forever. Such a root z gives 1/z = conj(z) as another root, so g shares a
  // factor with its reversal. In degree two that also happens for units like
  // x^2 - 3x + 1, which are fine, so there we look at the discriminant instead.
  if (g.degree() == 2) {
    const Integer disc = g[1] * g[1] - 4 * g[0];
    if (disc <= 0) throw Error(ErrorKind::NotPisot, to_string(poly) + " has no real root");
    if (mpz_perfect_square_p(disc.get_mpz_t()) != 0)
      throw Error(ErrorKind::NotPisot, to_string(poly) + " is reducible");
  } else {
    detail::QPoly rev(q.rbegin(), q.rend());
    if (detail::gcd(q, rev).size() > 1)
      throw Error(ErrorKind::NotPisot, to_string(poly) + " has a pair of roots z, 1/z");
  }
  const int real_roots = count_real_roots(q);

  std::vector<Complex> z = initial_roots(g, real_roots);
  Certificate cert;
  bool done = false;
  int bits = 64;
  for (; bits <= 1024 && !done; bits *= 2) {
    for (int iter = 0; iter < 6; ++iter) {
      std::vector<Complex> w;
      if (!corrections(g, z, w)) {
        for (std::size_t i = 0; i < z.size(); ++i) z[i].re += Rational(static_cast<long>(i + 1), 1000);
        continue;
      }
      for (std::size_t i = 0; i < z.size(); ++i) {
        z[i] = z[i] - w[i];
        z[i].re = round_dyadic(z[i].re, bits);
        z[i].im = round_dyadic(z[i].im, bits);
      }
    }
    switch (certify(g, z, bits, cert)) {
      case Outcome::Certified: done = true; break;
      case Outcome::NotPisot:
        throw Error(ErrorKind::NotPisot, to_string(poly) + " is not the minimal polynomial of a Pisot number");
      case Outcome::Retry: break;
    }
  }
  if (!done) throw Error(ErrorKind::CertificationFailed, "could not isolate the roots of " + to_string(poly));

  for (std::size_t i = 0; i < cert.discs.size(); ++i) {
    if (i == cert.dominant) continue;
    const Disc& d = cert.discs[i];
    const Rational upper = sqrt_upper(norm2(d.center), bits + 8) + d.radius;
    out->conjugates_.push_back({d.center.re, d.center.im, d.radius, upper});
    out->rho_ = std::max(out->rho_, upper);
  }
  const Disc& dom = cert.discs[cert.dominant];
  out->root_ = refine(g, {dom.center.re - dom.radius, dom.center.re + dom.radius}, 80);
  out->lo_powers_ = endpoint_powers(out->root_.lo, g.degree());
  out->hi_powers_ = endpoint_powers(out->root_.hi, g.degree());
  return out;
}

RealInterval PisotNumber::refine_root(int bits) const { return refine(minpoly_, root_, bits); }

double PisotNumber::approx() const { return Rational((root_.lo + root_.hi) / 2).get_d(); }

}  // namespace pvosc
