#include "tpgabor/lattice.hpp"

#include <cctype>
#include <charconv>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "tpgabor/error.hpp"

namespace tpgabor {

namespace {

__extension__ using wide_int = __int128;

std::int64_t checked(wide_int v) {
  if (v > INT64_MAX || v < INT64_MIN) throw InvalidArgument("rational arithmetic overflow");
  return static_cast<std::int64_t>(v);
}

Rational make_reduced(wide_int n, wide_int d) {
  if (d == 0) throw InvalidArgument("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  wide_int a = n < 0 ? -n : n, b = d;
  while (b != 0) {
    const wide_int t = a % b;
    a = b;
    b = t;
  }
  if (a == 0) a = 1;
  return Rational(checked(n / a), checked(d / a));
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw InvalidArgument("cannot parse integer '" + std::string(s) + "'");
  return v;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw InvalidArgument("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n, d);
  num = g ? n / g : 0;
  den = g ? d / g : 1;
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Rational operator*(const Rational& a, const Rational& b) {
  return make_reduced(static_cast<wide_int>(a.num) * b.num, static_cast<wide_int>(a.den) * b.den);
}

Rational operator+(const Rational& a, const Rational& b) {
  return make_reduced(static_cast<wide_int>(a.num) * b.den + static_cast<wide_int>(b.num) * a.den,
                      static_cast<wide_int>(a.den) * b.den);
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<wide_int>(a.num) * b.den < static_cast<wide_int>(b.num) * a.den;
}

Rational Rational::approximate(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw InvalidArgument("cannot rationalize a non-finite value");
  if (max_den < 1) throw InvalidArgument("max_den must be >= 1");
  const bool neg = x < 0.0;
  double r = std::abs(x);
  // convergents h/k with the usual recurrence; stop before k exceeds max_den
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  for (int it = 0; it < 64; ++it) {
    const double a_d = std::floor(r);
    if (a_d > 1e18) break;
    const auto a = static_cast<std::int64_t>(a_d);
    const wide_int k2 = static_cast<wide_int>(a) * k1 + k0;
    if (k2 > max_den) {
      // best semiconvergent
      const std::int64_t t = (max_den - k0) / k1;
      const Rational semi(t * h1 + h0, t * k1 + k0), conv(h1, k1);
      const double ds = std::abs(semi.value() - std::abs(x)), dc = std::abs(conv.value() - std::abs(x));
      const Rational best = ds < dc ? semi : conv;
      return neg ? Rational(-best.num, best.den) : best;
    }
    const std::int64_t h2 = checked(static_cast<wide_int>(a) * h1 + h0);
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = static_cast<std::int64_t>(k2);
    const double frac = r - a_d;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  return Rational(neg ? -h1 : h1, k1);
}

Rational Rational::parse(std::string_view text, bool* approximated, std::int64_t max_den) {
  text = trim(text);
  if (approximated) *approximated = false;
  if (text.empty()) throw InvalidArgument("empty rational");
  if (const auto slash = text.find('/'); slash != std::string_view::npos)
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  if (text.find_first_of(".eE") == std::string_view::npos) return Rational(parse_int(text));

  if (approximated) *approximated = true;
  const std::string s(text);
  const auto dot = s.find('.');
  if (s.find_first_of("eE") == std::string::npos && dot != std::string::npos && s.size() - dot - 1 <= 17) {
    // exact decimal
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    if (digits.empty() || digits == "-" || digits == "+") throw InvalidArgument("cannot parse '" + s + "'");
    std::int64_t den = 1;
    for (std::size_t i = 0; i + dot + 1 < s.size(); ++i) den *= 10;
    const Rational exact(parse_int(digits), den);
    if (exact.den <= max_den) return exact;
    return approximate(exact.value(), max_den);
  }
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) throw InvalidArgument("cannot parse '" + s + "'");
  return approximate(v, max_den);
}

void RationalLattice::require_frame_candidate() const {
  if (!below_critical_density())
    throw InvalidArgument("lattice density alpha*beta = " + alpha().str() + " is not below 1");
}

RationalLattice reduce(const Rational& alpha, const Rational& beta) {
  if (alpha.num <= 0 || beta.num <= 0) throw InvalidArgument("alpha and beta must be positive");
  const Rational ab = alpha * beta;
  if (ab.num > INT_MAX || ab.den > INT_MAX) throw InvalidArgument("alpha*beta = " + ab.str() + " has too large terms");
  RationalLattice lat;
  lat.p = static_cast<int>(ab.num);
  lat.q = static_cast<int>(ab.den);
  lat.beta = Rational(1);
  lat.dilation = beta;
  return lat;
}

double PerturbationSeq::delta(long k) const {
  const long l = ((k % p) + p) % p;
  return deltas[static_cast<std::size_t>(l)];
}

double default_eps(const RationalLattice& lat) { return (1.0 - lat.alpha_value()) / 4.0; }

int choose_M(double x0) {
  const auto m1 = static_cast<int>(std::floor(0.5 - x0));
  const int m2 = m1 + 1;
  return std::abs(x0 + m2 - 0.5) < std::abs(x0 + m1 - 0.5) ? m2 : m1;
}

PerturbationSeq select_perturbation(const RationalLattice& lat, double x, double x0, double eps, int M) {
  lat.require_frame_candidate();
  const double alpha = lat.alpha_value();
  if (!(eps > 0.0)) throw InvalidArgument("select_perturbation: eps must be positive");
  if (!(eps < (1.0 - alpha) / 2.0))
    throw InvalidArgument("select_perturbation: eps = " + std::to_string(eps) + " must be below (1 - alpha)/2 = " +
                          std::to_string((1.0 - alpha) / 2.0));
  if (!std::isfinite(x) || !std::isfinite(x0)) throw InvalidArgument("select_perturbation: x and x0 must be finite");

  PerturbationSeq seq;
  seq.M = M;
  seq.eps = eps;
  seq.x = x;
  seq.x0 = x0;
  seq.p = lat.p;
  seq.q = lat.q;
  const double lo = seq.lo(), hi = seq.hi(), mid = 0.5 * (lo + hi);
  constexpr double kMember = 1e-12;

  for (int l = 0; l < lat.p; ++l) {
    const double a = l + lo, b = l + hi;
    const auto j_lo = static_cast<long>(std::ceil((a - x) / alpha - 1e-9));
    const auto j_hi = static_cast<long>(std::floor((b - x) / alpha + 1e-9));
    bool found = false;
    long best_j = 0;
    double best_delta = 0.0;
    for (long j = j_lo; j <= j_hi; ++j) {
      const double d = x + static_cast<double>(static_cast<long long>(lat.p) * j) / lat.q - l;
      if (d < lo - kMember || d > hi + kMember) continue;
      if (!found || std::abs(d - mid) < std::abs(best_delta - mid)) {
        found = true;
        best_j = j;
        best_delta = d;
      }
    }
    if (!found)
      throw NumericalFailure("select_perturbation: no lattice point in the admissible interval for l = " +
                             std::to_string(l));
    seq.js.push_back(best_j);
    seq.deltas.push_back(best_delta);
  }
  for (int l = 1; l < lat.p; ++l)
    if (!(seq.js[l - 1] < seq.js[l])) throw NumericalFailure("select_perturbation: lattice indices not increasing");
  if (!(seq.js.back() < seq.js.front() + lat.q))
    throw NumericalFailure("select_perturbation: lattice indices span more than one period");
  return seq;
}

}  // namespace tpgabor
