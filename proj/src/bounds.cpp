#include "qsearch/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include <boost/multiprecision/cpp_int.hpp>

#include "qsearch/error.hpp"
#include "qsearch/field.hpp"

namespace qsearch {
namespace {

using Rational = boost::multiprecision::cpp_rational;

void check_q(unsigned q) {
  unsigned p = 0, e = 0;
  if (!prime_power(q, p, e)) {
    throw Error(ErrorCode::kNotAPrimePower, std::to_string(q) + " is not a prime power");
  }
}

void check_n(int n) {
  if (n < 2) throw Error(ErrorCode::kPrecondition, "n must be at least 2");
}

std::string rational_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

BoundValue exact_value(std::string tag, const Rational& r) {
  return BoundValue{std::move(tag), r.convert_to<double>(), rational_string(r)};
}

BoundValue real_value(std::string tag, double v) { return BoundValue{std::move(tag), v, {}}; }

std::optional<unsigned> exact_sqrt(unsigned q) {
  auto r = static_cast<unsigned>(std::lround(std::sqrt(static_cast<double>(q))));
  if (r * r == q) return r;
  return std::nullopt;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

double log2_big(const BigInt& x) {
  if (x <= 0) throw Error(ErrorCode::kPrecondition, "log2 of a non-positive integer");
  const unsigned bits = msb(x);
  if (bits < 60) return std::log2(x.convert_to<double>());
  const unsigned shift = bits - 60;
  const BigInt top = x >> shift;
  return std::log2(top.convert_to<double>()) + shift;
}

AdaptiveBounds adaptive_bounds(int n, unsigned q) {
  check_n(n);
  check_q(q);
  AdaptiveBounds b;
  b.points = gaussian_binomial(n, 1, q);
  const double lg = log2_big(b.points);
  b.lower = real_value("adaptive-log-lower", lg);
  // Exact ceiling: the smallest c with 2^c >= points.
  std::uint64_t c = 0;
  BigInt pow2 = 1;
  while (pow2 < b.points) {
    pow2 <<= 1;
    ++c;
  }
  b.lower_ceil = c;
  b.upper = exact_value("adaptive-dimension-reduction-upper",
                        Rational(BigInt(q - 1) * (n - 1) + 1));
  return b;
}

BoundedQueryBound bounded_query_lower(int n, unsigned q) {
  check_n(n);
  check_q(q);
  BoundedQueryBound k;
  k.big_m = gaussian_binomial(n, 1, q);
  k.small_m = gaussian_binomial(n - 1, 1, q);
  const double lg_ratio = log2_big(k.big_m) - log2_big(k.small_m);
  const double ratio = std::exp2(lg_ratio);
  const double full =
      log2_big(k.big_m) / (std::log2(std::numbers::e) + lg_ratio) * ratio;
  k.full = real_value("bounded-query-lower", full);
  // (q^n - 1)/(q^(n-1) - 1) equals M/m.
  const double simplified =
      (n - 1) * static_cast<double>(q) * std::log2(static_cast<double>(q)) / (2.0 + lg_ratio);
  k.simplified = real_value("bounded-query-lower-simplified", simplified);
  return k;
}

NonadaptiveBounds nonadaptive_bounds(int n, unsigned q) {
  NonadaptiveBounds b;
  b.bounded_query = bounded_query_lower(n, q);
  const BigInt pairs = BigInt(n) * (n - 1) / 2;
  const Rational expl = Rational(BigInt(n) + pairs * (q - 2));
  const Rational rand = Rational(BigInt(2) * n * q);
  b.upper_explicit = exact_value("explicit-construction-upper", expl);
  b.upper_random = exact_value("random-construction-upper", rand);
  b.headline_upper = expl <= rand ? b.upper_explicit : b.upper_random;
  return b;
}

PlaneSpecials plane_specials(unsigned q) {
  check_q(q);
  unsigned p = 0, e = 0;
  prime_power(q, p, e);
  const auto root = exact_sqrt(q);
  PlaneSpecials s;

  s.tau2_lowers.push_back(exact_value("tau2-trivial-lower", Rational(2 * (q + 1))));
  if (q >= 9) {
    if (root) {
      s.tau2_lowers.push_back(exact_value("tau2-square-root-lower", Rational(2 * (q + *root + 1))));
    } else {
      s.tau2_lowers.push_back(
          real_value("tau2-square-root-lower", 2.0 * (q + std::sqrt(static_cast<double>(q)) + 1.0)));
    }
  }
  if (e == 1 && q > 3) {
    s.tau2_lowers.push_back(exact_value("tau2-prime-lower", Rational(5 * (q + 1), 2)));
  }
  if (e >= 3 && e % 2 == 1) {
    const double c = (p == 2 || p == 3) ? std::cbrt(0.5) : 1.0;
    s.tau2_lowers.push_back(real_value(
        "tau2-odd-power-lower", 2.0 * (q + 1) + c * std::cbrt(static_cast<double>(q) * q)));
  }
  s.tau2_best = *std::max_element(
      s.tau2_lowers.begin(), s.tau2_lowers.end(),
      [](const BoundValue& a, const BoundValue& b) { return a.value < b.value; });

  if (q >= 3) {
    const Rational first = Rational(2 * q) + Rational(q, 4) - 3;
    if (s.tau2_best.exact) {
      const Rational second = Rational(s.tau2_best.exact->c_str()) - 2;
      s.semi_resolving_lower = exact_value("semi-resolving-lower", std::min(first, second));
    } else {
      const double second = s.tau2_best.value - 2.0;
      s.semi_resolving_lower = first.convert_to<double>() <= second
                                   ? exact_value("semi-resolving-lower", first)
                                   : real_value("semi-resolving-lower", second);
    }
  }

  if (root && q >= 121) {
    s.exact_m3q = exact_value("square-order-exact", Rational(2 * q + 2 * *root));
  }

  if (p % 2 == 1) {
    for (unsigned d = 3; d <= e; d += 2) {
      if (e % d != 0) continue;
      unsigned r = 1;
      for (unsigned i = 0; i < e / d; ++i) r *= p;
      const Rational upper = Rational(2 * q) + Rational(2 * (q - 1), r - 1);
      s.tau2_upper = exact_value("tau2-odd-power-upper", upper);
      s.m3q_upper = exact_value("separating-from-tau2-upper", upper - 1);
      break;
    }
  }
  return s;
}

BoundsReport bounds_report(int n, unsigned q) {
  BoundsReport r;
  r.n = n;
  r.q = q;
  r.adaptive = adaptive_bounds(n, q);
  r.nonadaptive = nonadaptive_bounds(n, q);
  if (n == 3) r.plane = plane_specials(q);
  return r;
}

const std::vector<std::string>& bounds_csv_header() {
  static const std::vector<std::string> header = {
      "n",
      "q",
      "points",
      "adaptive_lower",
      "adaptive_lower_ceil",
      "adaptive_upper",
      "bounded_query_lower",
      "bounded_query_lower_simplified",
      "nonadaptive_upper_explicit",
      "nonadaptive_upper_random",
      "nonadaptive_upper",
      "tau2_lower",
      "tau2_lower_tag",
      "semi_resolving_lower",
      "exact_m3q",
      "tau2_upper",
      "m3q_upper",
  };
  return header;
}

std::string bounds_csv_row(const BoundsReport& r) {
  auto num = [](const BoundValue& v) { return v.exact ? *v.exact : format_double(v.value); };
  auto opt = [&](const std::optional<BoundValue>& v) { return v ? num(*v) : std::string(); };
  std::vector<std::string> cells = {
      std::to_string(r.n),
      std::to_string(r.q),
      r.adaptive.points.str(),
      format_double(r.adaptive.lower.value),
      std::to_string(r.adaptive.lower_ceil),
      num(r.adaptive.upper),
      format_double(r.nonadaptive.bounded_query.full.value),
      format_double(r.nonadaptive.bounded_query.simplified.value),
      num(r.nonadaptive.upper_explicit),
      num(r.nonadaptive.upper_random),
      num(r.nonadaptive.headline_upper),
  };
  if (r.plane) {
    cells.push_back(num(r.plane->tau2_best));
    cells.push_back(r.plane->tau2_best.tag);
    cells.push_back(opt(r.plane->semi_resolving_lower));
    cells.push_back(opt(r.plane->exact_m3q));
    cells.push_back(opt(r.plane->tau2_upper));
    cells.push_back(opt(r.plane->m3q_upper));
  } else {
    cells.insert(cells.end(), 6, std::string());
  }
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  return out;
}

}  // namespace qsearch
