#include "qsearch/field.hpp"

#include <string>

namespace qsearch {
namespace {

using Poly = std::vector<unsigned>;  // coefficients over GF(p), constant term first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a monic polynomial b.
Poly poly_mod(Poly a, const Poly& b, unsigned p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const unsigned lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = (a[shift + i] + (p - lead) * b[i]) % p;
    }
    trim(a);
  }
  return a;
}

bool irreducible(const Poly& f, unsigned p) {
  const unsigned deg = static_cast<unsigned>(f.size() - 1);
  // Every monic divisor candidate of degree d in [1, deg/2].
  for (unsigned d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly g(d + 1, 0);
      std::uint64_t c = code;
      for (unsigned i = 0; i < d; ++i) {
        g[i] = static_cast<unsigned>(c % p);
        c /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

Poly to_digits(unsigned idx, unsigned p, unsigned e) {
  Poly d(e, 0);
  for (unsigned i = 0; i < e; ++i) {
    d[i] = idx % p;
    idx /= p;
  }
  return d;
}

unsigned from_digits(const Poly& d, unsigned p) {
  unsigned idx = 0;
  for (std::size_t i = d.size(); i-- > 0;) idx = idx * p + d[i];
  return idx;
}

Poly mul_mod(const Poly& a, const Poly& b, const Poly& modulus, unsigned p) {
  Poly r(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  Poly m = poly_mod(std::move(r), modulus, p);
  m.resize(modulus.size() - 1, 0);
  return m;
}

}  // namespace

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool prime_power(unsigned q, unsigned& p, unsigned& e) {
  if (q < 2) return false;
  unsigned d = 2;
  while (q % d != 0) ++d;
  unsigned rest = q;
  unsigned k = 0;
  while (rest % d == 0) {
    rest /= d;
    ++k;
  }
  if (rest != 1) return false;
  p = d;
  e = k;
  return true;
}

Field Field::construct(unsigned q, unsigned cap) {
  unsigned p = 0;
  unsigned e = 0;
  if (!prime_power(q, p, e)) throw Error(ErrorCode::kNotAPrimePower, "q=" + std::to_string(q));
  if (q > cap) {
    throw Error(ErrorCode::kFieldTooLarge,
                "q=" + std::to_string(q) + " exceeds cap " + std::to_string(cap));
  }

  Field f;
  f.p_ = p;
  f.e_ = e;
  f.q_ = q;

  // Lexicographically smallest monic irreducible, constant coefficient most significant.
  if (e == 1) {
    f.modulus_ = {0, 1};
  } else {
    for (unsigned code = 0; code < q; ++code) {
      Poly cand(e + 1, 0);
      unsigned c = code;
      for (unsigned i = e; i-- > 0;) {
        cand[i] = c % p;
        c /= p;
      }
      cand[e] = 1;
      if (irreducible(cand, p)) {
        f.modulus_ = cand;
        break;
      }
    }
    if (f.modulus_.empty()) throw Error(ErrorCode::kInternalInconsistency, "no irreducible modulus");
  }

  f.neg_.resize(q);
  if (e == 1) {
    for (unsigned a = 0; a < q; ++a) f.neg_[a] = static_cast<std::uint16_t>((p - a) % p);
  } else {
    for (unsigned a = 0; a < q; ++a) {
      Poly d = to_digits(a, p, e);
      for (auto& c : d) c = (p - c) % p;
      f.neg_[a] = static_cast<std::uint16_t>(from_digits(d, p));
    }
    if (p != 2) {
      f.add_table_.resize(static_cast<std::size_t>(q) * q);
      for (unsigned a = 0; a < q; ++a) {
        const Poly da = to_digits(a, p, e);
        for (unsigned b = 0; b < q; ++b) {
          Poly db = to_digits(b, p, e);
          for (unsigned i = 0; i < e; ++i) db[i] = (db[i] + da[i]) % p;
          f.add_table_[static_cast<std::size_t>(a) * q + b] =
              static_cast<std::uint16_t>(from_digits(db, p));
        }
      }
    }
  }

  // Smallest-index primitive element; its powers give the antilog table.
  auto power_cycle = [&](unsigned g) {
    std::vector<std::uint16_t> cycle{1};
    if (e == 1) {
      unsigned x = g % p;
      while (x != 1) {
        cycle.push_back(static_cast<std::uint16_t>(x));
        x = (x * g) % p;
      }
    } else {
      const Poly dg = to_digits(g, p, e);
      Poly x = dg;
      while (from_digits(x, p) != 1) {
        cycle.push_back(static_cast<std::uint16_t>(from_digits(x, p)));
        x = mul_mod(x, dg, f.modulus_, p);
      }
    }
    return cycle;
  };
  std::vector<std::uint16_t> cycle;
  for (unsigned g = 1; g < q; ++g) {
    cycle = power_cycle(g);
    if (cycle.size() == q - 1) {
      f.generator_ = Elem{static_cast<std::uint16_t>(g)};
      break;
    }
  }
  if (cycle.size() != q - 1) throw Error(ErrorCode::kInternalInconsistency, "no generator");

  f.log_.assign(q, 0);
  f.exp_.resize(2 * static_cast<std::size_t>(q - 1));
  for (std::size_t i = 0; i < f.exp_.size(); ++i) f.exp_[i] = cycle[i % (q - 1)];
  for (unsigned i = 0; i < q - 1; ++i) f.log_[cycle[i]] = i;

  f.inv_.assign(q, 0);
  for (unsigned a = 1; a < q; ++a) {
    f.inv_[a] = f.exp_[(q - 1 - f.log_[a]) % (q - 1)];
  }
  return f;
}

std::shared_ptr<const Field> Field::make_shared(unsigned q, unsigned cap) {
  return std::make_shared<const Field>(construct(q, cap));
}

Elem Field::inv(Elem a) const {
  if (a.idx == 0) throw Error(ErrorCode::kDivisionByZero, "inverse of zero");
  return Elem{inv_[a.idx]};
}

Elem Field::pow(Elem a, std::uint64_t k) const {
  Elem result = one();
  Elem base = a;
  while (k > 0) {
    if (k & 1U) result = mul(result, base);
    base = mul(base, base);
    k >>= 1U;
  }
  return result;
}

unsigned Field::order(Elem a) const {
  if (a.idx == 0) throw Error(ErrorCode::kDivisionByZero, "order of zero");
  unsigned k = 1;
  Elem x = a;
  while (x != one()) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

}  // namespace qsearch
