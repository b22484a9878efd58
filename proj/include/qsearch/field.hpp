#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <vector>

#include "qsearch/error.hpp"

namespace qsearch {

/// An element of GF(q), stored as its index in [0, q). Index 0 is the additive
/// zero and 1 the multiplicative identity. For extension fields the index is the
/// base-p encoding of the polynomial representative (constant term lowest).
struct Elem {
  std::uint16_t idx = 0;

  constexpr Elem() = default;
  constexpr explicit Elem(std::uint16_t i) : idx(i) {}

  constexpr bool is_zero() const { return idx == 0; }
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

inline constexpr unsigned kDefaultFieldCap = 1024;

/// Immutable arithmetic context for GF(q), q = p^e.
///
/// Prime fields use direct modular arithmetic; extension fields multiply through
/// log/antilog tables built from a stored primitive element. The modulus of an
/// extension field is the smallest monic irreducible polynomial of degree e,
/// comparing coefficient sequences from the constant term upwards.
class Field {
 public:
  /// Throws NotAPrimePower for q < 2 or composite non-prime-power q, and
  /// FieldTooLarge when q exceeds `cap`.
  static Field construct(unsigned q, unsigned cap = kDefaultFieldCap);
  static std::shared_ptr<const Field> make_shared(unsigned q, unsigned cap = kDefaultFieldCap);

  unsigned p() const { return p_; }
  unsigned e() const { return e_; }
  unsigned q() const { return q_; }
  bool is_prime() const { return e_ == 1; }

  /// Modulus coefficients, constant term first, leading 1 included (size e+1).
  const std::vector<unsigned>& modulus() const { return modulus_; }
  Elem generator() const { return generator_; }

  Elem zero() const { return Elem{0}; }
  Elem one() const { return Elem{1}; }
  /// The k-th nonzero element in index order, k in [1, q-1].
  Elem nonzero(unsigned k) const { return Elem{static_cast<std::uint16_t>(k)}; }

  Elem add(Elem a, Elem b) const {
    if (e_ == 1) {
      unsigned s = a.idx + b.idx;
      return Elem{static_cast<std::uint16_t>(s >= p_ ? s - p_ : s)};
    }
    if (p_ == 2) return Elem{static_cast<std::uint16_t>(a.idx ^ b.idx)};
    return Elem{add_table_[static_cast<std::size_t>(a.idx) * q_ + b.idx]};
  }
  Elem neg(Elem a) const { return Elem{neg_[a.idx]}; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const {
    if (a.idx == 0 || b.idx == 0) return Elem{0};
    if (e_ == 1) return Elem{static_cast<std::uint16_t>((unsigned{a.idx} * b.idx) % p_)};
    return Elem{exp_[log_[a.idx] + log_[b.idx]]};
  }
  /// Throws DivisionByZero for a = 0.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t k) const;

  /// Multiplicative order of a nonzero element.
  unsigned order(Elem a) const;

  bool valid(Elem a) const { return a.idx < q_; }

 private:
  Field() = default;

  unsigned p_ = 0;
  unsigned e_ = 0;
  unsigned q_ = 0;
  std::vector<unsigned> modulus_;
  Elem generator_;
  std::vector<std::uint16_t> neg_;
  std::vector<std::uint16_t> inv_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint16_t> exp_;
  std::vector<std::uint16_t> add_table_;
};

/// Factors q as p^e. Returns false when q is not a prime power (or q < 2).
bool prime_power(unsigned q, unsigned& p, unsigned& e);
bool is_prime(unsigned n);

}  // namespace qsearch
