#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qsearch/field.hpp"

namespace qsearch {

using BigInt = boost::multiprecision::cpp_int;
using Vec = std::vector<Elem>;

/// Canonical representative of a 1-subspace: first nonzero coordinate is 1.
struct ProjPoint {
  Vec coords;

  std::size_t n() const { return coords.size(); }
  friend auto operator<=>(const ProjPoint&, const ProjPoint&) = default;
};

/// A k-dimensional subspace of GF(q)^n held as its reduced row echelon basis.
/// Equal subspaces have identical representations, so comparison is structural.
class Subspace {
 public:
  Subspace() = default;

  int n() const { return n_; }
  int k() const { return k_; }
  /// Row-major k x n RREF basis.
  const Vec& basis() const { return basis_; }
  std::span<const Elem> row(int i) const {
    return {basis_.data() + static_cast<std::size_t>(i) * n_, static_cast<std::size_t>(n_)};
  }
  const std::vector<int>& pivots() const { return pivots_; }
  std::vector<Vec> rows() const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.basis_ == b.basis_;
  }
  /// Lexicographic on (n, k, flattened basis).
  friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b);

  std::size_t hash() const;

 private:
  friend Subspace rref_span(const Field&, int, std::span<const Vec>);
  friend Subspace from_rref_unchecked(int n, int k, Vec basis);

  int n_ = 0;
  int k_ = 0;
  Vec basis_;
  std::vector<int> pivots_;
};

/// Wraps an already-reduced basis without re-running elimination. The caller
/// guarantees `basis` is in RREF with exactly k nonzero rows.
Subspace from_rref_unchecked(int n, int k, Vec basis);

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const { return s.hash(); }
};

/// Throws ZeroVector for the zero vector.
ProjPoint normalize_point(const Field& f, const Vec& v);

/// Canonical subspace spanned by `rows` in GF(q)^n. An empty or all-zero row set gives k = 0.
Subspace rref_span(const Field& f, int n, std::span<const Vec> rows);
inline Subspace rref_span(const Field& f, int n, std::initializer_list<Vec> rows) {
  std::vector<Vec> v(rows);
  return rref_span(f, n, std::span<const Vec>(v));
}
Subspace zero_subspace(int n);
Subspace whole_space(const Field& f, int n);
Subspace span_of(const Field& f, const ProjPoint& a);
Subspace span_of(const Field& f, const ProjPoint& a, const ProjPoint& b);

/// Throws DimensionMismatch when the ambient dimensions differ.
bool contains(const Field& f, const Subspace& s, const Vec& v);
inline bool contains(const Field& f, const Subspace& s, const ProjPoint& p) {
  return contains(f, s, p.coords);
}
bool is_subspace_of(const Field& f, const Subspace& inner, const Subspace& outer);

Subspace sum(const Field& f, const Subspace& a, const Subspace& b);
Subspace intersect(const Field& f, const Subspace& a, const Subspace& b);

/// RREF basis of {h : h . v = 0 for all v in s} under the standard dot product.
Subspace annihilator(const Field& f, const Subspace& s);

Elem dot(const Field& f, std::span<const Elem> a, std::span<const Elem> b);

/// Calls fn for every canonical point of PG(n-1, q) in lexicographic order.
void for_each_point(const Field& f, int n, const std::function<void(const ProjPoint&)>& fn);
std::vector<ProjPoint> enumerate_points(const Field& f, int n);

/// Calls fn for every k-subspace of GF(q)^n, ordered by pivot set and then by
/// the free entries in counter order. Stops early when fn returns false.
void for_each_subspace(const Field& f, int n, int k, const std::function<bool(const Subspace&)>& fn);
std::vector<Subspace> enumerate_subspaces(const Field& f, int n, int k);

/// The q+1 hyperplanes through an (n-2)-subspace, sorted. Throws WrongDimension.
std::vector<Subspace> hyperplanes_through(const Field& f, const Subspace& u);

/// Number of k-subspaces of GF(q)^n; zero when k < 0 or k > n.
BigInt gaussian_binomial(int n, int k, unsigned q);

/// Literal form `q=3 n=4 k=2 basis=[[1,0,2,1],[0,1,1,0]]` (element indices).
std::string to_literal(const Field& f, const Subspace& s);

struct ParsedSubspace {
  Subspace subspace;
  unsigned q = 0;
  /// Set when the literal's basis was not already canonical.
  bool recanonicalized = false;
};
/// Throws ParseError on malformed input.
ParsedSubspace parse_literal(const Field& f, std::string_view text);
/// Reads only the q from a literal, so callers can construct the field first.
unsigned literal_q(std::string_view text);

std::string point_to_string(const ProjPoint& p);

}  // namespace qsearch
