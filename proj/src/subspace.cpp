#include "qsearch/subspace.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace qsearch {

Subspace from_rref_unchecked(int n, int k, Vec basis) {
  Subspace s;
  s.n_ = n;
  s.k_ = k;
  s.basis_ = std::move(basis);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!s.basis_[static_cast<std::size_t>(i) * n + j].is_zero()) {
        s.pivots_.push_back(j);
        break;
      }
    }
  }
  return s;
}

std::vector<Vec> Subspace::rows() const {
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(k_));
  for (int i = 0; i < k_; ++i) {
    auto r = row(i);
    out.emplace_back(r.begin(), r.end());
  }
  return out;
}

std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  if (auto c = a.k_ <=> b.k_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.basis_.begin(), a.basis_.end(),
                                                b.basis_.begin(), b.basis_.end());
}

std::size_t Subspace::hash() const {
  std::size_t h = static_cast<std::size_t>(n_) * 1000003U + static_cast<std::size_t>(k_);
  for (Elem e : basis_) h = (h ^ e.idx) * 0x100000001b3ULL;
  return h;
}

ProjPoint normalize_point(const Field& f, const Vec& v) {
  auto lead = std::find_if(v.begin(), v.end(), [](Elem e) { return !e.is_zero(); });
  if (lead == v.end()) throw Error(ErrorCode::kZeroVector, "cannot normalize the zero vector");
  const Elem s = f.inv(*lead);
  ProjPoint p;
  p.coords.reserve(v.size());
  for (Elem e : v) p.coords.push_back(f.mul(s, e));
  return p;
}

Subspace rref_span(const Field& f, int n, std::span<const Vec> rows) {
  std::vector<Vec> m;
  m.reserve(rows.size());
  for (const Vec& r : rows) {
    if (static_cast<int>(r.size()) != n) {
      throw Error(ErrorCode::kDimensionMismatch, "row length differs from ambient dimension");
    }
    m.push_back(r);
  }
  int rank = 0;
  std::vector<int> pivots;
  for (int col = 0; col < n && rank < static_cast<int>(m.size()); ++col) {
    int sel = -1;
    for (int r = rank; r < static_cast<int>(m.size()); ++r) {
      if (!m[r][col].is_zero()) {
        sel = r;
        break;
      }
    }
    if (sel < 0) continue;
    std::swap(m[rank], m[sel]);
    const Elem s = f.inv(m[rank][col]);
    for (auto& e : m[rank]) e = f.mul(s, e);
    for (int r = 0; r < static_cast<int>(m.size()); ++r) {
      if (r == rank || m[r][col].is_zero()) continue;
      const Elem c = f.neg(m[r][col]);
      for (int j = col; j < n; ++j) m[r][j] = f.add(m[r][j], f.mul(c, m[rank][j]));
    }
    pivots.push_back(col);
    ++rank;
  }
  Subspace s;
  s.n_ = n;
  s.k_ = rank;
  s.pivots_ = std::move(pivots);
  s.basis_.reserve(static_cast<std::size_t>(rank) * n);
  for (int r = 0; r < rank; ++r) s.basis_.insert(s.basis_.end(), m[r].begin(), m[r].end());
  return s;
}

Subspace zero_subspace(int n) { return from_rref_unchecked(n, 0, {}); }

Subspace whole_space(const Field& f, int n) {
  Vec basis(static_cast<std::size_t>(n) * n, f.zero());
  for (int i = 0; i < n; ++i) basis[static_cast<std::size_t>(i) * n + i] = f.one();
  return from_rref_unchecked(n, n, std::move(basis));
}

Subspace span_of(const Field& f, const ProjPoint& a) {
  const std::vector<Vec> rows{a.coords};
  return rref_span(f, static_cast<int>(a.n()), rows);
}

Subspace span_of(const Field& f, const ProjPoint& a, const ProjPoint& b) {
  const std::vector<Vec> rows{a.coords, b.coords};
  return rref_span(f, static_cast<int>(a.n()), rows);
}

bool contains(const Field& f, const Subspace& s, const Vec& v) {
  if (static_cast<int>(v.size()) != s.n()) {
    throw Error(ErrorCode::kDimensionMismatch, "point and subspace ambient dimensions differ");
  }
  Vec r = v;
  for (int i = 0; i < s.k(); ++i) {
    const int pc = s.pivots()[i];
    if (r[pc].is_zero()) continue;
    const Elem c = f.neg(r[pc]);
    auto row = s.row(i);
    for (int j = pc; j < s.n(); ++j) r[j] = f.add(r[j], f.mul(c, row[j]));
  }
  return std::all_of(r.begin(), r.end(), [](Elem e) { return e.is_zero(); });
}

bool is_subspace_of(const Field& f, const Subspace& inner, const Subspace& outer) {
  for (int i = 0; i < inner.k(); ++i) {
    auto r = inner.row(i);
    if (!contains(f, outer, Vec(r.begin(), r.end()))) return false;
  }
  return true;
}

Subspace sum(const Field& f, const Subspace& a, const Subspace& b) {
  if (a.n() != b.n()) throw Error(ErrorCode::kDimensionMismatch, "sum of subspaces");
  std::vector<Vec> rows = a.rows();
  for (auto& r : b.rows()) rows.push_back(std::move(r));
  return rref_span(f, a.n(), rows);
}

Subspace annihilator(const Field& f, const Subspace& s) {
  const int n = s.n();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (int pc : s.pivots()) is_pivot[pc] = true;
  std::vector<Vec> rows;
  for (int col = 0; col < n; ++col) {
    if (is_pivot[col]) continue;
    Vec h(static_cast<std::size_t>(n), f.zero());
    h[col] = f.one();
    for (int i = 0; i < s.k(); ++i) h[s.pivots()[i]] = f.neg(s.row(i)[col]);
    rows.push_back(std::move(h));
  }
  return rref_span(f, n, rows);
}

Subspace intersect(const Field& f, const Subspace& a, const Subspace& b) {
  if (a.n() != b.n()) throw Error(ErrorCode::kDimensionMismatch, "intersection of subspaces");
  return annihilator(f, sum(f, annihilator(f, a), annihilator(f, b)));
}

Elem dot(const Field& f, std::span<const Elem> a, std::span<const Elem> b) {
  Elem acc = f.zero();
  for (std::size_t i = 0; i < a.size(); ++i) acc = f.add(acc, f.mul(a[i], b[i]));
  return acc;
}

void for_each_point(const Field& f, int n, const std::function<void(const ProjPoint&)>& fn) {
  const unsigned q = f.q();
  ProjPoint p;
  p.coords.assign(static_cast<std::size_t>(n), f.zero());
  // A later leading position is lexicographically smaller.
  for (int lead = n - 1; lead >= 0; --lead) {
    std::fill(p.coords.begin(), p.coords.end(), f.zero());
    p.coords[lead] = f.one();
    while (true) {
      fn(p);
      int j = n - 1;
      while (j > lead && p.coords[j].idx == q - 1) {
        p.coords[j] = f.zero();
        --j;
      }
      if (j == lead) break;
      p.coords[j] = Elem{static_cast<std::uint16_t>(p.coords[j].idx + 1)};
    }
  }
}

std::vector<ProjPoint> enumerate_points(const Field& f, int n) {
  std::vector<ProjPoint> out;
  for_each_point(f, n, [&](const ProjPoint& p) { out.push_back(p); });
  return out;
}

void for_each_subspace(const Field& f, int n, int k,
                       const std::function<bool(const Subspace&)>& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> piv(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) piv[i] = i;
  const unsigned q = f.q();
  while (true) {
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (int c : piv) is_pivot[c] = true;
    std::vector<std::size_t> free_slots;
    Vec basis(static_cast<std::size_t>(k) * n, f.zero());
    for (int i = 0; i < k; ++i) {
      basis[static_cast<std::size_t>(i) * n + piv[i]] = f.one();
      for (int j = piv[i] + 1; j < n; ++j) {
        if (!is_pivot[j]) free_slots.push_back(static_cast<std::size_t>(i) * n + j);
      }
    }
    while (true) {
      if (!fn(from_rref_unchecked(n, k, basis))) return;
      std::size_t t = free_slots.size();
      while (t > 0 && basis[free_slots[t - 1]].idx == q - 1) {
        basis[free_slots[t - 1]] = f.zero();
        --t;
      }
      if (t == 0) break;
      auto& e = basis[free_slots[t - 1]];
      e = Elem{static_cast<std::uint16_t>(e.idx + 1)};
    }
    // Next pivot combination in lexicographic order.
    int i = k - 1;
    while (i >= 0 && piv[i] == n - k + i) --i;
    if (i < 0) return;
    ++piv[i];
    for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
}

std::vector<Subspace> enumerate_subspaces(const Field& f, int n, int k) {
  std::vector<Subspace> out;
  for_each_subspace(f, n, k, [&](const Subspace& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

std::vector<Subspace> hyperplanes_through(const Field& f, const Subspace& u) {
  const int n = u.n();
  if (n < 2 || u.k() != n - 2) {
    throw Error(ErrorCode::kWrongDimension, "hyperplane pencil needs an (n-2)-subspace");
  }
  const Subspace ann = annihilator(f, u);
  auto a = ann.row(0);
  auto b = ann.row(1);
  std::vector<Subspace> out;
  for_each_point(f, 2, [&](const ProjPoint& c) {
    Vec h(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) h[j] = f.add(f.mul(c.coords[0], a[j]), f.mul(c.coords[1], b[j]));
    const std::vector<Vec> rows{h};
    out.push_back(annihilator(f, rref_span(f, n, rows)));
  });
  std::sort(out.begin(), out.end());
  return out;
}

BigInt gaussian_binomial(int n, int k, unsigned q) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt num = 1;
  BigInt den = 1;
  for (int i = 0; i < k; ++i) {
    num *= boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(n - i)) - 1;
    den *= boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(i + 1)) - 1;
  }
  return num / den;
}

std::string to_literal(const Field& f, const Subspace& s) {
  std::ostringstream os;
  os << "q=" << f.q() << " n=" << s.n() << " k=" << s.k() << " basis=[";
  for (int i = 0; i < s.k(); ++i) {
    if (i > 0) os << ',';
    os << '[';
    auto r = s.row(i);
    for (int j = 0; j < s.n(); ++j) {
      if (j > 0) os << ',';
      os << r[j].idx;
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

std::string point_to_string(const ProjPoint& p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t j = 0; j < p.coords.size(); ++j) {
    if (j > 0) os << ',';
    os << p.coords[j].idx;
  }
  os << ')';
  return os.str();
}

namespace {

class LiteralReader {
 public:
  explicit LiteralReader(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(std::string_view tok) {
    skip_ws();
    if (s_.substr(pos_, tok.size()) != tok) fail("expected '" + std::string(tok) + "'");
    pos_ += tok.size();
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  long number() {
    skip_ws();
    long v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc{}) fail("expected integer");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return v;
  }
  bool at_end() {
    skip_ws();
    return pos_ == s_.size();
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::kParse, why + " at offset " + std::to_string(pos_) + " in '" +
                                       std::string(s_) + "'");
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

unsigned literal_q(std::string_view text) {
  LiteralReader in(text);
  in.expect("q=");
  const long q = in.number();
  if (q < 2) in.fail("q must be at least 2");
  return static_cast<unsigned>(q);
}

ParsedSubspace parse_literal(const Field& f, std::string_view text) {
  LiteralReader in(text);
  in.expect("q=");
  const long q = in.number();
  in.expect("n=");
  const long n = in.number();
  in.expect("k=");
  const long k = in.number();
  in.expect("basis=");
  in.expect("[");
  std::vector<Vec> rows;
  while (!in.peek(']')) {
    if (!rows.empty()) in.expect(",");
    in.expect("[");
    Vec r;
    while (!in.peek(']')) {
      if (!r.empty()) in.expect(",");
      const long v = in.number();
      if (v < 0 || v >= static_cast<long>(f.q())) in.fail("element index out of range");
      r.push_back(Elem{static_cast<std::uint16_t>(v)});
    }
    in.expect("]");
    rows.push_back(std::move(r));
  }
  in.expect("]");
  if (!in.at_end()) in.fail("trailing characters");
  if (q != static_cast<long>(f.q())) in.fail("field order does not match");
  if (n < 1) in.fail("n must be positive");
  for (const Vec& r : rows) {
    if (static_cast<long>(r.size()) != n) in.fail("row length differs from n");
  }
  ParsedSubspace out;
  out.q = static_cast<unsigned>(q);
  out.subspace = rref_span(f, static_cast<int>(n), rows);
  if (out.subspace.k() != k) in.fail("rows do not have rank k");
  Vec flat;
  for (const Vec& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  out.recanonicalized = (flat != out.subspace.basis());
  return out;
}

}  // namespace qsearch
