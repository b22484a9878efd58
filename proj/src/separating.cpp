#include "qsearch/separating.hpp"

#include <algorithm>
#include <numeric>

#include "qsearch/rng.hpp"

namespace qsearch {

std::string Provenance::label() const {
  switch (kind) {
    case Kind::kExplicit: return "explicit";
    case Kind::kRandom: return "random{seed=" + std::to_string(seed) + ",l=" + std::to_string(l) + "}";
    case Kind::kUser: return "user";
  }
  return "user";
}

void validate(const ProjectiveSpace& space, const QuerySet& set) {
  if (set.n != space.n() || set.q != space.q()) {
    throw Error(ErrorCode::kDimensionMismatch, "query set does not match the ambient space");
  }
  for (const Subspace& s : set.queries) {
    if (s.n() != set.n) throw Error(ErrorCode::kDimensionMismatch, "query ambient dimension");
    if (s.k() < 1 || s.k() > set.n - 1) {
      throw Error(ErrorCode::kPrecondition, "queries must be proper nontrivial subspaces");
    }
  }
}

std::size_t SignatureTable::distinct() const {
  std::vector<std::size_t> order(points_);
  std::iota(order.begin(), order.end(), 0);
  auto less = [&](std::size_t a, std::size_t b) {
    auto sa = signature(a);
    auto sb = signature(b);
    return std::lexicographical_compare(sa.begin(), sa.end(), sb.begin(), sb.end());
  };
  std::sort(order.begin(), order.end(), less);
  std::size_t classes = points_ == 0 ? 0 : 1;
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (less(order[i - 1], order[i])) ++classes;
  }
  return classes;
}

SignatureTable signatures(const ProjectiveSpace& space, const QuerySet& set) {
  validate(space, set);
  SignatureTable table(space.size(), set.size());
  for (std::size_t j = 0; j < set.size(); ++j) {
    const PointSet m = space.mask(set.queries[j]);
    for (std::size_t i = m.first(); i < m.size(); i = m.next(i + 1)) table.set(i, j);
  }
  return table;
}

SeparationVerdict is_separating(const SignatureTable& table) {
  std::vector<std::size_t> order(table.points());
  std::iota(order.begin(), order.end(), 0);
  auto cmp = [&](std::size_t a, std::size_t b) {
    auto sa = table.signature(a);
    auto sb = table.signature(b);
    if (std::equal(sa.begin(), sa.end(), sb.begin())) return a < b;
    return std::lexicographical_compare(sa.begin(), sa.end(), sb.begin(), sb.end());
  };
  std::sort(order.begin(), order.end(), cmp);
  SeparationVerdict v;
  v.separating = true;
  for (std::size_t i = 1; i < order.size(); ++i) {
    auto sa = table.signature(order[i - 1]);
    auto sb = table.signature(order[i]);
    if (!std::equal(sa.begin(), sa.end(), sb.begin())) continue;
    // order[i-1] is the smallest member of its class when it starts the class.
    if (i >= 2) {
      auto sp = table.signature(order[i - 2]);
      if (std::equal(sp.begin(), sp.end(), sa.begin())) continue;
    }
    v.separating = false;
    const std::pair<std::size_t, std::size_t> pair{order[i - 1], order[i]};
    if (!v.witness || pair < *v.witness) v.witness = pair;
  }
  return v;
}

SeparationVerdict is_separating(const ProjectiveSpace& space, const QuerySet& set) {
  return is_separating(signatures(space, set));
}

Subspace coordinate_hyperplane(const Field& f, int n, int i) {
  Vec h(static_cast<std::size_t>(n), f.zero());
  h[i] = f.one();
  return annihilator(f, rref_span(f, n, {h}));
}

Subspace ratio_hyperplane(const Field& f, int n, int i, int j, Elem lambda) {
  Vec h(static_cast<std::size_t>(n), f.zero());
  h[j] = f.one();
  h[i] = f.neg(lambda);
  return annihilator(f, rref_span(f, n, {h}));
}

QuerySet explicit_construction(const Field& f, int n) {
  if (n < 2) throw Error(ErrorCode::kPrecondition, "explicit construction needs n >= 2");
  QuerySet set;
  set.n = n;
  set.q = f.q();
  set.provenance.kind = Provenance::Kind::kExplicit;
  for (int i = 0; i < n; ++i) set.queries.push_back(coordinate_hyperplane(f, n, i));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (unsigned k = 1; k + 2 <= f.q(); ++k) {
        set.queries.push_back(ratio_hyperplane(f, n, i, j, f.nonzero(k)));
      }
    }
  }
  return set;
}

Subspace sample_subspace(const Field& f, int n, int k, CounterRng& rng) {
  while (true) {
    std::vector<Vec> rows(static_cast<std::size_t>(k), Vec(static_cast<std::size_t>(n)));
    for (auto& r : rows) {
      for (auto& e : r) e = Elem{static_cast<std::uint16_t>(rng.uniform(f.q()))};
    }
    Subspace s = rref_span(f, n, rows);
    if (s.k() == k) return s;
  }
}

RandomConstruction random_construction(const ProjectiveSpace& space, std::uint64_t seed,
                                       int max_retries) {
  const int n = space.n();
  const Field& f = space.field();
  if (n < 3) throw Error(ErrorCode::kPrecondition, "random construction needs n >= 3");
  if (max_retries < 1) throw Error(ErrorCode::kPrecondition, "max_retries must be positive");
  const int l = 2 * n;
  CounterRng rng(seed);
  for (int attempt = 1; attempt <= max_retries; ++attempt) {
    RandomConstruction out;
    out.attempts = attempt;
    out.set.n = n;
    out.set.q = f.q();
    out.set.provenance = {Provenance::Kind::kRandom, seed, l};
    for (int b = 0; b < l; ++b) {
      RandomBundle bundle;
      bundle.base = sample_subspace(f, n, n - 2, rng);
      bundle.queried = hyperplanes_through(f, bundle.base);
      bundle.queried.pop_back();
      for (const Subspace& h : bundle.queried) out.set.queries.push_back(h);
      out.bundles.push_back(std::move(bundle));
    }
    if (is_separating(space, out.set).separating) return out;
  }
  throw Error(ErrorCode::kRetriesExhausted,
              "no separating sample in " + std::to_string(max_retries) + " attempts");
}

BigInt claim_count_formula(int n, unsigned q) {
  if (n < 3) throw Error(ErrorCode::kPrecondition, "claim count needs n >= 3");
  return BigInt(q - 1) * gaussian_binomial(n - 1, n - 3, q) -
         BigInt(static_cast<int>(q) - 2) * gaussian_binomial(n - 2, n - 4, q);
}

std::uint64_t claim_count_bruteforce(const Field& f, int n, const ProjPoint& u,
                                     const ProjPoint& v) {
  if (u == v) throw Error(ErrorCode::kPrecondition, "claim count needs distinct points");
  std::uint64_t count = 0;
  for_each_subspace(f, n, n - 2, [&](const Subspace& base) {
    bool separated = false;
    for (const Subspace& h : hyperplanes_through(f, base)) {
      if (contains(f, h, u) != contains(f, h, v)) {
        separated = true;
        break;
      }
    }
    if (!separated) ++count;
    return true;
  });
  return count;
}

ClaimSweep claim_count_all_pairs(const ProjectiveSpace& space) {
  const Field& f = space.field();
  const int n = space.n();
  const std::size_t m = space.size();
  std::vector<std::uint64_t> counts(m * m, 0);
  ClaimSweep out;
  for_each_subspace(f, n, n - 2, [&](const Subspace& base) {
    ++out.subspaces;
    // Label each point by which pencil members contain it.
    std::vector<std::vector<bool>> label(m);
    for (const Subspace& h : hyperplanes_through(f, base)) {
      for (std::size_t i = 0; i < m; ++i) label[i].push_back(contains(f, h, space.point(i)));
    }
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a + 1; b < m; ++b) {
        if (label[a] == label[b]) ++counts[a * m + b];
      }
    }
    return true;
  });
  bool first = true;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      const std::uint64_t c = counts[a * m + b];
      if (first) {
        out.min_count = out.max_count = c;
        first = false;
      }
      out.min_count = std::min(out.min_count, c);
      out.max_count = std::max(out.max_count, c);
      ++out.pairs;
    }
  }
  return out;
}

QuerySet reduce_to_minimal(const ProjectiveSpace& space, const QuerySet& set) {
  QuerySet cur = set;
  for (std::size_t idx = cur.queries.size(); idx-- > 0;) {
    QuerySet trial = cur;
    trial.queries.erase(trial.queries.begin() + static_cast<std::ptrdiff_t>(idx));
    if (is_separating(space, trial).separating) cur = std::move(trial);
  }
  return cur;
}

QuerySet points_to_lines(const ProjectiveSpace& space, const QuerySet& set) {
  if (space.n() != 3) throw Error(ErrorCode::kPrecondition, "point-to-line replacement needs n = 3");
  validate(space, set);
  if (!is_separating(space, set).separating) {
    throw Error(ErrorCode::kNotSeparating, "input system does not separate all points");
  }
  const Field& f = space.field();
  QuerySet cur = reduce_to_minimal(space, set);
  const auto& lines = space.hyperplanes();

  auto in_set = [&](const Subspace& s) {
    return std::find(cur.queries.begin(), cur.queries.end(), s) != cur.queries.end();
  };

  for (std::size_t pos = 0; pos < cur.queries.size(); ++pos) {
    if (cur.queries[pos].k() != 1) continue;
    const Subspace point_query = cur.queries[pos];
    const std::size_t p = space.index_of_vector(Vec(point_query.row(0).begin(), point_query.row(0).end()));

    QuerySet rest = cur;
    rest.queries.erase(rest.queries.begin() + static_cast<std::ptrdiff_t>(pos));
    const SignatureTable table = signatures(space, rest);
    auto sig_p = table.signature(p);
    std::vector<std::size_t> partners;
    for (std::size_t i = 0; i < space.size(); ++i) {
      if (i == p) continue;
      auto s = table.signature(i);
      if (std::equal(s.begin(), s.end(), sig_p.begin())) partners.push_back(i);
    }
    if (partners.size() >= 2) {
      throw Error(ErrorCode::kUniquenessViolation,
                  "point query " + point_to_string(space.point(p)) + " has " +
                      std::to_string(partners.size()) + " unseparated partners");
    }

    std::optional<Subspace> replacement;
    for (std::uint32_t h : space.hyperplanes_through_point(p)) {
      const Subspace& line = lines[h];
      if (!partners.empty() && contains(f, line, space.point(partners.front()))) continue;
      if (in_set(line)) continue;
      replacement = line;
      break;
    }
    if (!replacement) {
      // Only reachable when the point query was redundant; any fresh line keeps separation.
      for (const Subspace& line : lines) {
        if (!in_set(line)) {
          replacement = line;
          break;
        }
      }
    }
    if (!replacement) throw Error(ErrorCode::kInternalInconsistency, "no replacement line");
    cur.queries[pos] = *replacement;
  }
  if (!is_separating(space, cur).separating) {
    throw Error(ErrorCode::kInternalInconsistency, "replacement broke separation");
  }
  return cur;
}

namespace {

class MinimumSearcher {
 public:
  MinimumSearcher(const ProjectiveSpace& space, std::vector<Subspace> candidates)
      : space_(space), candidates_(std::move(candidates)), sig_(space.size(), 0) {
    for (const Subspace& c : candidates_) {
      const PointSet m = space.mask(c);
      std::vector<std::uint32_t> members;
      for (std::size_t i = m.first(); i < m.size(); i = m.next(i + 1)) {
        members.push_back(static_cast<std::uint32_t>(i));
      }
      members_.push_back(std::move(members));
    }
  }

  std::optional<std::vector<std::size_t>> search(int size) {
    target_ = size;
    chosen_.clear();
    std::fill(sig_.begin(), sig_.end(), 0);
    if (dfs(0)) return chosen_;
    return std::nullopt;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  // Largest class of equal partial signatures.
  std::size_t largest_class() {
    scratch_ = sig_;
    std::sort(scratch_.begin(), scratch_.end());
    std::size_t best = scratch_.empty() ? 0 : 1;
    std::size_t run = 1;
    for (std::size_t i = 1; i < scratch_.size(); ++i) {
      run = scratch_[i] == scratch_[i - 1] ? run + 1 : 1;
      best = std::max(best, run);
    }
    return best;
  }

  bool dfs(std::size_t start) {
    ++nodes_;
    const int depth = static_cast<int>(chosen_.size());
    const int remaining = target_ - depth;
    const std::size_t largest = largest_class();
    if (remaining == 0) return largest <= 1;
    // r more queries split a class into at most 2^r parts.
    if (largest > (std::size_t{1} << remaining)) return false;
    const std::uint32_t bit = std::uint32_t{1} << depth;
    for (std::size_t c = start; c + static_cast<std::size_t>(remaining) <= candidates_.size(); ++c) {
      for (std::uint32_t i : members_[c]) sig_[i] |= bit;
      chosen_.push_back(c);
      if (dfs(c + 1)) return true;
      chosen_.pop_back();
      for (std::uint32_t i : members_[c]) sig_[i] &= ~bit;
    }
    return false;
  }

  const ProjectiveSpace& space_;
  std::vector<Subspace> candidates_;
  std::vector<std::vector<std::uint32_t>> members_;
  std::vector<std::uint32_t> sig_;
  std::vector<std::uint32_t> scratch_;
  std::vector<std::size_t> chosen_;
  int target_ = 0;
  std::uint64_t nodes_ = 0;
};

}  // namespace

MinimumSearch brute_force_minimum(const ProjectiveSpace& space, int max_size,
                                  bool restrict_to_hyperplanes) {
  constexpr std::size_t kMaxPoints = 256;
  constexpr int kMaxSize = 24;
  if (space.size() > kMaxPoints) {
    throw Error(ErrorCode::kTooLarge, "exact minimum search is limited to " +
                                          std::to_string(kMaxPoints) + " points");
  }
  if (max_size < 1 || max_size > kMaxSize) {
    throw Error(ErrorCode::kPrecondition, "max_size must be in [1, " + std::to_string(kMaxSize) + "]");
  }
  if (space.n() < 2) throw Error(ErrorCode::kPrecondition, "search needs n >= 2");
  const Field& f = space.field();
  std::vector<Subspace> candidates;
  if (restrict_to_hyperplanes) {
    candidates = space.hyperplanes();
  } else {
    for (int k = 1; k < space.n(); ++k) {
      for (auto& s : enumerate_subspaces(f, space.n(), k)) candidates.push_back(std::move(s));
    }
    std::sort(candidates.begin(), candidates.end());
  }

  MinimumSearcher searcher(space, candidates);
  for (int size = 1; size <= max_size; ++size) {
    if (auto chosen = searcher.search(size)) {
      MinimumSearch out;
      out.size = size;
      out.nodes = searcher.nodes();
      out.witness.n = space.n();
      out.witness.q = space.q();
      for (std::size_t c : *chosen) out.witness.queries.push_back(candidates[c]);
      return out;
    }
  }
  throw Error(ErrorCode::kExhausted,
              "no separating system of size <= " + std::to_string(max_size));
}

}  // namespace qsearch
