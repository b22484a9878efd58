#include "qsearch/searchers.hpp"

#include <algorithm>
#include <charconv>
#include <string>

#include "qsearch/rng.hpp"
#include "qsearch/separating.hpp"

namespace qsearch {
namespace {

Subspace point_subspace(const Field& f, const ProjPoint& p) { return span_of(f, p); }

// ---------------------------------------------------------------------------

class PlaneSearcher final : public Searcher {
 public:
  explicit PlaneSearcher(const ProjectiveSpace& space) : space_(space), tracker_(space) {
    if (space.n() != 3) throw Error(ErrorCode::kPrecondition, "plane searcher needs n = 3");
    const std::size_t x = 0;  // lexicographically first point
    for (std::uint32_t h : space.hyperplanes_through_point(x)) pencil_.push_back(space.hyperplanes()[h]);
  }

  std::string name() const override { return "plane"; }

  Move next(const Transcript& history) override {
    const PointSet& cand = tracker_.update(history);
    if (cand.count() == 1) return Announce{space_.point(cand.first())};
    const bool saw_yes = std::any_of(history.entries.begin(), history.entries.end(),
                                     [](const Entry& e) { return e.answer.verdict == Verdict::kYes; });
    if (!saw_yes && asked_lines_ < space_.q()) return Ask{pencil_[asked_lines_++]};
    return Ask{point_subspace(space_.field(), space_.point(cand.first()))};
  }

 private:
  const ProjectiveSpace& space_;
  CandidateTracker tracker_;
  std::vector<Subspace> pencil_;
  unsigned asked_lines_ = 0;
};

// ---------------------------------------------------------------------------

class InductiveSearcher final : public Searcher {
 public:
  explicit InductiveSearcher(const ProjectiveSpace& space)
      : space_(space), f_(space.field()) {
    if (space.n() < 2) throw Error(ErrorCode::kPrecondition, "inductive searcher needs n >= 2");
    start_round(whole_space(f_, space.n()), std::nullopt);
  }

  std::string name() const override { return "inductive"; }

  Move next(const Transcript& history) override {
    while (true) {
      // Fold in the answer to our previous query.
      while (answers_.size() < asked_) {
        answers_.push_back(history.entries[history.entries.size() - asked_ + answers_.size()]
                               .answer.verdict);
      }
      if (done_) return Announce{*done_};
      if (auto resolved = resolve()) {
        const auto& [w, h] = *resolved;
        if (w.k() == 1) {
          done_ = ProjPoint{Vec(w.row(0).begin(), w.row(0).end())};
          continue;
        }
        start_round(w, h);
        continue;
      }
      const Subspace& member = members_[ask_order_[asked_]];
      ++asked_;
      return Ask{lift(member)};
    }
  }

 private:
  // Sets up the pencil inside W through a codimension-2 subspace U. When H
  // (a hyperplane of W known to miss the marked point) is given, U lies in H
  // and H is one of the pencil members, answered for free.
  void start_round(Subspace w, std::optional<Subspace> h) {
    const int d = w.k();
    const int n = space_.n();
    Vec c1;
    Vec c2;
    std::vector<Vec> u_rows;
    if (!h) {
      auto rows = w.rows();
      c1 = rows[0];
      c2 = rows[1];
      u_rows.assign(rows.begin() + 2, rows.end());
    } else {
      auto hrows = h->rows();
      c1 = hrows[0];
      u_rows.assign(hrows.begin() + 1, hrows.end());
      for (auto& r : w.rows()) {
        if (!contains(f_, *h, r)) {
          c2 = r;
          break;
        }
      }
    }
    u_ = rref_span(f_, n, u_rows);
    if (u_.k() != d - 2) throw Error(ErrorCode::kInternalInconsistency, "pencil base dimension");

    members_.clear();
    for_each_point(f_, 2, [&](const ProjPoint& c) {
      Vec v(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) {
        v[j] = f_.add(f_.mul(c.coords[0], c1[j]), f_.mul(c.coords[1], c2[j]));
      }
      std::vector<Vec> rows = u_rows;
      rows.push_back(std::move(v));
      members_.push_back(rref_span(f_, n, rows));
    });
    std::sort(members_.begin(), members_.end());

    ask_order_.clear();
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (h && members_[i] == *h) continue;
      ask_order_.push_back(i);
    }
    dropped_ = ask_order_.back();
    ask_order_.pop_back();

    w_ = std::move(w);
    h_ = std::move(h);
    complement_.clear();
    std::vector<bool> pivot(static_cast<std::size_t>(n), false);
    for (int pc : w_.pivots()) pivot[pc] = true;
    for (int j = 0; j < n; ++j) {
      if (pivot[j]) continue;
      Vec e(static_cast<std::size_t>(n), f_.zero());
      e[j] = f_.one();
      complement_.push_back(std::move(e));
    }
    asked_ = 0;
    answers_.clear();
  }

  // A hyperplane of the whole space meeting W exactly in `member`.
  Subspace lift(const Subspace& member) const {
    std::vector<Vec> rows = member.rows();
    rows.insert(rows.end(), complement_.begin(), complement_.end());
    return rref_span(f_, space_.n(), rows);
  }

  // Next (W, H) once the round's answers pin down where the point lies.
  std::optional<std::pair<Subspace, std::optional<Subspace>>> resolve() const {
    const bool any_yes = std::find(answers_.begin(), answers_.end(), Verdict::kYes) != answers_.end();
    const bool any_no = std::find(answers_.begin(), answers_.end(), Verdict::kNo) != answers_.end();
    // "All YES" (point inside U) is impossible when U is trivial or a member is known NO.
    const bool yes_decides = h_.has_value() || u_.k() == 0 || any_no;
    if (any_yes && yes_decides) {
      for (std::size_t i = 0; i < answers_.size(); ++i) {
        if (answers_[i] == Verdict::kYes) {
          return std::make_pair(members_[ask_order_[i]], std::optional<Subspace>(u_));
        }
      }
    }
    if (asked_ < ask_order_.size()) return std::nullopt;
    if (!any_yes) return std::make_pair(members_[dropped_], std::optional<Subspace>(u_));
    return std::make_pair(u_, std::optional<Subspace>());
  }

  const ProjectiveSpace& space_;
  const Field& f_;
  Subspace w_;
  std::optional<Subspace> h_;
  Subspace u_;
  std::vector<Subspace> members_;
  std::vector<std::size_t> ask_order_;
  std::size_t dropped_ = 0;
  std::vector<Vec> complement_;
  std::size_t asked_ = 0;
  std::vector<Verdict> answers_;
  std::optional<ProjPoint> done_;
};

// ---------------------------------------------------------------------------

class TwoRoundSearcher final : public Searcher {
 public:
  explicit TwoRoundSearcher(const ProjectiveSpace& space) : space_(space), f_(space.field()) {
    if (space.n() < 2) throw Error(ErrorCode::kPrecondition, "two-round searcher needs n >= 2");
    for (int i = 0; i < space.n(); ++i) plan_.push_back(coordinate_hyperplane(f_, space.n(), i));
  }

  std::string name() const override { return "two-round"; }

  Move next(const Transcript& history) override {
    const int n = space_.n();
    const unsigned q = space_.q();
    if (history.count() == static_cast<std::size_t>(n) && !second_round_planned_) {
      second_round_planned_ = true;
      for (int i = 0; i < n; ++i) {
        if (history.entries[i].answer.verdict == Verdict::kNo) nonzero_.push_back(i);
      }
      if (nonzero_.empty()) throw Error(ErrorCode::kInternalInconsistency, "marked vector is zero");
      const int anchor = nonzero_.front();
      for (std::size_t t = 1; t < nonzero_.size(); ++t) {
        for (unsigned k = 1; k + 2 <= q; ++k) {
          plan_.push_back(ratio_hyperplane(f_, n, anchor, nonzero_[t], f_.nonzero(k)));
          edges_.push_back({nonzero_[t], k});
        }
      }
    }
    if (history.count() < plan_.size()) return Ask{plan_[history.count()]};
    return Announce{decode(history)};
  }

 private:
  ProjPoint decode(const Transcript& history) const {
    const int n = space_.n();
    const unsigned q = space_.q();
    Vec u(static_cast<std::size_t>(n), f_.zero());
    u[nonzero_.front()] = f_.one();
    for (std::size_t t = 1; t < nonzero_.size(); ++t) {
      const int j = nonzero_[t];
      std::optional<unsigned> hit;
      for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (edges_[e].first != j) continue;
        if (history.entries[static_cast<std::size_t>(n) + e].answer.verdict == Verdict::kYes) {
          if (hit) throw Error(ErrorCode::kInternalInconsistency, "two ratio classes answered YES");
          hit = edges_[e].second;
        }
      }
      u[j] = f_.nonzero(hit.value_or(q - 1));
    }
    return normalize_point(f_, u);
  }

  const ProjectiveSpace& space_;
  const Field& f_;
  std::vector<Subspace> plan_;
  bool second_round_planned_ = false;
  std::vector<int> nonzero_;
  std::vector<std::pair<int, unsigned>> edges_;  // (coordinate j, ratio index k)
};

// ---------------------------------------------------------------------------

class RandomLineSearcher final : public Searcher {
 public:
  RandomLineSearcher(const ProjectiveSpace& space, std::uint64_t seed)
      : space_(space), tracker_(space), seed_(seed) {
    if (space.n() != 3) throw Error(ErrorCode::kPrecondition, "random line searcher needs n = 3");
    order_.resize(space.hyperplanes().size());
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = static_cast<std::uint32_t>(i);
    CounterRng rng(seed, /*stream=*/0x11e5);
    rng.shuffle(order_);
  }

  std::string name() const override { return "random-lines:" + std::to_string(seed_); }

  Move next(const Transcript& history) override {
    const PointSet& cand = tracker_.update(history);
    const std::size_t total = cand.count();
    if (total == 1) return Announce{space_.point(cand.first())};
    for (std::size_t tries = 0; tries < order_.size(); ++tries) {
      const Subspace& line = space_.hyperplanes()[order_[cursor_]];
      cursor_ = (cursor_ + 1) % order_.size();
      const std::size_t inside = (cand & space_.mask(line)).count();
      if (inside > 0 && inside < total) return Ask{line};
    }
    throw Error(ErrorCode::kInternalInconsistency, "no line splits the candidates");
  }

 private:
  const ProjectiveSpace& space_;
  CandidateTracker tracker_;
  std::uint64_t seed_;
  std::vector<std::uint32_t> order_;
  std::size_t cursor_ = 0;
};

}  // namespace

std::unique_ptr<Searcher> make_plane_searcher(const ProjectiveSpace& space) {
  return std::make_unique<PlaneSearcher>(space);
}

std::unique_ptr<Searcher> make_inductive_searcher(const ProjectiveSpace& space) {
  return std::make_unique<InductiveSearcher>(space);
}

std::unique_ptr<Searcher> make_two_round_searcher(const ProjectiveSpace& space) {
  return std::make_unique<TwoRoundSearcher>(space);
}

std::unique_ptr<Searcher> make_random_line_searcher(const ProjectiveSpace& space,
                                                    std::uint64_t seed) {
  return std::make_unique<RandomLineSearcher>(space, seed);
}

std::unique_ptr<Searcher> make_searcher(const ProjectiveSpace& space, std::string_view name) {
  if (name == "plane") return make_plane_searcher(space);
  if (name == "inductive") return make_inductive_searcher(space);
  if (name == "two-round") return make_two_round_searcher(space);
  constexpr std::string_view kRandom = "random-lines:";
  if (name.substr(0, kRandom.size()) == kRandom) {
    std::uint64_t seed = 0;
    const auto rest = name.substr(kRandom.size());
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), seed);
    if (ec != std::errc{} || ptr != rest.data() + rest.size()) {
      throw Error(ErrorCode::kPrecondition, "bad seed in searcher name '" + std::string(name) + "'");
    }
    return make_random_line_searcher(space, seed);
  }
  throw Error(ErrorCode::kPrecondition, "unknown searcher '" + std::string(name) + "'");
}

}  // namespace qsearch
