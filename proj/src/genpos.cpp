#include "bfgp/genpos.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>

#include "bfgp/butterfly.hpp"
#include "bfgp/error.hpp"

namespace bfgp {

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::constructed: return "constructed-butterfly";
    case Provenance::solver_exact: return "solver-exact";
    case Provenance::solver_lower_bound: return "solver-lower-bound";
    case Provenance::user: return "user";
  }
  return "user";
}

Provenance parse_provenance(const std::string& text) {
  for (auto p : {Provenance::constructed, Provenance::solver_exact,
                 Provenance::solver_lower_bound, Provenance::user}) {
    if (text == to_string(p)) return p;
  }
  throw Error(ErrorCode::invalid_parameter, "unknown provenance '" + text + "'");
}

VertexSet VertexSet::make(std::string graph_ref, std::vector<VertexId> ids,
                          Provenance provenance) {
  std::sort(ids.begin(), ids.end());
  auto dup = std::adjacent_find(ids.begin(), ids.end());
  if (dup != ids.end()) {
    throw Error(ErrorCode::invalid_parameter,
                "vertex " + std::to_string(*dup) + " listed twice");
  }
  if (!ids.empty() && ids.front() < 0) {
    throw Error(ErrorCode::invalid_parameter, "negative vertex id");
  }
  return {std::move(graph_ref), std::move(ids), provenance};
}

namespace {

void require_members_in(const Graph& g, std::span<const VertexId> ids) {
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!g.contains(ids[i])) {
      throw Error(ErrorCode::invalid_parameter,
                  "vertex out of range: " + std::to_string(ids[i]));
    }
    if (i > 0 && ids[i] <= ids[i - 1]) {
      throw Error(ErrorCode::invalid_parameter,
                  "vertex set must be sorted and distinct");
    }
  }
}

void require_mutually_reachable(const DistanceMatrix& dm,
                                std::span<const VertexId> ids) {
  for (std::size_t i = 1; i < ids.size(); ++i) {
    if (!dm.reachable(ids[0], ids[i])) {
      throw Error(ErrorCode::not_connected,
                  "vertices " + std::to_string(ids[0]) + " and " +
                      std::to_string(ids[i]) + " are not connected");
    }
  }
}

}  // namespace

GpWitness verify_general_position(const Graph& g, const DistanceMatrix& dm,
                                  const VertexSet& set) {
  const auto& s = set.members;
  require_members_in(g, s);
  require_mutually_reachable(dm, s);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const auto dij = dm(s[i], s[j]);
      for (std::size_t k = j + 1; k < s.size(); ++k) {
        const auto dik = dm(s[i], s[k]);
        const auto djk = dm(s[j], s[k]);
        if (dij + djk == dik) return {false, CollinearTriple{s[i], s[j], s[k]}};
        if (dij + dik == djk) return {false, CollinearTriple{s[j], s[i], s[k]}};
        if (dik + djk == dij) return {false, CollinearTriple{s[i], s[k], s[j]}};
      }
    }
  }
  return {};
}

VertexSet construct_bf_gp_set(int r) {
  if (r < 2 || r > kMaxButterflyDimension) {
    throw Error(ErrorCode::invalid_parameter,
                "construction needs 2 <= r <= " +
                    std::to_string(kMaxButterflyDimension) + ", got " +
                    std::to_string(r));
  }
  const std::uint32_t rows = std::uint32_t{1} << r;
  const std::uint32_t first = row_bit(r, 1);
  const std::uint32_t last = row_bit(r, r);
  std::vector<VertexId> ids;
  for (std::uint32_t row = 0; row < rows; ++row) {
    if (row & last) ids.push_back(butterfly_id(r, 0, row));
  }
  for (std::uint32_t row = 0; row < rows; ++row) {
    if (!(row & first) && !(row & last)) ids.push_back(butterfly_id(r, 1, row));
  }
  for (std::uint32_t row = 0; row < rows; ++row) {
    if (row & first) ids.push_back(butterfly_id(r, r, row));
  }
  return VertexSet::make(graph_ref({Family::butterfly, r}, 0), std::move(ids),
                         Provenance::constructed);
}

namespace {

std::vector<VertexId> greedy_scan(const DistanceMatrix& dm,
                                  std::span<const VertexId> order) {
  std::vector<VertexId> chosen;
  for (VertexId v : order) {
    bool ok = true;
    for (std::size_t i = 0; ok && i < chosen.size(); ++i) {
      for (std::size_t j = i + 1; j < chosen.size(); ++j) {
        if (collinear_unchecked(dm, chosen[i], chosen[j], v)) {
          ok = false;
          break;
        }
      }
    }
    if (ok) chosen.push_back(v);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::vector<VertexId> by_degree(const Graph& g, std::vector<VertexId> ids) {
  std::stable_sort(ids.begin(), ids.end(), [&](VertexId a, VertexId b) {
    return g.degree(a) < g.degree(b);
  });
  return ids;
}

using Word = std::uint64_t;

// Exact search over pool indices 0..m-1. Candidate sets are bitsets of
// `words_` words; `pair_conflicts_` holds, for each ordered pair (a, b), the
// set of c that make {a, b, c} collinear.
class BranchAndBound {
 public:
  BranchAndBound(const DistanceMatrix& dm, std::vector<VertexId> pool,
                 const SolveOptions& options)
      : pool_(std::move(pool)),
        m_(static_cast<int>(pool_.size())),
        words_((m_ + 63) / 64),
        options_(options) {
    pair_conflicts_.assign(static_cast<std::size_t>(m_) * m_ * words_, 0);
    for (int a = 0; a < m_; ++a) {
      for (int b = a + 1; b < m_; ++b) {
        for (int c = b + 1; c < m_; ++c) {
          if (collinear_unchecked(dm, pool_[a], pool_[b], pool_[c])) {
            set_bit(conflicts(a, b), c);
            set_bit(conflicts(b, a), c);
            set_bit(conflicts(a, c), b);
            set_bit(conflicts(c, a), b);
            set_bit(conflicts(b, c), a);
            set_bit(conflicts(c, b), a);
          }
        }
      }
    }
    frames_.assign(static_cast<std::size_t>(m_ + 2) * words_, 0);
    partner_.assign(static_cast<std::size_t>(m_) * words_, 0);
    live_.assign(words_, 0);
    activity_.assign(m_, 0);
  }

  void seed_incumbent(std::vector<int> indices) { best_ = std::move(indices); }

  void run() {
    start_ = std::chrono::steady_clock::now();
    Word* root = frame(0);
    for (int i = 0; i < m_; ++i) set_bit(root, i);
    search(0);
  }

  const std::vector<int>& best() const { return best_; }
  std::uint64_t nodes() const { return nodes_; }
  bool exhausted() const { return exhausted_; }

 private:
  static void set_bit(Word* w, int i) { w[i >> 6] |= Word{1} << (i & 63); }
  static void clear_bit(Word* w, int i) { w[i >> 6] &= ~(Word{1} << (i & 63)); }
  static bool has_bit(const Word* w, int i) {
    return (w[i >> 6] >> (i & 63)) & 1;
  }

  Word* conflicts(int a, int b) {
    return pair_conflicts_.data() +
           (static_cast<std::size_t>(a) * m_ + b) * words_;
  }
  Word* frame(int depth) {
    return frames_.data() + static_cast<std::size_t>(depth) * words_;
  }

  int count(const Word* w) const {
    int total = 0;
    for (int i = 0; i < words_; ++i) total += std::popcount(w[i]);
    return total;
  }
  int count_and(const Word* a, const Word* b) const {
    int total = 0;
    for (int i = 0; i < words_; ++i) total += std::popcount(a[i] & b[i]);
    return total;
  }

  template <typename F>
  void for_each_bit(const Word* w, F&& f) const {
    for (int i = 0; i < words_; ++i) {
      Word bits = w[i];
      while (bits) {
        f(i * 64 + std::countr_zero(bits));
        bits &= bits - 1;
      }
    }
  }

  bool out_of_budget() {
    if (nodes_ >= options_.node_budget) return true;
    if (options_.time_budget && (nodes_ & 0xfff) == 0) {
      auto elapsed = std::chrono::steady_clock::now() - start_;
      if (elapsed > *options_.time_budget) return true;
    }
    return false;
  }

  // Fills partner_ rows (candidates that conflict with each candidate given
  // the chosen set) and activity_, and returns how many candidates any
  // completion must drop.
  int forced_exclusions(const Word* cand) {
    for_each_bit(cand, [&](int a) {
      Word* row = partner_.data() + static_cast<std::size_t>(a) * words_;
      std::fill(row, row + words_, 0);
      for (int s : chosen_) {
        const Word* c = conflicts(a, s);
        for (int i = 0; i < words_; ++i) row[i] |= c[i];
      }
      for (int i = 0; i < words_; ++i) row[i] &= cand[i];
      int act = count(row);
      for_each_bit(cand, [&](int b) {
        if (b != a) act += count_and(conflicts(a, b), cand);
      });
      activity_[a] = act;
    });

    std::copy(cand, cand + words_, live_.begin());
    int dropped = 0;
    for_each_bit(cand, [&](int a) {
      if (!has_bit(live_.data(), a)) return;
      const Word* row = partner_.data() + static_cast<std::size_t>(a) * words_;
      for (int i = 0; i < words_; ++i) {
        Word hit = row[i] & live_[i];
        if (hit) {
          clear_bit(live_.data(), a);
          clear_bit(live_.data(), i * 64 + std::countr_zero(hit));
          ++dropped;
          return;
        }
      }
    });
    for_each_bit(cand, [&](int a) {
      if (!has_bit(live_.data(), a)) return;
      for (int b = a + 1; b < m_ && has_bit(live_.data(), a); ++b) {
        if (!has_bit(live_.data(), b)) continue;
        const Word* c = conflicts(a, b);
        for (int i = 0; i < words_; ++i) {
          Word hit = c[i] & live_[i];
          if (hit) {
            clear_bit(live_.data(), a);
            clear_bit(live_.data(), b);
            clear_bit(live_.data(), i * 64 + std::countr_zero(hit));
            ++dropped;
            break;
          }
        }
      }
    });
    return dropped;
  }

  void search(int depth) {
    Word* cand = frame(depth);
    while (true) {
      if (out_of_budget()) {
        exhausted_ = true;
        return;
      }
      ++nodes_;
      if (chosen_.size() > best_.size()) best_ = chosen_;

      const int size = count(cand);
      if (size == 0) return;
      const int chosen = static_cast<int>(chosen_.size());
      const int incumbent = static_cast<int>(best_.size());
      if (chosen + size <= incumbent) return;
      const int dropped = forced_exclusions(cand);
      if (chosen + size - dropped <= incumbent) return;

      int pick = -1;
      for_each_bit(cand, [&](int a) {
        if (activity_[a] > 0 && (pick < 0 || activity_[a] > activity_[pick])) {
          pick = a;
        }
      });
      if (pick < 0) {
        // No live conflicts: every candidate can be taken.
        std::vector<int> all = chosen_;
        for_each_bit(cand, [&](int a) { all.push_back(a); });
        if (all.size() > best_.size()) {
          std::sort(all.begin(), all.end());
          best_ = std::move(all);
        }
        return;
      }

      Word* next = frame(depth + 1);
      std::copy(cand, cand + words_, next);
      clear_bit(next, pick);
      for (int s : chosen_) {
        const Word* c = conflicts(pick, s);
        for (int i = 0; i < words_; ++i) next[i] &= ~c[i];
      }
      chosen_.push_back(pick);
      search(depth + 1);
      chosen_.pop_back();
      if (exhausted_) return;

      clear_bit(cand, pick);
    }
  }

  std::vector<VertexId> pool_;
  int m_;
  int words_;
  const SolveOptions& options_;
  std::vector<Word> pair_conflicts_;
  std::vector<Word> frames_;
  std::vector<Word> partner_;
  std::vector<Word> live_;
  std::vector<int> activity_;
  std::vector<int> chosen_;
  std::vector<int> best_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

SolveResult max_general_position(const Graph& g, const DistanceMatrix& dm,
                                 const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (g.num_vertices() == 0) {
    throw Error(ErrorCode::invalid_parameter, "empty graph");
  }
  if (options.node_budget == 0) {
    throw Error(ErrorCode::invalid_parameter, "node budget must be positive");
  }
  if (options.time_budget && options.time_budget->count() <= 0) {
    throw Error(ErrorCode::invalid_parameter, "time budget must be positive");
  }
  std::vector<VertexId> pool;
  if (options.pool) {
    pool = *options.pool;
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    require_members_in(g, pool);
  } else {
    pool.resize(g.num_vertices());
    std::iota(pool.begin(), pool.end(), 0);
  }
  if (static_cast<int>(pool.size()) > kMaxSolverPool) {
    throw Error(ErrorCode::invalid_parameter,
                "pool of " + std::to_string(pool.size()) +
                    " vertices exceeds solver limit " +
                    std::to_string(kMaxSolverPool));
  }
  require_mutually_reachable(dm, pool);

  std::vector<VertexId> warm = greedy_scan(dm, by_degree(g, pool));
  std::vector<int> warm_idx;
  for (VertexId v : warm) {
    warm_idx.push_back(static_cast<int>(
        std::lower_bound(pool.begin(), pool.end(), v) - pool.begin()));
  }

  BranchAndBound bnb(dm, pool, options);
  bnb.seed_incumbent(std::move(warm_idx));
  bnb.run();

  std::vector<VertexId> ids;
  for (int i : bnb.best()) ids.push_back(pool[i]);

  SolveResult result;
  result.optimal = !bnb.exhausted();
  result.budget_exhausted = bnb.exhausted();
  result.best_set = VertexSet::make(
      g.ref(), std::move(ids),
      result.optimal ? Provenance::solver_exact : Provenance::solver_lower_bound);
  result.size = result.best_set.size();
  result.nodes_explored = bnb.nodes();
  result.elapsed = std::chrono::steady_clock::now() - start;
  return result;
}

VertexSet greedy_gp_lower_bound(const Graph& g, const DistanceMatrix& dm,
                                GreedyOrder order, std::uint64_t seed) {
  std::vector<VertexId> ids(g.num_vertices());
  std::iota(ids.begin(), ids.end(), 0);
  switch (order) {
    case GreedyOrder::id:
      break;
    case GreedyOrder::degree:
      ids = by_degree(g, std::move(ids));
      break;
    case GreedyOrder::random: {
      std::mt19937_64 rng(seed);
      std::shuffle(ids.begin(), ids.end(), rng);
      break;
    }
  }
  require_mutually_reachable(dm, ids);
  return VertexSet::make(g.ref(), greedy_scan(dm, ids),
                         Provenance::solver_lower_bound);
}

}  // namespace bfgp
