#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "nsg/census.hpp"
#include "nsg/errors.hpp"
#include "nsg/semigroup.hpp"

namespace nsg {

using SemigroupVisitor = std::function<void(const Semigroup&)>;

/// Knobs shared by the enumeration engines. Budgets of 0 mean unlimited.
struct EnumerateOptions {
  int workers = 1;
  /// Number of branching decisions that define the parallel task prefixes.
  int branch_depth = 8;
  std::uint64_t max_nodes = 0;
  double max_seconds = 0.0;
};

namespace detail {

/// Shared budget bookkeeping for one enumeration run. Workers tick a local
/// counter and fold it into the global one in batches.
class BudgetClock {
 public:
  explicit BudgetClock(const EnumerateOptions& opt)
      : max_nodes_(opt.max_nodes),
        deadline_(opt.max_seconds > 0
                      ? std::chrono::steady_clock::now() +
                            std::chrono::duration_cast<
                                std::chrono::steady_clock::duration>(
                                std::chrono::duration<double>(opt.max_seconds))
                      : std::chrono::steady_clock::time_point::max()),
        timed_(opt.max_seconds > 0) {}

  bool unlimited() const { return max_nodes_ == 0 && !timed_; }

  /// Returns false once the budget is exhausted.
  bool consume(std::uint64_t ticks) {
    std::uint64_t seen = nodes_.fetch_add(ticks, std::memory_order_relaxed) +
                         ticks;
    if (max_nodes_ != 0 && seen > max_nodes_) exhausted_.store(true);
    if (timed_ && std::chrono::steady_clock::now() > deadline_)
      exhausted_.store(true);
    return !exhausted_.load(std::memory_order_relaxed);
  }

  bool exhausted() const { return exhausted_.load(std::memory_order_relaxed); }

 private:
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> exhausted_{false};
  const std::uint64_t max_nodes_;
  const std::chrono::steady_clock::time_point deadline_;
  const bool timed_;
};

struct BudgetStop {};  // private unwind signal; turned into BudgetExceededError

/// Per-worker budget ticker.
class Ticker {
 public:
  explicit Ticker(BudgetClock* clock) : clock_(clock) {}

  void tick() {
    if (clock_ == nullptr) return;
    if (++local_ < 1024) return;
    if (!clock_->consume(local_)) throw BudgetStop{};
    local_ = 0;
  }

  void flush() {
    if (clock_ && local_ > 0 && !clock_->consume(local_)) throw BudgetStop{};
    local_ = 0;
  }

 private:
  BudgetClock* clock_;
  std::uint64_t local_ = 0;
};

/// Exhaustive DFS over the semigroups with Frobenius number f.
///
/// Positions split into the low range [1, fbar] and the high range
/// [f-fbar, f-1] (plus the permanently excluded midpoint f/2 when f is
/// even). Low positions are decided from fbar downwards while maintaining
/// R, the set of all sums of included low members capped at f. Sums landing
/// on an already decided low gap, on f, or on f/2 prune the branch. At a
/// low leaf the high range splits into forced members (R), forbidden
/// positions (f - X, since any h with h + x = f cannot be a member), and
/// free positions decided by a second DFS that propagates the chains
/// h -> h + x.
class FrobeniusSearch {
 public:
  enum class Mode { kRun, kCollect };

  FrobeniusSearch(int f, int fixed_multiplicity, const SemigroupVisitor* visit,
                  Ticker ticker)
      : f_(f),
        fb_(fbar(f)),
        high_lo_(f - fb_),
        mid_(f % 2 == 0 ? f / 2 : -1),
        fixed_mult_(fixed_multiplicity),
        visit_(visit),
        ticker_(ticker) {
    census_.f = f;
    by_n_.assign(f + 2, 0);
    by_m_.assign(f + 3, 0);
    by_q_.assign(f + 3, 0);
  }

  /// Full enumeration of the subtree selected by replaying `choices`; an
  /// empty prefix enumerates everything.
  void run(const std::vector<std::uint8_t>& choices) {
    mode_ = Mode::kRun;
    choices_ = choices;
    cursor_ = 0;
    low_dfs(fb_);
    ticker_.flush();
  }

  /// Splits the search into subtree prefixes after `branch_depth` branching
  /// decisions (or at completed leaves, whichever comes first).
  std::vector<std::vector<std::uint8_t>> collect_tasks(int branch_depth) {
    mode_ = Mode::kCollect;
    branch_limit_ = branch_depth;
    prefix_.clear();
    tasks_.clear();
    low_dfs(fb_);
    return std::move(tasks_);
  }

  FrobeniusCensus take_census() {
    for (int i = 0; i < static_cast<int>(by_n_.size()); ++i)
      if (by_n_[i]) census_.by_n[i] = by_n_[i];
    for (int i = 0; i < static_cast<int>(by_m_.size()); ++i)
      if (by_m_[i]) census_.by_multiplicity[i] = by_m_[i];
    for (int i = 0; i < static_cast<int>(by_q_.size()); ++i)
      if (by_q_[i]) census_.by_depth[i] = by_q_[i];
    return std::move(census_);
  }

 private:
  bool low_forced_out(int p) const {
    return fixed_mult_ != 0 && p < fixed_mult_;
  }
  bool low_forced_in(int p) const { return fixed_mult_ == p; }

  /// Take the next branch decision. In collect mode, returns false once the
  /// prefix budget is spent, which cuts the subtree into a task.
  template <typename F0, typename F1>
  void branch(F0&& take0, F1&& take1) {
    if (mode_ == Mode::kCollect) {
      if (static_cast<int>(prefix_.size()) >= branch_limit_) {
        tasks_.push_back(prefix_);
        return;
      }
      prefix_.push_back(0);
      take0();
      prefix_.back() = 1;
      take1();
      prefix_.pop_back();
      return;
    }
    if (cursor_ < choices_.size()) {
      if (choices_[cursor_++] == 0)
        take0();
      else
        take1();
      // cursor is not rewound: the replay prefix is consumed exactly once
      // along the leftmost spine of this subtree.
      return;
    }
    take0();
    take1();
  }

  void low_dfs(int p) {
    ticker_.tick();
    if (p == 0) {
      high_phase();
      return;
    }
    if (low_forced_in(p)) {
      include_low_then(p);
      return;
    }
    if (low_forced_out(p)) {
      low_dfs(p - 1);
      return;
    }
    branch([&] { low_dfs(p - 1); }, [&] { include_low_then(p); });
  }

  void include_low_then(int p) {
    Bits saved_r = r_;
    x_.set(p);
    if (close_sums(p)) low_dfs(p - 1);
    x_.reset(p);
    r_ = saved_r;
  }

  /// Extends R with every sum that involves the newly included p, pruning
  /// when a sum hits f, the even midpoint, or a decided low gap.
  bool close_sums(int p) {
    Bits delta = r_;
    delta.set(0);
    while (true) {
      delta = delta.shifted(p);
      delta.truncate(f_);
      if (delta.subset_of(r_)) break;
      r_ |= delta;
    }
    if (r_.test(f_)) return false;
    if (mid_ >= 0 && r_.test(mid_)) return false;
    Bits low = r_;
    low.truncate(fb_);
    return low.subset_of(x_);
  }

  void high_phase() {
    Bits forced = r_;
    forced.truncate(f_ - 1);
    Bits forbidden = r_.reversed_around(f_);
    forbidden.truncate(f_ - 1);
    high_dfs(high_lo_, forced, forbidden);
  }

  void high_dfs(int h, const Bits& forced, const Bits& forbidden) {
    ticker_.tick();
    if (h > f_ - 1) {
      emit();
      return;
    }
    const bool in = forced.test(h) || (fixed_mult_ == h && x_.none());
    const bool out = forbidden.test(h) ||
                     (fixed_mult_ != 0 && x_.none() && h < fixed_mult_);
    if (in && out) return;  // fixed-multiplicity constraint unsatisfiable
    if (in) {
      include_high_then(h, forced, forbidden);
      return;
    }
    if (out) {
      high_dfs(h + 1, forced, forbidden);
      return;
    }
    branch([&] { high_dfs(h + 1, forced, forbidden); },
           [&] { include_high_then(h, forced, forbidden); });
  }

  void include_high_then(int h, const Bits& forced, const Bits& forbidden) {
    h_.set(h);
    Bits next_forced = forced;
    Bits chain = x_.shifted(h);
    chain.truncate(f_ - 1);
    next_forced |= chain;
    high_dfs(h + 1, next_forced, forbidden);
    h_.reset(h);
  }

  void emit() {
    if (mode_ == Mode::kCollect) {
      tasks_.push_back(prefix_);
      return;
    }
    const int n = x_.count() + h_.count();
    int m = x_.lowest();
    if (m < 0) m = h_.lowest();
    if (m < 0) m = f_ + 1;
    const int q = (f_ + m) / m;  // ceil((f+1)/m)
    census_.total++;
    by_n_[n]++;
    by_m_[m]++;
    by_q_[q]++;
    if (visit_ && *visit_) {
      Bits b = x_ | h_;
      b.set(0);
      b.set(f_ + 1);
      (*visit_)(Semigroup::assume_valid(f_, b));
    }
  }

  const int f_, fb_, high_lo_, mid_, fixed_mult_;
  const SemigroupVisitor* visit_;
  Ticker ticker_;
  Mode mode_ = Mode::kRun;

  Bits x_;  // included low members
  Bits r_;  // sums of included low members, capped at f
  Bits h_;  // included high members

  std::vector<std::uint8_t> choices_;
  std::size_t cursor_ = 0;
  int branch_limit_ = 0;
  std::vector<std::uint8_t> prefix_;
  std::vector<std::vector<std::uint8_t>> tasks_;

  FrobeniusCensus census_;
  std::vector<std::uint64_t> by_n_, by_m_, by_q_;
};

/// Runs `job(task_index)` over [0, count) on a small pool, then rethrows the
/// lowest-index failure if any. Task results must be written to
/// index-addressed slots by the job itself.
inline void run_tasks(int workers, std::size_t count,
                      const std::function<void(std::size_t)>& job) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        job(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const int spawn = std::min<int>(workers, static_cast<int>(count));
  pool.reserve(spawn);
  for (int t = 0; t < spawn; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

inline FrobeniusCensus enumerate_frobenius_impl(int f, int fixed_multiplicity,
                                                const SemigroupVisitor* visit,
                                                const EnumerateOptions& opt) {
  if (f < 1) throw Error("Frobenius number must be >= 1");
  if (f > kMaxFrobenius)
    throw OutOfBudgetError("f = " + std::to_string(f) +
                           " exceeds the supported range");
  BudgetClock clock(opt);
  BudgetClock* clockp = clock.unlimited() ? nullptr : &clock;

  auto single_depth1 = [&]() {
    FrobeniusCensus c;
    c.f = f;
    c.total = 1;
    c.by_n[0] = 1;
    c.by_multiplicity[f + 1] = 1;
    c.by_depth[1] = 1;
    if (visit && *visit) {
      Bits b;
      b.set(0);
      b.set(f + 1);
      (*visit)(Semigroup::assume_valid(f, b));
    }
    return c;
  };

  // f = 1 and f = 2 have no free positions at all; {0, f+1->} is the only
  // semigroup.
  if (f <= 2) {
    if (fixed_multiplicity != 0 && fixed_multiplicity != f + 1) {
      FrobeniusCensus c;
      c.f = f;
      return c;
    }
    return single_depth1();
  }
  if (fixed_multiplicity == f + 1) return single_depth1();
  if (fixed_multiplicity == f || fixed_multiplicity > f + 1 ||
      fixed_multiplicity < 0 ||
      (f % 2 == 0 && fixed_multiplicity == f / 2)) {
    // m = f and m = f/2 are impossible (m or m + m would equal f).
    FrobeniusCensus c;
    c.f = f;
    return c;
  }

  try {
    if (opt.workers <= 1) {
      FrobeniusSearch search(f, fixed_multiplicity, visit, Ticker(clockp));
      search.run({});
      return search.take_census();
    }
    FrobeniusSearch splitter(f, fixed_multiplicity, nullptr, Ticker(nullptr));
    auto tasks = splitter.collect_tasks(opt.branch_depth);
    std::vector<FrobeniusCensus> slots(tasks.size());
    run_tasks(opt.workers, tasks.size(), [&](std::size_t i) {
      FrobeniusSearch search(f, fixed_multiplicity, visit, Ticker(clockp));
      search.run(tasks[i]);
      slots[i] = search.take_census();
    });
    FrobeniusCensus out;
    out.f = f;
    for (auto& s : slots) out.merge(s);
    return out;
  } catch (const BudgetStop&) {
    throw BudgetExceededError("enumeration budget exhausted at f = " +
                              std::to_string(f));
  }
}

}  // namespace detail

/// Visits every numerical semigroup with Frobenius number exactly f, each
/// exactly once, and returns the census. With several workers the visitor
/// may be invoked concurrently; the census itself is scheduler-independent.
inline FrobeniusCensus enumerate_by_frobenius(
    int f, const SemigroupVisitor& visit, const EnumerateOptions& opt = {}) {
  return detail::enumerate_frobenius_impl(f, 0, &visit, opt);
}

inline FrobeniusCensus enumerate_by_frobenius(
    int f, const EnumerateOptions& opt = {}) {
  return detail::enumerate_frobenius_impl(f, 0, nullptr, opt);
}

/// Independent oracle: scans all 2^(f-1) subsets of [1, f-1] with a direct
/// word-level closure test. Restricted to f <= 22 so the scan stays at desk
/// scale.
inline FrobeniusCensus brute_force_by_frobenius(int f) {
  if (f < 1) throw Error("Frobenius number must be >= 1");
  if (f > 22)
    throw OutOfBudgetError("brute force subset scan is limited to f <= 22");
  FrobeniusCensus census;
  census.f = f;
  std::vector<std::uint64_t> by_n(f + 2, 0), by_m(f + 3, 0), by_q(f + 3, 0);
  const std::uint64_t limit = 1ull << (f - 1);
  for (std::uint64_t sub = 0; sub < limit; ++sub) {
    const std::uint64_t mem = sub << 1;  // positions 1..f-1
    bool ok = true;
    for (std::uint64_t rest = mem; rest != 0; rest &= rest - 1) {
      const int i = std::countr_zero(rest);
      if (2 * i > f) break;
      // sums i + j for every member j must stay inside the member set or
      // land beyond f; the bit at f itself must stay clear.
      const std::uint64_t bad = (mem << i) & ((2ull << f) - 1) & ~mem;
      if (bad) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    const int n = std::popcount(mem);
    const int m = mem ? std::countr_zero(mem) : f + 1;
    const int q = (f + m) / m;
    census.total++;
    by_n[n]++;
    by_m[m]++;
    by_q[q]++;
  }
  for (int i = 0; i < static_cast<int>(by_n.size()); ++i)
    if (by_n[i]) census.by_n[i] = by_n[i];
  for (int i = 0; i < static_cast<int>(by_m.size()); ++i)
    if (by_m[i]) census.by_multiplicity[i] = by_m[i];
  for (int i = 0; i < static_cast<int>(by_q.size()); ++i)
    if (by_q[i]) census.by_depth[i] = by_q[i];
  return census;
}

/// N_mul(m, f): semigroups with Frobenius number f and multiplicity exactly
/// m. Returns 0 for impossible m (e.g. m = f, or any m whose forced closure
/// hits f).
inline std::uint64_t count_by_multiplicity(int m, int f,
                                           const EnumerateOptions& opt = {}) {
  if (f < 1) throw Error("Frobenius number must be >= 1");
  if (m < 2) return 0;
  return detail::enumerate_frobenius_impl(f, m, nullptr, opt).total;
}

namespace detail {

/// Rooted-tree walk over all numerical semigroups ordered by genus: the
/// root is N, and children remove one minimal generator larger than the
/// parent's Frobenius number.
class GenusSearch {
 public:
  GenusSearch(int target, const SemigroupVisitor* visit, Ticker ticker)
      : g_(target), cap_(3 * target + 4), visit_(visit), ticker_(ticker) {
    census_.g = target;
  }

  struct Node {
    Bits members;  // bits over [0, cap); everything >= cap implicitly in S
    int frobenius = -1;
    int depth = 0;
  };

  Node root() const {
    Node node;
    for (int i = 0; i < cap_; ++i) node.members.set(i);
    return node;
  }

  void expand(const Node& node) {
    ticker_.tick();
    if (node.depth == g_) {
      emit(node);
      return;
    }
    for (const Node& child : children(node)) expand(child);
  }

  std::vector<Node> children(const Node& node) const {
    std::vector<Node> out;
    // minimal generators above the Frobenius number, ascending
    Bits nonzero = node.members;
    nonzero.reset(0);
    Bits sums;
    for (int y = nonzero.next(1); y >= 0 && 2 * y < cap_;
         y = nonzero.next(y + 1)) {
      Bits t = nonzero.shifted(y);
      sums |= t;
    }
    const int m = nonzero.lowest();
    // Minimal generators live in [m, f + m]; for the root (f = -1) the sole
    // generator is m = 1 itself.
    const int hi = std::min(cap_ - 1, std::max(node.frobenius + m, m));
    for (int x = nonzero.next(node.frobenius + 1); x >= 0 && x <= hi;
         x = nonzero.next(x + 1)) {
      if (sums.test(x)) continue;
      Node child;
      child.members = node.members;
      child.members.reset(x);
      child.frobenius = x;
      child.depth = node.depth + 1;
      out.push_back(child);
    }
    return out;
  }

  void emit(const Node& node) {
    census_.total++;
    const int f = node.frobenius;
    if (f < 0) {
      census_.depth_le1++;
      if (visit_ && *visit_) (*visit_)(Semigroup::natural());
      return;
    }
    Bits nonzero = node.members;
    nonzero.reset(0);
    const int m = nonzero.lowest();
    if (m > f) {
      census_.depth_le1++;  // {0, f+1 ->}
    } else if (2 * m > f) {
      census_.by_2m_minus_f[2 * m - f]++;
    } else if (3 * m > f) {
      TypeKey key;
      key.k = f - 2 * m;
      for (int i = 0; i <= key.k - 1; ++i)
        if (node.members.test(m + i)) key.a_mask |= 1u << i;
      census_.by_type[key]++;
    } else {
      census_.deep++;
    }
    if (visit_ && *visit_) {
      Bits b = node.members;
      b.truncate(f + 1);
      (*visit_)(Semigroup::assume_valid(f, b));
    }
  }

  GenusCensus take_census() { return std::move(census_); }

 private:
  const int g_, cap_;
  const SemigroupVisitor* visit_;
  Ticker ticker_;
  GenusCensus census_;
};

inline GenusCensus enumerate_genus_impl(int g, const SemigroupVisitor* visit,
                                        const EnumerateOptions& opt) {
  if (g < 0) throw Error("genus must be >= 0");
  // depth-3 types satisfy k = F - 2m < m <= g + 1; the 32-bit A masks and
  // the tree growth (~phi^g) both cap the target at desk scale
  if (g > 31)
    throw OutOfBudgetError("g = " + std::to_string(g) +
                           " exceeds the supported range");
  BudgetClock clock(opt);
  BudgetClock* clockp = clock.unlimited() ? nullptr : &clock;
  try {
    GenusSearch search(g, visit, Ticker(clockp));
    if (opt.workers <= 1 || g <= 2) {
      search.expand(search.root());
      Ticker(clockp).flush();
      return search.take_census();
    }
    // Deterministic level split: gather the subtree roots a few levels down
    // in DFS order, then expand them on the pool and merge by addition.
    const int split = std::min(g, 9);
    std::vector<GenusSearch::Node> roots{search.root()};
    for (int level = 0; level < split; ++level) {
      std::vector<GenusSearch::Node> next;
      for (const auto& node : roots)
        for (const auto& child : search.children(node)) next.push_back(child);
      roots = std::move(next);
    }
    std::vector<GenusCensus> slots(roots.size());
    run_tasks(opt.workers, roots.size(), [&](std::size_t i) {
      GenusSearch sub(g, visit, Ticker(clockp));
      sub.expand(roots[i]);
      slots[i] = sub.take_census();
    });
    GenusCensus out;
    out.g = g;
    for (auto& s : slots) out.merge(s);
    return out;
  } catch (const BudgetStop&) {
    throw BudgetExceededError("enumeration budget exhausted at g = " +
                              std::to_string(g));
  }
}

}  // namespace detail

/// Visits every numerical semigroup of genus g exactly once via the rooted
/// tree (children remove one minimal generator above the Frobenius number).
inline GenusCensus enumerate_by_genus(int g, const SemigroupVisitor& visit,
                                      const EnumerateOptions& opt = {}) {
  return detail::enumerate_genus_impl(g, &visit, opt);
}

inline GenusCensus enumerate_by_genus(int g, const EnumerateOptions& opt = {}) {
  return detail::enumerate_genus_impl(g, nullptr, opt);
}

}  // namespace nsg
