#include "sprank/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "sprank/errors.hpp"

namespace sprank::oracle {

namespace {

using Mask = std::uint64_t;
using Clock = std::chrono::steady_clock;

constexpr std::size_t kMaxCells = 64;

// Counts work units against the budget. `lower_bound` is what the caller
// has certified so far and is reported on exhaustion.
class Meter {
 public:
  explicit Meter(const OracleBudget& budget) : budget_(budget), start_(Clock::now()) {}

  void subset(int lower_bound) {
    if (++subsets_ > budget_.max_subsets) {
      throw BudgetExceeded("oracle exceeded " + std::to_string(budget_.max_subsets) +
                               " subset tests",
                           lower_bound);
    }
    tick(lower_bound);
  }

  void matching(int lower_bound) {
    if (++matchings_ > budget_.max_matchings) {
      throw BudgetExceeded("oracle exceeded " + std::to_string(budget_.max_matchings) +
                               " matching search steps",
                           lower_bound);
    }
    tick(lower_bound);
  }

 private:
  void tick(int lower_bound) {
    if ((++ticks_ & 0xFFF) == 0 && Clock::now() - start_ > budget_.time_limit) {
      throw BudgetExceeded("oracle exceeded its time limit", lower_bound);
    }
  }

  OracleBudget budget_;
  Clock::time_point start_;
  std::uint64_t subsets_ = 0;
  std::uint64_t matchings_ = 0;
  std::uint64_t ticks_ = 0;
};

// Graph as a bitmask over cells i * m + j.
struct Grid {
  std::size_t n;
  std::size_t m;

  Mask bit(std::size_t i, std::size_t j) const { return Mask{1} << (i * m + j); }
  Mask row(std::size_t i) const { return ((Mask{1} << m) - 1) << (i * m); }
  Mask all() const { return n * m == 64 ? ~Mask{0} : (Mask{1} << (n * m)) - 1; }
};

Grid grid_of(const BipartiteGraph& g) {
  if (g.n_left() * g.n_right() > kMaxCells) {
    throw BudgetExceeded("graph too large for the exhaustive oracle", -1);
  }
  return {g.n_left(), g.n_right()};
}

Mask mask_of(const BipartiteGraph& g, const Grid& grid) {
  Mask mask = 0;
  for (const Edge& e : g.edges()) mask |= grid.bit(e.left, e.right);
  return mask;
}

BipartiteGraph graph_of(Mask mask, const Grid& grid) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < grid.n; ++i) {
    for (std::size_t j = 0; j < grid.m; ++j) {
      if (mask & grid.bit(i, j)) edges.push_back({i, j});
    }
  }
  return BipartiteGraph(grid.n, grid.m, std::move(edges));
}

// All left-perfect matchings of `mask`, each as a cell mask. Backtracks over
// left nodes in index order, right nodes ascending.
std::vector<Mask> left_perfect_matchings(Mask mask, const Grid& grid, Meter& meter,
                                         int lower_bound) {
  std::vector<Mask> out;
  auto rec = [&](auto&& self, std::size_t i, Mask used_right, Mask chosen) -> void {
    meter.matching(lower_bound);
    if (i == grid.n) {
      out.push_back(chosen);
      return;
    }
    for (std::size_t j = 0; j < grid.m; ++j) {
      if ((used_right >> j) & 1) continue;
      if (!(mask & grid.bit(i, j))) continue;
      self(self, i + 1, used_right | (Mask{1} << j), chosen | grid.bit(i, j));
    }
  };
  rec(rec, 0, 0, 0);
  return out;
}

// Largest number of pairwise disjoint masks from `family`, stopping early
// once `target` is reached.
std::size_t max_disjoint(const std::vector<Mask>& family, const Grid& grid,
                         std::size_t target, Meter& meter, int lower_bound) {
  std::size_t best = 0;
  auto remaining_bound = [&](Mask used, Mask available) {
    // Each further matching takes one unused edge in every row.
    std::size_t bound = grid.m;
    for (std::size_t i = 0; i < grid.n; ++i) {
      bound = std::min<std::size_t>(
          bound, static_cast<std::size_t>(std::popcount(available & grid.row(i) & ~used)));
    }
    return bound;
  };
  Mask available = 0;
  for (Mask f : family) available |= f;
  auto rec = [&](auto&& self, std::size_t start, Mask used, std::size_t count) -> void {
    meter.subset(lower_bound);
    best = std::max(best, count);
    if (best >= target) return;
    if (count + remaining_bound(used, available) <= best) return;
    for (std::size_t idx = start; idx < family.size(); ++idx) {
      if (family[idx] & used) continue;
      self(self, idx + 1, used | family[idx], count + 1);
      if (best >= target) return;
    }
  };
  rec(rec, 0, 0, 0);
  return best;
}

bool hits_all(Mask removed, const std::vector<Mask>& family) {
  return std::all_of(family.begin(), family.end(),
                     [removed](Mask f) { return (f & removed) != 0; });
}

// Calls visit(mask) for every mask over `cells` with exactly k bits, in
// lexicographic order of the chosen cell indices; stops when visit returns
// true and reports whether it did.
template <typename Visit>
bool for_each_subset(const std::vector<std::size_t>& cells, std::size_t k, Visit&& visit) {
  const std::size_t e = cells.size();
  if (k > e) return false;
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    Mask mask = 0;
    for (std::size_t p : pick) mask |= Mask{1} << cells[p];
    if (visit(mask)) return true;
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == e - k + (i - 1)) --i;
    if (i == 0) return false;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

std::vector<std::size_t> cells_of(Mask mask) {
  std::vector<std::size_t> cells;
  for (std::size_t c = 0; c < 64; ++c) {
    if ((mask >> c) & 1) cells.push_back(c);
  }
  return cells;
}

int strong_from_mask(Mask mask, const Grid& grid, const OracleBudget& budget) {
  Meter meter(budget);
  const auto family = left_perfect_matchings(mask, grid, meter, -1);
  if (family.empty()) return -1;
  return static_cast<int>(max_disjoint(family, grid, grid.m, meter, 0)) - 1;
}

int weak_from_mask(Mask mask, const Grid& grid, const OracleBudget& budget) {
  Meter meter(budget);
  const auto family = left_perfect_matchings(mask, grid, meter, -1);
  if (family.empty()) return -1;
  const auto cells = cells_of(mask);
  for (std::size_t k = 1; k <= cells.size(); ++k) {
    const int certified = static_cast<int>(k) - 1;
    const bool broken = for_each_subset(cells, k, [&](Mask removed) {
      meter.subset(certified);
      return hits_all(removed, family);
    });
    if (broken) return certified;
  }
  return static_cast<int>(cells.size()) - 1;
}

std::size_t backtrack_max_matching(const BipartiteGraph& g, Meter& meter) {
  const std::size_t n = g.n_left();
  std::vector<unsigned char> taken(g.n_right(), 0);
  std::size_t best = 0;
  auto rec = [&](auto&& self, std::size_t i, std::size_t size) -> void {
    meter.matching(static_cast<int>(best));
    if (size + (n - i) <= best) return;
    if (i == n) {
      best = size;
      return;
    }
    for (std::size_t j : g.left_neighbors(i)) {
      if (taken[j]) continue;
      taken[j] = 1;
      self(self, i + 1, size + 1);
      taken[j] = 0;
    }
    self(self, i + 1, size);
  };
  rec(rec, 0, 0);
  return best;
}

}  // namespace

OracleBudget budget_from_environment() {
  OracleBudget budget;
  if (const char* raw = std::getenv("SPRANK_ORACLE_BUDGET")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(raw, &end, 10);
    if (end != raw && *end == '\0' && value > 0) budget.max_subsets = value;
  }
  return budget;
}

std::size_t numeric_rank(std::vector<double> a, std::size_t rows, std::size_t cols,
                         double tolerance) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (std::abs(a[r * cols + c]) > std::abs(a[pivot * cols + c])) pivot = r;
    }
    if (std::abs(a[pivot * cols + c]) <= tolerance) continue;
    for (std::size_t k = 0; k < cols; ++k) std::swap(a[rank * cols + k], a[pivot * cols + k]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const double factor = a[r * cols + c] / a[rank * cols + c];
      for (std::size_t k = c; k < cols; ++k) a[r * cols + k] -= factor * a[rank * cols + k];
    }
    ++rank;
  }
  return rank;
}

std::size_t brute_rank(const BipartiteGraph& g, const OracleBudget& budget) {
  Meter meter(budget);
  const std::size_t matched = backtrack_max_matching(g, meter);

  std::mt19937_64 rng(0x5eed'5eedULL);
  std::uniform_real_distribution<double> value(1.0, 2.0);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<double> realisation(g.n_left() * g.n_right(), 0.0);
    for (const Edge& e : g.edges()) realisation[e.left * g.n_right() + e.right] = value(rng);
    const std::size_t generic = numeric_rank(std::move(realisation), g.n_left(), g.n_right());
    if (generic != matched) {
      throw std::logic_error("numeric rank " + std::to_string(generic) +
                             " disagrees with maximum matching " + std::to_string(matched));
    }
  }
  return matched;
}

int brute_weak_resilience(const BipartiteGraph& g, const OracleBudget& budget) {
  const Grid grid = grid_of(g);
  return weak_from_mask(mask_of(g, grid), grid, budget);
}

int brute_strong_resilience(const BipartiteGraph& g, const OracleBudget& budget) {
  const Grid grid = grid_of(g);
  return strong_from_mask(mask_of(g, grid), grid, budget);
}

std::size_t brute_min_augmentation(const BipartiteGraph& g, std::size_t k_star,
                                   const OracleBudget& budget) {
  if (k_star >= g.n_right()) {
    throw InvalidK("no G(n, m) is strongly " + std::to_string(k_star) + "-resilient");
  }
  const Grid grid = grid_of(g);
  const Mask base = mask_of(g, grid);
  const std::size_t need = k_star + 1;
  const auto free_cells = cells_of(grid.all() & ~base);
  Meter meter(budget);

  for (std::size_t d = 0; d <= free_cells.size(); ++d) {
    const bool found = for_each_subset(free_cells, d, [&](Mask extra) {
      meter.subset(static_cast<int>(d));
      const Mask mask = base | extra;
      // k* + 1 disjoint left-perfect matchings need k* + 1 edges per row.
      for (std::size_t i = 0; i < grid.n; ++i) {
        if (static_cast<std::size_t>(std::popcount(mask & grid.row(i))) < need) return false;
      }
      const auto family = left_perfect_matchings(mask, grid, meter, static_cast<int>(d));
      return max_disjoint(family, grid, need, meter, static_cast<int>(d)) >= need;
    });
    if (found) return d;
  }
  throw std::logic_error("complete graph failed to reach the target");
}

std::optional<BipartiteGraph> find_weak_gt_strong_witness(std::size_t n, std::size_t m,
                                                          const OracleBudget& budget) {
  if (n == 0 || m < n || n * m > kMaxCells) {
    throw ShapeError("witness search needs 1 <= n <= m and n * m <= 64");
  }
  const Grid grid{n, m};
  Meter meter(budget);

  auto is_witness = [&](Mask mask) {
    // Weak resilience >= 1 needs two edges in every row.
    for (std::size_t i = 0; i < n; ++i) {
      if (std::popcount(mask & grid.row(i)) < 2) return false;
    }
    const int strong = strong_from_mask(mask, grid, budget);
    return weak_from_mask(mask, grid, budget) > strong;
  };

  if (n * m <= 20) {
    const std::size_t cells = n * m;
    for (std::size_t count = 2 * n; count <= cells; ++count) {
      // Gosper's hack: masks with `count` bits in increasing order.
      Mask mask = (Mask{1} << count) - 1;
      const Mask limit = Mask{1} << cells;
      while (mask < limit) {
        meter.subset(-1);
        if (is_witness(mask)) return graph_of(mask, grid);
        const Mask low = mask & (~mask + 1);
        const Mask ripple = mask + low;
        mask = (((ripple ^ mask) >> 2) / low) | ripple;
      }
    }
    return std::nullopt;
  }

  std::mt19937_64 rng(0x77'17'4e55ULL);
  std::bernoulli_distribution coin(0.5);
  while (true) {
    meter.subset(-1);
    Mask mask = 0;
    for (std::size_t c = 0; c < n * m; ++c) {
      if (coin(rng)) mask |= Mask{1} << c;
    }
    if (is_witness(mask)) return graph_of(mask, grid);
  }
}

}  // namespace sprank::oracle
