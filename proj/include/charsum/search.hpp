#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "charsum/characters.hpp"

namespace charsum {

struct Histogram {
  std::map<uint64_t, uint64_t> bins;  // support -> count
  uint64_t total = 0;
  bool weighted = false;

  double normalized(uint64_t support, double scale = 100000.0) const;
  // "support,count" rows (plus a normalized column in weighted mode)
  std::string to_csv() const;
};

struct WeightWitness {
  FunctionTable target;
  CharacterSum sum;
  int weight = 0;

  std::string to_text() const;
};

enum class GeneratorFamily { LinearOnly, Quadratic };

/* Exact minimum number of generator characters summing to the target,
 * found by breadth-first search from the zero function over the packed
 * base-3 state space (3^(2^n) states, n <= 4). The returned witness is
 * re-summed against the target before returning. */
WeightWitness bfs_min_weight(const FunctionTable& target, GeneratorFamily family);

/* Support histogram of `samples` functions, each the pointwise sum of w
 * independently uniform quadratic characters. Sample index i draws from
 * its own random substream, so the bins do not depend on `threads`. */
Histogram sample_histogram(int n, int w, uint64_t samples, uint64_t seed,
                           int threads = 0);

// number of forms mapping to each Witt normal form, over all 2^22 forms (n = 6)
std::map<uint64_t, uint64_t> witt_class_sizes(int n);

/* Exact support distribution of weight-3 sums 2^0 + 2^u + 2^v at n = 6:
 * u ranges over the 14 normal forms weighted by class size, v over all
 * 2^22 forms. Population total is 2^44; normalize for comparisons. */
Histogram enumerate_weight3(int n);

/* Grid of observed (count of 1s, count of 2s) pairs over sampled weight-w
 * sums; cell (x, y) marks a function with exactly x ones and y twos. */
struct OccupancyGrid {
  int n = 0;
  std::vector<uint8_t> cells;  // (2^n + 1) x (2^n + 1), row-major in y

  bool at(uint64_t ones, uint64_t twos) const;
  void mark(uint64_t ones, uint64_t twos);
  // 2^n + 1 lines of '0'/'1'; line y, column x = (ones x, twos y)
  std::string to_text() const;
};

OccupancyGrid occupancy_grid(int n, int w, uint64_t samples, uint64_t seed,
                             int threads = 0);

// pointwise (a + b) mod 3 equals AND_n
bool pair_sums_to_and(const FunctionTable& a, const FunctionTable& b);

/* All pairs (i, j), i <= j, whose tables sum to AND_n. Candidates are
 * pre-filtered by the exact ones/twos count condition a complementary
 * pair must satisfy before running the full pointwise check. */
std::vector<std::pair<size_t, size_t>> scan_complementary_pairs(
    const std::vector<FunctionTable>& pool);

}  // namespace charsum
