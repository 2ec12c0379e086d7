#include "charsum/search.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <sstream>
#include <thread>

namespace charsum {

namespace {

int default_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// run fn(begin, end, slot) over a partition of [0, total)
template <typename Fn>
void parallel_ranges(uint64_t total, int threads, Fn&& fn) {
  threads = std::max(1, std::min<int>(threads, 64));
  if (threads == 1 || total < 2) {
    fn(uint64_t{0}, total, 0);
    return;
  }
  std::vector<std::thread> pool;
  uint64_t chunk = (total + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    uint64_t begin = std::min<uint64_t>(total, t * chunk);
    uint64_t end = std::min<uint64_t>(total, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end, t]() { fn(begin, end, t); });
  }
  for (auto& th : pool) th.join();
}

uint64_t pow3(int k) {
  uint64_t r = 1;
  while (k--) r *= 3;
  return r;
}

}  // namespace

double Histogram::normalized(uint64_t support, double scale) const {
  auto it = bins.find(support);
  if (it == bins.end() || total == 0) return 0.0;
  return static_cast<double>(it->second) * scale / static_cast<double>(total);
}

std::string Histogram::to_csv() const {
  std::ostringstream out;
  if (weighted) {
    out << "support,weighted_count,normalized\n";
    for (const auto& [s, c] : bins)
      out << s << "," << c << "," << normalized(s) << "\n";
  } else {
    out << "support,count\n";
    for (const auto& [s, c] : bins) out << s << "," << c << "\n";
  }
  return out.str();
}

std::string WeightWitness::to_text() const {
  std::ostringstream out;
  out << "target=" << target.to_string() << "\n";
  out << "weight=" << weight << "\n";
  out << "sum=" << sum.to_string() << "\n";
  return out.str();
}

/* ----------------------------------------------------------------------
 * Breadth-first search over all functions (Z2)^n -> Z3, n <= 4.
 *
 * A table is a base-3 integer with 2^n digits; the visited structure is a
 * flat byte array of 3^(2^n) distances (41 MB at n = 4). States convert
 * to (ones, twos) bit-mask pairs through chunk tables of 8 digits, so a
 * neighbor step is a dozen bit operations plus two table lookups.
 * Levels are expanded by scanning the distance array, which keeps memory
 * at the array itself; expansion of the level that first reaches the
 * target stops at that write.
 * -------------------------------------------------------------------- */
namespace {

constexpr int kChunkDigits = 8;
constexpr uint32_t kChunkStates = 6561;  // 3^8

struct StateCodec {
  int digits;            // 2^n table entries
  uint64_t state_count;  // 3^digits
  std::vector<uint16_t> chunk_to_masks;  // chunk value -> ones | twos<<8
  std::vector<uint16_t> masks_to_chunk;  // ones | twos<<8 -> chunk value

  explicit StateCodec(int n) {
    digits = 1 << n;
    state_count = pow3(digits);
    chunk_to_masks.assign(kChunkStates, 0);
    masks_to_chunk.assign(1u << 16, 0xFFFF);
    for (uint32_t v = 0; v < kChunkStates; ++v) {
      uint32_t ones = 0, twos = 0, rest = v;
      for (int d = 0; d < kChunkDigits; ++d) {
        uint32_t digit = rest % 3;
        rest /= 3;
        if (digit == 1) ones |= 1u << d;
        if (digit == 2) twos |= 1u << d;
      }
      uint16_t key = static_cast<uint16_t>(ones | (twos << 8));
      chunk_to_masks[v] = key;
      masks_to_chunk[key] = static_cast<uint16_t>(v);
    }
  }

  // masks hold one bit per digit; ones and twos never overlap
  std::pair<uint32_t, uint32_t> decode(uint64_t state) const {
    uint32_t c0 = static_cast<uint32_t>(state % kChunkStates);
    uint32_t c1 = static_cast<uint32_t>(state / kChunkStates);
    uint16_t m0 = chunk_to_masks[c0];
    uint16_t m1 = digits > kChunkDigits ? chunk_to_masks[c1] : 0;
    uint32_t ones = (m0 & 0xFF) | ((m1 & 0xFF) << 8);
    uint32_t twos = (m0 >> 8) | ((m1 >> 8) << 8);
    return {ones, twos};
  }

  uint64_t encode(uint32_t ones, uint32_t twos) const {
    uint32_t c0 = masks_to_chunk[(ones & 0xFF) | ((twos & 0xFF) << 8)];
    if (digits <= kChunkDigits) return c0;
    uint32_t c1 = masks_to_chunk[((ones >> 8) & 0xFF) | (((twos >> 8) & 0xFF) << 8)];
    return c0 + static_cast<uint64_t>(kChunkStates) * c1;
  }

  uint64_t table_state(const FunctionTable& t) const {
    uint64_t s = 0;
    for (int d = digits - 1; d >= 0; --d) s = s * 3 + t.value(d);
    return s;
  }

  FunctionTable state_table(int n, uint64_t state) const {
    FunctionTable t(n);
    for (int d = 0; d < digits; ++d) {
      t.set_value(d, static_cast<int>(state % 3));
      state /= 3;
    }
    return t;
  }
};

inline void add3_32(uint32_t a1, uint32_t a2, uint32_t b1, uint32_t b2,
                    uint32_t& r1, uint32_t& r2) {
  uint32_t az = ~(a1 | a2), bz = ~(b1 | b2);
  r1 = (a1 & bz) | (b1 & az) | (a2 & b2);
  r2 = (a2 & bz) | (b2 & az) | (a1 & b1);
}

std::vector<QuadraticForm> generator_forms(int n, GeneratorFamily family) {
  std::vector<QuadraticForm> gens;
  if (family == GeneratorFamily::LinearOnly) {
    uint64_t count = 1ULL << (n + 1);
    gens.reserve(count);
    for (uint64_t bits = 0; bits < count; ++bits)
      gens.push_back(QuadraticForm::decode(n, bits));
  } else {
    QuadraticForm probe(n);
    uint64_t count = 1ULL << probe.coeff_bits();
    gens.reserve(count);
    for (uint64_t bits = 0; bits < count; ++bits)
      gens.push_back(QuadraticForm::decode(n, bits));
  }
  return gens;
}

}  // namespace

WeightWitness bfs_min_weight(const FunctionTable& target, GeneratorFamily family) {
  int n = target.n();
  if (n > 4)
    throw capacity_error("exact search stores 3^(2^n) states; n=" +
                         std::to_string(n) + " exceeds n=4");

  StateCodec codec(n);
  std::vector<QuadraticForm> gens = generator_forms(n, family);
  std::vector<std::pair<uint32_t, uint32_t>> gen_masks;  // character tables
  gen_masks.reserve(gens.size());
  for (const auto& q : gens) {
    FunctionTable t = character_table(q);
    gen_masks.emplace_back(static_cast<uint32_t>(t.ones_mask()[0]),
                           static_cast<uint32_t>(t.twos_mask()[0]));
  }

  constexpr uint8_t kUnseen = 0xFF;
  std::vector<uint8_t> dist(codec.state_count, kUnseen);
  dist[0] = 0;
  uint64_t target_state = codec.table_state(target);

  int level = 0;
  while (dist[target_state] == kUnseen) {
    if (level >= 200) throw std::logic_error("generator set failed to span");
    bool wrote = false;
    bool found = false;
    for (uint64_t s = 0; s < codec.state_count && !found; ++s) {
      if (dist[s] != level) continue;
      auto [ones, twos] = codec.decode(s);
      for (const auto& [g1, g2] : gen_masks) {
        uint32_t r1, r2;
        add3_32(ones, twos, g1, g2, r1, r2);
        uint64_t nxt = codec.encode(r1, r2);
        if (dist[nxt] == kUnseen) {
          dist[nxt] = static_cast<uint8_t>(level + 1);
          wrote = true;
          if (nxt == target_state) {
            found = true;
            break;
          }
        }
      }
    }
    if (!wrote && dist[target_state] == kUnseen)
      throw std::logic_error("target unreachable from the zero function");
    ++level;
  }

  // walk back: subtracting a character is adding its doubled table
  int weight = dist[target_state];
  CharacterSum sum(n);
  uint64_t cur = target_state;
  for (int l = weight; l >= 1; --l) {
    auto [ones, twos] = codec.decode(cur);
    bool stepped = false;
    for (size_t gi = 0; gi < gens.size() && !stepped; ++gi) {
      uint32_t r1, r2;
      add3_32(ones, twos, gen_masks[gi].second, gen_masks[gi].first, r1, r2);
      uint64_t prev = codec.encode(r1, r2);
      if (dist[prev] == l - 1) {
        sum.add_term(gens[gi]);
        cur = prev;
        stepped = true;
      }
    }
    if (!stepped) throw std::logic_error("witness reconstruction failed");
  }

  WeightWitness w{target, sum, weight};
  if (!(sum_table(w.sum) == target))
    throw verification_error("witness does not re-sum to the target");
  return w;
}

/* ----------------------------------------------------------------------
 * Sampling and enumeration at n <= 6 (single-word tables).
 * -------------------------------------------------------------------- */
namespace {

struct Word3 {
  uint64_t ones = 0, twos = 0;
};

inline Word3 add3_64(Word3 a, Word3 b) {
  uint64_t az = ~(a.ones | a.twos), bz = ~(b.ones | b.twos);
  return {(a.ones & bz) | (b.ones & az) | (a.twos & b.twos),
          (a.twos & bz) | (b.twos & az) | (a.ones & b.ones)};
}

// character table of a form with <= 6 variables as one packed word
inline Word3 character_word(const QuadraticForm& q, uint64_t fill) {
  uint64_t m;
  q.value_mask_into(&m);
  return {~m & fill, m};
}

/* Scratch accumulator for one sampled weight-w sum over any n <= 16:
 * the form's truth mask lands in `mask`, the running sum in ones/twos. */
struct SampleAccumulator {
  int words;
  uint64_t fill;
  std::vector<uint64_t> mask, ones, twos;

  explicit SampleAccumulator(int n)
      : words(detail::table_words(n)),
        fill(detail::word_fill(n)),
        mask(words),
        ones(words),
        twos(words) {}

  void reset() {
    std::fill(ones.begin(), ones.end(), 0);
    std::fill(twos.begin(), twos.end(), 0);
  }
  void add_character(const QuadraticForm& q) {
    q.value_mask_into(mask.data());
    for (int b = 0; b < words; ++b) {
      uint64_t fillw = b + 1 == words ? fill : ~0ULL;
      detail::add3(ones[b], twos[b], ~mask[b] & fillw, mask[b], ones[b], twos[b]);
    }
  }
  uint64_t support() const {
    uint64_t s = 0;
    for (int b = 0; b < words; ++b) s += std::popcount(ones[b] | twos[b]);
    return s;
  }
  std::pair<uint64_t, uint64_t> ones_twos() const {
    uint64_t o = 0, t = 0;
    for (int b = 0; b < words; ++b) {
      o += std::popcount(ones[b]);
      t += std::popcount(twos[b]);
    }
    return {o, t};
  }
};

}  // namespace

Histogram sample_histogram(int n, int w, uint64_t samples, uint64_t seed,
                           int threads) {
  check_var_count(n);
  if (w < 1) throw input_error("weight must be at least 1");
  int nthreads = default_threads(threads);
  std::vector<std::vector<uint64_t>> partial(
      64, std::vector<uint64_t>((1ULL << n) + 1, 0));

  parallel_ranges(samples, nthreads, [&](uint64_t begin, uint64_t end, int slot) {
    auto& bins = partial[slot];
    SampleAccumulator acc(n);
    for (uint64_t i = begin; i < end; ++i) {
      RandomStream stream(seed, i);
      acc.reset();
      for (int k = 0; k < w; ++k) acc.add_character(random_form(n, stream));
      bins[acc.support()] += 1;
    }
  });

  Histogram h;
  h.total = samples;
  for (const auto& bins : partial)
    for (uint64_t s = 0; s < bins.size(); ++s)
      if (bins[s]) h.bins[s] += bins[s];
  return h;
}

std::map<uint64_t, uint64_t> witt_class_sizes(int n) {
  check_var_count(n);
  if (n > 6)
    throw capacity_error("exhaustive classification walks 2^(1+n+n(n-1)/2) forms; n=" +
                         std::to_string(n) + " exceeds n=6");
  QuadraticForm probe(n);
  uint64_t count = 1ULL << probe.coeff_bits();
  std::map<uint64_t, uint64_t> sizes;
  for (uint64_t bits = 0; bits < count; ++bits) {
    QuadraticForm q = QuadraticForm::decode(n, bits);
    sizes[witt_normal_form(q).encode()] += 1;
  }
  return sizes;
}

Histogram enumerate_weight3(int n) {
  if (n != 6)
    throw capacity_error("the normal-form list driving this enumeration is specific to n=6");
  uint64_t fill = detail::word_fill(n);
  QuadraticForm probe(n);
  int coeff_bits = probe.coeff_bits();
  uint64_t form_count = 1ULL << coeff_bits;

  std::map<uint64_t, uint64_t> classes = witt_class_sizes(n);

  // truth-mask deltas of the single coefficient bits, for Gray iteration
  std::vector<uint64_t> term_delta(coeff_bits);
  for (int t = 0; t < coeff_bits; ++t) {
    QuadraticForm q = QuadraticForm::decode(n, 1ULL << t);
    q.value_mask_into(&term_delta[t]);
  }

  std::array<uint64_t, 65> bins{};
  Word3 zero_char{fill, 0};  // table of 2^0
  for (const auto& [u_code, weight] : classes) {
    QuadraticForm u = QuadraticForm::decode(n, u_code);
    Word3 base = add3_64(zero_char, character_word(u, fill));
    uint64_t mask = 0;  // truth mask of the Gray-coded form v
    Word3 v_char{fill & ~mask, mask};
    Word3 total = add3_64(base, v_char);
    bins[std::popcount(total.ones | total.twos)] += weight;
    for (uint64_t i = 1; i < form_count; ++i) {
      mask ^= term_delta[std::countr_zero(i)];
      v_char = {~mask & fill, mask};
      total = add3_64(base, v_char);
      bins[std::popcount(total.ones | total.twos)] += weight;
    }
  }

  Histogram h;
  h.weighted = true;
  for (uint32_t s = 0; s < bins.size(); ++s) {
    if (bins[s]) h.bins[s] = bins[s];
    h.total += bins[s];
  }
  return h;
}

bool OccupancyGrid::at(uint64_t ones, uint64_t twos) const {
  uint64_t side = (1ULL << n) + 1;
  return cells[twos * side + ones] != 0;
}

void OccupancyGrid::mark(uint64_t ones, uint64_t twos) {
  uint64_t side = (1ULL << n) + 1;
  cells[twos * side + ones] = 1;
}

std::string OccupancyGrid::to_text() const {
  uint64_t side = (1ULL << n) + 1;
  std::string out;
  out.reserve(side * (side + 1));
  for (uint64_t y = 0; y < side; ++y) {
    for (uint64_t x = 0; x < side; ++x)
      out += cells[y * side + x] ? '1' : '0';
    out += '\n';
  }
  return out;
}

OccupancyGrid occupancy_grid(int n, int w, uint64_t samples, uint64_t seed,
                             int threads) {
  check_var_count(n);
  if (n > 8)
    throw capacity_error("the (2^n+1)^2 grid is impractical beyond n=8, got n=" +
                         std::to_string(n));
  if (w < 1) throw input_error("weight must be at least 1");
  uint64_t side = (1ULL << n) + 1;
  int nthreads = default_threads(threads);
  std::vector<std::vector<uint8_t>> partial(64, std::vector<uint8_t>(side * side, 0));

  parallel_ranges(samples, nthreads, [&](uint64_t begin, uint64_t end, int slot) {
    auto& cells = partial[slot];
    SampleAccumulator acc(n);
    for (uint64_t i = begin; i < end; ++i) {
      RandomStream stream(seed, i);
      acc.reset();
      for (int k = 0; k < w; ++k) acc.add_character(random_form(n, stream));
      auto [ones, twos] = acc.ones_twos();
      cells[twos * side + ones] = 1;
    }
  });

  OccupancyGrid grid;
  grid.n = n;
  grid.cells.assign(side * side, 0);
  for (const auto& cells : partial)
    for (uint64_t i = 0; i < cells.size(); ++i)
      if (cells[i]) grid.cells[i] = 1;
  return grid;
}

bool pair_sums_to_and(const FunctionTable& a, const FunctionTable& b) {
  if (a.n() != b.n())
    throw input_error("dimension mismatch: " + std::to_string(a.n()) + " vs " +
                      std::to_string(b.n()));
  return (a + b) == and_table(a.n());
}

std::vector<std::pair<size_t, size_t>> scan_complementary_pairs(
    const std::vector<FunctionTable>& pool) {
  std::vector<std::pair<size_t, size_t>> found;
  if (pool.empty()) return found;
  int n = pool.front().n();
  std::vector<std::pair<uint64_t, uint64_t>> counts;
  counts.reserve(pool.size());
  for (const auto& t : pool) {
    if (t.n() != n) throw input_error("pool tables must share n");
    counts.push_back(t.ones_twos());
  }
  /* Count filter: off the all-ones point a complementary pair matches 1s
   * to 2s and zeros to zeros, and at that point holds (2,2), (1,0) or
   * (0,1); each case pins the ones/twos counts of one table to the
   * other's. */
  auto compatible = [](std::pair<uint64_t, uint64_t> a,
                       std::pair<uint64_t, uint64_t> b) {
    auto [ao, at] = a;
    auto [bo, bt] = b;
    if (ao + 1 == bt && bo + 1 == at) return true;   // both 2 at the point
    if (ao == bt + 1 && at == bo) return true;       // a holds the 1
    if (bo == at + 1 && bt == ao) return true;       // b holds the 1
    return false;
  };
  for (size_t i = 0; i < pool.size(); ++i)
    for (size_t j = i; j < pool.size(); ++j) {
      if (!compatible(counts[i], counts[j])) continue;
      if (pair_sums_to_and(pool[i], pool[j])) found.emplace_back(i, j);
    }
  return found;
}

}  // namespace charsum
