#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "charsum/forms.hpp"

namespace charsum {

namespace detail {

/* Pointwise Z3 arithmetic on packed tables. A value in {0,1,2} is held as
 * a (ones, twos) bit pair; no position ever has both bits set. */
inline void add3(uint64_t a1, uint64_t a2, uint64_t b1, uint64_t b2,
                 uint64_t& r1, uint64_t& r2) {
  uint64_t az = ~(a1 | a2), bz = ~(b1 | b2);
  r1 = (a1 & bz) | (b1 & az) | (a2 & b2);
  r2 = (a2 & bz) | (b2 & az) | (a1 & b1);
}

}  // namespace detail

/* The value vector of a function (Z2)^n -> Z3, stored as two bit masks
 * (positions holding 1, positions holding 2), 64 entries per word.
 * Entry index is the assignment read as an n-bit integer, x1 = least
 * significant bit. */
class FunctionTable {
 public:
  explicit FunctionTable(int n);

  int n() const { return n_; }
  uint64_t size() const { return 1ULL << n_; }

  int value(uint64_t idx) const;
  void set_value(uint64_t idx, int v);

  uint64_t support() const;
  std::pair<uint64_t, uint64_t> ones_twos() const;

  // pointwise sum mod 3
  FunctionTable operator+(const FunctionTable& o) const;
  // pointwise multiplication by 2 (swaps 1s and 2s)
  FunctionTable doubled() const;

  bool is_zero() const;
  bool operator==(const FunctionTable& o) const = default;

  const std::vector<uint64_t>& ones_mask() const { return ones_; }
  const std::vector<uint64_t>& twos_mask() const { return twos_; }
  void set_masks(std::vector<uint64_t> ones, std::vector<uint64_t> twos);

  // 2^n characters over {0,1,2}, index-ascending ("0001" = AND_2)
  std::string to_string() const;
  static FunctionTable parse(const std::string& text);

 private:
  int n_;
  std::vector<uint64_t> ones_, twos_;
};

/* A multiset of quadratic forms standing for the sum of their characters.
 * Coefficient-2 terms are normalized into the constant bit (2*2^q =
 * 2^(q+1)), so the weight is exactly the multiset size. */
class CharacterSum {
 public:
  explicit CharacterSum(int n) : n_(n) { check_var_count(n); }
  CharacterSum(int n, std::vector<QuadraticForm> terms);

  int n() const { return n_; }
  int weight() const { return static_cast<int>(terms_.size()); }
  const std::vector<QuadraticForm>& terms() const { return terms_; }

  void add_term(const QuadraticForm& q);

  // forms joined by " ; "; the empty sum prints as the empty string
  std::string to_string() const;
  static CharacterSum parse(const std::string& text, int n);

 private:
  int n_;
  std::vector<QuadraticForm> terms_;
};

// table of 2^q(x) mod 3; entries are in {1,2}, support is always 2^n
FunctionTable character_table(const QuadraticForm& q);

// pointwise sum mod 3 of the terms' character tables
FunctionTable sum_table(const CharacterSum& s);

// 1 at the all-ones assignment, 0 elsewhere
FunctionTable and_table(int n);

/* Expansion of prod_k (2^1 + 2^(x_{2k-1} x_{2k})) into exactly 2^(n/2)
 * quadratic characters summing to AND_n; n must be even. */
CharacterSum and_product_construction(int n);

/* 2^q as a sum of at most 4^witt_rank(q) linear characters, via the
 * four-linear-characters identity applied to each hyperbolic pair. */
CharacterSum expand_character(const QuadraticForm& q);

/* 2^q as a sum of at most 4^(n/2 - witt_rank(q)) full-rank quadratic
 * characters, via basis completion of the decomposition; n must be even. */
CharacterSum expand_to_full_rank(const QuadraticForm& q);

// adds r to every term; table multiplies pointwise by 2^r
CharacterSum shift_sum(const CharacterSum& s, const QuadraticForm& r);

/* The unique multilinear polynomial over Z3 agreeing with a table on all
 * of {0,1}^n. Coefficients are indexed by variable subset masks. */
class MultilinearPoly {
 public:
  explicit MultilinearPoly(int n);

  int n() const { return n_; }
  int coeff(uint32_t subset) const { return coeffs_[subset]; }
  void set_coeff(uint32_t subset, int v);

  int degree() const;  // 0 for constant (and zero) polynomials
  int eval(uint32_t x) const;
  FunctionTable to_table() const;

  bool operator==(const MultilinearPoly& o) const = default;

 private:
  int n_;
  std::vector<uint8_t> coeffs_;  // 2^n entries in {0,1,2}
};

// Moebius interpolation of a table
MultilinearPoly interpolate(const FunctionTable& t);
int poly_degree(const MultilinearPoly& p);

// w^2 * support(t) >= 2^n, for a table known to have 2-weight <= w
bool check_tradeoff(const FunctionTable& t, uint64_t w);

}  // namespace charsum
