#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "charsum/errors.hpp"
#include "charsum/rng.hpp"

namespace charsum {

inline constexpr int kMaxVars = 16;

void check_var_count(int n);

/* A linear form over Z2: sum of variables plus a constant bit.
 * Variables are 0-based internally; all text I/O is 1-based (x1..xn). */
class LinearForm {
 public:
  explicit LinearForm(int n) : n_(n), coeffs_(0), constant_(false) {
    check_var_count(n);
  }
  LinearForm(int n, uint32_t coeffs, bool constant)
      : n_(n), coeffs_(coeffs), constant_(constant) {
    check_var_count(n);
    coeffs_ &= var_mask();
  }

  int n() const { return n_; }
  uint32_t coeffs() const { return coeffs_; }
  bool coeff(int i) const { return (coeffs_ >> i) & 1u; }
  void set_coeff(int i, bool v) {
    if (v)
      coeffs_ |= (1u << i);
    else
      coeffs_ &= ~(1u << i);
  }
  bool constant_term() const { return constant_; }
  void set_constant_term(bool v) { constant_ = v; }

  bool is_zero() const { return coeffs_ == 0 && !constant_; }
  bool is_constant() const { return coeffs_ == 0; }

  // value on the assignment x (x1 = least significant bit)
  bool eval(uint32_t x) const {
    return (__builtin_popcount(coeffs_ & x) & 1) ^ (constant_ ? 1 : 0);
  }

  LinearForm operator+(const LinearForm& o) const;
  bool operator==(const LinearForm& o) const = default;

  std::string to_string() const;
  static LinearForm parse(const std::string& text, int n);

 private:
  uint32_t var_mask() const { return n_ == 32 ? ~0u : (1u << n_) - 1; }

  int n_;
  uint32_t coeffs_;
  bool constant_;
};

/* A multilinear quadratic form over Z2 on n variables (1 <= n <= 16):
 * pair terms x_i x_j with i < j, linear terms, and a constant bit.
 *
 * Coefficients pack into a canonical bit layout used by encode()/decode(),
 * random generation and the exhaustive enumerations:
 *   bit 0            constant
 *   bits 1..n        linear coefficients of x1..xn
 *   bits n+1..       pair coefficients in lexicographic (i,j) order,
 *                    (x1x2, x1x3, ..., x1xn, x2x3, ...)
 * Total width 1 + n + n(n-1)/2 (22 bits at n = 6).
 */
class QuadraticForm {
 public:
  explicit QuadraticForm(int n) : n_(n), quad_{0, 0}, linear_(0), constant_(false) {
    check_var_count(n);
  }

  static QuadraticForm from_linear(const LinearForm& l);

  int n() const { return n_; }
  int pair_count() const { return n_ * (n_ - 1) / 2; }
  int coeff_bits() const { return 1 + n_ + pair_count(); }

  // lexicographic index of the pair (i, j), 0 <= i < j < n
  static int pair_index(int n, int i, int j) {
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
  }

  bool quad(int i, int j) const {
    int k = pair_index(n_, i, j);
    return (quad_[k >> 6] >> (k & 63)) & 1u;
  }
  void set_quad(int i, int j, bool v) {
    int k = pair_index(n_, i, j);
    uint64_t bit = 1ULL << (k & 63);
    if (v)
      quad_[k >> 6] |= bit;
    else
      quad_[k >> 6] &= ~bit;
  }
  void toggle_quad(int i, int j) {
    int k = pair_index(n_, i, j);
    quad_[k >> 6] ^= 1ULL << (k & 63);
  }

  uint32_t linear_coeffs() const { return linear_; }
  bool linear(int i) const { return (linear_ >> i) & 1u; }
  void set_linear(int i, bool v) {
    if (v)
      linear_ |= (1u << i);
    else
      linear_ &= ~(1u << i);
  }
  bool constant_term() const { return constant_; }
  void set_constant_term(bool v) { constant_ = v; }

  bool is_zero() const { return quad_[0] == 0 && quad_[1] == 0 && linear_ == 0 && !constant_; }
  bool is_linear() const { return quad_[0] == 0 && quad_[1] == 0; }
  LinearForm linear_part() const { return LinearForm(n_, linear_, constant_); }

  // pure quadratic part comparison (the family relation)
  bool same_pure_part(const QuadraticForm& o) const {
    return n_ == o.n_ && quad_ == o.quad_;
  }

  bool eval(uint32_t x) const;

  // coefficient-wise XOR; pointwise sum mod 2
  QuadraticForm operator+(const QuadraticForm& o) const;

  // multilinear product of two linear forms (x_i^2 collapses to x_i)
  static QuadraticForm product(const LinearForm& a, const LinearForm& b);

  // d/dx_i: the sum of x_i's pair partners, with the linear coefficient
  // of x_i as the constant bit
  LinearForm derivative(int i) const;

  /* 0/1 truth mask over all 2^n assignments, 64 assignments per word,
   * assignment index = n-bit integer with x1 as least significant bit. */
  std::vector<uint64_t> value_mask() const;
  void value_mask_into(uint64_t* out) const;

  // number of assignments with q(x) = 1
  uint64_t support() const;

  uint64_t encode() const;
  static QuadraticForm decode(int n, uint64_t bits);

  bool operator==(const QuadraticForm& o) const = default;

  std::string to_string() const;
  static QuadraticForm parse(const std::string& text, int n);

 private:
  int n_;
  std::array<uint64_t, 2> quad_;  // up to 120 pair bits at n = 16
  uint32_t linear_;
  bool constant_;
};

/* Hyperbolic pairs plus a linear residual: sum of pairs[i].first *
 * pairs[i].second plus residual recomposes the decomposed form. */
struct WittDecomposition {
  std::vector<std::pair<LinearForm, LinearForm>> pairs;
  LinearForm residual;

  explicit WittDecomposition(int n) : residual(n) {}
  int rank() const { return static_cast<int>(pairs.size()); }
  QuadraticForm recompose() const;

  /* GF(2) rank of the pair forms' (plus nonconstant residual's)
   * variable-coefficient vectors; equals 2*rank (+1) when independent. */
  int coefficient_rank() const;
};

WittDecomposition witt_decompose(const QuadraticForm& q);
int witt_rank(const QuadraticForm& q);

/* Canonical representative x1x2 + ... + x_{2r-1}x_{2r} (+ x_{2r+1} if the
 * residual is nonconstant) (+ 1 if the residual's constant bit is set);
 * always one of the 2n + 2 normal forms. */
QuadraticForm witt_normal_form(const QuadraticForm& q);

// uniform over all 2^(1 + n + n(n-1)/2) forms
QuadraticForm random_form(int n, RandomStream& stream);

/* Support profile of the family of all forms sharing a rank-r pure part:
 * map from form support to the number of family members attaining it.
 * r >= 1 follows the closed form (2^(2r) high, 2^(2r) low, rest middle);
 * the affine r = 0 family is tallied by brute force. */
std::map<uint64_t, uint64_t> family_support_profile(int n, int r);

namespace detail {

// per-word truth masks of single variables (x1..x6 inside one 64-bit word)
inline constexpr uint64_t kVarMask[6] = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL};

inline uint64_t var_mask(int v, uint64_t block) {
  return v < 6 ? kVarMask[v] : (((block >> (v - 6)) & 1u) ? ~0ULL : 0ULL);
}

inline int table_words(int n) { return n <= 6 ? 1 : 1 << (n - 6); }

inline uint64_t word_fill(int n) {
  return n >= 6 ? ~0ULL : (1ULL << (1u << n)) - 1;
}

}  // namespace detail

}  // namespace charsum
