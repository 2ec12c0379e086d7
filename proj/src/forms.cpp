#include "charsum/forms.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>

namespace charsum {

void check_var_count(int n) {
  if (n < 1 || n > kMaxVars)
    throw input_error("variable count must be between 1 and 16, got " +
                      std::to_string(n));
}

namespace {

void check_same_n(int a, int b) {
  if (a != b)
    throw input_error("dimension mismatch: " + std::to_string(a) + " vs " +
                      std::to_string(b));
}

int parse_number(const std::string& s) {
  try {
    size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw parse_error("expected a number, got '" + s + "'");
    return v;
  } catch (const std::out_of_range&) {
    throw parse_error("number out of range: '" + s + "'");
  } catch (const std::invalid_argument&) {
    throw parse_error("expected a number, got '" + s + "'");
  }
}

void append_term(std::string& out, const std::string& term) {
  if (!out.empty()) out += "+";
  out += term;
}

// one term of the "x1x2+x3+1" grammar; returns {i, j} with j = -1 for a
// linear term and i = j = -1 for a constant
struct Term {
  int i = -1, j = -1;
  bool constant = false;
  bool zero = false;
};

Term parse_term(const std::string& text, int n) {
  Term t;
  if (text == "0") {
    t.zero = true;
    return t;
  }
  if (text == "1") {
    t.constant = true;
    return t;
  }
  size_t pos = 0;
  int idx[2] = {-1, -1};
  int count = 0;
  while (pos < text.size()) {
    if (text[pos] != 'x' || count == 2)
      throw parse_error("bad term '" + text + "'");
    ++pos;
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (start == pos) throw parse_error("bad term '" + text + "'");
    int v = parse_number(text.substr(start, pos - start));
    if (v < 1 || v > n)
      throw parse_error("variable x" + std::to_string(v) +
                        " out of range for n=" + std::to_string(n));
    idx[count++] = v - 1;
  }
  if (count == 0) throw parse_error("bad term '" + text + "'");
  if (count == 1) {
    t.i = idx[0];
    return t;
  }
  if (idx[0] == idx[1])
    throw parse_error("diagonal term x" + std::to_string(idx[0] + 1) +
                      "x" + std::to_string(idx[1] + 1) + " is not multilinear");
  t.i = std::min(idx[0], idx[1]);
  t.j = std::max(idx[0], idx[1]);
  return t;
}

std::string strip(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

LinearForm LinearForm::operator+(const LinearForm& o) const {
  check_same_n(n_, o.n_);
  return LinearForm(n_, coeffs_ ^ o.coeffs_, constant_ != o.constant_);
}

std::string LinearForm::to_string() const {
  std::string out;
  for (int i = 0; i < n_; ++i)
    if (coeff(i)) append_term(out, "x" + std::to_string(i + 1));
  if (constant_) append_term(out, "1");
  return out.empty() ? "0" : out;
}

LinearForm LinearForm::parse(const std::string& text, int n) {
  QuadraticForm q = QuadraticForm::parse(text, n);
  if (!q.is_linear())
    throw parse_error("expected a linear form, got '" + text + "'");
  return q.linear_part();
}

QuadraticForm QuadraticForm::from_linear(const LinearForm& l) {
  QuadraticForm q(l.n());
  q.linear_ = l.coeffs();
  q.constant_ = l.constant_term();
  return q;
}

bool QuadraticForm::eval(uint32_t x) const {
  int acc = __builtin_popcount(linear_ & x) + (constant_ ? 1 : 0);
  for (int i = 0; i < n_; ++i) {
    if (!((x >> i) & 1u)) continue;
    for (int j = i + 1; j < n_; ++j)
      if (((x >> j) & 1u) && quad(i, j)) ++acc;
  }
  return acc & 1;
}

QuadraticForm QuadraticForm::operator+(const QuadraticForm& o) const {
  check_same_n(n_, o.n_);
  QuadraticForm r(n_);
  r.quad_[0] = quad_[0] ^ o.quad_[0];
  r.quad_[1] = quad_[1] ^ o.quad_[1];
  r.linear_ = linear_ ^ o.linear_;
  r.constant_ = constant_ != o.constant_;
  return r;
}

QuadraticForm QuadraticForm::product(const LinearForm& a, const LinearForm& b) {
  check_same_n(a.n(), b.n());
  int n = a.n();
  QuadraticForm r(n);
  uint32_t av = a.coeffs(), bv = b.coeffs();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      bool c = (a.coeff(i) && b.coeff(j)) != (a.coeff(j) && b.coeff(i));
      if (c) r.set_quad(i, j, true);
    }
  // x_i^2 = x_i over bit assignments, so diagonal products turn linear
  uint32_t lin = (av & bv);
  if (b.constant_term()) lin ^= av;
  if (a.constant_term()) lin ^= bv;
  r.linear_ = lin;
  r.constant_ = a.constant_term() && b.constant_term();
  return r;
}

LinearForm QuadraticForm::derivative(int i) const {
  LinearForm d(n_);
  for (int j = 0; j < n_; ++j) {
    if (j == i) continue;
    if (quad(std::min(i, j), std::max(i, j))) d.set_coeff(j, true);
  }
  d.set_constant_term(linear(i));
  return d;
}

void QuadraticForm::value_mask_into(uint64_t* out) const {
  int words = detail::table_words(n_);
  uint64_t fill = detail::word_fill(n_);
  for (int b = 0; b < words; ++b) {
    uint64_t m = constant_ ? ~0ULL : 0ULL;
    uint32_t lin = linear_;
    while (lin) {
      int v = std::countr_zero(lin);
      lin &= lin - 1;
      m ^= detail::var_mask(v, b);
    }
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        if (quad(i, j))
          m ^= detail::var_mask(i, b) & detail::var_mask(j, b);
    out[b] = m & fill;
  }
}

std::vector<uint64_t> QuadraticForm::value_mask() const {
  std::vector<uint64_t> out(detail::table_words(n_));
  value_mask_into(out.data());
  return out;
}

uint64_t QuadraticForm::support() const {
  uint64_t s = 0;
  for (uint64_t w : value_mask()) s += std::popcount(w);
  return s;
}

uint64_t QuadraticForm::encode() const {
  if (coeff_bits() > 64)
    throw capacity_error("form encoding exceeds 64 bits at n=" +
                         std::to_string(n_));
  uint64_t bits = constant_ ? 1 : 0;
  bits |= static_cast<uint64_t>(linear_) << 1;
  bits |= quad_[0] << (1 + n_);
  return bits;
}

QuadraticForm QuadraticForm::decode(int n, uint64_t bits) {
  QuadraticForm q(n);
  if (q.coeff_bits() > 64)
    throw capacity_error("form encoding exceeds 64 bits at n=" + std::to_string(n));
  q.constant_ = bits & 1;
  q.linear_ = static_cast<uint32_t>((bits >> 1) & ((1u << n) - 1));
  q.quad_[0] = (bits >> (1 + n)) & ((q.pair_count() == 64) ? ~0ULL : ((1ULL << q.pair_count()) - 1));
  return q;
}

std::string QuadraticForm::to_string() const {
  std::string out;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (quad(i, j))
        append_term(out, "x" + std::to_string(i + 1) + "x" + std::to_string(j + 1));
  for (int i = 0; i < n_; ++i)
    if (linear(i)) append_term(out, "x" + std::to_string(i + 1));
  if (constant_) append_term(out, "1");
  return out.empty() ? "0" : out;
}

QuadraticForm QuadraticForm::parse(const std::string& text, int n) {
  check_var_count(n);
  QuadraticForm q(n);
  std::string body = strip(text);
  if (body.empty()) throw parse_error("empty form string");
  size_t pos = 0;
  bool any = false;
  while (pos <= body.size()) {
    size_t next = body.find('+', pos);
    std::string raw = strip(next == std::string::npos ? body.substr(pos)
                                                      : body.substr(pos, next - pos));
    if (raw.empty()) throw parse_error("empty term in '" + text + "'");
    Term t = parse_term(raw, n);
    any = true;
    if (t.constant)
      q.set_constant_term(!q.constant_term());
    else if (t.j >= 0)
      q.toggle_quad(t.i, t.j);
    else if (t.i >= 0)
      q.set_linear(t.i, !q.linear(t.i));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (!any) throw parse_error("empty form string");
  return q;
}

QuadraticForm WittDecomposition::recompose() const {
  QuadraticForm acc = QuadraticForm::from_linear(residual);
  for (const auto& [a, b] : pairs) acc = acc + QuadraticForm::product(a, b);
  return acc;
}

int WittDecomposition::coefficient_rank() const {
  std::vector<uint32_t> rows;
  for (const auto& [a, b] : pairs) {
    rows.push_back(a.coeffs());
    rows.push_back(b.coeffs());
  }
  if (!residual.is_constant()) rows.push_back(residual.coeffs());
  int rank = 0;
  for (size_t c = 0; c < 32 && rank < static_cast<int>(rows.size()); ++c) {
    uint32_t bit = 1u << c;
    size_t pivot = rank;
    while (pivot < rows.size() && !(rows[pivot] & bit)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (size_t r = 0; r < rows.size(); ++r)
      if (r != static_cast<size_t>(rank) && (rows[r] & bit)) rows[r] ^= rows[rank];
    ++rank;
  }
  return rank;
}

WittDecomposition witt_decompose(const QuadraticForm& q) {
  int n = q.n();
  WittDecomposition d(n);
  QuadraticForm rest = q;
  for (int i = 0; i < n && !rest.is_linear(); ++i) {
    int j = -1;
    for (int cand = i + 1; cand < n; ++cand)
      if (rest.quad(i, cand)) {
        j = cand;
        break;
      }
    if (j < 0) continue;
    LinearForm a = rest.derivative(i);  // contains x_j
    LinearForm b = rest.derivative(j);  // contains x_i
    rest = rest + QuadraticForm::product(a, b);
    d.pairs.emplace_back(a, b);
  }
  if (!rest.is_linear())
    throw std::logic_error("elimination left quadratic terms behind");
  d.residual = rest.linear_part();
  return d;
}

int witt_rank(const QuadraticForm& q) { return witt_decompose(q).rank(); }

QuadraticForm witt_normal_form(const QuadraticForm& q) {
  WittDecomposition d = witt_decompose(q);
  int n = q.n();
  QuadraticForm nf(n);
  for (int k = 0; k < d.rank(); ++k) nf.set_quad(2 * k, 2 * k + 1, true);
  if (!d.residual.is_constant()) nf.set_linear(2 * d.rank(), true);
  nf.set_constant_term(d.residual.constant_term());
  return nf;
}

QuadraticForm random_form(int n, RandomStream& stream) {
  check_var_count(n);
  QuadraticForm q(n);
  int bits = q.coeff_bits();
  if (bits <= 64) return QuadraticForm::decode(n, stream.next_bits(bits));
  // wide case: fill the canonical layout from successive words
  uint64_t w = stream.next_u64();
  int have = 64;
  auto draw = [&]() {
    if (have == 0) {
      w = stream.next_u64();
      have = 64;
    }
    bool b = w & 1;
    w >>= 1;
    --have;
    return b;
  };
  q.set_constant_term(draw());
  for (int i = 0; i < n; ++i) q.set_linear(i, draw());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) q.set_quad(i, j, draw());
  return q;
}

std::map<uint64_t, uint64_t> family_support_profile(int n, int r) {
  check_var_count(n);
  if (r < 0 || r > n / 2)
    throw input_error("rank " + std::to_string(r) + " out of range for n=" +
                      std::to_string(n));
  std::map<uint64_t, uint64_t> profile;
  uint64_t family = 1ULL << (n + 1);
  if (r == 0) {
    // affine family; the closed form above is stated for rank >= 1
    for (uint64_t bits = 0; bits < family; ++bits) {
      QuadraticForm q = QuadraticForm::decode(n, bits);
      profile[q.support()] += 1;
    }
    return profile;
  }
  uint64_t half = 1ULL << (n - 1);
  uint64_t off = 1ULL << (n - r - 1);
  uint64_t extreme = 1ULL << (2 * r);
  profile[half + off] = extreme;
  profile[half - off] = extreme;
  profile[half] = family - 2 * extreme;
  return profile;
}

}  // namespace charsum
