#include "charsum/characters.hpp"

#include <algorithm>
#include <bit>

namespace charsum {

namespace {

void check_same_n(int a, int b) {
  if (a != b)
    throw input_error("dimension mismatch: " + std::to_string(a) + " vs " +
                      std::to_string(b));
}

std::string strip(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

FunctionTable::FunctionTable(int n) : n_(n) {
  check_var_count(n);
  ones_.assign(detail::table_words(n), 0);
  twos_.assign(detail::table_words(n), 0);
}

int FunctionTable::value(uint64_t idx) const {
  uint64_t w = idx >> 6, b = idx & 63;
  if ((ones_[w] >> b) & 1u) return 1;
  if ((twos_[w] >> b) & 1u) return 2;
  return 0;
}

void FunctionTable::set_value(uint64_t idx, int v) {
  if (v < 0 || v > 2) throw input_error("table entries must be 0, 1 or 2");
  uint64_t w = idx >> 6, bit = 1ULL << (idx & 63);
  ones_[w] &= ~bit;
  twos_[w] &= ~bit;
  if (v == 1) ones_[w] |= bit;
  if (v == 2) twos_[w] |= bit;
}

uint64_t FunctionTable::support() const {
  uint64_t s = 0;
  for (size_t i = 0; i < ones_.size(); ++i)
    s += std::popcount(ones_[i] | twos_[i]);
  return s;
}

std::pair<uint64_t, uint64_t> FunctionTable::ones_twos() const {
  uint64_t o = 0, t = 0;
  for (size_t i = 0; i < ones_.size(); ++i) {
    o += std::popcount(ones_[i]);
    t += std::popcount(twos_[i]);
  }
  return {o, t};
}

FunctionTable FunctionTable::operator+(const FunctionTable& o) const {
  check_same_n(n_, o.n_);
  FunctionTable r(n_);
  for (size_t i = 0; i < ones_.size(); ++i)
    detail::add3(ones_[i], twos_[i], o.ones_[i], o.twos_[i], r.ones_[i], r.twos_[i]);
  return r;
}

FunctionTable FunctionTable::doubled() const {
  FunctionTable r(n_);
  r.ones_ = twos_;
  r.twos_ = ones_;
  return r;
}

bool FunctionTable::is_zero() const {
  for (size_t i = 0; i < ones_.size(); ++i)
    if (ones_[i] | twos_[i]) return false;
  return true;
}

void FunctionTable::set_masks(std::vector<uint64_t> ones, std::vector<uint64_t> twos) {
  if (ones.size() != ones_.size() || twos.size() != twos_.size())
    throw input_error("mask word count mismatch");
  ones_ = std::move(ones);
  twos_ = std::move(twos);
}

std::string FunctionTable::to_string() const {
  std::string out(size(), '0');
  for (uint64_t i = 0; i < size(); ++i) out[i] = static_cast<char>('0' + value(i));
  return out;
}

FunctionTable FunctionTable::parse(const std::string& text) {
  std::string body = strip(text);
  size_t len = body.size();
  int n = -1;
  for (int k = 1; k <= kMaxVars; ++k)
    if ((1ULL << k) == len) n = k;
  if (n < 0)
    throw parse_error("table length " + std::to_string(len) +
                      " is not a power of two in range");
  FunctionTable t(n);
  for (uint64_t i = 0; i < len; ++i) {
    char c = body[i];
    if (c < '0' || c > '2')
      throw parse_error("table entries must be 0, 1 or 2");
    t.set_value(i, c - '0');
  }
  return t;
}

CharacterSum::CharacterSum(int n, std::vector<QuadraticForm> terms) : n_(n) {
  check_var_count(n);
  for (const auto& q : terms) check_same_n(n, q.n());
  terms_ = std::move(terms);
}

void CharacterSum::add_term(const QuadraticForm& q) {
  check_same_n(n_, q.n());
  terms_.push_back(q);
}

std::string CharacterSum::to_string() const {
  std::string out;
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (i) out += " ; ";
    out += terms_[i].to_string();
  }
  return out;
}

CharacterSum CharacterSum::parse(const std::string& text, int n) {
  CharacterSum s(n);
  std::string body = strip(text);
  if (body.empty()) return s;  // empty sum
  size_t pos = 0;
  while (pos <= body.size()) {
    size_t next = body.find(';', pos);
    std::string piece = next == std::string::npos ? body.substr(pos)
                                                  : body.substr(pos, next - pos);
    s.add_term(QuadraticForm::parse(piece, n));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return s;
}

FunctionTable character_table(const QuadraticForm& q) {
  FunctionTable t(q.n());
  std::vector<uint64_t> mask = q.value_mask();
  uint64_t fill = detail::word_fill(q.n());
  std::vector<uint64_t> ones(mask.size()), twos(mask.size());
  for (size_t i = 0; i < mask.size(); ++i) {
    ones[i] = ~mask[i] & fill;  // 2^0 = 1 where q vanishes
    twos[i] = mask[i];
  }
  t.set_masks(std::move(ones), std::move(twos));
  return t;
}

FunctionTable sum_table(const CharacterSum& s) {
  FunctionTable acc(s.n());
  for (const auto& q : s.terms()) acc = acc + character_table(q);
  return acc;
}

FunctionTable and_table(int n) {
  FunctionTable t(n);
  t.set_value((1ULL << n) - 1, 1);
  return t;
}

CharacterSum and_product_construction(int n) {
  check_var_count(n);
  if (n % 2 != 0)
    throw input_error("product construction needs even n, got " + std::to_string(n));
  std::vector<QuadraticForm> terms{QuadraticForm(n)};  // empty product = 2^0
  for (int k = 0; k < n / 2; ++k) {
    QuadraticForm one(n), pair(n);
    one.set_constant_term(true);
    pair.set_quad(2 * k, 2 * k + 1, true);
    std::vector<QuadraticForm> next;
    next.reserve(terms.size() * 2);
    for (const auto& t : terms) {
      next.push_back(t + one);
      next.push_back(t + pair);
    }
    terms = std::move(next);
  }
  return CharacterSum(n, std::move(terms));
}

namespace {

/* 2^(a*b) = 2^1 + 2^(a+1) + 2^(b+1) + 2^(a+b): multiply an expansion by
 * one hyperbolic pair, keeping every term linear in the decomposition's
 * basis. */
void multiply_by_pair_identity(std::vector<LinearForm>& terms,
                               const LinearForm& a, const LinearForm& b) {
  int n = a.n();
  LinearForm one(n);
  one.set_constant_term(true);
  std::vector<LinearForm> next;
  next.reserve(terms.size() * 4);
  for (const auto& t : terms) {
    next.push_back(t + one);
    next.push_back(t + a + one);
    next.push_back(t + b + one);
    next.push_back(t + a + b);
  }
  terms = std::move(next);
}

}  // namespace

CharacterSum expand_character(const QuadraticForm& q) {
  WittDecomposition d = witt_decompose(q);
  std::vector<LinearForm> linear_terms{d.residual};
  for (const auto& [a, b] : d.pairs) multiply_by_pair_identity(linear_terms, a, b);
  std::vector<QuadraticForm> terms;
  terms.reserve(linear_terms.size());
  for (const auto& l : linear_terms) terms.push_back(QuadraticForm::from_linear(l));
  return CharacterSum(q.n(), std::move(terms));
}

CharacterSum expand_to_full_rank(const QuadraticForm& q) {
  int n = q.n();
  if (n % 2 != 0)
    throw input_error("full rank is defined for even n, got " + std::to_string(n));
  WittDecomposition d = witt_decompose(q);

  // complete the pair forms to a basis, scanning x1, x2, ... greedily
  std::vector<uint32_t> rows;
  std::vector<LinearForm> basis;
  auto reduce = [&rows](uint32_t v) {
    for (uint32_t r : rows) {
      uint32_t low = r & -r;
      if (v & low) v ^= r;
    }
    return v;
  };
  auto insert_row = [&rows, &reduce](uint32_t v) {
    v = reduce(v);
    if (!v) return false;
    for (uint32_t& r : rows)
      if (r & (v & -v)) r ^= v;
    rows.push_back(v);
    return true;
  };
  for (const auto& [a, b] : d.pairs) {
    insert_row(a.coeffs());
    insert_row(b.coeffs());
    basis.push_back(a);
    basis.push_back(b);
  }
  for (int i = 0; i < n && static_cast<int>(basis.size()) < n; ++i) {
    LinearForm e(n);
    e.set_coeff(i, true);
    if (insert_row(e.coeffs())) basis.push_back(e);
  }

  // full-rank core: all n/2 pairs over the completed basis, residual folded in
  QuadraticForm core = QuadraticForm::from_linear(d.residual);
  for (int k = 0; k < n / 2; ++k)
    core = core + QuadraticForm::product(basis[2 * k], basis[2 * k + 1]);

  std::vector<LinearForm> shifts{LinearForm(n)};
  for (int k = d.rank(); k < n / 2; ++k)
    multiply_by_pair_identity(shifts, basis[2 * k], basis[2 * k + 1]);

  std::vector<QuadraticForm> terms;
  terms.reserve(shifts.size());
  for (const auto& l : shifts) terms.push_back(core + QuadraticForm::from_linear(l));
  return CharacterSum(n, std::move(terms));
}

CharacterSum shift_sum(const CharacterSum& s, const QuadraticForm& r) {
  check_same_n(s.n(), r.n());
  std::vector<QuadraticForm> terms;
  terms.reserve(s.terms().size());
  for (const auto& t : s.terms()) terms.push_back(t + r);
  return CharacterSum(s.n(), std::move(terms));
}

MultilinearPoly::MultilinearPoly(int n) : n_(n) {
  check_var_count(n);
  coeffs_.assign(1ULL << n, 0);
}

void MultilinearPoly::set_coeff(uint32_t subset, int v) {
  if (v < 0 || v > 2) throw input_error("coefficients must be 0, 1 or 2");
  coeffs_[subset] = static_cast<uint8_t>(v);
}

int MultilinearPoly::degree() const {
  int deg = 0;
  for (uint64_t s = 0; s < coeffs_.size(); ++s)
    if (coeffs_[s]) deg = std::max(deg, std::popcount(s));
  return deg;
}

int MultilinearPoly::eval(uint32_t x) const {
  // sum of coefficients over subsets of x
  int acc = 0;
  uint32_t sub = x;
  while (true) {
    acc += coeffs_[sub];
    if (sub == 0) break;
    sub = (sub - 1) & x;
  }
  return acc % 3;
}

FunctionTable MultilinearPoly::to_table() const {
  // zeta transform: values are subset sums of the coefficients
  std::vector<uint8_t> v(coeffs_);
  for (int i = 0; i < n_; ++i)
    for (uint64_t x = 0; x < v.size(); ++x)
      if (x & (1ULL << i)) v[x] = static_cast<uint8_t>((v[x] + v[x ^ (1ULL << i)]) % 3);
  FunctionTable t(n_);
  for (uint64_t x = 0; x < v.size(); ++x) t.set_value(x, v[x]);
  return t;
}

MultilinearPoly interpolate(const FunctionTable& t) {
  int n = t.n();
  std::vector<uint8_t> c(1ULL << n);
  for (uint64_t x = 0; x < c.size(); ++x) c[x] = static_cast<uint8_t>(t.value(x));
  // Moebius transform over Z3
  for (int i = 0; i < n; ++i)
    for (uint64_t x = 0; x < c.size(); ++x)
      if (x & (1ULL << i)) c[x] = static_cast<uint8_t>((3 + c[x] - c[x ^ (1ULL << i)]) % 3);
  MultilinearPoly p(n);
  for (uint64_t s = 0; s < c.size(); ++s) p.set_coeff(s, c[s]);
  return p;
}

int poly_degree(const MultilinearPoly& p) { return p.degree(); }

bool check_tradeoff(const FunctionTable& t, uint64_t w) {
  if (w < 1) throw input_error("weight must be at least 1");
  return w * w * t.support() >= (1ULL << t.n());
}

}  // namespace charsum
