#include <map>
#include <set>

#include "charsum/forms.hpp"
#include "doctest.h"

using namespace charsum;

namespace {

QuadraticForm form(const std::string& text, int n) {
  return QuadraticForm::parse(text, n);
}

// brute-force pointwise equality over all 2^n assignments
bool pointwise_equal(const QuadraticForm& a, const QuadraticForm& b) {
  if (a.n() != b.n()) return false;
  for (uint32_t x = 0; x < (1u << a.n()); ++x)
    if (a.eval(x) != b.eval(x)) return false;
  return true;
}

uint64_t brute_support(const QuadraticForm& q) {
  uint64_t s = 0;
  for (uint32_t x = 0; x < (1u << q.n()); ++x) s += q.eval(x);
  return s;
}

}  // namespace

TEST_CASE("form evaluation") {
  CHECK(form("0", 4).eval(0b1010) == 0);
  CHECK(form("0", 4).eval(0) == 0);
  // x1x2 + x3x4 + 1 at the all-ones point: 1 + 1 + 1 = 1 mod 2
  CHECK(form("x1x2+x3x4+1", 4).eval(0b1111) == 1);
  // x1x2 + x3 at (1,1,0,0): 1 + 0
  CHECK(form("x1x2+x3", 4).eval(0b0011) == 1);
}

TEST_CASE("form addition is coefficient-wise xor") {
  CHECK((form("x1x2", 4) + form("x1x2", 4)) == form("0", 4));
  CHECK((form("x1x2", 4) + form("1", 4)) == form("x1x2+1", 4));
  CHECK((form("x1x2+x3", 4) + form("x3+1", 4)) == form("x1x2+1", 4));

  RandomStream rng(7);
  for (int i = 0; i < 200; ++i) {
    QuadraticForm a = random_form(5, rng), b = random_form(5, rng);
    QuadraticForm c = a + b;
    for (uint32_t x = 0; x < 32; ++x)
      CHECK(c.eval(x) == (a.eval(x) != b.eval(x)));
  }
}

TEST_CASE("form text round trips") {
  CHECK(form("x1x2+x3x4+x5+1", 6).to_string() == "x1x2+x3x4+x5+1");
  CHECK(form("1+x5+x4x3+x2x1", 6).to_string() == "x1x2+x3x4+x5+1");
  CHECK(form("x2x1", 4).to_string() == "x1x2");
  CHECK(form("0", 4).to_string() == "0");
  CHECK(form("x3+x3", 4).to_string() == "0");  // repeated terms cancel
  CHECK_THROWS_AS(form("x1x1", 4), parse_error);
  CHECK_THROWS_AS(form("x0", 4), parse_error);
  CHECK_THROWS_AS(form("x99999999999999999999", 4), parse_error);
  CHECK_THROWS_AS(form("x5", 4), parse_error);
  CHECK_THROWS_AS(form("", 4), parse_error);
  CHECK_THROWS_AS(form("y3", 4), parse_error);
  CHECK_THROWS_AS(QuadraticForm::parse("x1", 0), input_error);
}

TEST_CASE("value mask agrees with direct evaluation") {
  RandomStream rng(11);
  for (int n : {1, 3, 5, 6, 8}) {
    for (int i = 0; i < 50; ++i) {
      QuadraticForm q = random_form(n, rng);
      auto mask = q.value_mask();
      for (uint32_t x = 0; x < (1u << n); ++x)
        CHECK(((mask[x >> 6] >> (x & 63)) & 1) == static_cast<uint64_t>(q.eval(x)));
      CHECK(q.support() == brute_support(q));
    }
  }
}

TEST_CASE("decomposition of simple forms") {
  SUBCASE("single pair") {
    WittDecomposition d = witt_decompose(form("x1x2", 4));
    REQUIRE(d.rank() == 1);
    // derivative convention: first = d/dx1 = x2, second = d/dx2 = x1
    CHECK(d.pairs[0].first == LinearForm::parse("x2", 4));
    CHECK(d.pairs[0].second == LinearForm::parse("x1", 4));
    CHECK(d.residual.is_zero());
    CHECK(d.recompose() == form("x1x2", 4));
  }
  SUBCASE("shared variable") {
    QuadraticForm q = form("x1x2+x1x3", 4);
    WittDecomposition d = witt_decompose(q);
    REQUIRE(d.rank() == 1);
    CHECK(d.pairs[0].first == LinearForm::parse("x2+x3", 4));
    CHECK(d.pairs[0].second == LinearForm::parse("x1", 4));
    CHECK(d.residual.is_zero());
    CHECK(pointwise_equal(d.recompose(), q));
  }
  SUBCASE("triangle has rank 1 and residual x3") {
    QuadraticForm q = form("x1x2+x1x3+x2x3", 3);
    WittDecomposition d = witt_decompose(q);
    CHECK(d.rank() == 1);
    CHECK(d.residual == LinearForm::parse("x3", 3));
    CHECK(pointwise_equal(d.recompose(), q));
  }
  SUBCASE("full rank at n=6") {
    CHECK(witt_rank(form("x1x2+x3x4+x5x6", 6)) == 3);
  }
  SUBCASE("degenerate inputs decompose to rank 0") {
    WittDecomposition d = witt_decompose(form("x2+1", 4));
    CHECK(d.rank() == 0);
    CHECK(d.residual == LinearForm::parse("x2+1", 4));
    CHECK(witt_rank(form("1", 4)) == 0);
    CHECK(witt_rank(form("0", 4)) == 0);
  }
}

TEST_CASE("witt rank basics") {
  CHECK(witt_rank(form("x1+x3+1", 4)) == 0);
  CHECK(witt_rank(form("x1x2+x3x4", 4)) == 2);
  CHECK(witt_rank(form("x1x2+x1x3+x2x3", 4)) == 1);
}

TEST_CASE("decomposition invariants on random forms") {
  RandomStream rng(2024);
  for (int n : {4, 5, 6, 8}) {
    for (int i = 0; i < 10000; ++i) {
      QuadraticForm q = random_form(n, rng);
      WittDecomposition d = witt_decompose(q);
      REQUIRE(d.recompose() == q);  // coefficient identity, hence pointwise
      CHECK(d.rank() <= n / 2);
      int expected = 2 * d.rank() + (d.residual.is_constant() ? 0 : 1);
      CHECK(d.coefficient_rank() == expected);
    }
  }
}

TEST_CASE("rank is invariant under linear and constant perturbations") {
  RandomStream rng(99);
  for (int n : {4, 6}) {
    for (int i = 0; i < 2000; ++i) {
      QuadraticForm q = random_form(n, rng);
      QuadraticForm delta(n);  // affine perturbation
      uint64_t bits = rng.next_bits(n + 1);
      delta = QuadraticForm::decode(n, bits);
      CHECK(witt_rank(q) == witt_rank(q + delta));
    }
  }
}

TEST_CASE("normal forms") {
  CHECK(witt_normal_form(form("1", 4)) == form("1", 4));
  CHECK(witt_normal_form(form("x1x2+x3", 4)) == form("x1x2+x3", 4));
  CHECK(witt_normal_form(form("x1x2+x1x3", 4)) == form("x1x2", 4));
  CHECK(witt_normal_form(form("x1x2+x1", 2)) == form("x1x2", 2));

  // membership in the 2n + 2 list, and rank equality across a family
  RandomStream rng(5);
  std::set<uint64_t> allowed;
  int n = 6;
  for (int r = 0; r <= 3; ++r) {
    QuadraticForm base(n);
    for (int k = 0; k < r; ++k) base.set_quad(2 * k, 2 * k + 1, true);
    if (2 * r < n) {
      QuadraticForm with_lin = base;
      with_lin.set_linear(2 * r, true);
      allowed.insert(with_lin.encode());
      with_lin.set_constant_term(true);
      allowed.insert(with_lin.encode());
    }
    allowed.insert(base.encode());
    base.set_constant_term(true);
    allowed.insert(base.encode());
  }
  CHECK(allowed.size() == 2 * n + 2);
  for (int i = 0; i < 20000; ++i) {
    QuadraticForm q = random_form(n, rng);
    QuadraticForm nf = witt_normal_form(q);
    CHECK(allowed.count(nf.encode()) == 1);
    CHECK(witt_rank(nf) == witt_rank(q));
  }
}

TEST_CASE("random forms are deterministic and uniform") {
  SUBCASE("fixed seed reproduces the form") {
    RandomStream a(42), b(42);
    for (int i = 0; i < 10; ++i) CHECK(random_form(6, a) == random_form(6, b));
  }
  SUBCASE("wide coefficient layouts draw and decompose too") {
    RandomStream a(42), b(42);
    for (int i = 0; i < 20; ++i) {
      QuadraticForm q = random_form(12, a);
      CHECK(q == random_form(12, b));
      CHECK(witt_decompose(q).recompose() == q);
    }
  }
  SUBCASE("n=1 hits all four forms roughly equally") {
    RandomStream rng(1);
    std::map<uint64_t, int> counts;
    for (int i = 0; i < 40000; ++i) counts[random_form(1, rng).encode()] += 1;
    REQUIRE(counts.size() == 4);
    for (const auto& [k, c] : counts) CHECK(std::abs(c - 10000) < 500);
  }
  SUBCASE("per-coefficient marginals at n=6 pass a chi-square check") {
    // 1e5 draws, 1 dof, p > 0.001 <=> |count - 50000| < 3.29 * sqrt(25000)
    RandomStream rng(0);
    const int draws = 100000;
    int bits = QuadraticForm(6).coeff_bits();
    std::vector<int> counts(bits, 0);
    for (int i = 0; i < draws; ++i) {
      uint64_t enc = random_form(6, rng).encode();
      for (int b = 0; b < bits; ++b)
        if ((enc >> b) & 1) counts[b] += 1;
    }
    for (int b = 0; b < bits; ++b)
      CHECK(std::abs(counts[b] - draws / 2) < 521);
  }
}

TEST_CASE("family support profiles") {
  SUBCASE("closed form at n=4, r=1") {
    auto p = family_support_profile(4, 1);
    REQUIRE(p.size() == 3);
    CHECK(p[12] == 4);
    CHECK(p[4] == 4);
    CHECK(p[8] == 24);
    // brute force over the family of x1x2
    std::map<uint64_t, uint64_t> brute;
    for (uint32_t affine = 0; affine < 32; ++affine) {
      QuadraticForm q = form("x1x2", 4) + QuadraticForm::decode(4, affine);
      brute[brute_support(q)] += 1;
    }
    CHECK(brute == std::map<uint64_t, uint64_t>(p.begin(), p.end()));
  }
  SUBCASE("full-rank family at n=6 has no middle supports") {
    // 2^(n-1) +- 2^(n-r-1) = 32 +- 4, and 128 = 64 + 64 members
    auto p = family_support_profile(6, 3);
    CHECK(p[36] == 64);
    CHECK(p[28] == 64);
    CHECK(p[32] == 0);
    std::map<uint64_t, uint64_t> brute;
    for (uint32_t affine = 0; affine < 128; ++affine) {
      QuadraticForm q = form("x1x2+x3x4+x5x6", 6) + QuadraticForm::decode(6, affine);
      brute[brute_support(q)] += 1;
    }
    CHECK(brute.size() == 2);
    CHECK(brute[36] == 64);
    CHECK(brute[28] == 64);
  }
  SUBCASE("affine r=0 family is tallied directly") {
    auto p = family_support_profile(2, 0);
    CHECK(p[0] == 1);   // the zero form
    CHECK(p[4] == 1);   // the constant 1
    CHECK(p[2] == 6);   // nonconstant affine forms
  }
  CHECK_THROWS_AS(family_support_profile(4, 3), input_error);
  CHECK_THROWS_AS(family_support_profile(4, -1), input_error);
}

TEST_CASE("support law per family, exhaustive at n=4") {
  int n = 4;
  // group all 2^11 forms by pure quadratic part
  std::map<uint64_t, std::map<uint64_t, uint64_t>> by_family;
  std::map<uint64_t, int> family_rank;
  for (uint32_t bits = 0; bits < (1u << 11); ++bits) {
    QuadraticForm q = QuadraticForm::decode(n, bits);
    uint64_t pure = bits >> (1 + n);
    by_family[pure][q.support()] += 1;
    auto it = family_rank.find(pure);
    if (it == family_rank.end())
      family_rank[pure] = witt_rank(q);
    else
      CHECK(it->second == witt_rank(q));
  }
  for (const auto& [pure, hist] : by_family) {
    auto profile = family_support_profile(n, family_rank[pure]);
    std::erase_if(profile, [](const auto& kv) { return kv.second == 0; });
    CHECK(hist == profile);
  }
}
