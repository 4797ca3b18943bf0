#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <braidmod/braidmod.hpp>

using namespace braidmod;
using Catch::Matchers::WithinAbs;

TEST_CASE("classify: pseudo-Anosov example") {
  ThurstonClass3 c = classify_3(parse_braid("B3: 1 -2"));
  auto* pa = std::get_if<PseudoAnosov>(&c);
  REQUIRE(pa != nullptr);
  CHECK(pa->trace == 3);
  CHECK_THAT(pa->entropy.value, WithinAbs(0.9624236501192069, 1e-15));
  CHECK_THAT(pa->module.value, WithinAbs(1.6321256513182483, 1e-15));
  CHECK_THAT(pa->dilatation, WithinAbs(6.854101966249686, 1e-12));
  CHECK_THAT(pa->module.value * pa->entropy.value, WithinAbs(M_PI / 2.0, 1e-13));
  REQUIRE(pa->entropy.exact.has_value());
  CHECK(pa->entropy.exact->trace == 3);
  CHECK(pa->entropy.exact->divisor == 1);
}

TEST_CASE("classify: parabolic twists") {
  {
    auto c = classify_3(parse_braid("B3: 1 1 1"));
    auto* rp = std::get_if<ReducibleParabolic>(&c);
    REQUIRE(rp != nullptr);
    CHECK(rp->k == 3);
    CHECK(rp->ell == 0);
  }
  {
    auto c = classify_3(parse_braid("B3: 2 2 2"));
    auto* rp = std::get_if<ReducibleParabolic>(&c);
    REQUIRE(rp != nullptr);
    CHECK(rp->k == 3);
    CHECK(rp->ell == 0);
  }
  {
    auto c = classify_3(parse_braid("B3: -1 -1 -1"));
    auto* rp = std::get_if<ReducibleParabolic>(&c);
    REQUIRE(rp != nullptr);
    CHECK(rp->k == -3);
    CHECK(rp->ell == 0);
  }
  {
    // sigma_1^3 Delta^2: twist 3 with one full twist of framing
    auto c = classify_3(compose(parse_braid("B3: 1 1 1"), inverse_power(garside(3), 2)));
    auto* rp = std::get_if<ReducibleParabolic>(&c);
    REQUIRE(rp != nullptr);
    CHECK(rp->k == 3);
    CHECK(rp->ell == 1);
  }
}

TEST_CASE("classify: periodic classes") {
  {
    auto c = classify_3(parse_braid("B3: 1 2"));
    auto* p = std::get_if<Periodic>(&c);
    REQUIRE(p != nullptr);
    CHECK(p->circular);
    CHECK(p->power == 1);
  }
  {
    auto c = classify_3(garside(3));
    auto* p = std::get_if<Periodic>(&c);
    REQUIRE(p != nullptr);
    CHECK_FALSE(p->circular);
    CHECK(p->power == 1);
  }
  {
    // full twist = (sigma_1 sigma_2)^3
    auto c = classify_3(inverse_power(garside(3), 2));
    auto* p = std::get_if<Periodic>(&c);
    REQUIRE(p != nullptr);
    CHECK(p->circular);
    CHECK(p->power == 3);
  }
  {
    auto c = classify_3(parse_braid("B3:"));
    auto* p = std::get_if<Periodic>(&c);
    REQUIRE(p != nullptr);
    CHECK(p->circular);
    CHECK(p->power == 0);
  }
  {
    auto c = classify_3(inverse(parse_braid("B3: 1 2")));
    auto* p = std::get_if<Periodic>(&c);
    REQUIRE(p != nullptr);
    CHECK(p->circular);
    CHECK(p->power == -1);
  }
}

TEST_CASE("classification is total on short random words") {
  std::mt19937 rng(1234);
  static const int letters[4] = {1, -1, 2, -2};
  std::uniform_int_distribution<int> pick(0, 3), len(0, 8);
  for (int trial = 0; trial < 300; ++trial) {
    BraidWord w;
    w.strands = 3;
    int n = len(rng);
    for (int i = 0; i < n; ++i) w.letters.push_back(letters[pick(rng)]);
    CHECK_NOTHROW(classify_3(w));
  }
}

TEST_CASE("word problem") {
  CHECK(is_trivial_3(parse_braid("B3:")));
  CHECK(is_trivial_3(parse_braid("B3: 1 -1")));
  CHECK(is_trivial_3(parse_braid("B3: 1 2 1 -1 -2 -1")));
  CHECK(is_trivial_3(commutator(parse_braid("B3: 1 1"), inverse_power(garside(3), 2))));
  CHECK_FALSE(is_trivial_3(parse_braid("B3: 1 -2")));
  // theta kernel: Delta^4 maps to the identity matrix but is not trivial
  BraidWord big = inverse_power(garside(3), 4);
  REQUIRE(theta(big).is_identity());
  CHECK_FALSE(is_trivial_3(big));
  CHECK_THROWS_MATCHES(is_trivial_3(parse_braid("B2: 1 -1")), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == Err::NotThreeStrands; }));
}

TEST_CASE("equality of words") {
  CHECK(equal_3(parse_braid("B3: 1 2 1"), parse_braid("B3: 2 1 2")));
  CHECK(equal_3(parse_braid("B3: 1 -1 2"), parse_braid("B3: 2")));
  CHECK_FALSE(equal_3(parse_braid("B3: 1"), parse_braid("B3: 2")));
  // equal theta images but different central parts
  BraidWord u = compose(parse_braid("B3: 1"), inverse_power(garside(3), 4));
  CHECK(theta(u) == theta(parse_braid("B3: 1")));
  CHECK_FALSE(equal_3(u, parse_braid("B3: 1")));
}

TEST_CASE("conjugacy of 3-strand words") {
  CHECK(conjugate_3(parse_braid("B3: 1"), parse_braid("B3: 2")));
  CHECK(conjugate_3(parse_braid("B3: 1 1"), parse_braid("B3: 2 2")));
  CHECK(conjugate_3(parse_braid("B3: 1 -2"), parse_braid("B3: -2 1")));
  CHECK(conjugate_3(parse_braid("B3: 1 -2"), parse_braid("B3: 2 -1")));
  CHECK_FALSE(conjugate_3(parse_braid("B3: 1"), parse_braid("B3: -1")));
  CHECK_FALSE(conjugate_3(parse_braid("B3: 1 1"), parse_braid("B3: 1 1 1 1")));
  // equal exponent sums, distinct parabolic invariants
  BraidWord v = compose(inverse_power(parse_braid("B3: 1"), -4), inverse_power(garside(3), 2));
  REQUIRE(exponent_sum(v) == exponent_sum(parse_braid("B3: 1 1")));
  CHECK_FALSE(conjugate_3(parse_braid("B3: 1 1"), v));
}

TEST_CASE("conjugacy is invariant under explicit conjugation") {
  std::mt19937 rng(8080);
  static const int letters[4] = {1, -1, 2, -2};
  std::uniform_int_distribution<int> pick(0, 3);
  for (int trial = 0; trial < 60; ++trial) {
    BraidWord w, c;
    w.strands = c.strands = 3;
    for (int i = 0; i < 1 + trial % 7; ++i) w.letters.push_back(letters[pick(rng)]);
    for (int i = 0; i < 6; ++i) c.letters.push_back(letters[pick(rng)]);
    BraidWord conj = compose(compose(c, w), inverse(c));
    CHECK(conjugate_3(w, conj));
  }
}

TEST_CASE("invariants of 2-strand words are degenerate") {
  InvariantPair p = invariants_3(parse_braid("B2: 1 1 1"));
  CHECK(p.entropy.is_zero());
  CHECK(p.module.infinite);
  CHECK_THROWS_MATCHES(invariants_3(parse_braid("B4: 1")), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == Err::UnsupportedStrandCount; }));
}

TEST_CASE("entropy scales with powers") {
  std::mt19937 rng(5150);
  static const int letters[4] = {1, -1, 2, -2};
  std::uniform_int_distribution<int> pick(0, 3);
  int found = 0;
  while (found < 25) {
    BraidWord w;
    w.strands = 3;
    for (int i = 0; i < 6; ++i) w.letters.push_back(letters[pick(rng)]);
    auto c1 = classify_3(w);
    auto* pa1 = std::get_if<PseudoAnosov>(&c1);
    if (!pa1) continue;
    ++found;
    for (long long ell : {2LL, 3LL, -1LL, -2LL}) {
      auto c2 = classify_3(inverse_power(w, ell));
      auto* pa2 = std::get_if<PseudoAnosov>(&c2);
      REQUIRE(pa2 != nullptr);
      double want = static_cast<double>(ell < 0 ? -ell : ell) * pa1->entropy.value;
      CHECK_THAT(pa2->entropy.value, WithinAbs(want, 1e-9 * (1.0 + want)));
    }
  }
}

TEST_CASE("minimum entropy search") {
  MinEntropySearch r2 = min_entropy_search(2);
  REQUIRE(r2.word.has_value());
  CHECK(to_text(*r2.word) == "B3: 1 -2");
  CHECK_THAT(r2.entropy.value, WithinAbs(0.9624236501192069, 1e-15));

  MinEntropySearch r6 = min_entropy_search(6);
  REQUIRE(r6.word.has_value());
  CHECK(to_text(*r6.word) == "B3: 1 -2");

  MinEntropySearch r1 = min_entropy_search(1);
  CHECK_FALSE(r1.word.has_value());
  CHECK(r1.entropy.is_zero());

  CHECK_THROWS_MATCHES(min_entropy_search(13), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == Err::LengthBoundExceeded; }));
  CHECK_THROWS_AS(min_entropy_search(0), Error);
}

TEST_CASE("search result is stable under the thread cap") {
  // deterministic regardless of how subtrees are partitioned
  MinEntropySearch r = min_entropy_search(5);
  REQUIRE(r.word.has_value());
  CHECK(to_text(*r.word) == "B3: 1 -2");
  REQUIRE(r.entropy.exact.has_value());
  CHECK(r.entropy.exact->trace == 3);
}
