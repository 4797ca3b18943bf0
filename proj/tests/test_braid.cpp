#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <braidmod/braidmod.hpp>

using namespace braidmod;

namespace {

BraidWord random_word(std::mt19937& rng, int strands, int len) {
  std::uniform_int_distribution<int> gen(1, strands - 1);
  std::uniform_int_distribution<int> sign(0, 1);
  BraidWord w;
  w.strands = strands;
  for (int i = 0; i < len; ++i) {
    int g = gen(rng);
    w.letters.push_back(sign(rng) ? g : -g);
  }
  return w;
}

}  // namespace

TEST_CASE("parsing round trips") {
  BraidWord b = parse_braid("B3: 1 -2");
  CHECK(b.strands == 3);
  CHECK(b.letters == std::vector<int>{1, -2});
  CHECK(to_text(b) == "B3: 1 -2");

  CHECK(parse_braid("  B4:\t2 -3\n1 ") == parse_braid("B4: 2 -3 1"));
  CHECK(parse_braid("B5:").letters.empty());
  CHECK(parse_braid("B5:").strands == 5);
}

TEST_CASE("parsing infers the strand count without a header") {
  BraidWord b = parse_braid("1 -2");
  CHECK(b.strands == 3);
  CHECK(parse_braid("3 -1").strands == 4);
  CHECK(parse_braid("").strands == 1);
}

TEST_CASE("parsing rejects malformed input") {
  CHECK_THROWS_MATCHES(parse_braid("B3: 0"), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == Err::ZeroLetter; }));
  CHECK_THROWS_MATCHES(parse_braid("B3: 3"), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == Err::GeneratorOutOfRange; }));
  CHECK_THROWS_MATCHES(parse_braid("B3: x"), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == Err::MalformedToken; }));
  CHECK_THROWS_MATCHES(parse_braid("B: 1"), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == Err::MalformedToken; }));
  CHECK_THROWS_AS(parse_braid("B3: 1.5"), Error);
}

TEST_CASE("composition and inversion") {
  BraidWord a = parse_braid("B3: 1 2");
  BraidWord b = parse_braid("B3: -1");
  CHECK(to_text(compose(a, b)) == "B3: 1 2 -1");
  CHECK(to_text(inverse(a)) == "B3: -2 -1");
  CHECK_THROWS_MATCHES(compose(a, parse_braid("B4: 1")), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == Err::StrandMismatch; }));

  CHECK(free_reduce(compose(a, inverse(a))).letters.empty());
  CHECK(to_text(inverse_power(b, -2)) == "B3: 1 1");
  CHECK(inverse_power(a, 0).letters.empty());
  CHECK(to_text(inverse_power(a, 2)) == "B3: 1 2 1 2");
}

TEST_CASE("free reduction cancels adjacent inverse pairs") {
  CHECK(to_text(free_reduce(parse_braid("B3: 1 2 -2 -1 2"))) == "B3: 2");
  CHECK(free_reduce(parse_braid("B3: 1 -1 2 -2")).letters.empty());
}

TEST_CASE("permutations follow the strands") {
  CHECK(permutation(parse_braid("B3: 1")).images == std::vector<int>{2, 1, 3});
  CHECK(permutation(parse_braid("B3: 1 2")).images == std::vector<int>{2, 3, 1});
  CHECK(permutation(garside(3)).images == std::vector<int>{3, 2, 1});
  CHECK(permutation(garside(5)).images == std::vector<int>{5, 4, 3, 2, 1});
  CHECK(permutation(inverse_power(garside(3), 2)).is_identity());

  Permutation p = permutation(parse_braid("B3: 1 2"));
  CHECK(p.cycles() == std::vector<std::vector<int>>{{1, 2, 3}});
  CHECK(compose(p, p.inverse()).is_identity());
}

TEST_CASE("permutation is a homomorphism on random words") {
  std::mt19937 rng(20260815);
  for (int trial = 0; trial < 50; ++trial) {
    BraidWord a = random_word(rng, 5, 8);
    BraidWord b = random_word(rng, 5, 8);
    CHECK(permutation(compose(a, b)) == compose(permutation(a), permutation(b)));
  }
}

TEST_CASE("exponent sum") {
  CHECK(exponent_sum(parse_braid("B3: 1 -2 -2 1")) == 0);
  CHECK(exponent_sum(garside(4)) == 6);
}

TEST_CASE("half twist shape") {
  CHECK(to_text(garside(3)) == "B3: 1 2 1");
  CHECK(to_text(garside(4)) == "B4: 1 2 1 3 2 1");
  CHECK_THROWS_MATCHES(garside(1), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == Err::BadStrandCount; }));
}

TEST_CASE("deleting strands from the full twist") {
  BraidWord twist = inverse_power(garside(3), 2);
  for (auto keep : {std::set<int>{1, 2}, std::set<int>{1, 3}, std::set<int>{2, 3}}) {
    BraidWord two = delete_strands(twist, keep);
    CHECK(two.strands == 2);
    CHECK(two.letters == std::vector<int>{1, 1});
  }
  BraidWord one = delete_strands(twist, {2});
  CHECK(one.strands == 1);
  CHECK(one.letters.empty());
}

TEST_CASE("deletion requires an invariant keep set") {
  CHECK_THROWS_MATCHES(delete_strands(parse_braid("B3: 1"), {1, 3}), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == Err::KeepNotInvariant; }));
  CHECK_THROWS_MATCHES(delete_strands(parse_braid("B3: 1"), {}), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == Err::EmptyKeepSet; }));
  CHECK_THROWS_MATCHES(delete_strands(parse_braid("B3: 1"), {4}), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == Err::GeneratorOutOfRange; }));
  // keep set invariant as a set though the strands move inside it
  CHECK(delete_strands(parse_braid("B3: 1"), {1, 2}).letters == std::vector<int>{1});
}

TEST_CASE("deletion is compatible with powers") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    BraidWord w = random_word(rng, 4, 6);
    Permutation p = permutation(w);
    // orbits of the permutation give invariant keep sets
    for (const auto& cyc : p.cycles()) {
      std::set<int> keep(cyc.begin(), cyc.end());
      BraidWord once = delete_strands(w, keep);
      BraidWord twice = delete_strands(inverse_power(w, 2), keep);
      CHECK(twice == compose(once, once));
    }
  }
}

TEST_CASE("linking numbers of twisted full twists") {
  // sigma_1^{2k} Delta^{2l}: linking (k+l, l, l)
  for (int k = -3; k <= 3; ++k) {
    for (int l = -2; l <= 2; ++l) {
      BraidWord b = compose(inverse_power(parse_braid("B3: 1 1"), k),
                            inverse_power(inverse_power(garside(3), 2), l));
      CHECK(linking_number(b, 1, 2) == k + l);
      CHECK(linking_number(b, 2, 3) == l);
      CHECK(linking_number(b, 1, 3) == l);
      CHECK(linking_number(b, 3, 1) == l);
    }
  }
}

TEST_CASE("linking requires fixed strands") {
  CHECK_THROWS_MATCHES(linking_number(parse_braid("B3: 1"), 1, 2), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == Err::StrandsNotFixed; }));
  CHECK_THROWS_MATCHES(linking_number(parse_braid("B3:"), 2, 2), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == Err::StrandsNotFixed; }));
}

TEST_CASE("pure braids: exponent sum is twice the total linking") {
  // random products of the standard pure-braid generators of B_3
  const BraidWord gens[] = {parse_braid("B3: 1 1"), parse_braid("B3: 2 2"),
                            parse_braid("B3: 2 1 1 -2")};
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> pick(0, 2), sgn(0, 1);
  for (int trial = 0; trial < 40; ++trial) {
    BraidWord b;
    b.strands = 3;
    int len = 1 + trial % 6;
    for (int i = 0; i < len; ++i) {
      const BraidWord& g = gens[pick(rng)];
      b = compose(b, sgn(rng) ? g : inverse(g));
    }
    REQUIRE(permutation(b).is_identity());
    long long total = linking_number(b, 1, 2) + linking_number(b, 1, 3) + linking_number(b, 2, 3);
    CHECK(2 * total == exponent_sum(b));
  }
}
