#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "stackvol/errors.hpp"
#include "stackvol/finite_groupoid.hpp"
#include "stackvol/json_io.hpp"

using namespace stackvol;

namespace {

FiniteGroupoid disjoint_bz2_bz3() {
  return block_groupoid({Block{1, FiniteGroup::cyclic(2)}, Block{1, FiniteGroup::cyclic(3)}});
}

WeightData lambda_weights(const std::vector<Rational>& lambda) {
  WeightData w = WeightData::unit(lambda.size());
  w.b = lambda;
  return w;
}

/// Copy of g with one product entry overwritten.
FiniteGroupoid with_product(const FiniteGroupoid& g, Index a, Index b, Index ab) {
  FiniteGroupoid out = relabel(g, [](const std::string& s) { return s; }, [](const std::string& s) { return s; });
  out.set_product(a, b, ab);
  return out;
}

}  // namespace

TEST_CASE("rationals parse and print as p/q") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational(" -7 ")) == "-7/1");
  CHECK(to_string(parse_rational("0/5")) == "0/1");
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("x"), InputError);
  CHECK_THROWS_AS(parse_rational(""), InputError);
  CHECK_THROWS_AS(parse_rational("1/2/3"), InputError);
}

TEST_CASE("finite group catalog") {
  for (const auto& g : small_groups(8)) {
    CHECK(g.order() <= 8);
    // Lagrange: element orders divide the group order
    for (Index x = 0; x < g.order(); ++x) CHECK(g.order() % g.generated_subgroup(x).size() == 0);
  }
  CHECK(FiniteGroup::dihedral(3).order() == 6);
  CHECK(FiniteGroup::symmetric(3).order() == 6);
  CHECK(FiniteGroup::quaternion().order() == 8);
  const auto s3 = FiniteGroup::symmetric(3);
  bool abelian = true;
  for (Index a = 0; a < 6; ++a)
    for (Index b = 0; b < 6; ++b) abelian = abelian && s3.multiply(a, b) == s3.multiply(b, a);
  CHECK_FALSE(abelian);
  CHECK_THROWS_AS(FiniteGroup("bad", {{0, 1}, {0, 1}}), ValidationError);
}

TEST_CASE("validate: canonical constructions") {
  const auto pair = pair_groupoid(2);
  CHECK(pair.arrow_count() == 4);
  CHECK(validate(pair).ok());
  CHECK(oracle::satisfies_axioms(pair));

  // Z3 rotating a 3-cycle
  const auto z3 = FiniteGroup::cyclic(3);
  const auto cycle = action_groupoid(z3, translation_action(z3));
  CHECK(validate(cycle).ok());
  CHECK(oracle::satisfies_axioms(cycle));
}

TEST_CASE("validate: broken tables name the axiom") {
  SUBCASE("swapped inverse") {
    auto g = pair_groupoid(2);
    const Index a = *g.find_arrow("b0:0>1:0");
    g.set_inverse(a, a);
    const auto report = validate(g);
    CHECK(report.has("inverse axiom"));
    CHECK(report.violations.front().witness.find("b0:0>1:0") != std::string::npos);
    CHECK_FALSE(oracle::satisfies_axioms(g));
  }
  SUBCASE("inverse with right anchors but wrong product") {
    const auto z3 = classifying_groupoid(FiniteGroup::cyclic(3));
    auto g = relabel(z3, [](const std::string& s) { return s; }, [](const std::string& s) { return s; });
    g.set_inverse(1, 1);  // 1 + 1 != 0 in Z3
    CHECK(validate(g).has("inverse axiom"));
  }
  SUBCASE("ill-typed product") {
    auto g = pair_groupoid(2);
    const Index a = *g.find_arrow("b0:0>1:0");
    g.set_product(a, a, a);
    CHECK(validate(g).has("composition domain"));
  }
  SUBCASE("product with wrong anchors") {
    const auto g = pair_groupoid(2);
    const Index a = *g.find_arrow("b0:0>1:0");
    const Index b = *g.find_arrow("b0:1>1:0");
    const Index wrong = *g.find_arrow("b0:1>0:0");
    CHECK(validate(with_product(g, a, b, wrong)).has("composition anchors"));
  }
  SUBCASE("associativity") {
    const auto z4 = classifying_groupoid(FiniteGroup::cyclic(4));
    // 1*1 := 3 keeps every anchor right but breaks (1*1)*2 = 1*(1*2)
    const auto g = with_product(z4, 1, 1, 3);
    const auto report = validate(g);
    CHECK_FALSE(report.ok());
    CHECK((report.has("associativity") || report.has("inverse axiom")));
    CHECK_FALSE(oracle::satisfies_axioms(g));
  }
  SUBCASE("missing identity") {
    std::vector<Arrow> arrows{{"e", 0, 0}};
    FiniteGroupoid g({"pt"}, arrows);
    CHECK(validate(g).has("identity axiom"));
    CHECK(validate(g).has("composition totality"));
  }
  SUBCASE("violation cap") {
    auto g = pair_groupoid(6);
    for (Index a = 0; a < g.arrow_count(); ++a) g.set_inverse(a, kNone);
    const auto report = validate(g, 5);
    CHECK(report.violations.size() == 5);
    CHECK(report.truncated);
  }
}

TEST_CASE("validate agrees with the exhaustive oracle on random groupoids") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = random_groupoid(seed, {12, 8});
    CHECK(validate(g).ok());
    CHECK(oracle::satisfies_axioms(g));
  }
}

TEST_CASE("orbits") {
  SUBCASE("pair groupoid on three objects") {
    const auto dec = orbits(pair_groupoid(3));
    REQUIRE(dec.orbits.size() == 1);
    CHECK(dec.orbits[0].objects.size() == 3);
    CHECK(dec.orbits[0].isotropy_order == 1);
  }
  SUBCASE("pt//Z2 + pt//Z3") {
    const auto dec = orbits(disjoint_bz2_bz3());
    REQUIRE(dec.orbits.size() == 2);
    CHECK(dec.orbits[0].isotropy_order == 2);
    CHECK(dec.orbits[1].isotropy_order == 3);
  }
  SUBCASE("Z2 swapping two points") {
    const auto z2 = FiniteGroup::cyclic(2);
    const auto g = action_groupoid(z2, translation_action(z2));
    CHECK(g.arrow_count() == 4);
    const auto dec = orbits(g);
    REQUIRE(dec.orbits.size() == 1);
    CHECK(dec.orbits[0].isotropy_order == 1);
  }
  SUBCASE("orbit stabilizer on coset actions") {
    const auto s3 = FiniteGroup::symmetric(3);
    for (Index h = 0; h < s3.order(); ++h) {
      const auto sub = s3.generated_subgroup(h);
      const auto dec = orbits(action_groupoid(s3, coset_action(s3, sub)));
      REQUIRE(dec.orbits.size() == 1);
      CHECK(dec.orbits[0].objects.size() * dec.orbits[0].isotropy_order == s3.order());
      CHECK(dec.orbits[0].isotropy_order == sub.size());
    }
  }
  SUBCASE("random corpus matches the relaxation oracle") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto g = random_groupoid(seed, {});
      const auto dec = orbits(g);
      const auto labels = oracle::orbit_labels(g);
      for (Index x = 0; x < g.object_count(); ++x) {
        for (Index y = 0; y < g.object_count(); ++y) {
          CHECK((dec.orbit_of[x] == dec.orbit_of[y]) == (labels[x] == labels[y]));
        }
      }
    }
  }
}

TEST_CASE("cardinality") {
  for (Index n = 1; n <= 12; ++n) {
    CHECK(cardinality(classifying_groupoid(FiniteGroup::cyclic(n))) == Rational(1, n));
  }
  CHECK(cardinality(pair_groupoid(5)) == 1);
  CHECK(cardinality(disjoint_bz2_bz3()) == Rational(5, 6));
  // Z2 acting trivially on 3 points: three copies of pt//Z2
  const auto z2 = FiniteGroup::cyclic(2);
  CHECK(cardinality(action_groupoid(z2, trivial_action(z2, 3))) == Rational(3, 2));
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = random_groupoid(seed, {});
    CHECK(cardinality(g) == oracle::cardinality(g));
  }
}

TEST_CASE("action groupoid cardinality is #X / #H") {
  for (const auto& h : small_groups(8)) {
    const auto g = action_groupoid(h, conjugation_action(h));
    CHECK(cardinality(g) == 1);  // #H / #H
    const auto free = action_groupoid(h, translation_action(h, 3));
    CHECK(cardinality(free) == 3);
  }
}

TEST_CASE("fiber and orbit volume: worked values") {
  const auto bz2 = classifying_groupoid(FiniteGroup::cyclic(2));
  CHECK(fiber_volume(bz2, WeightData::unit(1)) == Rational(1, 2));
  CHECK(orbit_volume(bz2, WeightData::unit(1)) == Rational(1, 2));

  const auto g = disjoint_bz2_bz3();
  const auto w = lambda_weights({3, 6});
  CHECK(fiber_volume(g, w) == Rational(7, 2));
  CHECK(orbit_volume(g, w) == Rational(7, 2));

  // same lambda, different factorisation
  WeightData w2;
  w2.a = {Rational(2, 3), 5};
  w2.b = {2, 30};
  CHECK(fiber_volume(g, w2) == Rational(7, 2));
}

TEST_CASE("fiber volume errors") {
  const auto pair = pair_groupoid(2);
  SUBCASE("inner sums vanish") {
    WeightData w;
    w.a = {1, -1};
    w.b = {1, 1};
    CHECK_THROWS_AS(fiber_volume(pair, w), DegenerateWeightError);
  }
  SUBCASE("zero a") {
    WeightData w;
    w.a = {0, 1};
    w.b = {1, 1};
    CHECK_THROWS_AS(fiber_volume(pair, w), ValidationError);
  }
  SUBCASE("size mismatch") {
    CHECK_THROWS_AS(fiber_volume(pair, WeightData::unit(3)), ValidationError);
  }
  SUBCASE("non-invariant lambda for the orbit formula") {
    const auto w = lambda_weights({1, 2});
    CHECK_THROWS_AS(orbit_volume(pair, w), NonInvariantSectionError);
    CHECK_FALSE(is_invariant(pair, w.lambda()));
    CHECK(fiber_volume(pair, w) == Rational(3, 2));  // still defined
  }
}

TEST_CASE("fiber volume equals orbit volume on the random corpus") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto g = random_groupoid(seed, {});
    Engine rng(seed + 1000);
    for (int k = 0; k < 3; ++k) {
      const auto w = random_invariant_weights(rng, g);
      CHECK(is_invariant(g, w.lambda()));
      const Rational fv = fiber_volume(g, w);
      CHECK(fv == orbit_volume(g, w));
      CHECK(fv == oracle::fiber_volume(g, w));
      CHECK(fv == oracle::orbit_volume(g, w));
    }
  }
}

TEST_CASE("volume depends on (a, b) only through lambda") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = random_groupoid(seed, {});
    Engine rng(seed + 7);
    const auto w = random_invariant_weights(rng, g);
    const Rational v = fiber_volume(g, w);
    WeightData scaled = w;
    for (Index x = 0; x < g.object_count(); ++x) {
      Rational f(uniform_between(rng, 1, 50), uniform_between(rng, 1, 50));
      f.canonicalize();
      scaled.a[x] *= f;
      scaled.b[x] *= f;
    }
    CHECK(fiber_volume(g, scaled) == v);
  }
}

TEST_CASE("orbit set measure") {
  const auto g = disjoint_bz2_bz3();
  const auto w = lambda_weights({3, 6});
  const std::vector<Index> all{0, 1}, none{}, first{0}, dup{0, 0};
  CHECK(orbit_set_measure(g, w, all) == orbit_volume(g, w));
  CHECK(orbit_set_measure(g, w, none) == 0);
  CHECK(orbit_set_measure(g, w, first) == Rational(3, 2));
  CHECK(orbit_set_measure(g, w, dup) == Rational(3, 2));
  const std::vector<Index> unknown{7};
  CHECK_THROWS_AS(orbit_set_measure(g, w, unknown), ValidationError);

  // finite additivity on the random corpus
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto r = random_groupoid(seed, {});
    Engine rng(seed);
    const auto rw = random_invariant_weights(rng, r);
    const auto count = orbits(r).orbits.size();
    std::vector<Index> u, v, both;
    for (Index k = 0; k < count; ++k) {
      (uniform_below(rng, 2) ? u : v).push_back(k);
      both.push_back(k);
    }
    CHECK(orbit_set_measure(r, rw, u) + orbit_set_measure(r, rw, v) == orbit_set_measure(r, rw, both));
    CHECK(orbit_set_measure(r, rw, both) == orbit_volume(r, rw));
  }
}

TEST_CASE("random generator") {
  const auto a = random_groupoid(42, {});
  const auto b = random_groupoid(42, {});
  CHECK(identical(a, b));
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = random_groupoid(seed, {40, 8});
    CHECK(g.object_count() >= 1);
    CHECK(g.object_count() <= 40);
    for (const auto& o : orbits(g).orbits) CHECK(o.isotropy_order <= 8);
  }
}

TEST_CASE("finite sets series approaches e") {
  CHECK(finite_sets_cardinality(0) == 1);
  CHECK(finite_sets_cardinality(3) == Rational(8, 3));
  for (unsigned n = 0; n <= 15; ++n) {
    CHECK(std::abs(to_double(finite_sets_cardinality(n)) - oracle::exp_partial_sum(n)) < 1e-15);
  }
  CHECK(std::abs(to_double(finite_sets_cardinality(13)) - std::numbers::e) < 1e-9);
}

TEST_CASE("json round trip") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = random_groupoid(seed, {});
    const auto text = groupoid_to_json(g).dump();
    const auto back = groupoid_from_json(parse_json(text));
    CHECK(identical(g, back));
    Engine rng(seed);
    const auto w = random_invariant_weights(rng, g);
    const auto w2 = weights_from_json(parse_json(weights_to_json(w, g).dump()), g);
    CHECK(w2.a == w.a);
    CHECK(w2.b == w.b);
  }
}

TEST_CASE("json errors are input errors with locations") {
  try {
    parse_json("{\n  \"objects\": [\"pt\",]\n}", "mem");
    FAIL("expected a parse error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).rfind("mem:2:", 0) == 0);
  }
  const auto unknown = parse_json(R"({"objects":["pt"],"arrows":[{"id":"e","l":"pt","r":"nowhere"}]})");
  CHECK_THROWS_AS(groupoid_from_json(unknown), InputError);
  const auto duplicate = parse_json(R"({"objects":["pt","pt"],"arrows":[]})");
  CHECK_THROWS_AS(groupoid_from_json(duplicate), InputError);
  const auto missing = parse_json(R"({"arrows":[]})");
  CHECK_THROWS_AS(groupoid_from_json(missing), InputError);
  const auto g = pair_groupoid(2);
  CHECK_THROWS_AS(weights_from_json(parse_json(R"({"a":{"o0":"1"},"b":{"o0":"1","o1":"1"}})"), g), InputError);
  CHECK_THROWS_AS(weights_from_json(parse_json(R"({"a":{"o0":"1","o1":"x"},"b":{"o0":"1","o1":"1"}})"), g),
                  InputError);
}
