#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "stackvol/errors.hpp"
#include "stackvol/json_io.hpp"
#include "stackvol/morita.hpp"

using namespace stackvol;

namespace {

const std::string kData = STACKVOL_DATA_DIR;

std::string same(const std::string& s) { return s; }

WeightData constant_lambda(std::size_t n, const Rational& lambda) {
  WeightData w = WeightData::unit(n);
  for (auto& b : w.b) b = lambda;
  return w;
}

}  // namespace

TEST_CASE("bibundle validation") {
  const auto pair = pair_groupoid(2);
  const auto point = classifying_groupoid(FiniteGroup::trivial());

  SUBCASE("pair groupoid over the point") {
    const auto bundle = block_bibundle({Block{2, FiniteGroup::trivial()}}, {Block{1, FiniteGroup::trivial()}});
    CHECK(bundle.size() == 2);
    CHECK(validate_bibundle(pair, point, bundle).ok());
  }
  SUBCASE("identity bibundles") {
    for (const auto& h : small_groups(6)) {
      const auto g = action_groupoid(h, coset_action(h, h.generated_subgroup(h.order() - 1)));
      CHECK(validate_bibundle(g, g, identity_bibundle(g)).ok());
    }
  }
  SUBCASE("left action not free") {
    const auto bz2 = classifying_groupoid(FiniteGroup::cyclic(2));
    Bibundle bundle({"b"}, {0}, {0});
    bundle.set_left_action(0, 0, 0);
    bundle.set_left_action(1, 0, 0);
    bundle.set_right_action(0, 0, 0);
    const auto report = validate_bibundle(bz2, point, bundle);
    CHECK(report.has("left action not free"));
    CHECK_THROWS_AS(linking_groupoid(bz2, point, bundle), ValidationError);
  }
  SUBCASE("missing fiber") {
    Bibundle bundle({"b"}, {0}, {0});
    bundle.set_left_action(*pair.find_arrow("b0:0>0:0"), 0, 0);
    bundle.set_right_action(0, 0, 0);
    const auto report = validate_bibundle(pair, point, bundle);
    CHECK(report.has("left action totality"));
    CHECK(report.has("left anchor not surjective"));
  }
  SUBCASE("shipped fixtures") {
    const auto left = groupoid_from_json(read_json_file(kData + "/pair2.json"));
    const auto right = groupoid_from_json(read_json_file(kData + "/point.json"));
    const auto bundle = bibundle_from_json(read_json_file(kData + "/pair2_point_bibundle.json"), left, right);
    CHECK(validate_bibundle(left, right, bundle).ok());
  }
}

TEST_CASE("linking groupoid") {
  SUBCASE("pair of two over a point") {
    const auto pair = pair_groupoid(2);
    const auto point = classifying_groupoid(FiniteGroup::trivial());
    const auto bundle = block_bibundle({Block{2, FiniteGroup::trivial()}}, {Block{1, FiniteGroup::trivial()}});
    const auto link = linking_groupoid(pair, point, bundle);
    CHECK(link.object_count() == 3);
    CHECK(link.arrow_count() == 9);
    CHECK(validate(link).ok());
    CHECK(oracle::satisfies_axioms(link));
    const auto dec = orbits(link);
    REQUIRE(dec.orbits.size() == 1);
    CHECK(dec.orbits[0].isotropy_order == 1);
  }
  SUBCASE("identity bibundle doubles the arrows twice") {
    for (const auto& h : small_groups(8)) {
      const auto g = classifying_groupoid(h);
      const auto link = linking_groupoid(g, g, identity_bibundle(g));
      CHECK(link.arrow_count() == 4 * h.order());
      CHECK(validate(link).ok());
      const auto dec = orbits(link);
      REQUIRE(dec.orbits.size() == 1);
      CHECK(dec.orbits[0].isotropy_order == h.order());
    }
    const auto bz2 = classifying_groupoid(FiniteGroup::cyclic(2));
    CHECK(linking_groupoid(bz2, bz2, identity_bibundle(bz2)).arrow_count() == 8);
  }
  SUBCASE("namespaced ids") {
    const auto g = pair_groupoid(2);
    const auto link = linking_groupoid(g, g, identity_bibundle(g));
    CHECK(link.find_object("left:o0"));
    CHECK(link.find_object("right:o1"));
    CHECK(link.find_arrow("left:b0:0>1:0"));
    bool bridge = false, cobridge = false;
    for (const auto& a : link.arrows()) {
      bridge = bridge || a.id.rfind("bridge:", 0) == 0;
      cobridge = cobridge || a.id.rfind("cobridge:", 0) == 0;
    }
    CHECK(bridge);
    CHECK(cobridge);
  }
}

TEST_CASE("restriction to full subsets") {
  const auto pair = pair_groupoid(3);
  const std::vector<Index> one{1};
  const auto r = restrict_full(pair, one);
  CHECK(r.object_count() == 1);
  CHECK(r.arrow_count() == 1);
  CHECK(r.object_id(0) == "o1");
  CHECK(validate(r).ok());

  const auto g = block_groupoid({Block{2, FiniteGroup::cyclic(2)}, Block{1, FiniteGroup::cyclic(3)}});
  const std::vector<Index> partial{0, 1};
  try {
    restrict_full(g, partial);
    FAIL("expected NotFullError");
  } catch (const NotFullError& e) {
    CHECK(e.orbit() == "o2");
  }
  const std::vector<Index> full{1, 2};
  const auto rg = restrict_full(g, full);
  CHECK(validate(rg).ok());
  CHECK(cardinality(rg) == cardinality(g));

  const std::vector<Index> bad{9};
  CHECK_THROWS_AS(restrict_full(g, bad), ValidationError);

  const auto res = restriction_bibundle(g, full);
  CHECK(validate_bibundle(res.restricted, g, res.bundle).ok());
}

TEST_CASE("linking sides recover the inputs") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto t = random_morita_triple(seed, {10, 6});
    const auto link = linking_groupoid(t.left, t.right, t.bundle);
    CHECK(validate(link).ok());
    CHECK(identical(linking_side(link, t.left.object_count(), false), t.left));
    CHECK(identical(linking_side(link, t.left.object_count(), true), t.right));
  }
}

TEST_CASE("extending invariant sections") {
  const auto g = block_groupoid({Block{3, FiniteGroup::trivial()}, Block{2, FiniteGroup::cyclic(2)}});
  const std::vector<Index> subset{1, 4};
  const Section values{Rational(5), Rational(-1, 3)};
  const Section ext = extend_invariant_section(g, subset, values);
  CHECK(ext == Section{5, 5, 5, Rational(-1, 3), Rational(-1, 3)});
  CHECK(is_invariant(g, ext));

  const std::vector<Index> clash{0, 1, 3};
  CHECK_THROWS_AS(extend_invariant_section(g, clash, Section{1, 2, 3}), NonInvariantSectionError);
  const std::vector<Index> missing{0};
  CHECK_THROWS_AS(extend_invariant_section(g, missing, Section{1}), NotFullError);
  CHECK_THROWS_AS(extend_invariant_section(g, subset, Section{1}), ValidationError);
}

TEST_CASE("transfer of sections") {
  SUBCASE("identity bibundle is the identity") {
    const auto g = block_groupoid({Block{2, FiniteGroup::cyclic(2)}, Block{1, FiniteGroup::cyclic(3)}});
    const Section lambda{Rational(1, 2), Rational(1, 2), Rational(7)};
    CHECK(transfer_section(g, g, identity_bibundle(g), lambda) == lambda);
  }
  SUBCASE("constant sections stay constant") {
    const auto pair = pair_groupoid(4);
    const auto point = classifying_groupoid(FiniteGroup::trivial());
    const auto bundle = block_bibundle({Block{4, FiniteGroup::trivial()}}, {Block{1, FiniteGroup::trivial()}});
    CHECK(transfer_section(pair, point, bundle, Section(4, Rational(3, 5))) == Section{Rational(3, 5)});
    CHECK_THROWS_AS(transfer_section(pair, point, bundle, Section{1, 2, 1, 1}), NonInvariantSectionError);
  }
  SUBCASE("composition") {
    const std::vector<Block> a{Block{1, FiniteGroup::cyclic(2)}, Block{2, FiniteGroup::trivial()}};
    const std::vector<Block> b{Block{3, FiniteGroup::cyclic(2)}, Block{1, FiniteGroup::trivial()}};
    const std::vector<Block> c{Block{2, FiniteGroup::cyclic(2)}, Block{2, FiniteGroup::trivial()}};
    const auto ga = block_groupoid(a, "a"), gb = block_groupoid(b, "b"), gc = block_groupoid(c, "c");
    const auto ab = block_bibundle(a, b), bc = block_bibundle(b, c);
    const auto ac = compose_bibundles(ga, gb, gc, ab, bc);
    CHECK(validate_bibundle(ga, gc, ac).ok());
    const Section lambda{Rational(2), Rational(-1), Rational(-1)};
    const Section direct = transfer_section(ga, gc, ac, lambda);
    const Section stepwise = transfer_section(gb, gc, bc, transfer_section(ga, gb, ab, lambda));
    CHECK(direct == stepwise);
    const auto back = reverse_bibundle(ga, gc, ac);
    CHECK(validate_bibundle(gc, ga, back).ok());
    CHECK(transfer_section(gc, ga, back, direct) == lambda);
  }
}

TEST_CASE("volume check") {
  const auto pair = pair_groupoid(2);
  const auto point = classifying_groupoid(FiniteGroup::trivial());
  const auto bundle = block_bibundle({Block{2, FiniteGroup::trivial()}}, {Block{1, FiniteGroup::trivial()}});
  const auto report = morita_volume_check(pair, point, bundle, constant_lambda(2, 2), constant_lambda(1, 2));
  CHECK(report.left_volume == 2);
  CHECK(report.right_volume == 2);
  CHECK(report.equal());
  CHECK_THROWS_AS(morita_volume_check(pair, point, bundle, constant_lambda(2, 2), constant_lambda(1, 3)),
                  SectionMismatchError);

  const auto bz2 = classifying_groupoid(FiniteGroup::cyclic(2));
  const auto twice = block_groupoid({Block{2, FiniteGroup::cyclic(2)}});
  const auto b2 = block_bibundle({Block{1, FiniteGroup::cyclic(2)}}, {Block{2, FiniteGroup::cyclic(2)}});
  const auto r2 = morita_volume_check(bz2, twice, b2, constant_lambda(1, 4), constant_lambda(2, 4));
  CHECK(r2.left_volume == 2);
  CHECK(r2.equal());
}

TEST_CASE("isomorphic groupoids with relabelled ids") {
  // same tables, new names: the identity bibundle still connects them
  const auto g = block_groupoid({Block{2, FiniteGroup::dihedral(3)}});
  const auto h = relabel(g, [](const std::string& s) { return "x" + s; }, [](const std::string& s) { return "y" + s; });
  const auto bundle = identity_bibundle(g);
  CHECK(validate_bibundle(g, h, bundle).ok());
  const auto w = constant_lambda(2, Rational(5, 7));
  CHECK(morita_volume_check(g, h, bundle, w, w).equal());
  CHECK(identical(relabel(g, same, same), g));
  CHECK_FALSE(identical(h, g));
}

TEST_CASE("random triples preserve volume") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto t = random_morita_triple(seed, {12, 6});
    REQUIRE(validate_bibundle(t.left, t.right, t.bundle).ok());
    Engine rng(seed * 31 + 1);
    const auto wl = random_invariant_weights(rng, t.left);
    const Section lr = transfer_section(t.left, t.right, t.bundle, wl.lambda());
    WeightData wr = WeightData::unit(t.right.object_count());
    for (Index y = 0; y < wr.a.size(); ++y) {
      wr.a[y] = Rational(uniform_between(rng, 1, 9), uniform_between(rng, 1, 9));
      wr.a[y].canonicalize();
      wr.b[y] = lr[y] * wr.a[y];
    }
    const auto report = morita_volume_check(t.left, t.right, t.bundle, wl, wr);
    CHECK(report.equal());
    CHECK(report.left_volume == oracle::fiber_volume(t.left, wl));
    CHECK(report.right_volume == oracle::fiber_volume(t.right, wr));
  }
}

TEST_CASE("bibundle json round trip") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto t = random_morita_triple(seed, {8, 4});
    const auto doc = bibundle_to_json(t.bundle, t.left, t.right);
    const auto back = bibundle_from_json(parse_json(doc.dump()), t.left, t.right);
    CHECK(back.element_ids() == t.bundle.element_ids());
    CHECK(back.left_entries() == t.bundle.left_entries());
    CHECK(back.right_entries() == t.bundle.right_entries());
  }
  const auto left = pair_groupoid(2);
  const auto right = classifying_groupoid(FiniteGroup::trivial());
  CHECK_THROWS_AS(
      bibundle_from_json(parse_json(R"({"elements":["b"],"leftAnchor":{"b":"nowhere"},"rightAnchor":{"b":"o0"},
                                     "leftAction":[],"rightAction":[]})"),
                         left, right),
      InputError);
}
