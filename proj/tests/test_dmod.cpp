#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "skein/dmod.hpp"
#include "skein/models.hpp"

using namespace skein;

namespace {

const Models& models() {
    static const auto m = build_models(standard_tables());
    return *m;
}

// A minimal one-generator structure with zero differential.
TypeDStructure trivial_structure(const std::string& name,
                                 const std::string& gen, int idem) {
    const ArcDiagram& d = skein_diagram();
    TypeDStructure m;
    m.diagram = &d;
    m.name = name;
    m.gen_names = {gen};
    m.idem = {idempotent_occ(d, idem)};
    m.delta.resize(1);
    return m;
}

}  // namespace

TEST_CASE("structures validate and satisfy the structure equation") {
    for (SkeinK k : {SkeinK::one, SkeinK::infty, SkeinK::zero}) {
        const auto& mod = bsd(models(), k);
        CHECK(!validate_structure(mod));
        CHECK(!structure_check(mod));
    }
    const auto& b1 = bsd(models(), SkeinK::one);
    CHECK(b1.size() == 1);
    CHECK(b1.index_of("x") == 0);
    CHECK_THROWS_AS((void)b1.index_of("nope"), std::invalid_argument);
    CHECK(bsd(models(), SkeinK::infty).size() == 3);
    CHECK(bsd(models(), SkeinK::zero).size() == 2);
}

TEST_CASE("corrupted structures fail their checks") {
    const ArcDiagram& d = skein_diagram();
    auto broken = bsd(models(), SkeinK::zero);
    // drop one structure term: the equation no longer closes
    REQUIRE(!broken.delta[0].empty());
    broken.delta[0].erase(broken.delta[0].begin());
    CHECK(structure_check(broken).has_value());

    auto misidem = bsd(models(), SkeinK::one);
    misidem.delta[0].push_back({idempotent_occ(d, 5), 0});
    CHECK(validate_structure(misidem).has_value());
}

TEST_CASE("morphism arithmetic") {
    const auto& m = models();
    const auto& f1 = skein_map(m, SkeinK::one);
    const auto& finfty = skein_map(m, SkeinK::infty);
    const auto& f0 = skein_map(m, SkeinK::zero);

    CHECK(add(f1, f1).is_zero());
    CHECK(add(f1, zero_morphism(*f1.source, *f1.target)) == f1);
    CHECK(compose(identity_morphism(*f1.target), f1) == f1);
    CHECK(compose(f1, identity_morphism(*f1.source)) == f1);
    CHECK(compose(f0, compose(finfty, f1)) == compose(compose(f0, finfty), f1));

    // the full map is the sum of its two parts
    CHECK(add(skein_map_part(m, SkeinK::one, 0), skein_map_part(m, SkeinK::one, 1)) ==
          f1);
}

TEST_CASE("the boundary is a derivation for composition") {
    const auto& m = models();
    const auto& f1 = skein_map(m, SkeinK::one);
    const auto& phiinfty = skein_homotopy(m, SkeinK::infty);
    const auto lhs = morphism_boundary(compose(phiinfty, f1));
    const auto rhs = add(compose(morphism_boundary(phiinfty), f1),
                         compose(phiinfty, morphism_boundary(f1)));
    CHECK(lhs == rhs);
    CHECK(morphism_boundary(morphism_boundary(phiinfty)).is_zero());
}

TEST_CASE("mapping cones") {
    const auto& m = models();
    const auto& finfty = skein_map(m, SkeinK::infty);
    const auto cone = mapping_cone(finfty, "Cone(finfty)");
    CHECK(cone.name == "Cone(finfty)");
    CHECK(cone.size() == finfty.source->size() + finfty.target->size());
    CHECK(!structure_check(cone));

    // colliding generator names on the target side pick up a prime
    const auto a = trivial_structure("A", "a", 3);
    const auto b = trivial_structure("B", "a", 3);
    const auto zero_map = zero_morphism(a, b);
    const auto small = mapping_cone(zero_map, "Cone(0)");
    CHECK(small.gen_names == std::vector<std::string>{"a", "a'"});

    // non-chain-maps are rejected
    const ArcDiagram& d = skein_diagram();
    const auto& b1 = bsd(m, SkeinK::one);
    const auto& binfty = bsd(m, SkeinK::infty);
    DMorphism not_chain = zero_morphism(b1, binfty);
    not_chain.terms[0].push_back(
        {idempotent_occ(d, 3), binfty.index_of("y2")});
    CHECK(morphism_boundary(not_chain).is_zero() == false);
    CHECK_THROWS_AS(mapping_cone(not_chain, "bad"), std::invalid_argument);
}

TEST_CASE("coset gradings accept the models and reject corruptions") {
    const auto& m = models();
    for (int k = 0; k < 3; ++k)
        CHECK(!graded_check(m.mod[k], m.graded[k], m.refinement));

    auto bad = m.graded[1];
    bad.rep[0] = {0, 0, 1, 0};  // move y1 off its coset
    CHECK(graded_check(m.mod[1], bad, m.refinement).has_value());
}

TEST_CASE("morphism shifts") {
    const auto& m = models();
    const auto s1 = morphism_shift(skein_map(m, SkeinK::one), m.graded[0],
                                   m.graded[1], m.refinement);
    const auto sinfty = morphism_shift(skein_map(m, SkeinK::infty), m.graded[1],
                                       m.graded[2], m.refinement);
    const auto s0 = morphism_shift(skein_map(m, SkeinK::zero), m.graded[2],
                                   m.graded[0], m.refinement);
    CHECK(!s1.vacuous);
    CHECK(s1.shift == 0);
    CHECK(!sinfty.vacuous);
    CHECK(sinfty.shift == 0);
    CHECK(!s0.vacuous);
    CHECK(s0.shift == -1);

    // the empty homotopy is vacuously homogeneous
    const auto sphi1 = morphism_shift(skein_homotopy(m, SkeinK::one), m.graded[0],
                                      m.graded[2], m.refinement);
    CHECK(sphi1.vacuous);

    // a mixed-degree morphism is rejected
    const ArcDiagram& d = skein_diagram();
    const auto& b1 = bsd(m, SkeinK::one);
    DMorphism mixed = identity_morphism(b1);
    mixed.terms[0].push_back(
        {word_generator(d, 3, {4, 6, 7, 8, 5}, 3), 0});
    CHECK_THROWS(morphism_shift(mixed, m.graded[0], m.graded[0], m.refinement));
}

TEST_CASE("serialization shapes") {
    const auto& m = models();
    const auto jd = to_json(bsd(m, SkeinK::one));
    CHECK(jd.at("name") == "B1");
    CHECK(jd.at("generators").size() == 1);
    CHECK(jd.at("generators")[0].at("idem") == 3);
    CHECK(jd.at("delta").size() == 1);
    CHECK(jd.at("delta")[0].at("from") == "x");

    const auto jf = to_json(skein_map(m, SkeinK::zero));
    CHECK(jf.at("source") == "B0");
    CHECK(jf.at("target") == "B1");
    CHECK(jf.at("terms").size() == 7);  // seven table rows in f0

    CHECK(to_text(bsd(m, SkeinK::one)).find("delta(x)") != std::string::npos);
    CHECK(to_text(skein_map(m, SkeinK::one)).find("x |->") != std::string::npos);
}
