#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "skein/algebra.hpp"
#include "skein/arc_diagram.hpp"
#include "skein/models.hpp"
#include "oracle_strands.hpp"

using namespace skein;

namespace {

StrandsGenerator gen(std::vector<int> occ, std::vector<std::pair<int, int>> mov) {
    StrandsGenerator g;
    g.occupied = std::move(occ);
    g.moving = std::move(mov);
    return g;
}

}  // namespace

TEST_CASE("fixed diagram shape") {
    const ArcDiagram& d = skein_diagram();
    CHECK(d.num_points() == 12);
    CHECK(d.num_classes == 6);
    CHECK(d.num_elementary() == 8);
    const std::vector<std::pair<int, int>> elementary{
        {2, 3}, {3, 4}, {4, 5}, {6, 7}, {7, 8}, {8, 9}, {10, 11}, {11, 12}};
    CHECK(d.elementary == elementary);
    CHECK(d.cls(1) == 1);
    CHECK(d.cls(3) == 1);
    CHECK(d.cls(8) == 5);
    CHECK(d.partner(1) == 3);
    CHECK(d.partner(8) == 11);
    CHECK(d.same_arc(2, 5));
    CHECK_FALSE(d.same_arc(5, 6));
}

TEST_CASE("chord labels") {
    const ArcDiagram& d = skein_diagram();
    CHECK(all_chord_labels(d).size() == 15);
    CHECK(chord_of_label(d, 1) == std::make_pair(2, 3));
    CHECK(chord_of_label(d, 12) == std::make_pair(2, 4));
    CHECK(chord_of_label(d, 123) == std::make_pair(2, 5));
    CHECK(chord_of_label(d, 45) == std::make_pair(6, 8));
    CHECK(chord_of_label(d, 456) == std::make_pair(6, 9));
    CHECK(chord_of_label(d, 78) == std::make_pair(10, 12));
    CHECK_THROWS_AS(chord_of_label(d, 0), std::invalid_argument);
    CHECK_THROWS_AS(chord_of_label(d, 34), std::invalid_argument);
}

TEST_CASE("generator validity") {
    const ArcDiagram& d = skein_diagram();
    CHECK(!validate_generator(d, gen({4, 5, 6}, {{2, 3}, {4, 5}})));
    // chord crossing an arc boundary
    CHECK(validate_generator(d, gen({}, {{5, 6}})).has_value());
    // repeated start point
    CHECK(validate_generator(d, gen({}, {{4, 5}, {4, 7}})).has_value());
    // distinct start points in one match class (4 and 7 are both class 3)
    CHECK(validate_generator(d, gen({}, {{4, 5}, {7, 8}})).has_value());
    // distinct end points in one match class (8 and 11 are both class 5)
    CHECK(validate_generator(d, gen({}, {{6, 8}, {10, 11}})).has_value());
    // occupied class meets a chord endpoint class
    CHECK(validate_generator(d, gen({2}, {{4, 5}})).has_value());
    // an end may share a class with another chord's start
    CHECK(!validate_generator(d, gen({}, {{2, 3}, {4, 5}})));
}

TEST_CASE("basis sizes per strand count are frozen") {
    const ArcDiagram& d = skein_diagram();
    const std::vector<size_t> expected{1, 21, 158, 526, 773, 430, 55};
    for (int k = 0; k <= 6; ++k) {
        CAPTURE(k);
        const auto basis = enumerate_basis(d, k);
        CHECK(basis.size() == expected[k]);
        for (const auto& g : basis) {
            CHECK(!validate_generator(d, g));
            CHECK(g.strands() == k);
        }
    }
}

TEST_CASE("audited word identities") {
    const ArcDiagram& d = skein_diagram();

    SUBCASE("relations between words") {
        CHECK(word_element(d, 3, {12, 3, 2}, 1) == word_element(d, 3, {2, 1, 23}, 1));
        CHECK_FALSE(word_element(d, 3, {12, 3, 2}, 1).is_zero());
        CHECK(word_element(d, 5, {45, 6, 5, 2}, 1) ==
              word_element(d, 5, {5, 4, 56, 2}, 1));
        CHECK_FALSE(word_element(d, 5, {45, 6, 5, 2}, 1).is_zero());
    }
    SUBCASE("vanishing words") {
        CHECK(chord_word(d, {12, 23}, 5).is_zero());
        CHECK(chord_word(d, {45, 4}, 5).is_zero());
    }
    SUBCASE("differentials of words") {
        CHECK(diff(word_element(d, 5, {45, 6}, 5)) ==
              word_element(d, 5, {5, 4, 6}, 5));
        // d of the longest map word splits into a crossing resolution and a
        // chord split through the occupied class 5.
        const auto w = word_element(d, 3, {12, 3, 4, 56, 2}, 1);
        CHECK(w.terms.size() == 1);
        const auto expected =
            associated_element(d, {{2, 4}, {3, 5}, {6, 9}}, 5) +
            associated_element(d, {{2, 5}, {3, 4}, {6, 8}, {8, 9}}, 5);
        CHECK(diff(w) == expected);
    }
}

TEST_CASE("idempotent and identity laws") {
    const ArcDiagram& d = skein_diagram();
    const auto idems = idempotents(d, 5);
    REQUIRE(idems.size() == 6);
    for (size_t i = 0; i < idems.size(); ++i)
        for (size_t j = 0; j < idems.size(); ++j) {
            const auto expect = i == j ? idems[i] : zero_element(d);
            CHECK(mul(idems[i], idems[j]) == expect);
        }
    const auto one = identity_element(d, 5);
    const auto basis = enumerate_basis(d, 5);
    for (const auto& g : basis) {
        const auto a = make_element(d, {g});
        CHECK(mul(one, a) == a);
        CHECK(mul(a, one) == a);
    }
    // occ_label round-trips through idempotent_occ
    for (int label = 1; label <= 6; ++label)
        CHECK(occ_label(d, idempotent_occ(d, label)) == label);
}

TEST_CASE("oracle cross-check: differential over the full basis") {
    const ArcDiagram& d = skein_diagram();
    for (int k = 4; k <= 5; ++k) {
        CAPTURE(k);
        for (const auto& g : enumerate_basis(d, k)) {
            const auto library = oracle::expand(d, diff_generator(d, g));
            const auto independent = oracle::diff(oracle::expand(d, g));
            if (library != independent) {
                CAPTURE(to_text(g));
                REQUIRE(library == independent);
            }
        }
    }
}

TEST_CASE("oracle cross-check: products over all compatible pairs") {
    const ArcDiagram& d = skein_diagram();
    const auto basis = enumerate_basis(d, 5);
    std::map<std::vector<int>, std::vector<int>> by_left;
    for (size_t i = 0; i < basis.size(); ++i)
        by_left[left_classes(d, basis[i])].push_back(static_cast<int>(i));

    size_t pairs = 0, nonzero = 0;
    for (size_t i = 0; i < basis.size(); ++i) {
        const auto key = right_classes(d, basis[i]);
        const auto it = by_left.find(key);
        if (it == by_left.end()) continue;
        const auto lhs = oracle::expand(d, basis[i]);
        for (int j : it->second) {
            ++pairs;
            const auto independent = oracle::mul(lhs, oracle::expand(d, basis[j]));
            const auto p = mul_generators(d, basis[i], basis[j]);
            oracle::ConcreteSum library;
            if (p) {
                library = oracle::expand(d, *p);
                ++nonzero;
            }
            if (library != independent) {
                CAPTURE(to_text(basis[i]));
                CAPTURE(to_text(basis[j]));
                REQUIRE(library == independent);
            }
        }
    }
    CHECK(pairs == 30226);   // frozen count of interface-compatible pairs
    CHECK(nonzero > 0);

    // pairs with mismatched interfaces vanish on both sides
    const auto a = word_generator(d, 3, {4, 6}, 5);
    const auto b = word_generator(d, 3, {2}, 1);
    CHECK(!mul_generators(d, a, b));
    CHECK(oracle::mul(oracle::expand(d, a), oracle::expand(d, b)).empty());
}

TEST_CASE("mixed diagrams are rejected") {
    const ArcDiagram& d = skein_diagram();
    static const ArcDiagram other = build_skein_arc_diagram();
    const auto a = identity_element(d, 5);
    const auto b = identity_element(other, 5);
    CHECK_THROWS_AS(mul(a, b), std::invalid_argument);
}

TEST_CASE("serialization round-trip") {
    const ArcDiagram& d = skein_diagram();
    const auto basis = enumerate_basis(d, 5);
    for (size_t i = 0; i < basis.size(); i += 37) {
        const auto j = to_json(basis[i]);
        CHECK(generator_from_json(j) == basis[i]);
    }
    const auto e = word_element(d, 3, {12, 3, 4, 56, 2}, 1) +
                   word_element(d, 3, {4, 56, 2}, 1);
    CHECK(element_from_json(d, to_json(e)) == e);
    CHECK(to_text(idempotent_occ(d, 3)) == "{occ 1 2 4 5 6}");
}
