#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "skein/homlab.hpp"
#include "skein/models.hpp"

using namespace skein;

namespace {

const Models& models() {
    static const auto m = build_models(standard_tables());
    return *m;
}

F2Matrix from_rows(int rows, int cols, std::initializer_list<int> entries) {
    F2Matrix m(rows, cols);
    auto it = entries.begin();
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m.set(r, c, *it++ != 0);
    return m;
}

}  // namespace

TEST_CASE("bit-packed matrix basics") {
    F2Matrix m(2, 70);
    CHECK_FALSE(m.get(1, 69));
    m.set(1, 69, true);
    CHECK(m.get(1, 69));
    m.set(1, 69, false);
    CHECK_FALSE(m.get(1, 69));

    const auto a = from_rows(2, 2, {1, 1, 0, 1});
    const auto b = from_rows(2, 2, {1, 0, 1, 1});
    const auto ab = f2_mul(a, b);
    CHECK_FALSE(ab.get(0, 0));  // 1*1 + 1*1 cancels over F2
    CHECK(ab.get(0, 1));
    CHECK(ab.get(1, 0));
    CHECK(ab.get(1, 1));
    CHECK(f2_add(a, a).get(0, 0) == false);
    CHECK(f2_mul(f2_identity(2), a).get(0, 1) == a.get(0, 1));

    CHECK(f2_rank(from_rows(3, 3, {1, 0, 1, 0, 1, 1, 1, 1, 0})) == 2);
    CHECK(f2_rank(f2_identity(5)) == 5);
}

TEST_CASE("linear solving") {
    // one equation, two unknowns: lowest-index pivot, free coordinate zero
    const auto m = from_rows(1, 2, {1, 1});
    F2Vector t = f2_vector(1);
    f2_set(t, 0, true);
    const auto x = f2_solve(m, t);
    REQUIRE(x.has_value());
    CHECK(f2_get(*x, 0));
    CHECK_FALSE(f2_get(*x, 1));

    // inconsistent system
    const auto zero = F2Matrix(2, 2);
    F2Vector t2 = f2_vector(2);
    f2_set(t2, 1, true);
    CHECK_FALSE(f2_solve(zero, t2).has_value());
}

TEST_CASE("morphism complexes have the frozen dimensions") {
    const auto& m = models();
    CHECK(MorComplex(m.mod[0], m.mod[1]).dimension() == 54);
    CHECK(MorComplex(m.mod[1], m.mod[2]).dimension() == 110);
    CHECK(MorComplex(m.mod[2], m.mod[0]).dimension() == 26);
}

TEST_CASE("the boundary matrix squares to zero and matches the boundary") {
    const auto& m = models();
    for (int k = 0; k < 3; ++k) {
        MorComplex mc(m.mod[k], m.mod[(k + 1) % 3]);
        const auto d2 = f2_mul(mc.boundary_matrix(), mc.boundary_matrix());
        for (int r = 0; r < mc.dimension(); ++r)
            for (int c = 0; c < mc.dimension(); ++c)
                if (d2.get(r, c)) FAIL("boundary matrix does not square to zero");

        const auto& f = m.map[k];
        const auto v = mc.decompose(f);
        CHECK(mc.assemble(v) == f);

        // matrix boundary of the cycle f vanishes
        F2Vector dv = f2_vector(mc.dimension());
        for (int r = 0; r < mc.dimension(); ++r) {
            bool bit = false;
            for (int c = 0; c < mc.dimension(); ++c)
                if (mc.boundary_matrix().get(r, c) && f2_get(v, c)) bit = !bit;
            f2_set(dv, r, bit);
        }
        for (int r = 0; r < mc.dimension(); ++r) CHECK_FALSE(f2_get(dv, r));
    }
}

TEST_CASE("solve_boundary finds primitives exactly when the class vanishes") {
    const auto& m = models();

    // a genuine boundary: d(phiinfty) bounds by construction
    const auto& phiinfty = skein_homotopy(m, SkeinK::infty);
    MorComplex mc(*phiinfty.source, *phiinfty.target);
    const auto target = morphism_boundary(phiinfty);
    const auto h = mc.solve_boundary(target);
    REQUIRE(h.has_value());
    CHECK(morphism_boundary(*h) == target);

    // the identity of B1 is a cycle but not a boundary
    const auto& b1 = m.mod[0];
    MorComplex endo(b1, b1);
    CHECK(morphism_boundary(identity_morphism(b1)).is_zero());
    CHECK_FALSE(endo.solve_boundary(identity_morphism(b1)).has_value());

    // the zero morphism bounds, with the all-zero primitive
    const auto z = endo.solve_boundary(zero_morphism(b1, b1));
    REQUIRE(z.has_value());
    CHECK(z->is_zero());
}

TEST_CASE("cone-equivalence certificates reject corrupted data") {
    const auto& m = models();
    const int k = 0;  // B1 against the cone of finfty
    const auto cone = mapping_cone(m.map[1], "Cone(finfty)");
    const int shift = m.mod[1].size();

    DMorphism G = zero_morphism(m.mod[k], cone);
    for (int x = 0; x < m.mod[k].size(); ++x) {
        for (const auto& t : m.map[k].terms[x]) G.terms[x].push_back(t);
        for (const auto& t : m.homotopy[k].terms[x])
            G.terms[x].push_back({t.coef, t.target + shift});
        std::sort(G.terms[x].begin(), G.terms[x].end());
    }
    DMorphism Psi = zero_morphism(cone, m.mod[k]);
    for (int u = 0; u < m.mod[1].size(); ++u)
        Psi.terms[u] = m.homotopy[1].terms[u];
    for (int v = 0; v < m.mod[2].size(); ++v)
        Psi.terms[v + shift] = m.map[2].terms[v];

    MorComplex mc(cone, cone);
    const auto H = mc.solve_boundary(add(compose(G, Psi), identity_morphism(cone)));
    REQUIRE(H.has_value());
    CHECK(!verify_cone_equivalence(G, Psi, *H));

    // breaking Psi breaks the retraction identity
    auto bad_psi = zero_morphism(cone, m.mod[k]);
    CHECK(verify_cone_equivalence(G, bad_psi, *H).has_value());

    // breaking G breaks the chain-map certificate
    auto bad_g = G;
    for (auto& terms : bad_g.terms)
        if (!terms.empty()) {
            terms.erase(terms.begin());
            break;
        }
    CHECK(verify_cone_equivalence(bad_g, Psi, *H).has_value());
}
