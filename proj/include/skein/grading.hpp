#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "skein/algebra.hpp"
#include "skein/arc_diagram.hpp"

namespace skein {

// An element of the unrefined grading group of an arc diagram: a half-integer
// Maslov component (stored doubled) and a homology class of chords.
// Membership requires maslov2 = epsilon2(h) mod 2, where epsilon counts the
// points over which h has half-integer average multiplicity, a quarter each.
struct GradingElement {
    const ArcDiagram* diagram = nullptr;
    long long maslov2 = 0;
    ChordClass h;

    friend bool operator==(const GradingElement&, const GradingElement&) = default;
};

// Doubled average multiplicity of a homology class across a point: the sum of
// the coefficients of the elementary chords just below and just above it.
long long avg_multiplicity2(const ArcDiagram& d, int point, const ChordClass& h);
// Doubled multiplicity pairing L(a,b) = m(boundary(a), b), where the boundary
// of a chord counts its endpoint with sign + and its start with sign -.
long long l_pairing2(const ArcDiagram& d, const ChordClass& a, const ChordClass& b);
// Doubled epsilon: half the number of points with odd doubled multiplicity,
// reduced mod 2.
int epsilon2(const ArcDiagram& d, const ChordClass& h);

// Constructor enforcing membership; throws std::invalid_argument otherwise.
GradingElement make_grading(const ArcDiagram& d, long long maslov2, ChordClass h);
GradingElement grading_identity(const ArcDiagram& d);
// The central element (1, 0).
GradingElement grading_lambda(const ArcDiagram& d);

// Group law (m,a)(n,b) = (m + n + L(a,b), a + b) and its inverse.
GradingElement group_mul(const GradingElement& x, const GradingElement& y);
GradingElement group_inv(const GradingElement& x);
GradingElement group_pow(const GradingElement& x, long long n);

// Grading of a basis generator: (inv - m(S, h), h), computed over every
// choice of section point for the occupied classes (all choices must agree).
GradingElement gr_generator(const ArcDiagram& d, const StrandsGenerator& g);
// Common grading of a nonzero homogeneous element; throws if terms disagree.
GradingElement gr_element(const AlgebraElement& a);

// A grading refinement: one grading-group element per minimal idempotent of
// the top summand (keyed by the unoccupied-class label), with a base label.
struct RefinementData {
    const ArcDiagram* diagram = nullptr;
    int base_label = 0;
    std::map<int, GradingElement> assign;
};

// Checks the defining property: the boundary of each assigned class, pushed
// to match classes, equals (classes of I) - (classes of base idempotent), and
// the base is assigned the identity.
std::optional<std::string> validate_refinement(const RefinementData& r);

// Refined grading r(I_left) * gr(a) * r(I_right)^{-1} of a homogeneous
// nonzero element whose terms all agree.
GradingElement refine(const AlgebraElement& a, const RefinementData& r);

// --- the refined grading group of the fixed diagram -----------------------
//
// For the four-arc diagram the refined image is free abelian of rank 4 with
// basis lambda, A1 = (-1/2,[rho123]), A2 = (-1/2,[rho456]), A3 = (-3/2,[rho78])
// (classes written by their chord labels).  Coordinates are (x0,x1,x2,x3)
// with g = x0*lambda + x1*A1 + x2*A2 + x3*A3.
using Coords = std::array<long long, 4>;

GradingElement grbar_basis_element(const ArcDiagram& d, int i);  // i=1,2,3 -> A_i
// Decompose; throws std::invalid_argument when g lies outside the subgroup.
Coords grbar_coords(const GradingElement& g);
GradingElement grading_from_coords(const ArcDiagram& d, const Coords& c);
// The skein-reduced grading: the quotient by A1, A2, A3, identified with the
// integers by lambda -> 1 (i.e. the x0 coordinate).
long long skein_reduce(const GradingElement& g);

// Grading of a domain: (-e - n1 - n2, boundary class), all inputs doubled.
GradingElement domain_grading(const ArcDiagram& d, long long e2, long long n1_2,
                              long long n2_2, const ChordClass& boundary);

// --- integer lattices in the rank-4 coordinate space ----------------------
struct AbelianLattice {
    std::vector<Coords> gens;

    bool contains(const Coords& v) const;
    friend bool operator==(const AbelianLattice&, const AbelianLattice&) = default;
};

// Cosets g + L are equal iff the difference lies in L.
bool same_coset(const Coords& a, const Coords& b, const AbelianLattice& l);

// Invariant factors of span(numerator) / span(relators): torsion factors
// (each > 1, each dividing the next) followed by one 0 per free summand.
// Requires the relators to lie in the numerator span.
std::vector<long long> quotient_invariants(const std::vector<Coords>& numerator,
                                           const std::vector<Coords>& relators);

// Rendering: "(m, c1[rho1] + ...)" with halves as fractions, e.g.
// "(-3/2, [rho78])"; chord labels follow the elementary numbering.
std::string to_text(const GradingElement& g);
std::string coords_text(const Coords& c);  // e.g. "-L + A1 + A2" ("0" if zero)

nlohmann::json to_json(const GradingElement& g);
GradingElement grading_from_json(const ArcDiagram& d, const nlohmann::json& j);

}  // namespace skein
