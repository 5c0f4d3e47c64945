#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skein/algebra.hpp"
#include "skein/grading.hpp"

#include <nlohmann/json_fwd.hpp>

namespace skein {

// One term of a structure map or morphism: coefficient tensor target
// generator, the target identified by its index in the receiving module.
struct DTerm {
    StrandsGenerator coef;
    int target = 0;

    auto operator<=>(const DTerm&) const = default;
};

using DTerms = std::vector<DTerm>;

// A left differential module over the strands algebra, presented by a finite
// generating set with idempotents and a structure map delta.
struct TypeDStructure {
    const ArcDiagram* diagram = nullptr;
    std::string name;
    std::vector<std::string> gen_names;
    std::vector<StrandsGenerator> idem;  // idempotent of each generator
    std::vector<DTerms> delta;           // sorted terms, one list per generator

    int size() const { return static_cast<int>(gen_names.size()); }
    int index_of(const std::string& gen) const;
};

// Shape and idempotent sanity of the presentation itself.
std::optional<std::string> validate_structure(const TypeDStructure& m);

// The structure equation: the algebra differential applied to coefficients
// plus the algebra action on a second application of delta must cancel.
// Returns a description of the first surviving term, if any.
std::optional<std::string> structure_check(const TypeDStructure& m);

// A degree-preserving-or-not map between two structures, one term list per
// source generator; targets index into the target structure.
struct DMorphism {
    const TypeDStructure* source = nullptr;
    const TypeDStructure* target = nullptr;
    std::vector<DTerms> terms;

    bool is_zero() const;
};

std::optional<std::string> validate_morphism(const DMorphism& f);

DMorphism zero_morphism(const TypeDStructure& src, const TypeDStructure& tgt);
DMorphism identity_morphism(const TypeDStructure& m);

// Sum over the coefficient field (terms cancel in pairs).
DMorphism add(const DMorphism& f, const DMorphism& g);

// (g o f)(x) keeps f's coefficient on the left of g's.
DMorphism compose(const DMorphism& g, const DMorphism& f);

// Differential on the morphism space: differentiate the coefficient, or
// follow the morphism with the target's delta, or precede it with the
// source's delta.
DMorphism morphism_boundary(const DMorphism& f);

// Cone generators are the source's followed by the target's; name clashes on
// the target side pick up a prime. Throws unless f is a chain map.
TypeDStructure mapping_cone(const DMorphism& f, const std::string& name);

bool operator==(const DMorphism& f, const DMorphism& g);

// --- gradings ---------------------------------------------------------------

// A grading of a structure by cosets of a stabilizer sublattice inside the
// refined grading lattice: one coset representative per generator.
struct GradedAssignment {
    AbelianLattice stabilizer;
    std::vector<Coords> rep;
};

// Every delta term must respect the coset grading, with the structure map
// dropping one unit of the central generator.
std::optional<std::string> graded_check(const TypeDStructure& m,
                                        const GradedAssignment& g,
                                        const RefinementData& r);

struct ShiftResult {
    bool vacuous = false;   // morphism had no terms to measure
    long long shift = 0;    // central-generator component of the degree
};

// Degree of a morphism in the skein-reduced grading: term degrees are
// compared modulo both stabilizers together with the meridian classes, so
// only the central component survives; throws if the terms disagree there.
ShiftResult morphism_shift(const DMorphism& f, const GradedAssignment& src,
                           const GradedAssignment& tgt, const RefinementData& r);

// --- serialization ----------------------------------------------------------

nlohmann::json to_json(const TypeDStructure& m);
nlohmann::json to_json(const DMorphism& f);
std::string to_text(const TypeDStructure& m);
std::string to_text(const DMorphism& f);

}  // namespace skein
