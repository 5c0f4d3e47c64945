#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "skein/arc_diagram.hpp"

namespace skein {

// One basis generator of the strands algebra of an arc diagram: a set of
// match classes occupied by horizontal strands (each drawn as a dotted pair,
// i.e. implicitly summed over its two positions) together with a set of
// moving strands, each an upward chord (start < end) inside a single arc.
//
// Validity: chord starts are pairwise distinct and lie in pairwise distinct
// match classes, likewise chord ends (an end may coincide with another
// chord's start, and a start class may recur as an end class), and the
// occupied classes are disjoint from the classes of every chord endpoint.
struct StrandsGenerator {
    std::vector<int> occupied;               // sorted match classes
    std::vector<std::pair<int, int>> moving; // sorted chords (start, end)

    friend auto operator<=>(const StrandsGenerator&, const StrandsGenerator&) = default;

    int strands() const {
        return static_cast<int>(occupied.size() + moving.size());
    }
};

// Checks the validity conditions above; returns an explanation on failure.
std::optional<std::string> validate_generator(const ArcDiagram& d,
                                              const StrandsGenerator& g);

// Match classes met by the left (resp. right) idempotent of a generator:
// occupied classes plus the classes of chord starts (resp. ends).
std::vector<int> left_classes(const ArcDiagram& d, const StrandsGenerator& g);
std::vector<int> right_classes(const ArcDiagram& d, const StrandsGenerator& g);

// An F2 sum of basis generators over a fixed diagram.  The zero element keeps
// the diagram pointer so mixed-diagram arithmetic can be rejected.
struct AlgebraElement {
    const ArcDiagram* diagram = nullptr;
    std::vector<StrandsGenerator> terms;  // sorted, duplicate-free

    bool is_zero() const { return terms.empty(); }
    friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

    // F2 addition (symmetric difference of term sets).
    AlgebraElement& operator+=(const AlgebraElement& o);
    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) {
        return a += b;
    }
};

AlgebraElement zero_element(const ArcDiagram& d);
AlgebraElement make_element(const ArcDiagram& d, std::vector<StrandsGenerator> terms);

// Product of two basis generators: either zero or a single basis generator.
// Zero when the idempotents fail to chain or when some pair of strands of the
// concatenated diagram crosses twice.
std::optional<StrandsGenerator> mul_generators(const ArcDiagram& d,
                                               const StrandsGenerator& a,
                                               const StrandsGenerator& b);

// Bilinear extension.  Throws std::invalid_argument on mixed diagrams.
AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b);

// Differential: resolves one crossing at a time, discarding resolutions that
// remove more than one crossing (double crossings).
AlgebraElement diff_generator(const ArcDiagram& d, const StrandsGenerator& g);
AlgebraElement diff(const AlgebraElement& a);

// The minimal idempotents of the k-strand summand: purely horizontal
// diagrams on each k-element set of match classes.
std::vector<AlgebraElement> idempotents(const ArcDiagram& d, int k);

// Sum of all minimal idempotents of the k-strand summand (the identity).
AlgebraElement identity_element(const ArcDiagram& d, int k);

// The minimal idempotent of the (num_classes - 1)-strand summand whose
// *unoccupied* match class is `arc_label`; for the fixed six-class diagram
// this is the idempotent written with the label of the single occupied
// geometric arc.
StrandsGenerator idempotent_occ(const ArcDiagram& d, int arc_label);
// Inverse of idempotent_occ on pure idempotents of that summand.
int occ_label(const ArcDiagram& d, const StrandsGenerator& idem);

// Element associated to a set of chords in the k-strand summand: the sum of
// its completions by horizontally occupied classes disjoint from every chord
// endpoint class.  Zero if no completion exists.
AlgebraElement associated_element(const ArcDiagram& d,
                                  std::vector<std::pair<int, int>> chords, int k);

// Chords labelled by concatenated elementary-chord digits (1,2,3,12,23,123,
// 4,...,78 for the fixed diagram).  Label 0 is invalid.
std::pair<int, int> chord_of_label(const ArcDiagram& d, int label);
// All labels, bottom to top (the full chord set J').
std::vector<int> all_chord_labels(const ArcDiagram& d);

// Product of associated elements of single chords, in the k-strand summand:
// (j1,...,jl) = a(rho_{j1}) * ... * a(rho_{jl}).  An empty word gives the
// identity.  Throws std::invalid_argument on labels outside the diagram.
AlgebraElement chord_word(const ArcDiagram& d, const std::vector<int>& labels, int k);

// Deterministic, duplicate-free enumeration of the whole k-strand basis.
std::vector<StrandsGenerator> enumerate_basis(const ArcDiagram& d, int k);

// Serialization: [{"occupied":[...],"moving":[[s,e],...]}, ...].
nlohmann::json to_json(const StrandsGenerator& g);
nlohmann::json to_json(const AlgebraElement& a);
StrandsGenerator generator_from_json(const nlohmann::json& j);
AlgebraElement element_from_json(const ArcDiagram& d, const nlohmann::json& j);

// Compact text form, e.g. "{occ 1 2 6 | 6-9 7-8}"; idempotents render as
// "{occ 1 2 4 5 6}".
std::string to_text(const StrandsGenerator& g);
std::string to_text(const AlgebraElement& a);

}  // namespace skein
