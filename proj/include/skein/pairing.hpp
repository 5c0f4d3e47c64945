#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "skein/homlab.hpp"

#include <nlohmann/json_fwd.hpp>

namespace skein {

// A right module-up-to-homotopy over the strands algebra, presented on a
// finite basis.  `action(x, word)` is the operation taking the basis element
// x and a word of algebra basis generators, returning an F2 set of basis
// indices; the empty word gives the internal differential.  Operations vanish
// above `max_arity` algebra inputs, which keeps box tensor sums finite.
class TypeAStructure {
  public:
    virtual ~TypeAStructure() = default;

    const ArcDiagram* diagram = nullptr;
    std::string name;
    std::vector<std::string> gen_names;
    std::vector<StrandsGenerator> right_idem;

    int size() const { return static_cast<int>(gen_names.size()); }
    virtual std::vector<int> action(int x,
                                    const std::vector<StrandsGenerator>& word)
        const = 0;
    virtual int max_arity() const = 0;
};

// The algebra summand as a right module over itself: the differential and the
// product, nothing in higher arity.
class RegularModule : public TypeAStructure {
  public:
    RegularModule(const ArcDiagram& d, int strands);

    std::vector<int> action(int x, const std::vector<StrandsGenerator>& word)
        const override;
    int max_arity() const override { return 1; }

    const std::vector<StrandsGenerator>& basis() const { return basis_; }
    int index_of(const StrandsGenerator& g) const;

  private:
    std::vector<StrandsGenerator> basis_;
};

// An ordinary F2 chain complex on a named basis.
struct ChainComplex {
    std::vector<std::string> basis_names;
    F2Matrix d;  // column j lists the boundary of basis element j
};

// The boundary must square to zero.
std::optional<std::string> complex_check(const ChainComplex& c);

// Dimensions (dim ker - dim im) of the homology, as a single number since the
// complexes here are ungraded.
int homology_dimension(const ChainComplex& c);

// Pairs a right module with a left structure.  Basis elements are the
// idempotent-compatible pairs, ordered with the structure generator outermost
// so that pairing with a cone keeps its two blocks contiguous.
ChainComplex box_tensor(const TypeAStructure& m, const TypeDStructure& n);

// The chain map Id (x) f between the paired complexes.
F2Matrix box_morphism(const TypeAStructure& m, const DMorphism& f);

// Mapping cone of a chain map between ordinary complexes; basis names from
// the source keep their names, target names gain a prime on collision.
ChainComplex complex_cone(const F2Matrix& f, const ChainComplex& from,
                          const ChainComplex& to);

// True when the two complexes agree up to renaming basis elements in order.
bool same_shape(const ChainComplex& a, const ChainComplex& b);

nlohmann::json to_json(const ChainComplex& c);

}  // namespace skein
