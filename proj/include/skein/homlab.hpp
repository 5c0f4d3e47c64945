#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "skein/dmod.hpp"

namespace skein {

// Dense F2 matrix with bit-packed rows.
struct F2Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::uint64_t>> bits;

    F2Matrix() = default;
    F2Matrix(int r, int c);
    bool get(int r, int c) const;
    void set(int r, int c, bool v);
};

using F2Vector = std::vector<std::uint64_t>;

F2Vector f2_vector(int dim);
bool f2_get(const F2Vector& v, int i);
void f2_set(F2Vector& v, int i, bool b);

// Solve M x = t; returns the lexicographically-least solution under
// lowest-index pivoting (free coordinates zero), or nothing if inconsistent.
std::optional<F2Vector> f2_solve(const F2Matrix& m, const F2Vector& t);

int f2_rank(const F2Matrix& m);

F2Matrix f2_mul(const F2Matrix& a, const F2Matrix& b);
F2Matrix f2_add(const F2Matrix& a, const F2Matrix& b);
F2Matrix f2_identity(int n);

// One basis element of the space of module maps: a single-term morphism
// sending generator `from` of the source to coef (x) `to` in the target.
struct MorBasisElement {
    int from = 0;
    StrandsGenerator coef;
    int to = 0;
};

// The F2 chain complex of morphisms between two finitely generated
// structures, with its differential assembled as a matrix.  Basis order is
// deterministic: by source generator, then target generator, then coefficient.
class MorComplex {
  public:
    MorComplex(const TypeDStructure& source, const TypeDStructure& target);

    int dimension() const { return static_cast<int>(basis_.size()); }
    const std::vector<MorBasisElement>& basis() const { return basis_; }
    const F2Matrix& boundary_matrix() const { return boundary_; }

    F2Vector decompose(const DMorphism& f) const;
    DMorphism assemble(const F2Vector& v) const;

    // A primitive H with boundary equal to `target`, if the class vanishes.
    std::optional<DMorphism> solve_boundary(const DMorphism& target) const;

  private:
    const TypeDStructure* source_;
    const TypeDStructure* target_;
    std::vector<MorBasisElement> basis_;
    F2Matrix boundary_;
    int index_of(const DTerm& term, int from) const;
};

// Certificate-level check that G and Psi exhibit X as a deformation retract
// of C: both are chain maps, Psi o G is the identity of X, and H bounds
// G o Psi + Id_C.
std::optional<std::string> verify_cone_equivalence(const DMorphism& G,
                                                   const DMorphism& Psi,
                                                   const DMorphism& H);

}  // namespace skein
