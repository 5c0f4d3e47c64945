#include "skein/homlab.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace skein {

F2Matrix::F2Matrix(int r, int c)
    : rows(r), cols(c), bits(r, std::vector<std::uint64_t>((c + 63) / 64, 0)) {}

bool F2Matrix::get(int r, int c) const { return bits[r][c / 64] >> (c % 64) & 1; }

void F2Matrix::set(int r, int c, bool v) {
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    if (v)
        bits[r][c / 64] |= mask;
    else
        bits[r][c / 64] &= ~mask;
}

F2Vector f2_vector(int dim) { return F2Vector((dim + 63) / 64, 0); }

bool f2_get(const F2Vector& v, int i) { return v[i / 64] >> (i % 64) & 1; }

void f2_set(F2Vector& v, int i, bool b) {
    const std::uint64_t mask = std::uint64_t{1} << (i % 64);
    if (b)
        v[i / 64] |= mask;
    else
        v[i / 64] &= ~mask;
}

std::optional<F2Vector> f2_solve(const F2Matrix& m, const F2Vector& t) {
    // Gauss-Jordan on the augmented system with lowest-index pivoting.
    std::vector<std::vector<std::uint64_t>> a = m.bits;
    std::vector<bool> rhs(m.rows);
    for (int r = 0; r < m.rows; ++r) rhs[r] = f2_get(t, r);

    std::vector<int> pivot_col;
    int rank = 0;
    for (int c = 0; c < m.cols && rank < m.rows; ++c) {
        int p = -1;
        for (int r = rank; r < m.rows; ++r)
            if (a[r][c / 64] >> (c % 64) & 1) {
                p = r;
                break;
            }
        if (p < 0) continue;
        std::swap(a[rank], a[p]);
        std::swap(rhs[rank], rhs[p]);
        for (int r = 0; r < m.rows; ++r) {
            if (r == rank || !(a[r][c / 64] >> (c % 64) & 1)) continue;
            for (size_t w = 0; w < a[r].size(); ++w) a[r][w] ^= a[rank][w];
            rhs[r] = rhs[r] != rhs[rank];
        }
        pivot_col.push_back(c);
        ++rank;
    }
    for (int r = rank; r < m.rows; ++r)
        if (rhs[r]) return std::nullopt;

    F2Vector x = f2_vector(m.cols);
    for (int r = 0; r < rank; ++r) f2_set(x, pivot_col[r], rhs[r]);
    return x;
}

int f2_rank(const F2Matrix& m) {
    std::vector<std::vector<std::uint64_t>> a = m.bits;
    int rank = 0;
    for (int c = 0; c < m.cols && rank < m.rows; ++c) {
        int p = -1;
        for (int r = rank; r < m.rows; ++r)
            if (a[r][c / 64] >> (c % 64) & 1) {
                p = r;
                break;
            }
        if (p < 0) continue;
        std::swap(a[rank], a[p]);
        for (int r = rank + 1; r < m.rows; ++r)
            if (a[r][c / 64] >> (c % 64) & 1)
                for (size_t w = 0; w < a[r].size(); ++w) a[r][w] ^= a[rank][w];
        ++rank;
    }
    return rank;
}

F2Matrix f2_mul(const F2Matrix& a, const F2Matrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("F2 product shape mismatch");
    F2Matrix c(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k)
            if (a.get(i, k))
                for (size_t w = 0; w < c.bits[i].size(); ++w)
                    c.bits[i][w] ^= b.bits[k][w];
    return c;
}

F2Matrix f2_add(const F2Matrix& a, const F2Matrix& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("F2 sum shape mismatch");
    F2Matrix c = a;
    for (int i = 0; i < a.rows; ++i)
        for (size_t w = 0; w < c.bits[i].size(); ++w) c.bits[i][w] ^= b.bits[i][w];
    return c;
}

F2Matrix f2_identity(int n) {
    F2Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

// --- morphism complexes ------------------------------------------------------

MorComplex::MorComplex(const TypeDStructure& source, const TypeDStructure& target)
    : source_(&source), target_(&target) {
    if (source.diagram != target.diagram)
        throw std::invalid_argument("morphism complex over mixed diagrams");
    const ArcDiagram& d = *source.diagram;
    if (source.size() == 0 || source.idem[0].occupied.empty())
        throw std::invalid_argument("morphism complex needs occupied idempotents");
    const int k = static_cast<int>(source.idem[0].occupied.size());

    // Bucket the algebra basis by its pair of idempotents.
    std::map<std::pair<std::vector<int>, std::vector<int>>,
             std::vector<StrandsGenerator>>
        buckets;
    for (const auto& g : enumerate_basis(d, k))
        buckets[{left_classes(d, g), right_classes(d, g)}].push_back(g);

    for (int x = 0; x < source.size(); ++x)
        for (int y = 0; y < target.size(); ++y) {
            auto it = buckets.find(
                {source.idem[x].occupied, target.idem[y].occupied});
            if (it == buckets.end()) continue;
            for (const auto& a : it->second) basis_.push_back({x, a, y});
        }

    boundary_ = F2Matrix(dimension(), dimension());
    for (int j = 0; j < dimension(); ++j) {
        DMorphism e = zero_morphism(source, target);
        e.terms[basis_[j].from] = {{basis_[j].coef, basis_[j].to}};
        const DMorphism de = morphism_boundary(e);
        for (int x = 0; x < source.size(); ++x)
            for (const auto& term : de.terms[x])
                boundary_.set(index_of(term, x), j, true);
    }
}

int MorComplex::index_of(const DTerm& term, int from) const {
    // Binary search within the (from, to) block would need offsets; the
    // complexes here are small, so a linear scan is fine and simpler.
    for (int i = 0; i < dimension(); ++i)
        if (basis_[i].from == from && basis_[i].to == term.target &&
            basis_[i].coef == term.coef)
            return i;
    throw std::logic_error("morphism term outside the complex basis");
}

F2Vector MorComplex::decompose(const DMorphism& f) const {
    if (f.source != source_ || f.target != target_)
        throw std::invalid_argument("morphism belongs to a different complex");
    F2Vector v = f2_vector(dimension());
    for (int x = 0; x < source_->size(); ++x)
        for (const auto& term : f.terms[x]) f2_set(v, index_of(term, x), true);
    return v;
}

DMorphism MorComplex::assemble(const F2Vector& v) const {
    DMorphism f = zero_morphism(*source_, *target_);
    for (int i = 0; i < dimension(); ++i)
        if (f2_get(v, i))
            f.terms[basis_[i].from].push_back({basis_[i].coef, basis_[i].to});
    for (auto& t : f.terms) std::sort(t.begin(), t.end());
    return f;
}

std::optional<DMorphism> MorComplex::solve_boundary(const DMorphism& target) const {
    auto x = f2_solve(boundary_, decompose(target));
    if (!x) return std::nullopt;
    return assemble(*x);
}

std::optional<std::string> verify_cone_equivalence(const DMorphism& G,
                                                   const DMorphism& Psi,
                                                   const DMorphism& H) {
    if (G.source != Psi.target || G.target != Psi.source)
        return "G and Psi do not connect the same pair of structures";
    if (H.source != G.target || H.target != G.target)
        return "H is not an endomorphism of the cone side";
    if (auto err = validate_morphism(G)) return "G invalid: " + *err;
    if (auto err = validate_morphism(Psi)) return "Psi invalid: " + *err;
    if (auto err = validate_morphism(H)) return "H invalid: " + *err;
    if (!morphism_boundary(G).is_zero()) return "G is not a chain map";
    if (!morphism_boundary(Psi).is_zero()) return "Psi is not a chain map";
    if (!(compose(Psi, G) == identity_morphism(*G.source)))
        return "Psi o G is not the identity";
    const DMorphism want = add(compose(G, Psi), identity_morphism(*G.target));
    if (!(morphism_boundary(H) == want))
        return "H does not bound G o Psi + Id";
    return std::nullopt;
}

}  // namespace skein
