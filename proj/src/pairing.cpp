#include "skein/pairing.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace skein {

RegularModule::RegularModule(const ArcDiagram& d, int strands) {
    diagram = &d;
    name = "regular[" + std::to_string(strands) + "]";
    basis_ = enumerate_basis(d, strands);
    for (const auto& g : basis_) {
        gen_names.push_back(to_text(g));
        StrandsGenerator idem;
        idem.occupied = right_classes(d, g);
        right_idem.push_back(std::move(idem));
    }
}

int RegularModule::index_of(const StrandsGenerator& g) const {
    const auto it = std::lower_bound(basis_.begin(), basis_.end(), g);
    if (it == basis_.end() || !(*it == g))
        throw std::invalid_argument("generator outside the module basis");
    return static_cast<int>(it - basis_.begin());
}

std::vector<int> RegularModule::action(
    int x, const std::vector<StrandsGenerator>& word) const {
    std::vector<int> out;
    if (word.empty()) {
        for (const auto& t : diff_generator(*diagram, basis_[x]).terms)
            out.push_back(index_of(t));
    } else if (word.size() == 1) {
        if (auto p = mul_generators(*diagram, basis_[x], word[0]))
            out.push_back(index_of(*p));
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct PairBasis {
    std::vector<std::pair<int, int>> pairs;  // (module index, structure index)
    std::map<std::pair<int, int>, int> index;
};

PairBasis build_pairs(const TypeAStructure& m, const TypeDStructure& n) {
    if (m.diagram != n.diagram)
        throw std::invalid_argument("pairing over mixed diagrams");
    PairBasis b;
    for (int y = 0; y < n.size(); ++y)
        for (int x = 0; x < m.size(); ++x)
            if (m.right_idem[x].occupied == n.idem[y].occupied) {
                b.index[{x, y}] = static_cast<int>(b.pairs.size());
                b.pairs.push_back({x, y});
            }
    return b;
}

// All delta paths out of y of length up to `arity`: the algebra word read off
// the path and its endpoint, with multiplicity (F2 cancellation happens when
// the words act).
void delta_paths(const TypeDStructure& n, int y, int arity,
                 std::vector<StrandsGenerator>& word,
                 std::vector<std::pair<std::vector<StrandsGenerator>, int>>& out) {
    out.push_back({word, y});
    if (arity == 0) return;
    for (const auto& [a, z] : n.delta[y]) {
        word.push_back(a);
        delta_paths(n, z, arity - 1, word, out);
        word.pop_back();
    }
}

std::string unclashed(std::set<std::string>& used, std::string name) {
    while (used.count(name)) name += "'";
    used.insert(name);
    return name;
}

}  // namespace

ChainComplex box_tensor(const TypeAStructure& m, const TypeDStructure& n) {
    const PairBasis b = build_pairs(m, n);
    ChainComplex c;
    for (const auto& [x, y] : b.pairs)
        c.basis_names.push_back(m.gen_names[x] + " (x) " + n.gen_names[y]);
    const int dim = static_cast<int>(b.pairs.size());
    c.d = F2Matrix(dim, dim);
    for (int j = 0; j < dim; ++j) {
        const auto [x, y] = b.pairs[j];
        std::vector<std::pair<std::vector<StrandsGenerator>, int>> paths;
        std::vector<StrandsGenerator> word;
        delta_paths(n, y, m.max_arity(), word, paths);
        for (const auto& [w, z] : paths)
            for (int xz : m.action(x, w)) {
                const int i = b.index.at({xz, z});
                c.d.set(i, j, !c.d.get(i, j));
            }
    }
    return c;
}

F2Matrix box_morphism(const TypeAStructure& m, const DMorphism& f) {
    const PairBasis src = build_pairs(m, *f.source);
    const PairBasis tgt = build_pairs(m, *f.target);
    F2Matrix mat(static_cast<int>(tgt.pairs.size()),
                 static_cast<int>(src.pairs.size()));
    for (size_t j = 0; j < src.pairs.size(); ++j) {
        const auto [x, y] = src.pairs[j];
        std::vector<std::pair<std::vector<StrandsGenerator>, int>> paths;
        std::vector<StrandsGenerator> word;
        delta_paths(*f.source, y, m.max_arity() - 1, word, paths);
        for (const auto& [w, yy] : paths)
            for (const auto& [bcoef, z] : f.terms[yy]) {
                std::vector<StrandsGenerator> full = w;
                full.push_back(bcoef);
                for (int xz : m.action(x, full)) {
                    const int i = tgt.index.at({xz, z});
                    mat.set(i, static_cast<int>(j), !mat.get(i, static_cast<int>(j)));
                }
            }
    }
    return mat;
}

std::optional<std::string> complex_check(const ChainComplex& c) {
    if (c.d.rows != c.d.cols ||
        c.d.rows != static_cast<int>(c.basis_names.size()))
        return "boundary matrix shape disagrees with the basis";
    const F2Matrix sq = f2_mul(c.d, c.d);
    for (int i = 0; i < sq.rows; ++i)
        for (int j = 0; j < sq.cols; ++j)
            if (sq.get(i, j))
                return "boundary fails to square to zero from '" +
                       c.basis_names[j] + "' to '" + c.basis_names[i] + "'";
    return std::nullopt;
}

int homology_dimension(const ChainComplex& c) {
    return c.d.cols - 2 * f2_rank(c.d);
}

ChainComplex complex_cone(const F2Matrix& f, const ChainComplex& from,
                          const ChainComplex& to) {
    const int nf = from.d.cols, nt = to.d.cols;
    if (f.cols != nf || f.rows != nt)
        throw std::invalid_argument("cone of a map with the wrong shape");
    ChainComplex c;
    std::set<std::string> used;
    for (const auto& s : from.basis_names)
        c.basis_names.push_back(unclashed(used, s));
    for (const auto& s : to.basis_names)
        c.basis_names.push_back(unclashed(used, s));
    c.d = F2Matrix(nf + nt, nf + nt);
    for (int i = 0; i < nf; ++i)
        for (int j = 0; j < nf; ++j) c.d.set(i, j, from.d.get(i, j));
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < nt; ++j) c.d.set(nf + i, nf + j, to.d.get(i, j));
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < nf; ++j) c.d.set(nf + i, j, f.get(i, j));
    return c;
}

bool same_shape(const ChainComplex& a, const ChainComplex& b) {
    return a.d.rows == b.d.rows && a.d.cols == b.d.cols && a.d.bits == b.d.bits;
}

nlohmann::json to_json(const ChainComplex& c) {
    nlohmann::json boundary = nlohmann::json::array();
    for (int j = 0; j < c.d.cols; ++j) {
        nlohmann::json targets = nlohmann::json::array();
        for (int i = 0; i < c.d.rows; ++i)
            if (c.d.get(i, j)) targets.push_back(c.basis_names[i]);
        if (!targets.empty())
            boundary.push_back(
                {{"from", c.basis_names[j]}, {"to", targets}});
    }
    return nlohmann::json{{"basis", c.basis_names}, {"boundary", boundary}};
}

}  // namespace skein
