#include "skein/grading.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

namespace skein {

namespace {

void require_same_diagram(const GradingElement& a, const GradingElement& b) {
    if (a.diagram == nullptr || b.diagram == nullptr)
        throw std::invalid_argument("grading element missing its diagram");
    if (a.diagram != b.diagram)
        throw std::invalid_argument("mixed-diagram grading operands");
}

// Coefficient of the elementary chord ending (below=true) or starting at p.
long long side_coefficient(const ArcDiagram& d, int p, const ChordClass& h, bool below) {
    for (int i = 0; i < d.num_elementary(); ++i) {
        const auto& [s, e] = d.elementary[i];
        if ((below && e == p) || (!below && s == p)) return h.c.at(i);
    }
    return 0;
}

int crossings(const ArcDiagram& d, const std::vector<std::pair<int, int>>& chords,
              const std::vector<int>& sections) {
    int n = 0;
    for (size_t i = 0; i < chords.size(); ++i)
        for (size_t j = i + 1; j < chords.size(); ++j)
            if ((chords[i].first < chords[j].first) !=
                (chords[i].second < chords[j].second))
                ++n;
    for (int p : sections)
        for (const auto& [s, e] : chords)
            if (s < p && p < e && d.same_arc(p, s)) ++n;
    return n;
}

}  // namespace

long long avg_multiplicity2(const ArcDiagram& d, int point, const ChordClass& h) {
    return side_coefficient(d, point, h, true) + side_coefficient(d, point, h, false);
}

long long l_pairing2(const ArcDiagram& d, const ChordClass& a, const ChordClass& b) {
    long long r = 0;
    for (int i = 0; i < d.num_elementary(); ++i) {
        if (a.c.at(i) == 0) continue;
        const auto& [s, e] = d.elementary[i];
        r += a.c[i] * (avg_multiplicity2(d, e, b) - avg_multiplicity2(d, s, b));
    }
    return r;
}

int epsilon2(const ArcDiagram& d, const ChordClass& h) {
    int odd = 0;
    for (int p = 1; p <= d.num_points(); ++p)
        if (avg_multiplicity2(d, p, h) % 2 != 0) ++odd;
    if (odd % 2 != 0) throw std::logic_error("odd number of half-multiplicity points");
    return (odd / 2) % 2;
}

GradingElement make_grading(const ArcDiagram& d, long long maslov2, ChordClass h) {
    if (static_cast<int>(h.c.size()) != d.num_elementary())
        throw std::invalid_argument("homology class has the wrong dimension");
    const long long parity = ((maslov2 - epsilon2(d, h)) % 2 + 2) % 2;
    if (parity != 0)
        throw std::invalid_argument(
            "Maslov component fails the epsilon parity constraint");
    return GradingElement{&d, maslov2, std::move(h)};
}

GradingElement grading_identity(const ArcDiagram& d) {
    return GradingElement{&d, 0, zero_class(d)};
}

GradingElement grading_lambda(const ArcDiagram& d) {
    return GradingElement{&d, 2, zero_class(d)};
}

GradingElement group_mul(const GradingElement& x, const GradingElement& y) {
    require_same_diagram(x, y);
    return GradingElement{x.diagram,
                          x.maslov2 + y.maslov2 + l_pairing2(*x.diagram, x.h, y.h),
                          x.h + y.h};
}

GradingElement group_inv(const GradingElement& x) {
    if (x.diagram == nullptr)
        throw std::invalid_argument("grading element missing its diagram");
    return GradingElement{x.diagram, -x.maslov2 + l_pairing2(*x.diagram, x.h, x.h),
                          -x.h};
}

GradingElement group_pow(const GradingElement& x, long long n) {
    GradingElement r = grading_identity(*x.diagram);
    GradingElement base = n < 0 ? group_inv(x) : x;
    for (long long i = 0, m = std::llabs(n); i < m; ++i) r = group_mul(r, base);
    return r;
}

GradingElement gr_generator(const ArcDiagram& d, const StrandsGenerator& g) {
    if (auto err = validate_generator(d, g))
        throw std::invalid_argument("invalid strands generator: " + *err);
    ChordClass h = zero_class(d);
    for (const auto& [s, e] : g.moving) h += chord_class(d, s, e);

    std::optional<long long> value2;
    const size_t n = g.occupied.size();
    for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
        std::vector<int> sections;
        sections.reserve(n);
        for (size_t i = 0; i < n; ++i) {
            const auto& pts = d.points_of_class(g.occupied[i]);
            sections.push_back(pts.at(pts.size() == 1 ? 0 : (mask >> i & 1)));
        }
        long long m2 = 0;
        for (int p : sections) m2 += avg_multiplicity2(d, p, h);
        for (const auto& [s, e] : g.moving) m2 += avg_multiplicity2(d, s, h);
        const long long v2 = 2 * crossings(d, g.moving, sections) - m2;
        if (value2 && *value2 != v2)
            throw std::logic_error("generator grading depends on section choice");
        value2 = v2;
    }
    return make_grading(d, *value2, std::move(h));
}

GradingElement gr_element(const AlgebraElement& a) {
    if (a.diagram == nullptr)
        throw std::invalid_argument("algebra element missing its diagram");
    if (a.is_zero())
        throw std::invalid_argument("the zero element has no grading");
    std::optional<GradingElement> g;
    for (const auto& t : a.terms) {
        GradingElement gt = gr_generator(*a.diagram, t);
        if (g && !(*g == gt))
            throw std::invalid_argument("element is not grading-homogeneous");
        g = std::move(gt);
    }
    return *g;
}

std::optional<std::string> validate_refinement(const RefinementData& r) {
    const ArcDiagram& d = *r.diagram;
    if (!r.assign.count(r.base_label)) return "base idempotent has no assignment";
    for (const auto& [label, g] : r.assign) {
        if (g.diagram != r.diagram) return "assignment over a foreign diagram";
        // Push the boundary of the class to match classes; compare against
        // (classes of I) - (classes of base I), i.e. [base label] - [label]
        // since the idempotents occupy the complements of their labels.
        std::vector<long long> delta(d.num_classes, 0);
        for (int i = 0; i < d.num_elementary(); ++i) {
            const auto& [s, e] = d.elementary[i];
            delta[d.cls(e) - 1] += g.h.c.at(i);
            delta[d.cls(s) - 1] -= g.h.c.at(i);
        }
        std::vector<long long> want(d.num_classes, 0);
        want[r.base_label - 1] += 1;
        want[label - 1] -= 1;
        if (delta != want) return "assigned class has the wrong boundary";
    }
    const auto& base = r.assign.at(r.base_label);
    if (base.maslov2 != 0 || !base.h.is_zero())
        return "base idempotent not assigned the identity";
    return std::nullopt;
}

GradingElement refine(const AlgebraElement& a, const RefinementData& r) {
    if (a.diagram != r.diagram)
        throw std::invalid_argument("refinement data over a different diagram");
    if (a.is_zero()) throw std::invalid_argument("the zero element has no grading");
    const ArcDiagram& d = *a.diagram;
    std::optional<GradingElement> out;
    for (const auto& t : a.terms) {
        StrandsGenerator li, ri;
        li.occupied = left_classes(d, t);
        ri.occupied = right_classes(d, t);
        const auto& rl = r.assign.at(occ_label(d, li));
        const auto& rr = r.assign.at(occ_label(d, ri));
        GradingElement v =
            group_mul(group_mul(rl, gr_generator(d, t)), group_inv(rr));
        if (out && !(*out == v))
            throw std::invalid_argument("element is not refined-grading-homogeneous");
        out = std::move(v);
    }
    return *out;
}

GradingElement grbar_basis_element(const ArcDiagram& d, int i) {
    switch (i) {
        case 1: {
            auto [s, e] = chord_of_label(d, 123);
            return make_grading(d, -1, chord_class(d, s, e));
        }
        case 2: {
            auto [s, e] = chord_of_label(d, 456);
            return make_grading(d, -1, chord_class(d, s, e));
        }
        case 3: {
            auto [s, e] = chord_of_label(d, 78);
            return make_grading(d, -3, chord_class(d, s, e));
        }
        default:
            throw std::invalid_argument("basis index must be 1, 2 or 3");
    }
}

Coords grbar_coords(const GradingElement& g) {
    const ArcDiagram& d = *g.diagram;
    if (d.num_elementary() != 8)
        throw std::invalid_argument("refined coordinates need the fixed diagram");
    const auto& c = g.h.c;
    if (c[0] != c[1] || c[1] != c[2] || c[3] != c[4] || c[4] != c[5] || c[6] != c[7])
        throw std::invalid_argument("class outside the refined subgroup");
    const long long x1 = c[0], x2 = c[3], x3 = c[6];
    const long long num = g.maslov2 + x1 + x2 + 3 * x3;
    if (num % 2 != 0)
        throw std::invalid_argument("Maslov component outside the refined subgroup");
    return Coords{num / 2, x1, x2, x3};
}

GradingElement grading_from_coords(const ArcDiagram& d, const Coords& c) {
    GradingElement g = group_pow(grading_lambda(d), c[0]);
    for (int i = 1; i <= 3; ++i)
        g = group_mul(g, group_pow(grbar_basis_element(d, i), c[i]));
    return g;
}

long long skein_reduce(const GradingElement& g) { return grbar_coords(g)[0]; }

GradingElement domain_grading(const ArcDiagram& d, long long e2, long long n1_2,
                              long long n2_2, const ChordClass& boundary) {
    return make_grading(d, -e2 - n1_2 - n2_2, boundary);
}

// --- lattices --------------------------------------------------------------

namespace {

// Row echelon form over the integers (Hermite-style): returns rows with
// strictly increasing pivot columns.
std::vector<Coords> hermite_rows(std::vector<Coords> rows) {
    size_t r = 0;
    for (size_t c = 0; c < 4 && r < rows.size(); ++c) {
        while (true) {
            size_t best = rows.size();
            for (size_t i = r; i < rows.size(); ++i)
                if (rows[i][c] != 0 &&
                    (best == rows.size() ||
                     std::llabs(rows[i][c]) < std::llabs(rows[best][c])))
                    best = i;
            if (best == rows.size()) break;
            std::swap(rows[r], rows[best]);
            bool clean = true;
            for (size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                const long long q = rows[i][c] / rows[r][c];
                for (size_t k = 0; k < 4; ++k) rows[i][k] -= q * rows[r][k];
                if (rows[i][c] != 0) clean = false;
            }
            if (clean) {
                if (rows[r][c] < 0)
                    for (size_t k = 0; k < 4; ++k) rows[r][k] = -rows[r][k];
                ++r;
                break;
            }
        }
    }
    rows.resize(r);
    return rows;
}

// Reduce v by echelon rows; returns the residue.
Coords reduce_by(const std::vector<Coords>& rows, Coords v, bool* exact) {
    *exact = true;
    for (const auto& row : rows) {
        size_t c = 0;
        while (c < 4 && row[c] == 0) ++c;
        if (c == 4) continue;
        if (v[c] % row[c] != 0) {
            *exact = false;
            continue;
        }
        const long long q = v[c] / row[c];
        for (size_t k = 0; k < 4; ++k) v[k] -= q * row[k];
    }
    return v;
}

}  // namespace

bool AbelianLattice::contains(const Coords& v) const {
    const auto rows = hermite_rows(gens);
    bool exact = true;
    const Coords res = reduce_by(rows, v, &exact);
    return exact && res == Coords{0, 0, 0, 0};
}

bool same_coset(const Coords& a, const Coords& b, const AbelianLattice& l) {
    Coords d;
    for (size_t k = 0; k < 4; ++k) d[k] = a[k] - b[k];
    return l.contains(d);
}

namespace {

std::vector<long long> smith_invariants(std::vector<std::vector<long long>> m) {
    const size_t rows = m.size();
    const size_t cols = rows ? m[0].size() : 0;
    std::vector<long long> inv;
    size_t t = 0;
    while (t < rows && t < cols) {
        // Find the smallest nonzero entry in the remaining block.
        size_t pi = rows, pj = cols;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j)
                if (m[i][j] != 0 &&
                    (pi == rows || std::llabs(m[i][j]) < std::llabs(m[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
        if (pi == rows) break;
        std::swap(m[t], m[pi]);
        for (size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][pj]);

        bool again = false;
        for (size_t i = t + 1; i < rows; ++i)
            if (m[i][t] != 0) {
                const long long q = m[i][t] / m[t][t];
                for (size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
                if (m[i][t] != 0) again = true;
            }
        for (size_t j = t + 1; j < cols; ++j)
            if (m[t][j] != 0) {
                const long long q = m[t][j] / m[t][t];
                for (size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
                if (m[t][j] != 0) again = true;
            }
        if (again) continue;
        // Enforce divisibility of the rest of the block by the pivot.
        bool fixed = false;
        for (size_t i = t + 1; i < rows && !fixed; ++i)
            for (size_t j = t + 1; j < cols && !fixed; ++j)
                if (m[i][j] % m[t][t] != 0) {
                    for (size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
                    fixed = true;
                }
        if (fixed) continue;
        inv.push_back(std::llabs(m[t][t]));
        ++t;
    }
    return inv;
}

}  // namespace

std::vector<long long> quotient_invariants(const std::vector<Coords>& numerator,
                                           const std::vector<Coords>& relators) {
    const auto basis = hermite_rows(numerator);
    // Express every relator in the echelon basis of the numerator.
    std::vector<std::vector<long long>> m;
    for (const auto& rel : relators) {
        std::vector<long long> coeffs(basis.size(), 0);
        Coords v = rel;
        for (size_t i = 0; i < basis.size(); ++i) {
            size_t c = 0;
            while (c < 4 && basis[i][c] == 0) ++c;
            if (c == 4 || v[c] % basis[i][c] != 0) continue;
            coeffs[i] = v[c] / basis[i][c];
            for (size_t k = 0; k < 4; ++k) v[k] -= coeffs[i] * basis[i][k];
        }
        if (v != Coords{0, 0, 0, 0})
            throw std::invalid_argument("relator outside the numerator span");
        m.push_back(std::move(coeffs));
    }
    auto factors = smith_invariants(std::move(m));
    const size_t rank = factors.size();
    std::vector<long long> out;
    for (long long f : factors)
        if (f > 1) out.push_back(f);
    for (size_t i = rank; i < basis.size(); ++i) out.push_back(0);
    return out;
}

// --- rendering -------------------------------------------------------------

namespace {

std::string half_text(long long doubled) {
    if (doubled % 2 == 0) return std::to_string(doubled / 2);
    return std::to_string(doubled) + "/2";
}

}  // namespace

std::string to_text(const GradingElement& g) {
    std::ostringstream os;
    os << '(' << half_text(g.maslov2) << ", ";
    bool any = false;
    for (size_t i = 0; i < g.h.c.size(); ++i) {
        const long long v = g.h.c[i];
        if (v == 0) continue;
        if (any)
            os << (v > 0 ? " + " : " - ");
        else if (v < 0)
            os << '-';
        any = true;
        if (std::llabs(v) != 1) os << std::llabs(v) << '*';
        os << "[rho" << i + 1 << ']';
    }
    if (!any) os << '0';
    os << ')';
    return os.str();
}

std::string coords_text(const Coords& c) {
    static const char* names[4] = {"L", "A1", "A2", "A3"};
    std::ostringstream os;
    bool any = false;
    for (size_t i = 0; i < 4; ++i) {
        if (c[i] == 0) continue;
        if (any)
            os << (c[i] > 0 ? " + " : " - ");
        else if (c[i] < 0)
            os << '-';
        any = true;
        if (std::llabs(c[i]) != 1) os << std::llabs(c[i]) << '*';
        os << names[i];
    }
    if (!any) return "0";
    return os.str();
}

nlohmann::json to_json(const GradingElement& g) {
    return nlohmann::json{{"maslov2", g.maslov2}, {"h", g.h.c}};
}

GradingElement grading_from_json(const ArcDiagram& d, const nlohmann::json& j) {
    ChordClass h{j.at("h").get<std::vector<long long>>()};
    return make_grading(d, j.at("maslov2").get<long long>(), std::move(h));
}

}  // namespace skein
