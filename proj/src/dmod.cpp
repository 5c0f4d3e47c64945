#include "skein/dmod.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace skein {

namespace {

// F2 normal form: sorted with cancelling pairs removed.
DTerms normalize(DTerms t) {
    std::sort(t.begin(), t.end());
    DTerms out;
    for (size_t i = 0; i < t.size();) {
        size_t j = i;
        while (j < t.size() && t[j] == t[i]) ++j;
        if ((j - i) % 2 != 0) out.push_back(t[i]);
        i = j;
    }
    return out;
}

std::vector<DTerms> normalize_all(std::vector<DTerms> m) {
    for (auto& t : m) t = normalize(std::move(t));
    return m;
}

bool is_idempotent_generator(const StrandsGenerator& g) {
    return g.moving.empty();
}

std::string term_text(const TypeDStructure& tgt, const DTerm& t) {
    return to_text(t.coef) + " (x) " + tgt.gen_names.at(t.target);
}

void require_composable(const DMorphism& g, const DMorphism& f,
                        const char* what) {
    if (f.target != g.source)
        throw std::invalid_argument(std::string("non-composable morphisms in ") +
                                    what);
}

}  // namespace

int TypeDStructure::index_of(const std::string& gen) const {
    for (int i = 0; i < size(); ++i)
        if (gen_names[i] == gen) return i;
    throw std::invalid_argument("no generator named '" + gen + "' in " + name);
}

std::optional<std::string> validate_structure(const TypeDStructure& m) {
    if (m.diagram == nullptr) return "missing diagram";
    const ArcDiagram& d = *m.diagram;
    const size_t n = m.gen_names.size();
    if (m.idem.size() != n || m.delta.size() != n)
        return "generator, idempotent and delta tables disagree in size";
    std::set<std::string> names(m.gen_names.begin(), m.gen_names.end());
    if (names.size() != n) return "duplicate generator name";
    for (size_t i = 0; i < n; ++i) {
        if (!is_idempotent_generator(m.idem[i]))
            return "idempotent of '" + m.gen_names[i] + "' has moving strands";
        if (auto err = validate_generator(d, m.idem[i]))
            return "idempotent of '" + m.gen_names[i] + "': " + *err;
        auto sorted = normalize(m.delta[i]);
        if (sorted != m.delta[i])
            return "delta terms of '" + m.gen_names[i] + "' not in normal form";
        for (const auto& t : m.delta[i]) {
            if (t.target < 0 || t.target >= static_cast<int>(n))
                return "delta target out of range at '" + m.gen_names[i] + "'";
            if (auto err = validate_generator(d, t.coef))
                return "delta coefficient at '" + m.gen_names[i] + "': " + *err;
            if (left_classes(d, t.coef) != m.idem[i].occupied)
                return "delta coefficient at '" + m.gen_names[i] +
                       "' does not match its left idempotent";
            if (right_classes(d, t.coef) != m.idem[t.target].occupied)
                return "delta coefficient at '" + m.gen_names[i] +
                       "' does not match the idempotent of '" +
                       m.gen_names[t.target] + "'";
        }
    }
    return std::nullopt;
}

std::optional<std::string> structure_check(const TypeDStructure& m) {
    if (auto err = validate_structure(m)) return err;
    const ArcDiagram& d = *m.diagram;
    for (int x = 0; x < m.size(); ++x) {
        DTerms acc;
        for (const auto& [a, y] : m.delta[x]) {
            for (const auto& da : diff_generator(d, a).terms)
                acc.push_back({da, y});
            for (const auto& [b, z] : m.delta[y])
                if (auto ab = mul_generators(d, a, b)) acc.push_back({*ab, z});
        }
        acc = normalize(std::move(acc));
        if (!acc.empty())
            return "structure equation fails at '" + m.gen_names[x] +
                   "': surviving term " + term_text(m, acc.front());
    }
    return std::nullopt;
}

bool DMorphism::is_zero() const {
    for (const auto& t : terms)
        if (!t.empty()) return false;
    return true;
}

std::optional<std::string> validate_morphism(const DMorphism& f) {
    if (f.source == nullptr || f.target == nullptr) return "missing endpoint";
    if (f.source->diagram != f.target->diagram) return "mixed-diagram morphism";
    const ArcDiagram& d = *f.source->diagram;
    if (f.terms.size() != static_cast<size_t>(f.source->size()))
        return "term table size disagrees with the source";
    for (int x = 0; x < f.source->size(); ++x) {
        if (normalize(f.terms[x]) != f.terms[x])
            return "terms at '" + f.source->gen_names[x] + "' not in normal form";
        for (const auto& t : f.terms[x]) {
            if (t.target < 0 || t.target >= f.target->size())
                return "target out of range at '" + f.source->gen_names[x] + "'";
            if (auto err = validate_generator(d, t.coef))
                return "coefficient at '" + f.source->gen_names[x] + "': " + *err;
            if (left_classes(d, t.coef) != f.source->idem[x].occupied)
                return "coefficient at '" + f.source->gen_names[x] +
                       "' does not match its left idempotent";
            if (right_classes(d, t.coef) != f.target->idem[t.target].occupied)
                return "coefficient at '" + f.source->gen_names[x] +
                       "' does not match the idempotent of '" +
                       f.target->gen_names[t.target] + "'";
        }
    }
    return std::nullopt;
}

DMorphism zero_morphism(const TypeDStructure& src, const TypeDStructure& tgt) {
    return DMorphism{&src, &tgt, std::vector<DTerms>(src.size())};
}

DMorphism identity_morphism(const TypeDStructure& m) {
    DMorphism f = zero_morphism(m, m);
    for (int x = 0; x < m.size(); ++x) f.terms[x] = {{m.idem[x], x}};
    return f;
}

DMorphism add(const DMorphism& f, const DMorphism& g) {
    if (f.source != g.source || f.target != g.target)
        throw std::invalid_argument("sum of morphisms with different endpoints");
    DMorphism s = f;
    for (int x = 0; x < f.source->size(); ++x) {
        s.terms[x].insert(s.terms[x].end(), g.terms[x].begin(), g.terms[x].end());
        s.terms[x] = normalize(std::move(s.terms[x]));
    }
    return s;
}

DMorphism compose(const DMorphism& g, const DMorphism& f) {
    require_composable(g, f, "compose");
    const ArcDiagram& d = *f.source->diagram;
    DMorphism c = zero_morphism(*f.source, *g.target);
    for (int x = 0; x < f.source->size(); ++x) {
        for (const auto& [a, y] : f.terms[x])
            for (const auto& [b, z] : g.terms[y])
                if (auto ab = mul_generators(d, a, b))
                    c.terms[x].push_back({*ab, z});
        c.terms[x] = normalize(std::move(c.terms[x]));
    }
    return c;
}

DMorphism morphism_boundary(const DMorphism& f) {
    const ArcDiagram& d = *f.source->diagram;
    DMorphism b = zero_morphism(*f.source, *f.target);
    for (int x = 0; x < f.source->size(); ++x) {
        DTerms acc;
        for (const auto& [a, y] : f.terms[x]) {
            for (const auto& da : diff_generator(d, a).terms)
                acc.push_back({da, y});
            for (const auto& [c, z] : f.target->delta[y])
                if (auto ac = mul_generators(d, a, c)) acc.push_back({*ac, z});
        }
        for (const auto& [a, y] : f.source->delta[x])
            for (const auto& [c, z] : f.terms[y])
                if (auto ac = mul_generators(d, a, c)) acc.push_back({*ac, z});
        b.terms[x] = normalize(std::move(acc));
    }
    return b;
}

TypeDStructure mapping_cone(const DMorphism& f, const std::string& name) {
    if (auto err = validate_morphism(f))
        throw std::invalid_argument("cone of an invalid morphism: " + *err);
    if (!morphism_boundary(f).is_zero())
        throw std::invalid_argument("cone of a morphism that is not a chain map");
    const TypeDStructure& s = *f.source;
    const TypeDStructure& t = *f.target;

    TypeDStructure cone;
    cone.diagram = s.diagram;
    cone.name = name;
    cone.gen_names = s.gen_names;
    std::set<std::string> used(s.gen_names.begin(), s.gen_names.end());
    for (const auto& n : t.gen_names) {
        std::string candidate = n;
        while (used.count(candidate)) candidate += "'";
        used.insert(candidate);
        cone.gen_names.push_back(candidate);
    }

    cone.idem = s.idem;
    cone.idem.insert(cone.idem.end(), t.idem.begin(), t.idem.end());

    const int offset = s.size();
    cone.delta.resize(cone.gen_names.size());
    for (int x = 0; x < s.size(); ++x) {
        DTerms terms = s.delta[x];
        for (const auto& [a, y] : f.terms[x]) terms.push_back({a, y + offset});
        cone.delta[x] = normalize(std::move(terms));
    }
    for (int y = 0; y < t.size(); ++y) {
        DTerms terms = t.delta[y];
        for (auto& term : terms) term.target += offset;
        cone.delta[offset + y] = normalize(std::move(terms));
    }
    return cone;
}

bool operator==(const DMorphism& f, const DMorphism& g) {
    return f.source == g.source && f.target == g.target && f.terms == g.terms;
}

// --- gradings ---------------------------------------------------------------

std::optional<std::string> graded_check(const TypeDStructure& m,
                                        const GradedAssignment& g,
                                        const RefinementData& r) {
    if (m.diagram != r.diagram) return "refinement over a different diagram";
    if (g.rep.size() != static_cast<size_t>(m.size()))
        return "coset representative table disagrees with the generator count";
    const ArcDiagram& d = *m.diagram;
    for (int x = 0; x < m.size(); ++x) {
        for (const auto& [a, y] : m.delta[x]) {
            const Coords ca = grbar_coords(refine(make_element(d, {a}), r));
            Coords diff;
            for (size_t i = 0; i < 4; ++i)
                diff[i] = ca[i] + g.rep[y][i] - g.rep[x][i];
            diff[0] += 1;  // the structure map drops one central unit
            if (!g.stabilizer.contains(diff))
                return "delta term " + term_text(m, {a, y}) + " at '" +
                       m.gen_names[x] + "' breaks the coset grading";
        }
    }
    return std::nullopt;
}

ShiftResult morphism_shift(const DMorphism& f, const GradedAssignment& src,
                           const GradedAssignment& tgt,
                           const RefinementData& r) {
    if (auto err = validate_morphism(f))
        throw std::invalid_argument("shift of an invalid morphism: " + *err);
    const ArcDiagram& d = *f.source->diagram;
    AbelianLattice joint = src.stabilizer;
    joint.gens.insert(joint.gens.end(), tgt.stabilizer.gens.begin(),
                      tgt.stabilizer.gens.end());
    // The degree lives in the skein-reduced grading: besides the two
    // stabilizers, the meridian classes are collapsed, leaving the central
    // component as the only invariant.
    joint.gens.push_back(Coords{0, 1, 0, 0});
    joint.gens.push_back(Coords{0, 0, 1, 0});
    joint.gens.push_back(Coords{0, 0, 0, 1});
    std::optional<Coords> anchor;
    for (int x = 0; x < f.source->size(); ++x) {
        for (const auto& [a, y] : f.terms[x]) {
            const Coords ca = grbar_coords(refine(make_element(d, {a}), r));
            Coords diff;
            for (size_t i = 0; i < 4; ++i)
                diff[i] = ca[i] + tgt.rep[y][i] - src.rep[x][i];
            if (!anchor) {
                anchor = diff;
            } else if (!same_coset(diff, *anchor, joint) ||
                       diff[0] != (*anchor)[0]) {
                throw std::invalid_argument(
                    "morphism is not homogeneous for the coset gradings");
            }
        }
    }
    if (!anchor) return ShiftResult{true, 0};
    return ShiftResult{false, (*anchor)[0]};
}

// --- serialization ----------------------------------------------------------

nlohmann::json to_json(const TypeDStructure& m) {
    nlohmann::json gens = nlohmann::json::array();
    for (int i = 0; i < m.size(); ++i)
        gens.push_back({{"name", m.gen_names[i]},
                        {"idem", occ_label(*m.diagram, m.idem[i])}});
    nlohmann::json delta = nlohmann::json::array();
    for (int x = 0; x < m.size(); ++x)
        for (const auto& t : m.delta[x])
            delta.push_back({{"from", m.gen_names[x]},
                             {"coef", to_json(t.coef)},
                             {"to", m.gen_names[t.target]}});
    return nlohmann::json{
        {"name", m.name}, {"generators", gens}, {"delta", delta}};
}

nlohmann::json to_json(const DMorphism& f) {
    nlohmann::json terms = nlohmann::json::array();
    for (int x = 0; x < f.source->size(); ++x)
        for (const auto& t : f.terms[x])
            terms.push_back({{"from", f.source->gen_names[x]},
                             {"coef", to_json(t.coef)},
                             {"to", f.target->gen_names[t.target]}});
    return nlohmann::json{{"source", f.source->name},
                          {"target", f.target->name},
                          {"terms", terms}};
}

std::string to_text(const TypeDStructure& m) {
    std::ostringstream os;
    os << m.name << ":\n";
    for (int i = 0; i < m.size(); ++i) {
        os << "  " << m.gen_names[i] << "  [idem "
           << occ_label(*m.diagram, m.idem[i]) << "]\n";
    }
    for (int x = 0; x < m.size(); ++x) {
        os << "  delta(" << m.gen_names[x] << ") = ";
        if (m.delta[x].empty()) {
            os << "0\n";
            continue;
        }
        for (size_t i = 0; i < m.delta[x].size(); ++i) {
            if (i) os << " + ";
            os << term_text(m, m.delta[x][i]);
        }
        os << "\n";
    }
    return os.str();
}

std::string to_text(const DMorphism& f) {
    std::ostringstream os;
    os << f.source->name << " -> " << f.target->name << ":\n";
    for (int x = 0; x < f.source->size(); ++x) {
        os << "  " << f.source->gen_names[x] << " |-> ";
        if (f.terms[x].empty()) {
            os << "0\n";
            continue;
        }
        for (size_t i = 0; i < f.terms[x].size(); ++i) {
            if (i) os << " + ";
            os << term_text(*f.target, f.terms[x][i]);
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace skein
