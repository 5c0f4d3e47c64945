#include "skein/algebra.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace skein {

namespace {

// Sorted union of occupied classes and the classes of selected chord endpoints.
std::vector<int> classes_with(const ArcDiagram& d, const StrandsGenerator& g,
                              bool use_starts) {
    std::vector<int> r = g.occupied;
    for (const auto& [s, e] : g.moving) r.push_back(d.cls(use_starts ? s : e));
    std::sort(r.begin(), r.end());
    return r;
}

void sort_terms(std::vector<StrandsGenerator>& terms) {
    std::sort(terms.begin(), terms.end());
}

// F2 normalization: sort and cancel equal pairs.
void normalize_terms(std::vector<StrandsGenerator>& terms) {
    sort_terms(terms);
    std::vector<StrandsGenerator> out;
    out.reserve(terms.size());
    for (size_t i = 0; i < terms.size();) {
        size_t j = i;
        while (j < terms.size() && terms[j] == terms[i]) ++j;
        if ((j - i) % 2) out.push_back(terms[i]);
        i = j;
    }
    terms = std::move(out);
}

void require_same_diagram(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.diagram == nullptr || b.diagram == nullptr)
        throw std::invalid_argument("algebra element missing its diagram");
    if (a.diagram != b.diagram)
        throw std::invalid_argument("mixed-diagram algebra operands");
}

// Number of crossings among moving chords only.
int chord_crossings(const std::vector<std::pair<int, int>>& chords) {
    int n = 0;
    for (size_t i = 0; i < chords.size(); ++i)
        for (size_t j = i + 1; j < chords.size(); ++j) {
            const auto& [s1, e1] = chords[i];
            const auto& [s2, e2] = chords[j];
            if ((s1 < s2) != (e1 < e2)) ++n;
        }
    return n;
}

// Crossings of a fixed-section strands diagram: chord-chord crossings plus
// section points lying strictly inside a chord of the same arc.
int diagram_crossings(const ArcDiagram& d,
                      const std::vector<std::pair<int, int>>& chords,
                      const std::vector<int>& sections) {
    int n = chord_crossings(chords);
    for (int p : sections)
        for (const auto& [s, e] : chords)
            if (s < p && p < e && d.same_arc(p, s)) ++n;
    return n;
}

std::vector<int> canonical_sections(const ArcDiagram& d,
                                    const std::vector<int>& occupied,
                                    int forced_class = 0, int forced_point = 0) {
    std::vector<int> pts;
    pts.reserve(occupied.size());
    for (int c : occupied)
        pts.push_back(c == forced_class ? forced_point : d.points_of_class(c).front());
    return pts;
}

}  // namespace

std::optional<std::string> validate_generator(const ArcDiagram& d,
                                              const StrandsGenerator& g) {
    std::set<int> starts, ends;
    std::set<int> start_classes, end_classes;
    std::set<int> endpoint_classes;
    for (const auto& [s, e] : g.moving) {
        if (s < 1 || e > d.num_points() || s >= e)
            return "chord endpoints out of order or out of range";
        if (!d.same_arc(s, e)) return "chord leaves its arc";
        if (!starts.insert(s).second) return "repeated chord start";
        if (!ends.insert(e).second) return "repeated chord end";
        // Left and right idempotents occupy each match class at most once, so
        // chord start classes must be pairwise distinct, as must end classes.
        if (!start_classes.insert(d.cls(s)).second)
            return "two chords start in one match class";
        if (!end_classes.insert(d.cls(e)).second)
            return "two chords end in one match class";
        endpoint_classes.insert(d.cls(s));
        endpoint_classes.insert(d.cls(e));
    }
    std::set<int> occ(g.occupied.begin(), g.occupied.end());
    if (occ.size() != g.occupied.size()) return "repeated occupied class";
    for (int c : occ) {
        if (c < 1 || c > d.num_classes) return "occupied class out of range";
        if (endpoint_classes.count(c))
            return "occupied class touched by a chord endpoint";
    }
    if (!std::is_sorted(g.occupied.begin(), g.occupied.end()) ||
        !std::is_sorted(g.moving.begin(), g.moving.end()))
        return "generator not in canonical order";
    return std::nullopt;
}

std::vector<int> left_classes(const ArcDiagram& d, const StrandsGenerator& g) {
    return classes_with(d, g, /*use_starts=*/true);
}

std::vector<int> right_classes(const ArcDiagram& d, const StrandsGenerator& g) {
    return classes_with(d, g, /*use_starts=*/false);
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
    require_same_diagram(*this, o);
    terms.insert(terms.end(), o.terms.begin(), o.terms.end());
    normalize_terms(terms);
    return *this;
}

AlgebraElement zero_element(const ArcDiagram& d) { return AlgebraElement{&d, {}}; }

AlgebraElement make_element(const ArcDiagram& d, std::vector<StrandsGenerator> terms) {
    for (auto& g : terms) {
        std::sort(g.occupied.begin(), g.occupied.end());
        std::sort(g.moving.begin(), g.moving.end());
        if (auto err = validate_generator(d, g))
            throw std::invalid_argument("invalid strands generator: " + *err);
    }
    normalize_terms(terms);
    return AlgebraElement{&d, std::move(terms)};
}

std::optional<StrandsGenerator> mul_generators(const ArcDiagram& d,
                                               const StrandsGenerator& a,
                                               const StrandsGenerator& b) {
    if (right_classes(d, a) != left_classes(d, b)) return std::nullopt;

    // Point-level interface matching.  Each strand of the concatenation is
    // tracked by its position at the three time slices (start of a, the
    // interface, end of b).
    struct Strand {
        int p0, p1, p2;
    };
    std::vector<Strand> moving;

    std::map<int, std::pair<int, int>> b_by_start;
    for (const auto& [s, e] : b.moving) b_by_start.emplace(s, std::make_pair(s, e));
    std::set<int> b_occ(b.occupied.begin(), b.occupied.end());
    std::set<int> a_occ(a.occupied.begin(), a.occupied.end());
    std::set<int> b_sections_used;   // classes of b consumed by a-chord ends
    std::set<int> a_sections_used;   // classes of a consumed by b-chord starts
    std::set<int> b_chords_consumed; // b-chord start points already joined

    for (const auto& [s, e] : a.moving) {
        if (auto it = b_by_start.find(e); it != b_by_start.end()) {
            moving.push_back({s, e, it->second.second});
            b_chords_consumed.insert(e);
        } else if (b_occ.count(d.cls(e))) {
            // The chord continues along a horizontal strand of b, which must
            // therefore sit at e itself; a class supplies one section only.
            if (!b_sections_used.insert(d.cls(e)).second) return std::nullopt;
            moving.push_back({s, e, e});
        } else {
            return std::nullopt;  // b meets this class at the partner point
        }
    }
    for (const auto& [s, e] : b.moving) {
        if (b_chords_consumed.count(s)) continue;
        if (a_occ.count(d.cls(s))) {
            if (!a_sections_used.insert(d.cls(s)).second) return std::nullopt;
            moving.push_back({s, s, e});
        } else {
            return std::nullopt;
        }
    }
    // Classes horizontal on both sides persist; the leftovers on either side
    // must agree exactly.
    std::vector<int> a_rest, b_rest;
    for (int c : a.occupied)
        if (!a_sections_used.count(c)) a_rest.push_back(c);
    for (int c : b.occupied)
        if (!b_sections_used.count(c)) b_rest.push_back(c);
    if (a_rest != b_rest) return std::nullopt;

    // Double-crossing rule: a pair of strands crossing in both halves of the
    // concatenation straightens to fewer crossings, killing the product.
    // Horizontal strands never double-cross a moving strand (the two halves
    // would need the same section point on opposite sides of the interface).
    for (size_t i = 0; i < moving.size(); ++i)
        for (size_t j = i + 1; j < moving.size(); ++j) {
            const bool xa = (moving[i].p0 < moving[j].p0) != (moving[i].p1 < moving[j].p1);
            const bool xb = (moving[i].p1 < moving[j].p1) != (moving[i].p2 < moving[j].p2);
            if (xa && xb) return std::nullopt;
        }

    StrandsGenerator out;
    out.occupied = a_rest;
    for (const auto& st : moving) out.moving.emplace_back(st.p0, st.p2);
    std::sort(out.moving.begin(), out.moving.end());
    if (auto err = validate_generator(d, out))
        throw std::logic_error("product left the strands basis: " + *err);
    return out;
}

AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_diagram(a, b);
    std::vector<StrandsGenerator> terms;
    for (const auto& ga : a.terms)
        for (const auto& gb : b.terms)
            if (auto p = mul_generators(*a.diagram, ga, gb)) terms.push_back(*p);
    normalize_terms(terms);
    return AlgebraElement{a.diagram, std::move(terms)};
}

AlgebraElement diff_generator(const ArcDiagram& d, const StrandsGenerator& g) {
    std::vector<StrandsGenerator> terms;
    const auto base_sections = canonical_sections(d, g.occupied);
    const int inv_before = diagram_crossings(d, g.moving, base_sections);

    // Resolve a crossing of two moving chords.
    for (size_t i = 0; i < g.moving.size(); ++i)
        for (size_t j = 0; j < g.moving.size(); ++j) {
            if (i == j) continue;
            const auto& [s1, e1] = g.moving[i];
            const auto& [s2, e2] = g.moving[j];
            if (!(s1 < s2 && e2 < e1)) continue;  // crossing pairs, once each
            StrandsGenerator r = g;
            r.moving[i] = {s1, e2};
            r.moving[j] = {s2, e1};
            std::sort(r.moving.begin(), r.moving.end());
            if (diagram_crossings(d, r.moving, base_sections) == inv_before - 1)
                terms.push_back(std::move(r));
        }

    // Resolve a crossing of a moving chord with a horizontal strand: split the
    // chord at the horizontal's position, freeing that class.
    for (size_t i = 0; i < g.moving.size(); ++i) {
        const auto& [s, e] = g.moving[i];
        for (int c : g.occupied)
            for (int p : d.points_of_class(c)) {
                if (!(s < p && p < e && d.same_arc(p, s))) continue;
                StrandsGenerator r;
                for (int oc : g.occupied)
                    if (oc != c) r.occupied.push_back(oc);
                r.moving = g.moving;
                r.moving.erase(r.moving.begin() + i);
                r.moving.emplace_back(s, p);
                r.moving.emplace_back(p, e);
                std::sort(r.moving.begin(), r.moving.end());
                const int before =
                    diagram_crossings(d, g.moving, canonical_sections(d, g.occupied, c, p));
                const int after =
                    diagram_crossings(d, r.moving, canonical_sections(d, r.occupied));
                if (after == before - 1) terms.push_back(std::move(r));
            }
    }

    for (const auto& t : terms)
        if (auto err = validate_generator(d, t))
            throw std::logic_error("differential left the strands basis: " + *err);
    normalize_terms(terms);
    return AlgebraElement{&d, std::move(terms)};
}

AlgebraElement diff(const AlgebraElement& a) {
    if (a.diagram == nullptr)
        throw std::invalid_argument("algebra element missing its diagram");
    std::vector<StrandsGenerator> terms;
    for (const auto& g : a.terms) {
        auto dg = diff_generator(*a.diagram, g);
        terms.insert(terms.end(), dg.terms.begin(), dg.terms.end());
    }
    normalize_terms(terms);
    return AlgebraElement{a.diagram, std::move(terms)};
}

std::vector<AlgebraElement> idempotents(const ArcDiagram& d, int k) {
    if (k < 0 || k > d.num_classes)
        throw std::invalid_argument("strand count out of range");
    std::vector<AlgebraElement> out;
    std::vector<int> subset;
    auto rec = [&](auto&& self, int next) -> void {
        if (static_cast<int>(subset.size()) == k) {
            StrandsGenerator g;
            g.occupied = subset;
            out.push_back(AlgebraElement{&d, {g}});
            return;
        }
        if (next > d.num_classes) return;
        for (int c = next; c <= d.num_classes; ++c) {
            subset.push_back(c);
            self(self, c + 1);
            subset.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

AlgebraElement identity_element(const ArcDiagram& d, int k) {
    AlgebraElement r = zero_element(d);
    for (const auto& i : idempotents(d, k)) r += i;
    return r;
}

StrandsGenerator idempotent_occ(const ArcDiagram& d, int arc_label) {
    if (arc_label < 1 || arc_label > d.num_classes)
        throw std::invalid_argument("idempotent label out of range");
    StrandsGenerator g;
    for (int c = 1; c <= d.num_classes; ++c)
        if (c != arc_label) g.occupied.push_back(c);
    return g;
}

int occ_label(const ArcDiagram& d, const StrandsGenerator& idem) {
    if (!idem.moving.empty() ||
        static_cast<int>(idem.occupied.size()) != d.num_classes - 1)
        throw std::invalid_argument("not a minimal idempotent of the top summand");
    for (int c = 1; c <= d.num_classes; ++c)
        if (!std::binary_search(idem.occupied.begin(), idem.occupied.end(), c)) return c;
    throw std::invalid_argument("malformed idempotent");
}

AlgebraElement associated_element(const ArcDiagram& d,
                                  std::vector<std::pair<int, int>> chords, int k) {
    std::sort(chords.begin(), chords.end());
    StrandsGenerator probe;
    probe.moving = chords;
    if (auto err = validate_generator(d, probe))
        throw std::invalid_argument("invalid chord set: " + *err);
    const int need = k - static_cast<int>(chords.size());
    if (need < 0) return zero_element(d);
    std::set<int> blocked;
    for (const auto& [s, e] : chords) {
        blocked.insert(d.cls(s));
        blocked.insert(d.cls(e));
    }
    std::vector<int> free_classes;
    for (int c = 1; c <= d.num_classes; ++c)
        if (!blocked.count(c)) free_classes.push_back(c);

    std::vector<StrandsGenerator> terms;
    std::vector<int> pick;
    auto rec = [&](auto&& self, size_t next) -> void {
        if (static_cast<int>(pick.size()) == need) {
            StrandsGenerator g;
            g.occupied = pick;
            g.moving = chords;
            terms.push_back(std::move(g));
            return;
        }
        for (size_t i = next; i < free_classes.size(); ++i) {
            pick.push_back(free_classes[i]);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    normalize_terms(terms);
    return AlgebraElement{&d, std::move(terms)};
}

std::pair<int, int> chord_of_label(const ArcDiagram& d, int label) {
    if (label <= 0) throw std::invalid_argument("chord label must be positive");
    std::vector<int> digits;
    for (int v = label; v > 0; v /= 10) digits.push_back(v % 10);
    std::reverse(digits.begin(), digits.end());
    for (size_t i = 0; i < digits.size(); ++i) {
        const int e = digits[i];
        if (e < 1 || e > d.num_elementary())
            throw std::invalid_argument("chord label digit out of range");
        if (i > 0 && e != digits[i - 1] + 1)
            throw std::invalid_argument("chord label digits must be consecutive");
    }
    const int s = d.elementary[digits.front() - 1].first;
    const int e = d.elementary[digits.back() - 1].second;
    if (!d.same_arc(s, e))
        throw std::invalid_argument("chord label spans more than one arc");
    return {s, e};
}

std::vector<int> all_chord_labels(const ArcDiagram& d) {
    std::vector<int> labels;
    for (int i = 0; i < d.num_elementary(); ++i) {
        int label = 0;
        for (int j = i; j < d.num_elementary(); ++j) {
            if (d.elementary[j].first !=
                (j == i ? d.elementary[i].first : d.elementary[j - 1].second))
                break;
            if (!d.same_arc(d.elementary[i].first, d.elementary[j].second)) break;
            label = label * 10 + (j + 1);
            labels.push_back(label);
        }
    }
    std::sort(labels.begin(), labels.end());
    return labels;
}

AlgebraElement chord_word(const ArcDiagram& d, const std::vector<int>& labels, int k) {
    AlgebraElement r = identity_element(d, k);
    for (int label : labels) {
        const auto [s, e] = chord_of_label(d, label);
        r = mul(r, associated_element(d, {{s, e}}, k));
    }
    return r;
}

std::vector<StrandsGenerator> enumerate_basis(const ArcDiagram& d, int k) {
    // All chords of the diagram, grouped by arc.
    std::vector<std::vector<std::pair<int, int>>> arc_chords(d.arcs.size());
    for (size_t a = 0; a < d.arcs.size(); ++a) {
        const auto& pts = d.arcs[a];
        for (size_t i = 0; i < pts.size(); ++i)
            for (size_t j = i + 1; j < pts.size(); ++j)
                arc_chords[a].emplace_back(pts[i], pts[j]);
    }
    // Valid chord sets per arc (distinct starts, distinct ends).
    std::vector<std::vector<std::vector<std::pair<int, int>>>> arc_sets(d.arcs.size());
    for (size_t a = 0; a < d.arcs.size(); ++a) {
        const auto& chords = arc_chords[a];
        const size_t n = chords.size();
        for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
            std::set<int> starts, ends;
            std::vector<std::pair<int, int>> sel;
            bool ok = true;
            for (size_t i = 0; i < n && ok; ++i)
                if (mask >> i & 1) {
                    ok = starts.insert(chords[i].first).second &&
                         ends.insert(chords[i].second).second;
                    sel.push_back(chords[i]);
                }
            if (ok) arc_sets[a].push_back(std::move(sel));
        }
    }
    std::vector<StrandsGenerator> out;
    std::vector<std::pair<int, int>> chords;
    auto emit = [&]() {
        StrandsGenerator probe;
        probe.moving = chords;
        std::sort(probe.moving.begin(), probe.moving.end());
        // Chord sets from different arcs may collide at the match-class
        // level; those fail validation and span no generators.
        if (validate_generator(d, probe)) return;
        auto completions = associated_element(d, probe.moving, k);
        out.insert(out.end(), completions.terms.begin(), completions.terms.end());
    };
    auto rec = [&](auto&& self, size_t arc) -> void {
        if (arc == d.arcs.size()) {
            if (static_cast<int>(chords.size()) <= k) emit();
            return;
        }
        for (const auto& sel : arc_sets[arc]) {
            const size_t before = chords.size();
            chords.insert(chords.end(), sel.begin(), sel.end());
            self(self, arc + 1);
            chords.resize(before);
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

nlohmann::json to_json(const StrandsGenerator& g) {
    nlohmann::json j;
    j["occupied"] = g.occupied;
    auto moving = nlohmann::json::array();
    for (const auto& [s, e] : g.moving) moving.push_back({s, e});
    j["moving"] = moving;
    return j;
}

nlohmann::json to_json(const AlgebraElement& a) {
    auto j = nlohmann::json::array();
    for (const auto& g : a.terms) j.push_back(to_json(g));
    return j;
}

StrandsGenerator generator_from_json(const nlohmann::json& j) {
    StrandsGenerator g;
    g.occupied = j.at("occupied").get<std::vector<int>>();
    for (const auto& m : j.at("moving"))
        g.moving.emplace_back(m.at(0).get<int>(), m.at(1).get<int>());
    return g;
}

AlgebraElement element_from_json(const ArcDiagram& d, const nlohmann::json& j) {
    std::vector<StrandsGenerator> terms;
    for (const auto& t : j) terms.push_back(generator_from_json(t));
    return make_element(d, std::move(terms));
}

std::string to_text(const StrandsGenerator& g) {
    std::ostringstream os;
    os << "{occ";
    for (int c : g.occupied) os << ' ' << c;
    if (!g.moving.empty()) {
        os << " |";
        for (const auto& [s, e] : g.moving) os << ' ' << s << '-' << e;
    }
    os << '}';
    return os.str();
}

std::string to_text(const AlgebraElement& a) {
    if (a.is_zero()) return "0";
    std::string r;
    for (size_t i = 0; i < a.terms.size(); ++i) {
        if (i) r += " + ";
        r += to_text(a.terms[i]);
    }
    return r;
}

}  // namespace skein
