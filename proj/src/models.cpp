#include "skein/models.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <nlohmann/json.hpp>

#include "skein/homlab.hpp"
#include "skein/pairing.hpp"

namespace skein {

SkeinK next_k(SkeinK k) {
    switch (k) {
        case SkeinK::one: return SkeinK::infty;
        case SkeinK::infty: return SkeinK::zero;
        case SkeinK::zero: return SkeinK::one;
    }
    throw std::logic_error("bad resolution slot");
}

const char* k_name(SkeinK k) {
    switch (k) {
        case SkeinK::one: return "1";
        case SkeinK::infty: return "infty";
        case SkeinK::zero: return "0";
    }
    throw std::logic_error("bad resolution slot");
}

std::optional<SkeinK> parse_k(const std::string& s) {
    if (s == "1") return SkeinK::one;
    if (s == "infty") return SkeinK::infty;
    if (s == "0") return SkeinK::zero;
    return std::nullopt;
}

namespace {

constexpr int kSlotCount = 3;
const std::array<SkeinK, 3> kSlots{SkeinK::one, SkeinK::infty, SkeinK::zero};

// Frozen size of the five-strand basis of the fixed diagram; recomputed and
// compared by the campaign.
constexpr size_t kBasisCount5 = 430;

std::string word_text(const std::vector<int>& word) {
    if (word.empty()) return "I";
    std::string r = "(";
    for (size_t i = 0; i < word.size(); ++i) {
        if (i) r += ",";
        r += std::to_string(word[i]);
    }
    return r + ")";
}

ChordClass elementary_chord_class(const ArcDiagram& d, int j) {
    if (j < 1 || j > d.num_elementary())
        throw std::invalid_argument("elementary chord index out of range");
    const auto& [s, e] = d.elementary[j - 1];
    return chord_class(d, s, e);
}

Coords add_coords(const Coords& a, const Coords& b) {
    Coords r;
    for (size_t i = 0; i < 4; ++i) r[i] = a[i] + b[i];
    return r;
}

Coords sub_coords(const Coords& a, const Coords& b) {
    Coords r;
    for (size_t i = 0; i < 4; ++i) r[i] = a[i] - b[i];
    return r;
}

}  // namespace

const ModelTables& standard_tables() {
    static const ModelTables t = [] {
        ModelTables t;
        t.names = {"B1", "Binfty", "B0"};
        t.gens = {std::vector<std::string>{"x"},
                  std::vector<std::string>{"y1", "y2", "y3"},
                  std::vector<std::string>{"z1", "z2"}};
        t.idems = {std::vector<int>{3}, std::vector<int>{5, 3, 1},
                   std::vector<int>{5, 1}};

        t.delta[0] = {{"x", {4, 6, 7, 8, 5}, "x"}};
        t.delta[1] = {{"y1", {5}, "y2"},
                      {"y1", {7, 8, 5, 12, 3}, "y2"},
                      {"y1", {7, 8, 5, 2}, "y3"},
                      {"y3", {1, 3}, "y2"}};
        t.delta[2] = {{"z1", {5, 12, 3, 4, 6}, "z1"},
                      {"z1", {5, 2}, "z2"},
                      {"z1", {5, 12, 3, 4, 56, 2}, "z2"},
                      {"z2", {1, 3, 4, 6}, "z1"},
                      {"z2", {1, 3, 4, 56, 2}, "z2"}};

        // f_1 : B1 -> Binfty
        t.map_part[0][0] = {{"x", {4, 6}, "y1"},
                            {"x", {12, 3}, "y2"},
                            {"x", {4, 56}, "y2"},
                            {"x", {2}, "y3"}};
        t.map_part[0][1] = {{"x", {4, 6, 7, 8}, "y1"}, {"x", {}, "y2"}};
        // f_infty : Binfty -> B0
        t.map_part[1][0] = {{"y1", {45, 6}, "z1"},
                            {"y1", {7, 8}, "z1"},
                            {"y2", {4, 6}, "z1"},
                            {"y2", {4, 56, 2}, "z2"},
                            {"y3", {}, "z2"}};
        t.map_part[1][1] = {{"y1", {}, "z1"},
                            {"y2", {12, 3, 4, 6}, "z1"},
                            {"y2", {2}, "z2"},
                            {"y2", {12, 3, 4, 56, 2}, "z2"},
                            {"y3", {1, 23}, "z2"}};
        // f_0 : B0 -> B1
        t.map_part[2][0] = {{"z1", {5}, "x"},
                            {"z1", {5, 12, 3, 4, 56}, "x"},
                            {"z1", {45, 6, 7, 8, 5}, "x"},
                            {"z2", {1, 3, 4, 56}, "x"}};
        t.map_part[2][1] = {{"z1", {5, 12, 3}, "x"},
                            {"z1", {7, 8, 5}, "x"},
                            {"z2", {1, 3}, "x"}};

        // phi_infty : Binfty -> B1
        t.homotopy_part[1][0][0] = {{"y2", {4, 56}, "x"}};
        t.homotopy_part[1][1][0] = {{"y2", {}, "x"}};
        t.homotopy_part[1][1][1] = {{"y2", {12, 3}, "x"}};
        // phi_0 : B0 -> Binfty
        t.homotopy_part[2][0][0] = {{"z1", {45, 6}, "y1"}};
        t.homotopy_part[2][0][1] = {{"z1", {}, "y1"}};
        t.homotopy_part[2][1][1] = {{"z1", {7, 8}, "y1"}, {"z2", {}, "y3"}};
        t.homotopy_part[2][1][0] = {{"z2", {1, 23}, "y3"}};

        t.refinement = {{1, -1, {2, 5, 8}}, {2, -1, {1, 2, 5, 8}},
                        {3, 0, {5, 8}},     {4, 0, {4, 5, 8}},
                        {5, -1, {8}},       {6, 0, {}}};

        t.stabilizer = {std::vector<Coords>{{0, 0, -1, -1}},
                        std::vector<Coords>{{0, -1, 0, -1}},
                        std::vector<Coords>{{0, -1, -1, 0}}};

        t.word_gradings = {
            {{}, 0, 0, {0, 0, 0, 0}, 0},
            {{4, 6}, 3, 5, {0, 0, 1, 0}, 0},
            {{4, 6, 7, 8}, 3, 5, {0, 0, 1, 1}, 0},
            {{4, 56}, 3, 3, {0, 0, 1, 0}, 0},
            {{12, 3}, 3, 3, {0, 1, 0, 0}, 0},
            {{2}, 3, 1, {0, 0, 0, 0}, 0},
            {{45, 6}, 5, 5, {0, 0, 1, 0}, 0},
            {{7, 8}, 5, 5, {0, 0, 0, 1}, 0},
            {{12, 3, 4, 6}, 3, 5, {0, 1, 1, 0}, 0},
            {{4, 56, 2}, 3, 1, {0, 0, 1, 0}, 0},
            {{12, 3, 4, 56, 2}, 3, 1, {0, 1, 1, 0}, 0},
            {{1, 23}, 1, 1, {0, 1, 0, 0}, 0},
            {{45, 6, 7, 8, 5}, 5, 3, {-1, 0, 1, 1}, -1},
            {{7, 8, 5}, 5, 3, {-1, 0, 0, 1}, -1},
            {{5}, 5, 3, {-1, 0, 0, 0}, -1},
            {{5, 12, 3}, 5, 3, {-1, 1, 0, 0}, -1},
            {{5, 12, 3, 4, 56}, 5, 3, {-1, 1, 1, 0}, -1},
            {{1, 3}, 1, 3, {-1, 1, 0, 0}, -1},
            {{1, 3, 4, 56}, 1, 3, {-1, 1, 1, 0}, -1},
        };

        t.generator_gradings = {
            {SkeinK::one, "x", {0, 0, 0, 0}, 0},
            {SkeinK::infty, "y1", {0, 0, 0, 1}, 0},
            {SkeinK::infty, "y2", {0, -1, 0, 0}, 0},
            {SkeinK::infty, "y3", {0, 0, 0, 0}, 0},
            {SkeinK::zero, "z1", {0, 0, 0, 0}, 0},
            {SkeinK::zero, "z2", {0, 0, 0, 0}, 0},
        };

        t.domain_fixtures = {
            {"central-periodic-domain",
             "stabilizer",
             SkeinK::one,
             "x",
             "x",
             -4,
             1,
             1,
             {{4, -1}, {5, -1}, {6, -1}, {7, -1}, {8, -1}},
             {0, 0, -1, -1}},
            {"connecting-domain",
             "representative",
             SkeinK::infty,
             "y2",
             "y3",
             -2,
             1,
             1,
             {{1, -1}, {3, -1}},
             {0, -1, 0, 0}},
        };

        t.lattice_examples = {
            {"6.1",
             {Coords{0, 1, 0, 1}},
             {0, 0},
             {0, 0, 0},
             {0, 0},
             {0}},
            {"6.2",
             {Coords{12, 1, 1, 0}, Coords{18, 1, 0, 1}},
             {2, 0},
             {18, 0},
             {12, 0},
             {6}},
        };
        return t;
    }();
    return t;
}

AlgebraElement word_element(const ArcDiagram& d, int from_idem,
                            const std::vector<int>& word, int to_idem) {
    const int strands = d.num_classes - 1;
    AlgebraElement e = make_element(d, {idempotent_occ(d, from_idem)});
    for (int label : word) {
        const auto chord = chord_of_label(d, label);
        e = mul(e, associated_element(d, {chord}, strands));
    }
    return mul(e, make_element(d, {idempotent_occ(d, to_idem)}));
}

StrandsGenerator word_generator(const ArcDiagram& d, int from_idem,
                                const std::vector<int>& word, int to_idem) {
    AlgebraElement e = word_element(d, from_idem, word, to_idem);
    if (e.terms.size() != 1)
        throw std::runtime_error("word " + word_text(word) + " from idempotent " +
                                 std::to_string(from_idem) + " to " +
                                 std::to_string(to_idem) + " is not a single generator");
    return e.terms[0];
}

namespace {

int gen_index(const TypeDStructure& m, const std::string& name) {
    const int i = m.index_of(name);
    if (i < 0)
        throw std::runtime_error("unknown generator '" + name + "' in " + m.name);
    return i;
}

DTerms build_terms(const TypeDStructure& src, const TypeDStructure& tgt,
                   const std::vector<TableRule>& rules, const std::string& from) {
    const ArcDiagram& d = *src.diagram;
    DTerms terms;
    for (const auto& rule : rules) {
        if (rule.from != from) continue;
        const int fi = gen_index(src, rule.from);
        const int ti = gen_index(tgt, rule.to);
        terms.push_back({word_generator(d, occ_label(d, src.idem[fi]), rule.word,
                                        occ_label(d, tgt.idem[ti])),
                         ti});
    }
    std::sort(terms.begin(), terms.end());
    for (size_t i = 1; i < terms.size(); ++i)
        if (terms[i] == terms[i - 1])
            throw std::runtime_error("duplicate term in the table for '" + from + "'");
    return terms;
}

TypeDStructure build_structure(const ArcDiagram& d, const std::string& name,
                               const std::vector<std::string>& gens,
                               const std::vector<int>& idems,
                               const std::vector<TableRule>& rules) {
    if (gens.size() != idems.size())
        throw std::runtime_error("generator and idempotent tables disagree");
    TypeDStructure m;
    m.diagram = &d;
    m.name = name;
    m.gen_names = gens;
    for (int label : idems) m.idem.push_back(idempotent_occ(d, label));
    m.delta.resize(gens.size());
    for (const auto& rule : rules)
        if (m.index_of(rule.from) < 0)
            throw std::runtime_error("structure rule from unknown generator '" +
                                     rule.from + "'");
    for (int i = 0; i < m.size(); ++i)
        m.delta[i] = build_terms(m, m, rules, m.gen_names[i]);
    if (auto err = validate_structure(m))
        throw std::runtime_error(name + ": " + *err);
    return m;
}

DMorphism build_morphism(const TypeDStructure& src, const TypeDStructure& tgt,
                         const std::vector<TableRule>& rules) {
    DMorphism f = zero_morphism(src, tgt);
    for (const auto& rule : rules)
        if (src.index_of(rule.from) < 0)
            throw std::runtime_error("map rule from unknown generator '" +
                                     rule.from + "'");
    for (int i = 0; i < src.size(); ++i)
        f.terms[i] = build_terms(src, tgt, rules, src.gen_names[i]);
    if (auto err = validate_morphism(f))
        throw std::runtime_error("morphism table: " + *err);
    return f;
}

}  // namespace

std::unique_ptr<Models> build_models(const ModelTables& tables) {
    auto m = std::make_unique<Models>();
    const ArcDiagram& d = skein_diagram();
    m->diagram = &d;
    m->tables = tables;

    for (int k = 0; k < kSlotCount; ++k)
        m->mod[k] = build_structure(d, tables.names[k], tables.gens[k],
                                    tables.idems[k], tables.delta[k]);
    for (int k = 0; k < kSlotCount; ++k) {
        const TypeDStructure& src = m->mod[k];
        const TypeDStructure& map_tgt = m->mod[(k + 1) % 3];
        const TypeDStructure& hom_tgt = m->mod[(k + 2) % 3];
        for (int i = 0; i < 2; ++i)
            m->map_part[k][i] = build_morphism(src, map_tgt, tables.map_part[k][i]);
        m->map[k] = add(m->map_part[k][0], m->map_part[k][1]);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                m->homotopy_part[k][i][j] =
                    build_morphism(src, hom_tgt, tables.homotopy_part[k][i][j]);
        m->homotopy[k] = add(add(m->homotopy_part[k][0][0], m->homotopy_part[k][0][1]),
                             add(m->homotopy_part[k][1][0], m->homotopy_part[k][1][1]));
    }

    m->refinement.diagram = &d;
    m->refinement.base_label = 6;
    for (const auto& row : tables.refinement) {
        ChordClass h = zero_class(d);
        for (int j : row.chords) h += elementary_chord_class(d, j);
        m->refinement.assign.emplace(row.idem, make_grading(d, row.maslov2, h));
    }

    for (int k = 0; k < kSlotCount; ++k) {
        GradedAssignment g;
        g.stabilizer.gens = tables.stabilizer[k];
        g.rep.resize(tables.gens[k].size());
        std::vector<bool> seen(tables.gens[k].size(), false);
        for (const auto& row : tables.generator_gradings) {
            if (k_index(row.module_k) != k) continue;
            const int i = m->mod[k].index_of(row.generator);
            if (i < 0)
                throw std::runtime_error("grading row for unknown generator '" +
                                         row.generator + "'");
            g.rep[i] = row.coords;
            seen[i] = true;
        }
        for (size_t i = 0; i < seen.size(); ++i)
            if (!seen[i])
                throw std::runtime_error("no grading row for generator '" +
                                         tables.gens[k][i] + "'");
        m->graded[k] = std::move(g);
    }
    return m;
}

const TypeDStructure& bsd(const Models& m, SkeinK k) { return m.mod[k_index(k)]; }
const DMorphism& skein_map(const Models& m, SkeinK k) { return m.map[k_index(k)]; }
const DMorphism& skein_map_part(const Models& m, SkeinK k, int part) {
    return m.map_part[k_index(k)].at(part);
}
const DMorphism& skein_homotopy(const Models& m, SkeinK k) {
    return m.homotopy[k_index(k)];
}

LatticeQuotients lattice_quotients(const LatticeExample& ex) {
    const std::vector<Coords> numerator = {
        {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    auto with = [&](std::vector<Coords> extra) {
        std::vector<Coords> relators = ex.stabilizer;
        relators.insert(relators.end(), extra.begin(), extra.end());
        return quotient_invariants(numerator, relators);
    };
    LatticeQuotients q;
    q.k1 = with({{0, 0, 1, 1}});
    q.kinfty = with({{0, 1, 0, 1}});
    q.k0 = with({{0, 1, 1, 0}});
    q.skein = with({{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
    return q;
}

// --- JSON views --------------------------------------------------------------

std::string canonical_dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

nlohmann::json word_gradings_json(const ModelTables& t) {
    auto rows = nlohmann::json::array();
    for (const auto& r : t.word_gradings)
        rows.push_back({{"word", r.word},
                        {"from", r.from_idem},
                        {"to", r.to_idem},
                        {"coords", r.coords},
                        {"skein", r.skein}});
    return rows;
}

nlohmann::json generator_gradings_json(const ModelTables& t) {
    auto rows = nlohmann::json::array();
    for (const auto& r : t.generator_gradings)
        rows.push_back({{"module", k_name(r.module_k)},
                        {"generator", r.generator},
                        {"coords", r.coords},
                        {"skein", r.skein}});
    return rows;
}

nlohmann::json refinement_json(const ModelTables& t) {
    auto rows = nlohmann::json::array();
    for (const auto& r : t.refinement)
        rows.push_back({{"idem", r.idem},
                        {"maslov2", r.maslov2},
                        {"chords", r.chords}});
    return nlohmann::json{{"base", 6}, {"rows", rows}};
}

std::vector<std::string> object_names() {
    std::vector<std::string> names;
    for (SkeinK k : kSlots) names.push_back(std::string("bsd:") + k_name(k));
    for (SkeinK k : kSlots) names.push_back(std::string("map:f") + k_name(k));
    for (SkeinK k : kSlots)
        names.push_back(std::string("homotopy:phi") + k_name(k));
    return names;
}

namespace {

struct ParsedObject {
    enum class Kind { module, map, homotopy } kind;
    SkeinK k;
};

std::optional<ParsedObject> parse_object(const std::string& name) {
    const auto colon = name.find(':');
    if (colon == std::string::npos) return std::nullopt;
    const std::string head = name.substr(0, colon);
    std::string tail = name.substr(colon + 1);
    ParsedObject p{};
    if (head == "bsd") {
        p.kind = ParsedObject::Kind::module;
    } else if (head == "map") {
        p.kind = ParsedObject::Kind::map;
        if (tail.rfind('f', 0) != 0) return std::nullopt;
        tail = tail.substr(1);
    } else if (head == "homotopy") {
        p.kind = ParsedObject::Kind::homotopy;
        if (tail.rfind("phi", 0) != 0) return std::nullopt;
        tail = tail.substr(3);
    } else {
        return std::nullopt;
    }
    const auto k = parse_k(tail);
    if (!k) return std::nullopt;
    p.k = *k;
    return p;
}

}  // namespace

std::optional<nlohmann::json> object_json(const Models& m, const std::string& name) {
    const auto p = parse_object(name);
    if (!p) return std::nullopt;
    switch (p->kind) {
        case ParsedObject::Kind::module: return to_json(bsd(m, p->k));
        case ParsedObject::Kind::map: return to_json(skein_map(m, p->k));
        case ParsedObject::Kind::homotopy: return to_json(skein_homotopy(m, p->k));
    }
    return std::nullopt;
}

std::optional<std::string> object_text(const Models& m, const std::string& name) {
    const auto p = parse_object(name);
    if (!p) return std::nullopt;
    switch (p->kind) {
        case ParsedObject::Kind::module: return to_text(bsd(m, p->k));
        case ParsedObject::Kind::map: return to_text(skein_map(m, p->k));
        case ParsedObject::Kind::homotopy: return to_text(skein_homotopy(m, p->k));
    }
    return std::nullopt;
}

const std::vector<GoldenView>& golden_views() {
    static const std::vector<GoldenView> views = [] {
        std::vector<GoldenView> v;
        for (SkeinK k : kSlots)
            v.push_back({std::string("bsd_") + k_name(k) + ".json",
                         [k](const Models& m) { return to_json(bsd(m, k)); }});
        for (SkeinK k : kSlots)
            v.push_back({std::string("map_f") + k_name(k) + ".json",
                         [k](const Models& m) { return to_json(skein_map(m, k)); }});
        for (SkeinK k : kSlots)
            v.push_back(
                {std::string("homotopy_phi") + k_name(k) + ".json",
                 [k](const Models& m) { return to_json(skein_homotopy(m, k)); }});
        v.push_back({"word_gradings.json",
                     [](const Models& m) { return word_gradings_json(m.tables); }});
        v.push_back({"generator_gradings.json", [](const Models& m) {
                         return generator_gradings_json(m.tables);
                     }});
        v.push_back({"refinement.json",
                     [](const Models& m) { return refinement_json(m.tables); }});
        return v;
    }();
    return views;
}

// --- verification campaign ---------------------------------------------------

namespace {

std::string term_at(const TypeDStructure& tgt, const std::string& src_name,
                    const DTerm& t) {
    return src_name + " -> " + to_text(t.coef) + " (x) " +
           tgt.gen_names.at(t.target);
}

std::string first_term_text(const DMorphism& f) {
    for (int x = 0; x < f.source->size(); ++x)
        if (!f.terms[x].empty())
            return term_at(*f.target, f.source->gen_names[x], f.terms[x][0]);
    return "(no terms)";
}

// Shared lazily-computed state for the verification campaign.
class Campaign {
  public:
    Campaign(const Models& m, VerifyOptions opts)
        : m_(m), d_(*m.diagram), opts_(std::move(opts)) {}

    CampaignReport run();

  private:
    using Body = std::function<std::optional<std::string>()>;

    const Models& m_;
    const ArcDiagram& d_;
    VerifyOptions opts_;
    std::vector<CheckResult> results_;

    // caches
    std::vector<StrandsGenerator> basis_;
    std::vector<AlgebraElement> basis_diff_;
    std::vector<std::vector<int>> by_left_;   // bucket id -> basis indices
    std::vector<int> left_bucket_, right_bucket_;  // per basis index
    std::vector<std::vector<int>> product_;   // product_[i][j] over bucket pairs
    bool algebra_ready_ = false;
    std::array<std::optional<TypeDStructure>, 3> cone_;     // Cone(f_{k+1})
    std::optional<RegularModule> regular_;
    std::array<std::optional<ChainComplex>, 3> box_;

    void prepare_algebra();
    const TypeDStructure& cone_of_next(int k);
    const RegularModule& regular();
    const ChainComplex& box(int k);

    bool selected(const std::string& id) const {
        return opts_.only_prefix.empty() || id.rfind(opts_.only_prefix, 0) == 0;
    }

    void check(const std::string& id, const std::string& detail, const Body& body) {
        if (!selected(id)) return;
        CheckResult r{id, detail, CheckStatus::pass, ""};
        try {
            if (auto witness = body()) {
                r.status = CheckStatus::fail;
                r.witness = *witness;
            }
        } catch (const std::exception& e) {
            r.status = CheckStatus::fail;
            r.witness = std::string("exception: ") + e.what();
        }
        results_.push_back(std::move(r));
    }

    void skip(const std::string& id, const std::string& detail,
              const std::string& why) {
        if (!selected(id)) return;
        results_.push_back({id, detail, CheckStatus::skip, why});
    }

    void algebra_checks();
    void module_checks();
    void triangle_checks();
    void cone_checks();
    void grading_checks();
    void shift_checks();
    void box_checks();
    void lattice_checks();
    void golden_checks();

    GradingElement refined_domain(const DomainFixture& f) const;
};

void Campaign::prepare_algebra() {
    if (algebra_ready_) return;
    basis_ = enumerate_basis(d_, 5);
    const int n = static_cast<int>(basis_.size());
    basis_diff_.reserve(n);
    for (const auto& g : basis_) basis_diff_.push_back(diff_generator(d_, g));

    std::map<std::vector<int>, int> bucket_ids;
    left_bucket_.resize(n);
    right_bucket_.resize(n);
    auto bucket_of = [&](const std::vector<int>& key) {
        auto [it, fresh] = bucket_ids.emplace(key, static_cast<int>(bucket_ids.size()));
        if (fresh) by_left_.emplace_back();
        return it->second;
    };
    for (int i = 0; i < n; ++i) {
        left_bucket_[i] = bucket_of(left_classes(d_, basis_[i]));
        right_bucket_[i] = bucket_of(right_classes(d_, basis_[i]));
        by_left_[left_bucket_[i]].push_back(i);
    }

    std::map<StrandsGenerator, int> index;
    for (int i = 0; i < n; ++i) index.emplace(basis_[i], i);
    product_.assign(n, std::vector<int>(n, -1));
    for (int i = 0; i < n; ++i)
        for (int j : by_left_[right_bucket_[i]])
            if (auto p = mul_generators(d_, basis_[i], basis_[j]))
                product_[i][j] = index.at(*p);
    algebra_ready_ = true;
}

const TypeDStructure& Campaign::cone_of_next(int k) {
    if (!cone_[k]) {
        const int n = (k + 1) % 3;
        cone_[k] = mapping_cone(m_.map[n],
                                std::string("Cone(f") + k_name(kSlots[n]) + ")");
    }
    return *cone_[k];
}

const RegularModule& Campaign::regular() {
    if (!regular_) regular_.emplace(d_, 5);
    return *regular_;
}

const ChainComplex& Campaign::box(int k) {
    if (!box_[k]) box_[k] = box_tensor(regular(), m_.mod[k]);
    return *box_[k];
}

void Campaign::algebra_checks() {
    const bool any = selected("alg.basis-count") || selected("alg.d-squared") ||
                     selected("alg.leibniz") || selected("alg.assoc") ||
                     selected("alg.idempotents") || selected("alg.words");
    if (!any) return;
    prepare_algebra();
    const int n = static_cast<int>(basis_.size());

    check("alg.basis-count", "five-strand basis has the frozen size", [&]() ->
          std::optional<std::string> {
        if (basis_.size() != kBasisCount5)
            return "enumerated " + std::to_string(basis_.size()) +
                   " generators, expected " + std::to_string(kBasisCount5);
        return std::nullopt;
    });

    check("alg.d-squared", "differential squares to zero on every generator",
          [&]() -> std::optional<std::string> {
        for (int i = 0; i < n; ++i)
            if (!diff(basis_diff_[i]).is_zero())
                return "d^2 survives at " + to_text(basis_[i]);
        return std::nullopt;
    });

    check("alg.leibniz",
          "d(ab) = d(a)b + a d(b); the differential preserves idempotent "
          "interfaces, so mismatched pairs vanish on both sides",
          [&]() -> std::optional<std::string> {
        for (int i = 0; i < n; ++i)
            for (const auto& t : basis_diff_[i].terms)
                if (left_classes(d_, t) != left_classes(d_, basis_[i]) ||
                    right_classes(d_, t) != right_classes(d_, basis_[i]))
                    return "differential moved the interface of " + to_text(basis_[i]);
        for (int i = 0; i < n; ++i) {
            const auto a = AlgebraElement{&d_, {basis_[i]}};
            for (int j : by_left_[right_bucket_[i]]) {
                const auto b = AlgebraElement{&d_, {basis_[j]}};
                if (diff(mul(a, b)) != mul(basis_diff_[i], b) + mul(a, basis_diff_[j]))
                    return "Leibniz fails for " + to_text(basis_[i]) + " * " +
                           to_text(basis_[j]);
            }
        }
        return std::nullopt;
    });

    check("alg.assoc", "(ab)c = a(bc) over every basis triple",
          [&]() -> std::optional<std::string> {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const int ij = product_[i][j];
                const auto& row_j = product_[j];
                const auto& row_ij = ij >= 0 ? product_[ij] : row_j;  // unused if ij<0
                for (int l = 0; l < n; ++l) {
                    const int lhs = ij >= 0 ? row_ij[l] : -1;
                    const int jl = row_j[l];
                    const int rhs = jl >= 0 ? product_[i][jl] : -1;
                    if (lhs != rhs)
                        return "associativity fails at " + to_text(basis_[i]) + ", " +
                               to_text(basis_[j]) + ", " + to_text(basis_[l]);
                }
            }
        return std::nullopt;
    });

    check("alg.idempotents",
          "minimal idempotents are orthogonal and sum to the identity",
          [&]() -> std::optional<std::string> {
        const auto idems = idempotents(d_, 5);
        for (size_t i = 0; i < idems.size(); ++i)
            for (size_t j = 0; j < idems.size(); ++j) {
                const auto p = mul(idems[i], idems[j]);
                const auto expect = i == j ? idems[i] : zero_element(d_);
                if (p != expect) return "idempotent products are not orthogonal";
            }
        const auto one = identity_element(d_, 5);
        for (int i = 0; i < n; ++i) {
            const auto a = AlgebraElement{&d_, {basis_[i]}};
            if (mul(one, a) != a || mul(a, one) != a)
                return "identity fails at " + to_text(basis_[i]);
            StrandsGenerator left_idem;
            left_idem.occupied = left_classes(d_, basis_[i]);
            const auto li = make_element(d_, {left_idem});
            if (mul(li, a) != a)
                return "left idempotent fails at " + to_text(basis_[i]);
            StrandsGenerator right_idem;
            right_idem.occupied = right_classes(d_, basis_[i]);
            const auto ri = make_element(d_, {right_idem});
            if (mul(a, ri) != a)
                return "right idempotent fails at " + to_text(basis_[i]);
        }
        return std::nullopt;
    });

    check("alg.words", "chord-word identities used by the tables hold",
          [&]() -> std::optional<std::string> {
        const auto lhs1 = word_element(d_, 3, {12, 3, 2}, 1);
        const auto rhs1 = word_element(d_, 3, {2, 1, 23}, 1);
        if (lhs1.is_zero() || lhs1 != rhs1) return "(12,3,2) != (2,1,23)";
        const auto lhs2 = word_element(d_, 5, {45, 6, 5, 2}, 1);
        const auto rhs2 = word_element(d_, 5, {5, 4, 56, 2}, 1);
        if (lhs2.is_zero() || lhs2 != rhs2) return "(45,6,5,2) != (5,4,56,2)";
        if (!chord_word(d_, {12, 23}, 5).is_zero())
            return "(12,23) does not vanish";
        const auto w = word_element(d_, 5, {45, 6}, 5);
        if (diff(w) != word_element(d_, 5, {5, 4, 6}, 5))
            return "d(45,6) != (5,4,6)";
        return std::nullopt;
    });
}

void Campaign::module_checks() {
    for (int k = 0; k < kSlotCount; ++k) {
        const auto& mod = m_.mod[k];
        const std::string suffix = k_name(kSlots[k]);
        check("bsd.valid." + suffix, mod.name + " is a well-formed presentation",
              [&]() { return validate_structure(mod); });
        check("bsd.structure." + suffix,
              mod.name + " satisfies the structure equation",
              [&]() { return structure_check(mod); });
        check("bsd.shape." + suffix,
              mod.name + " matches its table (generators, idempotents, term counts)",
              [&]() -> std::optional<std::string> {
            const auto& t = m_.tables;
            if (mod.gen_names != t.gens[k]) return "generator names differ";
            for (int i = 0; i < mod.size(); ++i)
                if (occ_label(d_, mod.idem[i]) != t.idems[k][i])
                    return "idempotent of '" + mod.gen_names[i] + "' differs";
            std::map<std::string, size_t> counts;
            for (const auto& rule : t.delta[k]) ++counts[rule.from];
            for (int i = 0; i < mod.size(); ++i)
                if (mod.delta[i].size() != counts[mod.gen_names[i]])
                    return "structure term count of '" + mod.gen_names[i] +
                           "' differs";
            return std::nullopt;
        });
    }
}

void Campaign::triangle_checks() {
    for (int k = 0; k < kSlotCount; ++k) {
        const std::string suffix = k_name(kSlots[k]);
        check("triangle.cycle." + suffix,
              "f" + suffix + " is a cycle in the morphism complex",
              [&]() -> std::optional<std::string> {
            const auto b = morphism_boundary(m_.map[k]);
            if (!b.is_zero()) return "boundary survives: " + first_term_text(b);
            return std::nullopt;
        });
        for (int part = 0; part < 2; ++part)
            check("triangle.cycle.part." + suffix + "." + std::to_string(part),
                  "f" + suffix + "," + std::to_string(part) + " is itself a cycle",
                  [&]() -> std::optional<std::string> {
                const auto b = morphism_boundary(m_.map_part[k][part]);
                if (!b.is_zero()) return "boundary survives: " + first_term_text(b);
                return std::nullopt;
            });
    }
    check("triangle.sample",
          "the isolated sample identity: the first part of finfty is a cycle on "
          "y1, via (45,6,5,2) = (5,4,56,2)",
          [&]() -> std::optional<std::string> {
        const auto lhs = word_element(d_, 5, {45, 6, 5, 2}, 1);
        if (lhs.is_zero() || lhs != word_element(d_, 5, {5, 4, 56, 2}, 1))
            return "(45,6,5,2) != (5,4,56,2)";
        const auto b = morphism_boundary(m_.map_part[1][0]);
        const int y1 = m_.mod[1].index_of("y1");
        if (!b.terms[y1].empty())
            return "boundary survives on y1: " + first_term_text(b);
        return std::nullopt;
    });
    for (int k = 0; k < kSlotCount; ++k) {
        const std::string suffix = k_name(kSlots[k]);
        check("triangle.square." + suffix,
              "f" + std::string(k_name(kSlots[(k + 1) % 3])) + " o f" + suffix +
                  " is the boundary of phi" + suffix,
              [&]() -> std::optional<std::string> {
            const auto s = add(compose(m_.map[(k + 1) % 3], m_.map[k]),
                               morphism_boundary(m_.homotopy[k]));
            if (!s.is_zero()) return "sum survives: " + first_term_text(s);
            return std::nullopt;
        });
        check("triangle.identity." + suffix,
              "f o phi + phi o f is the identity of " + m_.mod[k].name,
              [&]() -> std::optional<std::string> {
            const auto s = add(compose(m_.map[(k + 2) % 3], m_.homotopy[k]),
                               compose(m_.homotopy[(k + 1) % 3], m_.map[k]));
            if (!(s == identity_morphism(m_.mod[k])))
                return "composite differs from the identity at " +
                       first_term_text(add(s, identity_morphism(m_.mod[k])));
            return std::nullopt;
        });
    }
}

void Campaign::cone_checks() {
    for (int k = 0; k < kSlotCount; ++k) {
        const std::string suffix = k_name(kSlots[k]);
        check("cone.equivalence." + suffix,
              m_.mod[k].name + " is a deformation retract of the cone of f" +
                  k_name(kSlots[(k + 1) % 3]),
              [&]() -> std::optional<std::string> {
            const auto& cone = cone_of_next(k);
            const int shift = m_.mod[(k + 1) % 3].size();

            DMorphism G = zero_morphism(m_.mod[k], cone);
            for (int x = 0; x < m_.mod[k].size(); ++x) {
                for (const auto& t : m_.map[k].terms[x])
                    G.terms[x].push_back({t.coef, t.target});
                for (const auto& t : m_.homotopy[k].terms[x])
                    G.terms[x].push_back({t.coef, t.target + shift});
                std::sort(G.terms[x].begin(), G.terms[x].end());
            }
            DMorphism Psi = zero_morphism(cone, m_.mod[k]);
            for (int u = 0; u < m_.mod[(k + 1) % 3].size(); ++u)
                Psi.terms[u] = m_.homotopy[(k + 1) % 3].terms[u];
            for (int v = 0; v < m_.mod[(k + 2) % 3].size(); ++v)
                Psi.terms[v + shift] = m_.map[(k + 2) % 3].terms[v];

            const auto target = add(compose(G, Psi), identity_morphism(cone));
            MorComplex mc(cone, cone);
            const auto H = mc.solve_boundary(target);
            if (!H) return "G o Psi + Id does not bound";
            return verify_cone_equivalence(G, Psi, *H);
        });
    }
}

GradingElement Campaign::refined_domain(const DomainFixture& f) const {
    ChordClass h = zero_class(d_);
    for (const auto& [j, c] : f.boundary) {
        ChordClass e = elementary_chord_class(d_, j);
        for (long long i = 0; i < (c < 0 ? -c : c); ++i)
            h = c < 0 ? h - e : h + e;
    }
    const auto& mod = m_.mod[k_index(f.slot)];
    const int from = mod.index_of(f.from_gen);
    const int to = mod.index_of(f.to_gen);
    if (from < 0 || to < 0)
        throw std::runtime_error("domain fixture names an unknown generator");
    const int from_idem = occ_label(d_, mod.idem[from]);
    const int to_idem = occ_label(d_, mod.idem[to]);
    const auto g = domain_grading(d_, f.euler2, f.from_mult2, f.to_mult2, h);
    return group_mul(group_mul(m_.refinement.assign.at(from_idem), g),
                     group_inv(m_.refinement.assign.at(to_idem)));
}

void Campaign::grading_checks() {
    check("grading.refinement",
          "the refinement rows satisfy the boundary property over the base",
          [&]() { return validate_refinement(m_.refinement); });

    check("grading.word-table",
          "every word-grading row is reproduced from first principles",
          [&]() -> std::optional<std::string> {
        for (const auto& row : m_.tables.word_gradings) {
            std::vector<std::pair<int, int>> contexts;
            if (row.from_idem == 0) {
                for (int i = 1; i <= d_.num_classes; ++i) contexts.push_back({i, i});
            } else {
                contexts.push_back({row.from_idem, row.to_idem});
            }
            for (const auto& [from, to] : contexts) {
                const auto gen = word_generator(d_, from, row.word, to);
                const auto refined =
                    refine(AlgebraElement{&d_, {gen}}, m_.refinement);
                const auto coords = grbar_coords(refined);
                if (coords != row.coords)
                    return "word " + word_text(row.word) + ": computed " +
                           coords_text(coords) + ", table says " +
                           coords_text(row.coords);
                if (skein_reduce(refined) != row.skein)
                    return "word " + word_text(row.word) +
                           ": skein-reduced value differs";
            }
        }
        return std::nullopt;
    });

    check("grading.word-coverage",
          "the word table covers exactly the words of the maps and homotopies",
          [&]() -> std::optional<std::string> {
        using Key = std::tuple<std::vector<int>, int, int>;
        std::set<Key> used;
        bool identity_used = false;
        auto collect = [&](int k, const std::vector<TableRule>& rules, int tgt_slot) {
            const auto& src = m_.mod[k];
            const auto& tgt = m_.mod[tgt_slot];
            for (const auto& rule : rules) {
                if (rule.word.empty()) {
                    identity_used = true;
                    continue;
                }
                const int fi = src.index_of(rule.from);
                const int ti = tgt.index_of(rule.to);
                used.insert({rule.word, occ_label(d_, src.idem[fi]),
                             occ_label(d_, tgt.idem[ti])});
            }
        };
        for (int k = 0; k < kSlotCount; ++k) {
            for (int i = 0; i < 2; ++i)
                collect(k, m_.tables.map_part[k][i], (k + 1) % 3);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    collect(k, m_.tables.homotopy_part[k][i][j], (k + 2) % 3);
        }
        std::set<Key> table;
        bool identity_row = false;
        for (const auto& row : m_.tables.word_gradings) {
            if (row.from_idem == 0) {
                identity_row = true;
                continue;
            }
            table.insert({row.word, row.from_idem, row.to_idem});
        }
        if (identity_used && !identity_row) return "identity row missing";
        for (const auto& key : used)
            if (!table.count(key))
                return "word " + word_text(std::get<0>(key)) + " has no table row";
        for (const auto& key : table)
            if (!used.count(key))
                return "table row " + word_text(std::get<0>(key)) +
                       " is used by no map";
        if (m_.tables.word_gradings.size() != table.size() + (identity_row ? 1 : 0))
            return "duplicate rows in the word table";
        return std::nullopt;
    });

    check("grading.generator-table",
          "every generator grading is skein-reduced to zero",
          [&]() -> std::optional<std::string> {
        size_t rows = 0;
        for (const auto& row : m_.tables.generator_gradings) {
            ++rows;
            if (row.skein != 0)
                return "generator " + row.generator + " claims a nonzero value";
            if (row.coords[0] != 0)
                return "generator " + row.generator +
                       " has a central component in its representative";
        }
        size_t gens = 0;
        for (int k = 0; k < kSlotCount; ++k) gens += m_.tables.gens[k].size();
        if (rows != gens) return "generator table row count differs";
        return std::nullopt;
    });

    for (const auto& f : m_.tables.domain_fixtures) {
        if (f.role == "stabilizer") {
            check("grading.conjugation",
                  "the periodic domain at '" + f.from_gen +
                      "' refines to the recorded value and spans the stabilizer",
                  [&]() -> std::optional<std::string> {
                const auto refined = refined_domain(f);
                const auto coords = grbar_coords(refined);
                if (coords != f.expected)
                    return "computed " + coords_text(coords) + ", expected " +
                           coords_text(f.expected);
                const auto& stab = m_.graded[k_index(f.slot)].stabilizer;
                if (!stab.contains(coords))
                    return "value lies outside the stabilizer";
                AbelianLattice span{{coords}};
                for (const auto& g : stab.gens)
                    if (!span.contains(g))
                        return "stabilizer generator " + coords_text(g) +
                               " is not a multiple of the domain";
                return std::nullopt;
            });
        } else {
            check("grading.rep-route",
                  "the connecting domain reproduces the representative of '" +
                      f.from_gen + "'",
                  [&]() -> std::optional<std::string> {
                const auto refined = refined_domain(f);
                const auto coords = grbar_coords(refined);
                if (coords != f.expected)
                    return "computed " + coords_text(coords) + ", expected " +
                           coords_text(f.expected);
                const auto& mod = m_.mod[k_index(f.slot)];
                const auto& graded = m_.graded[k_index(f.slot)];
                const int from = mod.index_of(f.from_gen);
                const int to = mod.index_of(f.to_gen);
                const auto derived = add_coords(coords, graded.rep[to]);
                if (!same_coset(derived, graded.rep[from], graded.stabilizer))
                    return "derived representative " + coords_text(derived) +
                           " is not in the coset of " +
                           coords_text(graded.rep[from]);
                return std::nullopt;
            });
        }
    }

    for (int k = 0; k < kSlotCount; ++k) {
        const std::string suffix = k_name(kSlots[k]);
        check("graded.delta." + suffix,
              m_.mod[k].name + " is graded by its stabilizer cosets",
              [&]() { return graded_check(m_.mod[k], m_.graded[k], m_.refinement); });
    }
}

void Campaign::shift_checks() {
    const std::array<long long, 3> expect_map{0, 0, -1};  // f1, finfty, f0
    for (int k = 0; k < kSlotCount; ++k) {
        const std::string suffix = k_name(kSlots[k]);
        const auto& src = m_.graded[k];
        const auto& tgt = m_.graded[(k + 1) % 3];
        check("shift.f" + suffix,
              "f" + suffix + " is homogeneous of skein degree " +
                  std::to_string(expect_map[k]),
              [&, k]() -> std::optional<std::string> {
            const auto s = morphism_shift(m_.map[k], src, tgt, m_.refinement);
            if (s.vacuous) return "map has no terms";
            if (s.shift != expect_map[k])
                return "measured " + std::to_string(s.shift);
            return std::nullopt;
        });
        for (int part = 0; part < 2; ++part)
            check("shift.part.f" + suffix + "." + std::to_string(part),
                  "f" + suffix + "," + std::to_string(part) +
                      " is homogeneous of the same degree",
                  [&, k, part]() -> std::optional<std::string> {
                const auto s =
                    morphism_shift(m_.map_part[k][part], src, tgt, m_.refinement);
                if (s.vacuous) return "part has no terms";
                if (s.shift != expect_map[k])
                    return "measured " + std::to_string(s.shift);
                return std::nullopt;
            });
        const auto& htgt = m_.graded[(k + 2) % 3];
        check("shift.phi" + suffix,
              "phi" + suffix + " is homogeneous of skein degree 0" +
                  std::string(k == 0 ? " (vacuously: no terms)" : ""),
              [&, k]() -> std::optional<std::string> {
            const auto s = morphism_shift(m_.homotopy[k], src, htgt, m_.refinement);
            if (k == 0) {
                if (!s.vacuous) return "expected no terms";
                return std::nullopt;
            }
            if (s.vacuous) return "homotopy has no terms";
            if (s.shift != 0) return "measured " + std::to_string(s.shift);
            return std::nullopt;
        });
    }
}

void Campaign::box_checks() {
    for (int k = 0; k < kSlotCount; ++k) {
        const std::string suffix = k_name(kSlots[k]);
        check("box.d-squared." + suffix,
              "the pairing with the regular module of " + m_.mod[k].name +
                  " is a complex",
              [&]() { return complex_check(box(k)); });
        check("box.cone." + suffix,
              "pairing commutes with the cone of f" + suffix,
              [&]() -> std::optional<std::string> {
            const auto f = box_morphism(regular(), m_.map[k]);
            const auto lhs = complex_cone(f, box(k), box((k + 1) % 3));
            const auto rhs = box_tensor(
                regular(), mapping_cone(m_.map[k], std::string("Cone(f") +
                                                       suffix + ")"));
            if (!same_shape(lhs, rhs))
                return "paired cone and cone of the pairing differ";
            return std::nullopt;
        });
        check("box.id-acyclic." + suffix,
              "the cone of the identity on the pairing of " + m_.mod[k].name +
                  " is acyclic",
              [&]() -> std::optional<std::string> {
            const auto f = box_morphism(regular(), identity_morphism(m_.mod[k]));
            const auto cone = complex_cone(f, box(k), box(k));
            if (auto err = complex_check(cone)) return err;
            const int h = homology_dimension(cone);
            if (h != 0) return "homology has dimension " + std::to_string(h);
            return std::nullopt;
        });
        check("box.cone-homology." + suffix,
              "the pairing of " + m_.mod[k].name +
                  " has the homology of the paired cone of f" +
                  k_name(kSlots[(k + 1) % 3]),
              [&]() -> std::optional<std::string> {
            const auto paired_cone = box_tensor(regular(), cone_of_next(k));
            if (auto err = complex_check(paired_cone)) return err;
            const int lhs = homology_dimension(box(k));
            const int rhs = homology_dimension(paired_cone);
            if (lhs != rhs)
                return "dimensions " + std::to_string(lhs) + " and " +
                       std::to_string(rhs) + " differ";
            return std::nullopt;
        });
    }
}

void Campaign::lattice_checks() {
    const std::array<std::string, 2> tags{"a", "b"};
    for (size_t i = 0; i < m_.tables.lattice_examples.size(); ++i) {
        const auto& ex = m_.tables.lattice_examples[i];
        const std::string tag = i < tags.size() ? tags[i] : std::to_string(i);
        struct Slot {
            const char* name;
            const std::vector<long long>* expect;
            std::vector<long long> LatticeQuotients::* got;
        };
        const std::array<Slot, 4> slots{
            Slot{"k1", &ex.expect_k1, &LatticeQuotients::k1},
            Slot{"kinfty", &ex.expect_kinfty, &LatticeQuotients::kinfty},
            Slot{"k0", &ex.expect_k0, &LatticeQuotients::k0},
            Slot{"skein", &ex.expect_skein, &LatticeQuotients::skein}};
        for (const auto& slot : slots) {
            check("lattice." + tag + "." + slot.name,
                  "example " + ex.which + ": invariant factors at " + slot.name,
                  [&]() -> std::optional<std::string> {
                const auto q = lattice_quotients(ex);
                const auto& got = q.*(slot.got);
                if (got != *slot.expect) {
                    std::string s = "computed [";
                    for (size_t j = 0; j < got.size(); ++j)
                        s += (j ? "," : "") + std::to_string(got[j]);
                    return s + "]";
                }
                return std::nullopt;
            });
        }
    }
}

void Campaign::golden_checks() {
    for (const auto& view : golden_views()) {
        std::string id = "golden." + view.file.substr(0, view.file.rfind('.'));
        std::replace(id.begin(), id.end(), '_', '-');
        const std::string detail =
            "canonical serialization matches the checked-in fixture " + view.file;
        if (opts_.golden_dir.empty()) {
            skip(id, detail, "golden directory not provided");
            continue;
        }
        check(id, detail, [&]() -> std::optional<std::string> {
            const std::string path = opts_.golden_dir + "/" + view.file;
            std::ifstream in(path, std::ios::binary);
            if (!in) return "cannot read " + path;
            std::ostringstream buf;
            buf << in.rdbuf();
            const std::string want = buf.str();
            const std::string got = canonical_dump(view.view(m_));
            if (got != want) {
                size_t at = 0;
                while (at < got.size() && at < want.size() && got[at] == want[at])
                    ++at;
                return "differs from " + path + " at byte " + std::to_string(at);
            }
            return std::nullopt;
        });
    }
}

CampaignReport Campaign::run() {
    algebra_checks();
    module_checks();
    triangle_checks();
    cone_checks();
    grading_checks();
    shift_checks();
    box_checks();
    lattice_checks();
    golden_checks();

    std::sort(results_.begin(), results_.end(),
              [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
    CampaignReport report;
    report.checks = std::move(results_);
    for (const auto& c : report.checks) {
        if (c.status == CheckStatus::pass) ++report.passed;
        else if (c.status == CheckStatus::fail) ++report.failed;
        else ++report.skipped;
    }
    return report;
}

}  // namespace

CampaignReport verify_all(const Models& m, const VerifyOptions& opts) {
    return Campaign(m, opts).run();
}

CampaignReport verify_tables(const ModelTables& tables, const VerifyOptions& opts) {
    const std::string build_id = "build.models";
    const std::string build_detail = "all tables assemble into valid objects";
    std::unique_ptr<Models> models;
    try {
        models = build_models(tables);
    } catch (const std::exception& e) {
        CampaignReport report;
        report.checks.push_back(
            {build_id, build_detail, CheckStatus::fail, e.what()});
        report.failed = 1;
        return report;
    }
    CampaignReport report = verify_all(*models, opts);
    if (opts.only_prefix.empty() || build_id.rfind(opts.only_prefix, 0) == 0) {
        report.checks.push_back({build_id, build_detail, CheckStatus::pass, ""});
        ++report.passed;
        std::sort(report.checks.begin(), report.checks.end(),
                  [](const CheckResult& a, const CheckResult& b) {
                      return a.id < b.id;
                  });
    }
    return report;
}

std::string report_text(const CampaignReport& r) {
    std::ostringstream os;
    for (const auto& c : r.checks) {
        const char* tag = c.status == CheckStatus::pass   ? "PASS"
                          : c.status == CheckStatus::fail ? "FAIL"
                                                          : "SKIP";
        os << "[" << tag << "] " << c.id << " - " << c.detail;
        if (!c.witness.empty()) os << " (" << c.witness << ")";
        os << "\n";
    }
    os << r.passed << " passed, " << r.failed << " failed, " << r.skipped
       << " skipped (" << r.checks.size() << " checks)\n";
    return os.str();
}

nlohmann::json report_json(const CampaignReport& r) {
    auto checks = nlohmann::json::array();
    for (const auto& c : r.checks) {
        nlohmann::json j{{"id", c.id},
                         {"detail", c.detail},
                         {"status", c.status == CheckStatus::pass   ? "pass"
                                    : c.status == CheckStatus::fail ? "fail"
                                                                    : "skip"}};
        if (!c.witness.empty()) j["witness"] = c.witness;
        checks.push_back(std::move(j));
    }
    return nlohmann::json{{"checks", checks},
                          {"summary",
                           {{"pass", r.passed},
                            {"fail", r.failed},
                            {"skip", r.skipped},
                            {"total", r.checks.size()}}}};
}

// --- mutation catalog ----------------------------------------------------------

namespace {

std::vector<TableRule>& rules_of(ModelTables& t, const std::string& table, int k,
                                 int i = 0, int j = 0) {
    if (table == "delta") return t.delta[k];
    if (table == "map") return t.map_part[k][i];
    if (table == "homotopy") return t.homotopy_part[k][i][j];
    throw std::logic_error("unknown table");
}

TableRule& find_rule(std::vector<TableRule>& rules, const std::string& from,
                     const std::vector<int>& word) {
    for (auto& rule : rules)
        if (rule.from == from && rule.word == word) return rule;
    throw std::logic_error("mutation target rule not found");
}

void drop_rule(std::vector<TableRule>& rules, const std::string& from,
               const std::vector<int>& word) {
    for (auto it = rules.begin(); it != rules.end(); ++it)
        if (it->from == from && it->word == word) {
            rules.erase(it);
            return;
        }
    throw std::logic_error("mutation target rule not found");
}

}  // namespace

const std::vector<Mutation>& mutation_catalog() {
    static const std::vector<Mutation> catalog = [] {
        std::vector<Mutation> v;
        auto add = [&](std::string id, std::string what,
                       std::function<void(ModelTables&)> apply,
                       std::string detected_by) {
            v.push_back({std::move(id), std::move(what), std::move(apply),
                         std::move(detected_by)});
        };

        add("delta-b1-drop", "drop the only structure term of B1",
            [](ModelTables& t) { drop_rule(t.delta[0], "x", {4, 6, 7, 8, 5}); },
            "triangle.cycle.1");
        add("delta-binfty-drop", "drop the (5) term of delta(y1)",
            [](ModelTables& t) { drop_rule(t.delta[1], "y1", {5}); },
            "triangle.cycle.infty");
        add("delta-b0-drop", "drop the (5,2) term of delta(z1)",
            [](ModelTables& t) { drop_rule(t.delta[2], "z1", {5, 2}); },
            "bsd.structure.0");
        add("delta-binfty-add", "add a spurious (12,3) term to delta(y2)",
            [](ModelTables& t) { t.delta[1].push_back({"y2", {12, 3}, "y2"}); },
            "bsd.structure.infty");
        add("delta-b1-word", "truncate the word of delta(x)",
            [](ModelTables& t) {
                find_rule(t.delta[0], "x", {4, 6, 7, 8, 5}).word = {4, 6, 7, 8};
            },
            "build.models");
        add("delta-binfty-word", "replace the word of delta(y3)",
            [](ModelTables& t) {
                find_rule(t.delta[1], "y3", {1, 3}).word = {1, 23};
            },
            "build.models");
        add("delta-b0-retarget", "point a delta(z2) term at z2 instead of z1",
            [](ModelTables& t) {
                find_rule(t.delta[2], "z2", {1, 3, 4, 6}).to = "z2";
            },
            "build.models");

        add("map-f1-drop", "drop the (4,6) term of the first part of f1",
            [](ModelTables& t) { drop_rule(t.map_part[0][0], "x", {4, 6}); },
            "triangle.cycle.part.1.0");
        add("map-f1-word", "replace the (2) word in the first part of f1",
            [](ModelTables& t) {
                find_rule(t.map_part[0][0], "x", {2}).word = {4, 56, 2};
            },
            "triangle.square.1");
        add("map-f1-part1-drop", "drop the idempotent term of the second part of f1",
            [](ModelTables& t) { drop_rule(t.map_part[0][1], "x", {}); },
            "triangle.identity.1");
        add("map-f1-retarget", "send the (12,3) term of f1 to y1 instead of y2",
            [](ModelTables& t) {
                find_rule(t.map_part[0][0], "x", {12, 3}).to = "y1";
            },
            "build.models");
        add("map-finfty-drop", "drop the (45,6) term of the first part of finfty",
            [](ModelTables& t) { drop_rule(t.map_part[1][0], "y1", {45, 6}); },
            "triangle.cycle.part.infty.0");
        add("map-finfty-word", "replace the (2) word in the second part of finfty",
            [](ModelTables& t) {
                find_rule(t.map_part[1][1], "y2", {2}).word = {4, 56, 2};
            },
            "triangle.square.infty");
        add("map-f0-drop", "drop the (5) term of the first part of f0",
            [](ModelTables& t) { drop_rule(t.map_part[2][0], "z1", {5}); },
            "triangle.cycle.part.0.0");
        add("map-f0-word", "extend the (1,3) word in the second part of f0",
            [](ModelTables& t) {
                find_rule(t.map_part[2][1], "z2", {1, 3}).word = {1, 3, 4, 56};
            },
            "triangle.square.0");

        add("homotopy-phiinfty-drop", "drop the idempotent term of phiinfty",
            [](ModelTables& t) { drop_rule(t.homotopy_part[1][1][0], "y2", {}); },
            "triangle.identity.1");
        add("homotopy-phiinfty-word",
            "replace the (4,56) word of phiinfty by (12,3)",
            [](ModelTables& t) {
                find_rule(t.homotopy_part[1][0][0], "y2", {4, 56}).word = {12, 3};
            },
            "triangle.square.infty");
        add("homotopy-phi0-drop", "drop the idempotent term of phi0 at z1",
            [](ModelTables& t) { drop_rule(t.homotopy_part[2][0][1], "z1", {}); },
            "triangle.identity.0");
        add("homotopy-phi0-word", "blank the (1,23) word of phi0 at z2",
            [](ModelTables& t) {
                find_rule(t.homotopy_part[2][1][0], "z2", {1, 23}).word = {};
            },
            "triangle.identity.0");

        add("refinement-corrupt", "misassign the refinement class of idempotent 3",
            [](ModelTables& t) {
                for (auto& row : t.refinement)
                    if (row.idem == 3) {
                        row.chords = {4, 8};
                        return;
                    }
                throw std::logic_error("refinement row not found");
            },
            "grading.refinement");
        add("stabilizer-corrupt", "swap the stabilizer of B1 for another slot's",
            [](ModelTables& t) { t.stabilizer[0] = {Coords{0, -1, 0, -1}}; },
            "graded.delta.1");
        add("rep-corrupt", "move the representative of y1",
            [](ModelTables& t) {
                for (auto& row : t.generator_gradings)
                    if (row.generator == "y1") {
                        row.coords = {0, 0, 1, 0};
                        return;
                    }
                throw std::logic_error("generator row not found");
            },
            "graded.delta.infty");
        add("word-table-corrupt", "corrupt the recorded grading of (7,8)",
            [](ModelTables& t) {
                for (auto& row : t.word_gradings)
                    if (row.word == std::vector<int>{7, 8}) {
                        row.coords = {0, 0, 1, 0};
                        return;
                    }
                throw std::logic_error("word row not found");
            },
            "grading.word-table");
        add("lattice-corrupt", "perturb a stabilizer relator of example 6.2",
            [](ModelTables& t) {
                for (auto& ex : t.lattice_examples)
                    if (ex.which == "6.2") {
                        ex.stabilizer[0] = {11, 1, 1, 0};
                        return;
                    }
                throw std::logic_error("lattice example not found");
            },
            "lattice.b.k1");
        add("domain-fixture-corrupt",
            "change the Euler measure of the periodic domain",
            [](ModelTables& t) {
                for (auto& f : t.domain_fixtures)
                    if (f.role == "stabilizer") {
                        f.euler2 = -2;
                        return;
                    }
                throw std::logic_error("domain fixture not found");
            },
            "grading.conjugation");
        return v;
    }();
    return catalog;
}

// --- CLI rendering --------------------------------------------------------------

std::string gradings_text(const ModelTables& t, bool skein_reduced) {
    std::ostringstream os;
    os << "word gradings (left -> right idempotent):\n";
    for (const auto& row : t.word_gradings) {
        os << "  " << word_text(row.word);
        for (size_t pad = word_text(row.word).size(); pad < 18; ++pad) os << ' ';
        if (row.from_idem == 0)
            os << "any      ";
        else
            os << row.from_idem << " -> " << row.to_idem << "   ";
        if (skein_reduced)
            os << "sk " << row.skein;
        else
            os << coords_text(row.coords) << "   sk " << row.skein;
        os << "\n";
    }
    os << "generator gradings:\n";
    for (const auto& row : t.generator_gradings) {
        os << "  B" << k_name(row.module_k) << " " << row.generator;
        for (size_t pad = row.generator.size(); pad < 4; ++pad) os << ' ';
        if (skein_reduced)
            os << "sk " << row.skein;
        else
            os << coords_text(row.coords) << "   sk " << row.skein;
        os << "\n";
    }
    return os.str();
}

std::string cone_text(const Models& m, SkeinK k) {
    const int ki = k_index(k);
    const int n = (ki + 1) % 3;
    const auto cone = mapping_cone(m.map[n], std::string("Cone(f") +
                                                 k_name(kSlots[n]) + ")");
    const int shift = m.mod[n].size();

    DMorphism G = zero_morphism(m.mod[ki], cone);
    for (int x = 0; x < m.mod[ki].size(); ++x) {
        for (const auto& t : m.map[ki].terms[x]) G.terms[x].push_back(t);
        for (const auto& t : m.homotopy[ki].terms[x])
            G.terms[x].push_back({t.coef, t.target + shift});
        std::sort(G.terms[x].begin(), G.terms[x].end());
    }
    DMorphism Psi = zero_morphism(cone, m.mod[ki]);
    for (int u = 0; u < m.mod[n].size(); ++u)
        Psi.terms[u] = m.homotopy[n].terms[u];
    for (int v = 0; v < m.mod[(ki + 2) % 3].size(); ++v)
        Psi.terms[v + shift] = m.map[(ki + 2) % 3].terms[v];

    std::ostringstream os;
    os << m.mod[ki].name << " ~ " << cone.name << "\n\n" << to_text(cone) << "\n";
    os << "G = (f" << k_name(k) << ", phi" << k_name(k) << "):\n" << to_text(G);
    os << "Psi = phi" << k_name(kSlots[n]) << " + f" << k_name(kSlots[(ki + 2) % 3])
       << ":\n"
       << to_text(Psi);

    const auto target = add(compose(G, Psi), identity_morphism(cone));
    MorComplex mc(cone, cone);
    const auto H = mc.solve_boundary(target);
    if (!H) {
        os << "certificate: FAILED (G o Psi + Id does not bound)\n";
        return os.str();
    }
    os << "H with dH = G o Psi + Id:\n" << to_text(*H);
    if (auto err = verify_cone_equivalence(G, Psi, *H))
        os << "certificate: FAILED (" << *err << ")\n";
    else
        os << "certificate: verified (Psi o G = Id, dH = G o Psi + Id)\n";
    return os.str();
}

namespace {

std::string factors_text(const std::vector<long long>& factors) {
    if (factors.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < factors.size(); ++i) {
        if (i) s += " + ";
        s += factors[i] == 0 ? "Z" : "Z/" + std::to_string(factors[i]);
    }
    return s;
}

}  // namespace

std::string example_text(const LatticeExample& ex) {
    const auto q = lattice_quotients(ex);
    std::ostringstream os;
    os << "example " << ex.which << " grading-set invariant factors:\n";
    os << "  slot 1:     " << factors_text(q.k1) << "\n";
    os << "  slot infty: " << factors_text(q.kinfty) << "\n";
    os << "  slot 0:     " << factors_text(q.k0) << "\n";
    os << "  skein:      " << factors_text(q.skein) << "\n";
    return os.str();
}

const LatticeExample* find_example(const ModelTables& t, const std::string& which) {
    for (const auto& ex : t.lattice_examples)
        if (ex.which == which) return &ex;
    return nullptr;
}

}  // namespace skein
