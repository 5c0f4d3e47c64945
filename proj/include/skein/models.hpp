#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "skein/dmod.hpp"
#include "skein/grading.hpp"

namespace skein {

// The three resolution slots of the skein triangle, in the cyclic order
// 1 -> infty -> 0 -> 1.  Array-valued tables index slots by this enum.
enum class SkeinK { one = 0, infty = 1, zero = 2 };

constexpr int k_index(SkeinK k) { return static_cast<int>(k); }
SkeinK next_k(SkeinK k);
const char* k_name(SkeinK k);  // "1", "infty", "0"
std::optional<SkeinK> parse_k(const std::string& s);

// One term of a structure map or morphism table: source generator, word of
// chord labels for the coefficient (empty = idempotent), target generator.
struct TableRule {
    std::string from;
    std::vector<int> word;
    std::string to;
};

// A row of the word-grading table: the refined grading of a chord word read
// in a fixed idempotent context (from_idem = 0 marks the identity word,
// graded in every context).
struct WordGradingRow {
    std::vector<int> word;
    int from_idem = 0;
    int to_idem = 0;
    Coords coords{};
    long long skein = 0;
};

// A row of the generator-grading table: the coset representative of one
// module generator and its skein-reduced value.
struct GeneratorGradingRow {
    SkeinK module_k = SkeinK::one;
    std::string generator;
    Coords coords{};
    long long skein = 0;
};

// Per-idempotent refinement assignment (maslov component stored doubled,
// class as a set of elementary chords).
struct RefinementRow {
    int idem = 0;
    long long maslov2 = 0;
    std::vector<int> chords;
};

// A periodic or connecting domain with its measured data: doubled Euler
// number, doubled point multiplicities at the two ends, boundary class as
// (elementary chord, coefficient) pairs, and the expected refined coordinates
// after conjugating by the endpoint idempotents.  A "stabilizer" fixture must
// generate the stabilizer of its slot; a "representative" fixture must land
// in the coset of the named generator.
struct DomainFixture {
    std::string name;
    std::string role;  // "stabilizer" or "representative"
    SkeinK slot = SkeinK::one;
    std::string from_gen;  // domain runs from this generator ...
    std::string to_gen;    // ... to this one (both in the slot's module)
    long long euler2 = 0;
    long long from_mult2 = 0;
    long long to_mult2 = 0;
    std::vector<std::pair<int, long long>> boundary;
    Coords expected{};
};

// A glued-complement grading computation: a stabilizer lattice plus the
// expected invariant factors of the grading-set quotient at each resolution
// slot and after skein reduction.
struct LatticeExample {
    std::string which;  // CLI-facing label ("6.1", "6.2")
    std::vector<Coords> stabilizer;
    std::vector<long long> expect_k1, expect_kinfty, expect_k0, expect_skein;
};

// Invariant factors of the four quotients for one example.
struct LatticeQuotients {
    std::vector<long long> k1, kinfty, k0, skein;
};
LatticeQuotients lattice_quotients(const LatticeExample& ex);

// Every fixed table of the skein models, as plain data so that tests can
// corrupt copies and watch the verifier object.
struct ModelTables {
    std::array<std::string, 3> names;                    // module names per slot
    std::array<std::vector<std::string>, 3> gens;        // generator names
    std::array<std::vector<int>, 3> idems;               // idempotent labels
    std::array<std::vector<TableRule>, 3> delta;
    std::array<std::array<std::vector<TableRule>, 2>, 3> map_part;
    std::array<std::array<std::array<std::vector<TableRule>, 2>, 2>, 3> homotopy_part;
    std::vector<RefinementRow> refinement;
    std::array<std::vector<Coords>, 3> stabilizer;
    std::vector<WordGradingRow> word_gradings;
    std::vector<GeneratorGradingRow> generator_gradings;
    std::vector<DomainFixture> domain_fixtures;
    std::vector<LatticeExample> lattice_examples;
};

const ModelTables& standard_tables();

// The built models: the three modules, the triangle morphisms and homotopies
// (full maps and their parts), the grading refinement, and the coset grading
// of each module.  Non-copyable: morphisms point into the module array.
struct Models {
    const ArcDiagram* diagram = nullptr;
    ModelTables tables;
    std::array<TypeDStructure, 3> mod;
    std::array<std::array<DMorphism, 2>, 3> map_part;   // [slot][part]
    std::array<DMorphism, 3> map;                       // f_k : B_k -> B_{k+1}
    std::array<std::array<std::array<DMorphism, 2>, 2>, 3> homotopy_part;
    std::array<DMorphism, 3> homotopy;                  // phi_k : B_k -> B_{k+2}
    RefinementData refinement;
    std::array<GradedAssignment, 3> graded;

    Models() = default;
    Models(const Models&) = delete;
    Models& operator=(const Models&) = delete;
};

// Builds every object from the tables; throws std::runtime_error when a rule
// does not assemble (wrong idempotent context, vanishing word, unknown name).
std::unique_ptr<Models> build_models(const ModelTables& tables);

const TypeDStructure& bsd(const Models& m, SkeinK k);
const DMorphism& skein_map(const Models& m, SkeinK k);
const DMorphism& skein_map_part(const Models& m, SkeinK k, int part);
const DMorphism& skein_homotopy(const Models& m, SkeinK k);

// Builds the single basis generator I(from) * word * I(to); throws unless the
// product is exactly one generator.
StrandsGenerator word_generator(const ArcDiagram& d, int from_idem,
                                const std::vector<int>& word, int to_idem);
// Same product without the single-generator requirement.
AlgebraElement word_element(const ArcDiagram& d, int from_idem,
                            const std::vector<int>& word, int to_idem);

// --- verification campaign -------------------------------------------------

enum class CheckStatus { pass, fail, skip };

struct CheckResult {
    std::string id;
    std::string detail;   // what the check asserts
    CheckStatus status = CheckStatus::pass;
    std::string witness;  // first failure (or skip reason)
};

struct CampaignReport {
    std::vector<CheckResult> checks;  // sorted by id
    int passed = 0;
    int failed = 0;
    int skipped = 0;

    bool ok() const { return failed == 0; }
};

struct VerifyOptions {
    std::string only_prefix;  // run only checks whose id starts with this
    std::string golden_dir;   // where golden fixtures live ("" = skip them)
};

// The full campaign over built models.
CampaignReport verify_all(const Models& m, const VerifyOptions& opts);
// Builds first; a build failure becomes the single failing check
// "build.models".
CampaignReport verify_tables(const ModelTables& tables, const VerifyOptions& opts);

std::string report_text(const CampaignReport& r);
nlohmann::json report_json(const CampaignReport& r);

// --- mutation catalog --------------------------------------------------------

// A seeded single-term corruption of the tables, used to demonstrate that the
// campaign detects transcription errors.  `detected_by` names a check that
// must fail (possibly "build.models") once the mutation is applied.
struct Mutation {
    std::string id;
    std::string what;
    std::function<void(ModelTables&)> apply;
    std::string detected_by;
};

const std::vector<Mutation>& mutation_catalog();

// --- object views and goldens ------------------------------------------------

// Inspectable objects: "bsd:1", "bsd:infty", "bsd:0", "map:f1", "map:finfty",
// "map:f0", "homotopy:phi1", "homotopy:phiinfty", "homotopy:phi0".
std::vector<std::string> object_names();
std::optional<nlohmann::json> object_json(const Models& m, const std::string& name);
std::optional<std::string> object_text(const Models& m, const std::string& name);

nlohmann::json word_gradings_json(const ModelTables& t);
nlohmann::json generator_gradings_json(const ModelTables& t);
nlohmann::json refinement_json(const ModelTables& t);

// Canonical serialization used for golden comparison: two-space indent plus
// a trailing newline, bytewise stable.
std::string canonical_dump(const nlohmann::json& j);

// Golden fixture files: file name -> producer.
struct GoldenView {
    std::string file;
    std::function<nlohmann::json(const Models&)> view;
};
const std::vector<GoldenView>& golden_views();

// Human-readable reports for the CLI.
std::string gradings_text(const ModelTables& t, bool skein_reduced);
std::string cone_text(const Models& m, SkeinK k);
std::string example_text(const LatticeExample& ex);
const LatticeExample* find_example(const ModelTables& t, const std::string& which);

}  // namespace skein
