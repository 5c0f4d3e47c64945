#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skein/models.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace skein;

namespace {

#ifndef SKEIN_GOLDEN_DIR
#define SKEIN_GOLDEN_DIR ""
#endif
#ifndef SKEINCTL_PATH
#define SKEINCTL_PATH ""
#endif

const Models& models() {
    static const auto m = build_models(standard_tables());
    return *m;
}

VerifyOptions golden_opts() {
    VerifyOptions opts;
    opts.golden_dir = SKEIN_GOLDEN_DIR;
    return opts;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct RunResult {
    int exit_code = -1;
    std::string out;
};

// Runs the inspection binary with the given arguments, capturing stdout.
RunResult run_cli(const std::string& args) {
    const std::string cmd =
        std::string("\"") + SKEINCTL_PATH + "\" " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("built models expose the advertised shapes") {
    const auto& m = models();
    CHECK(m.mod[0].name == "B1");
    CHECK(m.mod[1].name == "Binfty");
    CHECK(m.mod[2].name == "B0");
    CHECK(m.mod[0].size() == 1);
    CHECK(m.mod[1].size() == 3);
    CHECK(m.mod[2].size() == 2);

    CHECK(&bsd(m, SkeinK::infty) == &m.mod[1]);
    CHECK(&skein_map(m, SkeinK::zero) == &m.map[2]);
    CHECK(&skein_homotopy(m, SkeinK::one) == &m.homotopy[0]);

    for (int k = 0; k < 3; ++k) {
        // the full map is the sum of its two parts
        CHECK(add(m.map_part[k][0], m.map_part[k][1]) == m.map[k]);
        CHECK(&skein_map_part(m, static_cast<SkeinK>(k), 1) == &m.map_part[k][1]);
        // likewise the homotopy and its four labelled parts
        const auto sum =
            add(add(m.homotopy_part[k][0][0], m.homotopy_part[k][0][1]),
                add(m.homotopy_part[k][1][0], m.homotopy_part[k][1][1]));
        CHECK(sum == m.homotopy[k]);
    }

    CHECK(m.homotopy[0].is_zero());  // the slot-1 homotopy is vacuous
}

TEST_CASE("slot bookkeeping") {
    CHECK(next_k(SkeinK::one) == SkeinK::infty);
    CHECK(next_k(SkeinK::infty) == SkeinK::zero);
    CHECK(next_k(SkeinK::zero) == SkeinK::one);
    CHECK(std::string(k_name(SkeinK::infty)) == "infty");
    CHECK(parse_k("0") == SkeinK::zero);
    CHECK(parse_k("1") == SkeinK::one);
    CHECK(parse_k("infty") == SkeinK::infty);
    CHECK_FALSE(parse_k("2").has_value());
}

TEST_CASE("the full campaign is green against the goldens") {
    const auto report = verify_tables(standard_tables(), golden_opts());
    CHECK(report.ok());
    CHECK(report.checks.size() == 88);
    CHECK(report.passed == 88);
    CHECK(report.failed == 0);
    CHECK(report.skipped == 0);
    for (size_t i = 1; i < report.checks.size(); ++i)
        CHECK(report.checks[i - 1].id < report.checks[i].id);
}

TEST_CASE("prefix filtering selects exactly the named family") {
    VerifyOptions opts = golden_opts();
    opts.only_prefix = "triangle";
    const auto report = verify_tables(standard_tables(), opts);
    CHECK(report.ok());
    CHECK(report.checks.size() == 16);
    for (const auto& c : report.checks)
        CHECK(c.id.substr(0, 8) == "triangle");
}

TEST_CASE("golden comparisons skip without a directory and fail on drift") {
    VerifyOptions opts;  // no golden directory
    opts.only_prefix = "golden";
    const auto report = verify_tables(standard_tables(), opts);
    CHECK(report.checks.size() == 12);
    CHECK(report.skipped == 12);
    CHECK(report.ok());

    opts.golden_dir = "/nonexistent-golden-dir";
    const auto missing = verify_tables(standard_tables(), opts);
    CHECK(missing.failed == 12);
    CHECK_FALSE(missing.ok());
}

TEST_CASE("golden files match the canonical serializations byte for byte") {
    const auto& m = models();
    const std::filesystem::path dir = SKEIN_GOLDEN_DIR;
    for (const auto& view : golden_views()) {
        CAPTURE(view.file);
        CHECK(slurp(dir / view.file) == canonical_dump(view.view(m)));
    }
}

TEST_CASE("every catalogued mutation is caught by its named check") {
    const auto& catalog = mutation_catalog();
    CHECK(catalog.size() == 25);
    for (const auto& mut : catalog) {
        CAPTURE(mut.id);
        ModelTables tables = standard_tables();
        mut.apply(tables);
        const auto report = verify_tables(tables, golden_opts());
        CHECK_FALSE(report.ok());
        bool named_failed = false;
        for (const auto& c : report.checks)
            if (c.id == mut.detected_by && c.status == CheckStatus::fail)
                named_failed = true;
        CHECK_MESSAGE(named_failed, "expected ", mut.detected_by, " to fail");
    }
}

TEST_CASE("object registry") {
    const auto& m = models();
    const auto names = object_names();
    CHECK(names.size() == 9);
    for (const auto& name : names) {
        CAPTURE(name);
        CHECK(object_json(m, name).has_value());
        CHECK(object_text(m, name).has_value());
    }
    CHECK_FALSE(object_json(m, "bsd:2").has_value());
    CHECK_FALSE(object_text(m, "map:g1").has_value());
    CHECK(object_text(m, "map:f1")->find("|->") != std::string::npos);
}

TEST_CASE("lattice example lookup") {
    const auto& t = standard_tables();
    REQUIRE(find_example(t, "6.2") != nullptr);
    CHECK(find_example(t, "6.2")->which == "6.2");
    CHECK(find_example(t, "7") == nullptr);
    CHECK(example_text(*find_example(t, "6.1")).find("Z") != std::string::npos);
}

TEST_CASE("command line: verification") {
    CHECK(run_cli("verify").exit_code == 0);
    CHECK(run_cli("verify --only alg").exit_code == 0);

    const auto listed = run_cli("--list-checks");
    CHECK(listed.exit_code == 0);
    CHECK(count_lines(listed.out) == 88);

    // every seeded corruption flips the exit code
    CHECK(run_cli("verify --mutate delta-b1-drop").exit_code == 1);
    CHECK(run_cli("verify --mutate 24").exit_code == 1);
    CHECK(run_cli("verify --mutate no-such-mutation").exit_code == 2);
    CHECK(run_cli("verify --list-mutations").exit_code == 0);
}

TEST_CASE("command line: inspection") {
    const auto shown = run_cli("show --object map:f0 --format json");
    CHECK(shown.exit_code == 0);
    CHECK(shown.out ==
          slurp(std::filesystem::path(SKEIN_GOLDEN_DIR) / "map_f0.json"));

    CHECK(run_cli("show --object bsd:infty").exit_code == 0);
    CHECK(run_cli("show --object bsd:nope").exit_code == 2);
    CHECK(run_cli("show --object bsd:1 --format yaml").exit_code == 2);

    CHECK(run_cli("gradings").exit_code == 0);
    CHECK(run_cli("gradings --skein-reduced").exit_code == 0);

    const auto cone = run_cli("cone --k 1");
    CHECK(cone.exit_code == 0);
    CHECK(cone.out.find("certificate: verified") != std::string::npos);
    CHECK(run_cli("cone --k 2").exit_code == 2);

    CHECK(run_cli("examples --which 6.1").exit_code == 0);
    CHECK(run_cli("examples --which 6.2").exit_code == 0);
    CHECK(run_cli("examples --which 7").exit_code == 2);

    CHECK(run_cli("--version").exit_code == 0);
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("verify --frobnicate").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);  // no subcommand: usage
}

TEST_CASE("command line: reports are canonical and deterministic") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto p1 = dir / "skein-report-a.json";
    const auto p2 = dir / "skein-report-b.json";
    const auto r1 = run_cli("verify --report " + p1.string());
    const auto r2 = run_cli("verify --report " + p2.string());
    CHECK(r1.exit_code == 0);
    CHECK(r2.exit_code == 0);
    CHECK(r1.out == r2.out);

    const auto bytes1 = slurp(p1);
    CHECK(bytes1 == slurp(p2));
    const auto parsed = nlohmann::json::parse(bytes1);
    CHECK(parsed["summary"]["fail"] == 0);
    CHECK(parsed["checks"].size() == 88);
    std::filesystem::remove(p1);
    std::filesystem::remove(p2);
}
