// Command-line front end: runs the verification campaign, prints objects and
// tables, and exports machine-readable reports.
//
// Exit codes: 0 = success / all requested checks pass, 1 = verification or
// certificate failure, 2 = usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "skein/models.hpp"

#ifndef SKEIN_GOLDEN_DIR
#define SKEIN_GOLDEN_DIR ""
#endif

namespace {

std::string default_golden_dir() {
    const std::string dir = SKEIN_GOLDEN_DIR;
    std::error_code ec;
    if (!dir.empty() && std::filesystem::is_directory(dir, ec)) return dir;
    return "";
}

const skein::Mutation* find_mutation(const std::string& key) {
    const auto& catalog = skein::mutation_catalog();
    for (const auto& m : catalog)
        if (m.id == key) return &m;
    try {
        size_t used = 0;
        const int index = std::stoi(key, &used);
        if (used == key.size() && index >= 0 &&
            index < static_cast<int>(catalog.size()))
            return &catalog[index];
    } catch (const std::exception&) {
    }
    return nullptr;
}

int run_verify(const skein::ModelTables& tables, const skein::VerifyOptions& opts,
               const std::string& report_path) {
    const auto report = skein::verify_tables(tables, opts);
    std::cout << skein::report_text(report);
    if (!report_path.empty()) {
        std::ofstream out(report_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << report_path << "\n";
            return 1;
        }
        out << skein::canonical_dump(skein::report_json(report));
    }
    return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace skein;

    CLI::App app{"verification and inspection of the tangle-replacement models"};
    app.set_version_flag("--version", "skeinctl 1.0.0");
    app.require_subcommand(0, 1);

    bool list_checks = false;
    app.add_flag("--list-checks", list_checks,
                 "list every check id, one per line, and exit");

    auto* verify = app.add_subcommand("verify", "run the verification campaign");
    std::string only, report_path, mutate_key;
    std::string golden_dir = default_golden_dir();
    verify->add_option("--only", only,
                       "run only checks whose id starts with this prefix");
    verify->add_option("--report", report_path,
                       "also write the report as canonical JSON to this file");
    verify->add_option("--golden-dir", golden_dir,
                       "directory holding the golden fixtures "
                       "(empty: skip golden comparisons)");
    verify->add_option("--mutate", mutate_key,
                       "corrupt one table entry before verifying "
                       "(mutation id or catalog index)");
    bool list_mutations = false;
    verify->add_flag("--list-mutations", list_mutations,
                     "list the mutation catalog and exit");

    auto* show = app.add_subcommand("show", "print one of the built objects");
    std::string object, format = "text";
    show->add_option("--object", object,
                     "bsd:1 | bsd:infty | bsd:0 | map:f1 | map:finfty | map:f0 "
                     "| homotopy:phi1 | homotopy:phiinfty | homotopy:phi0")
        ->required();
    show->add_option("--format", format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));

    auto* gradings = app.add_subcommand("gradings", "print the grading tables");
    bool skein_reduced = false;
    gradings->add_flag("--skein-reduced", skein_reduced,
                       "print only the skein-reduced values");

    auto* cone = app.add_subcommand(
        "cone", "print a mapping-cone equivalence with its solved certificate");
    std::string cone_k;
    cone->add_option("--k", cone_k, "resolution slot: 1 | infty | 0")->required();

    auto* examples =
        app.add_subcommand("examples", "print a grading-lattice quotient example");
    std::string which;
    examples->add_option("--which", which, "6.1 | 6.2")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (list_checks) {
            VerifyOptions opts;
            opts.golden_dir = default_golden_dir();
            for (const auto& c : verify_tables(standard_tables(), opts).checks)
                std::cout << c.id << "\n";
            return 0;
        }

        if (*verify) {
            if (list_mutations) {
                for (const auto& m : mutation_catalog())
                    std::cout << m.id << " - " << m.what << " (detected by "
                              << m.detected_by << ")\n";
                return 0;
            }
            VerifyOptions opts;
            opts.only_prefix = only;
            opts.golden_dir = golden_dir;
            ModelTables tables = standard_tables();
            if (!mutate_key.empty()) {
                const Mutation* m = find_mutation(mutate_key);
                if (!m) {
                    std::cerr << "error: unknown mutation '" << mutate_key
                              << "' (see verify --list-mutations)\n";
                    return 2;
                }
                m->apply(tables);
                std::cout << "mutation " << m->id << ": " << m->what << "\n";
            }
            return run_verify(tables, opts, report_path);
        }

        if (*show) {
            const auto models = build_models(standard_tables());
            if (format == "json") {
                const auto j = object_json(*models, object);
                if (!j) {
                    std::cerr << "error: unknown object '" << object << "'\n";
                    return 2;
                }
                std::cout << canonical_dump(*j);
            } else {
                const auto text = object_text(*models, object);
                if (!text) {
                    std::cerr << "error: unknown object '" << object << "'\n";
                    return 2;
                }
                std::cout << *text;
            }
            return 0;
        }

        if (*gradings) {
            std::cout << gradings_text(standard_tables(), skein_reduced);
            return 0;
        }

        if (*cone) {
            const auto k = parse_k(cone_k);
            if (!k) {
                std::cerr << "error: --k must be 1, infty, or 0\n";
                return 2;
            }
            const auto models = build_models(standard_tables());
            std::cout << cone_text(*models, *k);
            VerifyOptions opts;
            opts.only_prefix = std::string("cone.equivalence.") + k_name(*k);
            return verify_all(*models, opts).ok() ? 0 : 1;
        }

        if (*examples) {
            const LatticeExample* ex = find_example(standard_tables(), which);
            if (!ex) {
                std::cerr << "error: --which must be 6.1 or 6.2\n";
                return 2;
            }
            std::cout << example_text(*ex);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    std::cerr << app.help();
    return 2;
}
