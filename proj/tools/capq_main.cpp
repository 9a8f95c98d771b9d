#include "capq/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

constexpr int kExitBadInput = 2;
constexpr int kExitFixtureMismatch = 3;
constexpr int kExitVerificationFailure = 4;

int cmd_report(long p, long q, bool json, bool csv, long aux_bound) {
    if (csv) {
        std::cout << capq::scan_csv_header() << "\n" << capq::scan_csv_line(capq::scan_pair(p, q)) << "\n";
        return 0;
    }
    capq::ReportDocument doc = capq::build_report(p, q, aux_bound);
    if (json) std::cout << capq::render_json(doc);
    else std::cout << capq::render_markdown(doc);
    return 0;
}

int cmd_scan(long p_max, long q_max, const std::string& filter, const std::string& out_path, int jobs) {
    std::vector<capq::ScanRow> rows = capq::run_scan(p_max, q_max, filter, jobs);
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw std::invalid_argument("cannot open output file " + out_path);
        os = &file;
    }
    *os << capq::scan_csv_header() << "\n";
    for (const auto& r : rows) *os << capq::scan_csv_line(r) << "\n";
    return 0;
}

int cmd_verify_fixtures() {
    std::vector<capq::RowCheck> rows = capq::verify_fixtures();
    int failed = 0, passed = 0, fixture_only = 0;
    for (const auto& row : rows) {
        std::cout << "d = " << row.d << " [" << row.case_label << "]\n";
        for (const auto& cell : row.cells) {
            const char* tag = cell.verdict == capq::CellCheck::PASS ? "pass"
                              : cell.verdict == capq::CellCheck::FAIL ? "FAIL"
                                                                      : "fixture-only";
            std::cout << "  [" << tag << "] " << cell.cell;
            if (!cell.detail.empty()) std::cout << " (" << cell.detail << ")";
            std::cout << "\n";
            if (cell.verdict == capq::CellCheck::FAIL) ++failed;
            else if (cell.verdict == capq::CellCheck::PASS) ++passed;
            else ++fixture_only;
        }
    }
    std::cout << rows.size() << " rows: " << passed << " cells verified, " << fixture_only
              << " fixture-only, " << failed << " failed\n";
    return failed == 0 ? 0 : kExitFixtureMismatch;
}

int cmd_witness(long p, long q, const std::string& field, long aux_bound) {
    capq::CapReport rep;
    if (field == "K1") rep = capq::kappa_K1(p, q);
    else if (field == "K2") rep = capq::kappa_K2(p, q, aux_bound);
    else if (field == "K3") rep = capq::kappa_K3(p, q, aux_bound);
    else throw std::invalid_argument("field must be K1, K2 or K3");

    std::cout << "kappa_" << field << ", |kernel| = " << rep.kernel_size << ", branch: " << rep.branch << "\n";
    for (const auto& w : rep.witnesses)
        std::cout << w.ideal << ": alpha = " << w.alpha.str() << "\n  " << w.identity << "  [verified]\n  "
                  << w.note << "\n";
    auto witnessed = [&](const capq::IdealLabel& g) {
        for (const auto& w : rep.witnesses)
            if (w.ideal == g.str()) return true;
        return false;
    };
    if (rep.generators.empty()) {
        std::cout << "kernel generators from candidate set:";
        for (std::size_t i = 0; i < rep.candidates.size(); ++i) {
            std::cout << (i ? " or " : " ");
            std::cout << "<";
            for (std::size_t k = 0; k < rep.candidates[i].size(); ++k)
                std::cout << (k ? ", " : "") << rep.candidates[i][k].str();
            std::cout << ">";
        }
        std::cout << "\n";
    }
    for (const auto& g : rep.generators)
        if (!witnessed(g))
            std::cout << g.str() << ": no constructive witness in this branch; kernel from "
                      << (rep.fixture_resolution ? "fixture resolution" : "candidate set") << "\n";
    if (rep.fixture_resolution) std::cout << "fixture resolution: " << *rep.fixture_resolution << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic for the 2-class groups of Q(sqrt(2pq), i): units, ambiguous classes, capitulation"};
    app.require_subcommand(1);

    long cf_max_steps = 0;
    app.add_option("--cf-max-steps", cf_max_steps,
                   "continued-fraction step limit (default CAPQ_CF_MAX_STEPS or 1048576)");

    long p = 0, q = 0, aux_bound = 0;
    bool json = false, md = false, csv = false;

    auto* report = app.add_subcommand("report", "full analysis of one pair (p, q)");
    report->add_option("-p", p, "prime p = 1 (mod 4)")->required();
    report->add_option("-q", q, "prime q = 3 (mod 4)")->required();
    report->add_flag("--json", json, "machine-readable output");
    report->add_flag("--md", md, "markdown output (default)");
    report->add_flag("--csv", csv, "single scan-style CSV row");
    report->add_option("--aux-bound", aux_bound, "search bound for the auxiliary prime (default CAPQ_AUX_BOUND or 10^6)");

    long p_max = 0, q_max = 0;
    std::string filter = "all", out_path;
    int jobs = 0;
    auto* scan = app.add_subcommand("scan", "sweep all admissible pairs up to the bounds (CSV)");
    scan->add_option("--p-max", p_max, "upper bound for p")->required();
    scan->add_option("--q-max", q_max, "upper bound for q")->required();
    scan->add_option("--filter", filter, "branch filter: all, p1mod8, p5mod8, xpm1, pxpm1, 2pxpm1, n2p+1, n2p-1, k3case1..4, app6");
    scan->add_option("--out", out_path, "output file (default stdout)");
    scan->add_option("--jobs", jobs, "worker threads (default: hardware)");

    std::string fixtures_file;
    auto* verify = app.add_subcommand("verify-fixtures", "recompute every checkable cell of the embedded tables");
    verify->add_option("--fixtures", fixtures_file, "fixture CSV path (default: shipped data/fixtures.csv)");

    std::string field;
    auto* witness = app.add_subcommand("witness", "print capitulation witnesses for one extension");
    witness->add_option("-p", p, "prime p = 1 (mod 4)")->required();
    witness->add_option("-q", q, "prime q = 3 (mod 4)")->required();
    witness->add_option("--field", field, "K1, K2 or K3")->required();
    witness->add_option("--aux-bound", aux_bound, "search bound for the auxiliary prime");

    long oracle_m = 0;
    auto* oracle = app.add_subcommand("oracle", "independent class-group computations");
    auto* cg = oracle->add_subcommand("class-group", "class group of Q(sqrt(m)) by reduced forms");
    cg->add_option("-m", oracle_m, "squarefree integer m (negative: full structure; positive: class number)")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitBadInput;
    }

    if (cf_max_steps > 0) setenv("CAPQ_CF_MAX_STEPS", std::to_string(cf_max_steps).c_str(), 1);

    try {
        if (*report) return cmd_report(p, q, json && !md, csv, aux_bound);
        if (*scan) return cmd_scan(p_max, q_max, filter, out_path, jobs);
        if (*verify) {
            if (!fixtures_file.empty()) capq::set_fixtures_path(fixtures_file);
            return cmd_verify_fixtures();
        }
        if (*witness) return cmd_witness(p, q, field, aux_bound);
        if (*cg) {
            if (oracle_m < 0) {
                capq::FormClassGroup g =
                    capq::imag_class_group((((oracle_m % 4) + 4) % 4 == 1) ? capq::BigInt(oracle_m)
                                                                           : capq::BigInt(4 * oracle_m));
                std::cout << "h(" << oracle_m << ") = " << g.order() << ", invariants (";
                for (std::size_t i = 0; i < g.invariants.size(); ++i)
                    std::cout << (i ? ", " : "") << g.invariants[i];
                std::cout << "), " << g.forms.size() << " reduced forms\n";
            } else {
                std::cout << "h(" << oracle_m << ") = " << capq::real_class_number(oracle_m) << "\n";
            }
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const capq::limit_exceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const capq::verification_error& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return kExitVerificationFailure;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFixtureMismatch;
    }
    return 0;
}
