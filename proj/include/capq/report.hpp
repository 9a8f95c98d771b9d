#pragma once

#include "capq/capitulation.hpp"
#include "capq/genus.hpp"
#include "capq/oracle.hpp"
#include "capq/units.hpp"

#include <optional>
#include <string>
#include <vector>

namespace capq {

// the full per-pair analysis behind `capq report`
struct ReportDocument {
    long p = 0, q = 0, d = 0;
    QuadUnit eps_2pq, eps_pq, eps_2p;
    SquareClassCase tri_x, tri_a;
    FsuReport fsu_k_, fsu_1, fsu_2, fsu_3;
    AmbiguousReport ambiguous;
    CapReport cap_1, cap_2, cap_3, cap_genus;
    std::optional<ApplicationProfile> application;
    long h_2pq = 0, h_m2pq = 0, h_k = 0;  // oracle cross-check
    std::optional<std::string> fixture_note;
};

ReportDocument build_report(long p, long q, long aux_bound = 0);

std::string render_json(const ReportDocument& doc);      // deterministic key order
std::string render_markdown(const ReportDocument& doc);

// one CSV line per admissible pair
struct ScanRow {
    long p, q, d;
    std::string case_2pq, case_pq;
    int norm_eps_2p;
    int rank;
    long am, am_s;
    int q_k3;
    int kappa1, kappa2, kappa3;
};

std::string scan_csv_header();
std::string scan_csv_line(const ScanRow& r);
ScanRow scan_pair(long p, long q);

// filter names accepted by `capq scan --filter`
bool scan_filter_matches(const std::string& filter, const ScanRow& r);
std::vector<std::string> scan_filter_names();

// run pairs (p,q) with p <= p_max, q <= q_max over a worker pool; rows are
// returned ordered by (p, q) regardless of completion order
std::vector<ScanRow> run_scan(long p_max, long q_max, const std::string& filter, int jobs);

// ---------------------------------------------------------------------------
// fixture verification (the `verify-fixtures` engine)
// ---------------------------------------------------------------------------

struct CellCheck {
    std::string cell;
    enum Verdict { PASS, FAIL, FIXTURE_ONLY } verdict;
    std::string detail;
};

struct RowCheck {
    long d;
    std::string case_label;
    std::vector<CellCheck> cells;
    bool ok() const {
        for (const auto& c : cells)
            if (c.verdict == CellCheck::FAIL) return false;
        return true;
    }
};

std::vector<RowCheck> verify_fixtures();

}  // namespace capq
