#include "capq/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <set>
#include <sstream>
#include <thread>

namespace capq {

using ordered_json = nlohmann::ordered_json;

ReportDocument build_report(long p, long q, long aux_bound) {
    require_valid_pair(p, q);
    ReportDocument doc;
    doc.p = p;
    doc.q = q;
    doc.d = 2 * p * q;
    doc.eps_2pq = fundamental_unit(doc.d);
    doc.eps_pq = fundamental_unit(p * q);
    doc.eps_2p = fundamental_unit(2 * p);
    doc.tri_x = square_class_case(doc.eps_2pq, p);
    doc.tri_a = square_class_case(doc.eps_pq, p);
    doc.fsu_k_ = fsu_k(p, q);
    doc.fsu_1 = fsu_K1(p, q);
    doc.fsu_2 = fsu_K2(p, q);
    doc.fsu_3 = fsu_K3(p, q);
    doc.ambiguous = ambiguous_sizes(p, q);
    doc.cap_1 = kappa_K1(p, q);
    doc.cap_2 = kappa_K2(p, q, aux_bound);
    doc.cap_3 = kappa_K3(p, q, aux_bound);
    doc.cap_genus = genus_kernel(p, q, aux_bound);
    if (p % 8 == 1 && q % 8 == 3 && kronecker(BigInt(p), BigInt(q)) == -1)
        doc.application = application_profile(p, q, aux_bound);
    doc.h_2pq = real_class_number(doc.d);
    doc.h_m2pq = imag_class_number(-doc.d);
    doc.h_k = kuroda_h_k(p, q);
    if (!fixtures_for(doc.d).empty()) {
        long expect = 1;
        for (long v : fixtures_for(doc.d).front()->cl_k) expect *= v;
        doc.fixture_note = (doc.h_k == expect) ? "h(k) matches the tabulated Cl(k) order"
                                               : "h(k) DISAGREES with the tabulated Cl(k) order";
    }
    return doc;
}

namespace {

std::string rat_str(const BigRat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

ordered_json unit_json(const QuadUnit& u) {
    ordered_json j;
    j["d"] = u.d;
    j["x"] = rat_str(u.x);
    j["y"] = rat_str(u.y);
    j["norm"] = u.norm;
    return j;
}

ordered_json tri_json(const SquareClassCase& t) {
    ordered_json j;
    j["case"] = square_case_label(t.kind);
    j["root"] = t.root.get_str();
    j["y1"] = t.y1.get_str();
    j["y2"] = t.y2.get_str();
    return j;
}

ordered_json fsu_json(const FsuReport& f) {
    ordered_json j;
    j["field"] = f.field.str();
    ordered_json gens = ordered_json::array();
    for (const auto& g : f.generators) gens.push_back(g.text);
    j["generators"] = gens;
    j["hasse_q"] = f.hasse_q;
    j["branch"] = f.branch;
    ordered_json certs = ordered_json::array();
    for (const auto& c : f.certificates) {
        ordered_json cj;
        cj["claim"] = c.claim;
        cj["root"] = c.root.str();
        cj["square"] = c.square.str();
        certs.push_back(cj);
    }
    j["certificates"] = certs;
    return j;
}

ordered_json gens_json(const std::vector<IdealLabel>& gens) {
    ordered_json a = ordered_json::array();
    for (const auto& g : gens) a.push_back(g.str());
    return a;
}

ordered_json cap_json(const CapReport& c) {
    ordered_json j;
    j["size"] = c.kernel_size;
    j["generators"] = gens_json(c.generators);
    if (!c.candidates.empty()) {
        ordered_json cs = ordered_json::array();
        for (const auto& cand : c.candidates) cs.push_back(gens_json(cand));
        j["candidates"] = cs;
    }
    if (c.fixture_resolution) j["fixture_resolution"] = *c.fixture_resolution;
    ordered_json ws = ordered_json::array();
    for (const auto& w : c.witnesses) {
        ordered_json wj;
        wj["ideal"] = w.ideal;
        wj["alpha"] = w.alpha.str();
        wj["identity"] = w.identity;
        wj["note"] = w.note;
        ws.push_back(wj);
    }
    j["witnesses"] = ws;
    j["branch"] = c.branch;
    if (!c.notes.empty()) j["notes"] = c.notes;
    if (c.lower_bound_only) j["lower_bound_only"] = true;
    return j;
}

}  // namespace

std::string render_json(const ReportDocument& doc) {
    ordered_json j;
    j["input"] = {{"p", doc.p}, {"q", doc.q}, {"d", doc.d}};
    ordered_json units;
    units["eps_2pq"] = unit_json(doc.eps_2pq);
    units["eps_2pq"]["square_class"] = tri_json(doc.tri_x);
    units["eps_pq"] = unit_json(doc.eps_pq);
    units["eps_pq"]["square_class"] = tri_json(doc.tri_a);
    units["eps_2p"] = unit_json(doc.eps_2p);
    j["units"] = units;
    ordered_json fsu;
    fsu["k"] = fsu_json(doc.fsu_k_);
    fsu["K1"] = fsu_json(doc.fsu_1);
    fsu["K2"] = fsu_json(doc.fsu_2);
    fsu["K3"] = fsu_json(doc.fsu_3);
    j["fsu"] = fsu;
    ordered_json amb;
    amb["t"] = doc.ambiguous.t;
    amb["e"] = doc.ambiguous.e;
    amb["rank"] = doc.ambiguous.rank;
    amb["am_order"] = doc.ambiguous.am_order;
    amb["am_s_order"] = doc.ambiguous.am_s_order;
    amb["strong_generators"] = gens_json(doc.ambiguous.strong_gens);
    amb["h1_equals_h2"] = doc.ambiguous.h1_equals_h2;
    if (doc.ambiguous.aux) {
        ordered_json aj;
        aj["l"] = doc.ambiguous.aux->l;
        aj["certifiers"] = {{"I", doc.ambiguous.aux->cert_I},
                            {"H1*I", doc.ambiguous.aux->cert_H1I},
                            {"H0*I", doc.ambiguous.aux->cert_H0I},
                            {"H0*H1*I", doc.ambiguous.aux->cert_H0H1I}};
        amb["aux_ideal"] = aj;
    }
    j["ambiguous"] = amb;
    ordered_json cap;
    cap["K1"] = cap_json(doc.cap_1);
    cap["K2"] = cap_json(doc.cap_2);
    cap["K3"] = cap_json(doc.cap_3);
    cap["genus"] = cap_json(doc.cap_genus);
    j["capitulation"] = cap;
    if (doc.application) {
        ordered_json app;
        app["x_minus_1_root"] = doc.application->x_minus_1_root.get_str();
        app["a_minus_1_root"] = doc.application->a_minus_1_root.get_str();
        app["cl2_type"] = {2, 2, 2};
        app["genus_kernel_order"] = doc.application->genus_kernel_order;
        j["application"] = app;
    } else {
        j["application"] = nullptr;
    }
    ordered_json orc;
    orc["h_2pq"] = doc.h_2pq;
    orc["h_minus_2pq"] = doc.h_m2pq;
    orc["kuroda_h_k"] = doc.h_k;
    if (doc.fixture_note) orc["fixture_note"] = *doc.fixture_note;
    j["oracle"] = orc;
    return j.dump(2) + "\n";
}

namespace {

std::string gens_text(const std::vector<IdealLabel>& gens) {
    std::ostringstream os;
    os << "<";
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (i) os << ", ";
        os << gens[i].str();
    }
    os << ">";
    return os.str();
}

std::string cap_summary(const CapReport& c) {
    if (!c.generators.empty()) return gens_text(c.generators);
    std::ostringstream os;
    for (std::size_t i = 0; i < c.candidates.size(); ++i) {
        if (i) os << " or ";
        os << gens_text(c.candidates[i]);
    }
    return os.str();
}

}  // namespace

std::string render_markdown(const ReportDocument& doc) {
    std::ostringstream os;
    os << "# k = Q(sqrt(" << doc.d << "), i)   (p = " << doc.p << ", q = " << doc.q << ")\n\n";
    os << "## Units\n\n";
    os << "| unit | value | norm | square class | root |\n|---|---|---|---|---|\n";
    os << "| eps_" << doc.d << " | " << doc.eps_2pq.str() << " | " << doc.eps_2pq.norm << " | "
       << square_case_label(doc.tri_x.kind) << " | " << doc.tri_x.root << " |\n";
    os << "| eps_" << doc.p * doc.q << " | " << doc.eps_pq.str() << " | " << doc.eps_pq.norm << " | "
       << square_case_label(doc.tri_a.kind) << " | " << doc.tri_a.root << " |\n";
    os << "| eps_" << 2 * doc.p << " | " << doc.eps_2p.str() << " | " << doc.eps_2p.norm << " | - | - |\n\n";

    os << "## Fundamental systems of units\n\n";
    os << "| field | generators (mod roots of unity) | Q | branch |\n|---|---|---|---|\n";
    for (const FsuReport* f : {&doc.fsu_k_, &doc.fsu_1, &doc.fsu_2, &doc.fsu_3}) {
        os << "| " << f->field_id << " |";
        for (std::size_t i = 0; i < f->generators.size(); ++i) {
            if (i) os << ", ";
            os << " " << f->generators[i].text;
        }
        os << " | " << f->hasse_q << " | " << f->branch << " |\n";
    }
    os << "\n## Ambiguous classes of k/Q(i)\n\n";
    os << "t = " << doc.ambiguous.t << ", e = " << doc.ambiguous.e << ", rank = " << doc.ambiguous.rank
       << ", |Am| = " << doc.ambiguous.am_order << ", |Am_s| = " << doc.ambiguous.am_s_order
       << ", Am_s = " << gens_text(doc.ambiguous.strong_gens) << "\n";
    if (doc.ambiguous.h1_equals_h2) os << "(with [H1] = [H2])\n";
    if (doc.ambiguous.aux)
        os << "Am = <H0, H1, I>, I a prime above l = " << doc.ambiguous.aux->l << "\n";

    os << "\n## Capitulation kernels\n\n";
    os << "| extension | size | kernel |\n|---|---|---|\n";
    os << "| K1 | " << doc.cap_1.kernel_size << " | " << cap_summary(doc.cap_1) << " |\n";
    os << "| K2 | " << doc.cap_2.kernel_size << " | " << cap_summary(doc.cap_2) << " |\n";
    os << "| K3 | " << doc.cap_3.kernel_size << " | " << cap_summary(doc.cap_3) << " |\n";
    os << "| genus field | >= " << doc.cap_genus.kernel_size << " | " << cap_summary(doc.cap_genus)
       << " (guaranteed subgroup) |\n";

    os << "\n## Witnesses\n\n";
    for (const CapReport* c : {&doc.cap_1, &doc.cap_2, &doc.cap_3}) {
        for (const auto& w : c->witnesses)
            os << "- " << c->extension << ", " << w.ideal << ": alpha = " << w.alpha.str() << ", "
               << w.identity << ", " << w.note << "\n";
    }

    if (doc.application) {
        os << "\n## Application profile (p = 1 mod 8, q = 3 mod 8, (p|q) = -1)\n\n";
        os << "- x - 1 = " << doc.application->x_minus_1_root << "^2, a - 1 = "
           << doc.application->a_minus_1_root << "^2\n";
        os << "- Cl_2(k) of type (2,2,2); genus kernel order " << doc.application->genus_kernel_order << "\n";
    }

    os << "\n## Oracle cross-check\n\n";
    os << "h(" << doc.d << ") = " << doc.h_2pq << ", h(-" << doc.d << ") = " << doc.h_m2pq
       << ", h(k) = " << doc.h_k << " by the class-number relation";
    if (doc.fixture_note) os << " (" << *doc.fixture_note << ")";
    os << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

ScanRow scan_pair(long p, long q) {
    ScanRow r{};
    r.p = p;
    r.q = q;
    r.d = 2 * p * q;
    QuadUnit e2pq = fundamental_unit(r.d);
    QuadUnit epq = fundamental_unit(p * q);
    QuadUnit e2p = fundamental_unit(2 * p);
    SquareClassCase tx = square_class_case(e2pq, p);
    SquareClassCase ta = square_class_case(epq, p);
    r.case_2pq = square_case_label(tx.kind);
    r.case_pq = square_case_label(ta.kind);
    r.norm_eps_2p = e2p.norm;
    AmbiguousReport amb = ambiguous_sizes(p, q);
    r.rank = amb.rank;
    r.am = amb.am_order;
    r.am_s = amb.am_s_order;
    r.q_k3 = (case_xpm1(tx.kind) && case_xpm1(ta.kind)) ? hasse_Q_K3(p, q) : 1;
    r.kappa1 = kernel_size(p, q, 1);
    r.kappa2 = kernel_size(p, q, 2);
    r.kappa3 = kernel_size(p, q, 3);
    return r;
}

std::string scan_csv_header() {
    return "p,q,d,case_2pq,case_pq,norm_eps_2p,rank,am,am_s,q_k3,kappa_K1,kappa_K2,kappa_K3";
}

std::string scan_csv_line(const ScanRow& r) {
    std::ostringstream os;
    os << r.p << "," << r.q << "," << r.d << "," << r.case_2pq << "," << r.case_pq << ","
       << r.norm_eps_2p << "," << r.rank << "," << r.am << "," << r.am_s << "," << r.q_k3 << ","
       << r.kappa1 << "," << r.kappa2 << "," << r.kappa3;
    return os.str();
}

std::vector<std::string> scan_filter_names() {
    return {"all",    "p1mod8", "p5mod8", "xpm1",   "pxpm1",  "2pxpm1", "n2p+1",
            "n2p-1",  "k3case1", "k3case2", "k3case3", "k3case4", "app6"};
}

bool scan_filter_matches(const std::string& filter, const ScanRow& r) {
    auto xs = [&] { return r.case_2pq == "x+1" || r.case_2pq == "x-1"; };
    auto as = [&] { return r.case_pq == "x+1" || r.case_pq == "x-1"; };
    if (filter.empty() || filter == "all") return true;
    if (filter == "p1mod8") return r.p % 8 == 1;
    if (filter == "p5mod8") return r.p % 8 == 5;
    if (filter == "xpm1") return xs();
    if (filter == "pxpm1") return r.case_2pq == "p(x+1)" || r.case_2pq == "p(x-1)";
    if (filter == "2pxpm1") return r.case_2pq == "2p(x+1)" || r.case_2pq == "2p(x-1)";
    if (filter == "n2p+1") return r.norm_eps_2p == 1;
    if (filter == "n2p-1") return r.norm_eps_2p == -1;
    if (filter == "k3case1") return xs() && as();
    if (filter == "k3case2") return xs() && !as();
    if (filter == "k3case3") return !xs() && as();
    if (filter == "k3case4") return !xs() && !as();
    if (filter == "app6")
        return r.p % 8 == 1 && r.q % 8 == 3 && kronecker(BigInt(r.p), BigInt(r.q)) == -1;
    throw std::invalid_argument("unknown scan filter: " + filter);
}

std::vector<ScanRow> run_scan(long p_max, long q_max, const std::string& filter, int jobs) {
    if (!filter.empty()) {
        auto names = scan_filter_names();
        if (std::find(names.begin(), names.end(), filter) == names.end())
            throw std::invalid_argument("unknown scan filter: " + filter);
    }
    std::vector<std::pair<long, long>> pairs;
    for (long p = 5; p <= p_max; ++p) {
        if (p % 4 != 1 || !is_prime(BigInt(p))) continue;
        for (long q = 3; q <= q_max; ++q) {
            if (q % 4 != 3 || !is_prime(BigInt(q))) continue;
            pairs.emplace_back(p, q);
        }
    }
    std::vector<std::optional<ScanRow>> rows(pairs.size());
    std::atomic<std::size_t> next{0};
    if (jobs < 1) jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs < 1) jobs = 1;
    std::vector<std::string> errors(pairs.size());
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= pairs.size()) return;
            try {
                ScanRow row = scan_pair(pairs[i].first, pairs[i].second);
                if (scan_filter_matches(filter, row)) rows[i] = row;
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    std::vector<std::thread> threads;
    for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    for (std::size_t i = 0; i < pairs.size(); ++i)
        if (!errors[i].empty())
            throw verification_error("scan failed at (" + std::to_string(pairs[i].first) + ", " +
                                     std::to_string(pairs[i].second) + "): " + errors[i]);
    std::vector<ScanRow> out;
    for (auto& r : rows)
        if (r) out.push_back(*r);
    return out;
}

// ---------------------------------------------------------------------------
// fixture verification
// ---------------------------------------------------------------------------

namespace {

void check(std::vector<CellCheck>& cells, const std::string& cell, bool ok, const std::string& detail = "") {
    cells.push_back({cell, ok ? CellCheck::PASS : CellCheck::FAIL, detail});
}

void fixture_only(std::vector<CellCheck>& cells, const std::string& cell, const std::string& detail) {
    cells.push_back({cell, CellCheck::FIXTURE_ONLY, detail});
}

}  // namespace

std::vector<RowCheck> verify_fixtures() {
    std::vector<RowCheck> out;
    for (const FixtureRow& row : fixtures()) {
        RowCheck rc;
        rc.d = row.d;
        rc.case_label = row.case_label;
        auto& cells = rc.cells;

        QuadUnit e2pq = fundamental_unit(row.d);
        SquareClassCase tx = square_class_case(e2pq, row.p);
        QuadUnit epq = fundamental_unit(row.p * row.q);
        SquareClassCase ta = square_class_case(epq, row.p);
        QuadUnit e2p = fundamental_unit(2 * row.p);

        if (row.case_label == "K3(3)") {
            check(cells, "a+-1 square", case_xpm1(ta.kind), square_case_label(ta.kind));
            check(cells, "x+-1 not square", !case_xpm1(tx.kind), square_case_label(tx.kind));
        } else {
            check(cells, "square column case", square_case_label(tx.kind) == row.case_label,
                  std::string("computed ") + square_case_label(tx.kind));
            check(cells, "square column root", tx.root == row.root,
                  "computed " + tx.root.get_str() + ", stated " + row.root.get_str());
        }

        // class-number relation against the printed Cl(k) order
        long expect = 1;
        for (long v : row.cl_k) expect *= v;
        long hk = kuroda_h_k(row.p, row.q);
        check(cells, "Cl(k) order (class-number relation)", hk == expect,
              "h(k) = " + std::to_string(hk) + ", table " + std::to_string(expect));

        // 2-rank of the printed Cl(k) vs the ambiguous-class rank
        AmbiguousReport amb = ambiguous_sizes(row.p, row.q);
        int even = 0;
        for (long v : row.cl_k)
            if (v % 2 == 0) ++even;
        check(cells, "Cl(k) 2-rank", even == amb.rank,
              "table 2-rank " + std::to_string(even) + ", rank " + std::to_string(amb.rank));

        if (row.ext == "K2") {
            check(cells, "N(eps_2p) = +1", e2p.norm == 1, "");
            int ks = kernel_size(row.p, row.q, 2);
            if (case_xpm1(tx.kind)) {
                check(cells, "|kappa_K2| = 4", ks == 4, std::to_string(ks));
                check(cells, "H1*H2 capitulates (witnessed)", row.bits.at("K2.H1H2"), "");
                check(cells, "H1/H2 bits conjugate-consistent",
                      row.bits.at("K2.H1") == row.bits.at("K2.H2"), "");
                check(cells, "exactly one of H0, H1 capitulates",
                      row.bits.at("K2.H0") != row.bits.at("K2.H1"), "");
                fixture_only(cells, "which of <H0,H1*H2> / <H1,H2>",
                             row.bits.at("K2.H0") ? "<H0, H1*H2>" : "<H1, H2>");
            } else {
                check(cells, "|kappa_K2| = 2", ks == 2, std::to_string(ks));
                check(cells, "p = 1 (mod 8)", row.p % 8 == 1, "");
                check(cells, "I, I^2, H0, H1 principality in k",
                      !row.bits.at("k.I") && row.bits.at("k.I2") && !row.bits.at("k.H0") &&
                          !row.bits.at("k.H1"),
                      "");
                int ones = 0;
                for (const char* key : {"K2.I", "K2.H0I", "K2.H1I", "K2.H0H1I"})
                    if (row.bits.at(key)) ++ones;
                check(cells, "exactly one I-combination capitulates", ones == 1, std::to_string(ones));
                check(cells, "H0, H1, H0*H1 do not capitulate",
                      !row.bits.at("K2.H0") && !row.bits.at("K2.H1") && !row.bits.at("K2.H0H1"), "");
                std::string which;
                for (const char* key : {"K2.I", "K2.H0I", "K2.H1I", "K2.H0H1I"})
                    if (row.bits.at(key)) which = key;
                fixture_only(cells, "which I-combination", which);
            }
        } else {  // K3 rows
            int ks = kernel_size(row.p, row.q, 3);
            check(cells, "|kappa_K3| = 4", ks == 4, std::to_string(ks));
            check(cells, "p = 1 (mod 8)", row.p % 8 == 1, "");
            check(cells, "H0 capitulates (witnessed)", row.bits.at("K3.H0"), "");
            check(cells, "H1 does not capitulate", !row.bits.at("K3.H1"), "");
            check(cells, "exactly one of I, H1*I capitulates",
                  row.bits.at("K3.I") != row.bits.at("K3.H1I"), "");
            fixture_only(cells, "which of <H0,I> / <H0,H1*I>",
                         row.bits.at("K3.I") ? "<H0, I>" : "<H0, H1*I>");
        }

        std::ostringstream ext_desc;
        ext_desc << "Cl(" << row.ext << ") = (";
        for (std::size_t i = 0; i < row.cl_ext.size(); ++i) {
            if (i) ext_desc << ", ";
            ext_desc << row.cl_ext[i];
        }
        ext_desc << ")";
        fixture_only(cells, "Cl(" + row.ext + ") structure", ext_desc.str());

        out.push_back(std::move(rc));
    }
    return out;
}

}  // namespace capq
