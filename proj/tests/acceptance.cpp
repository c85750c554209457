// Acceptance suite: one pass/fail line per criterion. Every criterion runs
// under 1 worker and again under 8, both for the stated assertions and for
// the byte-identical-JSON determinism check at the end.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "matsum/experiments.hpp"
#include "matsum/json_io.hpp"
#include "oracles.hpp"

namespace {

using matsum::Json;

struct Criterion {
    std::string name;
    double limit_seconds;
    // Builds the full report for a worker count; must not embed timing.
    Json (*run)(int threads);
    // Applies the assertions; appends failure descriptions.
    bool (*check)(const Json& report, std::vector<std::string>& failures);
};

Json strip_key(Json j, const std::string& key) {
    j.erase(key);
    return j;
}

// ---- 1. exact cancellation -------------------------------------------------

Json run_cancellation(int threads) {
    matsum::ExperimentResult res = matsum::verify_lemma_bounds(
        matsum::LemmaSuite::L3, 2, {3, 5, 7}, 20, matsum::kDefaultSeed, {threads, false});
    return strip_key(res.report, "wall_ms");
}

bool check_cancellation(const Json& report, std::vector<std::string>& failures) {
    bool ok = report.at("verdicts").at("cancellation_identity_all").get<bool>();
    if (!ok) failures.push_back("cancellation identity violated: " + report.dump());
    for (const Json& rec : report.at("records")) {
        const std::uint64_t p = rec.at("p").get<std::uint64_t>();
        if (rec.at("fiber_size").get<std::uint64_t>() != p * p * p) {
            failures.push_back("fiber size is not p^3 at p=" + std::to_string(p));
            ok = false;
        }
    }
    return ok;
}

// ---- 2. determinant-one obstruction ----------------------------------------

Json run_sl2(int threads) {
    matsum::ExperimentResult res =
        matsum::sl2_counterexample({3, 5, 7, 11, 13}, matsum::default_sl2_h(), {threads, false});
    return strip_key(res.report, "wall_ms");
}

bool check_sl2(const Json& report, std::vector<std::string>& failures) {
    const std::uint64_t expected_orders[] = {24, 120, 336, 1320, 2184};
    const std::uint32_t primes[] = {3, 5, 7, 11, 13};
    bool ok = report.at("conditions_hold").get<bool>();
    const auto& records = report.at("records");
    for (int i = 0; i < 5; ++i) {
        // Confirm the order by an independent brute-force filter first.
        const long long brute = oracle::count_members('s', 2, primes[i]);
        if (std::uint64_t(brute) != expected_orders[i]) {
            failures.push_back("brute-force order mismatch at p=" + std::to_string(primes[i]));
            ok = false;
            continue;
        }
        const Json& rec = records.at(i);
        if (rec.at("N").get<std::uint64_t>() != expected_orders[i] ||
            rec.at("counts").at(0).get<std::uint64_t>() != expected_orders[i] ||
            !rec.at("concentrated_at_zero").get<bool>() ||
            rec.at("normalized_re").get<double>() != 1.0 ||
            rec.at("normalized_im").get<double>() != 0.0) {
            failures.push_back("concentration failed at p=" + std::to_string(primes[i]) + ": " +
                               rec.dump());
            ok = false;
        }
    }
    if (report.at("cube_integral").get<double>() != 0.0) {
        failures.push_back("nonzero-h cube integral must be 0");
        ok = false;
    }
    return ok;
}

// ---- 3. Weil bound at n = 1 --------------------------------------------------

Json run_weil(int threads) {
    matsum::ExperimentResult res = matsum::verify_lemma_bounds(
        matsum::LemmaSuite::L1, 1, {3, 5, 7, 11, 13, 17, 19, 23, 29, 31}, 1,
        matsum::kDefaultSeed, {threads, false});
    Json out = strip_key(res.report, "wall_ms");
    matsum::ComplexValue k115 = matsum::classical_kloosterman(1, 1, 5);
    out["k_1_1_5"] = Json{{"re", k115.re}, {"im", k115.im}, {"abs", k115.abs()}};
    return out;
}

bool check_weil(const Json& report, std::vector<std::string>& failures) {
    bool ok = report.at("verdicts").at("weil_bound_all").get<bool>();
    if (!ok) failures.push_back("some |K(u,v;p)| exceeded 2 sqrt(p)");
    const double abs_k = report.at("k_1_1_5").at("abs").get<double>();
    const double brute = double(std::abs(oracle::kloosterman(1, 1, 5)));
    if (std::abs(abs_k - 0.38196601125010515) > 1e-9 || std::abs(abs_k - brute) > 1e-9) {
        failures.push_back("K(1,1;5) mismatch: got " + std::to_string(abs_k));
        ok = false;
    }
    return ok;
}

// ---- 4. ETK domination --------------------------------------------------------

Json run_etk_domination(int threads) {
    Json records = Json::array();
    for (std::uint32_t p : {5u, 7u, 11u}) {
        matsum::PointFamily fam = matsum::matrix_family(
            matsum::Embedding::MatrixWithInverse, matsum::GroupKind::GeneralLinear, 2, p);
        auto errors = matsum::empirical_box_errors(fam, matsum::preset_boxes(8, 50),
                                                   {threads, false});
        for (std::uint32_t H : {1u, 2u}) {
            matsum::EtkOptions opt;
            opt.H = H;
            opt.threads = threads;
            matsum::EtkReport etk = matsum::etk_bound_over_family(fam, opt);
            double max_error = 0;
            bool dominated = true;
            for (const matsum::BoxError& e : errors) {
                max_error = std::max(max_error, e.value);
                dominated = dominated && e.value <= etk.bound + 1e-9;
            }
            records.push_back(Json{{"p", p},
                                   {"H", H},
                                   {"boxes", errors.size()},
                                   {"bound", etk.bound},
                                   {"max_error", max_error},
                                   {"dominated", dominated}});
        }
    }
    return Json{{"name", "etk_domination"}, {"records", std::move(records)}};
}

bool check_etk_domination(const Json& report, std::vector<std::string>& failures) {
    bool ok = true;
    for (const Json& rec : report.at("records")) {
        if (rec.at("boxes").get<std::size_t>() != 50) {
            failures.push_back("expected 50 preset boxes: " + rec.dump());
            ok = false;
        }
        if (!rec.at("dominated").get<bool>()) {
            failures.push_back("box error above the ETK bound: " + rec.dump());
            ok = false;
        }
    }
    return ok;
}

// ---- 5. order formulas vs brute force ----------------------------------------

Json run_orders(int threads) {
    Json records = Json::array();
    const std::pair<int, std::uint32_t> cases[] = {{1, 7}, {2, 3}, {2, 5}, {3, 3}};
    for (auto [n, p] : cases) {
        for (matsum::GroupKind kind :
             {matsum::GroupKind::FullMatrixSet, matsum::GroupKind::GeneralLinear,
              matsum::GroupKind::SpecialLinear, matsum::GroupKind::Singular}) {
            records.push_back(Json{{"n", n},
                                   {"p", p},
                                   {"group", matsum::group_tag(kind)},
                                   {"formula", matsum::group_order(kind, n, p)},
                                   {"streamed", matsum::streamed_order(kind, n, p, threads)}});
        }
    }
    return Json{{"name", "orders"}, {"records", std::move(records)}};
}

bool check_orders(const Json& report, std::vector<std::string>& failures) {
    bool ok = true;
    for (const Json& rec : report.at("records")) {
        const std::uint64_t formula = rec.at("formula").get<std::uint64_t>();
        const std::uint64_t streamed = rec.at("streamed").get<std::uint64_t>();
        const char tag = rec.at("group").get<std::string>()[0] == 'g'
                             ? 'g'
                             : rec.at("group").get<std::string>()[0];
        const long long brute =
            oracle::count_members(tag, rec.at("n").get<int>(), rec.at("p").get<std::uint32_t>());
        if (formula != streamed || formula != std::uint64_t(brute)) {
            failures.push_back("order mismatch: " + rec.dump() + " brute=" + std::to_string(brute));
            ok = false;
        }
    }
    return ok;
}

// ---- 6. golden bound-trend suites ----------------------------------------------

Json run_trends(int threads) {
    Json suites = Json::array();
    const struct {
        matsum::LemmaSuite suite;
        int n;
        std::vector<std::uint32_t> p_list;
    } specs[] = {
        {matsum::LemmaSuite::L1, 2, {3, 5, 7, 11, 13}},
        {matsum::LemmaSuite::L2, 2, {3, 5, 7, 11, 13}},
        {matsum::LemmaSuite::L4, 2, {3, 5, 7, 11, 13}},
        {matsum::LemmaSuite::S4, 3, {3, 5}},
    };
    for (const auto& s : specs) {
        matsum::ExperimentResult res = matsum::verify_lemma_bounds(
            s.suite, s.n, s.p_list, 50, matsum::kDefaultSeed, {threads, false});
        Json max_ratios = Json::array();
        for (const Json& rec : res.report.at("records")) max_ratios.push_back(rec.at("max_ratio"));
        suites.push_back(Json{{"suite", matsum::lemma_tag(s.suite)},
                              {"n", s.n},
                              {"p_list", s.p_list},
                              {"max_ratios", std::move(max_ratios)},
                              {"trend_factor", res.report.at("trend_factor")}});
    }
    return Json{{"name", "bound_trends"}, {"suites", std::move(suites)}};
}

bool check_trends(const Json& report, std::vector<std::string>& failures) {
    Json golden = matsum::load_json_file(std::string(MATSUM_GOLDEN_DIR) + "/lemma_trends.json");
    bool ok = true;
    const auto& suites = report.at("suites");
    const auto& golden_suites = golden.at("suites");
    if (suites.size() != golden_suites.size()) {
        failures.push_back("suite count differs from the committed pilot");
        return false;
    }
    for (std::size_t i = 0; i < suites.size(); ++i) {
        const Json& got = suites.at(i);
        const Json& want = golden_suites.at(i);
        if (got.at("suite") != want.at("suite")) {
            failures.push_back("suite order differs from the committed pilot");
            ok = false;
            continue;
        }
        const auto& got_r = got.at("max_ratios");
        const auto& want_r = want.at("max_ratios");
        for (std::size_t j = 0; j < want_r.size(); ++j) {
            if (std::abs(got_r.at(j).get<double>() - want_r.at(j).get<double>()) > 1e-9) {
                failures.push_back(got.at("suite").get<std::string>() + " ratio " +
                                   std::to_string(j) + " drifted from the pilot: " +
                                   got_r.at(j).dump() + " vs " + want_r.at(j).dump());
                ok = false;
            }
        }
        // The smallest-to-largest-p growth may not exceed the recorded factor.
        const double factor = got_r.back().get<double>() / got_r.front().get<double>();
        const double pilot_factor = want.at("trend_factor").get<double>();
        if (factor > pilot_factor + 1e-9) {
            failures.push_back(got.at("suite").get<std::string>() +
                               " grew beyond the pilot factor: " + std::to_string(factor) + " > " +
                               std::to_string(pilot_factor));
            ok = false;
        }
    }
    return ok;
}

// ---- 7. decay scans --------------------------------------------------------------

matsum::RegionUnion corner_region(int k) {
    std::vector<matsum::Rat> lo(k, matsum::Rat(0)), hi(k, matsum::Rat(1));
    hi[0] = matsum::Rat(1, 2);
    hi[1] = matsum::Rat(1, 2);
    return matsum::make_region(k, {matsum::make_box(std::move(lo), std::move(hi))});
}

Json run_decay(int threads) {
    Json scans = Json::array();
    const struct {
        matsum::Embedding e;
        std::vector<std::uint32_t> p_list;
    } specs[] = {
        {matsum::Embedding::MatrixWithInverse, {11, 19, 31}},
        {matsum::Embedding::MatrixEntries, {11, 19, 31, 61}},
        {matsum::Embedding::SpecialMatrixEntries, {11, 19, 31, 61}},
    };
    for (const auto& s : specs) {
        const int k = matsum::embedding_dim(s.e, 2);
        matsum::ExperimentResult res =
            matsum::theorem_scan(s.e, matsum::embedding_default_group(s.e), 2, s.p_list,
                                 corner_region(k), std::nullopt, 1, {threads, false});
        scans.push_back(Json{{"embedding", matsum::embedding_tag(s.e)},
                             {"report", strip_key(res.report, "wall_ms")}});
    }
    return Json{{"name", "decay_scans"}, {"scans", std::move(scans)}};
}

bool check_decay(const Json& report, std::vector<std::string>& failures) {
    Json golden = matsum::load_json_file(std::string(MATSUM_GOLDEN_DIR) + "/theorem_scan.json");
    bool ok = true;
    const auto& scans = report.at("scans");
    const auto& golden_scans = golden.at("scans");
    for (std::size_t i = 0; i < scans.size(); ++i) {
        const Json& rep = scans.at(i).at("report");
        const Json& want = golden_scans.at(i);
        if (scans.at(i).at("embedding") != want.at("embedding")) {
            failures.push_back("scan order differs from the committed pilot");
            ok = false;
            continue;
        }
        const std::string tag = want.at("embedding").get<std::string>();
        if (!rep.at("verdicts").at("errors_strictly_decreasing").get<bool>()) {
            failures.push_back(tag + ": errors are not strictly decreasing");
            ok = false;
        }
        if (!rep.at("verdicts").at("dominated_by_etk").get<bool>()) {
            failures.push_back(tag + ": some error exceeds the same-p ETK bound");
            ok = false;
        }
        const auto& records = rep.at("records");
        const auto& want_errors = want.at("errors");
        for (std::size_t j = 0; j < want_errors.size(); ++j) {
            const double got = records.at(j).at("error_value").get<double>();
            if (std::abs(got - want_errors.at(j).get<double>()) > 1e-9) {
                failures.push_back(tag + " error " + std::to_string(j) +
                                   " drifted from the pilot");
                ok = false;
            }
            if (records.at(j).at("etk_H").get<std::uint32_t>() != 1) {
                failures.push_back(tag + ": expected the H = 1 truncation");
                ok = false;
            }
        }
    }
    return ok;
}

const Criterion kCriteria[] = {
    {"exact cancellation counts_Z + counts_GL = p^3", 5, run_cancellation, check_cancellation},
    {"SL2 image concentrates: counts[0] = |SL2|, normalized sum 1", 5, run_sl2, check_sl2},
    {"Weil bound |K(u,v;p)| <= 2 sqrt(p), all u,v, p <= 31", 5, run_weil, check_weil},
    {"every preset-box error <= ETK bound (p in {5,7,11}, H in {1,2})", 600, run_etk_domination,
     check_etk_domination},
    {"order formulas = streamed = brute-force counts", 60, run_orders, check_orders},
    {"bound-trend suites match the committed pilot", 900, run_trends, check_trends},
    {"decay scans: strictly decreasing, ETK-dominated, pilot-exact", 300, run_decay, check_decay},
};

} // namespace

int main() {
    int failed = 0;
    bool deterministic = true;
    std::string determinism_detail;

    for (int i = 0; i < 7; ++i) {
        const Criterion& c = kCriteria[i];
        const auto t0 = std::chrono::steady_clock::now();
        Json single = c.run(1);
        const double t_single =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const auto t1 = std::chrono::steady_clock::now();
        Json eight = c.run(8);
        const double t_eight =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();

        if (single.dump() != eight.dump()) {
            deterministic = false;
            determinism_detail += " criterion " + std::to_string(i + 1);
        }

        std::vector<std::string> failures;
        bool ok = c.check(single, failures);
        const double slowest = std::max(t_single, t_eight);
        if (slowest > c.limit_seconds) {
            failures.push_back("runtime " + std::to_string(slowest) + "s exceeds " +
                               std::to_string(c.limit_seconds) + "s");
            ok = false;
        }
        std::printf("%s criterion %d: %s (%.1fs + %.1fs)\n", ok ? "PASS" : "FAIL", i + 1,
                    c.name.c_str(), t_single, t_eight);
        for (const std::string& f : failures) std::printf("       %s\n", f.c_str());
        if (!ok) ++failed;
    }

    std::printf("%s criterion 8: byte-identical JSON under 1 vs 8 workers%s\n",
                deterministic ? "PASS" : "FAIL", determinism_detail.c_str());
    if (!deterministic) ++failed;

    if (failed) {
        std::printf("%d criterion(s) failed\n", failed);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
