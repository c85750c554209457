// Regenerates the committed pilot data under tests/golden/. The recorded
// values calibrate the trend checks in the acceptance suite; rerun this tool
// only when the seeded sampling scheme or the suites themselves change, and
// commit the refreshed files alongside that change.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "matsum/experiments.hpp"
#include "matsum/json_io.hpp"
#include "matsum/parallel.hpp"

namespace {

using matsum::Json;

Json lemma_suite_entry(matsum::LemmaSuite suite, int n, const std::vector<std::uint32_t>& p_list,
                       int samples, int threads) {
    matsum::ExperimentResult res =
        matsum::verify_lemma_bounds(suite, n, p_list, samples, matsum::kDefaultSeed, {threads, false});
    Json max_ratios = Json::array();
    for (const Json& rec : res.report.at("records")) max_ratios.push_back(rec.at("max_ratio"));
    return Json{{"suite", matsum::lemma_tag(suite)},
                {"n", n},
                {"p_list", p_list},
                {"max_ratios", std::move(max_ratios)},
                {"trend_factor", res.report.at("trend_factor")}};
}

matsum::RegionUnion corner_slab_region(int k) {
    // [0, 1/2)^2 x [0, 1)^(k-2)
    std::vector<matsum::Rat> lo(k, matsum::Rat(0)), hi(k, matsum::Rat(1));
    hi[0] = matsum::Rat(1, 2);
    hi[1] = matsum::Rat(1, 2);
    return matsum::make_region(k, {matsum::make_box(std::move(lo), std::move(hi))});
}

Json theorem_scan_entry(matsum::Embedding e, int n, const std::vector<std::uint32_t>& p_list,
                        std::uint32_t H, int threads) {
    matsum::GroupKind kind = matsum::embedding_default_group(e);
    const int k = matsum::embedding_dim(e, n);
    matsum::ExperimentResult res = matsum::theorem_scan(e, kind, n, p_list, corner_slab_region(k),
                                                        std::nullopt, H, {threads, false});
    Json errors = Json::array(), bounds = Json::array();
    for (const Json& rec : res.report.at("records")) {
        errors.push_back(rec.at("error_value"));
        bounds.push_back(rec.at("etk_bound"));
    }
    return Json{{"embedding", matsum::embedding_tag(e)},
                {"group", matsum::group_tag(kind)},
                {"n", n},
                {"p_list", p_list},
                {"H", H},
                {"errors", std::move(errors)},
                {"etk_bounds", std::move(bounds)},
                {"strictly_decreasing",
                 res.report.at("verdicts").at("errors_strictly_decreasing")}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"regenerate the committed pilot data"};
    std::string out_dir = "tests/golden";
    int threads = matsum::default_thread_count();
    app.add_option("--out-dir", out_dir, "output directory (default tests/golden)");
    app.add_option("--threads", threads, "worker count");
    CLI11_PARSE(app, argc, argv);

    try {
        const std::vector<std::uint32_t> p_small{3, 5, 7, 11, 13};
        const std::vector<std::uint32_t> p_n3{3, 5};
        const int samples = 50;

        Json lemma{{"schema_version", matsum::kSchemaVersion},
                   {"seed", matsum::kDefaultSeed},
                   {"rng", matsum::kRngAlgorithm},
                   {"samples", samples},
                   {"suites", Json::array({
                        lemma_suite_entry(matsum::LemmaSuite::L1, 2, p_small, samples, threads),
                        lemma_suite_entry(matsum::LemmaSuite::L2, 2, p_small, samples, threads),
                        lemma_suite_entry(matsum::LemmaSuite::L4, 2, p_small, samples, threads),
                        lemma_suite_entry(matsum::LemmaSuite::S4, 3, p_n3, samples, threads),
                    })}};
        matsum::save_json_file(out_dir + "/lemma_trends.json", lemma);
        std::cout << "wrote " << out_dir << "/lemma_trends.json\n";

        const std::vector<std::uint32_t> p_g{11, 19, 31};
        const std::vector<std::uint32_t> p_hs{11, 19, 31, 61};
        Json scans{{"schema_version", matsum::kSchemaVersion},
                   {"scans", Json::array({
                        theorem_scan_entry(matsum::Embedding::MatrixWithInverse, 2, p_g, 1, threads),
                        theorem_scan_entry(matsum::Embedding::MatrixEntries, 2, p_hs, 1, threads),
                        theorem_scan_entry(matsum::Embedding::SpecialMatrixEntries, 2, p_hs, 1,
                                           threads),
                    })}};
        matsum::save_json_file(out_dir + "/theorem_scan.json", scans);
        std::cout << "wrote " << out_dir << "/theorem_scan.json\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
