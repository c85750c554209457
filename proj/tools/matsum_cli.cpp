// matsum: exact character sums and equidistribution checks for matrix
// groups over prime fields. Single binary, one subcommand per operation,
// machine-readable JSON output.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "matsum/charsum.hpp"
#include "matsum/discrepancy.hpp"
#include "matsum/experiments.hpp"
#include "matsum/json_io.hpp"
#include "matsum/parallel.hpp"

namespace {

using matsum::Json;

std::vector<std::uint32_t> parse_u32_list(const std::string& text) {
    std::vector<std::uint32_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    }
    if (out.empty()) throw matsum::ConfigError("empty integer list: '" + text + "'");
    return out;
}

std::vector<std::int64_t> parse_i64_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoll(item));
    }
    if (out.empty()) throw matsum::ConfigError("empty integer list: '" + text + "'");
    return out;
}

void emit(const Json& j, const std::string& report_path) {
    std::cout << j.dump(2) << "\n";
    if (!report_path.empty()) matsum::save_json_file(report_path, j);
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw matsum::ConfigError("cannot write file: " + path);
    out << text;
}

double charsum_exponent(const std::string& sum, matsum::GroupKind kind, int n) {
    if (sum == "kgl") return n * n - 0.5;
    if (sum == "ksl") return n * n - 2.0;
    // s over a kind
    switch (kind) {
        case matsum::GroupKind::GeneralLinear:
        case matsum::GroupKind::Singular: return n * n - 2.5;
        case matsum::GroupKind::SpecialLinear: return n * n - 2.0;
        case matsum::GroupKind::FullMatrixSet: return double(n * n);
    }
    return double(n * n);
}

Json charsum_report(const std::string& sum, const std::string& group_tag_str,
                    const matsum::FreqVector& freq, double exponent) {
    matsum::ComplexValue value = matsum::freq_to_complex(freq);
    const double scale = std::pow(double(freq.modulus), exponent);
    char norm[32];
    std::snprintf(norm, sizeof(norm), "p^%g", exponent);
    return Json{{"schema_version", matsum::kSchemaVersion},
                {"sum", sum},
                {"group", group_tag_str},
                {"p", freq.modulus},
                {"counts", freq.counts},
                {"complex", Json{{"re", value.re}, {"im", value.im}}},
                {"abs", value.abs()},
                {"normalized_by", norm},
                {"ratio", value.abs() / scale}};
}

struct CommonOpts {
    int threads = matsum::default_thread_count();
    bool force_scale = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--threads", o.threads, "worker count (default: MATSUM_THREADS or hardware)");
    cmd->add_flag("--force-scale", o.force_scale, "override the desk-scale guard (p^(n^2) <= 2^40)");
}

int run(int argc, char** argv) {
    CLI::App app{"character sums and equidistribution over matrix groups mod p"};
    app.require_subcommand(1);

    // ---- order ----------------------------------------------------------
    auto* cmd_order = app.add_subcommand("order", "exact group order from the closed formulas");
    std::string order_group = "gl";
    int order_n = 2;
    std::uint32_t order_p = 3;
    cmd_order->add_option("--group", order_group, "m|gl|sl|z")->required();
    cmd_order->add_option("--n", order_n, "matrix dimension")->required();
    cmd_order->add_option("--p", order_p, "prime modulus")->required();

    // ---- enumerate ------------------------------------------------------
    auto* cmd_enum = app.add_subcommand("enumerate", "streamed member count (filter over M_n)");
    std::string enum_group = "gl";
    int enum_n = 2;
    std::uint32_t enum_p = 3;
    CommonOpts enum_opts;
    cmd_enum->add_option("--group", enum_group, "m|gl|sl|z")->required();
    cmd_enum->add_option("--n", enum_n, "matrix dimension")->required();
    cmd_enum->add_option("--p", enum_p, "prime modulus")->required();
    add_common(cmd_enum, enum_opts);

    // ---- embed ----------------------------------------------------------
    auto* cmd_embed = app.add_subcommand("embed", "unit-cube image of one matrix or unit");
    std::string embed_tag_str = "g", embed_matrix_path, embed_aux_path;
    std::uint32_t embed_modulus = 0;
    std::uint64_t embed_x = 0;
    cmd_embed->add_option("--embedding", embed_tag_str, "g|h|s|gt|f")->required();
    cmd_embed->add_option("--matrix", embed_matrix_path, "matrix JSON file (g|h|s|gt)");
    cmd_embed->add_option("--aux-matrix", embed_aux_path, "C matrix file (gt)");
    cmd_embed->add_option("--modulus", embed_modulus, "modulus m (f)");
    cmd_embed->add_option("--x", embed_x, "unit x (f)");

    // ---- count ----------------------------------------------------------
    auto* cmd_count = app.add_subcommand("count", "members whose image lies in a region");
    std::string count_embedding = "g", count_group, count_region_path, count_aux_path, count_out;
    int count_n = 2;
    std::uint32_t count_p = 0, count_modulus = 0;
    CommonOpts count_opts;
    cmd_count->add_option("--embedding", count_embedding, "g|h|s|gt|f")->required();
    cmd_count->add_option("--region", count_region_path, "region JSON file")->required();
    cmd_count->add_option("--group", count_group, "gl|sl (default: by embedding)");
    cmd_count->add_option("--n", count_n, "matrix dimension");
    cmd_count->add_option("--p", count_p, "prime modulus");
    cmd_count->add_option("--modulus", count_modulus, "modulus m (f)");
    cmd_count->add_option("--aux-matrix", count_aux_path, "C matrix file (gt)");
    cmd_count->add_option("--out", count_out, "also write the JSON result here");
    add_common(cmd_count, count_opts);

    // ---- charsum --------------------------------------------------------
    auto* cmd_charsum = app.add_subcommand("charsum", "exact character sum via frequency vector");
    std::string cs_type, cs_group = "gl", cs_u_path, cs_v_path, cs_m_path, cs_a, cs_out;
    std::uint32_t cs_p = 0;
    int cs_n = 0;
    CommonOpts cs_opts;
    cmd_charsum->add_option("type", cs_type, "s|kgl|ksl|hyper")->required();
    cmd_charsum->add_option("--group", cs_group, "m|gl|sl|z (s only, default gl)");
    cmd_charsum->add_option("--n", cs_n, "matrix dimension (validated against --u)");
    cmd_charsum->add_option("--u", cs_u_path, "U matrix file");
    cmd_charsum->add_option("--v", cs_v_path, "V matrix file");
    cmd_charsum->add_option("--m", cs_m_path, "M matrix file (kgl, default identity)");
    cmd_charsum->add_option("--a", cs_a, "comma-separated coefficients (hyper)");
    cmd_charsum->add_option("--p", cs_p, "prime modulus (hyper; validated against --u otherwise)");
    cmd_charsum->add_option("--out", cs_out, "also write the JSON result here");
    add_common(cmd_charsum, cs_opts);

    // ---- etk ------------------------------------------------------------
    auto* cmd_etk = app.add_subcommand("etk", "Erdos-Turan-Koksma bound over an embedded image");
    std::string etk_embedding = "g", etk_group, etk_boxes_path, etk_aux_path, etk_plist,
                etk_report, etk_plot;
    int etk_n = 2, etk_preset = 0;
    std::uint32_t etk_p = 0, etk_H = 0;
    std::uint64_t etk_h_cap = 500000, etk_mem_mb = 1024;
    bool etk_magnitudes = false;
    CommonOpts etk_opts;
    cmd_etk->add_option("--embedding", etk_embedding, "g|h|s|gt|f")->required();
    cmd_etk->add_option("--group", etk_group, "gl|sl (default: by embedding)");
    cmd_etk->add_option("--n", etk_n, "matrix dimension");
    cmd_etk->add_option("--p", etk_p, "modulus");
    cmd_etk->add_option("--p-list", etk_plist, "comma-separated moduli (emits one report per p)");
    cmd_etk->add_option("--H", etk_H, "truncation H >= 1 (default: floor(p^(1/(2(k+1)))))");
    cmd_etk->add_option("--boxes", etk_boxes_path, "box family JSON; errors checked against the bound");
    cmd_etk->add_option("--preset-boxes", etk_preset, "use N preset boxes instead of a file");
    cmd_etk->add_option("--aux-matrix", etk_aux_path, "C matrix file (gt)");
    cmd_etk->add_option("--h-cap", etk_h_cap, "max nonzero h vectors (default 500000)");
    cmd_etk->add_option("--mem-cap-mb", etk_mem_mb, "memory budget for bank/table (default 1024)");
    cmd_etk->add_flag("--emit-magnitudes", etk_magnitudes, "include per-h magnitudes in the report");
    cmd_etk->add_option("--report", etk_report, "also write the JSON report here");
    cmd_etk->add_option("--plot-data", etk_plot, "write two-column (p, bound) data here");
    add_common(cmd_etk, etk_opts);

    // ---- verify ---------------------------------------------------------
    auto* cmd_verify = app.add_subcommand("verify", "named verification experiments");
    cmd_verify->require_subcommand(1);

    auto* cmd_vth = cmd_verify->add_subcommand("theorem", "per-modulus decay of |count/N - area|");
    std::string vth_embedding = "g", vth_group, vth_region_path, vth_aux_path, vth_plist,
                vth_report, vth_plot;
    int vth_n = 2;
    std::uint32_t vth_H = 0;
    CommonOpts vth_opts;
    cmd_vth->add_option("--embedding", vth_embedding, "g|h|s|gt|f")->required();
    cmd_vth->add_option("--group", vth_group, "gl|sl (default: by embedding)");
    cmd_vth->add_option("--n", vth_n, "matrix dimension");
    cmd_vth->add_option("--p-list", vth_plist, "comma-separated moduli")->required();
    cmd_vth->add_option("--region", vth_region_path, "region JSON file")->required();
    cmd_vth->add_option("--aux-matrix", vth_aux_path, "C matrix file (gt)");
    cmd_vth->add_option("--H", vth_H, "ETK truncation override");
    cmd_vth->add_option("--report", vth_report, "also write the JSON report here");
    cmd_vth->add_option("--plot-data", vth_plot, "write (p, error) data here");
    add_common(cmd_vth, vth_opts);

    auto* cmd_vsl2 = cmd_verify->add_subcommand("sl2", "determinant-one obstruction in dimension 2");
    std::string vsl2_plist = "3,5,7,11,13", vsl2_h = "1,0,0,0,0,0,0,-1", vsl2_report, vsl2_plot;
    CommonOpts vsl2_opts;
    cmd_vsl2->add_option("--p-list", vsl2_plist, "comma-separated primes");
    cmd_vsl2->add_option("--h-vector", vsl2_h, "8 comma-separated integers");
    cmd_vsl2->add_option("--report", vsl2_report, "also write the JSON report here");
    cmd_vsl2->add_option("--plot-data", vsl2_plot, "write (p, normalized_re) data here");
    add_common(cmd_vsl2, vsl2_opts);

    auto* cmd_vlem = cmd_verify->add_subcommand("lemma", "normalized character-sum magnitude suites");
    std::string vlem_suite, vlem_plist, vlem_report, vlem_plot;
    int vlem_n = 2, vlem_samples = 50;
    std::uint64_t vlem_seed = matsum::kDefaultSeed;
    CommonOpts vlem_opts;
    cmd_vlem->add_option("--suite", vlem_suite, "L1|L2|L3|L4|S4|R2")->required();
    cmd_vlem->add_option("--n", vlem_n, "matrix dimension");
    cmd_vlem->add_option("--p-list", vlem_plist, "comma-separated primes")->required();
    cmd_vlem->add_option("--samples", vlem_samples, "seeded samples per prime (default 50)");
    cmd_vlem->add_option("--seed", vlem_seed, "rng seed");
    cmd_vlem->add_option("--report", vlem_report, "also write the JSON report here");
    cmd_vlem->add_option("--plot-data", vlem_plot, "write (p, max_ratio) data here");
    add_common(cmd_vlem, vlem_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (cmd_order->parsed()) {
        std::cout << matsum::group_order(matsum::group_from_tag(order_group), order_n, order_p)
                  << "\n";
        return 0;
    }

    if (cmd_enum->parsed()) {
        std::cout << matsum::streamed_order(matsum::group_from_tag(enum_group), enum_n, enum_p,
                                            enum_opts.threads, enum_opts.force_scale)
                  << "\n";
        return 0;
    }

    if (cmd_embed->parsed()) {
        matsum::Embedding e = matsum::embedding_from_tag(embed_tag_str);
        matsum::UnitPoint pt;
        if (e == matsum::Embedding::UnitWithInverse) {
            if (embed_modulus == 0)
                throw matsum::ConfigError("embedding f needs --modulus and --x");
            pt = matsum::embed_unit_with_inverse(embed_x, embed_modulus);
        } else {
            if (embed_matrix_path.empty())
                throw matsum::ConfigError("embedding " + embed_tag_str + " needs --matrix FILE");
            matsum::FpMatrix a = matsum::load_matrix(embed_matrix_path);
            if (e == matsum::Embedding::HyperbolaPair) {
                if (embed_aux_path.empty())
                    throw matsum::ConfigError("embedding gt needs --aux-matrix FILE");
                matsum::FpMatrix c = matsum::load_matrix(embed_aux_path);
                pt = matsum::embed_hyperbola_pair(a, c);
            } else {
                pt = matsum::embed_point(e, a);
            }
        }
        std::cout << matsum::point_to_json(pt).dump(2) << "\n";
        return 0;
    }

    if (cmd_count->parsed()) {
        matsum::Embedding e = matsum::embedding_from_tag(count_embedding);
        matsum::RegionUnion region = matsum::load_region(count_region_path);
        matsum::PointFamily fam = [&] {
            if (e == matsum::Embedding::UnitWithInverse) {
                if (count_modulus == 0) throw matsum::ConfigError("embedding f needs --modulus");
                return matsum::unit_family(count_modulus);
            }
            if (count_p == 0) throw matsum::ConfigError("need --p");
            matsum::GroupKind kind = count_group.empty() ? matsum::embedding_default_group(e)
                                                         : matsum::group_from_tag(count_group);
            std::optional<matsum::FpMatrix> aux;
            if (!count_aux_path.empty()) aux = matsum::load_matrix(count_aux_path);
            return matsum::matrix_family(e, kind, count_n, count_p, std::move(aux));
        }();
        const std::uint64_t count =
            matsum::count_image(fam, region, {count_opts.threads, count_opts.force_scale});
        const std::uint64_t n_members = fam.size();
        matsum::Rat fraction(static_cast<std::int64_t>(count), static_cast<std::int64_t>(n_members));
        matsum::Rat area = region.area();
        matsum::Rat error = (fraction - area).abs();
        Json out{{"schema_version", matsum::kSchemaVersion},
                 {"embedding", count_embedding},
                 {"group", e == matsum::Embedding::UnitWithInverse
                               ? Json(nullptr)
                               : Json(matsum::group_tag(fam.kind))},
                 {"modulus", fam.modulus},
                 {"k", fam.dim()},
                 {"N", n_members},
                 {"count", count},
                 {"fraction", matsum::rat_to_json(fraction)},
                 {"area", matsum::rat_to_json(area)},
                 {"error", matsum::rat_to_json(error)},
                 {"error_value", error.to_double()}};
        emit(out, count_out);
        return 0;
    }

    if (cmd_charsum->parsed()) {
        matsum::SumOptions sum_opt{cs_opts.threads, cs_opts.force_scale};
        auto validate_np = [&](const matsum::FpMatrix& u) {
            if (cs_n != 0 && cs_n != u.n())
                throw matsum::ConfigError("--n disagrees with the U matrix file");
            if (cs_p != 0 && cs_type != "hyper" && cs_p != u.modulus())
                throw matsum::ConfigError("--p disagrees with the U matrix file");
        };
        Json out;
        if (cs_type == "hyper") {
            if (cs_a.empty() || cs_p == 0) throw matsum::ConfigError("hyper needs --a and --p");
            std::vector<matsum::Residue> coeffs;
            for (std::int64_t v : parse_i64_list(cs_a)) {
                std::int64_t r = v % static_cast<std::int64_t>(cs_p);
                if (r < 0) r += cs_p;
                coeffs.emplace_back(static_cast<std::uint64_t>(r), cs_p);
            }
            matsum::FreqVector freq = matsum::hyper_kloosterman_freq(coeffs, sum_opt);
            const double exponent = (double(coeffs.size()) - 1.0) / 2.0;
            out = charsum_report("hyper", "units", freq, exponent);
        } else if (cs_type == "s") {
            if (cs_u_path.empty()) throw matsum::ConfigError("s needs --u FILE");
            matsum::FpMatrix u = matsum::load_matrix(cs_u_path);
            validate_np(u);
            matsum::GroupKind kind = matsum::group_from_tag(cs_group);
            matsum::FreqVector freq = matsum::s_freq(kind, u, sum_opt);
            out = charsum_report("s", cs_group, freq, charsum_exponent("s", kind, u.n()));
        } else if (cs_type == "kgl") {
            if (cs_u_path.empty() || cs_v_path.empty())
                throw matsum::ConfigError("kgl needs --u and --v");
            matsum::FpMatrix u = matsum::load_matrix(cs_u_path);
            validate_np(u);
            matsum::FpMatrix v = matsum::load_matrix(cs_v_path);
            matsum::FpMatrix m = cs_m_path.empty()
                                     ? matsum::FpMatrix::identity(u.n(), u.modulus())
                                     : matsum::load_matrix(cs_m_path);
            matsum::FreqVector freq = matsum::k_gl(u, v, m, sum_opt);
            out = charsum_report("kgl", "gl", freq,
                                 charsum_exponent("kgl", matsum::GroupKind::GeneralLinear, u.n()));
        } else if (cs_type == "ksl") {
            if (cs_u_path.empty() || cs_v_path.empty())
                throw matsum::ConfigError("ksl needs --u and --v");
            matsum::FpMatrix u = matsum::load_matrix(cs_u_path);
            validate_np(u);
            matsum::FpMatrix v = matsum::load_matrix(cs_v_path);
            matsum::FreqVector freq = matsum::k_sl(u, v, sum_opt);
            out = charsum_report("ksl", "sl", freq,
                                 charsum_exponent("ksl", matsum::GroupKind::SpecialLinear, u.n()));
        } else {
            throw matsum::ConfigError("charsum type must be s|kgl|ksl|hyper");
        }
        emit(out, cs_out);
        return 0;
    }

    if (cmd_etk->parsed()) {
        matsum::Embedding e = matsum::embedding_from_tag(etk_embedding);
        std::vector<std::uint32_t> moduli;
        if (!etk_plist.empty())
            moduli = parse_u32_list(etk_plist);
        else if (etk_p != 0)
            moduli.push_back(etk_p);
        else
            throw matsum::ConfigError("etk needs --p or --p-list");

        if (!etk_boxes_path.empty() && etk_preset > 0)
            throw matsum::ConfigError("--boxes and --preset-boxes are mutually exclusive");
        std::vector<matsum::Box> boxes;
        int boxes_k = 0;
        if (!etk_boxes_path.empty()) boxes = matsum::load_boxes(etk_boxes_path, &boxes_k);

        Json reports = Json::array();
        std::ostringstream plot;
        plot << "# p etk_bound\n";
        bool all_ok = true;
        for (std::uint32_t p : moduli) {
            matsum::PointFamily fam = [&] {
                if (e == matsum::Embedding::UnitWithInverse) return matsum::unit_family(p);
                matsum::GroupKind kind = etk_group.empty() ? matsum::embedding_default_group(e)
                                                           : matsum::group_from_tag(etk_group);
                std::optional<matsum::FpMatrix> aux;
                if (!etk_aux_path.empty()) aux = matsum::load_matrix(etk_aux_path);
                return matsum::matrix_family(e, kind, etk_n, p, std::move(aux));
            }();
            const int k = fam.dim();
            if (!boxes.empty() && boxes_k != k)
                throw matsum::DimensionMismatch("box family dimension does not match the embedding");
            if (etk_preset > 0) boxes = matsum::preset_boxes(k, etk_preset);

            matsum::EtkOptions eo;
            eo.H = etk_H ? etk_H : matsum::default_etk_H(p, k);
            eo.h_cap = etk_h_cap;
            eo.mem_cap_bytes = etk_mem_mb * (1ull << 20);
            eo.threads = etk_opts.threads;
            eo.override_scale = etk_opts.force_scale;

            auto t0 = std::chrono::steady_clock::now();
            matsum::EtkReport etk = matsum::etk_bound_over_family(fam, eo);
            Json rec{{"p", p},
                     {"k", etk.k},
                     {"N", etk.N},
                     {"H", etk.H},
                     {"h_count", etk.h_count},
                     {"tail_term", etk.tail_term},
                     {"series_term", etk.series_term},
                     {"bound", etk.bound}};
            if (etk_magnitudes) rec["magnitudes"] = etk.magnitudes;
            if (!boxes.empty()) {
                auto errors = matsum::empirical_box_errors(
                    fam, boxes, {etk_opts.threads, etk_opts.force_scale});
                Json jboxes = Json::array();
                bool dominated_all = true;
                for (std::size_t b = 0; b < errors.size(); ++b) {
                    const bool dominated = errors[b].value <= etk.bound + 1e-9;
                    dominated_all = dominated_all && dominated;
                    jboxes.push_back(Json{{"box", b},
                                          {"count", errors[b].count},
                                          {"area", matsum::rat_to_json(errors[b].area)},
                                          {"error", matsum::rat_to_json(errors[b].error)},
                                          {"error_value", errors[b].value},
                                          {"dominated", dominated}});
                }
                rec["boxes"] = std::move(jboxes);
                rec["all_dominated"] = dominated_all;
                all_ok = all_ok && dominated_all;
            }
            rec["wall_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count();
            reports.push_back(std::move(rec));
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", etk.bound);
            plot << p << " " << buf << "\n";
        }
        Json out{{"schema_version", matsum::kSchemaVersion},
                 {"name", "etk"},
                 {"embedding", etk_embedding},
                 {"reports", std::move(reports)}};
        emit(out, etk_report);
        if (!etk_plot.empty()) write_text_file(etk_plot, plot.str());
        return all_ok ? 0 : 1;
    }

    if (cmd_vth->parsed()) {
        matsum::Embedding e = matsum::embedding_from_tag(vth_embedding);
        matsum::GroupKind kind = vth_group.empty() ? matsum::embedding_default_group(e)
                                                   : matsum::group_from_tag(vth_group);
        matsum::RegionUnion region = matsum::load_region(vth_region_path);
        std::optional<matsum::FpMatrix> aux;
        if (!vth_aux_path.empty()) aux = matsum::load_matrix(vth_aux_path);
        matsum::ExperimentResult res = matsum::theorem_scan(
            e, kind, vth_n, parse_u32_list(vth_plist), region, std::move(aux),
            vth_H ? std::optional<std::uint32_t>(vth_H) : std::nullopt,
            {vth_opts.threads, vth_opts.force_scale});
        emit(res.report, vth_report);
        if (!vth_plot.empty())
            write_text_file(vth_plot, matsum::plot_data_from_report(res.report, "error_value"));
        return res.passed ? 0 : 1;
    }

    if (cmd_vsl2->parsed()) {
        matsum::HVector h{parse_i64_list(vsl2_h)};
        matsum::ExperimentResult res = matsum::sl2_counterexample(
            parse_u32_list(vsl2_plist), h, {vsl2_opts.threads, vsl2_opts.force_scale});
        emit(res.report, vsl2_report);
        if (!vsl2_plot.empty())
            write_text_file(vsl2_plot, matsum::plot_data_from_report(res.report, "normalized_re"));
        return res.passed ? 0 : 1;
    }

    if (cmd_vlem->parsed()) {
        matsum::ExperimentResult res = matsum::verify_lemma_bounds(
            matsum::lemma_from_tag(vlem_suite), vlem_n, parse_u32_list(vlem_plist), vlem_samples,
            vlem_seed, {vlem_opts.threads, vlem_opts.force_scale});
        emit(res.report, vlem_report);
        if (!vlem_plot.empty())
            write_text_file(vlem_plot, matsum::plot_data_from_report(res.report, "max_ratio"));
        return res.passed ? 0 : 1;
    }

    throw matsum::ConfigError("no subcommand selected");
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const matsum::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
