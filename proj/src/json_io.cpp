#include "matsum/json_io.hpp"

#include <fstream>

namespace matsum {

Json matrix_to_json(const FpMatrix& m) {
    Json entries = Json::array();
    for (int i = 0; i < m.n(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.n(); ++j) row.push_back(m.at(i, j));
        entries.push_back(std::move(row));
    }
    return Json{{"n", m.n()}, {"p", m.modulus()}, {"entries", std::move(entries)}};
}

FpMatrix matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("p") || !j.contains("entries"))
        throw ConfigError("matrix JSON needs fields n, p, entries");
    const int n = j.at("n").get<int>();
    const std::uint64_t p = j.at("p").get<std::uint64_t>();
    if (n < 1 || n > kMaxN) throw ConfigError("matrix dimension out of range");
    check_prime_modulus(p);
    FpMatrix m(n, static_cast<std::uint32_t>(p));
    const Json& entries = j.at("entries");
    if (!entries.is_array() || entries.size() != static_cast<std::size_t>(n))
        throw ConfigError("matrix entries must be an n-by-n array");
    for (int i = 0; i < n; ++i) {
        const Json& row = entries.at(i);
        if (!row.is_array() || row.size() != static_cast<std::size_t>(n))
            throw ConfigError("matrix entries must be an n-by-n array");
        for (int c = 0; c < n; ++c) {
            std::int64_t v = row.at(c).get<std::int64_t>();
            std::int64_t r = v % static_cast<std::int64_t>(p);
            if (r < 0) r += static_cast<std::int64_t>(p);
            m.set(i, c, static_cast<std::uint64_t>(r));
        }
    }
    return m;
}

FpMatrix load_matrix(const std::string& path) {
    return matrix_from_json(load_json_file(path));
}

Json point_to_json(const UnitPoint& pt) {
    return Json{{"k", pt.k}, {"p", pt.modulus}, {"numerators", pt.numerators}};
}

Json rat_to_json(const Rat& r) {
    return Json::array({r.num(), r.den()});
}

Rat rat_from_json(const Json& j) {
    auto parse_int = [](const Json& v) -> std::int64_t {
        if (v.is_string()) return std::stoll(v.get<std::string>());
        return v.get<std::int64_t>();
    };
    if (j.is_array() && j.size() == 2) return Rat(parse_int(j.at(0)), parse_int(j.at(1)));
    if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
    throw ConfigError("rational must be [num, den] or an integer");
}

Json boxes_to_json(int k, const std::vector<Box>& boxes) {
    Json arr = Json::array();
    for (const Box& b : boxes) {
        Json lo = Json::array(), hi = Json::array();
        for (int d = 0; d < b.dim(); ++d) {
            lo.push_back(rat_to_json(b.lo[d]));
            hi.push_back(rat_to_json(b.hi[d]));
        }
        arr.push_back(Json{{"lo", std::move(lo)}, {"hi", std::move(hi)}});
    }
    return Json{{"k", k}, {"boxes", std::move(arr)}};
}

std::vector<Box> boxes_from_json(const Json& j, int* k_out) {
    if (!j.is_object() || !j.contains("k") || !j.contains("boxes"))
        throw ConfigError("region JSON needs fields k and boxes");
    const int k = j.at("k").get<int>();
    if (k < 1) throw ConfigError("region dimension must be positive");
    std::vector<Box> boxes;
    for (const Json& jb : j.at("boxes")) {
        if (!jb.contains("lo") || !jb.contains("hi"))
            throw ConfigError("box JSON needs lo and hi arrays");
        const Json& jlo = jb.at("lo");
        const Json& jhi = jb.at("hi");
        if (jlo.size() != static_cast<std::size_t>(k) || jhi.size() != static_cast<std::size_t>(k))
            throw ConfigError("box endpoints must have dimension k");
        std::vector<Rat> lo, hi;
        for (int d = 0; d < k; ++d) {
            lo.push_back(rat_from_json(jlo.at(d)));
            hi.push_back(rat_from_json(jhi.at(d)));
        }
        boxes.push_back(make_box(std::move(lo), std::move(hi)));
    }
    if (k_out) *k_out = k;
    return boxes;
}

RegionUnion load_region(const std::string& path) {
    int k = 0;
    std::vector<Box> boxes = boxes_from_json(load_json_file(path), &k);
    return make_region(k, std::move(boxes));
}

std::vector<Box> load_boxes(const std::string& path, int* k_out) {
    return boxes_from_json(load_json_file(path), k_out);
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write file: " + path);
    out << j.dump(2) << "\n";
}

} // namespace matsum
