#include <doctest.h>

#include "matsum/json_io.hpp"
#include "matsum/region.hpp"
#include "matsum/rng.hpp"
#include "oracles.hpp"

using namespace matsum;

namespace {

Box cube_box(int k, Rat lo, Rat hi) {
    return make_box(std::vector<Rat>(k, lo), std::vector<Rat>(k, hi));
}

} // namespace

TEST_CASE("rational arithmetic is exact and reduced") {
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(-2, -4) == Rat(1, 2));
    CHECK(Rat(2, -4) == Rat(-1, 2));
    CHECK((Rat(1, 3) + Rat(1, 6)) == Rat(1, 2));
    CHECK((Rat(1, 2) - Rat(1, 3)) == Rat(1, 6));
    CHECK((Rat(2, 3) * Rat(3, 4)) == Rat(1, 2));
    CHECK(Rat(1, 3) < Rat(1, 2));
    CHECK(Rat(-1, 2).abs() == Rat(1, 2));
    CHECK(Rat(1, 2).to_double() == 0.5);
    CHECK(Rat(29, 768).str() == "29/768");
    CHECK_THROWS_AS(Rat(1, 0), OverflowError);
    CHECK_THROWS_AS(Rat(INT64_MAX, 1) + Rat(INT64_MAX, 1), OverflowError);
}

TEST_CASE("areas") {
    CHECK(full_cube(8).area() == Rat(1));
    CHECK(RegionUnion{}.area() == Rat(0));
    CHECK(cube_box(8, Rat(0), Rat(1, 2)).area() == Rat(1, 256));
    CHECK(cube_box(3, Rat(1, 4), Rat(3, 4)).area() == Rat(1, 8));
}

TEST_CASE("box membership is exact and half-open") {
    UnitPoint pt;
    pt.k = 2;
    pt.modulus = 5;
    pt.numerators = {2, 3}; // (2/5, 3/5)
    Box b = make_box({Rat(0), Rat(1, 2)}, {Rat(1, 2), Rat(1)});
    CHECK(b.contains(pt));
    CHECK(full_cube(2).contains(pt));

    // Upper endpoints are excluded.
    UnitPoint edge;
    edge.k = 1;
    edge.modulus = 10; // denominators need not be prime for raw points
    edge.numerators = {5}; // exactly 1/2
    Box half = make_box({Rat(0)}, {Rat(1, 2)});
    CHECK_FALSE(half.contains(edge));
    Box upper = make_box({Rat(1, 2)}, {Rat(1)});
    CHECK(upper.contains(edge)); // lower endpoints are included

    CHECK_THROWS_AS(make_box({Rat(1, 2)}, {Rat(1, 4)}), ConfigError);
    CHECK_THROWS_AS(make_box({Rat(0)}, {Rat(3, 2)}), ConfigError);
    UnitPoint wrong;
    wrong.k = 3;
    wrong.modulus = 5;
    wrong.numerators = {0, 0, 0};
    CHECK_THROWS_AS(half.contains(wrong), DimensionMismatch);
}

TEST_CASE("region unions reject overlaps and add areas") {
    Box a = make_box({Rat(0)}, {Rat(1, 2)});
    Box b = make_box({Rat(1, 2)}, {Rat(1)});
    RegionUnion r = make_region(1, {a, b});
    CHECK(r.area() == Rat(1));
    CHECK_THROWS_AS(make_region(1, {a, make_box({Rat(1, 4)}, {Rat(3, 4)})}), ConfigError);
    // Touching half-open boxes do not overlap.
    CHECK_NOTHROW(make_region(1, {a, b}));
    // Degenerate (zero-width) boxes never overlap anything.
    CHECK_NOTHROW(make_region(1, {a, make_box({Rat(1, 4)}, {Rat(1, 4)})}));
}

TEST_CASE("counting the interleaved image of GL_2(F_3) in the half cube") {
    PointFamily fam =
        matrix_family(Embedding::MatrixWithInverse, GroupKind::GeneralLinear, 2, 3);
    RegionUnion half = make_region(8, {cube_box(8, Rat(0), Rat(1, 2))});
    // Brute-forced over all 81 matrices: exactly 2 members land inside.
    CHECK(count_image(fam, half) == 2);

    // Live oracle for the same number.
    long long expect = 0;
    oracle::all_matrices(2, 3, [&](const oracle::Mat& m) {
        auto inv = oracle::inverse(m, 3);
        if (!inv) return;
        bool in = true;
        for (long long c : oracle::interleave_coords(m, *inv))
            if (!oracle::coord_in(c, 3, 0, 1, 1, 2)) {
                in = false;
                break;
            }
        if (in) ++expect;
    });
    CHECK(expect == 2);

    // Full cube recovers the order; the empty region counts nothing.
    CHECK(count_image(fam, make_region(8, {full_cube(8)})) == 48);
    CHECK(count_image(fam, RegionUnion{8, {}}) == 0);
}

TEST_CASE("counts are additive over disjoint boxes and monotone in the box") {
    PointFamily fam =
        matrix_family(Embedding::MatrixEntries, GroupKind::GeneralLinear, 2, 5);
    Box lo = make_box({Rat(0), Rat(0), Rat(0), Rat(0)}, {Rat(1, 2), Rat(1), Rat(1), Rat(1)});
    Box hi = make_box({Rat(1, 2), Rat(0), Rat(0), Rat(0)}, {Rat(1), Rat(1), Rat(1), Rat(1)});
    std::uint64_t split = count_image(fam, make_region(4, {lo, hi}));
    CHECK(split == count_image(fam, make_region(4, {full_cube(4)})));

    Box smaller = make_box({Rat(0), Rat(0), Rat(0), Rat(0)}, {Rat(1, 4), Rat(1), Rat(1), Rat(1)});
    CHECK(count_image(fam, make_region(4, {smaller})) <=
          count_image(fam, make_region(4, {lo})));
}

TEST_CASE("threshold counting agrees with rational membership") {
    // Dual route: count_in_boxes uses precomputed integer windows; compare
    // against direct Box::contains over every member.
    SplitMix64 rng(0x77);
    PointFamily fam =
        matrix_family(Embedding::MatrixWithInverse, GroupKind::GeneralLinear, 2, 5);
    std::vector<Box> boxes = preset_boxes(8, 20);
    auto counts = count_in_boxes(fam, boxes);
    std::vector<std::uint64_t> direct(boxes.size(), 0);
    family_scan_chunk(fam, 0, fam.base_size(), [&](const std::uint32_t* coords, int k) {
        UnitPoint pt;
        pt.k = k;
        pt.modulus = fam.modulus;
        pt.numerators.assign(coords, coords + k);
        for (std::size_t b = 0; b < boxes.size(); ++b)
            if (boxes[b].contains(pt)) ++direct[b];
    });
    CHECK(counts == direct);
}

TEST_CASE("counting is deterministic across worker counts") {
    PointFamily fam =
        matrix_family(Embedding::MatrixWithInverse, GroupKind::GeneralLinear, 2, 5);
    std::vector<Box> boxes = preset_boxes(8, 10);
    CHECK(count_in_boxes(fam, boxes, {1, false}) == count_in_boxes(fam, boxes, {8, false}));
}

TEST_CASE("preset boxes are deterministic and valid") {
    auto a = preset_boxes(8, 50);
    auto b = preset_boxes(8, 50);
    CHECK(a.size() == 50);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].dim() == 8);
        CHECK(a[i].lo == b[i].lo);
        CHECK(a[i].hi == b[i].hi);
    }
    CHECK(a[0].area() == Rat(1));
}

TEST_CASE("region JSON round-trips") {
    std::vector<Box> boxes = preset_boxes(4, 7);
    Json j = boxes_to_json(4, boxes);
    int k = 0;
    std::vector<Box> back = boxes_from_json(j, &k);
    CHECK(k == 4);
    REQUIRE(back.size() == boxes.size());
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        CHECK(back[i].lo == boxes[i].lo);
        CHECK(back[i].hi == boxes[i].hi);
    }
    // String-encoded rationals are accepted.
    Json with_strings = Json::parse(R"({"k":1,"boxes":[{"lo":[["1","4"]],"hi":[["3","4"]]}]})");
    std::vector<Box> parsed = boxes_from_json(with_strings);
    CHECK(parsed[0].lo[0] == Rat(1, 4));
    CHECK(parsed[0].hi[0] == Rat(3, 4));
}

TEST_CASE("matrix JSON round-trips and validates") {
    FpMatrix m(2, 5);
    m.set(0, 0, 1);
    m.set(0, 1, 4);
    m.set(1, 0, 2);
    m.set(1, 1, 3);
    CHECK(matrix_from_json(matrix_to_json(m)) == m);

    // Entries reduce into canonical residues; negative values are accepted.
    Json j = Json::parse(R"({"n":2,"p":5,"entries":[[-1,6],[0,10]]})");
    FpMatrix parsed = matrix_from_json(j);
    CHECK(parsed.at(0, 0) == 4);
    CHECK(parsed.at(0, 1) == 1);
    CHECK(parsed.at(1, 1) == 0);

    CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"n":2,"p":6,"entries":[[1,0],[0,1]]})")),
                    ConfigError);
    CHECK_THROWS_AS(
        matrix_from_json(Json::parse(R"({"n":2,"p":4294967311,"entries":[[1,0],[0,1]]})")),
        OverflowError); // prime but beyond the scalar cap
    CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"n":2,"p":5,"entries":[[1,0]]})")),
                    ConfigError);
}
