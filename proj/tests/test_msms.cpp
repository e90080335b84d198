// Copyright 2026 The Egosum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "egosum/msms.hpp"
#include "egosum/rng.hpp"
#include "helpers.hpp"

using namespace egosum;
using egotest::keep_all;
using egotest::make_event;
using egotest::make_frame;

TEST_SUITE("msms") {

TEST_CASE("validation subset of the summary with exact matches scores 1") {
    SimilarityKernel k;
    k.sigma = 0.8;
    std::vector<FrameRecord> summary = {
        make_frame("y1", "e", 1, {0.0, 0.0}),
        make_frame("y2", "e", 2, {3.0, 1.0}),
        make_frame("y3", "e", 3, {-2.0, 4.0}),
    };
    std::vector<FrameRecord> validation = {summary[2], summary[0]};
    CHECK(sms(validation, summary, k) == 1.0);
}

TEST_CASE("single validation frame: SMS is its best similarity") {
    SimilarityKernel k;
    k.sigma = 1.0;
    // distances chosen so the best similarity is exactly 0.6
    const double d_best = std::sqrt(2.0 * std::log(1.0 / 0.6));
    const double d_far = std::sqrt(2.0 * std::log(1.0 / 0.3));
    std::vector<FrameRecord> validation = {make_frame("v", "e", 1, {0.0})};
    std::vector<FrameRecord> summary = {make_frame("y1", "e", 2, {d_far}),
                                        make_frame("y2", "e", 3, {-d_best})};
    CHECK(sms(validation, summary, k) == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("P=3, T=2 equals the brute-force similarity-matrix mean") {
    Rng rng(14);
    SimilarityKernel k;
    k.sigma = 1.3;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<FrameRecord> validation, summary;
        for (int i = 0; i < 3; ++i)
            validation.push_back(
                make_frame("v" + std::to_string(i), "e", i, {rng.uniform(-2, 2), rng.uniform(-2, 2)}));
        for (int i = 0; i < 2; ++i)
            summary.push_back(
                make_frame("y" + std::to_string(i), "e", i, {rng.uniform(-2, 2), rng.uniform(-2, 2)}));
        CHECK(sms(validation, summary, k) ==
              doctest::Approx(egotest::oracle_sms(validation, summary, k.sigma)).epsilon(1e-12));
    }
}

TEST_CASE("SMS ignores the order of validation and summary frames") {
    Rng rng(15);
    SimilarityKernel k;
    k.sigma = 1.0;
    std::vector<FrameRecord> validation, summary;
    for (int i = 0; i < 4; ++i)
        validation.push_back(make_frame("v" + std::to_string(i), "e", i, {rng.uniform(-2, 2)}));
    for (int i = 0; i < 3; ++i)
        summary.push_back(make_frame("y" + std::to_string(i), "e", i, {rng.uniform(-2, 2)}));
    const double base = sms(validation, summary, k);
    std::reverse(validation.begin(), validation.end());
    std::reverse(summary.begin(), summary.end());
    CHECK(sms(validation, summary, k) == base);
}

TEST_CASE("empty inputs are rejected") {
    SimilarityKernel k;
    std::vector<FrameRecord> frames = {make_frame("a", "e", 1, {0.0})};
    CHECK_THROWS_AS(sms({}, frames, k), std::invalid_argument);
    CHECK_THROWS_AS(sms(frames, {}, k), std::invalid_argument);
}

TEST_CASE("single-frame curve has one point at fraction 1") {
    const FilteredEvent fe = keep_all(make_event("e", {make_frame("a", "e", 1, {0.0})}));
    SimilarityKernel k;
    std::vector<FrameRecord> validation = {fe.kept[0]};
    const SmsCurve c = sms_curve(fe, {"a"}, validation, k);
    REQUIRE(c.points.size() == 1);
    CHECK(c.points[0].fraction == 1.0);
    CHECK(c.points[0].value == 1.0);
}

TEST_CASE("curve points match independent SMS calls on each prefix") {
    Rng rng(16);
    const Event ev = egotest::random_event(rng, "e", 8, 3);
    const FilteredEvent fe = keep_all(ev);
    const SimilarityKernel k = fit_kernel(fe);

    std::vector<std::string> ranking;
    for (const auto& f : fe.kept) ranking.push_back(f.frame_id);
    std::swap(ranking[0], ranking[5]);
    std::swap(ranking[2], ranking[7]);

    std::vector<FrameRecord> validation = {fe.kept[1], fe.kept[4], fe.kept[6]};
    const SmsCurve c = sms_curve(fe, ranking, validation, k);
    REQUIRE(c.points.size() == 8);

    std::vector<FrameRecord> prefix;
    for (std::size_t t = 0; t < ranking.size(); ++t) {
        for (const auto& f : fe.kept)
            if (f.frame_id == ranking[t]) prefix.push_back(f);
        CHECK(c.points[t].value == doctest::Approx(sms(validation, prefix, k)).epsilon(1e-12));
        CHECK(c.points[t].fraction == doctest::Approx((t + 1) / 8.0));
        if (t > 0) CHECK(c.points[t].value >= c.points[t - 1].value);
    }
    // validation is a subset of the kept frames: the full curve ends at 1
    CHECK(c.points.back().value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("curve rejects rankings that do not cover the kept frames") {
    const FilteredEvent fe = keep_all(make_event(
        "e", {make_frame("a", "e", 1, {0.0}), make_frame("b", "e", 2, {1.0})}));
    SimilarityKernel k;
    std::vector<FrameRecord> validation = {fe.kept[0]};
    CHECK_THROWS_AS(sms_curve(fe, {"a"}, validation, k), std::invalid_argument);
    CHECK_THROWS_AS(sms_curve(fe, {"a", "a"}, validation, k), std::invalid_argument);
    CHECK_THROWS_AS(sms_curve(fe, {"a", "zz"}, validation, k), std::invalid_argument);
}

TEST_CASE("interpolation identity, midpoint, and constant extrapolation") {
    SmsCurve c;
    c.points = {{0.5, 0.4}, {1.0, 0.8}};
    CHECK(interpolate_curve(c, {0.5, 1.0}) == std::vector<double>{0.4, 0.8});
    CHECK(interpolate_curve(c, {0.75})[0] == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(interpolate_curve(c, {0.1})[0] == 0.4);   // left of the first point
    CHECK(interpolate_curve(c, {1.5})[0] == 0.8);   // right of the last point
}

TEST_CASE("msms of one curve is its own interpolation") {
    SmsCurve c;
    c.event_id = "e";
    c.points = {{0.25, 0.2}, {0.5, 0.5}, {1.0, 0.9}};
    const MsmsCurve m = msms({c}, 11);
    const std::vector<double> expect = interpolate_curve(c, msms_grid(11));
    CHECK(m.values == expect);
}

TEST_CASE("averaging: identical curves collapse, constants average, AUC follows") {
    SmsCurve lo, hi;
    lo.points = {{0.5, 0.2}, {1.0, 0.2}};
    hi.points = {{0.25, 0.8}, {1.0, 0.8}};
    const MsmsCurve m = msms({lo, hi}, 101);
    for (double v : m.values) CHECK(v == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m.auc == doctest::Approx(0.5).epsilon(1e-12));

    const MsmsCurve same = msms({lo, lo}, 101);
    const MsmsCurve one = msms({lo}, 101);
    CHECK(same.values == one.values);
    CHECK(same.auc == one.auc);
}

TEST_CASE("msms rejects an empty curve list") {
    CHECK_THROWS_AS(msms({}, 101), std::invalid_argument);
}

TEST_CASE("auc of flat and identity curves") {
    const std::vector<double> grid = msms_grid(101);
    CHECK(auc(grid, std::vector<double>(grid.size(), 1.0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(auc(grid, grid) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("auc rejects degenerate inputs") {
    CHECK_THROWS_AS(auc({0.5}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(auc({0.5, 0.5}, {1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(auc({0.5, 0.2}, {1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(auc({0.1, 0.2}, {1.0}), std::invalid_argument);
}

TEST_CASE("trapezoid equals a 10x-refined quadrature on random curves") {
    Rng rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = static_cast<int>(rng.uniform_int(2, 30));
        std::vector<double> fractions, values;
        double f = 0.0, v = rng.uniform(0.0, 0.2);
        for (int i = 0; i < n; ++i) {
            f += rng.uniform(0.01, 1.0 / n);
            v = std::min(1.0, v + rng.uniform(0.0, 0.1));  // non-decreasing
            fractions.push_back(f);
            values.push_back(v);
        }
        const double fine = egotest::oracle_refined_auc(fractions, values, 10);
        CHECK(auc(fractions, values) == doctest::Approx(fine).epsilon(1e-9));
    }
}

TEST_CASE("weight estimation from AUCs") {
    const FusionWeights equal = estimate_weights({0.4, 0.4, 0.4});
    for (double w : equal.values) CHECK(w == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    const FusionWeights preserved = estimate_weights({0.5, 0.3, 0.2});
    CHECK(preserved.values[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(preserved.values[1] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(preserved.values[2] == doctest::Approx(0.2).epsilon(1e-12));

    const FusionWeights scaled = estimate_weights({0.9, 0.6, 0.3});
    CHECK(scaled.values[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(scaled.values[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(scaled.values[2] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));

    CHECK_THROWS_AS(estimate_weights({0.0, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(estimate_weights({-0.1, 0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("weights sum to 1 and ignore a common positive scale") {
    Rng rng(20);
    for (int trial = 0; trial < 50; ++trial) {
        std::array<double, 3> aucs{rng.uniform(0.01, 1.0), rng.uniform(0.01, 1.0),
                                   rng.uniform(0.01, 1.0)};
        const double scale = rng.uniform(0.001, 1000.0);
        const FusionWeights a = estimate_weights(aucs);
        const FusionWeights b =
            estimate_weights({aucs[0] * scale, aucs[1] * scale, aucs[2] * scale});
        CHECK(std::abs(a.values[0] + a.values[1] + a.values[2] - 1.0) <= 1e-9);
        for (int i = 0; i < 3; ++i)
            CHECK(a.values[static_cast<std::size_t>(i)] ==
                  doctest::Approx(b.values[static_cast<std::size_t>(i)]).epsilon(1e-12));
        CHECK_NOTHROW(a.check());
    }
}

TEST_CASE("curves CSV layout") {
    const std::string csv = curves_csv({{"e1:fused", {0.5, 1.0}, {0.25, 1.0}}});
    CHECK(csv.rfind("id,fraction,value\n", 0) == 0);
    CHECK(csv.find("e1:fused,0.5,0.25\n") != std::string::npos);
    CHECK(csv.find("e1:fused,1,1\n") != std::string::npos);
}

}  // TEST_SUITE
