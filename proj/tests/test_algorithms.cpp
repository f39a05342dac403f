#include <cmath>
#include <vector>

#include <doctest.h>

#include "svip/algorithms.hpp"
#include "svip/deployment.hpp"
#include "svip/stats.hpp"

namespace alg = svip::algorithms;
using alg::Algorithm;
using alg::InterferencePolicy;
using svip::deployment::Deployment1D;
using svip::deployment::GridDeployment;

namespace {

Deployment1D make_1d(std::vector<double> xs) {
    Deployment1D d;
    d.rate = 1.0;
    d.positions = std::move(xs);
    return d;
}

GridDeployment make_grid(std::vector<std::vector<double>> axes) {
    GridDeployment g;
    g.d = static_cast<int>(axes.size());
    g.axis_rate = 1.0;
    g.axes = std::move(axes);
    return g;
}

} // namespace

TEST_CASE("fixed spacing hand trace") {
    const auto rep = alg::mv1(make_1d({0.0, 0.5}), 0.1, 1.0);
    CHECK(rep.final_axes[0] == std::vector<double>{0.0, 0.1});
    CHECK(rep.total_cost == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(rep.moved_count == 1);
    CHECK(rep.axis_displacements[0][1] == doctest::Approx(-0.4).epsilon(1e-15));
    CHECK(rep.s == 0.1);
    CHECK(rep.v == 0.1);
}

TEST_CASE("gap repair hand traces") {
    SUBCASE("two short gaps both get pushed right") {
        const auto rep = alg::i1(make_1d({0.0, 0.1, 0.2}), {0.3, 0.5, 1.0});
        CHECK(rep.final_axes[0][0] == 0.0);
        CHECK(rep.final_axes[0][1] == doctest::Approx(0.3).epsilon(1e-15));
        CHECK(rep.final_axes[0][2] == doctest::Approx(0.6).epsilon(1e-15));
        CHECK(rep.total_cost == doctest::Approx(0.6).epsilon(1e-12));
        CHECK(rep.moved_count == 2);
    }
    SUBCASE("a long gap is capped at v") {
        const auto rep = alg::i1(make_1d({0.0, 1.0}), {0.3, 0.5, 1.0});
        CHECK(rep.final_axes[0][1] == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(rep.total_cost == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(rep.moved_count == 1);
    }
    SUBCASE("in-band gaps are left alone") {
        const auto rep = alg::i1(make_1d({0.0, 0.4, 0.75}), {0.3, 0.5, 2.0});
        CHECK(rep.total_cost == 0.0);
        CHECK(rep.moved_count == 0);
        CHECK(rep.final_axes[0] == std::vector<double>{0.0, 0.4, 0.75});
    }
    SUBCASE("repair chains against the updated predecessor") {
        // Second sensor moves to 0.3.  Measured against the original 0.05 the
        // third gap 0.7 would be clamped at v; against the updated 0.3 it is
        // 0.45 and sits inside the band, so the third sensor stays put.
        const auto rep = alg::i1(make_1d({0.0, 0.05, 0.75}), {0.3, 0.5, 1.0});
        CHECK(rep.final_axes[0][1] == doctest::Approx(0.3).epsilon(1e-15));
        CHECK(rep.final_axes[0][2] == 0.75);
        CHECK(rep.moved_count == 1);
    }
}

TEST_CASE("grid hand traces carry the hyperplane weight") {
    SUBCASE("fixed spacing on a 2x2 grid") {
        const auto rep = alg::mvd(make_grid({{0.0, 0.5}, {0.0, 0.3}}), 0.1, 1.0);
        CHECK(rep.hyperplane_weight == 2);
        CHECK(rep.n == 4);
        CHECK(rep.total_cost == doctest::Approx(1.2).epsilon(1e-12));
        CHECK(rep.moved_count == 4);
        CHECK(rep.final_axes[0][1] == doctest::Approx(0.1).epsilon(1e-15));
        CHECK(rep.final_axes[1][1] == doctest::Approx(0.1).epsilon(1e-15));
    }
    SUBCASE("gap repair on a 2x2 grid") {
        const auto rep =
            alg::id(make_grid({{0.0, 0.05}, {0.0, 0.8}}), {0.1, 0.5, 1.0});
        CHECK(rep.total_cost == doctest::Approx(0.7).epsilon(1e-12));
        CHECK(rep.moved_count == 4);
    }
    SUBCASE("weight grows as m^(d-1)") {
        const auto rep = alg::mvd(
            make_grid({{0.0, 0.1, 0.2}, {0.0, 0.1, 0.2}, {0.0, 0.1, 0.2}}), 0.1, 2.0);
        CHECK(rep.hyperplane_weight == 9);
        CHECK(rep.n == 27);
        CHECK(rep.d == 3);
    }
}

TEST_CASE("binary-exact spacing produces exactly zero cost") {
    const auto rep = alg::mv1(make_1d({0.25, 0.5, 0.75}), 0.25, 2.0);
    CHECK(rep.total_cost == 0.0);
    CHECK(rep.moved_count == 0);
    const auto rep2 = alg::i1(make_1d({0.25, 0.5, 0.75}), {0.25, 0.25, 2.0});
    CHECK(rep2.total_cost == 0.0);
}

TEST_CASE("layout verification finds the first bad gap and honors the slack") {
    const std::vector<double> bad{0.0, 0.2, 0.35};
    const auto check = alg::verify_ip(bad, 0.25, 0.5);
    CHECK_FALSE(check.ok);
    CHECK(check.index == 1);
    CHECK(check.gap == doctest::Approx(0.2));

    const std::vector<double> wide{0.0, 0.6};
    CHECK_FALSE(alg::verify_ip(wide, 0.25, 0.5).ok);

    // A gap a hair inside the slack band still verifies.
    const std::vector<double> edge{0.0, 0.25 - 1e-13};
    CHECK(alg::verify_ip(edge, 0.25, 0.5).ok);

    const auto rep = alg::i1(make_1d({0.0, 0.1, 0.9}), {0.3, 0.5, 1.0});
    CHECK(alg::verify_ip(rep, rep.s, rep.v).ok);
}

TEST_CASE("per-move costs sum back to the total") {
    const auto d = svip::deployment::sample_1d(150, 150.0, {2024, 5});
    const auto rep = alg::i1(d, {0.8 / 150.0, 1.3 / 150.0, 1.7});
    const auto costs = rep.per_move_costs();
    CHECK(costs.size() == 150);
    const double sum = svip::stats::pairwise_sum(costs);
    CHECK(std::fabs(sum - rep.total_cost) < 1e-12 * std::max(1.0, std::fabs(rep.total_cost)));

    const auto g = svip::deployment::sample_grid(81, 2, {2024, 6});
    const auto grep = alg::id(g, {0.8 / 9.0, 1.3 / 9.0, 2.0});
    const auto gcosts = grep.per_move_costs();
    CHECK(gcosts.size() == 2 * 9 * 9); // d * m * weight
    const double gsum = svip::stats::pairwise_sum(gcosts);
    CHECK(std::fabs(gsum - grep.total_cost) < 1e-12 * std::max(1.0, std::fabs(grep.total_cost)));
}

TEST_CASE("gap repair at s = v reproduces fixed spacing bit for bit") {
    const auto d = svip::deployment::sample_1d(200, 200.0, {77, 0});
    const double s = 1.05 / 200.0;
    const auto fixed = alg::mv1(d, s, 2.0);
    const auto repair = alg::i1(d, {s, s, 2.0});
    REQUIRE(fixed.final_axes[0].size() == repair.final_axes[0].size());
    for (std::size_t i = 0; i < fixed.final_axes[0].size(); ++i)
        CHECK(fixed.final_axes[0][i] == repair.final_axes[0][i]); // exact
    CHECK(fixed.total_cost == repair.total_cost);
    CHECK(fixed.moved_count == repair.moved_count);
}

TEST_CASE("costs are translation invariant") {
    const auto d = svip::deployment::sample_1d(64, 64.0, {3, 9});
    auto shifted = d;
    for (double& x : shifted.positions) x += 5.0;
    const double s = 1.0 / 64.0;
    CHECK(alg::mv1(shifted, s, 2.0).total_cost ==
          doctest::Approx(alg::mv1(d, s, 2.0).total_cost).epsilon(1e-9));
    const InterferencePolicy p{0.9 / 64.0, 1.2 / 64.0, 1.5};
    CHECK(alg::i1(shifted, p).total_cost == doctest::Approx(alg::i1(d, p).total_cost).epsilon(1e-9));
}

TEST_CASE("degenerate deployments cost nothing") {
    const auto one = alg::mv1(make_1d({0.7}), 0.1, 2.0);
    CHECK(one.total_cost == 0.0);
    CHECK(one.moved_count == 0);
    const auto none = alg::i1(make_1d({}), {0.1, 0.2, 1.0});
    CHECK(none.total_cost == 0.0);
    CHECK(none.n == 0);
}

TEST_CASE("policy validation and algorithm names") {
    CHECK_THROWS_AS(InterferencePolicy({0.0, 0.1, 1.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(InterferencePolicy({0.2, 0.1, 1.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(InterferencePolicy({0.1, 0.2, 0.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(alg::mv1(make_1d({0.0, 1.0}), -0.1, 1.0), std::invalid_argument);

    for (auto a : {Algorithm::MV1, Algorithm::I1, Algorithm::MVD, Algorithm::ID})
        CHECK(alg::algorithm_from_name(alg::algorithm_name(a)) == a);
    CHECK_THROWS_AS(alg::algorithm_from_name("mv2"), std::invalid_argument);
}
