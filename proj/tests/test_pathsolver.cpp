#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "excnn/analytics.hpp"
#include "excnn/pathsolver.hpp"

using namespace excnn;

namespace {

GridParams nominal(int rows, int cols) {
    GridParams p;
    p.rows = rows;
    p.cols = cols;
    return p;
}

PathProblem corridor_problem(int len, int from, int to) {
    TemplateImage img = make_fixture(FixtureKind::Corridor, 1, len);
    return PathProblem::from_image(img, {0, from}, {0, to}, nominal(1, len),
                                   ReactionCurve::calibrated_default());
}

}  // namespace

TEST_CASE("start equals target: immediately reached, empty path") {
    PathProblem prob = corridor_problem(10, 4, 4);
    PathSolution sol = solve_path(prob);
    CHECK(sol.outcome == Outcome::Reached);
    CHECK(sol.steps == 0);
    CHECK(sol.path.empty());
    CHECK(sol.total_time_ns == 0.0);
}

TEST_CASE("corridor solve walks the unique path cell by cell") {
    PathProblem prob = corridor_problem(10, 0, 9);
    PathSolution sol = solve_path(prob);
    REQUIRE(sol.outcome == Outcome::Reached);
    CHECK(sol.steps == 9);
    REQUIRE(sol.path.size() == 9);
    for (int k = 0; k < 9; ++k) CHECK(sol.path[k] == Cell{0, k + 1});
}

TEST_CASE("sealed target: no-path in a single iteration") {
    TemplateImage img = make_fixture(FixtureKind::Sealed, 15, 15);
    PathProblem prob = PathProblem::from_image(img, {0, 0}, {7, 7}, nominal(15, 15),
                                               ReactionCurve::calibrated_default());
    PathSolution sol = solve_path(prob);
    CHECK(sol.outcome == Outcome::NoPath);
    CHECK(sol.iterations.empty());
    CHECK(sol.path.empty());
}

TEST_CASE("detect_winner basics") {
    CrossingLog log(5, 5, 1.2);
    SUBCASE("single crossed neighbor wins without a tie") {
        log.record(2, 3, 40.0);   // east of (2,2)
        auto res = detect_winner(log, {2, 2}, 0.17);
        REQUIRE(res.has_value());
        CHECK(res->winner == Cell{2, 3});
        CHECK(res->crossing_time_ns == 40.0);
        CHECK_FALSE(res->tie);
    }
    SUBCASE("near-tie flags and resolves in N-E-S-W order") {
        log.record(3, 2, 40.0);     // south, earlier
        log.record(1, 2, 40.001);   // north, within eps
        auto res = detect_winner(log, {2, 2}, 0.17);
        REQUIRE(res.has_value());
        CHECK(res->tie);
        CHECK(res->winner == Cell{1, 2});   // north probes first
    }
    SUBCASE("clear separation keeps the earlier cell") {
        log.record(3, 2, 40.0);
        log.record(1, 2, 41.0);
        auto res = detect_winner(log, {2, 2}, 0.17);
        CHECK_FALSE(res->tie);
        CHECK(res->winner == Cell{3, 2});
    }
    SUBCASE("nothing crossed signals the timeout path") {
        CHECK_FALSE(detect_winner(log, {2, 2}, 0.17).has_value());
    }
    SUBCASE("corner reference cell only probes in-range neighbors") {
        log.record(0, 1, 12.0);
        auto res = detect_winner(log, {0, 0}, 0.17);
        REQUIRE(res.has_value());
        CHECK(res->winner == Cell{0, 1});
    }
}

TEST_CASE("symmetric two-way problems resolve deterministically") {
    TemplateImage img = make_fixture(FixtureKind::Corridor, 7, 7);
    PathProblem prob = PathProblem::from_image(img, {3, 3}, {3, 5}, nominal(7, 7),
                                               ReactionCurve::calibrated_default());
    PathSolution a = solve_path(prob);
    PathSolution b = solve_path(prob);
    REQUIRE(a.outcome == Outcome::Reached);
    REQUIRE(a.path.size() == b.path.size());
    for (std::size_t k = 0; k < a.path.size(); ++k) CHECK(a.path[k] == b.path[k]);
    CHECK(a.total_time_ns == b.total_time_ns);
}

TEST_CASE("timeout bound arithmetic") {
    GridParams p = nominal(80, 80);
    CouplingMap open(80, 80, p.g_nominal);
    CHECK(timeout_bound(p, 16.92, open) == doctest::Approx(6400 * 16.92 * 1.5));

    GridParams c = nominal(1, 10);
    CouplingMap lane(1, 10, c.g_nominal);
    CHECK(timeout_bound(c, 16.92, lane) == doctest::Approx(10 * 16.92 * 1.5));

    CHECK_THROWS_AS(timeout_bound(p, 0.0, open), ConfigError);
}

TEST_CASE("dynamic map provider is queried once per iteration") {
    int calls = 0;
    PathProblem prob;
    prob.map_provider = [&calls](int) {
        ++calls;
        return make_fixture(FixtureKind::Corridor, 1, 6);
    };
    prob.start = {0, 0};
    prob.target = {0, 5};
    prob.params = nominal(1, 6);
    prob.timeout.t_p_estimate_ns = 16.92;
    PathSolution sol = solve_path(prob);
    CHECK(sol.outcome == Outcome::Reached);
    CHECK(calls == 5);   // one per iteration, none for the RC==TC exit
}

TEST_CASE("moving target: TC update between iterations is honored") {
    // The provider cannot move TC, but a fresh problem from the winner
    // cell onward equals re-targeting; emulate one TC update.
    PathProblem leg1 = corridor_problem(12, 0, 6);
    PathSolution sol1 = solve_path(leg1);
    REQUIRE(sol1.outcome == Outcome::Reached);
    PathProblem leg2 = corridor_problem(12, 6, 9);
    PathSolution sol2 = solve_path(leg2);
    CHECK(sol2.outcome == Outcome::Reached);
    CHECK(sol1.steps + sol2.steps == 9);
}

TEST_CASE("solver rejects bad inputs up front") {
    PathProblem prob = corridor_problem(10, 0, 9);
    SUBCASE("out-of-range cells") {
        prob.target = {0, 10};
        CHECK_THROWS_AS(solve_path(prob), StructuralError);
    }
    SUBCASE("non-excitable bias") {
        prob.params.i_b = prob.curve.peak_current() + 1.0;
        CHECK_THROWS_AS(solve_path(prob), ConfigError);
    }
    SUBCASE("V_w outside the bistable window") {
        prob.v_w = 2.5;
        CHECK_THROWS_AS(solve_path(prob), ConfigError);
    }
}

TEST_CASE("solution JSON carries outcome, path and totals") {
    PathProblem prob = corridor_problem(6, 0, 5);
    PathSolution sol = solve_path(prob);
    std::string j = solution_json(sol);
    CHECK(j.find("\"outcome\": \"reached\"") != std::string::npos);
    CHECK(j.find("\"steps\": 5") != std::string::npos);
    CHECK(j.find("crossing_time_ns") != std::string::npos);
}

TEST_CASE("room solve agrees with the BFS oracle") {
    TemplateImage img = make_fixture(FixtureKind::Room, 21, 21, 11);
    GridParams p = nominal(21, 21);
    ObstacleGraph graph(build_coupling(img, p));
    // Pick a start/target pair with a known free path.
    Cell start{0, 0}, target{20, 20};
    REQUIRE(img.at(0, 0) == 255);
    auto dist = graph.bfs_shortest(start, target);
    REQUIRE(dist.has_value());

    PathProblem prob = PathProblem::from_image(img, start, target, p,
                                               ReactionCurve::calibrated_default());
    prob.timeout.t_p_estimate_ns = 16.92;
    PathSolution sol = solve_path(prob);
    REQUIRE(sol.outcome == Outcome::Reached);
    CHECK(sol.steps == *dist);
    PathReport rep = compare_path(sol, graph);
    CHECK(rep.lengths_equal);
    CHECK(rep.legal);
    CHECK(rep.progress_ok);
}
