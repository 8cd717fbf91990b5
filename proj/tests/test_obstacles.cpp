#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <deque>
#include <fstream>

#include "excnn/analytics.hpp"
#include "excnn/obstacles.hpp"
#include "excnn/pgm.hpp"

using namespace excnn;

namespace {

GridParams params_for(const TemplateImage& img) {
    GridParams p;
    p.rows = img.rows;
    p.cols = img.cols;
    return p;
}

// Free-pixel flood fill over the image itself (not the coupling map).
int reachable_free_pixels(const TemplateImage& img, int si, int sj) {
    std::vector<char> seen(img.intensity.size(), 0);
    std::deque<std::pair<int, int>> q{{si, sj}};
    seen[static_cast<std::size_t>(si) * img.cols + sj] = 1;
    int count = 0;
    const int dr[4] = {-1, 0, 1, 0}, dc[4] = {0, 1, 0, -1};
    while (!q.empty()) {
        auto [i, j] = q.front();
        q.pop_front();
        ++count;
        for (int k = 0; k < 4; ++k) {
            int ni = i + dr[k], nj = j + dc[k];
            if (ni < 0 || ni >= img.rows || nj < 0 || nj >= img.cols) continue;
            std::size_t id = static_cast<std::size_t>(ni) * img.cols + nj;
            if (seen[id] || img.at(ni, nj) != 255) continue;
            seen[id] = 1;
            q.emplace_back(ni, nj);
        }
    }
    return count;
}

int free_pixel_count(const TemplateImage& img) {
    int n = 0;
    for (auto v : img.intensity)
        if (v == 255) ++n;
    return n;
}

}  // namespace

TEST_CASE("P2 parsing transcribes values directly") {
    TemplateImage img = parse_pgm("P2 2 2 255 0 0 255 255");
    CHECK(img.rows == 2);
    CHECK(img.cols == 2);
    CHECK(img.at(0, 0) == 0);
    CHECK(img.at(0, 1) == 0);
    CHECK(img.at(1, 0) == 255);
    CHECK(img.at(1, 1) == 255);
}

TEST_CASE("P5 and P2 encodings of the same data parse identically") {
    std::string p5 = "P5 2 2 255 ";
    p5 += '\0';
    p5 += '\0';
    p5 += '\xff';
    p5 += '\xff';
    CHECK(parse_pgm(p5) == parse_pgm("P2 2 2 255 0 0 255 255"));
}

TEST_CASE("parser rejections carry a byte offset") {
    CHECK_THROWS_AS(parse_pgm("P6 2 2 255 "), ParseError);
    CHECK_THROWS_AS(parse_pgm("P2 2 2 65535 0 0 0 0"), ParseError);
    CHECK_THROWS_AS(parse_pgm("P2 2 2 255 0 0 255"), ParseError);   // one pixel short
    std::string trunc = "P5 4 4 255 ";
    trunc += std::string(7, '\0');
    CHECK_THROWS_AS(parse_pgm(trunc), ParseError);
    try {
        parse_pgm("P2 2 2 65535 0 0 0 0");
    } catch (const ParseError& e) {
        CHECK(e.offset > 0);
    }
}

TEST_CASE("PGM round-trip is exact, both encodings") {
    TemplateImage img = make_fixture(FixtureKind::Room, 17, 23, 42);
    for (bool binary : {true, false}) {
        save_pgm(img, "roundtrip_test.pgm", binary);
        CHECK(load_pgm("roundtrip_test.pgm") == img);
    }
    std::remove("roundtrip_test.pgm");
}

TEST_CASE("comments and whitespace variations parse") {
    TemplateImage img = parse_pgm("P2\n# a comment\n2 2\n# another\n255\n1 2\n3 4\n");
    CHECK(img.at(0, 0) == 1);
    CHECK(img.at(1, 1) == 4);
}

TEST_CASE("uniform image couples every edge at G_nominal") {
    TemplateImage img(4, 5, 200);
    GridParams p = params_for(img);
    CouplingMap map = build_coupling(img, p);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(map.horizontal(i, j) == 25.0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 5; ++j) CHECK(map.vertical(i, j) == 25.0);
}

TEST_CASE("black/white split decouples exactly the crossing edges") {
    TemplateImage img(4, 6, 0);
    for (int i = 0; i < 4; ++i)
        for (int j = 3; j < 6; ++j) img.at(i, j) = 255;
    GridParams p = params_for(img);
    CouplingMap map = build_coupling(img, p, ThresholdMode{127});
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 5; ++j)
            CHECK(map.horizontal(i, j) == (j == 2 ? 0.0 : 25.0));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 6; ++j) CHECK(map.vertical(i, j) == 25.0);
}

TEST_CASE("threshold mode output is two-valued") {
    TemplateImage img = make_fixture(FixtureKind::Maze, 21, 21, 5);
    GridParams p = params_for(img);
    CouplingMap map = build_coupling(img, p, ThresholdMode{});
    for (int i = 0; i < 21; ++i)
        for (int j = 0; j + 1 < 21; ++j)
            CHECK((map.horizontal(i, j) == 0.0 || map.horizontal(i, j) == 25.0));
}

TEST_CASE("proportional mode matches scalar arithmetic") {
    TemplateImage img(1, 2);
    img.at(0, 0) = 100;
    img.at(0, 1) = 150;
    GridParams p = params_for(img);
    CouplingMap map = build_coupling(img, p, ProportionalMode{0.1});
    // 25 / (1 + 0.1 * 50)
    CHECK(map.horizontal(0, 0) == doctest::Approx(25.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("dimension mismatch is a structural error") {
    TemplateImage img(4, 4);
    GridParams p;
    p.rows = 5;
    p.cols = 4;
    CHECK_THROWS_AS(build_coupling(img, p), StructuralError);
}

TEST_CASE("corridor fixture is a uniform free lane") {
    TemplateImage img = make_fixture(FixtureKind::Corridor, 1, 10);
    for (auto v : img.intensity) CHECK(v == 255);
}

TEST_CASE("maze fixture is perfect: every free cell reachable") {
    TemplateImage img = make_fixture(FixtureKind::Maze, 41, 41, 7);
    CHECK(img.at(1, 1) == 255);
    CHECK(reachable_free_pixels(img, 1, 1) == free_pixel_count(img));
    // Deterministic in the seed.
    CHECK(img == make_fixture(FixtureKind::Maze, 41, 41, 7));
    CHECK_FALSE(img == make_fixture(FixtureKind::Maze, 41, 41, 8));
}

TEST_CASE("sealed fixture encloses the target region") {
    TemplateImage img = make_fixture(FixtureKind::Sealed, 21, 21);
    GridParams p = params_for(img);
    ObstacleGraph g(build_coupling(img, p));
    CHECK_FALSE(g.bfs_shortest({0, 0}, {10, 10}).has_value());
    CHECK(g.bfs_shortest({0, 0}, {0, 20}).has_value());
}

TEST_CASE("fixture dimension guards") {
    CHECK_THROWS_AS(make_fixture(FixtureKind::Maze, 2, 2, 0), StructuralError);
    CHECK_THROWS_AS(make_fixture(FixtureKind::Sealed, 4, 4, 0), StructuralError);
}
