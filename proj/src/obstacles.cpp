#include "excnn/obstacles.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <utility>

namespace excnn {

namespace {

double edge_conductance(int a, int b, double g_nominal, const CouplingMode& mode) {
    const int d = std::abs(a - b);
    if (const auto* th = std::get_if<ThresholdMode>(&mode))
        return d <= th->theta ? g_nominal : 0.0;
    const auto& pr = std::get<ProportionalMode>(mode);
    return g_nominal / (1.0 + pr.alpha * d);
}

}  // namespace

CouplingMap build_coupling(const TemplateImage& img, const GridParams& params,
                           const CouplingMode& mode) {
    if (img.rows != params.rows || img.cols != params.cols)
        throw StructuralError("template image dimensions do not match the grid");
    CouplingMap map(img.rows, img.cols, 0.0);
    for (int i = 0; i < img.rows; ++i)
        for (int j = 0; j + 1 < img.cols; ++j)
            map.set_horizontal(i, j,
                               edge_conductance(img.at(i, j), img.at(i, j + 1),
                                                params.g_nominal, mode));
    for (int i = 0; i + 1 < img.rows; ++i)
        for (int j = 0; j < img.cols; ++j)
            map.set_vertical(i, j,
                             edge_conductance(img.at(i, j), img.at(i + 1, j),
                                              params.g_nominal, mode));
    return map;
}

namespace {

constexpr std::uint8_t kFree = 255;
constexpr std::uint8_t kWall = 0;

TemplateImage make_room(int rows, int cols, std::uint32_t seed) {
    TemplateImage img(rows, cols, kFree);
    std::mt19937 rng(seed);
    int n_rects = std::max(2, rows * cols / 300);
    std::uniform_int_distribution<int> ri(0, rows - 1), rj(0, cols - 1);
    std::uniform_int_distribution<int> rh(1, std::max(1, rows / 5)),
        rw(1, std::max(1, cols / 5));
    for (int k = 0; k < n_rects; ++k) {
        int i0 = ri(rng), j0 = rj(rng);
        int h = rh(rng), w = rw(rng);
        for (int i = i0; i < std::min(rows, i0 + h); ++i)
            for (int j = j0; j < std::min(cols, j0 + w); ++j)
                img.at(i, j) = kWall;
    }
    return img;
}

// Recursive backtracker on the odd-coordinate cell lattice; walls stay
// one pixel thick and every free cell remains reachable.
TemplateImage make_maze(int rows, int cols, std::uint32_t seed) {
    TemplateImage img(rows, cols, kWall);
    const int ch = (rows - 1) / 2;   // carve cells at (2a+1, 2b+1)
    const int cw = (cols - 1) / 2;
    std::mt19937 rng(seed);

    std::vector<bool> visited(static_cast<std::size_t>(ch) * cw, false);
    std::vector<std::pair<int, int>> stack;
    auto idx = [cw](int a, int b) { return static_cast<std::size_t>(a) * cw + b; };

    visited[idx(0, 0)] = true;
    img.at(1, 1) = kFree;
    stack.emplace_back(0, 0);
    const int da[4] = {-1, 0, 1, 0};
    const int db[4] = {0, 1, 0, -1};
    while (!stack.empty()) {
        auto [a, b] = stack.back();
        int order[4] = {0, 1, 2, 3};
        std::shuffle(order, order + 4, rng);
        bool moved = false;
        for (int k : order) {
            int na = a + da[k], nb = b + db[k];
            if (na < 0 || na >= ch || nb < 0 || nb >= cw || visited[idx(na, nb)]) continue;
            visited[idx(na, nb)] = true;
            img.at(2 * na + 1, 2 * nb + 1) = kFree;
            img.at(a + na + 1, b + nb + 1) = kFree;   // knock out the wall between
            stack.emplace_back(na, nb);
            moved = true;
            break;
        }
        if (!moved) stack.pop_back();
    }
    return img;
}

TemplateImage make_sealed(int rows, int cols) {
    TemplateImage img(rows, cols, kFree);
    const int ci = rows / 2, cj = cols / 2;
    const int r = std::max(2, std::min(rows, cols) / 6);
    for (int i = ci - r; i <= ci + r; ++i) {
        for (int j = cj - r; j <= cj + r; ++j) {
            if (i < 0 || i >= rows || j < 0 || j >= cols) continue;
            if (i == ci - r || i == ci + r || j == cj - r || j == cj + r) img.at(i, j) = kWall;
        }
    }
    return img;
}

}  // namespace

TemplateImage make_fixture(FixtureKind kind, int rows, int cols, std::uint32_t seed) {
    if (rows < 1 || cols < 1) throw StructuralError("fixture dimensions must be positive");
    switch (kind) {
        case FixtureKind::Corridor:
            return TemplateImage(rows, cols, kFree);
        case FixtureKind::Room:
            if (rows < 3 || cols < 3) throw StructuralError("room fixture needs at least 3x3");
            return make_room(rows, cols, seed);
        case FixtureKind::Maze:
            if (rows < 3 || cols < 3) throw StructuralError("maze fixture needs at least 3x3");
            return make_maze(rows, cols, seed);
        case FixtureKind::Sealed:
            if (rows < 5 || cols < 5) throw StructuralError("sealed fixture needs at least 5x5");
            return make_sealed(rows, cols);
    }
    throw StructuralError("unknown fixture kind");
}

}  // namespace excnn
