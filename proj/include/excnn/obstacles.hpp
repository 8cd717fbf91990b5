#pragma once

#include <cstdint>
#include <variant>

#include "excnn/grid.hpp"
#include "excnn/pgm.hpp"

namespace excnn {

/// Adjacent-pixel difference d <= theta keeps the nominal conductance,
/// anything above fully decouples the edge.
struct ThresholdMode {
    int theta = 127;
};

/// Resistance grows linearly with the difference: g = G / (1 + alpha d).
struct ProportionalMode {
    double alpha = 1.0;
};

using CouplingMode = std::variant<ThresholdMode, ProportionalMode>;

/// Maps template-image intensity contrast onto per-edge conductances.
CouplingMap build_coupling(const TemplateImage& img, const GridParams& params,
                           const CouplingMode& mode = ThresholdMode{});

enum class FixtureKind { Room, Maze, Corridor, Sealed };

/// Procedural obstacle fixtures, deterministic in the seed.
///   room     - sparse rectangular obstacles on a free background
///   maze     - perfect maze (recursive backtracker), 1-px walls
///   corridor - fully free image
///   sealed   - center region enclosed by a contrasting ring
TemplateImage make_fixture(FixtureKind kind, int rows, int cols, std::uint32_t seed = 0);

}  // namespace excnn
