#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "excnn/grid.hpp"
#include "excnn/obstacles.hpp"
#include "excnn/reaction_curve.hpp"

namespace excnn {

/// Flat key-value view of an INI-style config file: sections in square
/// brackets, key = value lines, '#' or ';' comments.
class KeyValueFile {
public:
    static KeyValueFile load(const std::string& path);
    static KeyValueFile parse(const std::string& text);

    /// "section.key=value" override; flags win over the file.
    void set(const std::string& dotted_assignment);

    std::optional<std::string> get(const std::string& dotted_key) const;
    std::string get_or(const std::string& dotted_key, const std::string& fallback) const;
    double get_double(const std::string& dotted_key, double fallback) const;
    int get_int(const std::string& dotted_key, int fallback) const;

private:
    std::map<std::string, std::string> values_;
};

/// Everything one command needs: lattice constants, curve, winner
/// threshold, obstacle source, endpoints, output directory.
struct RunConfig {
    GridParams params;
    ReactionCurve curve = ReactionCurve::calibrated_default();
    double v_w = 1.2;
    CouplingMode coupling_mode = ThresholdMode{};

    std::optional<std::string> template_path;    // PGM input
    std::optional<FixtureKind> fixture;          // procedural input
    std::uint32_t seed = 0;
    Cell rc{0, 0};
    Cell tc{0, 0};
    double frame_interval_ns = 0.0;              // 0 disables dumps
    std::string output_dir = ".";

    static RunConfig from_file(const std::string& path,
                               const std::vector<std::string>& overrides = {});
    static RunConfig from_kv(const KeyValueFile& kv);

    /// Rejects non-excitable bias and V_w outside (V_L, V_H); the error
    /// names the computed stable states.
    void validate() const;

    TemplateImage obstacle_image() const;
};

/// Curve file: either the single-line "cubic" parameter format written
/// by the calibrate command, or a two-column piecewise breakpoint table.
ReactionCurve load_curve_file(const std::string& path);
void save_curve_file(const ReactionCurve& curve, const std::string& path);

}  // namespace excnn
