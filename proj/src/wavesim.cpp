#include "excnn/wavesim.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace excnn {

CrossingLog::CrossingLog(int r, int c, double v_w)
    : threshold(v_w), rows(r), cols(c),
      first_crossing(static_cast<std::size_t>(r) * c,
                     std::numeric_limits<double>::quiet_NaN()) {}

bool CrossingLog::crossed(int i, int j) const {
    return !std::isnan(first_crossing[static_cast<std::size_t>(i) * cols + j]);
}

std::size_t CrossingLog::count() const {
    std::size_t n = 0;
    for (double t : first_crossing)
        if (!std::isnan(t)) ++n;
    return n;
}

namespace {

// RK4 over a cell subset. Inactive cells are frozen and read as
// constants by their active neighbors; the active region grows one ring
// ahead of any cell that has left its rest voltage.
class Episode {
public:
    Episode(GridState& state, const CouplingMap& coupling, const GridParams& params,
            const ReactionCurve& curve, const EpisodeOptions& opt)
        : s_(state), cm_(coupling), p_(params), curve_(curve), opt_(opt) {
        const std::size_t cells = s_.v.size();
        k1_.resize(cells);
        k2_.resize(cells);
        k3_.resize(cells);
        k4_.resize(cells);
        stage_.resize(cells);

        if (opt_.active_set) {
            active_.assign(cells, 0);
            for (int i = 0; i < s_.rows; ++i)
                for (int j = 0; j < s_.cols; ++j)
                    if (std::abs(s_.at(i, j) - opt_.active_rest_v) > opt_.active_eps_v)
                        activate_two_rings(i, j);
            if (opt_.stimulus)
                activate_two_rings(opt_.stimulus->cell.row, opt_.stimulus->cell.col);
            for (const Cell& c : opt_.clamped) activate_two_rings(c.row, c.col);
        } else {
            active_.assign(cells, 1);
            list_.resize(cells);
            for (std::size_t c = 0; c < cells; ++c) list_[c] = c;
        }
        for (const Cell& c : opt_.clamped) {
            if (!s_.in_range(c.row, c.col))
                throw StructuralError("run_wave: clamped cell out of range");
            clamp_.push_back(static_cast<std::size_t>(c.row) * s_.cols + c.col);
        }
    }

    // Advances by dt; calls on_cross(cell index, interpolated time) for
    // every first upward crossing of v_w.
    template <typename F>
    void step_once(double v_w, std::vector<char>& crossed, F&& on_cross) {
        const double dt = p_.dt;
        const bool stim_on = opt_.stimulus && s_.t < opt_.stimulus->until_ns;

        stage_ = s_.v;
        eval(s_.v, k1_, stim_on);
        for (std::size_t c : list_) stage_[c] = s_.v[c] + 0.5 * dt * k1_[c];
        eval(stage_, k2_, stim_on);
        for (std::size_t c : list_) stage_[c] = s_.v[c] + 0.5 * dt * k2_[c];
        eval(stage_, k3_, stim_on);
        for (std::size_t c : list_) stage_[c] = s_.v[c] + dt * k3_[c];
        eval(stage_, k4_, stim_on);

        const double t_prev = s_.t;
        s_.t += dt;
        const std::size_t n_before = list_.size();
        for (std::size_t idx = 0; idx < n_before; ++idx) {
            const std::size_t c = list_[idx];
            const double old = s_.v[c];
            const double now =
                old + dt / 6.0 * (k1_[c] + 2.0 * k2_[c] + 2.0 * k3_[c] + k4_[c]);
            s_.v[c] = now;
            if (!std::isfinite(now)) {
                int i = static_cast<int>(c) / s_.cols, j = static_cast<int>(c) % s_.cols;
                throw DivergenceError(i, j, s_.t);
            }
            if (!crossed[c] && old < v_w && now >= v_w) {
                crossed[c] = 1;
                on_cross(c, t_prev + dt * (v_w - old) / (now - old));
            }
            if (opt_.active_set && std::abs(now - opt_.active_rest_v) > opt_.active_eps_v) {
                int i = static_cast<int>(c) / s_.cols, j = static_cast<int>(c) % s_.cols;
                activate_two_rings(i, j);
            }
        }
    }

private:
    void eval(const std::vector<double>& field, std::vector<double>& out, bool stim_on) {
        const int m = s_.cols;
        const double inv_c = 1.0 / p_.c_i;
        for (std::size_t c : list_) {
            const int i = static_cast<int>(c) / m, j = static_cast<int>(c) % m;
            const double v = field[c];
            double sum = 0.0;
            if (i > 0) sum += cm_.vertical(i - 1, j) * (field[c - m] - v);
            if (j < m - 1) sum += cm_.horizontal(i, j) * (field[c + 1] - v);
            if (i < s_.rows - 1) sum += cm_.vertical(i, j) * (field[c + m] - v);
            if (j > 0) sum += cm_.horizontal(i, j - 1) * (field[c - 1] - v);
            out[c] = (sum + p_.i_b - curve_.current(v)) * inv_c;
        }
        if (stim_on) {
            const std::size_t c =
                static_cast<std::size_t>(opt_.stimulus->cell.row) * m + opt_.stimulus->cell.col;
            out[c] += opt_.stimulus->current_ua * inv_c;
        }
        for (std::size_t c : clamp_) out[c] = 0.0;
    }

    void activate(int i, int j) {
        const std::size_t c = static_cast<std::size_t>(i) * s_.cols + j;
        if (!active_[c]) {
            active_[c] = 1;
            list_.push_back(c);
        }
    }
    void activate_neighbors(int i, int j) {
        if (i > 0) activate(i - 1, j);
        if (j < s_.cols - 1) activate(i, j + 1);
        if (i < s_.rows - 1) activate(i + 1, j);
        if (j > 0) activate(i, j - 1);
    }
    void activate_with_neighbors(int i, int j) {
        activate(i, j);
        activate_neighbors(i, j);
    }
    // Two rings ahead of any moving cell keeps frozen cells two edges away
    // from anything that has left rest, which holds the skip error below
    // the 1e-6 V contract.
    void activate_two_rings(int i, int j) {
        activate(i, j);
        if (i > 0) activate_with_neighbors(i - 1, j);
        if (j < s_.cols - 1) activate_with_neighbors(i, j + 1);
        if (i < s_.rows - 1) activate_with_neighbors(i + 1, j);
        if (j > 0) activate_with_neighbors(i, j - 1);
    }

    GridState& s_;
    const CouplingMap& cm_;
    const GridParams& p_;
    const ReactionCurve& curve_;
    const EpisodeOptions& opt_;
    std::vector<double> k1_, k2_, k3_, k4_, stage_;
    std::vector<char> active_;
    std::vector<std::size_t> list_;
    std::vector<std::size_t> clamp_;
};

}  // namespace

EpisodeResult run_wave(GridState state, const CouplingMap& coupling, const GridParams& params,
                       const ReactionCurve& curve, double v_w, const EpisodeOptions& options) {
    if (!coupling.matches(params) || state.rows != params.rows || state.cols != params.cols)
        throw StructuralError("run_wave: state/coupling/params dimensions disagree");
    for (const Cell& w : options.watched)
        if (!state.in_range(w.row, w.col))
            throw StructuralError("run_wave: watched cell out of range");

    const double t0 = state.t;
    EpisodeResult res;
    res.log = CrossingLog(state.rows, state.cols, v_w);

    std::vector<char> crossed(state.v.size(), 0);
    double last_cross_t = t0;
    // The programmed source sits above V_w from the start; log it at t0.
    for (int i = 0; i < state.rows; ++i) {
        for (int j = 0; j < state.cols; ++j) {
            if (state.at(i, j) >= v_w) {
                crossed[static_cast<std::size_t>(i) * state.cols + j] = 1;
                res.log.record(i, j, t0);
            }
        }
    }

    double watched_hit_t = std::numeric_limits<double>::quiet_NaN();
    auto watched_contains = [&](std::size_t c) {
        for (const Cell& w : options.watched)
            if (static_cast<std::size_t>(w.row) * state.cols + w.col == c) return true;
        return false;
    };
    for (const Cell& w : options.watched)
        if (res.log.crossed(w.row, w.col)) watched_hit_t = t0;

    Episode ep(state, coupling, params, curve, options);
    double next_frame_t = t0;
    StopReason reason = StopReason::TimeBudget;

    while (true) {
        if (options.frame_interval_ns && options.frame_sink && state.t >= next_frame_t) {
            options.frame_sink(state);
            next_frame_t += *options.frame_interval_ns;
        }
        if (!std::isnan(watched_hit_t) && state.t >= watched_hit_t + options.linger_ns) {
            reason = StopReason::WatchedCrossed;
            break;
        }
        if (options.time_budget_ns && state.t - t0 >= *options.time_budget_ns) {
            reason = StopReason::TimeBudget;
            break;
        }
        if (options.quiescence_window_ns &&
            state.t - last_cross_t >= *options.quiescence_window_ns) {
            reason = StopReason::Quiescence;
            break;
        }
        if (!options.time_budget_ns && !options.quiescence_window_ns && options.watched.empty())
            throw ConfigError("run_wave: no stop condition given");

        ep.step_once(v_w, crossed, [&](std::size_t c, double t_cross) {
            const int i = static_cast<int>(c) / state.cols;
            const int j = static_cast<int>(c) % state.cols;
            res.log.record(i, j, t_cross);
            last_cross_t = state.t;
            if (std::isnan(watched_hit_t) && watched_contains(c)) watched_hit_t = state.t;
        });
    }

    res.duration_ns = state.t - t0;
    res.state = std::move(state);
    res.reason = reason;
    return res;
}

SpeedMeasurement measure_tp(const GridParams& params, const ReactionCurve& curve, double v_w,
                            int corridor_len) {
    if (corridor_len < 22)
        throw ConfigError("corridor must be at least 22 cells for the central window");
    GridParams p = params;
    p.rows = 1;
    p.cols = corridor_len;

    StableStates st = stable_states(curve, p.i_b);
    if (!st.excitable)
        throw MeasurementError("bias " + std::to_string(p.i_b) + " uA is not excitable");

    GridState state = uniform_init(p, st);
    excite(state, {0, 0}, st);
    CouplingMap map(1, corridor_len, p.g_nominal);

    // Centered 20-cell window keeps source and boundary transients out.
    const int win_start = std::max(1, (corridor_len - 20) / 2);
    const int win_end = win_start + 19;   // inclusive

    EpisodeOptions opt;
    opt.watched = {{0, win_end}};
    opt.clamped = {{0, 0}};
    opt.quiescence_window_ns = 500.0;
    opt.time_budget_ns = 500.0 * corridor_len;
    EpisodeResult res = run_wave(std::move(state), map, p, curve, v_w, opt);

    if (res.reason != StopReason::WatchedCrossed)
        throw MeasurementError("front failed to traverse the corridor");

    double sum = 0.0;
    for (int j = win_start + 1; j <= win_end; ++j) {
        if (!res.log.crossed(0, j) || !res.log.crossed(0, j - 1))
            throw MeasurementError("gap in corridor crossing log");
        sum += res.log.time(0, j) - res.log.time(0, j - 1);
    }
    SpeedMeasurement m;
    m.i_b = p.i_b;
    m.t_p = sum / (win_end - win_start);
    m.c_p = 1000.0 / m.t_p;
    return m;
}

std::vector<SweepRow> sweep_bias(const std::vector<double>& biases, GridParams params,
                                 const ReactionCurve& curve, double v_w) {
    std::vector<SweepRow> rows;
    rows.reserve(biases.size());
    for (double b : biases) {
        SweepRow row;
        row.i_b = b;
        params.i_b = b;
        StableStates st = stable_states(curve, b);
        if (!st.excitable) {
            row.note = "not excitable";
        } else {
            try {
                row.measurement = measure_tp(params, curve, v_w);
            } catch (const MeasurementError& e) {
                row.note = e.what();
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "I_B,t_p,c_p,note\n";
    char buf[128];
    for (const auto& r : rows) {
        if (r.measurement) {
            std::snprintf(buf, sizeof(buf), "%.6g,%.6f,%.6f,\n", r.i_b, r.measurement->t_p,
                          r.measurement->c_p);
        } else {
            std::snprintf(buf, sizeof(buf), "%.6g,,,%s\n", r.i_b, r.note.c_str());
        }
        out += buf;
    }
    return out;
}

}  // namespace excnn
