#include "excnn/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "excnn/pgm.hpp"

namespace excnn {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

KeyValueFile KeyValueFile::parse(const std::string& text) {
    KeyValueFile kv;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto cut = line.find_first_of("#;");
        if (cut != std::string::npos) line = line.substr(0, cut);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": unterminated section");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        kv.values_[section.empty() ? key : section + "." + key] = val;
    }
    return kv;
}

KeyValueFile KeyValueFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void KeyValueFile::set(const std::string& dotted_assignment) {
    auto eq = dotted_assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override must look like section.key=value: " + dotted_assignment);
    values_[trim(dotted_assignment.substr(0, eq))] = trim(dotted_assignment.substr(eq + 1));
}

std::optional<std::string> KeyValueFile::get(const std::string& k) const {
    auto it = values_.find(k);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

std::string KeyValueFile::get_or(const std::string& k, const std::string& fb) const {
    return get(k).value_or(fb);
}

double KeyValueFile::get_double(const std::string& k, double fb) const {
    auto v = get(k);
    if (!v) return fb;
    try {
        return std::stod(*v);
    } catch (const std::exception&) {
        throw ConfigError("bad number for " + k + ": " + *v);
    }
}

int KeyValueFile::get_int(const std::string& k, int fb) const {
    auto v = get(k);
    if (!v) return fb;
    try {
        return std::stoi(*v);
    } catch (const std::exception&) {
        throw ConfigError("bad integer for " + k + ": " + *v);
    }
}

namespace {

Cell parse_cell(const std::string& s, const std::string& what) {
    std::istringstream in(s);
    int r, c;
    char comma;
    if (!(in >> r >> comma >> c) || comma != ',')
        throw ConfigError(what + " must be row,col: " + s);
    return {r, c};
}

}  // namespace

RunConfig RunConfig::from_kv(const KeyValueFile& kv) {
    RunConfig cfg;
    cfg.params.rows = kv.get_int("grid.rows", cfg.params.rows);
    cfg.params.cols = kv.get_int("grid.cols", cfg.params.cols);
    cfg.params.g_nominal = kv.get_double("grid.g", cfg.params.g_nominal);
    cfg.params.c_i = kv.get_double("grid.c_i", cfg.params.c_i);
    cfg.params.i_b = kv.get_double("grid.i_b", cfg.params.i_b);
    cfg.params.dt = kv.get_double("grid.dt", cfg.params.dt);

    if (auto file = kv.get("curve.file")) {
        cfg.curve = load_curve_file(*file);
    } else {
        std::string kind = kv.get_or("curve.kind", "cubic");
        if (kind == "cubic") {
            ReactionCurve def = ReactionCurve::calibrated_default();
            cfg.curve = ReactionCurve::cubic(kv.get_double("curve.a", def.slope()),
                                             kv.get_double("curve.v_low0", def.anchor_low()),
                                             kv.get_double("curve.v_mid0", def.anchor_mid()),
                                             kv.get_double("curve.v_high0", def.anchor_high()),
                                             kv.get_double("curve.bias_anchor", def.anchor_bias()));
        } else if (kind == "piecewise") {
            throw ConfigError("piecewise curve needs curve.file");
        } else {
            throw ConfigError("unknown curve.kind: " + kind);
        }
    }

    cfg.v_w = kv.get_double("wave.v_w", cfg.v_w);

    std::string mode = kv.get_or("coupling.mode", "threshold");
    if (mode == "threshold") {
        cfg.coupling_mode = ThresholdMode{kv.get_int("coupling.theta", 127)};
    } else if (mode == "proportional") {
        cfg.coupling_mode = ProportionalMode{kv.get_double("coupling.alpha", 1.0)};
    } else {
        throw ConfigError("unknown coupling.mode: " + mode);
    }

    if (auto t = kv.get("solve.template")) cfg.template_path = *t;
    if (auto f = kv.get("solve.fixture")) {
        if (*f == "room") cfg.fixture = FixtureKind::Room;
        else if (*f == "maze") cfg.fixture = FixtureKind::Maze;
        else if (*f == "corridor") cfg.fixture = FixtureKind::Corridor;
        else if (*f == "sealed") cfg.fixture = FixtureKind::Sealed;
        else throw ConfigError("unknown solve.fixture: " + *f);
    }
    cfg.seed = static_cast<std::uint32_t>(kv.get_int("solve.seed", 0));
    if (auto rc = kv.get("solve.rc")) cfg.rc = parse_cell(*rc, "solve.rc");
    if (auto tc = kv.get("solve.tc")) cfg.tc = parse_cell(*tc, "solve.tc");
    cfg.frame_interval_ns = kv.get_double("solve.frame_interval", 0.0);
    cfg.output_dir = kv.get_or("output.dir", ".");
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path, const std::vector<std::string>& overrides) {
    KeyValueFile kv = path.empty() ? KeyValueFile::parse("") : KeyValueFile::load(path);
    for (const auto& o : overrides) kv.set(o);
    RunConfig cfg = from_kv(kv);
    cfg.validate();
    return cfg;
}

void RunConfig::validate() const {
    params.validate();
    StableStates st = stable_states(curve, params.i_b);
    std::ostringstream states;
    states << "V_L = " << st.v_low << " V, V_H = " << st.v_high << " V at I_B = " << params.i_b
           << " uA";
    if (!(v_w > st.v_low && v_w < st.v_high))
        throw ConfigError("V_w = " + std::to_string(v_w) + " V must lie strictly between the " +
                          "stable states (" + states.str() + ")");
}

TemplateImage RunConfig::obstacle_image() const {
    if (template_path) return load_pgm(*template_path);
    FixtureKind kind = fixture.value_or(FixtureKind::Corridor);
    return make_fixture(kind, params.rows, params.cols, seed);
}

ReactionCurve load_curve_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open curve file: " + path);
    std::string first;
    std::string line;
    while (std::getline(in, line)) {
        auto cut = line.find('#');
        if (cut != std::string::npos) line = line.substr(0, cut);
        line = trim(line);
        if (!line.empty()) {
            first = line;
            break;
        }
    }
    if (first != "cubic") return ReactionCurve::load_piecewise(path);

    std::map<std::string, double> vals;
    while (std::getline(in, line)) {
        auto cut = line.find('#');
        if (cut != std::string::npos) line = line.substr(0, cut);
        line = trim(line);
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string key;
        double val;
        if (!(ls >> key >> val)) throw ConfigError("bad curve file line: " + line);
        vals[key] = val;
    }
    for (const char* k : {"a", "v_low0", "v_mid0", "v_high0", "bias_anchor"})
        if (!vals.count(k)) throw ConfigError(std::string("curve file missing key: ") + k);
    return ReactionCurve::cubic(vals["a"], vals["v_low0"], vals["v_mid0"], vals["v_high0"],
                                vals["bias_anchor"]);
}

void save_curve_file(const ReactionCurve& curve, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write curve file: " + path);
    if (curve.kind() == ReactionCurve::Kind::Cubic) {
        out.precision(17);
        out << "cubic\n"
            << "a " << curve.slope() << "\n"
            << "v_low0 " << curve.anchor_low() << "\n"
            << "v_mid0 " << curve.anchor_mid() << "\n"
            << "v_high0 " << curve.anchor_high() << "\n"
            << "bias_anchor " << curve.anchor_bias() << "\n";
    } else {
        out.precision(17);
        out << "# v(V)  J(uA)\n";
        for (const auto& bp : curve.breakpoints()) out << bp.v << " " << bp.j << "\n";
    }
}

}  // namespace excnn
