#include "excnn/pgm.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "excnn/errors.hpp"

namespace excnn {

namespace {

struct Scanner {
    const std::string& data;
    std::size_t pos = 0;

    void skip_space_and_comments() {
        while (pos < data.size()) {
            char c = data[pos];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos;
            } else if (c == '#') {
                while (pos < data.size() && data[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
    }

    int next_int(const char* what) {
        skip_space_and_comments();
        std::size_t start = pos;
        while (pos < data.size() && std::isdigit(static_cast<unsigned char>(data[pos]))) ++pos;
        if (pos == start)
            throw ParseError(std::string("expected ") + what, start);
        return std::stoi(data.substr(start, pos - start));
    }
};

}  // namespace

TemplateImage parse_pgm(const std::string& data) {
    if (data.size() < 2 || data[0] != 'P' || (data[1] != '2' && data[1] != '5'))
        throw ParseError("not a P2/P5 PGM header", 0);
    const bool binary = data[1] == '5';

    Scanner s{data, 2};
    int cols = s.next_int("width");
    int rows = s.next_int("height");
    int maxval = s.next_int("maxval");
    if (rows < 1 || cols < 1) throw ParseError("non-positive dimensions", s.pos);
    if (maxval != 255) throw ParseError("maxval must be 255, got " + std::to_string(maxval), s.pos);

    TemplateImage img(rows, cols);
    const std::size_t count = img.intensity.size();

    if (binary) {
        // Exactly one whitespace byte separates maxval from the raster.
        if (s.pos >= data.size() || !std::isspace(static_cast<unsigned char>(data[s.pos])))
            throw ParseError("missing raster separator", s.pos);
        ++s.pos;
        if (data.size() - s.pos < count)
            throw ParseError("truncated raster", data.size());
        std::copy_n(reinterpret_cast<const unsigned char*>(data.data()) + s.pos, count,
                    img.intensity.begin());
    } else {
        for (std::size_t k = 0; k < count; ++k) {
            int v = s.next_int("pixel value");
            if (v < 0 || v > 255) throw ParseError("pixel value out of range", s.pos);
            img.intensity[k] = static_cast<std::uint8_t>(v);
        }
    }
    return img;
}

TemplateImage load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open PGM file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_pgm(buf.str());
}

void save_pgm(const TemplateImage& img, const std::string& path, bool binary) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write PGM file: " + path);
    out << (binary ? "P5" : "P2") << "\n" << img.cols << " " << img.rows << "\n255\n";
    if (binary) {
        out.write(reinterpret_cast<const char*>(img.intensity.data()),
                  static_cast<std::streamsize>(img.intensity.size()));
    } else {
        for (int i = 0; i < img.rows; ++i) {
            for (int j = 0; j < img.cols; ++j)
                out << int(img.at(i, j)) << (j + 1 == img.cols ? "" : " ");
            out << "\n";
        }
    }
}

TemplateImage render_state(const GridState& state) {
    TemplateImage img(state.rows, state.cols);
    for (std::size_t c = 0; c < state.v.size(); ++c) {
        double x = state.v[c] / 1.8 * 255.0;
        img.intensity[c] = static_cast<std::uint8_t>(std::clamp(x, 0.0, 255.0) + 0.5);
    }
    return img;
}

}  // namespace excnn
