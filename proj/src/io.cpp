#include "polsar/io.hpp"

#include "polsar/errors.hpp"
#include "polsar/synth.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace polsar::io {

namespace {

static_assert(sizeof(float) == 4 && std::numeric_limits<float>::is_iec559, "float32 planes need IEEE-754 floats");

const char* kind_name(DatasetKind k) {
    switch (k) {
    case DatasetKind::T3: return "t3";
    case DatasetKind::Slc: return "slc";
    case DatasetKind::Haa: return "haa";
    }
    return "?";
}

/// Whitespace tokenizer that remembers byte offsets for diagnostics.
class Tokens {
public:
    Tokens(const std::string& text, std::string source) : text_(text), source_(std::move(source)) {}

    bool at_end() {
        skip();
        return pos_ >= text_.size();
    }

    std::size_t offset() {
        skip();
        return pos_;
    }

    std::string word() {
        skip();
        if (pos_ >= text_.size()) throw FormatError(source_, pos_, "unexpected end of file");
        const std::size_t start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        last_ = start;
        return text_.substr(start, pos_ - start);
    }

    void expect(const std::string& w) {
        const std::string got = word();
        if (got != w) fail("expected '" + w + "', got '" + got + "'");
    }

    double number() {
        const std::string w = word();
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
        if (ec != std::errc{} || ptr != w.data() + w.size() || !std::isfinite(v))
            fail("expected a finite number, got '" + w + "'");
        return v;
    }

    template <typename Int> Int integer() {
        const std::string w = word();
        Int v{};
        const auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
        if (ec != std::errc{} || ptr != w.data() + w.size()) fail("expected an integer, got '" + w + "'");
        return v;
    }

    [[noreturn]] void fail(const std::string& what) const { throw FormatError(source_, last_, what); }

private:
    void skip() {
        while (pos_ < text_.size()) {
            if (text_[pos_] == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    const std::string& text_;
    std::string source_;
    std::size_t pos_ = 0;
    std::size_t last_ = 0;
};

fs::path plane_path(const fs::path& dir, const char* name) { return dir / (std::string(name) + ".bin"); }

DatasetHeader expect_kind(const fs::path& dir, DatasetKind kind) {
    DatasetHeader h = read_header(dir);
    if (h.kind != kind)
        throw FormatError((dir / "header.txt").string(), 0,
                          std::string("dataset kind is '") + kind_name(h.kind) + "', expected '" + kind_name(kind) + "'");
    return h;
}

HermitianMatrix3 psd_repair(const HermitianMatrix3& m, std::size_t pixel, const fs::path& dir) {
    if (is_psd(m)) return m;
    // float32 rounding of a (near) rank-deficient matrix can push an eigenvalue just below zero.
    const EigenSystem3 es = jacobi_eigen(m);
    const double scale = std::max(m.trace(), m.frobenius_norm());
    if (es.values[2] < -1e-6 * scale)
        throw FormatError(dir.string(), pixel * 4, "matrix at pixel " + std::to_string(pixel) + " is not PSD");
    ComplexMatrix3 r;
    for (std::size_t k = 0; k < 3; ++k) {
        const double l = std::max(es.values[k], 0.0);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) r(i, j) += l * es.vectors[k][i] * std::conj(es.vectors[k][j]);
    }
    return HermitianMatrix3::from_full(r);
}

} // namespace

// ---------------------------------------------------------------------------
// Text helpers

std::string read_text(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw FormatError(file.string(), 0, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const fs::path& file, const std::string& text) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw ConfigError(file.string() + ": cannot open for writing");
    out << text;
    if (!out) throw ConfigError(file.string() + ": write failed");
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 16);
    return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// Dataset headers and planes

DatasetHeader read_header(const fs::path& dir) {
    const fs::path file = dir / "header.txt";
    const std::string text = read_text(file);
    Tokens tok(text, file.string());
    tok.expect("polsar-dataset");
    if (tok.integer<int>() != 1) tok.fail("unsupported dataset version");

    DatasetHeader h;
    bool have_kind = false, have_w = false, have_h = false, have_order = false;
    while (!tok.at_end()) {
        const std::string key = tok.word();
        if (key == "kind") {
            const std::string k = tok.word();
            if (k == "t3") h.kind = DatasetKind::T3;
            else if (k == "slc") h.kind = DatasetKind::Slc;
            else if (k == "haa") h.kind = DatasetKind::Haa;
            else tok.fail("unknown dataset kind '" + k + "'");
            have_kind = true;
        } else if (key == "width") {
            h.width = tok.integer<std::size_t>();
            have_w = true;
        } else if (key == "height") {
            h.height = tok.integer<std::size_t>();
            have_h = true;
        } else if (key == "looks") {
            h.looks = tok.integer<int>();
            if (h.looks < 1) tok.fail("looks must be >= 1");
        } else if (key == "byte_order") {
            if (tok.word() != "little_endian") tok.fail("only little_endian planes are supported");
            have_order = true;
        } else if (key == "seed") {
            h.seed = tok.integer<std::uint64_t>();
        } else if (key == "rng") {
            h.rng = tok.word();
        } else if (key == "nodata") {
            h.nodata = static_cast<float>(tok.number());
        } else {
            tok.fail("unknown header key '" + key + "'");
        }
    }
    if (!have_kind || !have_w || !have_h || !have_order)
        throw FormatError(file.string(), text.size(), "header needs kind, width, height and byte_order");
    if (h.width == 0 || h.height == 0) throw FormatError(file.string(), 0, "width and height must be positive");
    return h;
}

void write_header(const fs::path& dir, const DatasetHeader& h) {
    fs::create_directories(dir);
    std::ostringstream out;
    out << "polsar-dataset 1\n"
        << "kind " << kind_name(h.kind) << '\n'
        << "width " << h.width << '\n'
        << "height " << h.height << '\n'
        << "looks " << h.looks << '\n'
        << "byte_order little_endian\n";
    if (h.seed) out << "seed " << *h.seed << '\n';
    if (h.rng) out << "rng " << *h.rng << '\n';
    if (h.nodata) out << "nodata " << *h.nodata << '\n';
    write_text(dir / "header.txt", out.str());
}

std::vector<float> read_plane(const fs::path& file, std::size_t count) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw FormatError(file.string(), 0, "cannot open plane file");
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.size() != 4 * count)
        throw FormatError(file.string(), std::min(bytes.size(), 4 * count),
                          "plane has " + std::to_string(bytes.size()) + " bytes, expected " +
                              std::to_string(4 * count));
    std::vector<float> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint32_t u = static_cast<std::uint32_t>(bytes[4 * i]) |
                                (static_cast<std::uint32_t>(bytes[4 * i + 1]) << 8) |
                                (static_cast<std::uint32_t>(bytes[4 * i + 2]) << 16) |
                                (static_cast<std::uint32_t>(bytes[4 * i + 3]) << 24);
        out[i] = std::bit_cast<float>(u);
    }
    return out;
}

void write_plane(const fs::path& file, const std::vector<float>& values) {
    std::vector<char> bytes(values.size() * 4);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto u = std::bit_cast<std::uint32_t>(values[i]);
        for (int b = 0; b < 4; ++b) bytes[4 * i + b] = static_cast<char>((u >> (8 * b)) & 0xFFu);
    }
    std::ofstream out(file, std::ios::binary);
    if (!out) throw ConfigError(file.string() + ": cannot open for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw ConfigError(file.string() + ": write failed");
}

// ---------------------------------------------------------------------------
// T3 / SLC / H-A-alpha datasets

void write_t3(const fs::path& dir, const CoherencyRaster& raster, std::optional<std::uint64_t> seed) {
    DatasetHeader h{DatasetKind::T3, raster.width, raster.height, raster.looks, seed, {}, {}};
    if (seed) h.rng = kSceneRngName;
    write_header(dir, h);
    std::array<std::vector<float>, 9> planes;
    for (auto& p : planes) p.resize(raster.data.size());
    for (std::size_t i = 0; i < raster.data.size(); ++i) {
        const FeatureVector f = features_of(raster.data[i]);
        for (std::size_t k = 0; k < 9; ++k) planes[k][i] = static_cast<float>(f[k]);
    }
    for (std::size_t k = 0; k < 9; ++k) write_plane(plane_path(dir, kT3Planes[k]), planes[k]);
}

CoherencyRaster read_t3(const fs::path& dir) {
    const DatasetHeader h = expect_kind(dir, DatasetKind::T3);
    const std::size_t n = h.width * h.height;
    std::array<std::vector<float>, 9> planes;
    for (std::size_t k = 0; k < 9; ++k) planes[k] = read_plane(plane_path(dir, kT3Planes[k]), n);

    CoherencyRaster r(h.width, h.height, h.looks);
    for (std::size_t i = 0; i < n; ++i) {
        FeatureVector f;
        for (std::size_t k = 0; k < 9; ++k) {
            f[k] = planes[k][i];
            if (!std::isfinite(f[k]))
                throw FormatError(plane_path(dir, kT3Planes[k]).string(), 4 * i, "non-finite value");
            if (k < 3 && f[k] < 0.0)
                throw FormatError(plane_path(dir, kT3Planes[k]).string(), 4 * i, "negative diagonal power");
        }
        r.data[i] = psd_repair(matrix_from_features(f), i, dir);
    }
    return r;
}

void write_slc(const fs::path& dir, const SlcRaster& slc, std::optional<std::uint64_t> seed) {
    DatasetHeader h{DatasetKind::Slc, slc.width, slc.height, 1, seed, {}, {}};
    if (seed) h.rng = kSceneRngName;
    write_header(dir, h);
    std::array<std::vector<float>, 6> planes;
    for (auto& p : planes) p.resize(slc.data.size());
    for (std::size_t i = 0; i < slc.data.size(); ++i) {
        const auto& s = slc.data[i];
        const Complex c[3] = {s.s_hh, s.s_hv, s.s_vv};
        for (std::size_t k = 0; k < 3; ++k) {
            planes[2 * k][i] = static_cast<float>(c[k].real());
            planes[2 * k + 1][i] = static_cast<float>(c[k].imag());
        }
    }
    for (std::size_t k = 0; k < 6; ++k) write_plane(plane_path(dir, kSlcPlanes[k]), planes[k]);
}

SlcRaster read_slc(const fs::path& dir) {
    const DatasetHeader h = expect_kind(dir, DatasetKind::Slc);
    const std::size_t n = h.width * h.height;
    std::array<std::vector<float>, 6> planes;
    for (std::size_t k = 0; k < 6; ++k) {
        planes[k] = read_plane(plane_path(dir, kSlcPlanes[k]), n);
        for (std::size_t i = 0; i < n; ++i)
            if (!std::isfinite(planes[k][i]))
                throw FormatError(plane_path(dir, kSlcPlanes[k]).string(), 4 * i, "non-finite value");
    }
    SlcRaster slc(h.width, h.height);
    for (std::size_t i = 0; i < n; ++i)
        slc.data[i] = {{planes[0][i], planes[1][i]}, {planes[2][i], planes[3][i]}, {planes[4][i], planes[5][i]}};
    return slc;
}

void write_haa(const fs::path& dir, const HaaRaster& haa) {
    write_header(dir, {DatasetKind::Haa, haa.width, haa.height, 1, {}, {}, kHaaNoData});
    std::array<std::vector<float>, 3> planes;
    for (auto& p : planes) p.resize(haa.data.size(), kHaaNoData);
    for (std::size_t i = 0; i < haa.data.size(); ++i) {
        const Haa& v = haa.data[i];
        if (!v.valid) continue;
        planes[0][i] = static_cast<float>(v.entropy);
        planes[1][i] = static_cast<float>(v.anisotropy);
        planes[2][i] = static_cast<float>(v.alpha_deg);
    }
    for (std::size_t k = 0; k < 3; ++k) write_plane(plane_path(dir, kHaaPlanes[k]), planes[k]);
}

HaaRaster read_haa(const fs::path& dir) {
    const DatasetHeader h = expect_kind(dir, DatasetKind::Haa);
    const float nodata = h.nodata.value_or(kHaaNoData);
    const std::size_t n = h.width * h.height;
    std::array<std::vector<float>, 3> planes;
    for (std::size_t k = 0; k < 3; ++k) planes[k] = read_plane(plane_path(dir, kHaaPlanes[k]), n);
    HaaRaster out(h.width, h.height);
    for (std::size_t i = 0; i < n; ++i) {
        Haa& v = out.data[i];
        if (planes[0][i] == nodata) {
            v.valid = false;
            continue;
        }
        v.entropy = planes[0][i];
        v.anisotropy = planes[1][i];
        v.alpha_deg = planes[2][i];
    }
    return out;
}

// ---------------------------------------------------------------------------
// PGM / PPM

void write_pgm(const fs::path& file, const LabelRaster& labels) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw ConfigError(file.string() + ": cannot open for writing");
    out << "P5\n" << labels.width << ' ' << labels.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(labels.data.data()), static_cast<std::streamsize>(labels.data.size()));
    if (!out) throw ConfigError(file.string() + ": write failed");
}

LabelRaster read_pgm(const fs::path& file) {
    const std::string text = read_text(file);
    const std::string src = file.string();
    std::size_t pos = 0;

    auto skip_space = [&] {
        while (pos < text.size()) {
            if (text[pos] == '#') {
                while (pos < text.size() && text[pos] != '\n') ++pos;
            } else if (std::isspace(static_cast<unsigned char>(text[pos]))) {
                ++pos;
            } else {
                break;
            }
        }
    };
    auto read_uint = [&](const char* what) {
        skip_space();
        const std::size_t start = pos;
        std::size_t v = 0;
        const auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
        if (ec != std::errc{} || ptr == text.data() + start)
            throw FormatError(src, start, std::string("expected ") + what);
        pos = static_cast<std::size_t>(ptr - text.data());
        return v;
    };

    if (text.compare(0, 2, "P5") != 0) throw FormatError(src, 0, "not a binary PGM (missing P5 magic)");
    pos = 2;
    const std::size_t w = read_uint("width");
    const std::size_t h = read_uint("height");
    const std::size_t maxval_pos = pos;
    const std::size_t maxval = read_uint("maxval");
    if (maxval == 0 || maxval > 255) throw FormatError(src, maxval_pos, "maxval must be in 1..255");
    if (w == 0 || h == 0) throw FormatError(src, 2, "width and height must be positive");
    if (pos >= text.size() || !std::isspace(static_cast<unsigned char>(text[pos])))
        throw FormatError(src, pos, "expected a single whitespace before pixel data");
    ++pos;
    if (text.size() - pos != w * h)
        throw FormatError(src, pos,
                          "pixel data has " + std::to_string(text.size() - pos) + " bytes, expected " +
                              std::to_string(w * h));
    LabelRaster out(w, h);
    std::copy(text.begin() + static_cast<std::ptrdiff_t>(pos), text.end(), out.data.begin());
    return out;
}

std::array<std::uint8_t, 3> class_color(int class_id) noexcept {
    static constexpr std::array<std::array<std::uint8_t, 3>, 3> kFixed = {{{200, 30, 30}, {30, 160, 30}, {30, 60, 200}}};
    static constexpr std::array<std::array<std::uint8_t, 3>, 12> kCycle = {{{230, 160, 20},
                                                                             {140, 60, 180},
                                                                             {20, 180, 180},
                                                                             {220, 90, 160},
                                                                             {120, 120, 120},
                                                                             {160, 110, 50},
                                                                             {250, 230, 80},
                                                                             {90, 200, 90},
                                                                             {100, 140, 250},
                                                                             {250, 140, 110},
                                                                             {60, 100, 60},
                                                                             {240, 240, 240}}};
    if (class_id <= 0) return {0, 0, 0};
    if (class_id <= 3) return kFixed[static_cast<std::size_t>(class_id - 1)];
    return kCycle[static_cast<std::size_t>(class_id - 4) % kCycle.size()];
}

void write_ppm(const fs::path& file, const ClassMap& map) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw ConfigError(file.string() + ": cannot open for writing");
    out << "P6\n" << map.width << ' ' << map.height << "\n255\n";
    std::vector<char> rgb(map.data.size() * 3);
    for (std::size_t i = 0; i < map.data.size(); ++i) {
        const auto c = class_color(map.data[i]);
        for (std::size_t k = 0; k < 3; ++k) rgb[3 * i + k] = static_cast<char>(c[k]);
    }
    out.write(rgb.data(), static_cast<std::streamsize>(rgb.size()));
    if (!out) throw ConfigError(file.string() + ": write failed");
}

// ---------------------------------------------------------------------------
// Models

std::string serialize_wishart(const WishartModel& model) {
    std::ostringstream out;
    out << "polsar-wishart-model 1\n"
        << "looks " << model.looks << '\n'
        << "classes " << model.classes.size() << '\n';
    for (const auto& c : model.classes) {
        out << "class " << c.class_id;
        for (double v : features_of(c.center)) out << ' ' << format_double(v);
        out << '\n';
    }
    return out.str();
}

WishartModel parse_wishart(const std::string& text, const std::string& source) {
    Tokens tok(text, source);
    tok.expect("polsar-wishart-model");
    if (tok.integer<int>() != 1) tok.fail("unsupported model version");
    WishartModel model;
    tok.expect("looks");
    model.looks = tok.integer<int>();
    if (model.looks < 1) tok.fail("looks must be >= 1");
    tok.expect("classes");
    const auto k = tok.integer<std::size_t>();
    if (k == 0) tok.fail("model has no classes");
    for (std::size_t c = 0; c < k; ++c) {
        tok.expect("class");
        const int id = tok.integer<int>();
        if (id < 1 || id > 255) tok.fail("class id must be in 1..255");
        for (const auto& other : model.classes)
            if (other.class_id == id) tok.fail("duplicate class id " + std::to_string(id));
        FeatureVector f;
        for (auto& v : f) v = tok.number();
        try {
            WishartClass cls = make_wishart_class(id, matrix_from_features(f), false);
            const ComplexMatrix3 check = cls.inverse * cls.center.full() - ComplexMatrix3::identity();
            if (check.frobenius_norm() > 1e-8) tok.fail("class center is too ill-conditioned to invert");
            model.classes.push_back(std::move(cls));
        } catch (const DegenerateClassError& e) {
            tok.fail(e.what());
        }
    }
    if (!tok.at_end()) throw FormatError(source, tok.offset(), "trailing content after last class");
    return model;
}

void save_wishart(const fs::path& file, const WishartModel& model) { write_text(file, serialize_wishart(model)); }
WishartModel load_wishart(const fs::path& file) { return parse_wishart(read_text(file), file.string()); }

std::string serialize_svm(const SvmModel& model) {
    std::ostringstream out;
    out << "polsar-svm-model 1\n";
    switch (model.kernel.kind) {
    case KernelKind::Rbf: out << "kernel rbf " << format_double(model.kernel.gamma) << '\n'; break;
    case KernelKind::Polynomial: out << "kernel polynomial " << model.kernel.degree << '\n'; break;
    case KernelKind::Sigmoid: out << "kernel sigmoid\n"; break;
    }
    out << "cost " << format_double(model.cost) << '\n' << "dim " << model.dim << '\n';
    out << "scaler_mean";
    for (double v : model.scaler.mean) out << ' ' << format_double(v);
    out << "\nscaler_std";
    for (double v : model.scaler.stddev) out << ' ' << format_double(v);
    out << "\nscaler_constant";
    for (bool v : model.scaler.constant) out << ' ' << (v ? 1 : 0);
    out << "\nclasses " << model.class_ids.size();
    for (int c : model.class_ids) out << ' ' << c;
    out << "\nmachines " << model.machines.size() << '\n';
    for (const auto& m : model.machines) {
        out << "machine " << m.positive_class << ' ' << m.negative_class << ' ' << m.support_count() << ' '
            << format_double(m.bias) << '\n';
        for (std::size_t i = 0; i < m.support_count(); ++i) {
            out << "sv " << m.y[i] << ' ' << format_double(m.alpha[i]);
            for (std::size_t k = 0; k < model.dim; ++k) out << ' ' << format_double(m.support[i * model.dim + k]);
            out << '\n';
        }
    }
    return out.str();
}

SvmModel parse_svm(const std::string& text, const std::string& source) {
    Tokens tok(text, source);
    tok.expect("polsar-svm-model");
    if (tok.integer<int>() != 1) tok.fail("unsupported model version");
    SvmModel model;
    tok.expect("kernel");
    const std::string kind = tok.word();
    if (kind == "rbf") {
        model.kernel = Kernel::rbf(tok.number());
    } else if (kind == "polynomial") {
        model.kernel = Kernel::polynomial(tok.integer<int>());
    } else if (kind == "sigmoid") {
        model.kernel = Kernel::sigmoid();
    } else {
        tok.fail("unknown kernel '" + kind + "'");
    }
    try {
        model.kernel.validate();
    } catch (const ConfigError& e) {
        tok.fail(e.what());
    }
    tok.expect("cost");
    model.cost = tok.number();
    if (!(model.cost > 0.0)) tok.fail("cost must be > 0");
    tok.expect("dim");
    model.dim = tok.integer<std::size_t>();
    if (model.dim == 0) tok.fail("dim must be positive");

    tok.expect("scaler_mean");
    for (std::size_t k = 0; k < model.dim; ++k) model.scaler.mean.push_back(tok.number());
    tok.expect("scaler_std");
    for (std::size_t k = 0; k < model.dim; ++k) {
        const double sd = tok.number();
        if (!(sd > 0.0)) tok.fail("scaler standard deviation must be > 0");
        model.scaler.stddev.push_back(sd);
    }
    tok.expect("scaler_constant");
    for (std::size_t k = 0; k < model.dim; ++k) {
        const int v = tok.integer<int>();
        if (v != 0 && v != 1) tok.fail("scaler_constant entries must be 0 or 1");
        model.scaler.constant.push_back(v == 1);
    }

    tok.expect("classes");
    const auto k = tok.integer<std::size_t>();
    if (k < 2) tok.fail("an SVM model needs at least two classes");
    for (std::size_t c = 0; c < k; ++c) {
        const int id = tok.integer<int>();
        if (id < 1 || id > 255) tok.fail("class id must be in 1..255");
        if (!model.class_ids.empty() && id <= model.class_ids.back()) tok.fail("class ids must be ascending");
        model.class_ids.push_back(id);
    }
    tok.expect("machines");
    const auto nm = tok.integer<std::size_t>();
    if (nm != k * (k - 1) / 2) tok.fail("expected one machine per class pair");
    for (std::size_t m = 0; m < nm; ++m) {
        tok.expect("machine");
        BinaryMachine bm;
        bm.positive_class = tok.integer<int>();
        bm.negative_class = tok.integer<int>();
        const auto nsv = tok.integer<std::size_t>();
        bm.bias = tok.number();
        for (std::size_t s = 0; s < nsv; ++s) {
            tok.expect("sv");
            const int y = tok.integer<int>();
            if (y != 1 && y != -1) tok.fail("support vector label must be +1 or -1");
            const double a = tok.number();
            if (!(a > 0.0) || a > model.cost * (1.0 + 1e-12)) tok.fail("multiplier outside (0, C]");
            bm.y.push_back(y);
            bm.alpha.push_back(a);
            for (std::size_t d = 0; d < model.dim; ++d) bm.support.push_back(tok.number());
        }
        model.machines.push_back(std::move(bm));
    }
    if (!tok.at_end()) throw FormatError(source, tok.offset(), "trailing content after last machine");
    return model;
}

void save_svm(const fs::path& file, const SvmModel& model) { write_text(file, serialize_svm(model)); }
SvmModel load_svm(const fs::path& file) { return parse_svm(read_text(file), file.string()); }

} // namespace polsar::io
