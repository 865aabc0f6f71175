#include "polsar/config.hpp"

#include "polsar/errors.hpp"
#include "polsar/io.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace polsar {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename T> T parse_value(const std::string& key, const std::string& text) {
    T v{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw ConfigError("config: invalid value '" + text + "' for " + key);
    return v;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

} // namespace

const std::vector<std::string>& PipelineConfig::known_keys() {
    static const std::vector<std::string> keys = {
        "input", "output", "slc",  "mask",   "truth", "predicted", "model",  "map",    "csv",
        "names", "mode",   "window", "enl",  "kernel", "gamma",   "cost",   "degree", "seed",
        "width", "height", "looks", "train_per_class", "train_mask", "class", "region"};
    return keys;
}

PipelineConfig PipelineConfig::parse(const std::string& text, const std::string& source) {
    PipelineConfig cfg;
    const auto& keys = known_keys();
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t line_start = pos;
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(pos, end - pos);
        pos = end + 1;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        if (trim(line).empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos) throw FormatError(source, line_start, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            throw FormatError(source, line_start, "unknown key '" + key + "'");
        if (value.empty()) throw FormatError(source, line_start, "empty value for '" + key + "'");
        auto& slot = cfg.entries[key];
        if (!slot.empty() && key != "class" && key != "region")
            throw FormatError(source, line_start, "duplicate key '" + key + "'");
        slot.push_back(value);
    }
    return cfg;
}

PipelineConfig PipelineConfig::load(const std::filesystem::path& file) {
    return parse(io::read_text(file), file.string());
}

std::optional<std::string> PipelineConfig::get(const std::string& key) const {
    const auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    return it->second.front();
}

SceneSpec PipelineConfig::scene_spec() const {
    SceneSpec spec;
    auto required = [&](const std::string& key) {
        const auto v = get(key);
        if (!v) throw ConfigError("config: scene needs '" + key + "'");
        return *v;
    };
    spec.width = parse_value<std::size_t>("width", required("width"));
    spec.height = parse_value<std::size_t>("height", required("height"));
    spec.looks = get("looks") ? parse_value<int>("looks", *get("looks")) : 9;
    spec.seed = get("seed") ? parse_value<std::uint64_t>("seed", *get("seed")) : 0;

    if (!has("class")) throw ConfigError("config: scene needs at least one 'class' line");
    for (const auto& line : entries.at("class")) {
        const auto w = split_ws(line);
        if (w.size() != 11) throw ConfigError("config: class line needs id, name and 9 matrix values: '" + line + "'");
        SceneClass c;
        c.class_id = parse_value<int>("class", w[0]);
        c.name = w[1];
        FeatureVector f;
        for (std::size_t k = 0; k < 9; ++k) f[k] = parse_value<double>("class", w[2 + k]);
        c.center = matrix_from_features(f);
        spec.classes.push_back(std::move(c));
    }
    if (has("region")) {
        for (const auto& line : entries.at("region")) {
            const auto w = split_ws(line);
            if (w.size() != 5) throw ConfigError("config: region line needs id x0 y0 width height: '" + line + "'");
            const int id = parse_value<int>("region", w[0]);
            auto it = std::find_if(spec.classes.begin(), spec.classes.end(),
                                   [&](const SceneClass& c) { return c.class_id == id; });
            if (it == spec.classes.end()) throw ConfigError("config: region refers to undeclared class " + w[0]);
            it->regions.push_back({parse_value<std::size_t>("region", w[1]), parse_value<std::size_t>("region", w[2]),
                                   parse_value<std::size_t>("region", w[3]),
                                   parse_value<std::size_t>("region", w[4])});
        }
    }
    spec.validate();
    return spec;
}

} // namespace polsar
