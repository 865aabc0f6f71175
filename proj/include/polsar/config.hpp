#pragma once

// Flat `key = value` configuration. Blank lines and `#` comments are ignored.
// `class` and `region` may repeat (scene description for `synth`); every other key
// may appear once. Unknown keys are rejected.
//
//   class  = <id> <name> <T11> <T22> <T33> <ReT12> <ImT12> <ReT13> <ImT13> <ReT23> <ImT23>
//   region = <id> <x0> <y0> <width> <height>

#include "polsar/synth.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace polsar {

struct PipelineConfig {
    std::map<std::string, std::vector<std::string>> entries;

    static PipelineConfig parse(const std::string& text, const std::string& source = "<config>");
    static PipelineConfig load(const std::filesystem::path& file);

    /// Keys accepted by the parser.
    static const std::vector<std::string>& known_keys();

    bool has(const std::string& key) const { return entries.count(key) > 0; }
    std::optional<std::string> get(const std::string& key) const;

    /// Scene description from width/height/looks/seed/class/region. Throws ConfigError.
    SceneSpec scene_spec() const;
};

} // namespace polsar
