#include "polsar/labels.hpp"

#include "polsar/errors.hpp"

#include <algorithm>
#include <string>

namespace polsar {

std::uint8_t LabelRaster::max_label() const noexcept {
    return data.empty() ? 0 : *std::max_element(data.begin(), data.end());
}

void check_label_mask(const LabelMask& mask, std::size_t width, std::size_t height) {
    if (mask.width != width || mask.height != height)
        throw ConfigError("label mask is " + std::to_string(mask.width) + "x" + std::to_string(mask.height) +
                          ", raster is " + std::to_string(width) + "x" + std::to_string(height));
    if (mask.data.size() != width * height) throw ConfigError("label mask: data length != width*height");
    std::vector<bool> seen(static_cast<std::size_t>(mask.max_label()) + 1, false);
    for (auto l : mask.data) seen[l] = true;
    for (std::size_t c = 1; c < seen.size(); ++c)
        if (!seen[c]) throw MissingClassError("label mask: class " + std::to_string(c) + " has no pixels");
}

} // namespace polsar
