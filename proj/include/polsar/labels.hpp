#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace polsar {

/// Per-pixel integer labels, row-major. For training/ground-truth masks 0 means unlabeled;
/// for class maps every pixel holds a class in 1..K.
struct LabelRaster {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> data;

    LabelRaster() = default;
    LabelRaster(std::size_t w, std::size_t h, std::uint8_t fill = 0) : width(w), height(h), data(w * h, fill) {}

    std::uint8_t& at(std::size_t x, std::size_t y) noexcept { return data[y * width + x]; }
    std::uint8_t at(std::size_t x, std::size_t y) const noexcept { return data[y * width + x]; }
    std::uint8_t max_label() const noexcept;
};

using LabelMask = LabelRaster;
using ClassMap = LabelRaster;

/// Throws ConfigError unless mask dimensions match and labels 1..max_label each occur at least once.
void check_label_mask(const LabelMask& mask, std::size_t width, std::size_t height);

} // namespace polsar
