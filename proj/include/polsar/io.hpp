#pragma once

// On-disk formats. A dataset is a directory holding `header.txt` plus one raw little-endian
// float32 plane per component, row-major, 4*width*height bytes each.
//
//   header.txt:   polsar-dataset 1
//                 kind t3|slc|haa
//                 width <int>
//                 height <int>
//                 looks <int>
//                 byte_order little_endian
//                 [seed <uint64>] [rng <name>] [nodata <float>]
//
//   t3 planes:  T11 T22 T33 T12_real T12_imag T13_real T13_imag T23_real T23_imag
//   slc planes: HH_real HH_imag HV_real HV_imag VV_real VV_imag
//   haa planes: entropy anisotropy alpha  (alpha in degrees; invalid pixels hold `nodata`)
//
// Each plane is stored as `<name>.bin`.

#include "polsar/core.hpp"
#include "polsar/decomposition.hpp"
#include "polsar/labels.hpp"
#include "polsar/speckle.hpp"
#include "polsar/svm.hpp"
#include "polsar/wishart.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace polsar::io {

namespace fs = std::filesystem;

inline constexpr std::array<const char*, 9> kT3Planes = {"T11",      "T22",      "T33",      "T12_real", "T12_imag",
                                                         "T13_real", "T13_imag", "T23_real", "T23_imag"};
inline constexpr std::array<const char*, 6> kSlcPlanes = {"HH_real", "HH_imag", "HV_real",
                                                          "HV_imag", "VV_real", "VV_imag"};
inline constexpr std::array<const char*, 3> kHaaPlanes = {"entropy", "anisotropy", "alpha"};
inline constexpr float kHaaNoData = -9999.0f;

enum class DatasetKind { T3, Slc, Haa };

struct DatasetHeader {
    DatasetKind kind = DatasetKind::T3;
    std::size_t width = 0;
    std::size_t height = 0;
    int looks = 1;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> rng;
    std::optional<float> nodata;
};

DatasetHeader read_header(const fs::path& dir);
void write_header(const fs::path& dir, const DatasetHeader& h);

/// Raw float32 plane I/O. Reading checks the exact byte size.
std::vector<float> read_plane(const fs::path& file, std::size_t count);
void write_plane(const fs::path& file, const std::vector<float>& values);

/// Values are rounded to float32. Matrices whose rounding pushed an eigenvalue slightly
/// negative are projected back onto the PSD cone on read.
void write_t3(const fs::path& dir, const CoherencyRaster& raster, std::optional<std::uint64_t> seed = {});
CoherencyRaster read_t3(const fs::path& dir);

void write_slc(const fs::path& dir, const SlcRaster& slc, std::optional<std::uint64_t> seed = {});
SlcRaster read_slc(const fs::path& dir);

void write_haa(const fs::path& dir, const HaaRaster& haa);
HaaRaster read_haa(const fs::path& dir);

/// Binary PGM (P5, maxval 255). 0 = unlabeled.
void write_pgm(const fs::path& file, const LabelRaster& labels);
LabelRaster read_pgm(const fs::path& file);

/// Class colors: 1 red, 2 green, 3 blue, then a 12-color cycle. 0 is black.
std::array<std::uint8_t, 3> class_color(int class_id) noexcept;
/// Binary PPM (P6) rendering of a class map using class_color.
void write_ppm(const fs::path& file, const ClassMap& map);

std::string serialize_wishart(const WishartModel& model);
WishartModel parse_wishart(const std::string& text, const std::string& source = "<wishart>");
void save_wishart(const fs::path& file, const WishartModel& model);
WishartModel load_wishart(const fs::path& file);

std::string serialize_svm(const SvmModel& model);
SvmModel parse_svm(const std::string& text, const std::string& source = "<svm>");
void save_svm(const fs::path& file, const SvmModel& model);
SvmModel load_svm(const fs::path& file);

std::string read_text(const fs::path& file);
void write_text(const fs::path& file, const std::string& text);

/// Shortest round-trip decimal form (at least 17 significant digits when needed).
std::string format_double(double v);

} // namespace polsar::io
