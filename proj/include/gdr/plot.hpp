#pragma once

#include <filesystem>
#include <string>

#include "gdr/dataset.hpp"

namespace gdr {

/// 800x800 SVG scatter of the 2-D PCA view of the points, coloured by class
/// id modulo a fixed 10-colour palette. Byte-identical for identical input.
std::string render_svg(const LabeledDataset& data);

void emit_svg(const LabeledDataset& data, const std::filesystem::path& path);

} // namespace gdr
