#pragma once

#include <filesystem>
#include <iosfwd>

#include "nudge2d/fields.hpp"

namespace nudge2d {

// NFLD snapshot layout (all little-endian):
//   bytes 0-3   magic "NFLD"
//   bytes 4-7   u32 n
//   bytes 8-15  two u32 reserved words (0)
//   bytes 16-   n*n float64 values, row-major (y outermost)

void write_nfld(std::ostream& os, const PhysicalField& field);
PhysicalField read_nfld(std::istream& is);

void write_nfld(const std::filesystem::path& path, const PhysicalField& field);
PhysicalField read_nfld(const std::filesystem::path& path);

/// Plain (P1) portable bitmap; row 0 of the image is the top (largest y).
void write_pbm(const std::filesystem::path& path, const Mask& mask);

}  // namespace nudge2d
