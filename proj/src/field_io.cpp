#include "nudge2d/field_io.hpp"

#include <fstream>
#include <vector>

#include "binary_io.hpp"
#include "nudge2d/errors.hpp"

namespace nudge2d {

void write_nfld(std::ostream& os, const PhysicalField& field) {
  os.write("NFLD", 4);
  detail::put_le<std::uint32_t>(os, static_cast<std::uint32_t>(field.n()));
  detail::put_le<std::uint32_t>(os, 0u);
  detail::put_le<std::uint32_t>(os, 0u);
  for (double v : field.values()) detail::put_f64(os, v);
  if (!os) throw FormatError("failed writing NFLD stream");
}

PhysicalField read_nfld(std::istream& is) {
  detail::expect_magic(is, "NFLD");
  const auto n = detail::get_le<std::uint32_t>(is, "NFLD size");
  detail::get_le<std::uint32_t>(is, "NFLD reserved word");
  detail::get_le<std::uint32_t>(is, "NFLD reserved word");
  if (n < 8 || n > (1u << 16) || (n & (n - 1)) != 0) {
    throw FormatError("NFLD grid size " + std::to_string(n) + " is not a power of two >= 8");
  }
  const Grid grid(static_cast<int>(n));
  std::vector<double> values(grid.nodes());
  for (double& v : values) v = detail::get_f64(is, "NFLD values");
  return PhysicalField(grid, std::move(values));
}

void write_nfld(const std::filesystem::path& path, const PhysicalField& field) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot open " + path.string() + " for writing");
  write_nfld(os, field);
}

PhysicalField read_nfld(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open " + path.string());
  return read_nfld(is);
}

void write_pbm(const std::filesystem::path& path, const Mask& mask) {
  std::ofstream os(path);
  if (!os) throw FormatError("cannot open " + path.string() + " for writing");
  const int n = mask.n();
  os << "P1\n" << n << ' ' << n << '\n';
  for (int iy = n - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < n; ++ix) {
      os << (mask.at(ix, iy) ? '1' : '0') << (ix + 1 < n ? " " : "");
    }
    os << '\n';
  }
}

}  // namespace nudge2d
