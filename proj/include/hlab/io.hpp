#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hlab {

constexpr int csv_schema_version = 1;

// Round-trip exact text for a double.
std::string num(double v);

// "# hlab-csv v1 <kind>" followed by the column line.
void csv_header(std::ostream& os, const std::string& kind, const std::vector<std::string>& columns);

// 8-bit portable graymap, row-major, width*height bytes.
void write_pgm(const std::string& path, int width, int height, const std::vector<std::uint8_t>& pixels);

}  // namespace hlab
