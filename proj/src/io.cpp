#include "hlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace hlab {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void csv_header(std::ostream& os, const std::string& kind, const std::vector<std::string>& columns) {
  os << "# hlab-csv v" << csv_schema_version << ' ' << kind << '\n';
  for (size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
}

void write_pgm(const std::string& path, int width, int height, const std::vector<std::uint8_t>& pixels) {
  if (pixels.size() != size_t(width) * size_t(height)) throw std::invalid_argument("pgm: pixel count mismatch");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << "P5\n" << width << ' ' << height << "\n255\n";
  f.write(reinterpret_cast<const char*>(pixels.data()), std::streamsize(pixels.size()));
}

}  // namespace hlab
