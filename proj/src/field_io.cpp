#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "orlicz/csv.hpp"
#include "orlicz/grid.hpp"

namespace orlicz {

namespace csv {

std::string format_number(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_number(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
    text.remove_suffix(1);
  if (text == "inf" || text == "+inf") return kInf;
  if (text == "-inf") return -kInf;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || std::isnan(v))
    throw Error("csv: malformed number '" + std::string(text) + "'");
  return v;
}

std::vector<std::string_view> split_row(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  os << content;
  os.flush();
  if (!os) throw Error("failed writing '" + path + "'");
}

}  // namespace csv

std::string format_field_csv(const SampledField& field, const GridDomain& domain) {
  if (field.cell_count() != domain.cell_count())
    throw Error("field does not match the domain's masked cell count");
  std::ostringstream os;
  const std::size_t n = domain.dimension();
  for (std::size_t a = 0; a < n; ++a) os << (a ? "," : "") << 'i' << a;
  for (std::size_t k = 0; k < field.components(); ++k) os << ",c" << k;
  os << '\n';
  for (std::size_t c = 0; c < field.cell_count(); ++c) {
    const auto idx = domain.index(c);
    for (std::size_t a = 0; a < n; ++a) os << (a ? "," : "") << idx[a];
    for (double v : field.row(c)) os << ',' << csv::format_number(v);
    os << '\n';
  }
  return os.str();
}

void write_field_csv(const SampledField& field, const GridDomain& domain, const std::string& path) {
  csv::write_file(path, format_field_csv(field, domain));
}

SampledField read_field_csv(const std::string& path, const GridDomain& domain) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(is, line)) throw Error("field csv: missing header");
  const auto header = csv::split_row(line);
  const std::size_t n = domain.dimension();
  if (header.size() <= n) throw Error("field csv: header has no component columns");
  for (std::size_t a = 0; a < n; ++a)
    if (header[a] != "i" + std::to_string(a)) throw Error("field csv: expected index column i" + std::to_string(a));
  const std::size_t d = header.size() - n;

  std::vector<double> values(domain.cell_count() * d);
  std::size_t cell = 0;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    const auto cols = csv::split_row(line);
    if (cols.size() != n + d) throw Error("field csv: row has wrong column count");
    if (cell >= domain.cell_count()) throw Error("field csv: more rows than masked cells");
    const auto idx = domain.index(cell);
    for (std::size_t a = 0; a < n; ++a) {
      if (csv::parse_number(cols[a]) != static_cast<double>(idx[a]))
        throw Error("field csv: row index does not match the grid's masked cell order");
    }
    for (std::size_t k = 0; k < d; ++k) values[cell * d + k] = csv::parse_number(cols[n + k]);
    ++cell;
  }
  if (cell != domain.cell_count()) throw Error("field csv: fewer rows than masked cells");
  return SampledField(domain.cell_count(), d, std::move(values));
}

}  // namespace orlicz
