#include <filesystem>
#include <sstream>

#include "orlicz/csv.hpp"
#include "orlicz/experiments.hpp"

namespace orlicz {

std::string format_csv(const ConvergenceTable& table) {
  if (table.rows().empty()) throw Error("emit_csv: table '" + table.id() + "' is empty");
  std::ostringstream os;
  os << "n,p_n,quantity,reference,abs_error\n";
  for (const auto& row : table.rows()) {
    os << row.n << ',' << csv::format_number(row.p_n) << ',' << csv::format_number(row.quantity) << ','
       << csv::format_number(row.reference) << ',' << csv::format_number(row.abs_error) << '\n';
  }
  return os.str();
}

void emit_csv(const ConvergenceTable& table, const std::string& path) {
  csv::write_file(path, format_csv(table));
}

std::vector<std::string> emit_experiment(const ExperimentResult& result, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir + "': " + ec.message());
  std::vector<std::string> paths;
  for (const auto& table : result.tables) {
    const auto path = (std::filesystem::path(dir) / (table.id() + ".csv")).string();
    emit_csv(table, path);
    paths.push_back(path);
  }
  return paths;
}

namespace {
std::string csv_quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}
}  // namespace

std::string format_index(const std::vector<ExperimentResult>& results) {
  std::ostringstream os;
  os << "experiment,status,hypotheses,config,tables\n";
  for (const auto& r : results) {
    std::string config;
    for (const auto& [k, v] : r.config) {
      if (!config.empty()) config += ';';
      config += k + '=' + v;
    }
    std::string tables;
    for (const auto& t : r.tables) {
      if (!tables.empty()) tables += ';';
      tables += t.id() + ".csv";
    }
    os << r.id << ',' << to_string(r.status) << ',' << (r.hypotheses_hold ? "hold" : "fail") << ','
       << csv_quoted(config) << ',' << csv_quoted(tables) << '\n';
  }
  return os.str();
}

}  // namespace orlicz
