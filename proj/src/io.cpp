#include "meso/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace meso {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

}  // namespace

void write_table_csv(const DataTable& table, const std::string& path) {
  std::ofstream out = open_out(path);
  for (std::size_t c = 0; c < table.header.size(); ++c)
    out << (c ? "," : "") << table.header[c];
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      out << (c ? "," : "") << format_double(row[c]);
    out << "\n";
  }
}

void write_report(const EstimateReport& report, const std::string& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out = open_out(dir + "/report.json");
    out << report.full_json().dump(2) << "\n";
  }
  if (!report.raw.header.empty())
    write_table_csv(report.raw, dir + "/data.csv");
  for (const auto& [name, table] : report.plots)
    write_table_csv(table, dir + "/plotdata_" + name + ".csv");
}

void write_spectrum(const Spectrum& spectrum, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::string base = dir + "/" + spectrum_basename(spectrum.spec);
  {
    std::ofstream out = open_out(base + ".csv");
    for (const double ev : spectrum.eigenvalues)
      out << format_double(ev) << "\n";
  }
  nlohmann::ordered_json j;
  j["kind"] = to_string(spectrum.spec.kind);
  j["n"] = spectrum.spec.n;
  j["seed"] = spectrum.spec.seed;
  j["sample_index"] = spectrum.spec.sample_index;
  std::ofstream out = open_out(base + ".json");
  out << j.dump(2) << "\n";
}

}  // namespace meso
