#pragma once

#include <string>

#include "meso/harness.hpp"

namespace meso {

void write_table_csv(const DataTable& table, const std::string& path);

// report.json, data.csv, plotdata_<name>.csv under `dir`
void write_report(const EstimateReport& report, const std::string& dir);

}  // namespace meso
