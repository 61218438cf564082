#include "nlshift/records.hpp"

#include <cstdio>
#include <istream>
#include <sstream>

#include "json.hpp"

namespace nlshift {

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_row(const ScanRow& row) {
  std::ostringstream os;
  os << to_string(row.system) << ',' << row.n << ',' << row.l << ',' << row.m << ','
     << format_g17(row.a) << ',' << format_g17(row.L) << ',' << format_g17(row.eta) << ','
     << to_string(row.kind) << ',' << format_g17(row.result.delta_e) << ','
     << format_g17(row.result.delta_e_dimensionless) << ','
     << format_g17(row.result.err_estimate) << ',' << to_string(row.result.method) << ','
     << row.seed << ',';
  // keep the status a single CSV token
  std::string status = row.status;
  for (char& c : status)
    if (c == ',' || c == '\n') c = ';';
  os << status;
  return os.str();
}

std::string json_row(const ScanRow& row) {
  nlohmann::json j;
  j["system"] = to_string(row.system);
  j["n"] = row.n;
  j["l"] = row.l;
  j["m"] = row.m;
  j["a"] = row.a;
  j["L"] = row.L;
  j["eta"] = row.eta;
  j["nonlinearity"] = to_string(row.kind);
  j["delta_e"] = row.result.delta_e;
  j["delta_e_dimless"] = row.result.delta_e_dimensionless;
  j["err"] = row.result.err_estimate;
  j["method"] = to_string(row.result.method);
  j["seed"] = row.seed;
  j["status"] = row.status;
  j["evaluations"] = row.result.evaluations;
  j["version"] = kArtifactVersion;
  return j.dump();
}

std::string json_fit(const FitResult& fit) {
  nlohmann::json j;
  j["exponent"] = fit.exponent;
  j["exponent_stderr"] = fit.exponent_stderr;
  j["coefficient"] = fit.coefficient;
  j["coefficient_stderr"] = fit.coefficient_stderr;
  j["r_squared"] = fit.r_squared;
  j["n_points"] = fit.n_points;
  j["sign"] = fit.sign;
  j["version"] = kArtifactVersion;
  return j.dump();
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw std::invalid_argument("csv: no column named '" + name + "'");
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!ss && line.back() == ',') fields.push_back("");
    if (first) {
      table.header = fields;
      first = false;
    } else {
      table.rows.push_back(fields);
    }
  }
  if (table.header.empty()) throw std::invalid_argument("csv: empty input");
  return table;
}

}  // namespace nlshift
