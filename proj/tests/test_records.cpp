#include "doctest.h"

#include <sstream>

#include "nlshift/records.hpp"

using namespace nlshift;

namespace {

ScanRow sample_row() {
  ScanRow row;
  row.index = 3;
  row.system = System::SHO;
  row.n = 4;
  row.a = 300.0;
  row.L = -1.0;
  row.eta = 0.25;
  row.kind = NonlinearityKind::info_theoretic;
  row.seed = 12345;
  row.result.delta_e = -1.2345678901234567e-9;
  row.result.delta_e_dimensionless = -1.111111111111111e-4;
  row.result.err_estimate = 3.3e-15;
  row.result.method = ShiftMethod::quadrature;
  return row;
}

}  // namespace

TEST_CASE("csv row carries 17 significant digits and round-trips the value") {
  const std::string line = csv_row(sample_row());
  std::stringstream ss(std::string(kCsvHeader) + "\n" + line + "\n");
  const CsvTable table = read_csv(ss);
  REQUIRE(table.rows.size() == 1);
  CHECK(table.header.size() == 14);
  const double back = std::stod(table.rows[0][table.column("delta_e")]);
  CHECK(back == -1.2345678901234567e-9);  // bit-exact after the round trip
  CHECK(table.rows[0][table.column("system")] == "sho");
  CHECK(table.rows[0][table.column("nonlinearity")] == "info");
  CHECK(table.rows[0][table.column("seed")] == "12345");
  CHECK(table.rows[0][table.column("status")] == "ok");
}

TEST_CASE("csv status never breaks the column count") {
  ScanRow row = sample_row();
  row.status = "error: bad, very bad\nnewline";
  const std::string line = csv_row(row);
  std::stringstream ss(std::string(kCsvHeader) + "\n" + line + "\n");
  const CsvTable table = read_csv(ss);
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows[0].size() == 14);
}

TEST_CASE("json row echoes every input and the artifact version") {
  const std::string j = json_row(sample_row());
  CHECK(j.find("\"system\":\"sho\"") != std::string::npos);
  CHECK(j.find("\"seed\":12345") != std::string::npos);
  CHECK(j.find("nlshift") != std::string::npos);
}

TEST_CASE("missing columns are reported") {
  std::stringstream ss("a,b\n1,2\n");
  const CsvTable table = read_csv(ss);
  CHECK(table.column("a") == 0);
  CHECK_THROWS_AS(table.column("nope"), std::invalid_argument);
}
