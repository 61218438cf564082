#pragma once
// CSV/JSON interchange for shift rows: one fixed header, 17-significant-digit
// scientific notation, every row re-runnable from its own echo.

#include <iosfwd>
#include <string>
#include <vector>

#include "nlshift/fitting.hpp"
#include "nlshift/perturbation.hpp"

namespace nlshift {

inline constexpr const char* kCsvHeader =
    "system,n,l,m,a,L,eta,nonlinearity,delta_e,delta_e_dimless,err,method,seed,status";

inline constexpr const char* kArtifactVersion = "nlshift 1.0.0";

std::string format_g17(double v);

std::string csv_row(const ScanRow& row);
std::string json_row(const ScanRow& row);  // includes the artifact version string
std::string json_fit(const FitResult& fit);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // index of a named column; throws std::invalid_argument if missing
  std::size_t column(const std::string& name) const;
};

CsvTable read_csv(std::istream& in);

}  // namespace nlshift
