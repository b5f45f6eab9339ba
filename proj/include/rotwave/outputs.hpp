#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace rotwave {

inline constexpr const char* kVersion = "0.1.0";

struct CsvTable {
  std::string name;  // file name inside the output directory
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

struct Report {
  std::string command;
  nlohmann::json config;   // echo of the configuration
  nlohmann::json results;
  std::vector<CsvTable> tables;
};

struct ManifestEntry {
  std::string file;
  std::string sha256;
  std::uintmax_t bytes = 0;
};

struct Manifest {
  std::vector<ManifestEntry> files;
};

/// Shortest round-trip decimal form used for every CSV number.
std::string csv_number(double v);

std::string sha256_hex(const std::string& data);
std::string sha256_file(const std::string& path);

/// Writes every table, `summary.json` and `manifest.json` (hashes of all
/// other files). Throws IoError with the offending path on failure.
Manifest write_outputs(const Report& report, const std::string& dir);

}  // namespace rotwave
