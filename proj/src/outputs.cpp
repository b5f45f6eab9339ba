#include "rotwave/outputs.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rotwave/errors.hpp"

namespace rotwave {

namespace fs = std::filesystem;

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 computation failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xF]);
  }
  return out;
}

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) throw IoError("cannot read '" + p.string() + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + p.string() + "' for writing");
  f << content;
  f.flush();
  if (!f) throw IoError("write to '" + p.string() + "' failed");
}

std::string render_csv(const CsvTable& t) {
  std::string s;
  for (std::size_t i = 0; i < t.header.size(); ++i) s += (i ? "," : "") + t.header[i];
  s += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) s += ",";
      s += csv_number(row[i]);
    }
    s += "\n";
  }
  return s;
}

}  // namespace

std::string sha256_file(const std::string& path) { return sha256_hex(read_file(path)); }

Manifest write_outputs(const Report& report, const std::string& dir) {
  const fs::path root(dir);
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());

  Manifest m;
  auto add = [&](const std::string& name, const std::string& content) {
    write_file(root / name, content);
    m.files.push_back({name, sha256_hex(content), content.size()});
  };

  for (const auto& t : report.tables) {
    if (t.name.empty() || t.name.find('/') != std::string::npos)
      throw IoError("invalid table file name '" + t.name + "'");
    add(t.name, render_csv(t));
  }

  nlohmann::json summary;
  summary["command"] = report.command;
  summary["version"] = kVersion;
  summary["config"] = report.config;
  summary["results"] = report.results;
  add("summary.json", summary.dump(2) + "\n");

  nlohmann::json man = nlohmann::json::array();
  for (const auto& e : m.files)
    man.push_back({{"file", e.file}, {"sha256", e.sha256}, {"bytes", e.bytes}});
  write_file(root / "manifest.json", nlohmann::json{{"files", man}}.dump(2) + "\n");
  return m;
}

}  // namespace rotwave
