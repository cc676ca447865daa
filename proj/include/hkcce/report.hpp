#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hkcce/compactification.hpp"
#include "hkcce/hk_verifier.hpp"
#include "hkcce/jet_algebra.hpp"
#include "hkcce/scattering.hpp"

namespace hkcce {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes to a temporary sibling and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// A JSON number rounded to 15 significant digits; null for NaN or infinity.
nlohmann::json json_number(double x);

nlohmann::json to_json(const VerificationReport& r);
nlohmann::json to_json(const ScatteringResult& r, double oracle);
nlohmann::json to_json(const ResidualSuite& s, int n, double gamma, double k);
/// Exact rationals are written as "p/q" strings.
nlohmann::json to_json(const jets::Prop21Certificate& c);
nlohmann::json to_json(const jets::IntegralClass& c);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void add_row(std::vector<std::string> row);
  std::size_t rows() const { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Fixed-format cell for doubles (15 significant digits).
std::string cell(double x);
std::string cell(int x);

/// Pretty JSON with a trailing newline.
std::string dump(const nlohmann::json& j);

}  // namespace hkcce
