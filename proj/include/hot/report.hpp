#pragma once

// One flat record per run.
//
// JSON: a single object. Fixed keys first:
//   "schema": "hotlab.report/1", "operation", "d", "n", "seed" (decimal string or null),
//   "status" ("ok", "pass", "fail", "partial")
// then the run's own fields in emission order (counts are decimal strings,
// rationals are "p/q" strings, flags are booleans, display-only floats are
// numbers), and finally "wall_time_s".
//
// CSV: columns schema,operation,d,n,seed,status,fields,wall_time_s where
// `fields` joins the run's own fields as key=value with ';'.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hot/counting.hpp"

namespace hot {

inline constexpr const char* report_schema = "hotlab.report/1";

class Report {
 public:
  using json = nlohmann::ordered_json;

  explicit Report(std::string operation) : operation_(std::move(operation)), start_(Clock::now()) {}

  Report& shape(std::uint32_t d, std::uint64_t n) {
    d_ = d;
    n_ = n;
    return *this;
  }
  Report& seed(std::uint64_t s) {
    seed_ = s;
    return *this;
  }
  Report& status(std::string s) {
    status_ = std::move(s);
    return *this;
  }

  Report& count(const std::string& key, const BigInt& v) { return put(key, v.str()); }
  Report& count(const std::string& key, std::uint64_t v) { return put(key, std::to_string(v)); }
  Report& fraction(const std::string& key, const Rational& r) { return put(key, to_fraction_string(r)); }
  Report& text(const std::string& key, std::string v) { return put(key, std::move(v)); }
  Report& flag(const std::string& key, bool v) { return put(key, v); }
  Report& real(const std::string& key, double v) { return put(key, v); }

  const std::string& operation() const { return operation_; }
  const std::string& status() const { return status_; }
  std::optional<std::uint64_t> seed() const { return seed_; }

  /// Looks up a field value as its JSON form (null if absent).
  json field(const std::string& key) const {
    for (const auto& [k, v] : fields_)
      if (k == key) return v;
    return nullptr;
  }

  /// Freezes the wall time; later calls keep the first measurement.
  void stop() {
    if (!wall_) wall_ = std::chrono::duration<double>(Clock::now() - start_).count();
  }

  json to_json() {
    stop();
    json j;
    j["schema"] = report_schema;
    j["operation"] = operation_;
    j["d"] = d_;
    j["n"] = n_;
    j["seed"] = seed_ ? json(std::to_string(*seed_)) : json(nullptr);
    j["status"] = status_;
    for (const auto& [k, v] : fields_) j[k] = v;
    j["wall_time_s"] = *wall_;
    return j;
  }

  static std::string csv_header() { return "schema,operation,d,n,seed,status,fields,wall_time_s"; }

  std::string to_csv_row() {
    stop();
    std::string joined;
    for (const auto& [k, v] : fields_) {
      if (!joined.empty()) joined += ';';
      joined += k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
    }
    std::ostringstream row;
    row << report_schema << ',' << operation_ << ',' << d_ << ',' << n_ << ','
        << (seed_ ? std::to_string(*seed_) : std::string()) << ',' << status_ << ',' << quote(joined) << ','
        << *wall_;
    return row.str();
  }

  /// Appends one row, writing the header first if the file is new or empty.
  void append_csv(const std::filesystem::path& path) {
    const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
    std::ofstream out(path, std::ios::app);
    if (!out) throw format_error("cannot append to " + path.string());
    if (fresh) out << csv_header() << '\n';
    out << to_csv_row() << '\n';
  }

  void print_table(std::ostream& os) {
    stop();
    os << operation_ << "  [" << status_ << "]\n";
    os << "  d = " << d_ << "\n  n = " << n_ << "\n";
    if (seed_) os << "  seed = " << *seed_ << "\n";
    for (const auto& [k, v] : fields_) os << "  " << k << " = " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    os << "  wall_time_s = " << *wall_ << "\n";
  }

 private:
  using Clock = std::chrono::steady_clock;

  Report& put(const std::string& key, json v) {
    for (auto& [k, old] : fields_)
      if (k == key) {
        old = std::move(v);
        return *this;
      }
    fields_.emplace_back(key, std::move(v));
    return *this;
  }

  static std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  }

  std::string operation_;
  std::uint32_t d_ = 0;
  std::uint64_t n_ = 0;
  std::optional<std::uint64_t> seed_;
  std::string status_ = "ok";
  std::vector<std::pair<std::string, json>> fields_;
  Clock::time_point start_;
  std::optional<double> wall_;
};

}  // namespace hot
