#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ndstc {

/// Flat "key = value" configuration; '#' starts a comment, blank lines are
/// skipped. Values stay strings until a typed getter parses them.
class Config {
 public:
  Config() = default;
  static Config from_file(const std::string& path);
  static Config from_string(const std::string& text);

  bool has(const std::string& key) const;
  void set(const std::string& key, const std::string& value);

  std::string get_str(const std::string& key, const std::string& dflt) const;
  std::int64_t get_int(const std::string& key, std::int64_t dflt) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t dflt) const;
  double get_double(const std::string& key, double dflt) const;
  bool get_bool(const std::string& key, bool dflt) const;
  /// Comma-separated integers.
  std::vector<std::int64_t> get_int_list(
      const std::string& key, const std::vector<std::int64_t>& dflt) const;
  std::vector<double> get_double_list(const std::string& key,
                                      const std::vector<double>& dflt) const;

  const std::map<std::string, std::string>& entries() const { return kv_; }

  /// FNV-1a over the sorted canonical "key=value\n" listing.
  std::uint64_t hash() const;

 private:
  std::map<std::string, std::string> kv_;
};

/// CSV with '#'-prefixed metadata lines, one header row, then data rows.
/// All numbers go through fixed printf formats and nothing time-dependent
/// is written, so identical runs produce identical bytes.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  ~CsvWriter();

  void meta(const std::string& key, const std::string& value);
  void header(const std::vector<std::string>& cols);
  void row(const std::vector<std::string>& cells);

 private:
  struct Impl;
  Impl* impl_;
};

std::string fmt_g(double v);          // "%.12g"
std::string fmt_u(std::uint64_t v);
std::string fmt_i(std::int64_t v);

struct RunContext {
  Config cfg;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::uint64_t trials_override = 0;  // 0 = use config
};

int cmd_basis(const RunContext& ctx);
int cmd_gain_sweep(const RunContext& ctx);
int cmd_ber(const RunContext& ctx);
int cmd_leakage(const RunContext& ctx);
int cmd_secrecy(const RunContext& ctx);
int cmd_landscape(const RunContext& ctx);

}  // namespace ndstc
