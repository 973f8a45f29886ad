#pragma once

#include "gradedlc/lyubeznik.hpp"

#include "json.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gradedlc {

#ifndef GRADEDLC_VERSION
#define GRADEDLC_VERSION "0.0.0"
#endif

inline constexpr const char* kVersion = GRADEDLC_VERSION;
inline constexpr const char* kReportSchema = "gradedlc-report/1";

enum ExitCode : int { kExitOk = 0, kExitInvalidInput = 2, kExitVerification = 3 };

/// Bad input: file, JSON, flag values. Maps to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ReportWarning {
  std::string code;  // RADICAL_TAKEN, TRUNC_BUMPED, PAPER_TEXT_DISCREPANCY, UNIT_IDEAL
  std::string message;
};

struct Report {
  std::string command;
  nlohmann::ordered_json arguments = nlohmann::ordered_json::object();
  nlohmann::ordered_json input = nullptr;  // canonical ideal + sha256, null for built-in runs
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  std::vector<ReportWarning> warnings;
  std::string text;  // human-readable rendering
  int exit_code = kExitOk;

  void warn(std::string code, std::string message);
  nlohmann::ordered_json to_json() const;
  /// Pretty-printed, newline-terminated; identical bytes for identical inputs.
  std::string json_text() const;
};

struct IdealInput {
  ParsedIdeal parsed;
  std::string source;  // file path or "builtin:..."
  std::string sha256;  // of the raw input bytes
};

std::string sha256_hex(const std::string& bytes);

/// Throws InputError.
IdealInput load_ideal_text(const std::string& text, std::string source, std::size_t max_vars = kDefaultMaxVariables);
IdealInput load_ideal_file(const std::string& path, std::size_t max_vars = kDefaultMaxVariables);
/// "reisner", "three-points", "x1x2", "x1"; hashed through their canonical JSON.
IdealInput builtin_input(const std::string& name);

struct CommandOptions {
  std::optional<Integer> prime;
  bool mixed = false;
  std::optional<unsigned> trunc;
  ExecutionPolicy policy;
};

/// Checks primality; throws InputError.
Integer require_prime(const CommandOptions& opts, const std::string& command);

enum class IteratedAt { n, m };

Report cmd_lc(const IdealInput& in, std::optional<std::size_t> j, std::optional<Mask> cls, const CommandOptions& opts);
Report cmd_support(const IdealInput& in, std::optional<std::size_t> j, const CommandOptions& opts);
Report cmd_bad_primes(const IdealInput& in, const CommandOptions& opts);
Report cmd_lyubeznik(const IdealInput& in, const CommandOptions& opts);
Report cmd_iterated(const IdealInput& in, std::size_t i, std::size_t j, IteratedAt at, const CommandOptions& opts);
/// Built-in Reisner ideal; prime defaults to 2, other primes run in expected-fail mode.
Report cmd_verify_counterexample(const CommandOptions& opts);
Report cmd_oracle_check(const IdealInput& in, const CommandOptions& opts);

nlohmann::ordered_json to_json(const FinAbGroup& g);
nlohmann::ordered_json to_json(const MixedAbGroup& g);
nlohmann::ordered_json to_json(const GradedPrime& q);
nlohmann::ordered_json to_json(const LyubeznikTable& t);
std::string render_table(const LyubeznikTable& t);

}  // namespace gradedlc
