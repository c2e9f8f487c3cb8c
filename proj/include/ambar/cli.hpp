#pragma once

// Command-line front end. Every command produces a JSON document; table and
// CSV output are renderings of that document.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "ambar/inverse.hpp"
#include "ambar/json_io.hpp"
#include "json.hpp"

namespace ambar::cli {

/// Bad flags or a config missing a command-specific field. Exit status 2.
class UsageError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string command;  ///< charpoly | spectrum | floquet-spectrum | verify | solve-amb3 | oracle-scan | counterexample
  MatrixSpec matrix;
  std::optional<double> phi;
  std::optional<std::size_t> k;
  std::optional<double> lambda_k;
  std::optional<double> lambda_k1;
  std::string theorem;  ///< for verify: amb1 | nzbc | amb2 | amb3 | counterexample | lemma | factorization
  std::size_t trials = 1;
  Tolerances tol;
  std::uint64_t seed = 0;
  bool exact = false;
  GridSpec grid;
  std::string format = "json";  ///< json | csv | table
  int precision = 12;
  std::string out;
};

void to_json(nlohmann::json& j, const RunConfig& c);
void from_json(const nlohmann::json& j, RunConfig& c);

struct RunResult {
  int exit_code = 0;  ///< 0 success/confirmed, 1 violated
  nlohmann::json output;
};

/// Runs one command. Throws UsageError on invalid configurations.
RunResult execute(const RunConfig& config);

/// Renders a result document in the requested format.
std::string render(const nlohmann::json& doc, const std::string& format, int precision);

struct BatchSummary {
  std::size_t runs = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t invalid = 0;
};

/// Executes newline-delimited JSON configs; writes one compact result object
/// per non-blank line in input order, then a summary line.
BatchSummary run_batch(std::istream& in, std::ostream& out, unsigned workers = 0);

/// Entry point used by the executable; returns the process exit status.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace ambar::cli
