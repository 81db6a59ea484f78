#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ietlab/serialize.hpp"

namespace ietlab {

// Invalid configuration or flags. The tool maps this to exit code 2;
// library errors raised while a task runs map to exit code 1.
struct UsageError : Error {
  explicit UsageError(const std::string& m) : Error("usage-error", m) {}
};

// The two-interval exchange rotating by the golden mean, the default
// subject when a config names no exchange.
Iet golden_rotation();

const std::vector<std::string>& task_names();

struct ExperimentConfig {
  Json document;      // effective config, defaults merged in
  std::string task;
  std::string out_dir;
  std::string mode;   // "exact" or "float"
  std::uint64_t seed = 0;
  int threads = 1;
};

// Validates a raw config document (flag overrides already applied) and
// fills in defaults. Throws UsageError on any shape problem, including a
// malformed exchange description or an unknown task name.
ExperimentConfig make_config(const Json& document);

// The exchange the config describes.
Iet config_iet(const ExperimentConfig& config);

// FNV-1a 64 over the canonical dump, as 16 hex digits. Output paths and
// thread counts are excluded before hashing, so the hash identifies the
// mathematical content of a run.
std::string config_hash(const Json& document);

// Executes the task, writing <task>.json, <task>.csv where the task has a
// table, and metadata.json under out_dir. Returns 0 on success. A library
// error becomes a structured error.json (plus any partial payload) and
// exit status 1. Usage problems, including an unusable output directory,
// throw UsageError. Logs go to stderr only.
int run(const ExperimentConfig& config);

struct VerifyResult {
  std::string property;
  bool pass = false;
  std::string note;
};

struct VerifyReport {
  std::vector<VerifyResult> results;
  bool all_pass() const;
};

// Cross-module consistency checks on fixed instances: the renormalization
// step against a direct first-return computation, the return-time tiling
// identity, the trace-map invariant, hull invariance of band spectra, and
// containment of tower-certified periods in the direct scan. Two negative
// controls must surface their errors without stopping the suite. One line
// per property goes to `log`.
VerifyReport verify_suite(std::ostream& log);

}  // namespace ietlab
