#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace doi2 {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string note;  // one deterministic line of detail
};

struct ReproReport {
  std::vector<CheckResult> checks;
  std::vector<std::string> io_errors;

  bool all_pass() const;
  // The exact text written to summary.txt (also useful on stdout).
  std::string summary_text() const;
};

// Re-derives every published value the library is supposed to reproduce,
// writing one artifact file per check plus summary.txt under out_dir
// (created if missing).  Artifacts contain no timestamps or machine state,
// so a rerun produces byte-identical files.  IO failures are collected in
// io_errors without aborting the remaining checks.
ReproReport reproduce_all(const std::filesystem::path& out_dir, unsigned workers,
                          unsigned precision_bits = 128);

}  // namespace doi2
