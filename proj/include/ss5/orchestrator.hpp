#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ss5/certificate.hpp"

namespace ss5::run {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kBudget = 3, kInterrupted = 130 };

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Config {
  std::uint64_t budget = kDefaultBudget;
  int max_extension = m8::kDefaultMaxExtension;
  int jobs = 1;
  std::string checkpoint_path;
  std::string output_path;
  std::uint64_t seed = 0;
  std::uint64_t checkpoint_every = 10000;
  // Planes scanned per kummer search run before stopping with the checkpoint kept; 0 means no limit.
  std::uint64_t max_planes = 0;
};

// SS5_JOBS and SS5_BUDGET override the defaults.
void apply_environment(Config& cfg);
void validate(const Config& cfg);
CountOptions count_options(const Config& cfg);

struct Outcome {
  int exit_code = kOk;
  cert::Json envelope;             // null when nothing was produced
  std::vector<std::string> lines;  // human readable summary
};

// Rows "p,label,d0,...,d6"; blank lines, lines starting with '#' and a
// header row are skipped. Curves are normalized on load. Throws UsageError.
std::vector<kummer::Genus2Curve> read_curves_csv(const std::string& path);

Outcome cmd_m8(std::uint32_t p, m8::Mode mode, const Config& cfg);
Outcome cmd_kummer_search(std::uint32_t p, const std::optional<std::string>& curves_path, const Config& cfg,
                          bool stop_at_first = false, const std::atomic<bool>* stop = nullptr);
Outcome cmd_verify_table1(std::optional<std::uint32_t> p, const Config& cfg);
Outcome cmd_genus3(std::uint32_t p, const Config& cfg);
Outcome cmd_genus4(std::uint32_t p, const Config& cfg);
Outcome cmd_np(std::uint32_t p);
Outcome cmd_dims(int g, int which);
Outcome cmd_poly(const std::string& which, std::uint32_t p);
Outcome cmd_recheck(const std::string& path, const Config& cfg);

// Writes the envelope to cfg.output_path when set.
void write_output(const Outcome& out, const Config& cfg);
cert::Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const cert::Json& j);

}  // namespace ss5::run
