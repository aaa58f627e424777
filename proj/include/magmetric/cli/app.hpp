#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "magmetric/cli/config.hpp"

namespace magmetric::cli {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitNumerical = 4;

/// Full command line including argv[0]. Results go to `out` (or the files
/// named by the config); log lines and errors go to `log`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& log);

/// Carries out a resolved config. Throws the library's exceptions.
void execute(const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// `#` header lines written ahead of every CSV.
std::vector<std::string> provenance(const RunConfig& cfg);

/// Plain-text analyses written by --report.
std::string ground_report(const RunConfig& cfg, const std::vector<experiments::DistanceRecord>& records);
std::string fixed_m_report(const RunConfig& cfg, const std::vector<experiments::DistanceRecord>& records);

}  // namespace magmetric::cli
