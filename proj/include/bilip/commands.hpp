#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "bilip/config.hpp"
#include "bilip/report.hpp"

namespace bilip::cli {

// Suite names accepted under verify.suites.
const std::vector<std::string>& suite_names();

// Runs the selected (or all applicable) suites in a fixed order.
std::vector<VerificationReport> run_verify_suites(const RunConfig& cfg);

// Each command writes into `out` (created if needed) and returns the process
// exit status: 0, or 1 when any verification record is not a pass.
int cmd_smooth(const RunConfig& cfg, const std::filesystem::path& out);
int cmd_conjugate(const RunConfig& cfg, const std::filesystem::path& out);
int cmd_verify(const RunConfig& cfg, const std::filesystem::path& out);
int cmd_lcnet(const RunConfig& cfg, const std::filesystem::path& out);
int cmd_report(const RunConfig& cfg, const std::filesystem::path& out);

// Header embedded in every output document.
Json provenance(const RunConfig& cfg);

}  // namespace bilip::cli
