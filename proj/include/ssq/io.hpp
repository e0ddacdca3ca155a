#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ssq/empirical.hpp"
#include "ssq/harness.hpp"
#include "ssq/limit.hpp"
#include "ssq/simulate.hpp"

namespace ssq {

/// Shortest round-trip decimal form of a double (deterministic bytes).
std::string format_double(double v);

/// CSV `path_id,t,value` plus a JSON sidecar `<stem>.json` carrying spec,
/// grid, seed, method, and version.
void write_ensemble_csv(const std::filesystem::path& csv_path, const PathEnsemble& ensemble);

/// CSV `replication,t,alpha,w` plus a JSON sidecar.
void write_fields_csv(const std::filesystem::path& csv_path,
                      const std::vector<QuantileField>& fields, const ProcessSpec& spec,
                      std::uint64_t seed);

/// CSV `s,beta,t,alpha,value,method`.
void write_cov_table_csv(const std::filesystem::path& csv_path, const LimitCovariance& table,
                         std::uint64_t seed = 0);

/// report.json plus estimates.csv / tests.csv / verdicts.csv companions.
void write_report(const std::filesystem::path& directory, const VerificationReport& report);

}  // namespace ssq
