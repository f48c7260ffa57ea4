#pragma once

#include <otfs/experiments.hpp>

#include <json.hpp>

namespace otfs::cli {

/// Metrics document: {"experiment", "runs", "aggregate": {"avg_rmse", "runtime_s"}, ...}.
nlohmann::ordered_json report_to_json(const experiments::Report& report);
nlohmann::ordered_json fit_report_to_json(const FitReport& report);

} // namespace otfs::cli
