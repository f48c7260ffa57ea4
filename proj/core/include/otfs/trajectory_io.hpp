#pragma once

#include "otfs/metrics.hpp"
#include "otfs/ode.hpp"

#include <filesystem>
#include <string>

namespace otfs {

/// Shortest decimal string that parses back to exactly `v`.
std::string format_double(double v);

/// Header `t,x1,...,xnx`, one row per sample.
std::string trajectory_to_csv(const Trajectory& traj);
void save_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path);
Trajectory trajectory_from_csv(const std::string& text);
Trajectory load_trajectory_csv(const std::filesystem::path& path);

/// Header `value,density`.
std::string kde_to_csv(const KdeCurve& curve);
void save_kde_csv(const KdeCurve& curve, const std::filesystem::path& path);

} // namespace otfs
