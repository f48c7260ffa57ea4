#pragma once

// Single place for every default that mirrors the reference experiments.
// `otfs --show-defaults` prints this table.

#include <string>
#include <vector>

namespace otfs::defaults {

inline constexpr const char* kTableVersion = "1";

inline constexpr int kQuadratureIntervals = 6;
inline constexpr int kTailOrder = 2;
inline constexpr double kWidthLo = 1e-2;
inline constexpr double kWidthHi = 1e2;
inline constexpr int kWidthGrid = 25;
inline constexpr double kWidthRelTol = 1e-3;
inline constexpr double kConditionThreshold = 1e12;
inline constexpr double kRtol = 1e-3;
inline constexpr double kAtol = 1e-6;
inline constexpr double kDtOut = 0.01;
inline constexpr unsigned long long kSeed = 0;

inline constexpr double kVdpEta = 0.5;
inline constexpr double kVdpHorizon = 14.0;
inline constexpr double kVdpCorner = 2.0;
inline constexpr double kVdpParamEtas[] = {0.35, 0.47};

inline constexpr int kMsdSnapshots = 100;
inline constexpr int kMsdRuns = 1000;
inline constexpr double kMsdHorizon = 8.0;
inline constexpr double kMsdInputAmplitude = 0.7;
inline constexpr double kMsdInputFrequency = 1.0;

struct Entry {
    std::string key;
    std::string value;
    std::string note;
};

std::vector<Entry> table();

} // namespace otfs::defaults
