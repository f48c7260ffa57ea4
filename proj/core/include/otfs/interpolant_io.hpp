#pragma once

#include "otfs/interpolant.hpp"

#include <filesystem>
#include <string>

namespace otfs {

// Interpolant JSON:
// { "dims": {...},
//   "kernel": {"kind": "multiquadric", "c": f},
//   "basis": {"m": int, "Q": int, "ordering": "grlex"},
//   "centers": [[..d..] x N], "alpha": [[..K..] x N], "beta": [[..K..] x Q],
//   "scaling": {"shift": [..d..], "scale": [..d..]},         (optional)
//   "report": {"residual_norm": f, "condition_estimate": f, "side_condition_norm": f} }
// with K = nx (nx + nu). Round-trip exact.

std::string interpolant_to_json(const Interpolant& interp, int indent = 2);
Interpolant interpolant_from_json(const std::string& text);

void save_interpolant(const Interpolant& interp, const std::filesystem::path& path);
Interpolant load_interpolant(const std::filesystem::path& path);

} // namespace otfs
