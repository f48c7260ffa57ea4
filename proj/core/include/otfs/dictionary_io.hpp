#pragma once

#include "otfs/core_model.hpp"

#include <filesystem>
#include <string>

namespace otfs {

// Dictionary JSON:
// { "dims": {"nx": int, "nu": int, "neta": int},
//   "space": {"lower": [..d..], "upper": [..d..]},        (optional)
//   "snapshots": [ {"z": [..d..], "M": [[..nx+nu..] x nx]}, ... ] }
//
// Doubles are written with shortest round-trip precision, so save/load is exact.

std::string dictionary_to_json(const Dictionary& dict, int indent = 2);
Dictionary dictionary_from_json(const std::string& text);

void save_dictionary(const Dictionary& dict, const std::filesystem::path& path);
Dictionary load_dictionary(const std::filesystem::path& path);

} // namespace otfs
