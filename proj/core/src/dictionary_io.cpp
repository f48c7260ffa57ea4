#include "otfs/dictionary_io.hpp"

#include "json_util.hpp"

#include <fstream>
#include <sstream>

namespace otfs {

namespace detail {

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

} // namespace detail

using detail::json;

std::string dictionary_to_json(const Dictionary& dict, int indent) {
    json j;
    const auto& dims = dict.dims();
    j["dims"] = {{"nx", dims.nx}, {"nu", dims.nu}, {"neta", dims.neta}};
    if (dict.space()) {
        j["space"] = {{"lower", detail::to_json_array(dict.space()->lower())},
                      {"upper", detail::to_json_array(dict.space()->upper())}};
    }
    json snaps = json::array();
    for (const auto& s : dict.snapshots())
        snaps.push_back({{"z", detail::to_json_array(s.z)}, {"M", detail::to_json_rows(s.M)}});
    j["snapshots"] = std::move(snaps);
    return j.dump(indent) + "\n";
}

Dictionary dictionary_from_json(const std::string& text) {
    const json j = detail::parse_json(text);
    if (!j.is_object()) throw SchemaError("$", "top level must be an object");

    const json& jd = detail::require(j, "dims", "");
    const int nx = detail::read_int(detail::require(jd, "nx", "dims"), "dims.nx");
    const int nu = detail::read_int(detail::require(jd, "nu", "dims"), "dims.nu");
    const int neta = detail::read_int(detail::require(jd, "neta", "dims"), "dims.neta");
    Dims dims;
    try {
        dims = Dims(nx, nu, neta);
    } catch (const DimensionError& e) {
        throw SchemaError("dims", e.what());
    }

    std::optional<OperatingSpace> space;
    if (auto it = j.find("space"); it != j.end()) {
        Vector lo = detail::read_vector(detail::require(*it, "lower", "space"), "space.lower", dims.d());
        Vector hi = detail::read_vector(detail::require(*it, "upper", "space"), "space.upper", dims.d());
        space.emplace(std::move(lo), std::move(hi));
    }

    const json& js = detail::require(j, "snapshots", "");
    if (!js.is_array()) throw SchemaError("snapshots", "expected an array");
    std::vector<Snapshot> snaps;
    snaps.reserve(js.size());
    for (std::size_t i = 0; i < js.size(); ++i) {
        const auto path = detail::index_path("snapshots", i);
        Snapshot s;
        s.z = detail::read_vector(detail::require(js[i], "z", path), path + ".z", dims.d());
        s.M = detail::read_rows(detail::require(js[i], "M", path), path + ".M", dims.nx, dims.jac_cols());
        snaps.push_back(std::move(s));
    }
    return Dictionary(dims, std::move(snaps), std::move(space));
}

void save_dictionary(const Dictionary& dict, const std::filesystem::path& path) {
    detail::write_text_file(path, dictionary_to_json(dict));
}

Dictionary load_dictionary(const std::filesystem::path& path) {
    return dictionary_from_json(detail::read_text_file(path));
}

} // namespace otfs
