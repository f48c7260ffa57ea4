#include "otfs/interpolant_io.hpp"

#include "json_util.hpp"

namespace otfs {

using detail::json;

std::string interpolant_to_json(const Interpolant& interp, int indent) {
    json j;
    const auto& dims = interp.dims();
    j["dims"] = {{"nx", dims.nx}, {"nu", dims.nu}, {"neta", dims.neta}};
    j["kernel"] = {{"kind", std::string(KernelSpec::kind)}, {"c", interp.kernel().c}};
    j["basis"] = {{"m", interp.basis().order()}, {"Q", interp.basis().size()}, {"ordering", "grlex"}};
    j["centers"] = detail::to_json_rows(interp.centers());
    j["alpha"] = detail::to_json_rows(interp.alpha());
    j["beta"] = detail::to_json_rows(interp.beta());
    if (!interp.scaling().is_identity()) {
        j["scaling"] = {{"shift", detail::to_json_array(interp.scaling().shift)},
                        {"scale", detail::to_json_array(interp.scaling().scale)}};
    }
    const auto& r = interp.report();
    j["report"] = {{"residual_norm", r.residual_norm},
                   {"condition_estimate", r.condition_estimate},
                   {"side_condition_norm", r.side_condition_norm}};
    return j.dump(indent) + "\n";
}

Interpolant interpolant_from_json(const std::string& text) {
    const json j = detail::parse_json(text);
    if (!j.is_object()) throw SchemaError("$", "top level must be an object");

    const json& jd = detail::require(j, "dims", "");
    Dims dims;
    try {
        dims = Dims(detail::read_int(detail::require(jd, "nx", "dims"), "dims.nx"),
                    detail::read_int(detail::require(jd, "nu", "dims"), "dims.nu"),
                    detail::read_int(detail::require(jd, "neta", "dims"), "dims.neta"));
    } catch (const DimensionError& e) {
        throw SchemaError("dims", e.what());
    }

    const json& jk = detail::require(j, "kernel", "");
    const json& kind = detail::require(jk, "kind", "kernel");
    if (!kind.is_string() || kind.get<std::string>() != KernelSpec::kind)
        throw SchemaError("kernel.kind", "unsupported kernel (expected \"multiquadric\")");
    KernelSpec kernel{detail::read_number(detail::require(jk, "c", "kernel"), "kernel.c")};

    const json& jb = detail::require(j, "basis", "");
    const int m = detail::read_int(detail::require(jb, "m", "basis"), "basis.m");
    if (auto it = jb.find("ordering"); it != jb.end() && (!it->is_string() || it->get<std::string>() != "grlex"))
        throw SchemaError("basis.ordering", "unsupported ordering (expected \"grlex\")");
    if (m < 1) throw SchemaError("basis.m", "must be >= 1");
    const long long q = PolyBasis::count(dims.d(), m);
    if (auto it = jb.find("Q"); it != jb.end() && detail::read_int(*it, "basis.Q") != q)
        throw SchemaError("basis.Q", "inconsistent with d and m (expected " + std::to_string(q) + ")");

    const json& jc = detail::require(j, "centers", "");
    Matrix centers = detail::read_rows(jc, "centers", -1, dims.d());
    Matrix alpha = detail::read_rows(detail::require(j, "alpha", ""), "alpha", centers.rows(), dims.vec_size());
    Matrix beta = detail::read_rows(detail::require(j, "beta", ""), "beta", q, dims.vec_size());

    CoordinateScaling scaling;
    if (auto it = j.find("scaling"); it != j.end()) {
        scaling.shift = detail::read_vector(detail::require(*it, "shift", "scaling"), "scaling.shift", dims.d());
        scaling.scale = detail::read_vector(detail::require(*it, "scale", "scaling"), "scaling.scale", dims.d());
    }

    FitReport report;
    if (auto it = j.find("report"); it != j.end()) {
        report.residual_norm = detail::read_number(detail::require(*it, "residual_norm", "report"), "report.residual_norm");
        report.condition_estimate =
            detail::read_number(detail::require(*it, "condition_estimate", "report"), "report.condition_estimate");
        report.side_condition_norm =
            detail::read_number(detail::require(*it, "side_condition_norm", "report"), "report.side_condition_norm");
    }

    try {
        return Interpolant(dims, kernel, m, std::move(centers), std::move(alpha), std::move(beta), std::move(scaling),
                           report);
    } catch (const ValidationError& e) {
        throw SchemaError("$", e.what());
    }
}

void save_interpolant(const Interpolant& interp, const std::filesystem::path& path) {
    detail::write_text_file(path, interpolant_to_json(interp));
}

Interpolant load_interpolant(const std::filesystem::path& path) {
    return interpolant_from_json(detail::read_text_file(path));
}

} // namespace otfs
