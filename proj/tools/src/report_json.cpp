#include "report_json.hpp"

namespace otfs::cli {

using nlohmann::ordered_json;

namespace {

ordered_json vec(const Vector& v) {
    ordered_json a = ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

} // namespace

ordered_json fit_report_to_json(const FitReport& r) {
    return {{"residual_norm", r.residual_norm},
            {"condition_estimate", r.condition_estimate},
            {"side_condition_norm", r.side_condition_norm}};
}

ordered_json report_to_json(const experiments::Report& report) {
    ordered_json runs = ordered_json::array();
    for (const auto& r : report.runs) {
        ordered_json j;
        j["variant"] = r.variant;
        j["index"] = r.index;
        j["x0"] = vec(r.x0);
        if (r.eta) j["eta"] = *r.eta;
        j["per_state_rmse"] = vec(r.metrics.per_state_rmse);
        j["average_rmse"] = r.metrics.average_rmse;
        j["runtime_s"] = r.metrics.runtime_s;
        j["runtime_true_s"] = r.runtime_true_s;
        j["rhs_evals_true"] = r.rhs_evals_true;
        j["rhs_evals_model"] = r.rhs_evals_model;
        runs.push_back(std::move(j));
    }

    ordered_json variants = ordered_json::array();
    for (const auto& v : report.variants) {
        ordered_json j;
        j["name"] = v.name;
        j["snapshots"] = v.snapshots;
        j["c"] = v.c ? ordered_json(*v.c) : ordered_json(nullptr);
        j["loocv_objective"] = v.loocv_objective ? ordered_json(*v.loocv_objective) : ordered_json(nullptr);
        j["fit"] = v.fit ? fit_report_to_json(*v.fit) : ordered_json(nullptr);
        j["node_residual"] = v.node_residual;
        j["avg_rmse"] = v.avg_rmse;
        j["avg_runtime_s"] = v.avg_runtime_s;
        variants.push_back(std::move(j));
    }

    ordered_json doc;
    doc["experiment"] = report.experiment;
    doc["runs"] = std::move(runs);
    doc["aggregate"] = {{"avg_rmse", report.avg_rmse}, {"runtime_s", report.runtime_s}};
    doc["variants"] = std::move(variants);
    if (!report.statistics.empty()) {
        ordered_json stats = ordered_json::object();
        for (const auto& [k, v] : report.statistics) stats[k] = v;
        doc["statistics"] = std::move(stats);
    }
    return doc;
}

} // namespace otfs::cli
