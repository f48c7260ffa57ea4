#include "otfs/trajectory_io.hpp"

#include "json_util.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <system_error>
#include <vector>

namespace otfs {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string trajectory_to_csv(const Trajectory& traj) {
    std::string out = "t";
    for (int i = 1; i <= traj.nx(); ++i) out += ",x" + std::to_string(i);
    out += '\n';
    for (std::size_t r = 0; r < traj.size(); ++r) {
        out += format_double(traj.times[r]);
        for (int c = 0; c < traj.nx(); ++c) {
            out += ',';
            out += format_double(traj.states(static_cast<Eigen::Index>(r), c));
        }
        out += '\n';
    }
    return out;
}

void save_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path) {
    detail::write_text_file(path, trajectory_to_csv(traj));
}

Trajectory trajectory_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("t", 0) != 0) throw ParseError("trajectory CSV must start with a 't,...' header");
    const auto nx = static_cast<Eigen::Index>(std::count(line.begin(), line.end(), ','));
    if (nx < 1) throw ParseError("trajectory CSV has no state columns");

    std::vector<double> times;
    std::vector<double> values;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::vector<double> fields;
        const char* p = line.data();
        const char* end = line.data() + line.size();
        while (p <= end) {
            const char* comma = std::find(p, end, ',');
            double v = 0.0;
            const auto res = std::from_chars(p, comma, v);
            if (res.ec != std::errc() || res.ptr != comma)
                throw ParseError("trajectory CSV: bad number on line " + std::to_string(row));
            fields.push_back(v);
            p = comma + 1;
        }
        if (static_cast<Eigen::Index>(fields.size()) != nx + 1)
            throw ParseError("trajectory CSV: wrong field count on line " + std::to_string(row));
        if (!times.empty() && !(fields[0] > times.back()))
            throw ParseError("trajectory CSV: times must be strictly increasing (line " + std::to_string(row) + ")");
        times.push_back(fields[0]);
        values.insert(values.end(), fields.begin() + 1, fields.end());
    }
    Trajectory traj;
    traj.times = std::move(times);
    traj.states = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        values.data(), static_cast<Eigen::Index>(traj.times.size()), nx);
    return traj;
}

Trajectory load_trajectory_csv(const std::filesystem::path& path) {
    return trajectory_from_csv(detail::read_text_file(path));
}

std::string kde_to_csv(const KdeCurve& curve) {
    std::string out = "value,density\n";
    for (std::size_t i = 0; i < curve.grid.size(); ++i)
        out += format_double(curve.grid[i]) + "," + format_double(curve.density[i]) + "\n";
    return out;
}

void save_kde_csv(const KdeCurve& curve, const std::filesystem::path& path) {
    detail::write_text_file(path, kde_to_csv(curve));
}

} // namespace otfs
