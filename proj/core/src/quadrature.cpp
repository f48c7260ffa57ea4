#include "otfs/quadrature.hpp"

namespace otfs {

QuadratureRule cs38_rule(int intervals) {
    if (intervals < 1) throw PreconditionError("quadrature needs at least one interval");
    const int n = 3 * intervals;
    const double h = 1.0 / intervals;
    QuadratureRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n + 1));
    rule.weights.resize(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) {
        rule.nodes[static_cast<std::size_t>(i)] = static_cast<double>(i) / n;
        double w;
        if (i == 0 || i == n) w = 1.0;
        else if (i % 3 == 0) w = 2.0;
        else w = 3.0;
        rule.weights[static_cast<std::size_t>(i)] = w * h / 8.0;
    }
    return rule;
}

} // namespace otfs
