#pragma once

// Composite Simpson 3/8 rule on [0, 1].
//
// k panels of width h = 1/k, each split into three equal subintervals:
// 3k + 1 equispaced nodes with weights (h/8) [1, 3, 3, 2, 3, 3, 2, ..., 3, 3, 1].
// Exact for polynomials of degree <= 3.

#include "otfs/errors.hpp"

#include <cmath>
#include <string>
#include <type_traits>
#include <vector>

namespace otfs {

struct QuadratureSpec {
    int intervals = 6;

    int node_count() const noexcept { return 3 * intervals + 1; }
};

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Throws PreconditionError for k < 1.
QuadratureRule cs38_rule(int intervals);

/// sum_j w_j g(lambda_j) for any g returning a vector/matrix/scalar value type
/// that supports + and scalar *. Non-finite samples raise EvaluationError.
template <class G>
auto cs38_integrate(G&& g, int intervals) {
    const QuadratureRule rule = cs38_rule(intervals);
    // Expression templates are materialized so the accumulator owns its value.
    auto plain = [](auto&& v) {
        if constexpr (requires { v.eval(); }) return v.eval();
        else return v;
    };
    auto sample = plain(g(rule.nodes.front()));
    auto check = [](const auto& v, double lambda) {
        bool finite;
        if constexpr (std::is_arithmetic_v<std::decay_t<decltype(v)>>) finite = std::isfinite(v);
        else finite = v.allFinite();
        if (!finite) throw EvaluationError("non-finite integrand at lambda = " + std::to_string(lambda));
    };
    check(sample, rule.nodes.front());
    using Result = std::decay_t<decltype(sample)>;
    Result acc = rule.weights.front() * sample;
    for (std::size_t j = 1; j < rule.nodes.size(); ++j) {
        auto v = plain(g(rule.nodes[j]));
        check(v, rule.nodes[j]);
        acc = acc + rule.weights[j] * v;
    }
    return acc;
}

} // namespace otfs
