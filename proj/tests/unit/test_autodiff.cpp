#include <catch_amalgamated.hpp>

#include "oracles.hpp"

#include <otfs/autodiff.hpp>
#include <otfs/errors.hpp>
#include <otfs/systems.hpp>

#include <cmath>
#include <limits>

using namespace otfs;
using Catch::Approx;

TEST_CASE("dual arithmetic follows the chain rule", "[autodiff][dual]") {
    const double a = 1.7;
    const Dual x = Dual::variable(a, 0, 1);

    CHECK((x * x).d(0) == Approx(2 * a).epsilon(1e-15));
    CHECK(sin(x * x).d(0) == Approx(2 * a * std::cos(a * a)).margin(1e-12));
    CHECK(cos(x).d(0) == Approx(-std::sin(a)).margin(1e-12));
    CHECK(exp(2.0 * x).d(0) == Approx(2 * std::exp(2 * a)).epsilon(1e-14));
    CHECK(log(x).d(0) == Approx(1 / a).epsilon(1e-14));
    CHECK(sqrt(x).d(0) == Approx(0.5 / std::sqrt(a)).epsilon(1e-14));
    CHECK(pow(x, 3).d(0) == Approx(3 * a * a).epsilon(1e-14));
    CHECK(pow(x, 2.5).d(0) == Approx(2.5 * std::pow(a, 1.5)).epsilon(1e-14));
    CHECK((1.0 / x).d(0) == Approx(-1 / (a * a)).epsilon(1e-14));
    CHECK((x / (x + 1.0)).d(0) == Approx(1 / ((a + 1) * (a + 1))).epsilon(1e-14));

    const Dual y = Dual::variable(-0.3, 1, 2);
    const Dual xy = Dual::variable(a, 0, 2) * y;
    CHECK(xy.d(0) == Approx(-0.3));
    CHECK(xy.d(1) == Approx(a));

    const Dual c = 4.0;
    CHECK(c.d(3) == 0.0);
    CHECK((c * x).d(0) == 4.0);
}

TEST_CASE("linearize a linear rotation", "[autodiff][linearize]") {
    const DynamicsFn f(Dims(2, 0, 0), [](auto x, auto, auto) {
        using T = typename decltype(x)::value_type;
        return std::vector<T>{x[1], -x[0]};
    });
    std::mt19937_64 gen(3);
    for (int i = 0; i < 5; ++i) {
        const Snapshot s = linearize(f, test::random_vector(gen, 2, -5, 5), Vector(0), Vector(0));
        CHECK(s.M == Matrix{{0.0, 1.0}, {-1.0, 0.0}});
    }
}

TEST_CASE("linearize open-loop Van der Pol", "[autodiff][linearize][vdp]") {
    const DynamicsFn f = vdp_dynamics({0.5, VdpMode::OpenLoop});
    const Vector none(0);

    const Snapshot origin = linearize(f, Vector{{0.0, 0.0}}, Vector{{0.0}}, none);
    const Matrix fd0 = finite_diff_jacobian(f, Vector{{0.0, 0.0}}, Vector{{0.0}}, none, 1e-6);
    CHECK((origin.M - fd0).cwiseAbs().maxCoeff() <= 1e-6);
    CHECK((origin.M - Matrix{{0.0, 1.0, 0.0}, {-1.0, -0.5, 0.0}}).cwiseAbs().maxCoeff() <= 1e-15);

    const Snapshot corner = linearize(f, Vector{{2.0, 2.0}}, Vector{{0.0}}, none);
    const Matrix fd = finite_diff_jacobian(f, Vector{{2.0, 2.0}}, Vector{{0.0}}, none, 1e-6);
    CHECK((corner.M - fd).cwiseAbs().maxCoeff() <= 1e-6);
    CHECK((corner.M - Matrix{{0.0, 1.0, 0.0}, {3.0, 1.5, 2.0}}).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(corner.z == Vector{{2.0, 2.0, 0.0}});
}

TEST_CASE("forward mode agrees with finite differences on built-in systems", "[autodiff][property]") {
    std::mt19937_64 gen(42);

    SECTION("Van der Pol, open loop with eta in z") {
        const DynamicsFn f = vdp_dynamics({0.5, VdpMode::OpenLoop}, true);
        for (int i = 0; i < 100; ++i) {
            const Vector x = test::random_vector(gen, 2, -2, 2);
            const Vector u = test::random_vector(gen, 1, -1, 1);
            const Vector eta = test::random_vector(gen, 1, 0.3, 0.6);
            const Matrix M = linearize(f, x, u, eta).M;
            CHECK((M - finite_diff_jacobian(f, x, u, eta)).cwiseAbs().maxCoeff() <= 1e-6);
            CHECK((M - test::vdp_open_jacobian(eta[0], x[0], x[1], u[0])).cwiseAbs().maxCoeff() <= 1e-13);
        }
    }
    SECTION("mass-spring-damper chain") {
        const MsdParams p;
        const DynamicsFn f = msd_dynamics(p);
        for (int i = 0; i < 100; ++i) {
            Vector x(10);
            x << test::random_vector(gen, 5, -2.2, 2.2), test::random_vector(gen, 5, -1.5, 1.5);
            const Vector u = test::random_vector(gen, 1, -1.5, 1.5);
            const Matrix M = linearize(f, x, u, Vector(0)).M;
            CHECK((M - finite_diff_jacobian(f, x, u, Vector(0))).cwiseAbs().maxCoeff() <= 1e-6);
        }
    }
}

TEST_CASE("affine dynamics give a constant linearization", "[autodiff][property]") {
    const DynamicsFn f(Dims(2, 1, 0), [](auto x, auto u, auto) {
        using T = typename decltype(x)::value_type;
        return std::vector<T>{2.0 * x[0] - x[1] + 3.0, 0.5 * x[1] + u[0] - 1.0};
    });
    std::mt19937_64 gen(5);
    const Matrix a = linearize(f, test::random_vector(gen, 3, -9, 9)).M;
    const Matrix b = linearize(f, test::random_vector(gen, 3, -9, 9)).M;
    CHECK(a == b);
    CHECK((finite_diff_jacobian(f, Vector{{1.0, 2.0}}, Vector{{3.0}}, Vector(0)) - a).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("linearize error paths", "[autodiff][errors]") {
    const DynamicsFn f(Dims(1, 0, 0), [](auto x, auto, auto) {
        using T = typename decltype(x)::value_type;
        return std::vector<T>{sqrt(x[0])};
    });
    CHECK_THROWS_AS(linearize(f, Vector{{0.0}}, Vector(0), Vector(0)), EvaluationError);
    CHECK_THROWS_AS(linearize(f, Vector{{-1.0}}, Vector(0), Vector(0)), EvaluationError);
    CHECK_THROWS_AS(linearize(f, Vector{{1.0, 2.0}}, Vector(0), Vector(0)), DimensionError);
    CHECK_THROWS_AS(finite_diff_jacobian(f, Vector{{1.0}}, Vector(0), Vector(0), 0.0), PreconditionError);
}

TEST_CASE("dictionary generation", "[autodiff][dictionary]") {
    const DynamicsFn f = vdp_dynamics({0.5, VdpMode::ClosedLoop});
    const auto points = vdp_observation_set(1);
    const Dictionary dict = generate_dictionary(f, points);
    REQUIRE(dict.size() == 9);
    for (std::size_t i = 0; i < dict.size(); ++i) {
        CHECK(dict[i].z == points[i]);
        CHECK((dict[i].M - test::vdp_closed_jacobian(0.5, points[i][0], points[i][1])).cwiseAbs().maxCoeff() <= 1e-14);
    }
    CHECK_THROWS_AS(generate_dictionary(f, {}), ValidationError);
    CHECK_THROWS_AS(generate_dictionary(f, {Vector{{1.0, 1.0}}, Vector{{1.0, 1.0}}}), DuplicatePointError);

    const MsdParams p;
    const Dictionary msd = generate_dictionary(msd_dynamics(p), msd_observation_set(100, 0, p), msd_space(p));
    CHECK(msd.size() == 100);
    CHECK(msd.dims() == Dims(10, 1, 0));
}
