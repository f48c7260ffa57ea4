#include <catch_amalgamated.hpp>

#include "oracles.hpp"

#include <otfs/autodiff.hpp>
#include <otfs/errors.hpp>
#include <otfs/quadrature.hpp>
#include <otfs/surrogate.hpp>
#include <otfs/systems.hpp>

#include <cmath>
#include <limits>
#include <numeric>

using namespace otfs;
using Catch::Approx;

TEST_CASE("composite 3/8 rule", "[ftc][quadrature]") {
    CHECK(cs38_integrate([](double l) { return l * l * l; }, 1) == Approx(0.25).epsilon(1e-15));
    CHECK(cs38_integrate([](double) { return 1.0; }, 6) == Approx(1.0).epsilon(1e-15));

    // lambda^4 exposes the rule's leading error term: sum over the k panels of
    // (3/80) s^5 f''''(xi) with subinterval s = 1/(3k) and f'''' = 24.
    const int k = 6;
    const double s = 1.0 / (3 * k);
    const double predicted = 0.2 + k * (3.0 / 80.0) * std::pow(s, 5) * 24.0;
    CHECK(std::abs(cs38_integrate([](double l) { return std::pow(l, 4); }, k) - predicted) < 1e-14);

    for (int panels = 1; panels <= 12; ++panels) {
        const QuadratureRule rule = cs38_rule(panels);
        REQUIRE(rule.nodes.size() == static_cast<std::size_t>(3 * panels + 1));
        CHECK(std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0) == Approx(1.0).epsilon(1e-15));
        CHECK(rule.nodes.front() == 0.0);
        CHECK(rule.nodes.back() == 1.0);
        // Every cubic is integrated exactly.
        const double cubic = cs38_integrate([](double l) { return 2.0 - l + 3 * l * l - 4 * l * l * l; }, panels);
        CHECK(cubic == Approx(2.0 - 0.5 + 1.0 - 1.0).epsilon(1e-14));
    }
    const QuadratureRule one = cs38_rule(1);
    CHECK(one.weights == std::vector<double>{1.0 / 8, 3.0 / 8, 3.0 / 8, 1.0 / 8});
    const QuadratureRule two = cs38_rule(2);
    CHECK(two.weights[3] == Approx(2.0 / 16));

    CHECK_THROWS_AS(cs38_rule(0), PreconditionError);
}

TEST_CASE("quadrature rejects non-finite integrands", "[ftc][quadrature][errors]") {
    CHECK_THROWS_AS(cs38_integrate([](double l) { return std::log(l); }, 2), EvaluationError);
    CHECK_THROWS_AS(cs38_integrate([](double) { return Vector::Constant(2, std::numeric_limits<double>::quiet_NaN()); }, 1),
                    EvaluationError);
}

TEST_CASE("integrated linearization of Van der Pol", "[ftc][fhat]") {
    const SurrogateModel model = make_exact_model(vdp_dynamics({0.5, VdpMode::OpenLoop}));
    const Matrix F = model.integrated_linearization(Vector{{2.0, 2.0}}, Vector{{0.0}}, Vector(0));
    Matrix expected(2, 3);
    expected << 0.0, 1.0, 0.0, 1.0 / 3.0, 1.0 / 6.0, 1.0;
    CHECK((F - expected).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((model.rhs(Vector{{2.0, 2.0}}, Vector{{0.0}}, Vector(0)) - Vector{{2.0, 1.0}}).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("constant and summed sources", "[ftc][fhat]") {
    std::mt19937_64 gen(12);
    const Matrix A = test::random_matrix(gen, 2, 3);
    const Matrix B = test::random_matrix(gen, 2, 3);
    const Dims dims(2, 1, 0);
    const SurrogateModel a(LinOpSource::custom(dims, [&](const Vector&) { return A; }));
    auto la = [&](const Vector& z) { Matrix M = A; M(0, 0) += z[0] * z[1]; return M; };
    auto lb = [&](const Vector& z) { Matrix M = B; M(1, 2) += std::sin(z[2]); return M; };
    const SurrogateModel ma(LinOpSource::custom(dims, la));
    const SurrogateModel mb(LinOpSource::custom(dims, lb));
    const SurrogateModel mab(LinOpSource::custom(dims, [&](const Vector& z) { return Matrix(la(z) + lb(z)); }));

    for (int i = 0; i < 10; ++i) {
        const Vector x = test::random_vector(gen, 2, -2, 2);
        const Vector u = test::random_vector(gen, 1, -1, 1);
        CHECK((a.integrated_linearization(x, u, Vector(0)) - A).cwiseAbs().maxCoeff() <= 1e-15);
        const Matrix sum = ma.integrated_linearization(x, u, Vector(0)) + mb.integrated_linearization(x, u, Vector(0));
        CHECK((mab.integrated_linearization(x, u, Vector(0)) - sum).cwiseAbs().maxCoeff() <= 1e-14);
    }
}

TEST_CASE("surrogate right-hand side identities", "[ftc][rhs]") {
    SECTION("identity dynamics") {
        const DynamicsFn f(Dims(3, 0, 0), [](auto x, auto, auto) {
            using T = typename decltype(x)::value_type;
            return std::vector<T>(x.begin(), x.end());
        });
        const SurrogateModel m = make_exact_model(f);
        const Vector x{{0.3, -7.0, 2.0}};
        CHECK(m.rhs(x, Vector(0), Vector(0)) == x);
    }
    SECTION("anchor point returns the offset") {
        const DynamicsFn f = vdp_dynamics({0.5, VdpMode::OpenLoop});
        const Vector xs{{0.7, -1.1}}, us{{0.4}};
        const SurrogateModel m = make_anchored_exact_model(f, xs, us, Vector(0));
        CHECK(m.rhs(xs, us, Vector(0)) == f(xs, us, Vector(0)));
        CHECK(m.offset() == f(xs, us, Vector(0)));
    }
    SECTION("affine field with a nonzero equilibrium") {
        const DynamicsFn f(Dims(1, 0, 0), [](auto x, auto, auto) {
            using T = typename decltype(x)::value_type;
            return std::vector<T>{x[0] - 1.0};
        });
        const SurrogateModel m = make_anchored_exact_model(f, Vector::Zero(1), Vector(0), Vector(0));
        CHECK(m.offset()[0] == -1.0);
        for (double x : {-3.0, 0.0, 0.5, 8.0}) CHECK(m.rhs(Vector::Constant(1, x), Vector(0), Vector(0))[0] == Approx(x - 1.0).margin(1e-15));
    }
    SECTION("built-in systems vanish at the origin") {
        for (double eta : {0.3, 0.5, 0.6, 2.0}) {
            const DynamicsFn vdp = vdp_dynamics({eta, VdpMode::ClosedLoop});
            CHECK(make_exact_model(vdp).rhs(Vector::Zero(2), Vector(0), Vector(0)).isZero(0.0));
        }
        const DynamicsFn msd = msd_dynamics({});
        CHECK(make_exact_model(msd).rhs(Vector::Zero(10), Vector::Zero(1), Vector(0)).isZero(0.0));
    }
    SECTION("invalid anchors") {
        const DynamicsFn f = vdp_dynamics({0.5, VdpMode::OpenLoop});
        const LinOpSource src = LinOpSource::exact(f);
        CHECK_THROWS_AS(SurrogateModel(src, {}, Anchor{Vector::Zero(3), Vector(0), Vector(0)}), DimensionError);
        CHECK_THROWS_AS(SurrogateModel(src, {}, Anchor{Vector::Zero(2), Vector::Zero(1),
                                                       Vector::Constant(2, std::numeric_limits<double>::infinity())}),
                        ValidationError);
    }
}

TEST_CASE("exact-source reconstruction is exact to round-off", "[ftc][property]") {
    std::mt19937_64 gen(100);
    SECTION("Van der Pol closed loop") {
        const DynamicsFn f = vdp_dynamics({0.5, VdpMode::ClosedLoop});
        const SurrogateModel m = make_exact_model(f);
        for (int i = 0; i < 1000; ++i) {
            const Vector x = test::random_vector(gen, 2, -2, 2);
            CHECK((m.rhs(x, Vector(0), Vector(0)) - f(x, Vector(0), Vector(0))).cwiseAbs().maxCoeff() <= 1e-12);
        }
    }
    SECTION("Van der Pol with eta held fixed along the ray") {
        const DynamicsFn f = vdp_dynamics({0.5, VdpMode::OpenLoop}, true);
        const SurrogateModel m = make_exact_model(f);
        for (int i = 0; i < 1000; ++i) {
            const Vector x = test::random_vector(gen, 2, -2, 2);
            const Vector u = test::random_vector(gen, 1, -1, 1);
            const Vector eta = test::random_vector(gen, 1, 0.3, 0.6);
            CHECK((m.rhs(x, u, eta) - f(x, u, eta)).cwiseAbs().maxCoeff() <= 1e-12);
        }
    }
    SECTION("mass-spring-damper chain") {
        const MsdParams p;
        const DynamicsFn f = msd_dynamics(p);
        const SurrogateModel m = make_exact_model(f);
        for (int i = 0; i < 1000; ++i) {
            Vector x(10);
            x << test::random_vector(gen, 5, -2.2, 2.2), test::random_vector(gen, 5, -1.5, 1.5);
            const Vector u = test::random_vector(gen, 1, -1.5, 1.5);
            CHECK((m.rhs(x, u, Vector(0)) - f(x, u, Vector(0))).cwiseAbs().maxCoeff() <= 1e-12);
        }
    }
}

TEST_CASE("anchored and origin forms agree", "[ftc][property]") {
    const DynamicsFn f = vdp_dynamics({0.5, VdpMode::ClosedLoop});
    const SurrogateModel origin = make_exact_model(f);
    std::mt19937_64 gen(31);
    for (int a = 0; a < 10; ++a) {
        const SurrogateModel anchored = make_anchored_exact_model(f, test::random_vector(gen, 2, -2, 2), Vector(0), Vector(0));
        for (int i = 0; i < 20; ++i) {
            const Vector x = test::random_vector(gen, 2, -2, 2);
            CHECK((anchored.rhs(x, Vector(0), Vector(0)) - origin.rhs(x, Vector(0), Vector(0))).cwiseAbs().maxCoeff() <= 1e-10);
        }
    }
}

TEST_CASE("refining the quadrature reduces the change in F_hat", "[ftc][property]") {
    const Dictionary dict = generate_dictionary(vdp_dynamics({}), vdp_observation_set(3));
    auto interp = std::make_shared<const Interpolant>(fit(dict, KernelSpec{1.0}, PolyBasis(2, 2)).interpolant);
    const SurrogateModel k3 = make_interp_model(interp, QuadratureSpec{3});
    const SurrogateModel k6 = make_interp_model(interp, QuadratureSpec{6});
    const SurrogateModel k12 = make_interp_model(interp, QuadratureSpec{12});
    std::mt19937_64 gen(13);
    for (int i = 0; i < 50; ++i) {
        const Vector x = test::random_vector(gen, 2, -2, 2);
        const Matrix f3 = k3.integrated_linearization(x, Vector(0), Vector(0));
        const Matrix f6 = k6.integrated_linearization(x, Vector(0), Vector(0));
        const Matrix f12 = k12.integrated_linearization(x, Vector(0), Vector(0));
        CHECK((f12 - f6).norm() <= (f6 - f3).norm());
    }
}

TEST_CASE("interpolated model uses the fast weighted path consistently", "[ftc][interp]") {
    const Dictionary dict = generate_dictionary(vdp_dynamics({}), vdp_observation_set(2));
    const Interpolant interp = fit(dict, KernelSpec{1.0}, PolyBasis(2, 2)).interpolant;
    const SurrogateModel fast = make_interp_model(interp);
    const SurrogateModel slow(LinOpSource::custom(interp.dims(), [&](const Vector& z) { return interp.eval(z); }));
    std::mt19937_64 gen(6);
    for (int i = 0; i < 20; ++i) {
        const Vector x = test::random_vector(gen, 2, -2, 2);
        CHECK((fast.rhs(x, Vector(0), Vector(0)) - slow.rhs(x, Vector(0), Vector(0))).cwiseAbs().maxCoeff() <= 1e-12);
    }
}
