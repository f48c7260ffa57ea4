#include <catch_amalgamated.hpp>

#include "oracles.hpp"

#include <otfs/autodiff.hpp>
#include <otfs/errors.hpp>
#include <otfs/interpolant.hpp>
#include <otfs/interpolant_io.hpp>
#include <otfs/kernel.hpp>
#include <otfs/loocv.hpp>
#include <otfs/poly_basis.hpp>
#include <otfs/systems.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>

using namespace otfs;
using Catch::Approx;

namespace {

Dictionary scalar_toy() {
    return Dictionary(Dims(1, 0, 0), {{Vector{{0.0}}, Matrix::Constant(1, 1, 0.0)},
                                      {Vector{{1.0}}, Matrix::Constant(1, 1, 1.0)}});
}

Dictionary random_dictionary(std::mt19937_64& gen, Dims dims, int n, const std::function<Matrix(const Vector&)>& M) {
    std::vector<Snapshot> snaps;
    for (int i = 0; i < n; ++i) {
        const Vector z = test::random_vector(gen, dims.d(), -2, 2);
        snaps.push_back({z, M(z)});
    }
    return Dictionary(dims, std::move(snaps));
}

Dictionary vdp_dict(int level) { return generate_dictionary(vdp_dynamics({}), vdp_observation_set(level)); }

} // namespace

TEST_CASE("multiquadric kernel values", "[rbf][kernel]") {
    CHECK(kernel_eval(KernelSpec{1.0}, Vector::Zero(2)) == -1.0);
    CHECK(kernel_eval(KernelSpec{1e-12}, Vector{{3.0, 4.0}}) == Approx(-5.0).epsilon(1e-15));
    CHECK(kernel_eval(KernelSpec{std::sqrt(2.0)}, Vector{{1.0, 1.0}}) == Approx(-2.0).epsilon(1e-15));

    std::mt19937_64 gen(1);
    for (int i = 0; i < 100; ++i) {
        const Vector z = test::random_vector(gen, 4, -3, 3);
        const KernelSpec k{0.1 + 0.01 * i};
        CHECK(kernel_eval(k, z) == kernel_eval(k, Vector(-z)));
        CHECK(kernel_eval(k, z) <= -k.c);
    }
    CHECK_THROWS_AS(validate(KernelSpec{0.0}), PreconditionError);
    CHECK_THROWS_AS(validate(KernelSpec{-1.0}), PreconditionError);
}

TEST_CASE("graded lexicographic polynomial basis", "[rbf][basis]") {
    const PolyBasis affine(3, 2);
    CHECK(affine.size() == 4);
    CHECK(affine.eval(Vector{{0.5, -2.0, 3.0}}) == Vector{{1.0, 0.5, -2.0, 3.0}});

    const PolyBasis constant(5, 1);
    CHECK(constant.size() == 1);
    CHECK(constant.eval(Vector::Constant(5, 7.0)) == Vector::Ones(1));

    const PolyBasis quad(2, 3);
    CHECK(quad.eval(Vector{{1.0, 2.0}}) == Vector{{1.0, 1.0, 2.0, 1.0, 2.0, 4.0}});

    // Q against a direct count of exponent tuples with total degree <= m - 1.
    for (int d = 1; d <= 4; ++d)
        for (int m = 1; m <= 4; ++m) {
            long long brute = 0;
            const int deg = m - 1;
            std::vector<int> e(static_cast<std::size_t>(d), 0);
            while (true) {
                int s = 0;
                for (int v : e) s += v;
                if (s <= deg) ++brute;
                std::size_t i = 0;
                while (i < e.size() && ++e[i] > deg) e[i++] = 0;
                if (i == e.size()) break;
            }
            CHECK(PolyBasis(d, m).size() == brute);
            CHECK(PolyBasis::count(d, m) == brute);
        }
    CHECK(PolyBasis::count(11, 2) == 12);
    CHECK_THROWS_AS(PolyBasis(2, 0), PreconditionError);
    CHECK_THROWS_AS(affine.eval(Vector::Zero(2)), DimensionError);
}

TEST_CASE("saddle system assembly", "[rbf][assemble]") {
    Matrix M(2, 2);
    M << 1, 2, 3, 4;
    const Dictionary one(Dims(2, 0, 0), {{Vector{{0.3, 0.1}}, M}});
    const SaddleSystem s1 = assemble(one, KernelSpec{2.5}, PolyBasis(2, 1));
    CHECK(s1.R(0, 0) == -2.5);
    CHECK(s1.gamma.row(0) == Vector{{1.0, 2.0, 3.0, 4.0}}.transpose());

    std::mt19937_64 gen(9);
    const Dictionary five = random_dictionary(gen, Dims(2, 0, 1), 5, [](const Vector&) { return Matrix::Ones(2, 2); });
    const SaddleSystem s5 = assemble(five, KernelSpec{0.7}, PolyBasis(3, 2));
    CHECK(s5.R == s5.R.transpose());
    CHECK(s5.P.rows() == 5);
    CHECK(s5.P.cols() == 4);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            CHECK(s5.R(i, j) == Approx(-std::sqrt(0.49 + (five[i].z - five[j].z).squaredNorm())).epsilon(1e-15));
}

TEST_CASE("one-point interpolant is constant", "[rbf][fit]") {
    Matrix M(2, 3);
    M << 1, -2, 3, 0.5, 0, 9;
    const Dictionary one(Dims(2, 1, 0), {{Vector{{1.0, 1.0, 0.0}}, M}});
    const FitResult r = fit(one, KernelSpec{1.0}, PolyBasis(3, 1));
    CHECK(r.interpolant.alpha().cwiseAbs().maxCoeff() <= 1e-15);
    CHECK((r.interpolant.beta().row(0).transpose() - vectorize_row(M)).cwiseAbs().maxCoeff() <= 1e-15);
    std::mt19937_64 gen(2);
    for (int i = 0; i < 5; ++i)
        CHECK((r.interpolant.eval(test::random_vector(gen, 3, -10, 10)) - M).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("scalar toy matches a hand-rolled 3x3 saddle solve", "[rbf][fit]") {
    const Dictionary toy = scalar_toy();
    const FitResult r = fit(toy, KernelSpec{1.0}, PolyBasis(1, 1));
    CHECK(r.interpolant.eval(Vector{{0.0}})(0, 0) == Approx(0.0).margin(1e-14));
    CHECK(r.interpolant.eval(Vector{{1.0}})(0, 0) == Approx(1.0).epsilon(1e-14));

    const double p = -std::sqrt(2.0);
    const auto sol = test::solve_small({{-1.0, p, 1.0}, {p, -1.0, 1.0}, {1.0, 1.0, 0.0}}, {0.0, 1.0, 0.0});
    const double phi_half = -std::sqrt(1.0 + 0.25);
    const double expected = sol[0] * phi_half + sol[1] * phi_half + sol[2];
    CHECK(r.interpolant.eval(Vector{{0.5}})(0, 0) == Approx(expected).epsilon(1e-13));
    CHECK(r.interpolant.alpha()(0, 0) == Approx(sol[0]).epsilon(1e-13));
    CHECK(r.interpolant.alpha()(1, 0) == Approx(sol[1]).epsilon(1e-13));
    CHECK(r.interpolant.beta()(0, 0) == Approx(sol[2]).epsilon(1e-13));
}

TEST_CASE("interpolation and side conditions on Van der Pol dictionaries", "[rbf][fit][vdp]") {
    for (int level = 1; level <= 3; ++level) {
        const Dictionary dict = vdp_dict(level);
        for (double c : {0.5, 1.0, 3.0}) {
            const FitResult r = fit(dict, KernelSpec{c}, PolyBasis(2, 2));
            CHECK(max_node_residual(r.interpolant, dict) < 1e-8);
            double gamma_inf = 0.0;
            for (const auto& s : dict.snapshots()) gamma_inf = std::max(gamma_inf, s.M.cwiseAbs().maxCoeff());
            CHECK(r.report.side_condition_norm <= 1e-8 * gamma_inf);
            CHECK(r.report.residual_norm <= 1e-12);
            CHECK(std::isfinite(r.report.condition_estimate));
        }
    }
}

TEST_CASE("saddle system is solvable for random dictionaries", "[rbf][fit][property]") {
    std::mt19937_64 gen(2024);
    const int dims_choice[] = {2, 3, 11};
    for (int trial = 0; trial < 50; ++trial) {
        const int d = dims_choice[trial % 3];
        const int n = 5 + static_cast<int>(gen() % 36);
        const Dims dims(1, d - 1, 0);
        const Dictionary dict = random_dictionary(gen, dims, n, [&](const Vector&) {
            return test::random_matrix(gen, dims.nx, dims.jac_cols());
        });
        FitResult r = fit(dict, KernelSpec{1.0}, PolyBasis(d, 1));
        CHECK(r.report.residual_norm <= 1e-8);
        CHECK(max_node_residual(r.interpolant, dict) <= 1e-8);
    }
}

TEST_CASE("polynomial precision", "[rbf][fit][property]") {
    std::mt19937_64 gen(77);
    const Matrix A = test::random_matrix(gen, 2, 3);

    SECTION("constants with a constant tail") {
        const Dictionary dict = random_dictionary(gen, Dims(2, 1, 0), 12, [&](const Vector&) { return A; });
        const FitResult r = fit(dict, KernelSpec{0.8}, PolyBasis(3, 1));
        for (int i = 0; i < 10; ++i)
            CHECK((r.interpolant.eval(test::random_vector(gen, 3, -2, 2)) - A).cwiseAbs().maxCoeff() <= 1e-8);
        CHECK(loocv_objective(dict, KernelSpec{0.8}, PolyBasis(3, 1)) <= 1e-12);
    }
    SECTION("affine data with an affine tail") {
        std::vector<Matrix> slopes;
        for (int k = 0; k < 3; ++k) slopes.push_back(test::random_matrix(gen, 2, 3));
        auto affine = [&](const Vector& z) {
            Matrix M = A;
            for (int k = 0; k < 3; ++k) M += z[k] * slopes[static_cast<std::size_t>(k)];
            return M;
        };
        const Dictionary dict = random_dictionary(gen, Dims(2, 1, 0), 15, affine);
        const FitResult r = fit(dict, KernelSpec{1.3}, PolyBasis(3, 2));
        for (int i = 0; i < 10; ++i) {
            const Vector z = test::random_vector(gen, 3, -2, 2);
            CHECK((r.interpolant.eval(z) - affine(z)).cwiseAbs().maxCoeff() <= 1e-8);
        }
    }
}

TEST_CASE("fit failure modes", "[rbf][fit][errors]") {
    const Dictionary collinear(Dims(1, 1, 0), {{Vector{{0.0, 0.0}}, Matrix::Zero(1, 2)},
                                                {Vector{{1.0, 1.0}}, Matrix::Zero(1, 2)},
                                                {Vector{{2.0, 2.0}}, Matrix::Zero(1, 2)}});
    CHECK_THROWS_AS(fit(collinear, KernelSpec{1.0}, PolyBasis(2, 2)), UnisolvencyError);
    CHECK_THROWS_AS(fit(scalar_toy(), KernelSpec{1.0}, PolyBasis(1, 3)), UnisolvencyError);

    try {
        (void)fit(vdp_dict(3), KernelSpec{1e4}, PolyBasis(2, 2));
        FAIL("ill-conditioned fit accepted");
    } catch (const ConditioningError& e) {
        CHECK(e.estimate() > 1e12);
    }
    CHECK_THROWS_AS(fit(scalar_toy(), KernelSpec{1.0}, PolyBasis(2, 1)), DimensionError);
}

TEST_CASE("weighted kernel sums agree with pointwise evaluation", "[rbf][eval]") {
    const FitResult r = fit(vdp_dict(2), KernelSpec{1.0}, PolyBasis(2, 2));
    std::mt19937_64 gen(4);
    std::vector<Vector> pts;
    std::vector<double> w;
    Matrix expected = Matrix::Zero(2, 2);
    for (int i = 0; i < 7; ++i) {
        pts.push_back(test::random_vector(gen, 2, -2, 2));
        w.push_back(0.1 * (i + 1));
        expected += w.back() * r.interpolant.eval(pts.back());
    }
    CHECK((r.interpolant.eval_weighted_sum(pts, w) - expected).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK_THROWS_AS(r.interpolant.eval(Vector::Zero(3)), DimensionError);
}

TEST_CASE("coordinate scaling keeps the interpolation condition", "[rbf][scaling]") {
    const Dictionary dict = vdp_dict(3);
    FitOptions opts;
    opts.scaling = CoordinateScaling{Vector{{0.5, -0.5}}, Vector{{0.25, 0.5}}};
    const FitResult r = fit(dict, KernelSpec{1.0}, PolyBasis(2, 2), opts);
    CHECK(max_node_residual(r.interpolant, dict) < 1e-8);
    opts.scaling = CoordinateScaling{Vector{{0.0, 0.0}}, Vector{{1.0, 0.0}}};
    CHECK_THROWS_AS(fit(dict, KernelSpec{1.0}, PolyBasis(2, 2), opts), PreconditionError);
}

TEST_CASE("leave-one-out objective", "[rbf][loocv]") {
    const Dictionary toy = scalar_toy();
    // Each reduced fit is the one-point constant, so the stacked error is the
    // 1 x 2 row [-1, 1]: max row sum 2, largest singular value sqrt(2).
    CHECK(loocv_objective(toy, KernelSpec{1.0}, PolyBasis(1, 1), NormKind::Inf) == Approx(2.0).epsilon(1e-14));
    CHECK(loocv_objective(toy, KernelSpec{3.0}, PolyBasis(1, 1), NormKind::Two) ==
          Approx(std::sqrt(2.0)).epsilon(1e-14));

    const Dictionary dict = vdp_dict(2);
    const PolyBasis basis(2, 2);
    const double forward = loocv_objective(dict, KernelSpec{1.0}, basis);
    CHECK(forward >= 0.0);

    std::vector<Snapshot> shuffled = dict.snapshots();
    std::reverse(shuffled.begin(), shuffled.end());
    std::swap(shuffled[2], shuffled[7]);
    const double permuted = loocv_objective(Dictionary(dict.dims(), shuffled), KernelSpec{1.0}, basis);
    CHECK(permuted == Approx(forward).epsilon(1e-10));

    const Dictionary one(Dims(1, 0, 0), {{Vector{{0.0}}, Matrix::Zero(1, 1)}});
    CHECK_THROWS_AS(loocv_objective(one, KernelSpec{1.0}, PolyBasis(1, 1)), PreconditionError);

    const Dictionary tight(Dims(1, 1, 0), {{Vector{{0.0, 0.0}}, Matrix::Zero(1, 2)},
                                           {Vector{{1.0, 0.0}}, Matrix::Zero(1, 2)},
                                           {Vector{{0.0, 1.0}}, Matrix::Zero(1, 2)}});
    try {
        (void)loocv_objective(tight, KernelSpec{1.0}, PolyBasis(2, 2));
        FAIL("reduced fit below Q points accepted");
    } catch (const LoocvError& e) {
        CHECK(e.omitted_index() == 0);
    }
}

TEST_CASE("width tuning", "[rbf][tuning]") {
    const Dictionary dict = vdp_dict(2);
    const PolyBasis basis(2, 2);
    const TuneResult a = tune_width(dict, basis);
    REQUIRE(a.grid.size() == 25);
    for (const auto& cand : a.grid) CHECK(a.objective <= cand.objective);
    CHECK(a.grid.front().c == Approx(1e-2));
    CHECK(a.grid.back().c == Approx(1e2));
    CHECK(loocv_objective(dict, KernelSpec{a.c}, basis) == a.objective);
    CHECK_NOTHROW(fit(dict, KernelSpec{a.c}, basis));

    const TuneResult b = tune_width(dict, basis);
    CHECK(b.c == a.c);
    CHECK(b.objective == a.objective);

    const Dictionary tight(Dims(1, 1, 0), {{Vector{{0.0, 0.0}}, Matrix::Zero(1, 2)},
                                           {Vector{{1.0, 0.0}}, Matrix::Zero(1, 2)},
                                           {Vector{{0.0, 1.0}}, Matrix::Zero(1, 2)}});
    CHECK_THROWS_AS(tune_width(tight, PolyBasis(2, 2)), TuningError);
    CHECK_THROWS_AS(tune_width(dict, basis, NormKind::Inf, WidthSearchSpec{-1.0, 1.0, 5, 1e-3}), PreconditionError);
}

TEST_CASE("interpolant json roundtrip", "[rbf][io]") {
    const Dictionary dict = vdp_dict(3);
    const FitResult r = fit(dict, KernelSpec{1.234}, PolyBasis(2, 2));
    const auto path = std::filesystem::temp_directory_path() / "otfs_interp_roundtrip.json";
    save_interpolant(r.interpolant, path);
    const Interpolant back = load_interpolant(path);
    std::filesystem::remove(path);

    CHECK(back.kernel().c == r.interpolant.kernel().c);
    CHECK(back.alpha() == r.interpolant.alpha());
    CHECK(back.beta() == r.interpolant.beta());
    CHECK(back.centers() == r.interpolant.centers());
    std::mt19937_64 gen(8);
    for (int i = 0; i < 5; ++i) {
        const Vector z = test::random_vector(gen, 2, -2, 2);
        CHECK(back.eval(z) == r.interpolant.eval(z));
    }

    try {
        (void)interpolant_from_json(R"({"dims": {"nx": 1, "nu": 0, "neta": 0}})");
        FAIL("accepted");
    } catch (const SchemaError& e) {
        CHECK(e.path() == "kernel");
    }
}
