#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "ionread/calibrate.hpp"

using namespace ionread;
using namespace ionread::calibrate;

namespace {

const AtomicConstants kConstants{};

double model_rate(double intensity, double eps, double i_sat) {
    const double x = intensity / i_sat;
    return eps * kConstants.gamma / 2.0 * x / (1.0 + x);
}

// intensities spanning well below to well above saturation; values chosen
// exactly representable so unit rescaling by 10 is lossless
std::vector<double> intensity_grid() {
    std::vector<double> grid;
    for (double i_mw : {2.5, 5.0, 10.0, 20.0, 40.0, 80.0, 160.0, 320.0})
        grid.push_back(i_mw * units::mW_per_cm2);
    return grid;
}

std::vector<CalibrationPoint> noiseless_points(double eps) {
    std::vector<CalibrationPoint> points;
    for (double i : intensity_grid())
        points.push_back({i, model_rate(i, eps, kConstants.i_sat), 1.0});
    return points;
}

}  // namespace

TEST_CASE("noiseless recovery") {
    const auto fit = fit_saturation(noiseless_points(0.04356), kConstants, false);
    CHECK(fit.converged);
    CHECK(fit.eps_sys == doctest::Approx(0.04356).epsilon(1e-6));
    CHECK(fit.residual_norm < 1e-3);

    // floating I_sat recovers both parameters
    const auto fit2 = fit_saturation(noiseless_points(0.04356), kConstants, true);
    CHECK(fit2.eps_sys == doctest::Approx(0.04356).epsilon(1e-5));
    CHECK(fit2.i_sat_used == doctest::Approx(kConstants.i_sat).epsilon(1e-4));
}

TEST_CASE("degenerate inputs") {
    std::vector<CalibrationPoint> two = {{1.0, 10.0, 1.0}, {2.0, 20.0, 1.0}};
    CHECK_THROWS_AS(fit_saturation(two, kConstants, false), DomainError);

    std::vector<CalibrationPoint> same_intensity = {
        {1.0, 10.0, 1.0}, {1.0, 11.0, 1.0}, {1.0, 12.0, 1.0}};
    CHECK_THROWS_AS(fit_saturation(same_intensity, kConstants, false), DomainError);

    std::vector<CalibrationPoint> zeros = {
        {1.0, 0.0, 1.0}, {2.0, 0.0, 1.0}, {3.0, 0.0, 1.0}};
    CHECK_THROWS_AS(fit_saturation(zeros, kConstants, false), DomainError);
}

TEST_CASE("shot-noise recovery, repeated draws") {
    // per-point averaging: 300 experiments x 0.5 ms
    const double eps_true = 0.04356;
    std::mt19937_64 gen(2024);
    int within_2se = 0;
    const int reps = 40;
    for (int rep = 0; rep < reps; ++rep) {
        std::vector<CalibrationPoint> points;
        for (double i : intensity_grid()) {
            const double rate = model_rate(i, eps_true, kConstants.i_sat);
            const double sigma = std::sqrt(rate / (300.0 * 0.5e-3));
            std::normal_distribution<double> noise(0.0, sigma);
            points.push_back({i, std::max(0.0, rate + noise(gen)), sigma});
        }
        const auto fit = fit_saturation(points, kConstants, false);
        if (std::abs(fit.eps_sys - eps_true) <= 2.0 * fit.eps_sys_error) ++within_2se;
    }
    CHECK(within_2se >= static_cast<int>(0.85 * reps));
}

TEST_CASE("fit residuals of a correct model pass chi-square") {
    std::mt19937_64 gen(5);
    std::vector<CalibrationPoint> points;
    for (double i : intensity_grid()) {
        const double rate = model_rate(i, 0.04356, kConstants.i_sat);
        const double sigma = std::sqrt(rate / (300.0 * 0.5e-3));
        std::normal_distribution<double> noise(0.0, sigma);
        points.push_back({i, rate + noise(gen), sigma});
    }
    const auto fit = fit_saturation(points, kConstants, false);
    const double dof = static_cast<double>(points.size()) - 1.0;
    CHECK(testutil::chi2_pvalue(fit.residual_norm * fit.residual_norm, dof) > 1e-3);
}

TEST_CASE("scale equivariance and unit reparametrization") {
    const auto base = fit_saturation(noiseless_points(0.5), kConstants, false);

    // scaling all rates by c scales eps by c
    auto scaled = noiseless_points(0.5);
    for (auto& pt : scaled) { pt.rate *= 0.0625; pt.rate_error *= 0.0625; }
    const auto fit_scaled = fit_saturation(scaled, kConstants, false);
    CHECK(fit_scaled.eps_sys == doctest::Approx(0.0625 * base.eps_sys).epsilon(1e-9));

    // intensities in mW/cm^2 vs W/m^2 give identical eps
    auto rescaled = noiseless_points(0.5);
    AtomicConstants c2 = kConstants;
    c2.i_sat *= 10.0;
    for (auto& pt : rescaled) pt.intensity *= 10.0;
    const auto fit_rescaled = fit_saturation(rescaled, c2, false);
    CHECK(std::abs(fit_rescaled.eps_sys - base.eps_sys) <= 1e-12 * base.eps_sys);
}

TEST_CASE("efficiency decomposition") {
    const auto breakdown = decompose({0.02171, 9e-5}, {0.01777, 7e-5}, {0.04356, 6e-5},
                                     0.10, {0.731, 0.008}, 0.32);
    CHECK(breakdown.eps_fc.value == doctest::Approx(0.8185).epsilon(1e-3));
    CHECK(breakdown.eps_det.value == doctest::Approx(0.784).epsilon(1e-3));
    CHECK(breakdown.eps_fc.error > 0.0);

    const auto identity = decompose({1.0, 1e-9}, {1.0, 1e-9}, {1.0, 1e-9}, 1.0,
                                    {1.0, 1e-9}, 1.0);
    CHECK(identity.eps_fc.value == doctest::Approx(1.0));
    CHECK(identity.eps_det.value == doctest::Approx(1.0));

    CHECK_THROWS_AS(decompose({0.0, 0.1}, {0.5, 0.1}, {0.5, 0.1}, 0.1, {0.7, 0.1}, 0.32),
                    DomainError);
}

TEST_CASE("decompose-then-multiply consistency") {
    // exactly consistent chain: eps_sys_snspd = pg * fc * fiber * det
    const double pg = 0.10, fc = 0.8185, fiber = 0.731, det = 0.784, qe = 0.32;
    const double free_pmt = pg * fiber * qe;           // free-space path w/o coupling
    const double fiber_pmt = free_pmt * fc;
    const double snspd = fiber_pmt / qe * det;
    const auto b = decompose({free_pmt, 1e-9}, {fiber_pmt, 1e-9}, {snspd, 1e-9}, pg,
                             {fiber, 1e-9}, qe);
    const double product =
        b.eps_pg.value * b.eps_fc.value * b.eps_fiber.value * b.eps_det.value;
    CHECK(std::abs(product - pg * fc * fiber * det) <= 1e-12);
}
