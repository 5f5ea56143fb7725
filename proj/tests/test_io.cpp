#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "helpers.hpp"
#include "ionread/config.hpp"
#include "ionread/csv.hpp"
#include "ionread/report.hpp"
#include "ionread/svg.hpp"

using namespace ionread;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("ionread_test_" + name);
}

}  // namespace

TEST_CASE("unit parsing") {
    using units::Dimension;
    CHECK(units::parse_quantity("20 us", Dimension::time) == doctest::Approx(20e-6));
    CHECK(units::parse_quantity("4.2 cps", Dimension::rate) == doctest::Approx(4.2));
    CHECK(units::parse_quantity("472 kcps", Dimension::rate) == doctest::Approx(472e3));
    CHECK(units::parse_quantity("56.2 mW/cm2", Dimension::intensity) ==
          doctest::Approx(562.0));
    CHECK(units::parse_quantity("0.5", Dimension::dimensionless) == 0.5);

    CHECK_THROWS_AS(units::parse_quantity("56.2 bananas", Dimension::intensity),
                    units::UnitError);
    CHECK_THROWS_AS(units::parse_quantity("20 us", Dimension::rate), units::UnitError);
    CHECK_THROWS_AS(units::parse_quantity("abc", Dimension::time), units::UnitError);
}

TEST_CASE("csv round trip") {
    std::mt19937_64 gen(31);
    std::uniform_real_distribution<double> unif(-1e6, 1e6);
    for (int rep = 0; rep < 50; ++rep) {
        csv::Table table;
        table.columns = {"a", "b", "c"};
        for (int r = 0; r < 20; ++r)
            table.rows.push_back({unif(gen), unif(gen) * 1e-9, unif(gen) * 1e9});
        const auto parsed = csv::parse_table(csv::format_table(table));
        REQUIRE(parsed.rows.size() == table.rows.size());
        for (std::size_t r = 0; r < table.rows.size(); ++r)
            for (std::size_t c = 0; c < 3; ++c)
                CHECK(parsed.rows[r][c] == table.rows[r][c]);
    }
}

TEST_CASE("csv parse errors carry line numbers") {
    CHECK_THROWS_WITH_AS(csv::parse_table("1,2\n3,4\n"),
                         doctest::Contains("header row required"), csv::ParseError);
    try {
        csv::parse_table("a,b\n1,2\n1,oops\n");
        FAIL("expected ParseError");
    } catch (const csv::ParseError& e) {
        CHECK(e.line == 3);
    }
    CHECK_THROWS_AS(csv::parse_table(""), csv::ParseError);
}

TEST_CASE("calibration csv ingestion") {
    const auto path = temp_file("cal.csv");
    {
        std::ofstream out(path);
        out << "# calibration data\n";
        out << "intensity_mw_cm2,rate_cps,rate_err_cps\n";
        out << "10,100000,300\n20,180000,400\n40,280000,500\n";
    }
    const auto points = csv::load_calibration(path.string());
    REQUIRE(points.size() == 3);
    CHECK(points[0].intensity == doctest::Approx(100.0));  // W/m^2
    CHECK(points[2].rate == 280000);

    // power + waist form
    {
        std::ofstream out(path);
        out << "power_nw,waist_um,rate_cps\n49.7,15,100000\n99.4,15,180000\n150,15,240000\n";
    }
    const auto p2 = csv::load_calibration(path.string());
    CHECK(p2[0].intensity == doctest::Approx(140.6).epsilon(1e-3));
    CHECK(p2[0].rate_error > 0.0);  // shot-noise synthesized
    fs::remove(path);
}

TEST_CASE("visibility csv ingestion") {
    const auto path = temp_file("vis.csv");
    {
        std::ofstream out(path);
        out << "exposure_ms,visibility,visibility_err\n0,0.98,0.01\n400,0.77,0.01\n814,0.36,0.01\n";
    }
    const auto points = csv::load_visibility(path.string());
    REQUIRE(points.size() == 3);
    CHECK(points[2].exposure == doctest::Approx(0.814));
    fs::remove(path);
}

TEST_CASE("config parsing") {
    const auto cfg = config::parse(
        "rates.mode = measured\n"
        "rates.detected_bright = 472 kcps\n"
        "rates.r_d = 341 Hz\n"
        "rates.r_b = 16.4 Hz\n"
        "rates.r_bg = 4.2 cps\n"
        "rates.eps_sys = 0.04356\n"
        "policy.window = 20 us\n"
        "mc.trials = 12345\n"
        "# comment\n");
    CHECK(cfg.detected_bright == doctest::Approx(472e3));
    CHECK(cfg.policy.window == doctest::Approx(20e-6));
    CHECK(cfg.mc_trials == 12345);

    const auto rates = cfg.rates();
    CHECK(rates.detected_bright == doctest::Approx(472e3));
    CHECK(rates.r_o == doctest::Approx(472e3 / 0.04356));

    CHECK_THROWS_AS(config::parse("nonsense.key = 1\n"), config::SchemaError);
    CHECK_THROWS_AS(config::parse("policy.window = 56.2 bananas\n"), config::SchemaError);
    CHECK_THROWS_AS(config::parse("policy.window 20 us\n"), config::SchemaError);
    CHECK_THROWS_AS(config::parse("prior_bright = 1.5\n"), config::SchemaError);
}

TEST_CASE("formula-mode config") {
    const auto cfg = config::parse(
        "rates.mode = formula\n"
        "beam.intensity = 56.2 mW/cm2\n"
        "rates.eps_sys = 0.04356\n"
        "rates.r_bg = 4.2 cps\n");
    const auto rates = cfg.rates();
    CHECK(rates.r_o == doctest::Approx(1.304e7).epsilon(1e-3));
    CHECK(rates.r_d == doctest::Approx(4.93e2).epsilon(1e-2));
}

TEST_CASE("window grid") {
    auto cfg = config::RunConfig{};
    cfg.window_min = 1e-6;
    cfg.window_max = 500e-6;
    cfg.window_points = 50;
    const auto grid = cfg.window_grid();
    REQUIRE(grid.size() == 50);
    CHECK(grid.front() == doctest::Approx(1e-6));
    CHECK(grid.back() == doctest::Approx(500e-6));
    CHECK(std::is_sorted(grid.begin(), grid.end()));
}

TEST_CASE("report determinism") {
    setenv("IONREAD_TIMESTAMP", "2026-01-01T00:00:00Z", 1);
    report::Report rep;
    rep.seed = 7;
    rep.inputs = {{"x", 1.5}};
    rep.results = {{"y", 2.5}};
    const auto a = rep.serialize();
    const auto b = rep.serialize();
    CHECK(a == b);
    CHECK(a.find("2026-01-01T00:00:00Z") != std::string::npos);
    unsetenv("IONREAD_TIMESTAMP");
}

TEST_CASE("svg rendering") {
    svg::Plot plot;
    plot.title = "test";
    plot.log_x = true;
    plot.log_y = true;
    svg::Series s{"series", "#123456"};
    s.xs = {1e-6, 1e-5, 1e-4};
    s.ys = {1e-4, 1e-3, 1e-2};
    plot.series = {s};
    const auto rendered = plot.render();
    CHECK(rendered.find("<svg") != std::string::npos);
    CHECK(rendered.find("polyline") != std::string::npos);
    CHECK(rendered.find("series") != std::string::npos);
}
