#include "wavetail/commands.hpp"
#include "wavetail/config.hpp"
#include "wavetail/series_io.hpp"

#include "doctest.h"
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <unistd.h>

using namespace wavetail;

namespace {

const char* sample_config_text =
    "label = io-test\n"
    "l = 1\n"
    "eps = 0.1 0.05\n"
    "observers = 2 3.5\n"
    "\n"
    "[bump]\n"
    "amplitude = 1.0\n"
    "center = 1.0\n"
    "width = 0.8\n"
    "smoothness = 8\n"
    "\n"
    "[term]\n"
    "c = 1.0\n"
    "p = 3\n"
    "q = 0\n"
    "\n"
    "[grid]\n"
    "dr = 0.03125\n"
    "r_out = 40\n"
    "t_max = 30  # keeps the observers causally clean\n";

SimulationConfig parse_text(const std::string& text,
                            const std::string& name = "<test>") {
    std::istringstream in(text);
    return parse_config(in, name);
}

}  // namespace

TEST_CASE("config parsing and canonical form") {
    SimulationConfig cfg = parse_text(sample_config_text);
    CHECK(cfg.label == "io-test");
    CHECK(cfg.dim.l == 1);
    REQUIRE(cfg.epsilons.size() == 2);
    CHECK(cfg.epsilons[1] == doctest::Approx(0.05));
    REQUIRE(cfg.observers.size() == 2);
    CHECK(cfg.observers[1] == doctest::Approx(3.5));
    REQUIRE(cfg.terms.size() == 1);
    CHECK(cfg.terms[0].p == 3);
    CHECK(cfg.grid.r_out == doctest::Approx(40.0));

    // canonical text is a fixed point of parse -> print
    std::string canon = canonical_config(cfg);
    SimulationConfig again = parse_text(canon, "<canon>");
    CHECK(canonical_config(again) == canon);
    CHECK(config_hash(again) == config_hash(cfg));

    // any semantic change moves the hash
    again.epsilons[0] = 0.2;
    CHECK(config_hash(again) != config_hash(cfg));
}

TEST_CASE("config errors carry file and line") {
    std::string bad = sample_config_text;
    bad.insert(bad.find("[bump]"), "bogus = 1\n");
    // the inserted key lands on line 6 of the text
    try {
        (void)parse_text(bad, "myconfig");
        FAIL("expected parse error");
    } catch (const std::exception& e) {
        std::string what = e.what();
        CHECK(what.find("myconfig:6") != std::string::npos);
        CHECK(what.find("bogus") != std::string::npos);
    }
}

TEST_CASE("series CSV round trip is exact") {
    ObserverSeries s;
    s.r_obs = 3.25;
    s.t = {0.0, 0.5, 1.0, 1.5};
    s.phi = {1.0 / 3.0, 1e-300, -2.5e17, 0.0};
    s.dphi_dt = {-1.0 / 7.0, 2.0, 4e-17, 1.0};
    SeriesMeta meta;
    meta.label = "round trip";
    meta.config = "deadbeef01234567";
    meta.l = 2;
    meta.eps = 0.05;
    meta.support_radius = 2.8;
    meta.terms = "c=1 p=3 q=0 alpha=0 beta=0";

    std::stringstream buf;
    write_series_csv(buf, meta, s);
    LoadedSeries back = read_series_csv(buf, "buf.csv");

    CHECK(back.meta.label == meta.label);
    CHECK(back.meta.config == meta.config);
    CHECK(back.meta.l == meta.l);
    CHECK(back.meta.eps == meta.eps);
    CHECK(back.meta.support_radius == meta.support_radius);
    CHECK(back.meta.terms == meta.terms);
    CHECK(back.series.r_obs == s.r_obs);
    REQUIRE(back.series.t.size() == s.t.size());
    for (size_t i = 0; i < s.t.size(); ++i) {
        CHECK(back.series.t[i] == s.t[i]);
        CHECK(back.series.phi[i] == s.phi[i]);
        CHECK(back.series.dphi_dt[i] == s.dphi_dt[i]);
    }
}

TEST_CASE("malformed series rows are rejected with a line number") {
    ObserverSeries s;
    s.r_obs = 1.0;
    s.t = {0.0, 1.0};
    s.phi = {1.0, 2.0};
    s.dphi_dt = {0.0, 0.0};
    std::stringstream buf;
    write_series_csv(buf, SeriesMeta{}, s);
    std::string text = buf.str();
    int lines = int(std::count(text.begin(), text.end(), '\n'));
    text += "1.0,2.0\n";  // missing column
    std::istringstream in(text);
    try {
        (void)read_series_csv(in, "bad.csv");
        FAIL("expected row error");
    } catch (const std::exception& e) {
        std::string what = e.what();
        CHECK(what.find("bad.csv:" + std::to_string(lines + 1)) !=
              std::string::npos);
    }
}

TEST_CASE("source term rendering") {
    NonlinearityTerm t1;
    t1.c = 1.0;
    t1.p = 2;
    t1.q = 0;
    NonlinearityTerm t2;
    t2.c = -1.0;
    t2.p = 0;
    t2.q = 2;
    t2.alpha = 0.0;
    t2.beta = 1.0;
    CHECK(describe_terms({t1, t2}) ==
          "c=1 p=2 q=0 alpha=0 beta=0; c=-1 p=0 q=2 alpha=0 beta=1");
}

TEST_CASE("fit command end to end") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() /
                   ("wavetail-io-test-" + std::to_string(::getpid()));
    fs::create_directories(dir);

    // synthetic clean tail: phi = 5 t^-4 past the light-cone transient
    ObserverSeries s;
    s.r_obs = 2.0;
    for (double t = 1.0; t <= 400.0; t += 0.5) {
        s.t.push_back(t);
        double phi = t < 10.0 ? std::sin(t) : 5.0 * std::pow(t, -4.0);
        s.phi.push_back(phi);
        s.dphi_dt.push_back(0.0);
    }
    SeriesMeta meta;
    meta.label = "synthetic";
    meta.l = 1;
    meta.eps = 0.05;
    meta.support_radius = 2.8;
    fs::path csv = dir / "synthetic.csv";
    write_series_csv(csv.string(), meta, s);

    CommandOptions opts;
    opts.inputs = {csv.string()};
    opts.out_dir = dir.string();
    CHECK(cmd_fit(opts) == 0);

    std::ifstream in(dir / "fit.json");
    REQUIRE(in.good());
    nlohmann::json report = nlohmann::json::parse(in);
    CHECK(report["command"] == "fit");
    REQUIRE(report["series"].size() == 1);
    const auto& row = report["series"][0];
    CHECK(double(row["gamma"]) == doctest::Approx(4.0).epsilon(1e-4));
    CHECK(double(row["amplitude"]) == doctest::Approx(5.0).epsilon(1e-4));
    CHECK(double(row["window"][0]) == doctest::Approx(20.0));
    CHECK(double(row["eps"]) == doctest::Approx(0.05));

    fs::remove_all(dir);

    CHECK_THROWS_AS((void)cmd_fit(CommandOptions{}), std::invalid_argument);
}
