#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "fris/config.hpp"
#include "fris/experiments.hpp"

using namespace fris;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& text) {
    path = std::string(std::tmpnam(nullptr)) + ".json";
    std::ofstream out(path);
    out << text;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("empty file yields full default scenario") {
  TempFile f("");
  auto [sc, pc] = load_config(f.path);
  CHECK(sc.wavelength == doctest::Approx(0.0857));
  CHECK(sc.carrier_hz == doctest::Approx(3.5e9));
  CHECK(sc.grid_mx == 20);
  CHECK(sc.grid_mz == 20);
  CHECK(sc.total_elements() == 400);
  CHECK(sc.rician_k == doctest::Approx(5.0));
  CHECK(sc.alpha_exp == doctest::Approx(2.5));
  CHECK(sc.bd_amplitude == doctest::Approx(1.0));
  CHECK(sc.sigma_sq == doctest::Approx(1e-9));
  CHECK(sc.n_draws == 5);
  CHECK(pc.n_particles == 50);
  CHECK(pc.n_iters == 50);
  CHECK(pc.inertia == doctest::Approx(0.6));
  CHECK(pc.c_cog == doctest::Approx(1.2));
  CHECK(pc.c_soc == doctest::Approx(1.2));
}

TEST_CASE("validation errors") {
  SUBCASE("m_o exceeding the grid") {
    TempFile f(R"({"m_o": 401})");
    CHECK_THROWS_WITH_AS(load_config(f.path),
                         doctest::Contains("m_o"), std::invalid_argument);
  }
  SUBCASE("unknown key named in the error") {
    TempFile f(R"({"mo_": 10})");
    CHECK_THROWS_WITH_AS(load_config(f.path), doctest::Contains("mo_"),
                         std::invalid_argument);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_WITH_AS(load_config("/nonexistent/path.json"),
                         doctest::Contains("config missing"),
                         std::runtime_error);
  }
  SUBCASE("parse error") {
    TempFile f("{not json");
    CHECK_THROWS_WITH_AS(load_config(f.path), doctest::Contains("config parse"),
                         std::runtime_error);
  }
  SUBCASE("gamma above p_max") {
    TempFile f(R"({"gamma_bar_db": 40})");
    CHECK_THROWS_AS(load_config(f.path), std::invalid_argument);
  }
}

TEST_CASE("key overrides") {
  TempFile f(R"({"grid_mx": 8, "grid_mz": 8, "m_o": 16,
                 "encoding": "general", "mode": "continuous",
                 "rician_k": "inf", "n_draws": 7,
                 "hop_tag_fris": {"distance": 2.5, "az_deg": 15}})");
  auto [sc, pc] = load_config(f.path);
  CHECK(sc.total_elements() == 64);
  CHECK(std::isinf(sc.rician_k));
  CHECK(sc.n_draws == 7);
  CHECK(sc.hop_tag_fris.distance == doctest::Approx(2.5));
  CHECK(sc.hop_tag_fris.az == doctest::Approx(15.0 * M_PI / 180));
  CHECK(pc.encoding == Encoding::General);
  CHECK(pc.mode == Mode::Continuous);
}

TEST_CASE("wavelength derived from carrier when not given") {
  TempFile f(R"({"carrier_hz": 3.0e9})");
  auto [sc, pc] = load_config(f.path);
  CHECK(sc.wavelength == doctest::Approx(299792458.0 / 3.0e9));
}

TEST_CASE("mask_dims_for") {
  CHECK(mask_dims_for(100, 20, 20) == std::pair<int, int>{10, 10});
  CHECK(mask_dims_for(64, 10, 10) == std::pair<int, int>{8, 8});
  CHECK(mask_dims_for(12, 4, 4) == std::pair<int, int>{3, 4});
  CHECK_THROWS_AS(mask_dims_for(3, 2, 2), std::invalid_argument);
}

TEST_CASE("effective d_min defaults") {
  ScenarioConfig sc;
  CHECK(sc.effective_d_min(Mode::Grid) == 0.0);
  CHECK(sc.effective_d_min(Mode::Continuous) ==
        doctest::Approx(sc.wavelength / 4));
  sc.d_min = 0.02;
  CHECK(sc.effective_d_min(Mode::Grid) == doctest::Approx(0.02));
  CHECK(sc.effective_d_min(Mode::Continuous) == doctest::Approx(0.02));
}

TEST_CASE("layout csv schema") {
  Layout l;
  l.positions = {{0.123456789123, 0.2}, {0.3, 0.4}};
  SelectionMask mask{{1}};
  const std::string csv = layout_csv(l, mask);
  CHECK(csv ==
        "index,x_m,z_m,on\n"
        "0,0.123456789,0.2,0\n"
        "1,0.3,0.4,1\n");
}

TEST_CASE("sample_stats uses the n-1 divisor") {
  SampleStats st = sample_stats({1.0, 2.0, 3.0, 4.0});
  CHECK(st.mean == doctest::Approx(2.5));
  CHECK(st.stddev == doctest::Approx(std::sqrt(5.0 / 3.0)));
}
