#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>
#include <unistd.h>

#include "trk/io.hpp"

using namespace trk;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("trk_cli_" + std::to_string(::getpid())) / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

int run(const std::string& args) {
  std::string cmd = std::string("\"") + TRK_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
  int s = std::system(cmd.c_str());
  return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
}

std::string out(const fs::path& d) { return " --out '" + d.string() + "'"; }

json read_json(const fs::path& p) { return json::parse(read_file(p)); }

}  // namespace

TEST(Cli, CatalogListsFields) {
  auto d = scratch("catalog");
  ASSERT_EQ(run("catalog" + out(d)), 0);
  auto j = read_json(d / "catalog.json");
  std::vector<std::string> names;
  for (const auto& e : j) names.push_back(e.at("name"));
  for (const char* n : {"lundquist", "mode", "abc", "ck_circular", "gaussian"})
    EXPECT_NE(std::find(names.begin(), names.end(), n), names.end()) << n;
}

TEST(Cli, FieldEvalLundquistGrid) {
  auto d = scratch("field");
  ASSERT_EQ(run("field-eval --field lundquist --params '{\"F0\": 1.5, \"nu\": 2.0}' --grid -1:1:21" + out(d)), 0);
  std::string header;
  auto rows = read_csv_numbers(read_file(d / "field.csv"), &header);
  EXPECT_EQ(header, "x,y,z,re_fx,im_fx,re_fy,im_fy,re_fz,im_fz");
  ASSERT_EQ(rows.size(), 9261u);
  EXPECT_EQ(read_json(d / "field.json").at("rows").get<int>(), 9261);
  // independent Bessel oracle
  double worst = 0.0;
  for (const auto& r : rows) {
    double rad = std::hypot(r[0], r[1]);
    double j1 = std::cyl_bessel_j(1.0, 2.0 * rad), j0 = std::cyl_bessel_j(0.0, 2.0 * rad);
    double ex = rad > 0 ? -r[1] / rad : 0.0, ey = rad > 0 ? r[0] / rad : 0.0;
    worst = std::max({worst, std::abs(r[3] - 1.5 * j1 * ex), std::abs(r[5] - 1.5 * j1 * ey), std::abs(r[7] - 1.5 * j0),
                      std::abs(r[4]), std::abs(r[6]), std::abs(r[8])});
  }
  EXPECT_LT(worst, 1e-14);
}

TEST(Cli, FieldEvalModeOrigin) {
  auto d = scratch("mode");
  ASSERT_EQ(run("field-eval --field mode --grid -1:1:3" + out(d)), 0);
  auto rows = read_csv_numbers(read_file(d / "field.csv"));
  ASSERT_EQ(rows.size(), 27u);
  const auto& o = rows[13];
  ASSERT_EQ(o[0], 0.0);
  ASSERT_EQ(o[1], 0.0);
  ASSERT_EQ(o[2], 0.0);
  // default: one lambda = +1 mode along e_z, unit amplitude: (2 pi)^{-3/2} Q_+(e_z) = (2 pi)^{-3/2} (1, i, 0)/sqrt 2
  double c = std::pow(2.0 * pi, -1.5) / std::sqrt(2.0);
  CVec3 got(cplx(o[3], o[4]), cplx(o[5], o[6]), cplx(o[7], o[8]));
  CVec3 want(c, c * I, 0.0);
  EXPECT_LT((got - want).norm(), 1e-15) << got.transpose();
}

TEST(Cli, InputErrorsExitTwo) {
  auto d = scratch("errors");
  EXPECT_EQ(run("field-eval --field lundquist --params '{\"F0\": '" + out(d)), 2);
  EXPECT_EQ(run("field-eval --field nosuchfield" + out(d)), 2);
  EXPECT_EQ(run("field-eval --field lundquist --params '{\"bogus\": 1}'" + out(d)), 2);
  EXPECT_EQ(run("field-eval --field lundquist --grid 1:2" + out(d)), 2);
  EXPECT_EQ(run("radon --field gaussian --grid -8:8:60" + out(d)), 2);
  EXPECT_EQ(run("verify --only nothing_matches" + out(d)), 2);
  EXPECT_EQ(run("no-such-command"), 2);
  EXPECT_FALSE(fs::exists(d / "field.csv"));
}

TEST(Cli, RadonNumericGaussian) {
  auto d = scratch("radon_gauss");
  ASSERT_EQ(run("radon --field gaussian --grid -8:8:32 --quad 6,12" + out(d)), 0);
  auto meta = read_json(d / "profile_meta.json");
  EXPECT_EQ(meta.at("mode"), "numeric");
  EXPECT_TRUE(meta.at("parity_pass").get<bool>());
  EXPECT_FALSE(meta.at("truncation_warning").get<bool>());
  std::string header;
  auto rows = read_csv_numbers(read_file(d / "profile.csv"), &header);
  EXPECT_EQ(header, "direction,kx,ky,kz,weight,p,re_fx,im_fx,re_fy,im_fy,re_fz,im_fz");
  EXPECT_EQ(rows.size(), 6u * 12u * 32u);
  // x-polarized unit Gaussian: F^R_x(p) = pi e^{-p^2} for every direction
  double worst = 0.0;
  for (const auto& r : rows) worst = std::max(worst, std::abs(r[6] - pi * std::exp(-r[5] * r[5])));
  EXPECT_LT(worst, 1e-10);
}

TEST(Cli, RadonAnalyticProfiles) {
  auto d = scratch("radon_atoms");
  ASSERT_EQ(run("radon --field lundquist" + out(d)), 0);
  auto meta = read_json(d / "profile_meta.json");
  EXPECT_EQ(meta.at("mode"), "analytic");
  EXPECT_EQ(meta.at("atoms").get<int>(), 128);
  EXPECT_EQ(meta.at("parity_residual").get<double>(), 0.0);
  EXPECT_LT(meta.at("eigen_residual").get<double>(), 1e-14);

  ASSERT_EQ(run("radon --field mode" + out(d)), 0);
  auto p = profile_from_json(read_json(d / "profile.json"));
  ASSERT_EQ(p.atoms.size(), 2u);
  EXPECT_DOUBLE_EQ(p.atoms[0].direction.vec().dot(p.atoms[1].direction.vec()), -1.0);
  EXPECT_DOUBLE_EQ(p.atoms[0].frequency, -p.atoms[1].frequency);
}

TEST(Cli, VerifyAllPassAndReport) {
  auto d = scratch("verify");
  ASSERT_EQ(run("verify" + out(d)), 0);
  auto rep = read_json(d / "verify_report.json");
  EXPECT_TRUE(rep.at("all_pass").get<bool>());
  EXPECT_EQ(rep.at("failed").get<int>(), 0);
  EXPECT_GE(rep.at("records").size(), 13u);
  for (const auto& r : rep.at("records")) {
    EXPECT_TRUE(r.contains("identity"));
    EXPECT_TRUE(r.at("pass").get<bool>()) << r.at("name");
  }
}

TEST(Cli, VerifyToleranceOverrideFails) {
  auto d = scratch("verify_tol");
  EXPECT_EQ(run("verify --only moses --tol '*=1e-300'" + out(d)), 1);
  auto rep = read_json(d / "verify_report.json");
  EXPECT_FALSE(rep.at("all_pass").get<bool>());
  EXPECT_EQ(run("verify --only moses --tol moses.orthonormal_complete=1e-300 --tol moses=1e-3" + out(d)), 1);
  EXPECT_EQ(run("verify --only moses --tol moses=1e-3" + out(d)), 0);
  EXPECT_EQ(run("verify --only moses --tol notanumber" + out(d)), 2);
}

TEST(Cli, VerifyOnlyFiltersGroup) {
  auto d = scratch("verify_only");
  ASSERT_EQ(run("verify --only ampere" + out(d)), 0);
  auto rep = read_json(d / "verify_report.json");
  ASSERT_EQ(rep.at("records").size(), 2u);
  for (const auto& r : rep.at("records")) EXPECT_EQ(r.at("group"), "ampere");
}

TEST(Cli, PlotScripts) {
  auto d = scratch("plot");
  ASSERT_EQ(run("field-eval --field lundquist --grid -2:2:9,-2:2:9,0:0:1" + out(d)), 0);
  ASSERT_EQ(run("radon --field mode" + out(d)), 0);
  ASSERT_EQ(run("verify --only rbs" + out(d)), 0);
  ASSERT_EQ(run("plot" + out(d)), 0);
  for (const char* f : {"field_radial.dat", "field_radial.gp", "radon_heatmap.dat", "radon_heatmap.gp",
                        "verify_residuals.dat", "verify_bars.gp"})
    EXPECT_TRUE(fs::exists(d / f)) << f;
  std::string radial = read_file(d / "field_radial.dat");
  EXPECT_NE(radial.find("J1_theta"), std::string::npos);
  EXPECT_NE(radial.find("J0_z"), std::string::npos);
  // radial columns against J1, J0 with F0 = nu = 1
  std::istringstream in(radial);
  std::string line;
  std::getline(in, line);
  double worst = 0.0;
  int n = 0;
  while (std::getline(in, line)) {
    double r, ft, fz;
    std::istringstream(line) >> r >> ft >> fz;
    worst = std::max({worst, std::abs(ft - std::cyl_bessel_j(1.0, r)), std::abs(fz - std::cyl_bessel_j(0.0, r))});
    ++n;
  }
  EXPECT_EQ(n, 81);
  EXPECT_LT(worst, 1e-14);
  EXPECT_NE(read_file(d / "verify_bars.gp").find("with boxes"), std::string::npos);
  EXPECT_NE(read_file(d / "radon_heatmap.gp").find("palette"), std::string::npos);
}

TEST(Cli, PlotWithoutInputs) {
  auto d = scratch("plot_empty");
  EXPECT_EQ(run("plot" + out(d)), 2);
}

TEST(Cli, OutputsAreDeterministic) {
  auto a = scratch("det_a"), b = scratch("det_b");
  for (const auto& d : {a, b}) {
    ASSERT_EQ(run("field-eval --field abc --grid -1:1:7" + out(d)), 0);
    ASSERT_EQ(run("radon --field gaussian_toroidal --grid -8:8:16 --quad 4,8" + out(d)), 0);
    ASSERT_EQ(run("verify --only radon" + out(d)), 0);
  }
  for (const char* f : {"field.csv", "field.json", "profile.csv", "profile_meta.json", "verify_report.json"})
    EXPECT_EQ(read_file(a / f), read_file(b / f)) << f;
}
