#include <CLI11.hpp>
#include <iostream>

#include "trk/verify.hpp"

namespace fs = std::filesystem;
using namespace trk;

namespace {

// usage and input errors
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string field = "lundquist";
  std::string params = "{}";
  std::string grid;
  std::string quad = "8,16";
  std::string out = ".";
  std::vector<std::string> tol;
  std::string only;
};

json parse_params(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed --params JSON: ") + e.what());
  }
}

std::pair<int, int> parse_quad(const std::string& s) {
  int a = 0, b = 0;
  char c = 0;
  std::istringstream is(s);
  if (!(is >> a >> c >> b) || c != ',' || a < 1 || b < 2) throw InputError("bad --quad '" + s + "', expected npolar,nazimuth");
  return {a, b};
}

std::map<std::string, double> parse_tols(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& t : items) {
    auto eq = t.find('=');
    if (eq == std::string::npos) throw InputError("bad --tol '" + t + "', expected NAME=VALUE");
    double v = 0.0;
    try {
      v = std::stod(t.substr(eq + 1));
    } catch (const std::exception&) {
      throw InputError("bad --tol value in '" + t + "'");
    }
    if (!(v > 0.0)) throw InputError("tolerances must be positive");
    out[t.substr(0, eq)] = v;
  }
  return out;
}

json field_metadata(const std::string& name, const json& params, const SampledField& f) {
  json m = {{"field", name}, {"params", detail::merged_params(name, params)}};
  m["nu"] = f.info.eigenvalue ? json(*f.info.eigenvalue * (f.info.mu ? f.info.mu : 1)) : json(nullptr);
  m["mu"] = f.info.mu ? json(f.info.mu) : json(nullptr);
  auto l = field_lambda(name, params);
  m["lambda"] = l ? json(*l) : json(nullptr);
  return m;
}

int cmd_catalog(const RunConfig& c, bool write) {
  json out = json::array();
  for (const auto& e : catalog_entries())
    out.push_back({{"name", e.name}, {"description", e.description}, {"defaults", e.defaults},
                   {"analytic_transform", analytic_profile(e.name).has_value()}});
  std::cout << json_text(out);
  if (write) write_atomic(fs::path(c.out) / "catalog.json", json_text(out));
  return 0;
}

int cmd_field_eval(const RunConfig& c) {
  json params = parse_params(c.params);
  SampledField f = make_field(c.field, params);
  SpatialGrid g;
  try {
    g = parse_spatial_grid(c.grid.empty() ? "-1:1:21" : c.grid);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  fs::path dir(c.out);
  write_atomic(dir / "field.csv", field_csv(f, g));
  json meta = field_metadata(c.field, params, f);
  meta["rows"] = g.size();
  write_atomic(dir / "field.json", json_text(meta));
  std::cout << "wrote " << g.size() << " rows to " << (dir / "field.csv").string() << "\n";
  return 0;
}

// max |F(p_j, kappa_i) - F(-p_j, -kappa_i)| over a symmetric grid and antipodal rule
double grid_parity_residual(const GridProfile<CVec3>& f, const SphereQuadrature& q) {
  double worst = 0.0;
  const PGrid& g = f.grid;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (int j = 0; j < g.n; ++j) {
      int jm = ((g.n - j) - int(std::lround(2.0 * g.p0 / g.spacing()))) % g.n;
      jm = (jm % g.n + g.n) % g.n;
      if (std::abs(g.at(jm) + g.at(j)) > 1e-9 * g.period) continue;  // image outside the window
      worst = std::max(worst, max_abs(CVec3(f.samples[i][j] - f.samples[q.antipode[i]][jm])));
    }
  return worst;
}

int cmd_radon(const RunConfig& c) {
  json params = parse_params(c.params);
  SampledField f = make_field(c.field, params);
  fs::path dir(c.out);
  json meta = field_metadata(c.field, params, f);
  if (auto p = analytic_profile(c.field, params)) {
    meta["mode"] = "analytic";
    meta["atoms"] = p->atoms.size();
    meta["parity_residual"] = parity_residual(*p);
    meta["eigen_residual"] = profile_distance(gamma_cross(*p), scaled(*p, p->nu * p->mu));
    write_atomic(dir / "profile.json", json_text(profile_json(*p)));
    write_atomic(dir / "profile_meta.json", json_text(meta));
    std::cout << "analytic profile with " << p->atoms.size() << " atoms\n";
    return 0;
  }
  PGrid g;
  try {
    g = parse_p_grid(c.grid.empty() ? "-8:8:64" : c.grid);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  auto [np, na] = parse_quad(c.quad);
  if (na % 2) throw InputError("--quad needs an even azimuth count");
  auto q = sphere_quadrature(np, na, true);
  auto r = radon_forward_grid(f, g, q.nodes, q.weights);
  double parity = grid_parity_residual(r.profile, q);
  double scale = grid_max(r.profile);
  meta["mode"] = "numeric";
  meta["grid"] = {{"p0", g.p0}, {"period", g.period}, {"n", g.n}, {"spacing", g.spacing()}};
  meta["quad"] = {{"n_polar", np}, {"n_azimuth", na}};
  meta["truncation_warning"] = r.truncation_warning;
  meta["worst_boundary_ratio"] = r.worst_boundary_ratio;
  meta["parity_residual"] = parity;
  meta["parity_pass"] = parity <= 1e-10 * std::max(scale, 1e-300);
  if (r.truncation_warning)
    std::cerr << "warning: plane quadrature truncated, boundary ratio " << format_double(r.worst_boundary_ratio) << "\n";
  write_atomic(dir / "profile.csv", grid_profile_csv(r.profile));
  write_atomic(dir / "profile_meta.json", json_text(meta));
  std::cout << "numeric profile on " << q.size() << " directions x " << g.n << " p-samples\n";
  return 0;
}

int cmd_verify(const RunConfig& c) {
  VerifyOptions o{c.only, parse_tols(c.tol)};
  auto suite = default_checks();
  if (!c.only.empty() &&
      std::none_of(suite.begin(), suite.end(), [&](const VerifyCheck& k) { return verify_selected(k, c.only); }))
    throw InputError("--only '" + c.only + "' matches no records");
  auto records = run_verify(o, suite);
  json report = verify_report(records);
  write_atomic(fs::path(c.out) / "verify_report.json", json_text(report));
  for (const auto& r : records)
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << " residual=" << format_double(r.residual)
              << " tol=" << format_double(r.tolerance) << "\n";
  return report["all_pass"].get<bool>() ? 0 : 1;
}

// ---- plot scripts ---------------------------------------------------------------

bool plot_field(const fs::path& dir) {
  if (!fs::exists(dir / "field.csv")) return false;
  json meta = fs::exists(dir / "field.json") ? json::parse(read_file(dir / "field.json")) : json::object();
  auto rows = read_csv_numbers(read_file(dir / "field.csv"));
  // points in the z = 0 plane, e_theta and e_z components
  std::vector<std::array<double, 3>> pts;
  for (const auto& r : rows) {
    if (r.size() < 9 || std::abs(r[2]) > 1e-12) continue;
    double rad = std::hypot(r[0], r[1]), th = std::atan2(r[1], r[0]);
    pts.push_back({rad, -std::sin(th) * r[3] + std::cos(th) * r[5], r[7]});
  }
  std::sort(pts.begin(), pts.end());
  bool lund = meta.value("field", "") == "lundquist";
  std::string cols = lund ? "r,J1_theta,J0_z" : "r,f_theta,f_z";
  std::string data = "# " + cols + "\n";
  for (const auto& p : pts) data += format_double(p[0]) + " " + format_double(p[1]) + " " + format_double(p[2]) + "\n";
  write_atomic(dir / "field_radial.dat", data);
  std::string script = "set datafile commentschars '#'\nset xlabel 'r'\nset ylabel 'Re F'\nset key top right\n";
  if (lund)
    script += "plot 'field_radial.dat' using 1:2 title 'F0 J1(nu r)  (J1 column)' with points, \\\n"
              "     'field_radial.dat' using 1:3 title 'F0 J0(nu r)  (J0 column)' with points\n";
  else
    script += "plot 'field_radial.dat' using 1:2 title 'Re F_theta' with points, \\\n"
              "     'field_radial.dat' using 1:3 title 'Re F_z' with points\n";
  write_atomic(dir / "field_radial.gp", script);
  return true;
}

// heatmap of |F^R| over (p, psi), psi the azimuth of kappa
bool plot_radon(const fs::path& dir) {
  std::vector<std::array<double, 3>> cells;
  if (fs::exists(dir / "profile.csv")) {
    for (const auto& r : read_csv_numbers(read_file(dir / "profile.csv"))) {
      if (r.size() < 12) continue;
      double mag = std::sqrt(r[6] * r[6] + r[7] * r[7] + r[8] * r[8] + r[9] * r[9] + r[10] * r[10] + r[11] * r[11]);
      cells.push_back({r[5], std::atan2(r[2], r[1]), mag});
    }
  } else if (fs::exists(dir / "profile.json")) {
    auto p = profile_from_json(json::parse(read_file(dir / "profile.json")));
    std::vector<Direction> dirs;
    for (const auto& a : p.atoms)
      if (std::none_of(dirs.begin(), dirs.end(), [&](const Direction& d) { return d.vec() == a.direction.vec(); }))
        dirs.push_back(a.direction);
    for (const auto& d : dirs)
      for (int j = 0; j < 128; ++j) {
        double s = -2.0 * pi + 4.0 * pi * j / 128;
        cells.push_back({s, std::atan2(d.y(), d.x()), max_abs(profile_value(p, s, d))});
      }
  } else {
    return false;
  }
  std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) {
    return a[1] != b[1] ? a[1] < b[1] : a[0] < b[0];
  });
  std::string data = "# p psi abs_F\n";
  double last = std::numeric_limits<double>::quiet_NaN();
  for (const auto& c : cells) {
    if (!std::isnan(last) && c[1] != last) data += "\n";
    last = c[1];
    data += format_double(c[0]) + " " + format_double(c[1]) + " " + format_double(c[2]) + "\n";
  }
  write_atomic(dir / "radon_heatmap.dat", data);
  write_atomic(dir / "radon_heatmap.gp",
               "set xlabel 'p'\nset ylabel 'psi'\nset cblabel '|F^R|'\nset view map\n"
               "splot 'radon_heatmap.dat' using 1:2:3 with points palette pointtype 5 notitle\n");
  return true;
}

bool plot_verify(const fs::path& dir) {
  if (!fs::exists(dir / "verify_report.json")) return false;
  json rep = json::parse(read_file(dir / "verify_report.json"));
  std::string data = "# index name residual tolerance\n";
  int i = 0;
  for (const auto& r : rep.at("records")) {
    double res = r.at("residual").is_number() ? r.at("residual").get<double>() : 1e300;
    data += std::to_string(i++) + " " + r.at("name").get<std::string>() + " " + format_double(std::max(res, 1e-300)) +
            " " + format_double(r.at("tolerance").get<double>()) + "\n";
  }
  write_atomic(dir / "verify_residuals.dat", data);
  write_atomic(dir / "verify_bars.gp",
               "set logscale y\nset style fill solid 0.6\nset boxwidth 0.8\nset xtics rotate by -60 font ',7'\n"
               "set ylabel 'residual'\n"
               "plot 'verify_residuals.dat' using 1:3:xtic(2) with boxes title 'residual', \\\n"
               "     'verify_residuals.dat' using 1:4 with points pointtype 2 title 'tolerance'\n");
  return true;
}

int cmd_plot(const RunConfig& c) {
  fs::path dir(c.out);
  bool any = false;
  any |= plot_field(dir);
  any |= plot_radon(dir);
  any |= plot_verify(dir);
  if (!any) throw InputError("no inputs in " + dir.string() + " (field.csv, profile.csv/json or verify_report.json)");
  std::cout << "plot scripts written to " << dir.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trkalian field toolkit"};
  app.require_subcommand(1);
  RunConfig c;
  auto add_field = [&](CLI::App* s) {
    s->add_option("--field", c.field, "catalog field name");
    s->add_option("--params", c.params, "JSON parameter object");
  };
  auto* catalog = app.add_subcommand("catalog", "list catalog fields");
  auto* out_opt = catalog->add_option("--out", c.out, "output directory");
  auto* fe = app.add_subcommand("field-eval", "evaluate a field on a grid");
  add_field(fe);
  fe->add_option("--grid", c.grid, "x0:x1:n[,y0:y1:n,z0:z1:n]");
  fe->add_option("--out", c.out, "output directory");
  auto* rd = app.add_subcommand("radon", "Radon transform of a field");
  add_field(rd);
  rd->add_option("--grid", c.grid, "p-grid p0:p1:n");
  rd->add_option("--quad", c.quad, "npolar,nazimuth");
  rd->add_option("--out", c.out, "output directory");
  auto* vf = app.add_subcommand("verify", "run the invariant suite");
  vf->add_option("--tol", c.tol, "NAME=VALUE tolerance override");
  vf->add_option("--only", c.only, "group or record filter");
  vf->add_option("--out", c.out, "output directory");
  auto* pl = app.add_subcommand("plot", "emit plot scripts for prior outputs");
  pl->add_option("--out", c.out, "directory holding prior outputs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    if (catalog->parsed()) return cmd_catalog(c, out_opt->count() > 0);
    if (fe->parsed()) return cmd_field_eval(c);
    if (rd->parsed()) return cmd_radon(c);
    if (vf->parsed()) return cmd_verify(c);
    return cmd_plot(c);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CatalogError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: bad parameters: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
