#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "trk/catalog.hpp"

namespace trk {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// temp file in the same directory, then rename over the target
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  auto dir = path.parent_path();
  if (!dir.empty()) std::filesystem::create_directories(dir);
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::string json_text(const json& j) { return j.dump(2) + "\n"; }

// ---- spatial grids ------------------------------------------------------------

struct Axis {
  double lo = -1.0, hi = 1.0;
  int n = 21;

  double at(int i) const { return n == 1 ? lo : lo + (hi - lo) * i / (n - 1); }
};

struct SpatialGrid {
  std::array<Axis, 3> axes;
  std::size_t size() const { return std::size_t(axes[0].n) * axes[1].n * axes[2].n; }
};

// "x0:x1:n" for all axes or "x0:x1:n,y0:y1:n,z0:z1:n"
inline std::vector<Axis> parse_axes(const std::string& spec) {
  std::vector<Axis> out;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    Axis a;
    char c1 = 0, c2 = 0;
    std::istringstream is(part);
    if (!(is >> a.lo >> c1 >> a.hi >> c2 >> a.n) || c1 != ':' || c2 != ':' || !(is >> std::ws).eof())
      throw std::invalid_argument("bad grid axis '" + part + "', expected lo:hi:n");
    if (a.n < 1) throw std::invalid_argument("grid resolution must be positive");
    out.push_back(a);
  }
  if (out.empty()) throw std::invalid_argument("empty grid specification");
  return out;
}

inline SpatialGrid parse_spatial_grid(const std::string& spec) {
  auto axes = parse_axes(spec);
  if (axes.size() == 1) return {{axes[0], axes[0], axes[0]}};
  if (axes.size() != 3) throw std::invalid_argument("grid needs one or three axes");
  return {{axes[0], axes[1], axes[2]}};
}

// p0:p1:n with the right end excluded (periodic)
inline PGrid parse_p_grid(const std::string& spec) {
  auto axes = parse_axes(spec);
  if (axes.size() != 1) throw std::invalid_argument("p-grid needs exactly one axis");
  PGrid g{axes[0].lo, axes[0].hi - axes[0].lo, axes[0].n};
  g.validate();
  return g;
}

// ---- CSV ------------------------------------------------------------------------

inline std::string field_csv(const SampledField& f, const SpatialGrid& g) {
  const auto& [ax, ay, az] = g.axes;
  std::vector<std::string> rows(g.size());
  parallel_for(g.size(), [&](std::size_t idx) {
    int i = int(idx / (std::size_t(ay.n) * az.n)), j = int(idx / az.n % ay.n), k = int(idx % az.n);
    Vec3 x(ax.at(i), ay.at(j), az.at(k));
    CVec3 v = f(x);
    std::string r = format_double(x[0]) + "," + format_double(x[1]) + "," + format_double(x[2]);
    for (int c = 0; c < 3; ++c) r += "," + format_double(v[c].real()) + "," + format_double(v[c].imag());
    rows[idx] = r + "\n";
  });
  std::string out = "x,y,z,re_fx,im_fx,re_fy,im_fy,re_fz,im_fz\n";
  for (const auto& r : rows) out += r;
  return out;
}

inline std::string grid_profile_csv(const GridProfile<CVec3>& f) {
  std::string out = "direction,kx,ky,kz,weight,p,re_fx,im_fx,re_fy,im_fy,re_fz,im_fz\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Vec3& k = f.directions[i].vec();
    std::string head = std::to_string(i) + "," + format_double(k[0]) + "," + format_double(k[1]) + "," +
                       format_double(k[2]) + "," + format_double(f.weights.empty() ? 0.0 : f.weights[i]);
    for (int j = 0; j < f.grid.n; ++j) {
      out += head + "," + format_double(f.grid.at(j));
      for (int c = 0; c < 3; ++c)
        out += "," + format_double(f.samples[i][j][c].real()) + "," + format_double(f.samples[i][j][c].imag());
      out += "\n";
    }
  }
  return out;
}

inline std::vector<std::vector<double>> read_csv_numbers(const std::string& text, std::string* header = nullptr) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<double>> rows;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV");
  if (header) *header = line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> r;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) r.push_back(std::stod(cell));
    rows.push_back(std::move(r));
  }
  return rows;
}

// ---- JSON profiles ----------------------------------------------------------------

inline json complex_json(cplx v) { return json::array({v.real(), v.imag()}); }

inline json profile_json(const AnalyticProfile& f) {
  json atoms = json::array();
  for (const auto& a : f.atoms) {
    const Vec3& k = a.direction.vec();
    atoms.push_back({{"direction", {k[0], k[1], k[2]}},
                     {"frequency", a.frequency},
                     {"amplitude", {complex_json(a.amplitude[0]), complex_json(a.amplitude[1]), complex_json(a.amplitude[2])}},
                     {"weight", a.weight}});
  }
  return {{"nu", f.nu}, {"mu", f.mu}, {"atoms", atoms}};
}

inline AnalyticProfile profile_from_json(const json& j) {
  AnalyticProfile f{{}, j.at("nu").get<double>(), j.at("mu").get<int>()};
  for (const auto& a : j.at("atoms"))
    f.atoms.push_back({Direction::normalized(detail::read_vec3(a.at("direction"))), a.at("frequency").get<double>(),
                       detail::read_cvec3(a.at("amplitude")), a.at("weight").get<double>()});
  return f;
}

}  // namespace trk
