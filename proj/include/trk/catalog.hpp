#pragma once

#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>

#include "trk/cktransform.hpp"

namespace trk {

using json = nlohmann::json;

struct CatalogError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CatalogEntry {
  std::string name;
  std::string description;
  json defaults;
};

inline std::vector<CatalogEntry> catalog_entries() {
  return {
      {"lundquist", "F0 [J1(nu r) e_theta + J0(nu r) e_z]", {{"F0", 1.0}, {"nu", 1.0}, {"ring", 64}}},
      {"mode",
       "superposition of helicity modes (2 pi)^{-3/2}/g sum s Q_lambda(k0) e^{i mu lambda nu k0.x}",
       {{"nu", 1.0},
        {"mu", 1},
        {"g", 1.0},
        {"modes", json::array({{{"lambda", 1}, {"kappa", {0.0, 0.0, 1.0}}, {"amplitude", {1.0, 0.0}}}})}}},
      {"abc", "-i (a e^{i l nu z} E1 + b e^{i l nu x} E2 + c e^{i l nu y} E3)",
       {{"a", 1.0}, {"b", 1.0}, {"c", 1.0}, {"lambda", 1}, {"nu", 1.0}}},
      {"ck_circular", "-[sigma curl(Psi e_z) + curl curl(Psi e_z)], Psi = J_m(nu r) e^{i m theta - i k z}",
       {{"m", 1}, {"k", 0.5}, {"sigma", 1.2}, {"amplitude", 1.0}}},
      {"gaussian", "polarization e^{-|x - c|^2/w^2}",
       {{"center", {0.0, 0.0, 0.0}}, {"width", 1.0}, {"polarization", {1.0, 0.0, 0.0}}}},
      {"gaussian_toroidal", "curl(e^{-|x - c|^2/w^2} a)", {{"center", {0.0, 0.0, 0.0}}, {"width", 1.0}, {"axis", {0.0, 0.0, 1.0}}}},
      {"gaussian_poloidal", "curl curl(e^{-|x - c|^2/w^2} a)",
       {{"center", {0.0, 0.0, 0.0}}, {"width", 1.0}, {"axis", {0.0, 0.0, 1.0}}}},
  };
}

namespace detail {

inline const CatalogEntry& catalog_entry(const std::string& name) {
  static const auto entries = catalog_entries();
  for (const auto& e : entries)
    if (e.name == name) return e;
  throw CatalogError("unknown field '" + name + "'");
}

// defaults overlaid by the user parameters; unknown keys are rejected
inline json merged_params(const std::string& name, const json& params) {
  json out = catalog_entry(name).defaults;
  if (params.is_null()) return out;
  if (!params.is_object()) throw CatalogError("parameters must be a JSON object");
  for (auto it = params.begin(); it != params.end(); ++it) {
    if (!out.contains(it.key())) throw CatalogError("field '" + name + "' has no parameter '" + it.key() + "'");
    out[it.key()] = it.value();
  }
  return out;
}

inline cplx read_complex(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  throw CatalogError("complex values are numbers or [re, im] pairs");
}

inline Vec3 read_vec3(const json& j) {
  if (!j.is_array() || j.size() != 3) throw CatalogError("expected a 3-vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

inline CVec3 read_cvec3(const json& j) {
  if (!j.is_array() || j.size() != 3) throw CatalogError("expected a 3-vector");
  return {read_complex(j[0]), read_complex(j[1]), read_complex(j[2])};
}

inline int read_sign(const json& j, const char* what) {
  int s = j.get<int>();
  if (s != 1 && s != -1) throw CatalogError(std::string(what) + " must be +1 or -1");
  return s;
}

}  // namespace detail

inline ModeField mode_field_from_json(const json& p) {
  ModeField f;
  f.nu = p.at("nu").get<double>();
  f.mu = detail::read_sign(p.at("mu"), "mu");
  f.g = p.at("g").get<double>();
  for (const auto& m : p.at("modes")) {
    Vec3 k = detail::read_vec3(m.at("kappa"));
    if (!(k.norm() > 0.0)) throw CatalogError("mode direction must be nonzero");
    f.modes.push_back({detail::read_sign(m.at("lambda"), "lambda"), Direction::normalized(k),
                       detail::read_complex(m.at("amplitude"))});
  }
  f.validate();
  return f;
}

inline SampledField make_field(const std::string& name, const json& params = json()) {
  json p = detail::merged_params(name, params);
  if (name == "lundquist") return lundquist(p.at("F0").get<double>(), p.at("nu").get<double>());
  if (name == "mode") return mode_field(mode_field_from_json(p));
  if (name == "abc")
    return abc_field(p.at("a").get<double>(), p.at("b").get<double>(), p.at("c").get<double>(),
                     detail::read_sign(p.at("lambda"), "lambda"), p.at("nu").get<double>());
  if (name == "ck_circular")
    return ck_circular({p.at("m").get<int>(), p.at("k").get<double>(), p.at("sigma").get<double>(),
                        p.at("amplitude").get<double>()});
  Vec3 c = detail::read_vec3(p.at("center"));
  double w = p.at("width").get<double>();
  if (name == "gaussian") return gaussian_test_field(c, w, detail::read_cvec3(p.at("polarization")));
  if (name == "gaussian_toroidal") return gaussian_toroidal_field(c, w, detail::read_vec3(p.at("axis")));
  return gaussian_poloidal_field(c, w, detail::read_vec3(p.at("axis")));
}

// Atom profile for fields with an exact transform; nullopt for the numeric ones.
inline std::optional<AnalyticProfile> analytic_profile(const std::string& name, const json& params = json()) {
  json p = detail::merged_params(name, params);
  if (name == "lundquist")
    return lundquist_radon_profile(p.at("F0").get<double>(), p.at("nu").get<double>(), p.at("ring").get<int>());
  if (name == "mode") return radon_mode_analytic(mode_field_from_json(p));
  if (name == "abc") {
    int l = detail::read_sign(p.at("lambda"), "lambda");
    double nu = p.at("nu").get<double>();
    auto [w1, w2] = abc_measures(p.at("a").get<double>(), p.at("b").get<double>(), p.at("c").get<double>(), l, nu);
    return ck_integral_profile(w1, w2, l, nu);
  }
  return std::nullopt;
}

// helicity label shared by all modes, if any
inline std::optional<int> field_lambda(const std::string& name, const json& params = json()) {
  json p = detail::merged_params(name, params);
  if (name == "abc") return p.at("lambda").get<int>();
  if (name == "mode") {
    auto f = mode_field_from_json(p);
    if (f.modes.empty()) return std::nullopt;
    int l = f.modes.front().lambda;
    for (const auto& m : f.modes)
      if (m.lambda != l) return std::nullopt;
    return l;
  }
  return std::nullopt;
}

}  // namespace trk
