#include "torusx/json_io.hpp"

#include "torusx/text.hpp"

#include <stdexcept>

namespace torusx {

namespace {

Json int_json(const Integer& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer too large for JSON output");
  return z.get_si();
}

Json int_row(std::span<const Integer> v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(int_json(x));
  return a;
}

Json primitive_row(std::span<const Rational> v) {
  IntVector c = clear_denominators(v);
  return int_row(primitive(c));
}

Json rat_row(std::span<const Rational> v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

Json long_row(const std::vector<long>& v) {
  Json a = Json::array();
  for (long x : v) a.push_back(x);
  return a;
}

std::vector<std::string> t_names(std::size_t d) {
  if (d == 1) return {"t"};
  std::vector<std::string> names;
  for (std::size_t i = 0; i < d; ++i) names.push_back("t" + std::to_string(i + 1));
  return names;
}

Rational rational_from_json(const Json& x) {
  if (x.is_number_integer()) return Rational(x.get<long>());
  if (x.is_string()) {
    CycloNumber c = parse_cyclo(x.get<std::string>());
    if (!c.is_rational()) throw std::invalid_argument("expected a rational number, got " + x.get<std::string>());
    return c.rational_value();
  }
  throw std::invalid_argument("expected an integer or a \"p/q\" string");
}

}  // namespace

Json to_json(const Rational& q) { return to_string(q); }
Json to_json(const CycloNumber& c) { return to_string(c); }

Json to_json(const Cone& c) {
  Json j;
  j["label"] = c.label();
  j["dim"] = c.dim();
  Json eq = Json::array(), ineq = Json::array(), lin = Json::array();
  for (const auto& r : c.equalities()) eq.push_back(primitive_row(r));
  for (const auto& r : c.inequalities()) ineq.push_back(primitive_row(r));
  RatSubspace L = lin_space(c);
  for (std::size_t i = 0; i < L.dim(); ++i) lin.push_back(primitive_row(L.basis().row(i)));
  j["equalities"] = eq;
  j["inequalities"] = ineq;
  j["lin_basis"] = lin;
  j["relint_point"] = rat_row(c.relint_point());
  j["tie_set"] = c.tie_set();
  return j;
}

Json to_json(const Fan& fan) {
  Json j;
  j["ambient_dim"] = fan.ambient_dim;
  Json cones = Json::array();
  for (const auto& c : fan.cones) cones.push_back(to_json(c));
  j["cones"] = cones;
  Json inc = Json::array();
  for (const auto& [face, cone] : fan.incidence) inc.push_back(Json::array({face, cone}));
  j["incidence"] = inc;
  return j;
}

Json to_json(const TorsionPoint& p) {
  Json j;
  j["order"] = p.order;
  j["angles"] = long_row(p.angles);
  return j;
}

Json to_json(const Subtorus& h) {
  Json j;
  j["dim"] = h.dim();
  Json dirs = Json::array(), eqs = Json::array();
  for (std::size_t k = 0; k < h.dim(); ++k) dirs.push_back(int_row(h.param().col(k)));
  for (std::size_t i = 0; i < h.char_lattice().rank(); ++i) eqs.push_back(int_row(h.char_lattice().basis().row(i)));
  j["directions"] = dirs;
  j["equations"] = eqs;
  return j;
}

Json to_json(const Coset& c) {
  Json j;
  Json base = Json::array();
  for (const auto& x : c.base) base.push_back(to_json(x));
  j["base"] = base;
  j["torus"] = to_json(c.torus);
  return j;
}

Json to_json(const IntersectionVerdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  const auto names = t_names(v.g.num_vars());
  j["g"] = v.g.is_zero() ? "0" : to_string(v.g, names);
  j["monomial"] = v.status == IntersectionStatus::Empty ? Json(to_string(v.g, names)) : Json(nullptr);
  return j;
}

Json to_json(const SurjectivityVerdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  j["reason"] = v.reason;
  j["kernel"] = long_row(v.kernel);
  Json comps = Json::array();
  for (const auto& p : v.components) comps.push_back(to_json(p));
  j["components"] = comps;
  Json groups = Json::array();
  for (const auto& [e, p] : v.groups) groups.push_back(Json{{"e", e}, {"poly", to_string(p)}});
  j["groups"] = groups;
  if (v.witness) {
    Json w = Json::array();
    for (const auto& x : *v.witness) w.push_back(to_json(x));
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  if (v.target) {
    Json t = Json::array();
    for (const auto& x : *v.target) t.push_back(to_json(x));
    j["target"] = t;
    j["target_character"] = long_row(*v.target_character);
  } else {
    j["target"] = nullptr;
    j["target_character"] = nullptr;
  }
  j["certificate"] = v.certificate ? Json::array({v.certificate->first, v.certificate->second}) : Json(nullptr);
  j["component_system"] = v.component_system;
  return j;
}

Json to_json(const DensityReport& r) {
  Json j;
  j["N"] = r.N;
  j["mode"] = r.exhaustive ? "exhaustive" : "sample";
  j["total"] = r.total;
  j["surjective"] = r.surjective;
  j["not_surjective"] = r.not_surjective;
  j["unknown"] = r.unknown;
  j["seed"] = r.seed;
  j["fiber_samples"] = r.fiber_samples;
  return j;
}

Json to_json(const BadSubtorus& b) {
  Json j;
  j["direction"] = long_row(b.direction);
  j["witness"] = to_json(b.witness);
  return j;
}

Json to_json(const TorsionCosetHit& h) {
  Json j;
  j["point"] = to_json(h.point);
  j["coset_torus"] = h.coset_torus ? to_json(*h.coset_torus) : Json(nullptr);
  return j;
}

Json to_json(const PointCloud& cloud) {
  Json j;
  Json meta;
  meta["polynomial"] = cloud.meta.polynomial;
  meta["seed"] = cloud.meta.seed;
  meta["count"] = cloud.meta.count;
  meta["log_box"] = cloud.meta.log_box;
  meta["residual_tol"] = cloud.meta.residual_tol;
  meta["solve_policy"] = to_string(cloud.meta.policy);
  meta["draws"] = cloud.meta.draws;
  meta["rejected"] = cloud.meta.rejected;
  meta["convention"] = "-Log";
  j["ambient_dim"] = cloud.ambient_dim;
  j["meta"] = meta;
  j["points"] = cloud.points;
  return j;
}

IntMatrix int_matrix_from_json(const Json& j, std::size_t cols) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of integer rows");
  IntMatrix m(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& row = j[i];
    if (!row.is_array() || row.size() != cols)
      throw std::invalid_argument("row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!row[c].is_number_integer()) throw std::invalid_argument("matrix entries must be integers");
      m(i, c) = row[c].get<long>();
    }
  }
  return m;
}

std::vector<RatVector> rat_rows_from_json(const Json& j, std::size_t cols) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of rows");
  std::vector<RatVector> rows;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != cols)
      throw std::invalid_argument("each row must have " + std::to_string(cols) + " entries");
    RatVector r;
    for (const auto& x : row) r.push_back(rational_from_json(x));
    rows.push_back(std::move(r));
  }
  return rows;
}

TorsionPoint torsion_point_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("order") || !j.contains("angles"))
    throw std::invalid_argument("a torsion point needs \"order\" and \"angles\"");
  if (!j["order"].is_number_integer() || j["order"].get<long>() < 1)
    throw std::invalid_argument("\"order\" must be a positive integer");
  std::vector<long> angles;
  for (const auto& a : j["angles"]) {
    if (!a.is_number_integer()) throw std::invalid_argument("angles must be integers");
    angles.push_back(a.get<long>());
  }
  return TorsionPoint::make(j["order"].get<unsigned long>(), std::move(angles));
}

Coset coset_from_json(const Json& j, std::size_t n) {
  if (!j.is_object() || !j.contains("base")) throw std::invalid_argument("a coset needs \"base\"");
  Coset c;
  for (const auto& x : j["base"]) {
    if (x.is_number_integer())
      c.base.emplace_back(x.get<long>());
    else if (x.is_string())
      c.base.push_back(parse_cyclo(x.get<std::string>()));
    else
      throw std::invalid_argument("base coordinates must be integers or strings");
  }
  if (c.base.size() != n) throw std::invalid_argument("base has the wrong number of coordinates");
  const bool dirs = j.contains("directions"), eqs = j.contains("equations");
  if (dirs == eqs) throw std::invalid_argument("a coset needs exactly one of \"directions\" and \"equations\"");
  if (dirs) {
    IntMatrix rows = int_matrix_from_json(j["directions"], n);
    c.torus = rows.rows() == 0 ? Subtorus::from_equations(n, IntMatrix::identity(n))
                               : Subtorus::from_parametrization(rows.transpose());
  } else {
    IntMatrix rows = int_matrix_from_json(j["equations"], n);
    c.torus = Subtorus::from_equations(n, rows.rows() == 0 ? IntMatrix(0, n) : rows);
  }
  c.validate();
  return c;
}

}  // namespace torusx
