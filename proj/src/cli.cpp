#include "torusx/cli.hpp"

#include "torusx/text.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace torusx {

namespace {

// A refused job: a cap was exceeded.
struct Refusal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class T>
void env_override(const char* name, T& value) {
  const char* v = std::getenv(name);
  if (!v || !*v) return;
  try {
    if (!std::isdigit(static_cast<unsigned char>(v[0]))) throw std::invalid_argument(name);
    std::size_t pos = 0;
    unsigned long long x = std::stoull(v, &pos);
    if (pos != std::string(v).size()) throw std::invalid_argument(name);
    value = static_cast<T>(x);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("environment variable ") + name + " is not a nonnegative integer");
  }
}

const std::string& param(const JobConfig& job, const std::string& key) {
  auto it = job.params.find(key);
  if (it == job.params.end()) throw std::invalid_argument("missing parameter --" + key);
  return it->second;
}

std::string param_or(const JobConfig& job, const std::string& key, const std::string& dflt) {
  auto it = job.params.find(key);
  return it == job.params.end() ? dflt : it->second;
}

long to_long(const std::string& key, const std::string& s) {
  try {
    std::size_t pos = 0;
    long x = std::stol(s, &pos);
    if (pos == s.size()) return x;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("--" + key + " expects an integer, got '" + s + "'");
}

double to_double(const std::string& key, const std::string& s) {
  try {
    std::size_t pos = 0;
    double x = std::stod(s, &pos);
    if (pos == s.size()) return x;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("--" + key + " expects a number, got '" + s + "'");
}

Json json_arg(const std::string& key, const std::string& s) {
  std::string text = s;
  if (!s.empty() && s[0] == '@') {
    std::ifstream in(s.substr(1));
    if (!in) throw std::invalid_argument("--" + key + ": cannot read " + s.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("--" + key + ": invalid JSON: " + e.what());
  }
}

SearchEffort effort_of(const JobConfig& job) {
  const std::string e = param_or(job, "effort", "full");
  if (e == "full") return SearchEffort{};
  if (e == "quick") return SearchEffort::quick();
  throw std::invalid_argument("--effort must be 'quick' or 'full'");
}

std::string row_text(const Json& row) { return row.dump(); }

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

std::string fan_plain(const Json& fan) {
  std::string out = "ambient_dim: " + std::to_string(fan["ambient_dim"].get<std::size_t>()) + "\n";
  out += "cones: " + std::to_string(fan["cones"].size()) + "\n";
  for (const auto& c : fan["cones"])
    out += c["label"].get<std::string>() + " dim " + std::to_string(c["dim"].get<std::size_t>()) + " lin_basis " +
           row_text(c["lin_basis"]) + " equalities " + row_text(c["equalities"]) + " inequalities " +
           row_text(c["inequalities"]) + "\n";
  for (const auto& p : fan["incidence"])
    out += "face " + p[0].get<std::string>() + " of " + p[1].get<std::string>() + "\n";
  return out;
}

std::string coords_plain(const Json& a) {
  std::vector<std::string> xs;
  for (const auto& x : a) xs.push_back(x.is_string() ? x.get<std::string>() : x.dump());
  return "(" + join(xs, ", ") + ")";
}

struct Result {
  Json json;
  std::string plain;
  bool unknown_dominated = false;
};

Result do_trop(const LaurentPoly& f) {
  Result r;
  r.json = to_json(tropical_hypersurface(f));
  r.plain = fan_plain(r.json);
  return r;
}

Result do_nondegen(const LaurentPoly& f) {
  Result r;
  bool nd = is_geometrically_non_degenerate(f);
  auto st = stabilizer_lattice(f);
  Json basis = Json::array();
  for (std::size_t i = 0; i < st.rank(); ++i) {
    Json row = Json::array();
    for (const auto& x : st.basis().row(i)) row.push_back(x.get_si());
    basis.push_back(row);
  }
  r.json["non_degenerate"] = nd;
  r.json["stabilizer_basis"] = basis;
  r.plain = std::string("non_degenerate: ") + (nd ? "true" : "false") + "\nstabilizer_basis: " + basis.dump() + "\n";
  return r;
}

Result do_rotund(const JobConfig& job, const LaurentPoly& f) {
  const std::size_t n = f.num_vars();
  auto rows = rat_rows_from_json(json_arg("L", param(job, "L")), n);
  RatSubspace L = RatSubspace::span(n, rows);
  Fan fan = tropical_hypersurface(f);
  if (L.dim() == 0) throw std::invalid_argument("--L spans the zero subspace");
  auto cone = exists_full_sum(fan, L);
  Result r;
  r.json["rotund"] = cone.has_value();
  r.json["cone"] = cone ? Json(*cone) : Json(nullptr);
  r.json["dim_L"] = L.dim();
  r.plain = std::string("rotund: ") + (cone ? "true" : "false") + "\ncone: " + (cone ? *cone : "none") + "\n";
  return r;
}

Result do_intersect(const JobConfig& job, const LaurentPoly& f) {
  Coset c = coset_from_json(json_arg("coset", param(job, "coset")), f.num_vars());
  auto v = coset_intersects(f, c);
  Result r;
  r.json["coset"] = to_json(c);
  r.json["verdict"] = to_json(v);
  r.plain = "status: " + to_string(v.status) + "\ng: " + r.json["verdict"]["g"].get<std::string>() + "\n";
  return r;
}

Result do_star(const JobConfig& job, const LaurentPoly& f) {
  Fan fan = tropical_hypersurface(f);
  Result r;
  r.json = to_json(star(fan, param(job, "cone")));
  r.plain = fan_plain(r.json);
  return r;
}

Result do_surj(const JobConfig& job, const LaurentPoly& f) {
  const std::size_t n = f.num_vars();
  IntMatrix A = int_matrix_from_json(json_arg("A", param(job, "A")), n);
  auto v = surjectivity_decide(f, A, effort_of(job));
  Result r;
  r.json = to_json(v);
  r.plain = "status: " + to_string(v.status) + "\nreason: " + v.reason + "\n";
  if (v.witness) r.plain += "witness: " + coords_plain(r.json["witness"]) + "\n";
  if (v.target) r.plain += "target: " + coords_plain(r.json["target"]) + "\n";
  if (v.certificate)
    r.plain += "certificate: groups " + std::to_string(v.certificate->first) + " and " +
               std::to_string(v.certificate->second) + "\n";
  r.unknown_dominated = v.status == SurjectivityStatus::Unknown;
  return r;
}

Result do_density(const JobConfig& job, const LaurentPoly& f) {
  const long N = to_long("N", param(job, "N"));
  const std::string mode = param_or(job, "mode", "exhaustive");
  DensityOptions o;
  if (mode == "exhaustive") {
    o.exhaustive = true;
  } else if (mode == "sample") {
    o.exhaustive = false;
    long s = to_long("samples", param_or(job, "samples", "500"));
    if (s < 0) throw std::invalid_argument("--samples must be nonnegative");
    o.samples = static_cast<std::size_t>(s);
  } else {
    throw std::invalid_argument("--mode must be 'exhaustive' or 'sample'");
  }
  long w = to_long("workers", param_or(job, "workers", "1"));
  if (w < 1) throw std::invalid_argument("--workers must be at least 1");
  o.workers = static_cast<unsigned>(w);
  o.seed = job.seed;
  o.exhaustive_cap = job.caps.density_cap;
  o.effort = effort_of(job);
  DensityReport rep;
  try {
    rep = density_estimate(f, N, o);
  } catch (const std::length_error& e) {
    throw Refusal(e.what());
  }
  Result r;
  r.json = to_json(rep);
  r.plain = "N: " + std::to_string(rep.N) + "\nmode: " + mode + "\ntotal: " + std::to_string(rep.total) +
            "\nsurjective: " + std::to_string(rep.surjective) + "\nnot_surjective: " +
            std::to_string(rep.not_surjective) + "\nunknown: " + std::to_string(rep.unknown) + "\n";
  r.unknown_dominated = rep.unknown > rep.surjective + rep.not_surjective;
  return r;
}

Result do_badtori(const JobConfig& job, const LaurentPoly& f) {
  long b = to_long("bound", param(job, "bound"));
  auto list = bad_subtorus_search(f, b, effort_of(job));
  Result r;
  Json arr = Json::array();
  for (const auto& x : list) arr.push_back(to_json(x));
  r.json["bound"] = b;
  r.json["subtori"] = arr;
  r.plain = "subtori: " + std::to_string(list.size()) + "\n";
  for (const auto& x : arr)
    r.plain += "direction " + coords_plain(x["direction"]) + " base " + coords_plain(x["witness"]["base"]) + "\n";
  return r;
}

Result do_mm(const JobConfig& job, const LaurentPoly& f) {
  long m = to_long("max-order", param(job, "max-order"));
  long b = to_long("direction-bound", param_or(job, "direction-bound", "2"));
  if (m < 1) throw std::invalid_argument("--max-order must be at least 1");
  TorsionCaps caps{job.caps.max_torsion_vars, job.caps.max_torsion_order};
  std::vector<TorsionCosetHit> hits;
  try {
    hits = torsion_cosets_on_hypersurface(f, static_cast<unsigned long>(m), b, caps);
  } catch (const std::length_error& e) {
    throw Refusal(e.what());
  }
  Result r;
  Json arr = Json::array();
  for (const auto& h : hits) arr.push_back(to_json(h));
  r.json["max_order"] = m;
  r.json["direction_bound"] = b;
  r.json["points"] = arr;
  r.plain = "points: " + std::to_string(hits.size()) + "\n";
  for (const auto& h : arr) {
    r.plain += "order " + std::to_string(h["point"]["order"].get<unsigned long>()) + " angles " +
               coords_plain(h["point"]["angles"]) + " coset ";
    r.plain += h["coset_torus"].is_null() ? "none" : "directions " + h["coset_torus"]["directions"].dump();
    r.plain += "\n";
  }
  return r;
}

Result do_amoeba(const JobConfig& job, const LaurentPoly& f) {
  long count = to_long("count", param(job, "count"));
  double scale = to_double("scale", param(job, "scale"));
  if (count < 0) throw std::invalid_argument("--count must be nonnegative");
  if (static_cast<std::size_t>(count) > job.caps.max_amoeba_count)
    throw Refusal("amoeba count exceeds the cap " + std::to_string(job.caps.max_amoeba_count));
  if (!(scale > 0)) throw std::invalid_argument("--scale must be positive");
  AmoebaOptions o;
  const std::string pol = param_or(job, "policy", "highest");
  if (pol == "highest")
    o.policy = SolvePolicy::highest;
  else if (pol == "round_robin")
    o.policy = SolvePolicy::round_robin;
  else
    throw std::invalid_argument("--policy must be 'highest' or 'round_robin'");
  auto cloud = sample_amoeba(f, static_cast<std::size_t>(count), scale, job.seed, o);
  Result r;
  r.json = to_json(cloud);
  r.json["trop_consistency"] = trop_consistency(cloud, tropical_hypersurface(f), scale);
  r.plain = to_csv(cloud);
  return r;
}

Result do_script_n(const JobConfig& job) {
  TorsionPoint p = torsion_point_from_json(json_arg("point", param(job, "point")));
  std::optional<long> bound;
  if (job.params.count("bound")) bound = to_long("bound", param(job, "bound"));
  auto N = script_n(p, bound);
  Result r;
  r.json["point"] = to_json(p);
  r.json["script_n"] = N ? Json(*N) : Json(nullptr);
  r.plain = "script_n: " + (N ? std::to_string(*N) : std::string("none within bound")) + "\n";
  return r;
}

}  // namespace

Caps Caps::from_env() {
  Caps c;
  env_override("TORUSX_MAX_SUPPORT", c.max_support);
  env_override("TORUSX_MAX_TORSION_VARS", c.max_torsion_vars);
  env_override("TORUSX_MAX_TORSION_ORDER", c.max_torsion_order);
  env_override("TORUSX_DENSITY_CAP", c.density_cap);
  env_override("TORUSX_MAX_AMOEBA_COUNT", c.max_amoeba_count);
  return c;
}

Json to_json(const JobConfig& job) {
  Json j;
  j["command"] = job.command;
  j["polynomial"] = job.polynomial;
  j["nvars"] = job.nvars ? Json(*job.nvars) : Json(nullptr);
  Json p = Json::object();
  for (const auto& [k, v] : job.params) p[k] = v;
  j["params"] = p;
  j["seed"] = job.seed;
  j["output"] = job.json ? "json" : "plain";
  j["caps"] = Json{{"max_support", job.caps.max_support},
                   {"max_torsion_vars", job.caps.max_torsion_vars},
                   {"max_torsion_order", job.caps.max_torsion_order},
                   {"density_cap", job.caps.density_cap},
                   {"max_amoeba_count", job.caps.max_amoeba_count}};
  return j;
}

Report run(const JobConfig& job) {
  Report rep;
  auto fail = [&](const std::string& kind, const std::string& msg) {
    rep.exit_code = 1;
    if (job.json) {
      Json j;
      j["config"] = to_json(job);
      j["error"] = Json{{"kind", kind}, {"message", msg}};
      rep.text = j.dump(2) + "\n";
    } else {
      rep.text = kind + ": " + msg + "\n";
    }
  };
  try {
    Result r;
    if (job.command == "script-n") {
      r = do_script_n(job);
    } else {
      LaurentPoly f = parse_poly(job.polynomial, job.nvars);
      if (f.size() > job.caps.max_support)
        throw Refusal("support size " + std::to_string(f.size()) + " exceeds the cap " +
                      std::to_string(job.caps.max_support));
      if (job.command == "trop") r = do_trop(f);
      else if (job.command == "nondegen") r = do_nondegen(f);
      else if (job.command == "rotund") r = do_rotund(job, f);
      else if (job.command == "intersect") r = do_intersect(job, f);
      else if (job.command == "star") r = do_star(job, f);
      else if (job.command == "surj") r = do_surj(job, f);
      else if (job.command == "density") r = do_density(job, f);
      else if (job.command == "badtori") r = do_badtori(job, f);
      else if (job.command == "mm") r = do_mm(job, f);
      else if (job.command == "amoeba") r = do_amoeba(job, f);
      else throw std::invalid_argument("unknown command '" + job.command + "'");
    }
    rep.exit_code = r.unknown_dominated ? 2 : 0;
    if (job.json) {
      Json j;
      j["config"] = to_json(job);
      j["result"] = std::move(r.json);
      rep.text = j.dump(2) + "\n";
    } else {
      rep.text = r.plain;
    }
  } catch (const ParseError& e) {
    fail("parse_error", e.what());
  } catch (const Refusal& e) {
    fail("refused", e.what());
  } catch (const std::domain_error& e) {
    fail("refused", e.what());
  } catch (const std::exception& e) {
    fail("error", e.what());
  }
  return rep;
}

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"torusx: tropical fans and coset intersections for hypersurfaces in algebraic tori"};
  app.require_subcommand(1);
  JobConfig job;
  bool plain = false;
  std::size_t nvars = 0;
  std::string seed_text = "0";
  app.add_flag("--plain", plain, "human-readable output instead of JSON");
  app.add_flag("--json", [&](std::int64_t) { plain = false; }, "JSON output (default)");
  app.add_option("--nvars", nvars, "number of variables (default: largest index used)");
  app.add_option("--seed", seed_text, "random seed");

  struct Command {
    const char* name;
    const char* help;
    bool needs_poly;
    std::vector<std::pair<const char*, const char*>> options;
  };
  const std::vector<Command> commands = {
      {"trop", "tropical hypersurface as a fan", true, {}},
      {"nondegen", "geometric non-degeneracy (trivial stabilizer)", true, {}},
      {"rotund", "rotundity of L x W via the fan", true, {{"--L", "basis of L as JSON rows"}}},
      {"intersect", "does W meet a coset z.H", true, {{"--coset", "coset JSON (or @file)"}}},
      {"star", "star of a cone of the fan", true, {{"--cone", "cone label"}}},
      {"surj", "is x -> x^A surjective on W", true, {{"--A", "(n-1) x n integer matrix as JSON"}, {"--effort", "quick|full"}}},
      {"density", "tally surjectivity over matrices with entries in [-N, N]", true,
       {{"--N", "entry bound"}, {"--mode", "exhaustive|sample"}, {"--samples", "sample count"},
        {"--workers", "threads"}, {"--effort", "quick|full"}}},
      {"badtori", "directions with a coset disjoint from W", true, {{"--bound", "max |v_i|"}, {"--effort", "quick|full"}}},
      {"mm", "torsion points and torsion cosets on W", true,
       {{"--max-order", "largest order"}, {"--direction-bound", "max |v_i| for coset directions"}}},
      {"amoeba", "sample the amoeba (-Log convention)", true,
       {{"--count", "number of points"}, {"--scale", "log box half width"}, {"--policy", "highest|round_robin"}}},
      {"script-n", "least L1 norm of a relation of a torsion point", false,
       {{"--point", "torsion point JSON"}, {"--bound", "search bound"}}},
  };
  std::map<std::string, std::string> values;
  std::string poly;
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const auto& s : commands) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->fallthrough();
    if (s.needs_poly) sub->add_option("poly", poly, "Laurent polynomial in x1..xn")->required();
    for (const auto& [opt, help] : s.options) {
      std::string key = std::string(opt).substr(2);
      sub->add_option(opt, values[std::string(s.name) + ":" + key], help);
    }
    subs.emplace_back(sub, &s);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  for (const auto& [sub, cmd] : subs) {
    if (!sub->parsed()) continue;
    job.command = cmd->name;
    for (const auto& [opt, help] : cmd->options) {
      std::string key = std::string(opt).substr(2);
      if (sub->get_option(opt)->count() > 0) job.params[key] = values[std::string(cmd->name) + ":" + key];
    }
  }
  job.polynomial = poly;
  if (app.get_option("--nvars")->count() > 0) job.nvars = nvars;
  job.json = !plain;
  try {
    std::size_t pos = 0;
    if (seed_text.empty() || !std::isdigit(static_cast<unsigned char>(seed_text[0])))
      throw std::invalid_argument("seed");
    job.seed = std::stoull(seed_text, &pos);
    if (pos != seed_text.size()) throw std::invalid_argument("seed");
    job.caps = Caps::from_env();
  } catch (const std::exception& e) {
    err << "error: " << (std::string(e.what()) == "seed" ? "--seed must be a nonnegative integer" : e.what()) << "\n";
    return 1;
  }
  Report rep = run(job);
  (rep.exit_code == 1 ? err : out) << rep.text;
  return rep.exit_code;
}

}  // namespace torusx
