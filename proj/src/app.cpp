#include "efimov/app.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "efimov/acceptance.hpp"
#include "efimov/diagnostics.hpp"
#include "efimov/direct.hpp"
#include "efimov/friedrichs.hpp"
#include "efimov/limit_kernel.hpp"

namespace efimov {

using Json = nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw std::invalid_argument("config field '" + field + "': " + what);
}

void allow_keys(const Json& obj, const std::string& where, std::set<std::string> keys) {
  for (const auto& [k, v] : obj.items())
    if (!keys.count(k)) bad(where.empty() ? k : where + "." + k, "unknown field");
}

double number(const Json& v, const std::string& field) {
  if (!v.is_number()) bad(field, "must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) bad(field, "must be finite");
  return x;
}

int integer(const Json& v, const std::string& field) {
  if (!v.is_number_integer()) bad(field, "must be an integer");
  return v.get<int>();
}

std::vector<double> numbers(const Json& v, const std::string& field) {
  if (!v.is_array()) bad(field, "must be an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(number(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<CosineTerm> parse_phi(const Json& v) {
  if (v.is_string()) {
    const auto name = v.get<std::string>();
    if (name == "one") return presets::constant_one().terms();
    if (name == "half_plus_cos1") return presets::half_plus_cos1().terms();
    if (name == "half_plus_cos12") return presets::half_plus_cos12().terms();
    bad("phi", "unknown preset '" + name + "'");
  }
  if (!v.is_array() || v.empty()) bad("phi", "must be a preset name or a non-empty term list");
  std::vector<CosineTerm> terms;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string f = "phi[" + std::to_string(i) + "]";
    const Json& t = v[i];
    if (!t.is_object()) bad(f, "must be an object {k, c}");
    allow_keys(t, f, {"k", "c"});
    if (!t.contains("k") || !t["k"].is_array() || t["k"].size() != 3)
      bad(f + ".k", "must be an array of 3 integers");
    CosineTerm term;
    for (int j = 0; j < 3; ++j) term.k[j] = integer(t["k"][j], f + ".k");
    if (!t.contains("c")) bad(f + ".c", "missing");
    term.c = number(t["c"], f + ".c");
    terms.push_back(term);
  }
  return CosineSeries(terms).terms();
}

std::vector<double> default_r_list() {
  std::vector<double> r;
  for (int i = 0; i < 8; ++i) r.push_back(std::pow(10.0, 0.5 + 3.5 * i / 7.0));
  return r;
}

}  // namespace

LatticeOrder RunConfig::order() const { return LatticeOrder(m, true); }

CosineSeries RunConfig::phi() const { return CosineSeries(phi_terms); }

RunConfig parse_config(const Json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");
  allow_keys(doc, "",
             {"m", "phi", "mu", "grid", "z_list", "policy", "limit", "localized", "scan", "branch",
              "oracle", "output", "seed"});
  RunConfig c;
  if (!doc.contains("m")) bad("m", "missing");
  c.m = integer(doc["m"], "m");
  if (c.m < 1) bad("m", "must be a positive integer");
  if (c.m < 3) warn("m=" + std::to_string(c.m) + " puts the model in the n=1 regime");

  if (!doc.contains("phi")) bad("phi", "missing");
  c.phi_terms = parse_phi(doc["phi"]);

  if (doc.contains("mu")) {
    const Json& mu = doc["mu"];
    if (mu.is_string()) {
      if (mu.get<std::string>() != "mu0") bad("mu", "must be \"mu0\" or a positive number");
    } else {
      c.mu = number(mu, "mu");
      if (!(*c.mu > 0.0)) bad("mu", "must be positive");
    }
  }

  if (doc.contains("grid")) {
    const Json& g = doc["grid"];
    if (!g.is_object()) bad("grid", "must be an object");
    allow_keys(g, "grid", {"N", "shift", "N_list"});
    if (g.contains("N")) c.grid_n = integer(g["N"], "grid.N");
    if (g.contains("N_list")) {
      c.n_list.clear();
      if (!g["N_list"].is_array()) bad("grid.N_list", "must be an array of integers");
      for (const auto& v : g["N_list"]) c.n_list.push_back(integer(v, "grid.N_list"));
    }
    if (g.contains("shift")) c.shift = number(g["shift"], "grid.shift");
  }
  if (c.grid_n < 2) bad("grid.N", "must be >= 2");
  if (!doc.contains("grid") || !doc["grid"].contains("shift")) c.shift = kPi / c.grid_n;
  if (!(c.shift >= 0.0 && c.shift < kTwoPi / c.grid_n)) bad("grid.shift", "must lie in [0, 2pi/N)");
  if (c.n_list.size() < 3) bad("grid.N_list", "needs at least 3 entries");
  for (std::size_t i = 1; i < c.n_list.size(); ++i)
    if (c.n_list[i] <= c.n_list[i - 1]) bad("grid.N_list", "must be increasing");

  if (doc.contains("z_list")) c.z_list = numbers(doc["z_list"], "z_list");
  for (double z : c.z_list)
    if (!(z < 0.0)) bad("z_list", "z must be negative");

  if (doc.contains("policy")) {
    const Json& p = doc["policy"];
    if (!p.is_object()) bad("policy", "must be an object");
    allow_keys(p, "policy", {"adaptive", "N", "c", "N_max"});
    if (p.contains("adaptive")) {
      if (!p["adaptive"].is_boolean()) bad("policy.adaptive", "must be a boolean");
      c.policy.adaptive = p["adaptive"].get<bool>();
    }
    if (p.contains("N")) c.policy.n_fixed = integer(p["N"], "policy.N");
    if (p.contains("c")) c.policy.c = number(p["c"], "policy.c");
    if (p.contains("N_max")) c.policy.n_max = integer(p["N_max"], "policy.N_max");
  }
  if (c.policy.n_fixed < 2) bad("policy.N", "must be >= 2");
  if (!(c.policy.c > 0.0)) bad("policy.c", "must be positive");
  if (c.policy.n_max < 2) bad("policy.N_max", "must be >= 2");

  c.limit.r_list = default_r_list();
  if (doc.contains("limit")) {
    const Json& l = doc["limit"];
    if (!l.is_object()) bad("limit", "must be an object");
    allow_keys(l, "limit", {"c", "r_list", "L", "M"});
    if (l.contains("c")) {
      if (l["c"].is_string()) {
        if (l["c"].get<std::string>() != "paper-n") bad("limit.c", "must be a number or \"paper-n\"");
      } else {
        c.limit.c = number(l["c"], "limit.c");
        if (!(*c.limit.c > 0.0)) bad("limit.c", "must be positive");
      }
    }
    if (l.contains("r_list")) c.limit.r_list = numbers(l["r_list"], "limit.r_list");
    if (l.contains("L")) c.limit.l_max = integer(l["L"], "limit.L");
    if (l.contains("M")) c.limit.m = integer(l["M"], "limit.M");
  }
  for (double r : c.limit.r_list)
    if (!(r > 1.0)) bad("limit.r_list", "radii must exceed 1");
  if (c.limit.l_max < 0) bad("limit.L", "must be >= 0");
  if (c.limit.m < 2) bad("limit.M", "must be >= 2");

  auto sub_number = [&](const char* block, const char* key, double& dst) {
    if (!doc.contains(block)) return;
    const Json& b = doc[block];
    if (!b.is_object()) bad(block, "must be an object");
    allow_keys(b, block, {key});
    if (b.contains(key)) dst = number(b[key], std::string(block) + "." + key);
  };
  sub_number("localized", "delta", c.delta);
  if (!(c.delta > 0.0)) bad("localized.delta", "must be positive");
  double samples = c.scan_samples;
  sub_number("scan", "samples", samples);
  c.scan_samples = static_cast<int>(samples);
  samples = c.branch_samples;
  sub_number("branch", "samples", samples);
  c.branch_samples = static_cast<int>(samples);
  if (c.scan_samples < 1) bad("scan.samples", "must be >= 1");
  if (c.branch_samples < 1) bad("branch.samples", "must be >= 1");

  if (doc.contains("oracle")) {
    const Json& o = doc["oracle"];
    if (!o.is_object()) bad("oracle", "must be an object");
    allow_keys(o, "oracle", {"N", "mu_factors", "z_list"});
    if (o.contains("N")) c.oracle_n = integer(o["N"], "oracle.N");
    if (o.contains("mu_factors")) c.oracle_mu_factors = numbers(o["mu_factors"], "oracle.mu_factors");
    if (o.contains("z_list")) c.oracle_z = numbers(o["z_list"], "oracle.z_list");
  }
  for (double z : c.oracle_z)
    if (!(z < 0.0)) bad("oracle.z_list", "z must be negative");

  if (doc.contains("output")) {
    if (!doc["output"].is_string()) bad("output", "must be a string");
    c.output_dir = doc["output"].get<std::string>();
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) bad("seed", "must be a non-negative integer");
    c.seed = doc["seed"].get<std::uint64_t>();
  }

  Json phi = Json::array();
  for (const auto& t : c.phi_terms) phi.push_back({{"k", t.k}, {"c", t.c}});
  c.normalized = {
      {"m", c.m},
      {"phi", phi},
      {"mu", c.mu ? Json(*c.mu) : Json("mu0")},
      {"grid", {{"N", c.grid_n}, {"shift", c.shift}, {"N_list", c.n_list}}},
      {"z_list", c.z_list},
      {"policy",
       {{"adaptive", c.policy.adaptive},
        {"N", c.policy.n_fixed},
        {"c", c.policy.c},
        {"N_max", c.policy.n_max}}},
      {"limit",
       {{"c", c.limit.c ? Json(*c.limit.c) : Json("paper-n")},
        {"r_list", c.limit.r_list},
        {"L", c.limit.l_max},
        {"M", c.limit.m}}},
      {"localized", {{"delta", c.delta}}},
      {"scan", {{"samples", c.scan_samples}}},
      {"branch", {{"samples", c.branch_samples}}},
      {"oracle",
       {{"N", c.oracle_n}, {"mu_factors", c.oracle_mu_factors}, {"z_list", c.oracle_z}}},
      {"seed", c.seed},
  };
  c.hash = config_hash(c.normalized);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("config " + path + " is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

std::string config_hash(const Json& normalized) {
  const std::string s = normalized.dump();
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

double resolve_mu(const RunConfig& config) {
  if (config.mu) return *config.mu;
  static std::mutex lock;
  static std::map<std::string, double> cache;
  const std::string key = Json{{"m", config.m},
                               {"phi", config.normalized["phi"]},
                               {"N_list", config.n_list}}
                              .dump();
  std::lock_guard<std::mutex> g(lock);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const double v = mu0(config.order(), config.phi(), config.n_list).value;
  cache.emplace(key, v);
  return v;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"minima",       "mu0",   "delta-scan", "branch",
                                              "count",        "curve", "oracle-check",
                                              "gamma0",       "limit-count", "hs-error",
                                              "verify"};
  return names;
}

// ---------------------------------------------------------------------------

namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Writer {
  const RunConfig& config;
  const CommandOptions& options;
  std::ostream& log;
  std::string command;

  std::filesystem::path dir() const {
    std::filesystem::path d = options.out_dir.value_or(config.output_dir);
    std::filesystem::create_directories(d);
    return d;
  }

  void json(const std::string& stem, const Json& payload) const {
    const Json rec{{"schema_version", kSchemaVersion},
                   {"command", command},
                   {"config_hash", config.hash},
                   {"timestamp", options.timestamp.value_or(utc_now())},
                   {"payload", payload}};
    const auto path = dir() / (stem + ".json");
    std::ofstream(path) << rec.dump(2) << "\n";
    log << "wrote " << path.string() << "\n";
  }

  void csv(const std::string& stem, const std::string& header,
           const std::vector<std::vector<std::string>>& rows) const {
    const auto path = dir() / (stem + ".csv");
    std::ofstream out(path);
    out << "# config_hash: " << config.hash << "\n" << header << "\n";
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
      out << "\n";
    }
    log << "wrote " << path.string() << "\n";
  }
};

std::vector<TorusPoint> sample_points(int s) {
  std::vector<TorusPoint> out;
  const double h = kTwoPi / s;
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j)
      for (int k = 0; k < s; ++k) out.emplace_back(-kPi + i * h, -kPi + j * h, -kPi + k * h);
  return out;
}

ModelParams params_of(const RunConfig& c) {
  return make_params(c.order(), c.phi(), resolve_mu(c));
}

TorusGrid grid_of(const RunConfig& c) { return build_grid(c.grid_n, c.shift, c.order()); }

int cmd_minima(const RunConfig& c, const Writer& w) {
  const auto ms = enumerate_minima(c.order(), c.phi());
  Json pts = Json::array();
  for (std::size_t i = 0; i < ms.points.size(); ++i)
    pts.push_back({{"p", ms.points[i].coords()}, {"phi", ms.phi_values[i]},
                   {"resonant", ms.is_resonant(i)}});
  w.json("minima", {{"m", ms.m},
                    {"m_prime", ms.m_prime},
                    {"points_per_torus", ms.points_per_torus()},
                    {"n", ms.n_pairs},
                    {"n_formula", ms.n_formula},
                    {"formula_discrepancy", ms.formula_discrepancy},
                    {"n_bold", ms.n_resonant},
                    {"points", pts}});
  w.log << "points per torus " << ms.points_per_torus() << ", n = " << ms.n_pairs
        << ", n_bold = " << ms.n_resonant << "\n";
  return kExitOk;
}

int cmd_mu0(const RunConfig& c, const Writer& w) {
  const auto r = mu0(c.order(), c.phi(), c.n_list);
  w.json("mu0", {{"mu0", r.value},
                 {"N_list", r.integral.ns},
                 {"integral", r.integral.value},
                 {"raw_sums", r.integral.raw},
                 {"stages", r.integral.stages},
                 {"per_grid_mu0", r.per_grid},
                 {"last_stage_change", r.integral.last_stage_change()},
                 {"converging", r.integral.converging}});
  w.log << "mu0 = " << num(r.value) << "\n";
  return kExitOk;
}

int cmd_delta_scan(const RunConfig& c, const Writer& w) {
  if (c.z_list.empty()) throw std::invalid_argument("delta-scan needs a non-empty z_list");
  const FredholmEvaluator eval(c.order(), c.phi(), resolve_mu(c), grid_of(c));
  std::vector<std::vector<std::string>> rows;
  for (const auto& p : sample_points(c.scan_samples))
    for (double z : c.z_list)
      rows.push_back({num(p[0]), num(p[1]), num(p[2]), num(z), num(eval.delta(p, z))});
  w.csv("delta_scan", "p1,p2,p3,z,delta", rows);
  return kExitOk;
}

int cmd_branch(const RunConfig& c, const Writer& w) {
  const auto params = params_of(c);
  const auto pts = sample_points(c.branch_samples);
  const auto curve = two_particle_branch(params, pts, grid_of(c));
  std::vector<std::vector<std::string>> rows;
  std::size_t found = 0;
  for (const auto& b : curve.points) {
    rows.push_back({num(b.p[0]), num(b.p[1]), num(b.p[2]), b.eigenvalue ? num(*b.eigenvalue) : ""});
    found += b.eigenvalue.has_value();
  }
  w.csv("branch", "p1,p2,p3,eigenvalue_or_empty", rows);
  w.json("branch", {{"mu", params.mu},
                    {"tau_ess", curve.tau_ess},
                    {"eigenvalues_found", found},
                    {"three_particle_branch", {curve.three_particle.lower, curve.three_particle.upper}}});
  w.log << "tau_ess = " << num(curve.tau_ess) << "\n";
  return kExitOk;
}

int cmd_count(const RunConfig& c, const Writer& w) {
  if (c.z_list.empty()) throw std::invalid_argument("count needs a non-empty z_list");
  const auto params = params_of(c);
  Json rows = Json::array();
  for (double z : c.z_list) {
    const int n = policy_n(c.policy, z, c.m);
    const auto count = bs_count(params, standard_grid(n, params.m), z);
    rows.push_back({{"z", z}, {"count", count}, {"grid_N", n}});
    w.log << "z = " << num(z) << ": " << count << " (N = " << n << ")\n";
  }
  w.json("count", {{"mu", params.mu}, {"counts", rows}});
  return kExitOk;
}

int cmd_curve(const RunConfig& c, const Writer& w) {
  if (c.z_list.empty()) throw std::invalid_argument("curve needs a non-empty z_list");
  const auto params = params_of(c);
  const auto curve = nz_curve(params, c.z_list, c.policy);
  std::vector<std::vector<std::string>> rows;
  Json pts = Json::array();
  for (const auto& p : curve.points) {
    rows.push_back({num(p.z), num(std::abs(std::log(std::abs(p.z)))), std::to_string(p.count),
                    std::to_string(p.grid_n)});
    pts.push_back({{"z", p.z}, {"count", p.count}, {"grid_N", p.grid_n},
                   {"refined_count", p.count_refined}, {"refined_N", p.refined_n},
                   {"saturated", p.saturated}});
  }
  w.csv("curve", "z,abs_log_z,count,grid_N", rows);
  Json fit = nullptr;
  const double zlo = *std::min_element(c.z_list.begin(), c.z_list.end());
  const double zhi = *std::max_element(c.z_list.begin(), c.z_list.end());
  try {
    const auto f = slope_fit(curve, zlo, zhi);
    fit = {{"slope", f.slope}, {"intercept", f.intercept}, {"residual", f.residual},
           {"used", f.used}, {"dropped", f.dropped}};
  } catch (const std::exception& e) {
    fit = {{"error", e.what()}};
  }
  const double n_bold = static_cast<double>(params.minima.n_resonant);
  w.json("curve", {{"mu", params.mu},
                   {"points", pts},
                   {"nonincreasing_as_z_decreases", curve.nonincreasing_as_z_decreases()},
                   {"fit", fit},
                   {"target_slope", n_bold * solve_gamma0().gamma0 / (4.0 * kPi)}});
  return kExitOk;
}

int cmd_oracle(const RunConfig& c, const Writer& w) {
  const double mu0v = resolve_mu(c);
  Json reports = Json::array();
  bool all = true;
  for (double f : c.oracle_mu_factors) {
    const auto params = make_params(c.order(), c.phi(), f * mu0v);
    const auto rep = cross_check(params, standard_grid(c.oracle_n, params.m), c.oracle_z);
    for (const auto& r : rep.rows) {
      reports.push_back({{"mu_factor", f}, {"mu", params.mu}, {"z", r.z}, {"direct", r.direct},
                         {"bs", r.bs}, {"equal", r.equal()}});
      w.log << "mu = " << f << " mu0, z = " << num(r.z) << ": direct " << r.direct << ", BS "
            << r.bs << (r.equal() ? "" : "  MISMATCH") << "\n";
    }
    all = all && rep.all_equal();
  }
  w.json("oracle_check", {{"grid_N", c.oracle_n}, {"cases", reports}, {"all_equal", all}});
  return all ? kExitOk : kExitVerifyFailed;
}

int cmd_gamma0(const RunConfig&, const Writer& w) {
  const auto g = solve_gamma0();
  w.json("gamma0", {{"gamma0", g.gamma0},
                    {"residual", g.residual},
                    {"bracket", {g.bracket_lo, g.bracket_hi}},
                    {"sign_changes", g.sign_changes}});
  w.log << "gamma0 = " << num(g.gamma0) << " (residual " << g.residual << ")\n";
  return kExitOk;
}

int cmd_limit_count(const RunConfig& c, const Writer& w) {
  const auto ms = enumerate_minima(c.order(), c.phi());
  const double n_bold = static_cast<double>(ms.n_resonant);
  const double pref = c.limit.c.value_or(kernel_prefactor(n_bold));
  HomogeneousKernelSpec spec{pref, 10.0, c.limit.l_max, c.limit.m};
  Json per_r = Json::array();
  for (double r : c.limit.r_list) {
    spec.r = r;
    const auto t = total_count(spec);
    per_r.push_back({{"r", r}, {"total", t.total}, {"per_channel", t.per_channel},
                     {"converged_in_l", t.converged_in_l}});
  }
  Json payload{{"c", pref}, {"L", c.limit.l_max}, {"M", c.limit.m}, {"counts", per_r}};
  if (c.limit.r_list.size() >= 2) {
    const auto s = total_count_slope(spec, c.limit.r_list);
    const auto rd = limit_readings(n_bold, c.limit.r_list, c.limit.l_max, c.limit.m);
    payload["slope_vs_log_r"] = s.slope_log_r;
    payload["slope_vs_2log_r"] = s.slope_2log_r;
    payload["readings"] = {{"n_bold", n_bold},
                           {"target", rd.target},
                           {"a_blocks_times_n", rd.blocks_slope},
                           {"b_scaled_kernel", rd.scaled_kernel_slope}};
    w.log << "slope vs 2 log r = " << num(s.slope_2log_r) << "; readings: (a) "
          << num(rd.blocks_slope) << ", (b) " << num(rd.scaled_kernel_slope) << ", target "
          << num(rd.target) << "\n";
  }
  w.json("limit_count", payload);
  return kExitOk;
}

int cmd_hs_error(const RunConfig& c, const Writer& w) {
  if (c.z_list.empty()) throw std::invalid_argument("hs-error needs a non-empty z_list");
  const auto params = params_of(c);
  const auto grid = grid_of(c);
  Json rows = Json::array();
  for (double z : c.z_list) {
    const double e = hs_error(params, grid, {c.delta, z});
    rows.push_back({{"z", z}, {"hs_error", e}});
    w.log << "z = " << num(z) << ": hs_error " << num(e) << "\n";
  }
  w.json("hs_error", {{"mu", params.mu}, {"grid_N", c.grid_n}, {"delta", c.delta}, {"rows", rows}});
  return kExitOk;
}

int cmd_verify(const RunConfig& c, const Writer& w) {
  Json baseline;
  if (w.options.baseline) {
    std::ifstream in(*w.options.baseline);
    if (!in) throw std::runtime_error("cannot open baseline " + *w.options.baseline);
    baseline = Json::parse(in);
    const std::string other = baseline.value("config_hash", "");
    if (other != c.hash)
      throw std::runtime_error("config hash mismatch: baseline " + other + ", current " + c.hash +
                               "; refusing to compare");
  }
  AcceptanceOptions opt;
  opt.mu_override = c.mu;
  opt.z_window = c.z_list;
  opt.n_list = c.n_list;
  opt.policy = c.policy;
  opt.seed = c.seed;
  WarningCapture warnings;
  const auto results = run_acceptance(opt, [&](const CriterionResult& r) {
    w.log << format_line(r) << "\n";
    w.log.flush();
  });
  Json crit = Json::array();
  for (const auto& r : results)
    crit.push_back({{"id", r.id}, {"title", r.title}, {"status", to_string(r.status)},
                    {"measured", r.measured}, {"values", r.values}, {"seconds", r.seconds},
                    {"budget_seconds", r.budget}});
  if (!baseline.is_null()) {
    for (const auto& old : baseline["payload"]["criteria"])
      for (const auto& r : results)
        if (old.value("id", 0) == r.id && old.value("status", "") != to_string(r.status))
          w.log << "criterion " << r.id << " changed: " << old.value("status", "") << " -> "
                << to_string(r.status) << "\n";
  }
  const bool ok = all_passed(results);
  w.json("verify", {{"criteria", crit}, {"all_passed", ok}, {"warnings", warnings.messages()}});
  return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run_command(const std::string& name, const RunConfig& config, const CommandOptions& options,
                std::ostream& log) {
  const Writer w{config, options, log, name};
  if (name == "minima") return cmd_minima(config, w);
  if (name == "mu0") return cmd_mu0(config, w);
  if (name == "delta-scan") return cmd_delta_scan(config, w);
  if (name == "branch") return cmd_branch(config, w);
  if (name == "count") return cmd_count(config, w);
  if (name == "curve") return cmd_curve(config, w);
  if (name == "oracle-check") return cmd_oracle(config, w);
  if (name == "gamma0") return cmd_gamma0(config, w);
  if (name == "limit-count") return cmd_limit_count(config, w);
  if (name == "hs-error") return cmd_hs_error(config, w);
  if (name == "verify") return cmd_verify(config, w);
  log << "unknown command '" << name << "'\n";
  return kExitUsage;
}

}  // namespace efimov
