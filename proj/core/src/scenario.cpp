#include "conesel/scenario.hpp"

#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "conesel/error.hpp"
#include "conesel/feasibility.hpp"
#include "conesel/text_io.hpp"

namespace conesel {

namespace {

bool inside(const Zone& z, const Position& p, double t) {
  return (p - z.center_at(t)).squaredNorm() - z.radius * z.radius <= 0.0;
}

}  // namespace

std::vector<std::string> scenario_violations(const Scenario& sc, const SamplingOptions& options) {
  std::vector<std::string> out;
  if (sc.n_static < 0 || sc.n_dynamic < 0 ||
      static_cast<std::size_t>(sc.n_static + sc.n_dynamic) != sc.zones.size()) {
    out.push_back("zone count does not match n_static + n_dynamic");
    return out;
  }
  if ((sc.x0 - sc.goal).norm() < options.min_separation) out.push_back("start and goal too close");
  for (std::size_t i = 0; i < sc.zones.size(); ++i) {
    const Zone& z = sc.zones[i];
    const bool is_dynamic = static_cast<int>(i) >= sc.n_static;
    const std::string tag = "zone[" + std::to_string(i) + "]";
    if (!(z.radius > 0.0)) out.push_back(tag + " has non-positive radius");
    if (is_dynamic && std::abs(z.velocity.norm() - options.dynamic_speed) > 1e-9) {
      out.push_back(tag + " moves at the wrong speed");
    }
    if (!is_dynamic && !z.velocity.isZero(0.0)) out.push_back(tag + " is static but moves");
    if (inside(z, sc.x0, 0.0)) out.push_back(tag + " contains the start");
    if (!is_dynamic && inside(z, sc.goal, 0.0)) out.push_back(tag + " contains the goal");
  }
  if (!farkas_feasible(build_constraints(sc.x0, 0.0, sc.zones, sc.goal, sc.gains))) {
    out.push_back("constraints at the start state are infeasible");
  }
  return out;
}

Scenario sample_scenario(int n_static, int n_dynamic, std::uint64_t seed, const SamplingOptions& options) {
  if (n_static < 0 || n_dynamic < 0) throw Error("sample_scenario: zone counts must be nonnegative");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-options.half_width, options.half_width);
  std::uniform_real_distribution<double> heading(0.0, 2.0 * std::numbers::pi);
  auto point = [&] {
    const double px = coord(rng);
    const double py = coord(rng);
    return Position(px, py);
  };

  Scenario sc;
  sc.seed = seed;
  sc.n_static = n_static;
  sc.n_dynamic = n_dynamic;
  sc.horizon = options.horizon;
  sc.dt = options.dt;
  sc.gains = options.gains;
  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    sc.zones.clear();
    for (int i = 0; i < n_static + n_dynamic; ++i) {
      Zone z;
      z.center = point();
      z.radius = options.zone_radius;
      if (i >= n_static) {
        const double a = heading(rng);
        z.velocity = options.dynamic_speed * Velocity(std::cos(a), std::sin(a));
      }
      sc.zones.push_back(z);
    }
    sc.x0 = point();
    sc.goal = point();
    if (scenario_violations(sc, options).empty()) return sc;
  }
  throw SamplingExhaustedError("sample_scenario: no valid scenario with " + std::to_string(n_static) +
                               " static and " + std::to_string(n_dynamic) + " moving zones after " +
                               std::to_string(options.max_attempts) + " attempts (seed " +
                               std::to_string(seed) + ")");
}

namespace {

std::string vec_text(const Eigen::Vector2d& v) { return format_number(v.x()) + " " + format_number(v.y()); }

Eigen::Vector2d parse_vec(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  std::string a, b, extra;
  if (!(in >> a >> b) || (in >> extra)) throw ParseError(key + ": expected two numbers");
  return {parse_number(a), parse_number(b)};
}

}  // namespace

void write_scenario(std::ostream& out, const Scenario& sc) {
  out << "seed = " << sc.seed << '\n';
  out << "n_static = " << sc.n_static << '\n';
  out << "n_dynamic = " << sc.n_dynamic << '\n';
  out << "x0 = " << vec_text(sc.x0) << '\n';
  out << "goal = " << vec_text(sc.goal) << '\n';
  out << "T = " << format_number(sc.horizon) << '\n';
  out << "dt = " << format_number(sc.dt) << '\n';
  out << "gamma_cbf = " << format_number(sc.gains.gamma_cbf) << '\n';
  out << "gamma_clf = " << format_number(sc.gains.gamma_clf) << '\n';
  out << "u_max = " << format_number(sc.gains.u_max) << '\n';
  out << "k_ref = " << format_number(sc.gains.k_ref) << '\n';
  for (std::size_t i = 0; i < sc.zones.size(); ++i) {
    const std::string p = "zone[" + std::to_string(i) + "].";
    out << p << "center = " << vec_text(sc.zones[i].center) << '\n';
    out << p << "velocity = " << vec_text(sc.zones[i].velocity) << '\n';
    out << p << "radius = " << format_number(sc.zones[i].radius) << '\n';
  }
}

Scenario read_scenario(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": missing '='");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  auto take = [&](const std::string& key) -> std::string {
    auto it = kv.find(key);
    if (it == kv.end()) throw ParseError("scenario record is missing '" + key + "'");
    std::string v = it->second;
    kv.erase(it);
    return v;
  };

  Scenario sc;
  sc.seed = static_cast<std::uint64_t>(std::stoull(take("seed")));
  sc.n_static = static_cast<int>(parse_integer(take("n_static")));
  sc.n_dynamic = static_cast<int>(parse_integer(take("n_dynamic")));
  sc.x0 = parse_vec("x0", take("x0"));
  sc.goal = parse_vec("goal", take("goal"));
  sc.horizon = parse_number(take("T"));
  sc.dt = parse_number(take("dt"));
  sc.gains.gamma_cbf = parse_number(take("gamma_cbf"));
  sc.gains.gamma_clf = parse_number(take("gamma_clf"));
  sc.gains.u_max = parse_number(take("u_max"));
  if (kv.count("k_ref")) sc.gains.k_ref = parse_number(take("k_ref"));
  if (sc.n_static < 0 || sc.n_dynamic < 0) throw ParseError("negative zone count");
  for (int i = 0; i < sc.n_static + sc.n_dynamic; ++i) {
    const std::string p = "zone[" + std::to_string(i) + "].";
    Zone z;
    z.center = parse_vec(p + "center", take(p + "center"));
    z.velocity = parse_vec(p + "velocity", take(p + "velocity"));
    z.radius = parse_number(take(p + "radius"));
    sc.zones.push_back(z);
  }
  if (!kv.empty()) throw ParseError("unknown scenario key '" + kv.begin()->first + "'");
  if (!(sc.dt > 0.0) || !(sc.horizon > 0.0)) throw ParseError("T and dt must be positive");
  return sc;
}

}  // namespace conesel
