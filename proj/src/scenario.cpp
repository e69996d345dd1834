#include "qdisp/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "qdisp/error.hpp"

namespace qdisp::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void reject_unknown(const KeyValues& kv, const std::set<std::string>& allowed) {
  for (const auto& [k, v] : kv) {
    if (!allowed.count(k)) throw ConfigError("unknown scenario key '" + k + "'");
  }
}

template <class Fn>
void with(const KeyValues& kv, const std::string& key, Fn&& fn) {
  if (auto it = kv.find(key); it != kv.end()) fn(it->second);
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + format_number(v[i]);
  return out;
}

}  // namespace

double parse_real(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || p != end || !std::isfinite(v)) {
    throw ConfigError(fmt::format("{}: '{}' is not a finite number", key, text));
  }
  return v;
}

int parse_int(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  int v = 0;
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || p != end) {
    throw ConfigError(fmt::format("{}: '{}' is not an integer", key, text));
  }
  return v;
}

std::vector<double> parse_real_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!trim(item).empty()) out.push_back(parse_real(key, item));
  }
  return out;
}

KeyValues parse_key_values(std::istream& is) {
  KeyValues kv;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(fmt::format("line {}: expected key = value", line_no));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(fmt::format("line {}: empty key", line_no));
    if (!kv.emplace(key, value).second) {
      throw ConfigError(fmt::format("line {}: duplicate key '{}'", line_no, key));
    }
  }
  return kv;
}

KeyValues load_key_values(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open " + path);
  return parse_key_values(is);
}

CollisionScenario collision_from_config(const KeyValues& kv) {
  reject_unknown(kv, {"model", "sigma", "k", "vg", "hessian", "x1", "x2", "grid_n", "grid_min",
                      "grid_max", "stats", "t_end", "dt", "mass", "hbar", "c", "tolerance",
                      "snapshots"});
  CollisionScenario s;
  const std::string model = kv.count("model") ? kv.at("model") : "explicit";
  if (model == "explicit") {
    for (const char* key : {"mass", "hbar", "c"}) {
      if (kv.count(key)) throw ConfigError(std::string(key) + " requires model = schrodinger or dirac");
    }
  } else {
    for (const char* key : {"vg", "hessian"}) {
      if (kv.count(key)) throw ConfigError(std::string(key) + " applies to model = explicit only");
    }
    const double mass = kv.count("mass") ? parse_real("mass", kv.at("mass")) : 1.0;
    const double hbar = kv.count("hbar") ? parse_real("hbar", kv.at("hbar")) : 1.0;
    const double c = kv.count("c") ? parse_real("c", kv.at("c")) : 1.0;
    if (model == "schrodinger") {
      if (kv.count("c")) throw ConfigError("c applies to model = dirac only");
      s.model = DispersionModel::schrodinger(mass, hbar);
    } else if (model == "dirac") {
      s.model = DispersionModel::dirac(mass, hbar, c);
    } else {
      throw ConfigError("model must be explicit, schrodinger or dirac");
    }
  }
  with(kv, "sigma", [&](const auto& v) { s.sigma = parse_real("sigma", v); });
  with(kv, "k", [&](const auto& v) { s.k = parse_real("k", v); });
  with(kv, "vg", [&](const auto& v) { s.vg = parse_real("vg", v); });
  with(kv, "hessian", [&](const auto& v) { s.hessian = parse_real("hessian", v); });
  with(kv, "x1", [&](const auto& v) { s.x1 = parse_real("x1", v); });
  with(kv, "x2", [&](const auto& v) { s.x2 = parse_real("x2", v); });
  with(kv, "grid_n", [&](const auto& v) { s.grid_n = parse_int("grid_n", v); });
  with(kv, "grid_min", [&](const auto& v) { s.grid_min = parse_real("grid_min", v); });
  with(kv, "grid_max", [&](const auto& v) { s.grid_max = parse_real("grid_max", v); });
  with(kv, "t_end", [&](const auto& v) { s.t_end = parse_real("t_end", v); });
  with(kv, "dt", [&](const auto& v) { s.dt = parse_real("dt", v); });
  with(kv, "tolerance", [&](const auto& v) { s.tolerance = parse_real("tolerance", v); });
  with(kv, "snapshots", [&](const auto& v) { s.snapshot_times = parse_real_list("snapshots", v); });
  with(kv, "stats", [&](const std::string& v) {
    if (v == "fermion") s.stats = {ExchangeStatistics::Fermion};
    else if (v == "boson") s.stats = {ExchangeStatistics::Boson};
    else if (v == "both") s.stats = {ExchangeStatistics::Fermion, ExchangeStatistics::Boson};
    else throw ConfigError("stats must be fermion, boson or both");
  });
  try {
    s.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return s;
}

ConfigLines describe(const CollisionScenario& s) {
  ConfigLines out;
  if (s.model) {
    out.emplace_back("model", std::string(to_string(s.model->kind)));
    out.emplace_back("mass", format_number(s.model->mass));
    out.emplace_back("hbar", format_number(s.model->hbar));
    if (s.model->kind == ModelKind::Dirac) out.emplace_back("c", format_number(s.model->c));
  } else {
    out.emplace_back("model", "explicit");
    out.emplace_back("vg", format_number(s.vg));
    out.emplace_back("hessian", format_number(s.hessian));
  }
  out.emplace_back("sigma", format_number(s.sigma));
  out.emplace_back("k", format_number(s.k));
  out.emplace_back("x1", format_number(s.x1));
  out.emplace_back("x2", format_number(s.x2));
  out.emplace_back("grid_n", std::to_string(s.grid_n));
  out.emplace_back("grid_min", format_number(s.grid_min));
  out.emplace_back("grid_max", format_number(s.grid_max));
  out.emplace_back("stats", s.stats.size() == 1 ? std::string(to_string(s.stats[0])) : "both");
  out.emplace_back("t_end", format_number(s.t_end));
  out.emplace_back("dt", format_number(s.dt));
  out.emplace_back("tolerance", format_number(s.tolerance));
  if (!s.snapshot_times.empty()) out.emplace_back("snapshots", join(s.snapshot_times));
  return out;
}

std::vector<double> SweepConfig::distances() const {
  if (!(x_step > 0.0) || x_max < x_min) throw ConfigError("sweep needs x_step > 0 and x_max >= x_min");
  std::vector<double> out;
  const auto steps = static_cast<long>(std::floor((x_max - x_min) / x_step + 1e-9));
  for (long i = 0; i <= steps; ++i) out.push_back(x_min + static_cast<double>(i) * x_step);
  return out;
}

SweepConfig sweep_from_config(const KeyValues& kv) {
  reject_unknown(kv, {"sigma", "sigma2", "k", "k2", "grid_n", "grid_min", "grid_max", "x_min",
                      "x_max", "x_step"});
  SweepConfig s;
  with(kv, "sigma", [&](const auto& v) { s.params.sigma1 = parse_real("sigma", v); });
  with(kv, "sigma2", [&](const auto& v) { s.params.sigma2 = parse_real("sigma2", v); });
  with(kv, "k", [&](const auto& v) { s.params.k1 = parse_real("k", v); });
  with(kv, "k2", [&](const auto& v) { s.params.k2 = parse_real("k2", v); });
  with(kv, "grid_n", [&](const auto& v) { s.params.grid_n = parse_int("grid_n", v); });
  with(kv, "grid_min", [&](const auto& v) { s.params.grid_min = parse_real("grid_min", v); });
  with(kv, "grid_max", [&](const auto& v) { s.params.grid_max = parse_real("grid_max", v); });
  with(kv, "x_min", [&](const auto& v) { s.x_min = parse_real("x_min", v); });
  with(kv, "x_max", [&](const auto& v) { s.x_max = parse_real("x_max", v); });
  with(kv, "x_step", [&](const auto& v) { s.x_step = parse_real("x_step", v); });
  if (!(s.params.sigma1 > 0.0 && s.params.sigma2 > 0.0)) throw ConfigError("sigma values must be positive");
  if (s.params.grid_min.has_value() != s.params.grid_max.has_value()) {
    throw ConfigError("grid_min and grid_max must be given together");
  }
  try {
    (void)s.params.grid(s.distances());
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return s;
}

ConfigLines describe(const SweepConfig& s) {
  const GridSpec g = s.params.grid(s.distances());
  return {{"sigma", format_number(s.params.sigma1)},
          {"sigma2", format_number(s.params.sigma2)},
          {"k", format_number(s.params.k1)},
          {"k2", format_number(s.params.k2)},
          {"grid_n", std::to_string(s.params.grid_n)},
          {"grid_min", format_number(g.origin()[0])},
          {"grid_max", format_number(g.origin()[0] + g.length(0))},
          {"x_min", format_number(s.x_min)},
          {"x_max", format_number(s.x_max)},
          {"x_step", format_number(s.x_step)}};
}

}  // namespace qdisp::io
