#include "core/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "core/errors.hpp"
#include "core/hash_rng.hpp"

namespace rwlab {

const char* env_kind_name(EnvKind k) {
  switch (k) {
    case EnvKind::Straight: return "STRAIGHT";
    case EnvKind::Diagonal: return "DIAGONAL";
    case EnvKind::Iid: return "IID";
  }
  return "?";
}

IntensityParams ExperimentConfig::intensity(std::uint64_t seed) const {
  if (model == EnvKind::Iid) config_error("iid environments carry no intensity law");
  IntensityParams p;
  p.model = model == EnvKind::Straight ? Model::Straight : Model::Diagonal;
  p.theta = theta;
  p.n0 = n0;
  p.seed = seed;
  return p;
}

ConductanceParams ExperimentConfig::conductance() const {
  ConductanceParams p;
  p.A = A;
  p.alpha_bar = alpha_finite;
  return p;
}

IidLogParams ExperimentConfig::iid(std::uint64_t seed) const { return {beta, seed}; }

Point ExperimentConfig::walk_start() const {
  if (start_set) return {start_x, start_y};
  return {origin_x + static_cast<std::int64_t>(width / 8),
          origin_y + static_cast<std::int64_t>(height / 8)};
}

WalkBackend ExperimentConfig::resolved_backend() const {
  if (walk_env != WalkBackend::Auto) return walk_env;
  return width * height <= (1ull << 26) ? WalkBackend::Box : WalkBackend::Lazy;
}

void ExperimentConfig::validate() const {
  if (seeds.empty()) config_error("at least one seed is required");
  BoxSpec b = box();
  b.validate();
  if (model != EnvKind::Iid) {
    intensity(seeds.front()).validate();
    conductance().validate();
  } else {
    iid(seeds.front()).validate();
  }
  if (steps < 1) config_error("steps must be >= 1");
  if (!(gamma > 1.0)) config_error("checkpoint ratio gamma must exceed 1");
  if (!(burn_in >= 0.0 && burn_in < 1.0)) config_error("burn_in must lie in [0, 1)");
  if (vc_size * vc_size > 400) config_error("vc_size^2 must not exceed 400 states");
  if (vc_logw_max > 200.0) config_error("vc_logw_max must stay <= 200");
  if (vc_nmax < 1) config_error("vc_nmax must be >= 1");
  if (!(osc_delta > 0.0)) config_error("osc_delta must be positive");
  for (const double t : thresholds) {
    if (t < 1.0) config_error("height thresholds must be >= 1");
  }
  for (const double t : t_thresholds) {
    if (t <= 1.0) config_error("lambda thresholds must exceed 1");
  }
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string strip_brackets(std::string v) {
  if (!v.empty() && (v.front() == '[' || v.front() == '(')) v.erase(v.begin());
  if (!v.empty() && (v.back() == ']' || v.back() == ')')) v.pop_back();
  return trim(v);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(strip_brackets(v));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const unsigned long long r = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    config_error("key '" + key + "': expected unsigned integer, got '" + v + "'");
  }
  return 0;
}

std::int64_t parse_i64(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long r = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    config_error("key '" + key + "': expected integer, got '" + v + "'");
  }
  return 0;
}

double parse_f64(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double r = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    config_error("key '" + key + "': expected number, got '" + v + "'");
  }
  return 0.0;
}

bool parse_bool(const std::string& key, std::string v) {
  std::transform(v.begin(), v.end(), v.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  config_error("key '" + key + "': expected boolean, got '" + v + "'");
  return false;
}

std::string fmt_f64(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  bool theta_set = false, n0_set = false;
  bool start_x_set = false, start_y_set = false;

  std::stringstream ss(text);
  std::string raw;
  while (std::getline(ss, raw)) {
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::string line = trim(raw);
    if (line.empty()) continue;
    std::size_t sep = line.find('=');
    if (sep == std::string::npos) sep = line.find(':');
    if (sep == std::string::npos) config_error("config line without separator: '" + line + "'");
    const std::string key = trim(line.substr(0, sep));
    const std::string val = trim(line.substr(sep + 1));
    if (key.empty() || val.empty()) config_error("empty key or value in line: '" + line + "'");

    if (key == "model") {
      std::string v = strip_brackets(val);
      std::transform(v.begin(), v.end(), v.begin(),
                     [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
      if (v == "STRAIGHT") {
        cfg.model = EnvKind::Straight;
      } else if (v == "DIAGONAL") {
        cfg.model = EnvKind::Diagonal;
      } else if (v == "IID") {
        cfg.model = EnvKind::Iid;
      } else {
        config_error("model must be STRAIGHT, DIAGONAL or IID, got '" + val + "'");
      }
    } else if (key == "theta") {
      cfg.theta = parse_f64(key, val);
      theta_set = true;
    } else if (key == "n0") {
      cfg.n0 = static_cast<std::uint32_t>(parse_u64(key, val));
      n0_set = true;
    } else if (key == "A") {
      cfg.A = parse_f64(key, val);
    } else if (key == "beta") {
      cfg.beta = parse_f64(key, val);
    } else if (key == "origin_x") {
      cfg.origin_x = parse_i64(key, val);
    } else if (key == "origin_y") {
      cfg.origin_y = parse_i64(key, val);
    } else if (key == "width") {
      cfg.width = parse_u64(key, val);
    } else if (key == "height") {
      cfg.height = parse_u64(key, val);
    } else if (key == "margin") {
      cfg.margin = parse_u64(key, val);
    } else if (key == "seeds") {
      cfg.seeds.clear();
      for (const std::string& s : split_list(val)) cfg.seeds.push_back(parse_u64(key, s));
    } else if (key == "steps") {
      cfg.steps = parse_u64(key, val);
    } else if (key == "gamma") {
      cfg.gamma = parse_f64(key, val);
    } else if (key == "checkpoints") {
      cfg.checkpoints.clear();
      for (const std::string& s : split_list(val)) cfg.checkpoints.push_back(parse_u64(key, s));
    } else if (key == "start_x") {
      cfg.start_x = parse_i64(key, val);
      start_x_set = true;
    } else if (key == "start_y") {
      cfg.start_y = parse_i64(key, val);
      start_y_set = true;
    } else if (key == "stop_on_exit") {
      cfg.stop_on_exit = parse_bool(key, val);
    } else if (key == "walk_env") {
      std::string v = val;
      std::transform(v.begin(), v.end(), v.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      if (v == "auto") {
        cfg.walk_env = WalkBackend::Auto;
      } else if (v == "box") {
        cfg.walk_env = WalkBackend::Box;
      } else if (v == "lazy") {
        cfg.walk_env = WalkBackend::Lazy;
      } else {
        config_error("walk_env must be auto, box or lazy");
      }
    } else if (key == "walk_margin") {
      cfg.walk_margin = parse_u64(key, val);
    } else if (key == "thresholds") {
      cfg.thresholds.clear();
      for (const std::string& s : split_list(val)) cfg.thresholds.push_back(parse_f64(key, s));
    } else if (key == "t_thresholds") {
      cfg.t_thresholds.clear();
      for (const std::string& s : split_list(val)) cfg.t_thresholds.push_back(parse_f64(key, s));
    } else if (key == "burn_in") {
      cfg.burn_in = parse_f64(key, val);
    } else if (key == "osc_delta") {
      cfg.osc_delta = parse_f64(key, val);
    } else if (key == "osc_frac") {
      cfg.osc_frac = parse_f64(key, val);
    } else if (key == "vc_kernels") {
      cfg.vc_kernels = parse_u64(key, val);
    } else if (key == "vc_size") {
      cfg.vc_size = parse_u64(key, val);
    } else if (key == "vc_logw_max") {
      cfg.vc_logw_max = parse_f64(key, val);
    } else if (key == "vc_nmax") {
      cfg.vc_nmax = parse_u64(key, val);
    } else if (key == "vc_bound_scale") {
      cfg.vc_bound_scale = parse_f64(key, val);
    } else if (key == "alpha_finite") {
      cfg.alpha_finite = parse_f64(key, val);
    } else if (key == "alpha_divergent") {
      cfg.alpha_divergent = parse_f64(key, val);
    } else if (key == "doublings") {
      cfg.doublings = static_cast<std::uint32_t>(parse_u64(key, val));
    } else if (key == "out") {
      cfg.out_dir = val;
    } else {
      config_error("unknown config key '" + key + "'");
    }
  }

  if (!theta_set) cfg.theta = cfg.model == EnvKind::Diagonal ? 10.0 : 3.0;
  if (!n0_set) cfg.n0 = cfg.model == EnvKind::Diagonal ? 4 : 2;
  if (start_x_set != start_y_set) config_error("start_x and start_y must be given together");
  cfg.start_set = start_x_set && start_y_set;

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) io_error("cannot read config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream o;
  o << "model = " << env_kind_name(cfg.model) << '\n';
  o << "theta = " << fmt_f64(cfg.theta) << '\n';
  o << "n0 = " << cfg.n0 << '\n';
  o << "A = " << fmt_f64(cfg.A) << '\n';
  o << "beta = " << fmt_f64(cfg.beta) << '\n';
  o << "origin_x = " << cfg.origin_x << '\n';
  o << "origin_y = " << cfg.origin_y << '\n';
  o << "width = " << cfg.width << '\n';
  o << "height = " << cfg.height << '\n';
  o << "margin = " << cfg.margin << '\n';
  o << "seeds = ";
  for (std::size_t i = 0; i < cfg.seeds.size(); ++i) o << (i ? "," : "") << cfg.seeds[i];
  o << '\n';
  o << "steps = " << cfg.steps << '\n';
  o << "gamma = " << fmt_f64(cfg.gamma) << '\n';
  if (!cfg.checkpoints.empty()) {
    o << "checkpoints = ";
    for (std::size_t i = 0; i < cfg.checkpoints.size(); ++i) {
      o << (i ? "," : "") << cfg.checkpoints[i];
    }
    o << '\n';
  }
  if (cfg.start_set) {
    o << "start_x = " << cfg.start_x << '\n';
    o << "start_y = " << cfg.start_y << '\n';
  }
  o << "stop_on_exit = " << (cfg.stop_on_exit ? "true" : "false") << '\n';
  o << "walk_env = "
    << (cfg.walk_env == WalkBackend::Auto ? "auto"
                                          : cfg.walk_env == WalkBackend::Box ? "box" : "lazy")
    << '\n';
  o << "walk_margin = " << cfg.walk_margin << '\n';
  o << "thresholds = ";
  for (std::size_t i = 0; i < cfg.thresholds.size(); ++i) {
    o << (i ? "," : "") << fmt_f64(cfg.thresholds[i]);
  }
  o << '\n';
  o << "t_thresholds = ";
  for (std::size_t i = 0; i < cfg.t_thresholds.size(); ++i) {
    o << (i ? "," : "") << fmt_f64(cfg.t_thresholds[i]);
  }
  o << '\n';
  o << "burn_in = " << fmt_f64(cfg.burn_in) << '\n';
  o << "osc_delta = " << fmt_f64(cfg.osc_delta) << '\n';
  o << "osc_frac = " << fmt_f64(cfg.osc_frac) << '\n';
  o << "vc_kernels = " << cfg.vc_kernels << '\n';
  o << "vc_size = " << cfg.vc_size << '\n';
  o << "vc_logw_max = " << fmt_f64(cfg.vc_logw_max) << '\n';
  o << "vc_nmax = " << cfg.vc_nmax << '\n';
  o << "vc_bound_scale = " << fmt_f64(cfg.vc_bound_scale) << '\n';
  o << "alpha_finite = " << fmt_f64(cfg.alpha_finite) << '\n';
  o << "alpha_divergent = " << fmt_f64(cfg.alpha_divergent) << '\n';
  o << "doublings = " << cfg.doublings << '\n';
  o << "out = " << cfg.out_dir << '\n';
  return o.str();
}

std::string config_fingerprint(const ExperimentConfig& cfg) {
  ExperimentConfig c = cfg;
  c.out_dir = "";
  const std::string text = serialize_config(c);
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  for (const char ch : text) h = mix64(h ^ static_cast<std::uint8_t>(ch));
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%08x", static_cast<std::uint32_t>(h >> 32));
  return buf;
}

}  // namespace rwlab
