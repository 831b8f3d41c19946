#pragma once

#include <array>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ltesim {

enum class SchedulerKind { fd_pf, fd_mlwdf, td_grouping };
enum class PredictorMode { autosel, on, off };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline const char* to_string(SchedulerKind k) {
  switch (k) {
    case SchedulerKind::fd_pf: return "fd_pf";
    case SchedulerKind::fd_mlwdf: return "fd_mlwdf";
    case SchedulerKind::td_grouping: return "td_grouping";
  }
  return "?";
}

inline SchedulerKind scheduler_kind_from(const std::string& s) {
  if (s == "fd_pf") return SchedulerKind::fd_pf;
  if (s == "fd_mlwdf") return SchedulerKind::fd_mlwdf;
  if (s == "td_grouping") return SchedulerKind::td_grouping;
  throw ConfigError("scheduler_kind: unknown value '" + s +
                    "' (expected fd_pf, fd_mlwdf or td_grouping)");
}

struct SimConfig {
  // Radio numerology
  double bandwidth_hz = 5e6;
  int n_prb = 25;
  int subcarriers_per_prb = 12;
  double subcarrier_spacing_hz = 15e3;
  double tti_seconds = 1e-3;
  int symbols_per_tti = 14;
  int re_per_prb = 168;
  int re_data = 168;  // resource elements carrying data, per PRB per TTI
  double enb_power_dbm = 43.01;
  double carrier_hz = 2e9;

  // Cell geometry and mobility
  double cell_radius_m = 100.0;
  double user_speed_mps = 33.333;

  // Channel
  double noise_figure_db = 9.0;
  double interference_dbm = -110.0;
  double shadowing_sigma_db = 8.0;
  bool fading_enabled = true;

  // CQI feedback impairments
  int cqi_delay_ttis = 3;
  int cqi_blank_period_ttis = 10;  // 0 disables blanking

  // CQI mapping
  double cqi_sinr_floor_db = -6.0;
  double cqi_sinr_step_db = 2.0;
  std::array<double, 15> cqi_efficiency = {0.1523, 0.2344, 0.3770, 0.6016,
                                           0.8770, 1.1758, 1.4766, 1.9141,
                                           2.4063, 2.7305, 3.3223, 3.9023,
                                           4.5234, 5.1152, 5.5547};

  // Channel-quality filter
  std::array<double, 3> kalman_q_diag = {1e-2, 1e-3, 1e-4};
  std::array<double, 3> kalman_r_diag = {0.33, 0.67, 2.0};
  std::array<double, 3> kalman_p0_default_diag = {100.0, 1.0, 1.0};
  double kalman_p0_floor = 1e-2;

  // Scheduler
  SchedulerKind scheduler_kind = SchedulerKind::td_grouping;
  PredictorMode use_predictor = PredictorMode::autosel;
  double t_c_ttis = 1000.0;   // past-throughput averaging window
  double delta_i = 0.05;      // acceptable packet loss ratio target
  double t_i_seconds = 0.1;   // packet delay budget

  // Traffic (constant bit rate per user)
  long long traffic_packet_bits = 800;
  int traffic_interarrival_ttis = 10;

  // Run control
  long long sim_ttis = 10000;
  int n_users = 10;
  std::uint64_t rng_seed = 1;
  long long metrics_warmup_ttis = 0;

  double prb_bandwidth_hz() const {
    return subcarriers_per_prb * subcarrier_spacing_hz;
  }

  bool predictor_active() const {
    switch (use_predictor) {
      case PredictorMode::on: return true;
      case PredictorMode::off: return false;
      case PredictorMode::autosel: break;
    }
    return scheduler_kind == SchedulerKind::td_grouping;
  }

  void validate() const;
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline double parse_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  }
  if (used != v.size())
    throw ConfigError(key + ": trailing characters in number '" + v + "'");
  return out;
}

inline long long parse_int(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long long out;
  try {
    out = std::stoll(v, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected an integer, got '" + v + "'");
  }
  if (used != v.size())
    throw ConfigError(key + ": trailing characters in integer '" + v + "'");
  return out;
}

inline bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  throw ConfigError(key + ": expected a boolean, got '" + v + "'");
}

inline PredictorMode parse_predictor_mode(const std::string& key,
                                          const std::string& v) {
  if (v == "auto") return PredictorMode::autosel;
  if (v == "on" || v == "true" || v == "1") return PredictorMode::on;
  if (v == "off" || v == "false" || v == "0") return PredictorMode::off;
  throw ConfigError(key + ": expected auto, on or off, got '" + v + "'");
}

inline std::vector<double> parse_double_list(const std::string& key,
                                             const std::string& v,
                                             std::size_t want) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
  if (out.size() != want)
    throw ConfigError(key + ": expected " + std::to_string(want) +
                      " comma-separated values, got " + std::to_string(out.size()));
  return out;
}

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct FieldEntry {
  const char* name;
  std::function<void(SimConfig&, const std::string&)> set;
  std::function<std::string(const SimConfig&)> get;
};

inline const std::vector<FieldEntry>& field_table() {
  auto num = [](const char* n, double SimConfig::*f) {
    return FieldEntry{
        n,
        [n, f](SimConfig& c, const std::string& v) { c.*f = parse_double(n, v); },
        [f](const SimConfig& c) { return format_double(c.*f); }};
  };
  auto i32 = [](const char* n, int SimConfig::*f) {
    return FieldEntry{
        n,
        [n, f](SimConfig& c, const std::string& v) {
          c.*f = static_cast<int>(parse_int(n, v));
        },
        [f](const SimConfig& c) { return std::to_string(c.*f); }};
  };
  auto i64 = [](const char* n, long long SimConfig::*f) {
    return FieldEntry{
        n,
        [n, f](SimConfig& c, const std::string& v) { c.*f = parse_int(n, v); },
        [f](const SimConfig& c) { return std::to_string(c.*f); }};
  };
  auto boolean = [](const char* n, bool SimConfig::*f) {
    return FieldEntry{
        n,
        [n, f](SimConfig& c, const std::string& v) { c.*f = parse_bool(n, v); },
        [f](const SimConfig& c) { return std::string(c.*f ? "true" : "false"); }};
  };
  auto arr = [](const char* n, auto SimConfig::*f) {
    return FieldEntry{
        n,
        [n, f](SimConfig& c, const std::string& v) {
          auto vals = parse_double_list(n, v, (c.*f).size());
          for (std::size_t i = 0; i < vals.size(); ++i) (c.*f)[i] = vals[i];
        },
        [f](const SimConfig& c) {
          std::string out;
          for (std::size_t i = 0; i < (c.*f).size(); ++i) {
            if (i) out += ", ";
            out += format_double((c.*f)[i]);
          }
          return out;
        }};
  };

  static const std::vector<FieldEntry> table = {
      num("bandwidth_hz", &SimConfig::bandwidth_hz),
      i32("n_prb", &SimConfig::n_prb),
      i32("subcarriers_per_prb", &SimConfig::subcarriers_per_prb),
      num("subcarrier_spacing_hz", &SimConfig::subcarrier_spacing_hz),
      num("tti_seconds", &SimConfig::tti_seconds),
      i32("symbols_per_tti", &SimConfig::symbols_per_tti),
      i32("re_per_prb", &SimConfig::re_per_prb),
      i32("re_data", &SimConfig::re_data),
      num("enb_power_dbm", &SimConfig::enb_power_dbm),
      num("carrier_hz", &SimConfig::carrier_hz),
      num("cell_radius_m", &SimConfig::cell_radius_m),
      num("user_speed_mps", &SimConfig::user_speed_mps),
      num("noise_figure_db", &SimConfig::noise_figure_db),
      num("interference_dbm", &SimConfig::interference_dbm),
      num("shadowing_sigma_db", &SimConfig::shadowing_sigma_db),
      boolean("fading_enabled", &SimConfig::fading_enabled),
      i32("cqi_delay_ttis", &SimConfig::cqi_delay_ttis),
      i32("cqi_blank_period_ttis", &SimConfig::cqi_blank_period_ttis),
      num("cqi_sinr_floor_db", &SimConfig::cqi_sinr_floor_db),
      num("cqi_sinr_step_db", &SimConfig::cqi_sinr_step_db),
      arr("cqi_efficiency", &SimConfig::cqi_efficiency),
      arr("kalman_q_diag", &SimConfig::kalman_q_diag),
      arr("kalman_r_diag", &SimConfig::kalman_r_diag),
      arr("kalman_p0_default_diag", &SimConfig::kalman_p0_default_diag),
      num("kalman_p0_floor", &SimConfig::kalman_p0_floor),
      FieldEntry{"scheduler_kind",
                 [](SimConfig& c, const std::string& v) {
                   c.scheduler_kind = scheduler_kind_from(v);
                 },
                 [](const SimConfig& c) {
                   return std::string(to_string(c.scheduler_kind));
                 }},
      FieldEntry{"use_predictor",
                 [](SimConfig& c, const std::string& v) {
                   c.use_predictor = parse_predictor_mode("use_predictor", v);
                 },
                 [](const SimConfig& c) {
                   switch (c.use_predictor) {
                     case PredictorMode::on: return std::string("on");
                     case PredictorMode::off: return std::string("off");
                     case PredictorMode::autosel: break;
                   }
                   return std::string("auto");
                 }},
      num("t_c_ttis", &SimConfig::t_c_ttis),
      num("delta_i", &SimConfig::delta_i),
      num("t_i_seconds", &SimConfig::t_i_seconds),
      i64("traffic_packet_bits", &SimConfig::traffic_packet_bits),
      i32("traffic_interarrival_ttis", &SimConfig::traffic_interarrival_ttis),
      i64("sim_ttis", &SimConfig::sim_ttis),
      i32("n_users", &SimConfig::n_users),
      FieldEntry{"rng_seed",
                 [](SimConfig& c, const std::string& v) {
                   c.rng_seed =
                       static_cast<std::uint64_t>(parse_int("rng_seed", v));
                 },
                 [](const SimConfig& c) { return std::to_string(c.rng_seed); }},
      i64("metrics_warmup_ttis", &SimConfig::metrics_warmup_ttis),
  };
  return table;
}

inline const FieldEntry* find_field(const std::string& key) {
  for (const auto& e : field_table())
    if (key == e.name) return &e;
  return nullptr;
}

}  // namespace detail

inline void SimConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (bandwidth_hz <= 0) fail("bandwidth_hz: must be positive");
  if (n_prb < 1) fail("n_prb: must be at least 1");
  if (subcarriers_per_prb < 1) fail("subcarriers_per_prb: must be at least 1");
  if (subcarrier_spacing_hz <= 0) fail("subcarrier_spacing_hz: must be positive");
  if (n_prb * prb_bandwidth_hz() > bandwidth_hz + 1e-6)
    fail("n_prb: PRBs do not fit into bandwidth_hz");
  if (tti_seconds <= 0) fail("tti_seconds: must be positive");
  if (symbols_per_tti < 1) fail("symbols_per_tti: must be at least 1");
  if (re_per_prb < 1) fail("re_per_prb: must be at least 1");
  if (re_data < 0) fail("re_data: must be non-negative");
  if (re_data > re_per_prb) fail("re_data: cannot exceed re_per_prb");
  if (carrier_hz <= 0) fail("carrier_hz: must be positive");
  if (cell_radius_m <= 0) fail("cell_radius_m: must be positive");
  if (user_speed_mps < 0) fail("user_speed_mps: must be non-negative");
  if (shadowing_sigma_db < 0) fail("shadowing_sigma_db: must be non-negative");
  if (cqi_delay_ttis < 0) fail("cqi_delay_ttis: must be non-negative");
  if (cqi_blank_period_ttis < 0)
    fail("cqi_blank_period_ttis: must be non-negative (0 disables)");
  if (cqi_sinr_step_db <= 0) fail("cqi_sinr_step_db: must be positive");
  for (std::size_t i = 0; i < cqi_efficiency.size(); ++i) {
    if (cqi_efficiency[i] < 0) fail("cqi_efficiency: entries must be non-negative");
    if (i > 0 && cqi_efficiency[i] < cqi_efficiency[i - 1])
      fail("cqi_efficiency: entries must be non-decreasing");
  }
  for (double v : kalman_q_diag)
    if (v < 0) fail("kalman_q_diag: entries must be non-negative");
  for (double v : kalman_r_diag)
    if (v < 0) fail("kalman_r_diag: entries must be non-negative");
  for (double v : kalman_p0_default_diag)
    if (v < 0) fail("kalman_p0_default_diag: entries must be non-negative");
  if (kalman_p0_floor <= 0) fail("kalman_p0_floor: must be positive");
  if (t_c_ttis < 1) fail("t_c_ttis: must be at least 1");
  if (delta_i <= 0 || delta_i >= 1) fail("delta_i: must lie strictly in (0, 1)");
  if (t_i_seconds <= 0) fail("t_i_seconds: must be positive");
  if (traffic_packet_bits < 1) fail("traffic_packet_bits: must be at least 1");
  if (traffic_interarrival_ttis < 1)
    fail("traffic_interarrival_ttis: must be at least 1");
  if (sim_ttis < 0) fail("sim_ttis: must be non-negative");
  if (n_users < 0) fail("n_users: must be non-negative");
  if (metrics_warmup_ttis < 0) fail("metrics_warmup_ttis: must be non-negative");
}

// Parses "key = value" lines; '#' starts a comment, blank lines are skipped.
inline SimConfig parse_config(std::istream& in, const std::string& origin) {
  SimConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = detail::trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    std::string where = origin + ":" + std::to_string(lineno);
    if (eq == std::string::npos)
      throw ConfigError(where + ": expected 'key = value', got '" + stripped + "'");
    const std::string key = detail::trim(stripped.substr(0, eq));
    const std::string value = detail::trim(stripped.substr(eq + 1));
    const auto* field = detail::find_field(key);
    if (!field) throw ConfigError(where + ": unknown key '" + key + "'");
    try {
      field->set(cfg, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  return cfg;
}

inline SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in, path);
}

// Applies a single "key=value" override on top of a loaded config.
inline void apply_override(SimConfig& cfg, const std::string& key_eq_value) {
  const auto eq = key_eq_value.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override '" + key_eq_value + "': expected key=value");
  const std::string key = detail::trim(key_eq_value.substr(0, eq));
  const std::string value = detail::trim(key_eq_value.substr(eq + 1));
  const auto* field = detail::find_field(key);
  if (!field) throw ConfigError("override: unknown key '" + key + "'");
  field->set(cfg, value);
}

inline std::vector<std::string> config_keys() {
  std::vector<std::string> out;
  for (const auto& e : detail::field_table()) out.emplace_back(e.name);
  return out;
}

inline std::string dump_config(const SimConfig& cfg) {
  std::string out;
  for (const auto& e : detail::field_table()) {
    out += e.name;
    out += " = ";
    out += e.get(cfg);
    out += "\n";
  }
  return out;
}

}  // namespace ltesim
