#include "rcpolar/sim_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace rcpolar {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("expected a boolean, got '" + v + "'");
}

double parse_double(const std::string& v) {
  size_t pos = 0;
  double d;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError("expected a number, got '" + v + "'");
  }
  if (pos != v.size()) throw ConfigError("trailing characters in number '" + v + "'");
  return d;
}

int64_t parse_int(const std::string& v) {
  size_t pos = 0;
  long long i;
  try {
    i = std::stoll(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError("expected an integer, got '" + v + "'");
  }
  if (pos != v.size()) throw ConfigError("trailing characters in integer '" + v + "'");
  return i;
}

uint64_t parse_uint(const std::string& v) {
  int64_t i = parse_int(v);
  if (i < 0) throw ConfigError("expected a nonnegative integer, got '" + v + "'");
  return (uint64_t)i;
}

// "a,b,c" or "start:step:stop" (stop inclusive within 1e-9)
std::vector<double> parse_grid(const std::string& v) {
  std::vector<double> out;
  if (v.find(':') != std::string::npos) {
    std::stringstream ss(v);
    std::string a, b, c;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c))
      throw ConfigError("grid must be start:step:stop");
    double start = parse_double(trim(a)), step = parse_double(trim(b)),
           stop = parse_double(trim(c));
    if (step <= 0.0) throw ConfigError("grid step must be positive");
    for (double x = start; x <= stop + 1e-9; x += step) out.push_back(x);
    return out;
  }
  std::stringstream ss(v);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_double(trim(tok)));
  if (out.empty()) throw ConfigError("empty grid");
  return out;
}

void set_key(SimConfig& cfg, const std::string& sec, const std::string& key,
             const std::string& val) {
  auto unknown = [&]() -> void {
    throw ConfigError("unknown key '" + key + "' in [" + sec + "]");
  };
  if (sec == "code") {
    if (key == "n") cfg.n = (int)parse_int(val);
    else if (key == "p") cfg.p = (int)parse_int(val);
    else if (key == "q") cfg.q = (int)parse_int(val);
    else if (key == "k") cfg.k = (int)parse_int(val);
    else if (key == "crc_len") cfg.crc_len = (int)parse_int(val);
    else if (key == "design_snr_db") cfg.design_snr_db = parse_double(val);
    else if (key == "info_set_file") cfg.info_set_file = val;
    else if (key == "puncture_order_file") cfg.puncture_order_file = val;
    else unknown();
  } else if (sec == "channel") {
    if (key == "kind") cfg.channel = val;
    else if (key == "modulation") cfg.modulation = (int)parse_int(val);
    else if (key == "snr_db") cfg.snr_db = parse_grid(val);
    else if (key == "noiseless") cfg.noiseless = parse_bool(val);
    else if (key == "max_log") cfg.max_log = parse_bool(val);
    else unknown();
  } else if (sec == "rate_match") {
    if (key == "L") cfg.L = (uint32_t)parse_uint(val);
    else if (key == "start_column") cfg.start_column = (uint32_t)parse_uint(val);
    else if (key == "alternating") cfg.alternating = parse_bool(val);
    else unknown();
  } else if (sec == "decoder") {
    if (key == "algo") cfg.decoder = val;
    else if (key == "list_size") cfg.list_size = (int)parse_int(val);
    else if (key == "use_crc") cfg.use_crc = parse_bool(val);
    else if (key == "min_sum") cfg.min_sum = parse_bool(val);
    else unknown();
  } else if (sec == "harq") {
    if (key == "scheme") cfg.harq_scheme = val;
    else if (key == "t") cfg.harq_t = (int)parse_int(val);
    else if (key == "sessions") cfg.harq_sessions = parse_uint(val);
    else unknown();
  } else if (sec == "stop") {
    if (key == "min_frame_errors") cfg.min_frame_errors = parse_uint(val);
    else if (key == "max_frames") cfg.max_frames = parse_uint(val);
    else unknown();
  } else if (sec == "run") {
    if (key == "seed") cfg.seed = parse_uint(val);
    else if (key == "threads") cfg.threads = (int)parse_int(val);
    else if (key == "batch") cfg.batch = parse_uint(val);
    else unknown();
  } else {
    throw ConfigError("unknown section [" + sec + "]");
  }
}

}  // namespace

void SimConfig::validate() const {
  if (n < 1 || n > 20) throw ConfigError("code.n out of range [1,20]");
  if (p < 0 || q < 0 || p + q != n) throw ConfigError("code.p + code.q must equal code.n");
  if (k < 1 || k > (1 << n)) throw ConfigError("code.k out of range [1, 2^n]");
  if (crc_len < 0 || crc_len >= k) throw ConfigError("code.crc_len must be in [0, k)");
  if (channel != "awgn" && channel != "fading")
    throw ConfigError("channel.kind must be awgn or fading (bec is construction-only)");
  if (modulation != 2 && modulation != 4 && modulation != 16 && modulation != 64)
    throw ConfigError("channel.modulation must be 2, 4, 16 or 64");
  if (snr_db.empty()) throw ConfigError("channel.snr_db grid is empty");
  if (start_column >= (1u << p)) throw ConfigError("rate_match.start_column out of range");
  if (decoder != "sc" && decoder != "scl") throw ConfigError("decoder.algo must be sc or scl");
  if (list_size < 1) throw ConfigError("decoder.list_size must be >= 1");
  if (decoder == "sc" && list_size != 1)
    throw ConfigError("decoder.algo=sc requires list_size=1");
  if (use_crc && crc_len == 0) throw ConfigError("decoder.use_crc needs code.crc_len > 0");
  if (harq_scheme != "cc" && harq_scheme != "ir")
    throw ConfigError("harq.scheme must be cc or ir");
  if (harq_t < 1) throw ConfigError("harq.t must be >= 1");
  if (harq_sessions < 1) throw ConfigError("harq.sessions must be >= 1");
  if (min_frame_errors < 1) throw ConfigError("stop.min_frame_errors must be >= 1");
  if (max_frames < 1) throw ConfigError("stop.max_frames must be >= 1");
  if (threads < 1 || threads > 256) throw ConfigError("run.threads out of range [1,256]");
  if (batch < 1) throw ConfigError("run.batch must be >= 1");
}

SimConfig parse_config_text(const std::string& text, const std::string& name) {
  SimConfig cfg;
  std::istringstream is(text);
  std::string line, sec;
  int lineno = 0;
  while (std::getline(is, line)) {
    lineno++;
    auto where = [&]() { return name + ":" + std::to_string(lineno) + ": "; };
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ConfigError(where() + "unterminated section header");
      sec = trim(t.substr(1, t.size() - 2));
      if (sec.empty()) throw ConfigError(where() + "empty section name");
      continue;
    }
    auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError(where() + "expected key = value");
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    if (key.empty()) throw ConfigError(where() + "empty key");
    if (sec.empty()) throw ConfigError(where() + "key '" + key + "' outside any [section]");
    try {
      set_key(cfg, sec, key, val);
    } catch (const ConfigError& e) {
      throw ConfigError(where() + e.what());
    }
  }
  return cfg;
}

SimConfig parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str(), path);
}

void apply_override(SimConfig& cfg, const std::string& assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("--set expects section.key=value, got '" + assignment + "'");
  std::string path = trim(assignment.substr(0, eq));
  std::string val = trim(assignment.substr(eq + 1));
  auto dot = path.find('.');
  if (dot == std::string::npos)
    throw ConfigError("--set expects section.key=value, got '" + assignment + "'");
  try {
    set_key(cfg, path.substr(0, dot), path.substr(dot + 1), val);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("--set ") + assignment + ": " + e.what());
  }
}

}  // namespace rcpolar
