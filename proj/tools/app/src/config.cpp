#include "entdyn/app/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "entdyn/error.hpp"

namespace entdyn::app {

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

using Table = std::map<std::string, Entry, std::less<>>;

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

Table tokenize(std::string_view text) {
  Table table;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      parse_error(fmt::format("line {}: expected 'key = value', got '{}'", line_no, line));
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) parse_error(fmt::format("line {}: missing key before '='", line_no));
    if (value.empty()) parse_error(fmt::format("line {}: key '{}' has no value", line_no, key));
    if (auto it = table.find(key); it != table.end())
      parse_error(fmt::format("line {}: duplicate key '{}' (first set on line {})", line_no, key,
                              it->second.line));
    table.emplace(key, Entry{value, line_no});
  }
  return table;
}

/// Pulls typed values out of a Table and remembers which keys were used.
class Reader {
 public:
  explicit Reader(const Table& t) : table_(t) {}

  const Entry* find(std::string_view key) {
    auto it = table_.find(key);
    if (it == table_.end()) return nullptr;
    used_.insert(it->first);
    return &it->second;
  }

  const Entry& require(std::string_view key) {
    const Entry* e = find(key);
    if (e == nullptr) parse_error(fmt::format("missing required key '{}'", key));
    return *e;
  }

  double number(std::string_view key) { return to_number(key, require(key)); }

  double number_or(std::string_view key, double fallback) {
    const Entry* e = find(key);
    return e ? to_number(key, *e) : fallback;
  }

  std::string text(std::string_view key) { return require(key).value; }

  std::string text_or(std::string_view key, std::string fallback) {
    const Entry* e = find(key);
    return e ? e->value : std::move(fallback);
  }

  bool flag_or(std::string_view key, bool fallback) {
    const Entry* e = find(key);
    if (e == nullptr) return fallback;
    std::string v = e->value;
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    parse_error(fmt::format("line {}: '{}': expected true or false, got '{}'", e->line, key, e->value));
  }

  std::size_t count(std::string_view key) {
    const Entry& e = require(key);
    std::size_t out = 0;
    const auto* first = e.value.data();
    const auto* last = first + e.value.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last)
      parse_error(fmt::format("line {}: '{}': expected a non-negative integer, got '{}'", e.line,
                              key, e.value));
    return out;
  }

  int line(std::string_view key) const {
    auto it = table_.find(key);
    return it == table_.end() ? 0 : it->second.line;
  }

  void reject_unused(const std::string& kind) const {
    for (const auto& [key, entry] : table_) {
      if (used_.count(key)) continue;
      if (key.rfind("model.", 0) == 0)
        parse_error(fmt::format("line {}: key '{}' is not valid for model.kind = {}", entry.line,
                                key, kind));
      parse_error(fmt::format("line {}: unknown key '{}'", entry.line, key));
    }
  }

  static double to_number(std::string_view key, const Entry& e) {
    double out = 0.0;
    const auto* first = e.value.data();
    const auto* last = first + e.value.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last || !std::isfinite(out))
      parse_error(fmt::format("line {}: '{}': expected a finite number, got '{}'", e.line, key,
                              e.value));
    return out;
  }

 private:
  const Table& table_;
  std::set<std::string, std::less<>> used_;
};

std::string format_number(double v) { return fmt::format("{:.17g}", v); }

void check_run_config(const RunConfig& cfg, const Reader& r) {
  auto at = [&](std::string_view key) {
    const int line = r.line(key);
    return line > 0 ? fmt::format("line {}: ", line) : std::string();
  };
  if (!(cfg.grid.t_max > 0.0)) parse_error(at("grid.t_max") + "grid.t_max must be > 0");
  if (cfg.grid.n < 16) parse_error(at("grid.n") + "grid.n must be >= 16");
  if (!(cfg.initial.alpha >= 0.0 && cfg.initial.alpha <= 1.0))
    parse_error(at("initial.alpha") + "initial.alpha must lie in [0, 1]");
  if (cfg.oracle.enabled && !(cfg.oracle.step > 0.0 && cfg.oracle.step <= cfg.grid.t_max))
    parse_error(at("oracle.step") + "oracle.step must satisfy 0 < step <= grid.t_max");
  if (cfg.output.format != "csv")
    parse_error(at("output.format") + "output.format must be 'csv'");
  if (cfg.output.path.empty()) parse_error(at("output.path") + "output.path must not be empty");
  validate(cfg.model);
}

RunConfig build_run_config(const Table& table) {
  Reader r(table);
  RunConfig cfg;

  const std::string kind = r.text("model.kind");
  if (kind == "lorentzian") {
    cfg.model = DetunedLorentzian{r.number("model.gamma"), r.number("model.lambda"),
                                  r.number("model.delta")};
  } else if (kind == "bandgap") {
    cfg.model = BandGapDip{r.number("model.gamma1"), r.number("model.gamma2"),
                           r.number("model.lambda1"), r.number("model.lambda2")};
  } else {
    parse_error(fmt::format("line {}: model.kind must be 'lorentzian' or 'bandgap', got '{}'",
                            r.line("model.kind"), kind));
  }

  const std::string family = r.text("initial.family");
  if (family == "phi")
    cfg.initial.family = BellFamily::Phi;
  else if (family == "psi")
    cfg.initial.family = BellFamily::Psi;
  else
    parse_error(fmt::format("line {}: initial.family must be 'phi' or 'psi', got '{}'",
                            r.line("initial.family"), family));
  cfg.initial.alpha = r.number("initial.alpha");
  cfg.initial.delta = r.number_or("initial.delta", 0.0);

  cfg.grid.t_max = r.number("grid.t_max");
  cfg.grid.n = r.count("grid.n");

  cfg.oracle.enabled = r.flag_or("oracle.enabled", false);
  cfg.oracle.step = r.number_or("oracle.step", 1e-3);

  cfg.output.path = r.text_or("output.path", "run");
  cfg.output.format = r.text_or("output.format", "csv");

  r.reject_unused(kind);
  check_run_config(cfg, r);
  return cfg;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_error(fmt::format("cannot read config file '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> parse_values(const Entry& e) {
  std::vector<double> out;
  std::string_view rest = e.value;
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    if (item.empty())
      parse_error(fmt::format("line {}: sweep.values has an empty entry", e.line));
    out.push_back(Reader::to_number("sweep.values", Entry{std::string(item), e.line}));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

}  // namespace

RunConfig parse_run_config(std::string_view text) { return build_run_config(tokenize(text)); }

SweepConfig parse_sweep_config(std::string_view text) {
  Table table = tokenize(text);
  auto key_it = table.find("sweep.key");
  auto values_it = table.find("sweep.values");
  if (key_it == table.end()) parse_error("missing required key 'sweep.key'");
  if (values_it == table.end()) parse_error("missing required key 'sweep.values'");

  SweepConfig out;
  out.axis.key = key_it->second.value;
  out.axis.values = parse_values(values_it->second);
  const int key_line = key_it->second.line;
  table.erase(key_it);
  table.erase(values_it);

  // The swept key may be omitted from the base scenario.
  if (!table.count(out.axis.key))
    table.emplace(out.axis.key, Entry{format_number(out.axis.values.front()), key_line});
  out.base = build_run_config(table);

  // Reject axis keys that set_numeric cannot vary before any point runs.
  RunConfig probe = out.base;
  try {
    set_numeric(probe, out.axis.key, out.axis.values.front());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError)
      parse_error(fmt::format("line {}: {}", key_line, e.what()));
    throw;
  }
  return out;
}

RunConfig load_run_config(const std::string& path) { return parse_run_config(read_file(path)); }

SweepConfig load_sweep_config(const std::string& path) {
  return parse_sweep_config(read_file(path));
}

std::string to_text(const RunConfig& cfg) {
  std::string out;
  auto put = [&](std::string_view key, const std::string& value) {
    out += fmt::format("{} = {}\n", key, value);
  };
  if (const auto* l = std::get_if<DetunedLorentzian>(&cfg.model)) {
    put("model.kind", "lorentzian");
    put("model.gamma", format_number(l->gamma));
    put("model.lambda", format_number(l->lambda));
    put("model.delta", format_number(l->delta));
  } else {
    const auto& b = std::get<BandGapDip>(cfg.model);
    put("model.kind", "bandgap");
    put("model.gamma1", format_number(b.gamma1));
    put("model.gamma2", format_number(b.gamma2));
    put("model.lambda1", format_number(b.lambda1));
    put("model.lambda2", format_number(b.lambda2));
  }
  put("initial.family", cfg.initial.family == BellFamily::Phi ? "phi" : "psi");
  put("initial.alpha", format_number(cfg.initial.alpha));
  put("initial.delta", format_number(cfg.initial.delta));
  put("grid.t_max", format_number(cfg.grid.t_max));
  put("grid.n", std::to_string(cfg.grid.n));
  put("oracle.enabled", cfg.oracle.enabled ? "true" : "false");
  put("oracle.step", format_number(cfg.oracle.step));
  put("output.path", cfg.output.path);
  put("output.format", cfg.output.format);
  return out;
}

void set_numeric(RunConfig& cfg, std::string_view key, double value) {
  auto* l = std::get_if<DetunedLorentzian>(&cfg.model);
  auto* b = std::get_if<BandGapDip>(&cfg.model);
  if (l && key == "model.gamma") l->gamma = value;
  else if (l && key == "model.lambda") l->lambda = value;
  else if (l && key == "model.delta") l->delta = value;
  else if (b && key == "model.gamma1") b->gamma1 = value;
  else if (b && key == "model.gamma2") b->gamma2 = value;
  else if (b && key == "model.lambda1") b->lambda1 = value;
  else if (b && key == "model.lambda2") b->lambda2 = value;
  else if (key == "initial.alpha") cfg.initial.alpha = value;
  else if (key == "initial.delta") cfg.initial.delta = value;
  else if (key == "grid.t_max") cfg.grid.t_max = value;
  else if (key == "oracle.step") cfg.oracle.step = value;
  else parse_error(fmt::format("'{}' is not a numeric key of this scenario", key));

  if (!(cfg.grid.t_max > 0.0)) parse_error("grid.t_max must be > 0");
  if (!(cfg.initial.alpha >= 0.0 && cfg.initial.alpha <= 1.0))
    parse_error("initial.alpha must lie in [0, 1]");
  validate(cfg.model);
}

std::vector<std::string> preset_names() {
  return {"fig1-d0", "fig1-d2", "fig1-d5", "fig1-d8",
          "fig2-g1", "fig2-g23", "fig2-g13", "fig2-g0"};
}

RunConfig preset(std::string_view name) {
  RunConfig cfg;
  cfg.output.path = std::string(name);

  constexpr double lambda = 0.1;
  const std::pair<std::string_view, double> fig1[] = {
      {"fig1-d0", 0.0}, {"fig1-d2", 2.0}, {"fig1-d5", 5.0}, {"fig1-d8", 8.0}};
  for (const auto& [id, multiple] : fig1) {
    if (name != id) continue;
    cfg.model = DetunedLorentzian{1.0, lambda, multiple * lambda};
    cfg.initial = {BellFamily::Psi, 1.0 / std::sqrt(3.0), 0.0};
    cfg.grid = {15.0, 1501};
    return cfg;
  }

  const std::pair<std::string_view, double> fig2[] = {
      {"fig2-g1", 1.0}, {"fig2-g23", 2.0 / 3.0}, {"fig2-g13", 1.0 / 3.0}, {"fig2-g0", 0.0}};
  for (const auto& [id, gamma2] : fig2) {
    if (name != id) continue;
    cfg.model = BandGapDip{1.0, gamma2, 50.0, 5.0};
    cfg.initial = {BellFamily::Phi, 1.0 / std::sqrt(2.0), 0.0};
    cfg.grid = {50.0, 5001};
    return cfg;
  }

  std::string known;
  for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
  throw Error(ErrorCode::UnknownPreset,
              fmt::format("unknown preset '{}' (known: {})", name, known));
}

}  // namespace entdyn::app
