// depbound command-line tool: JSON/CSV reports over the library's bounds,
// divergences, oracles, and baselines. Every run is pure given (config, seed)
// and echoes its fully resolved configuration in a manifest.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "depbound/baselines.hpp"
#include "depbound/engine.hpp"
#include "depbound/harness.hpp"
#include "depbound/scenarios.hpp"
#include "depbound/tensorize.hpp"

namespace {

using nlohmann::json;
using namespace depbound;

constexpr double kLn2 = std::numbers::ln2;

// ---------------------------------------------------------------------------
// Formatting: 17 significant digits for every real value so reports are
// byte-stable and round-trip exactly; non-finite values become string tokens
// (JSON has no inf/nan literals).

std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  if (v == kPosInf) return "inf";
  if (v == kNegInf) return "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt4(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

json jnum(double v) {
  if (!std::isfinite(v)) return json(fmt17(v));
  return json(v);
}

// Deterministic serializer: keys arrive sorted (json uses an ordered map),
// floats go through fmt17.
void dump_rec(const json& j, std::string& out, int depth, bool pretty) {
  auto pad = [&](int d) {
    if (pretty) out.append(static_cast<std::size_t>(d) * 2, ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      if (pretty) out += '\n';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ',';
          if (pretty) out += '\n';
        }
        first = false;
        pad(depth + 1);
        out += json(it.key()).dump();
        out += pretty ? ": " : ":";
        dump_rec(it.value(), out, depth + 1, pretty);
      }
      if (pretty) {
        out += '\n';
        pad(depth);
      }
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      if (pretty) out += '\n';
      bool first = true;
      for (const auto& e : j) {
        if (!first) {
          out += ',';
          if (pretty) out += '\n';
        }
        first = false;
        pad(depth + 1);
        dump_rec(e, out, depth + 1, pretty);
      }
      if (pretty) {
        out += '\n';
        pad(depth);
      }
      out += ']';
      return;
    }
    case json::value_t::string:
      out += j.dump();
      return;
    case json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      return;
    case json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      return;
    case json::value_t::number_float:
      out += fmt17(j.get<double>());
      return;
    default:
      out += "null";
      return;
  }
}

std::string dump_doc(const json& j) {
  std::string s;
  dump_rec(j, s, 0, true);
  s += '\n';
  return s;
}

std::string dump_line(const json& j) {
  std::string s;
  dump_rec(j, s, 0, false);
  s += '\n';
  return s;
}

// ---------------------------------------------------------------------------
// Small parsers.

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) fail(Err::InvalidConfig, "bad " + what + " '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    fail(Err::InvalidConfig, "bad " + what + " '" + s + "'");
  }
}

double parse_alpha(const std::string& s) {
  std::string t = lower(s);
  if (t == "inf" || t == "infinity" || t == "+inf") return kPosInf;
  return parse_double(s, "alpha");
}

// t accepts plain numbers and the token sqrt_n (resolved against --n).
double resolve_t(const std::string& s, std::size_t n) {
  if (s == "sqrt_n") return std::sqrt(static_cast<double>(n));
  return parse_double(s, "t");
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size()) fail(Err::InvalidConfig, "bad " + what + " '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    fail(Err::InvalidConfig, "bad " + what + " '" + s + "'");
  }
}

std::vector<std::int64_t> parse_state_list(const std::string& s) {
  std::vector<std::int64_t> out;
  for (const auto& tok : split(s, ',')) {
    try {
      std::size_t pos = 0;
      long long v = std::stoll(tok, &pos);
      if (pos != tok.size()) fail(Err::InvalidConfig, "bad state label '" + tok + "'");
      out.push_back(v);
    } catch (const std::logic_error&) {
      fail(Err::InvalidConfig, "bad state label '" + tok + "'");
    }
  }
  return out;
}

// Comma-separated probabilities (decimals or a/b rationals) to a Dist; exact
// inputs keep their rational form.
Dist dist_on_states(const std::string& probs_s, std::vector<std::int64_t> states,
                    const std::string& what) {
  auto toks = split(probs_s, ',');
  if (probs_s.empty()) fail(Err::InvalidConfig, what + " must be a probability list");
  std::vector<ParsedProb> pp;
  pp.reserve(toks.size());
  for (const auto& t : toks) pp.push_back(parse_prob(t));
  if (states.empty())
    for (std::size_t i = 0; i < pp.size(); ++i) states.push_back(static_cast<std::int64_t>(i));
  if (states.size() != pp.size())
    fail(Err::InvalidConfig, "state list and " + what + " disagree in length");
  bool exact = true;
  for (const auto& p : pp) exact = exact && p.exact.has_value();
  if (exact) {
    std::vector<Rational> r;
    r.reserve(pp.size());
    for (const auto& p : pp) r.push_back(*p.exact);
    return Dist::from_rational(std::move(states), r);
  }
  std::vector<double> v;
  v.reserve(pp.size());
  for (const auto& p : pp) v.push_back(p.value);
  return Dist::from_linear(std::move(states), v);
}

Dist dist_from_cli(const std::string& probs_s, const std::string& states_s,
                   const std::string& what) {
  std::vector<std::int64_t> states;
  if (!states_s.empty()) states = parse_state_list(states_s);
  return dist_on_states(probs_s, std::move(states), what);
}

ProcessSpec make_process(const std::string& scenario, double lambda) {
  if (scenario == "binary") return binary_chain(lambda);
  if (scenario == "ssrw") return ProcessSpec::ssrw();
  if (scenario == "nonmarkov") return ProcessSpec::nonmarkov_binary();
  if (scenario == "independent") return ProcessSpec::independent({Dist::uniform({-1, 1})});
  fail(Err::InvalidConfig,
       "unknown scenario '" + scenario + "' (binary, ssrw, nonmarkov, independent)");
}

// ---------------------------------------------------------------------------
// Report emission.

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(Err::IoError, "cannot open '" + path + "' for writing");
  f << text;
  f.flush();
  if (!f) fail(Err::IoError, "write to '" + path + "' failed");
}

void emit_json_report(const json& manifest, const json& results, const std::string& out) {
  json doc;
  doc["manifest"] = manifest;
  doc["results"] = results;
  std::string text = dump_doc(doc);
  if (out.empty())
    std::fputs(text.c_str(), stdout);
  else
    write_text_file(out, text);
}

// CSV stays a pure table; the manifest rides on stderr (stdout runs) or in a
// .manifest.json sidecar (file runs).
void emit_csv_report(const std::string& header, const std::vector<std::string>& rows,
                     const json& manifest, const std::string& out) {
  std::string text = header + "\n";
  for (const auto& r : rows) {
    text += r;
    text += '\n';
  }
  if (out.empty()) {
    std::fputs(text.c_str(), stdout);
    std::fputs(dump_line(manifest).c_str(), stderr);
  } else {
    write_text_file(out, text);
    write_text_file(out + ".manifest.json", dump_doc(manifest));
  }
}

json report_json(const BoundReport& r) {
  json j;
  j["method"] = r.method;
  j["n"] = static_cast<std::uint64_t>(r.n);
  j["t"] = jnum(r.t);
  j["alpha"] = jnum(r.alpha);
  j["beta"] = jnum(r.beta);
  j["sum_c_sq"] = jnum(r.sum_c_sq);
  j["log_mult"] = jnum(r.log_mult);
  j["log_bound"] = jnum(r.log_bound);
  j["log2_bound"] = jnum(r.log_bound / kLn2);
  j["threshold"] = jnum(r.threshold);
  j["trivial"] = r.trivial;
  j["centering"] = r.centering;
  j["notes"] = r.notes;
  return j;
}

int exit_code_for(Err e) {
  switch (e) {
    case Err::InvalidConfig:
    case Err::InvalidDistribution:
    case Err::InvalidPrefix:
    case Err::DomainMismatch:
    case Err::ScheduleInvalid:
      return 2;
    default:
      return 3;
  }
}

void print_error(const std::string& code, const std::string& message) {
  json e;
  e["error"] = json{{"code", code}, {"message", message}};
  std::fputs(dump_line(e).c_str(), stderr);
}

// ---------------------------------------------------------------------------
// Config file merge: a JSON object whose keys are the long option names of
// the invoked command; explicit flags override file values; unknown keys are
// rejected. The merge happens before argument parsing by injecting tokens.

const std::set<std::string>& command_names() {
  static const std::set<std::string> k = {"divergence", "kernel", "tensor",  "bound",
                                          "compare",    "simulate", "oracle", "mcmc"};
  return k;
}

const std::map<std::string, std::set<std::string>>& config_keys() {
  static const std::map<std::string, std::set<std::string>> k = {
      {"divergence", {"kind", "alpha", "nu", "mu", "states"}},
      {"kernel", {"lambda", "stay", "csv", "rows", "states", "alpha", "apply"}},
      {"tensor", {"scenario", "lambda", "n", "alpha", "schedule", "which"}},
      {"bound", {"scenario", "lambda", "n", "t", "alpha", "beta", "route", "centering"}},
      {"compare",
       {"scenario", "pair", "lambda", "n", "alpha", "t-min", "t-max", "t-count", "side"}},
      {"simulate",
       {"scenario", "lambda", "n", "t", "t-min", "t-max", "t-count", "alpha", "functional",
        "center", "explicit-center", "samples"}},
      {"oracle",
       {"scenario", "lambda", "n", "kind", "t", "alpha", "functional", "center",
        "explicit-center"}},
      {"mcmc",
       {"lambda", "csv", "start", "n0", "n", "t", "alpha", "range-min", "range-max", "target"}},
  };
  return k;
}

std::string config_token(const json& v, const std::string& key) {
  switch (v.type()) {
    case json::value_t::string:
      return v.get<std::string>();
    case json::value_t::number_integer:
      return std::to_string(v.get<std::int64_t>());
    case json::value_t::number_unsigned:
      return std::to_string(v.get<std::uint64_t>());
    case json::value_t::number_float:
      return fmt17(v.get<double>());
    case json::value_t::array: {
      std::string out;
      bool first = true;
      for (const auto& e : v) {
        if (!first) out += ',';
        first = false;
        if (e.is_string())
          out += e.get<std::string>();
        else if (e.is_number_integer())
          out += std::to_string(e.get<std::int64_t>());
        else if (e.is_number_unsigned())
          out += std::to_string(e.get<std::uint64_t>());
        else if (e.is_number_float())
          out += fmt17(e.get<double>());
        else
          fail(Err::InvalidConfig, "config key '" + key + "' has an unsupported array element");
      }
      return out;
    }
    default:
      fail(Err::InvalidConfig, "config key '" + key + "' has an unsupported value type");
  }
}

std::vector<std::string> merge_config(std::vector<std::string> raw) {
  if (raw.empty()) return raw;
  const std::string cmd = raw.front();
  if (cmd.empty() || cmd[0] == '-') return raw;  // --help and friends
  if (!command_names().count(cmd)) fail(Err::InvalidConfig, "unknown command '" + cmd + "'");
  std::string cfg_path;
  for (std::size_t i = 1; i < raw.size(); ++i) {
    if (raw[i] == "--config" && i + 1 < raw.size())
      cfg_path = raw[i + 1];
    else if (raw[i].rfind("--config=", 0) == 0)
      cfg_path = raw[i].substr(9);
  }
  if (cfg_path.empty()) return raw;
  std::ifstream f(cfg_path);
  if (!f) fail(Err::InvalidConfig, "cannot read config file '" + cfg_path + "'");
  json cfg;
  try {
    cfg = json::parse(f);
  } catch (const json::parse_error& e) {
    fail(Err::InvalidConfig, std::string("config file is not valid JSON: ") + e.what());
  }
  if (!cfg.is_object()) fail(Err::InvalidConfig, "config file must hold a JSON object");
  const auto& allowed = config_keys().at(cmd);
  auto given_on_cli = [&](const std::string& key) {
    std::string flag = "--" + key;
    for (std::size_t i = 1; i < raw.size(); ++i)
      if (raw[i] == flag || raw[i].rfind(flag + "=", 0) == 0) return true;
    return false;
  };
  std::vector<std::string> injected;
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    const std::string& key = it.key();
    if (key == "command") {
      if (!it.value().is_string() || it.value().get<std::string>() != cmd)
        fail(Err::InvalidConfig, "config key 'command' does not match the invoked command");
      continue;
    }
    bool common = key == "out" || key == "format" || key == "seed";
    if (!common && !allowed.count(key)) fail(Err::InvalidConfig, "unknown config key '" + key + "'");
    if (given_on_cli(key)) continue;
    injected.push_back("--" + key);
    injected.push_back(config_token(it.value(), key));
  }
  std::vector<std::string> out;
  out.reserve(raw.size() + injected.size());
  out.push_back(cmd);
  out.insert(out.end(), injected.begin(), injected.end());
  out.insert(out.end(), raw.begin() + 1, raw.end());
  return out;
}

// ---------------------------------------------------------------------------
// Common run plumbing.

struct CommonOpts {
  std::string config;
  std::string out;
  std::string format;
  std::string seed;
};

std::uint64_t resolve_seed(const std::string& flag) {
  std::uint64_t seed = flag.empty() ? kDefaultSeed : parse_u64(flag, "seed");
  if (const char* env = std::getenv("DEPBOUND_SEED")) seed = parse_u64(env, "DEPBOUND_SEED");
  return seed;
}

std::string resolve_format(const std::string& flag, const std::string& cmd) {
  bool tabular = cmd == "compare" || cmd == "simulate";
  std::string fmt = flag.empty() ? (tabular ? std::string("csv") : std::string("json")) : flag;
  if (fmt != "json" && fmt != "csv") fail(Err::InvalidConfig, "format must be json or csv");
  if (fmt == "csv" && !tabular)
    fail(Err::InvalidConfig, "csv output exists for compare and simulate only");
  return fmt;
}

json base_manifest(const std::string& cmd, const std::string& fmt, const CommonOpts& c,
                   std::uint64_t seed) {
  json m;
  m["command"] = cmd;
  m["format"] = fmt;
  m["out"] = c.out.empty() ? "-" : c.out;
  m["seed"] = seed;
  return m;
}

// ---------------------------------------------------------------------------
// divergence

struct DivergenceOpts {
  std::string kind = "hellinger";
  std::string alpha = "2";
  std::string nu;
  std::string mu;
  std::string states;
};

void run_divergence(const DivergenceOpts& o, const CommonOpts& c) {
  std::string fmt = resolve_format(c.format, "divergence");
  std::uint64_t seed = resolve_seed(c.seed);
  Dist nu = dist_from_cli(o.nu, o.states, "nu");
  Dist mu = dist_from_cli(o.mu, o.states, "mu");
  json man = base_manifest("divergence", fmt, c, seed);
  man["kind"] = o.kind;
  man["nu"] = o.nu;
  man["mu"] = o.mu;
  man["states"] = o.states.empty() ? "auto" : o.states;
  man["alpha"] = o.alpha;
  json res;
  if (o.kind == "hellinger") {
    double alpha = parse_alpha(o.alpha);
    if (alpha == kPosInf) fail(Err::InvalidConfig, "the Hellinger integral needs finite alpha > 1");
    LogValue h = hellinger_integral(nu, mu, alpha);
    std::optional<Rational> exact;
    if (alpha > 1.0 && alpha <= 40.0 && alpha == std::floor(alpha))
      exact = hellinger_integral_exact(nu, mu, static_cast<int>(alpha));
    res["alpha"] = jnum(alpha);
    res["H_alpha"] = exact ? exact->str() + " ≈ " + fmt4(exact->value())
                           : "≈ " + fmt4(h.linear());
    res["log_H"] = jnum(h.log);
    res["log2_H"] = jnum(h.log / kLn2);
  } else if (o.kind == "renyi") {
    double alpha = parse_alpha(o.alpha);
    double d = renyi_divergence(nu, mu, alpha);
    res["alpha"] = jnum(alpha);
    res["D_alpha"] = jnum(d);
    res["D_alpha_bits"] = jnum(d / kLn2);
  } else if (o.kind == "kl") {
    double d = phi_divergence(DivergenceKind::Kl, nu, mu);
    res["KL"] = jnum(d);
    res["KL_bits"] = jnum(d / kLn2);
  } else if (o.kind == "tv") {
    res["TV"] = jnum(total_variation(nu, mu));
  } else if (o.kind == "chi2") {
    res["chi_sq"] = jnum(phi_divergence(DivergenceKind::ChiSq, nu, mu));
  } else {
    fail(Err::InvalidConfig,
         "unknown divergence kind '" + o.kind + "' (hellinger, renyi, kl, tv, chi2)");
  }
  emit_json_report(man, res, c.out);
}

// ---------------------------------------------------------------------------
// kernel

struct KernelOpts {
  std::string lambda;
  std::string stay;
  std::string csv;
  std::string rows;
  std::string states;
  std::string alpha;
  std::string apply;
};

Kernel kernel_from_cli_rows(const KernelOpts& o) {
  auto row_specs = split(o.rows, ';');
  std::vector<std::vector<ParsedProb>> pp;
  bool exact = true;
  for (const auto& r : row_specs) {
    std::vector<ParsedProb> row;
    for (const auto& tok : split(r, ',')) {
      row.push_back(parse_prob(tok));
      exact = exact && row.back().exact.has_value();
    }
    pp.push_back(std::move(row));
  }
  std::vector<std::int64_t> states;
  if (o.states.empty())
    for (std::size_t i = 0; i < pp.size(); ++i) states.push_back(static_cast<std::int64_t>(i));
  else
    states = parse_state_list(o.states);
  if (exact) {
    std::vector<std::vector<Rational>> rows;
    for (const auto& r : pp) {
      std::vector<Rational> row;
      for (const auto& p : r) row.push_back(*p.exact);
      rows.push_back(std::move(row));
    }
    return Kernel::from_rational(std::move(states), rows);
  }
  std::vector<std::vector<double>> rows;
  for (const auto& r : pp) {
    std::vector<double> row;
    for (const auto& p : r) row.push_back(p.value);
    rows.push_back(std::move(row));
  }
  return Kernel::from_linear(std::move(states), rows);
}

Kernel kernel_from_cli(const KernelOpts& o) {
  int sources = static_cast<int>(!o.lambda.empty()) + static_cast<int>(!o.stay.empty()) +
                static_cast<int>(!o.csv.empty()) + static_cast<int>(!o.rows.empty());
  if (sources != 1)
    fail(Err::InvalidConfig, "give exactly one kernel source: --lambda, --stay, --csv, or --rows");
  if (!o.lambda.empty()) return Kernel::binary_flip(parse_prob(o.lambda));
  if (!o.stay.empty()) return Kernel::binary_stay(parse_prob(o.stay));
  if (!o.csv.empty()) return kernel_from_csv_file(o.csv);
  return kernel_from_cli_rows(o);
}

void run_kernel(const KernelOpts& o, const CommonOpts& c) {
  std::string fmt = resolve_format(c.format, "kernel");
  std::uint64_t seed = resolve_seed(c.seed);
  Kernel k = kernel_from_cli(o);
  KernelAnalysis a = spectral(k);
  json man = base_manifest("kernel", fmt, c, seed);
  man["lambda"] = o.lambda;
  man["stay"] = o.stay;
  man["csv"] = o.csv;
  man["rows"] = o.rows;
  man["states"] = o.states;
  man["alpha"] = o.alpha;
  man["apply"] = o.apply;
  json res;
  res["states"] = k.states();
  json matrix = json::array();
  for (std::size_t x = 0; x < k.size(); ++x) {
    json row = json::array();
    for (std::size_t y = 0; y < k.size(); ++y) row.push_back(jnum(k.entry(x, y)));
    matrix.push_back(row);
  }
  res["matrix"] = matrix;
  json stat = json::array();
  for (std::size_t i = 0; i < a.stationary.size(); ++i) stat.push_back(jnum(a.stationary.prob(i)));
  res["stationary"] = stat;
  res["reversible"] = a.reversible;
  res["second_eigenvalue"] = a.second_eigenvalue ? jnum(*a.second_eigenvalue) : json(nullptr);
  res["absolute_gap"] = jnum(a.absolute_gap);
  res["gap_is_singular_value_bound"] = a.gap_is_singular_value_bound;
  res["eta_tv"] = jnum(a.eta_tv);
  json spec = json::array();
  for (double ev : a.spectrum) spec.push_back(jnum(ev));
  res["spectrum"] = spec;
  auto flip = k.dsbs_flip();
  res["dsbs_flip"] = flip ? jnum(*flip) : json(nullptr);
  if (!o.alpha.empty()) {
    if (!flip)
      fail(Err::InvalidConfig, "--alpha (hypercontractivity report) needs a binary symmetric kernel");
    double alpha = parse_alpha(o.alpha);
    res["gamma_star"] = jnum(dsbs_gamma_star(*flip, alpha));
    res["sdpi_ceiling"] = jnum(dsbs_renyi_sdpi_rhs(*flip, alpha));
  }
  if (!o.apply.empty()) {
    Dist nu = dist_on_states(o.apply, k.states(), "apply");
    Dist pushed = apply_kernel(nu, k);
    json ap;
    json probs = json::array();
    for (std::size_t i = 0; i < pushed.size(); ++i) probs.push_back(jnum(pushed.prob(i)));
    ap["probs"] = probs;
    if (pushed.has_exact()) {
      json ex = json::array();
      for (const auto& r : pushed.exact()) ex.push_back(r.str());
      ap["exact"] = ex;
    }
    res["applied"] = ap;
  }
  emit_json_report(man, res, c.out);
}

// ---------------------------------------------------------------------------
// tensor

struct TensorOpts {
  std::string scenario = "binary";
  std::string lambda = "0.25";
  std::size_t n = 8;
  std::string alpha = "2";
  std::string schedule = "all-one";
  std::string which = "both";
};

Schedule parse_schedule(const std::string& s) {
  if (s == "all-one") return Schedule::all_one();
  if (s == "geometric") return Schedule::geometric();
  std::vector<double> a;
  for (const auto& tok : split(s, ',')) a.push_back(parse_double(tok, "schedule entry"));
  return Schedule::custom(std::move(a));
}

void run_tensor(const TensorOpts& o, const CommonOpts& c) {
  std::string fmt = resolve_format(c.format, "tensor");
  std::uint64_t seed = resolve_seed(c.seed);
  if (o.which != "upper" && o.which != "lower" && o.which != "both")
    fail(Err::InvalidConfig, "--which must be upper, lower, or both");
  double lam = parse_prob(o.lambda).value;
  ProcessSpec proc = make_process(o.scenario, lam);
  double alpha = parse_alpha(o.alpha);
  json man = base_manifest("tensor", fmt, c, seed);
  man["scenario"] = o.scenario;
  man["lambda"] = o.lambda;
  man["n"] = static_cast<std::uint64_t>(o.n);
  man["alpha"] = o.alpha;
  man["schedule"] = o.schedule;
  man["which"] = o.which;
  json res;
  res["scenario"] = o.scenario;
  res["n"] = static_cast<std::uint64_t>(o.n);
  res["alpha"] = jnum(alpha);
  json notes = json::array();
  if (alpha == kPosInf) {
    if (!proc.markov())
      fail(Err::InvalidConfig, "alpha = inf tensorisation needs a Markov scenario");
    if (o.schedule != "all-one")
      fail(Err::InvalidConfig, "alpha = inf supports the all-one schedule only");
    if (o.which != "lower") res["upper_esssup_log"] = jnum(tensor_upper_markov_esssup_log(proc, o.n));
    try {
      res["exact_esssup_log"] = jnum(exact_joint_esssup_log(proc, o.n));
    } catch (const Error& e) {
      if (e.code() != Err::TooLarge) throw;
      notes.push_back("exact enumeration skipped: too many paths");
    }
  } else {
    Schedule sched = parse_schedule(o.schedule);
    if (o.which != "lower") {
      TensorResult up = proc.markov() ? tensor_upper_markov(proc, o.n, alpha, sched)
                                      : tensor_upper_general(proc, o.n, alpha);
      res["upper_log_H"] = jnum(up.log_value);
      res["upper_arg_states"] = up.arg_states;
      if (proc.markov()) res["upper_renyi"] = jnum(tensor_upper_markov_renyi(proc, o.n, alpha, sched));
    }
    if (o.which != "upper") {
      TensorResult lo = proc.markov() ? tensor_lower_markov(proc, o.n, alpha, sched)
                                      : tensor_lower_general(proc, o.n, alpha);
      res["lower_log_H"] = jnum(lo.log_value);
      res["lower_arg_states"] = lo.arg_states;
    }
    try {
      LogValue ex = exact_joint_hellinger(proc, o.n, alpha);
      res["exact_log_H"] = jnum(ex.log);
    } catch (const Error& e) {
      if (e.code() != Err::TooLarge) throw;
      notes.push_back("exact enumeration skipped: too many paths");
    }
  }
  res["notes"] = notes;
  emit_json_report(man, res, c.out);
}

// ---------------------------------------------------------------------------
// bound

struct BoundOpts {
  std::string scenario = "binary";
  std::string lambda = "0.25";
  std::size_t n = 100;
  std::string t;
  std::string alpha = "inf";
  std::string beta = "best";
  std::string route = "closed";
  std::string centering = "product-mean";
};

ChainRoute route_of(const std::string& s) {
  if (s == "tensor") return ChainRoute::Tensor;
  if (s == "hyper") return ChainRoute::Hyper;
  if (s == "sdpi") return ChainRoute::Sdpi;
  fail(Err::InvalidConfig, "unknown route '" + s + "' (closed, tensor, hyper, sdpi)");
}

void run_bound(const BoundOpts& o, const CommonOpts& c) {
  std::string fmt = resolve_format(c.format, "bound");
  std::uint64_t seed = resolve_seed(c.seed);
  double alpha = parse_alpha(o.alpha);
  double t = resolve_t(o.t, o.n);
  if (o.centering != "product-mean" && o.centering != "joint-mean")
    fail(Err::InvalidConfig, "--centering must be product-mean or joint-mean");
  if (o.centering == "joint-mean" && o.scenario != "ssrw")
    fail(Err::InvalidConfig, "joint-mean centering is wired for the ssrw scenario");
  BoundReport rep;
  if (o.scenario == "independent") {
    if (o.route != "closed") fail(Err::InvalidConfig, "routes apply to the binary scenario");
    BoundParams p;
    p.n = o.n;
    p.t = t;
    p.alpha = alpha;
    rep = mcdiarmid_dep_bound(p, 0.0);
  } else if (o.scenario == "binary") {
    double lam = parse_prob(o.lambda).value;
    if (o.route == "closed") {
      rep = binary_chain_bound(lam, o.n, t, alpha);
    } else {
      BoundParams p;
      p.n = o.n;
      p.t = t;
      p.alpha = alpha;
      rep = markov_chain_bound(binary_chain(lam), p, route_of(o.route));
    }
  } else if (o.scenario == "ssrw") {
    if (o.route != "closed") fail(Err::InvalidConfig, "routes apply to the binary scenario");
    rep = ssrw_bound(o.n, t, alpha,
                     o.centering == "joint-mean" ? Centering::JointMean : Centering::ProductMean);
  } else if (o.scenario == "nonmarkov") {
    if (o.route != "closed") fail(Err::InvalidConfig, "routes apply to the binary scenario");
    rep = o.beta == "best" ? nonmarkov_bound_best(o.n, t)
                           : nonmarkov_bound(o.n, t, parse_double(o.beta, "beta"));
  } else {
    fail(Err::InvalidConfig,
         "unknown scenario '" + o.scenario + "' (binary, ssrw, nonmarkov, independent)");
  }
  json man = base_manifest("bound", fmt, c, seed);
  man["scenario"] = o.scenario;
  man["lambda"] = o.lambda;
  man["n"] = static_cast<std::uint64_t>(o.n);
  man["t"] = jnum(t);
  man["t_input"] = o.t;
  man["alpha"] = o.alpha;
  man["beta"] = o.beta;
  man["route"] = o.route;
  man["centering"] = o.centering;
  emit_json_report(man, report_json(rep), c.out);
}

// ---------------------------------------------------------------------------
// compare

struct CompareOpts {
  std::string scenario = "binary";
  std::string pair;
  std::string lambda = "0.25";
  std::size_t n = 10000;
  std::string alpha = "inf";
  std::string tmin;
  std::string tmax;
  int tcount = 20;
  std::string side = "both";
};

void run_compare(const CompareOpts& o, const CommonOpts& c) {
  std::string fmt = resolve_format(c.format, "compare");
  std::uint64_t seed = resolve_seed(c.seed);
  if (o.scenario != "binary")
    fail(Err::InvalidConfig, "compare supports the binary scenario");
  if (o.side != "ours" && o.side != "base" && o.side != "both")
    fail(Err::InvalidConfig, "--side must be ours, base, or both");
  if (o.tcount < 0) fail(Err::InvalidConfig, "--t-count must be >= 0");
  std::string pair = o.pair;
  if (pair.rfind("ours-vs-", 0) == 0) pair = pair.substr(8);
  if (pair != "kontorovich" && pair != "fan" && pair != "marton")
    fail(Err::InvalidConfig,
         "unknown pair '" + o.pair + "' (ours-vs-kontorovich, ours-vs-fan, ours-vs-marton)");
  double lam = parse_prob(o.lambda).value;
  double alpha = parse_alpha(o.alpha);
  if (pair != "kontorovich" && alpha != kPosInf)
    fail(Err::InvalidConfig, "the fan and marton comparisons are evaluated at alpha = inf");
  CrossoverResult cr;
  if (pair == "kontorovich")
    cr = crossover_binary_kontorovich(lam, o.n, alpha);
  else if (pair == "fan")
    cr = crossover_binary_fan(lam, o.n);
  else
    cr = crossover_binary_marton(lam, o.n);
  double tmin = o.tmin.empty() ? 0.5 * cr.t_bar : resolve_t(o.tmin, o.n);
  double tmax = o.tmax.empty() ? 1.5 * cr.t_bar : resolve_t(o.tmax, o.n);
  if (!(tmax >= tmin)) fail(Err::InvalidConfig, "--t-max must be >= --t-min");
  std::vector<double> ts;
  for (int i = 0; i < o.tcount; ++i)
    ts.push_back(o.tcount == 1 ? tmin : tmin + i * (tmax - tmin) / (o.tcount - 1));
  double nn = static_cast<double>(o.n);
  double cn = (nn - 1.0) * std::log(2.0 * (1.0 - lam));
  struct Row {
    std::string method;
    double t = 0.0;
    double log_bound = 0.0;
    std::string centering;
  };
  auto ours_row = [&](double t) -> Row {
    if (pair == "marton") return {"median-closed", t, median_bound_general_log(o.n, t, cn), "median"};
    BoundReport r = binary_chain_bound(lam, o.n, t, alpha);
    return {r.method, t, r.log_bound, r.centering};
  };
  auto base_row = [&](double t) -> Row {
    BoundReport r;
    if (pair == "kontorovich")
      r = kontorovich_bound_homog(o.n, t, std::abs(1.0 - 2.0 * lam));
    else if (pair == "fan")
      r = fan_bound(o.n, t, 1.0 - 2.0 * lam);
    else
      r = marton_blowup_bound(o.n, t, 2.0 * lam, -kLn2);
    return {r.method, t, r.log_bound, r.centering};
  };
  std::vector<Row> rows;
  for (double t : ts) {
    if (o.side != "base") rows.push_back(ours_row(t));
    if (o.side != "ours") rows.push_back(base_row(t));
  }
  json cj;
  cj["pair"] = cr.pair;
  cj["t_bar"] = jnum(cr.t_bar);
  cj["t_bar_asymptotic"] = jnum(cr.t_bar_asymptotic);
  cj["check_t"] = jnum(cr.check_t);
  cj["log_ours_at_check"] = jnum(cr.log_ours_at_check);
  cj["log_base_at_check"] = jnum(cr.log_base_at_check);
  cj["verified"] = cr.verified;
  json man = base_manifest("compare", fmt, c, seed);
  man["scenario"] = o.scenario;
  man["pair"] = "ours-vs-" + pair;
  man["lambda"] = o.lambda;
  man["n"] = static_cast<std::uint64_t>(o.n);
  man["alpha"] = o.alpha;
  man["t-min"] = jnum(tmin);
  man["t-max"] = jnum(tmax);
  man["t-count"] = o.tcount;
  man["side"] = o.side;
  man["crossover"] = cj;
  if (fmt == "csv") {
    std::vector<std::string> lines;
    for (const auto& r : rows)
      lines.push_back(r.method + "," + std::to_string(o.n) + "," + fmt17(r.t) + "," +
                      fmt17(r.log_bound) + "," + r.centering);
    emit_csv_report("method,n,t,log_bound,centering", lines, man, c.out);
  } else {
    json jr = json::array();
    for (const auto& r : rows) {
      json x;
      x["method"] = r.method;
      x["n"] = static_cast<std::uint64_t>(o.n);
      x["t"] = jnum(r.t);
      x["log_bound"] = jnum(r.log_bound);
      x["centering"] = r.centering;
      jr.push_back(x);
    }
    json res;
    res["crossover"] = cj;
    res["rows"] = jr;
    emit_json_report(man, res, c.out);
  }
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateOpts {
  std::string scenario = "binary";
  std::string lambda = "0.25";
  std::size_t n = 100;
  std::string t;
  std::string tmin;
  std::string tmax;
  int tcount = 0;
  std::string alpha = "inf";
  std::string functional;
  std::string center = "product-mean";
  std::string explicit_center = "0";
  std::uint64_t samples = 10000;
};

Center center_of(const std::string& s) {
  if (s == "product-mean") return Center::ProductMean;
  if (s == "joint-mean") return Center::JointMean;
  if (s == "median") return Center::Median;
  if (s == "explicit") return Center::Explicit;
  fail(Err::InvalidConfig,
       "--center must be product-mean, joint-mean, median, or explicit");
}

std::vector<BoundReport> bounds_for(const std::string& scenario, double lam, std::size_t n,
                                    double t, double alpha, const PathFunctional& f,
                                    const std::string& center) {
  std::vector<BoundReport> reps;
  if (scenario == "binary") {
    if (f.name() != "match-fraction") reps.push_back(binary_chain_bound(lam, n, t, alpha));
    BoundParams p;
    p.n = n;
    p.t = t;
    p.alpha = alpha;
    p.c = f.certificate(n);
    ProcessSpec proc = binary_chain(lam);
    reps.push_back(markov_chain_bound(proc, p, ChainRoute::Tensor));
    reps.push_back(markov_chain_bound(proc, p, ChainRoute::Hyper));
    reps.push_back(markov_chain_bound(proc, p, ChainRoute::Sdpi));
  } else if (scenario == "ssrw") {
    reps.push_back(ssrw_bound(n, t, alpha,
                              center == "joint-mean" ? Centering::JointMean
                                                     : Centering::ProductMean));
  } else if (scenario == "nonmarkov") {
    reps.push_back(nonmarkov_bound_best(n, t));
  } else if (scenario == "independent") {
    BoundParams p;
    p.n = n;
    p.t = t;
    p.alpha = alpha;
    p.c = f.certificate(n);
    reps.push_back(mcdiarmid_dep_bound(p, 0.0));
  } else {
    fail(Err::InvalidConfig,
         "unknown scenario '" + scenario + "' (binary, ssrw, nonmarkov, independent)");
  }
  return reps;
}

void run_simulate(const SimulateOpts& o, const CommonOpts& c) {
  std::string fmt = resolve_format(c.format, "simulate");
  std::uint64_t seed = resolve_seed(c.seed);
  double lam = parse_prob(o.lambda).value;
  ProcessSpec proc = make_process(o.scenario, lam);
  std::string fname = o.functional.empty()
                          ? (o.scenario == "ssrw" ? std::string("endpoint")
                                                  : std::string("fraction-ones"))
                          : o.functional;
  PathFunctional f = PathFunctional::by_name(fname);
  if (fname == "match-fraction" && (o.scenario == "ssrw" || o.scenario == "nonmarkov"))
    fail(Err::InvalidConfig,
         "match-fraction breaks the 1/n certificate the " + o.scenario + " closed form assumes");
  double alpha = parse_alpha(o.alpha);
  Center center = center_of(o.center);
  double ec = parse_double(o.explicit_center, "explicit-center");
  std::vector<double> ts;
  if (!o.t.empty()) {
    ts.push_back(resolve_t(o.t, o.n));
  } else if (o.tcount > 0) {
    if (o.tmin.empty() || o.tmax.empty())
      fail(Err::InvalidConfig, "a t sweep needs --t-min and --t-max");
    double tmin = resolve_t(o.tmin, o.n);
    double tmax = resolve_t(o.tmax, o.n);
    if (!(tmax >= tmin)) fail(Err::InvalidConfig, "--t-max must be >= --t-min");
    for (int i = 0; i < o.tcount; ++i)
      ts.push_back(o.tcount == 1 ? tmin : tmin + i * (tmax - tmin) / (o.tcount - 1));
  } else {
    fail(Err::InvalidConfig, "give --t or a sweep (--t-min, --t-max, --t-count)");
  }
  json man = base_manifest("simulate", fmt, c, seed);
  man["scenario"] = o.scenario;
  man["lambda"] = o.lambda;
  man["n"] = static_cast<std::uint64_t>(o.n);
  man["alpha"] = o.alpha;
  man["functional"] = fname;
  man["center"] = o.center;
  man["explicit-center"] = jnum(ec);
  man["samples"] = o.samples;
  json jt = json::array();
  for (double t : ts) jt.push_back(jnum(t));
  man["t"] = jt;
  std::vector<std::string> lines;
  json jrows = json::array();
  json jests = json::array();
  for (double t : ts) {
    TailQuery q;
    q.proc = proc;
    q.n = o.n;
    q.f = f;
    q.center = center;
    q.explicit_center = ec;
    q.t = t;
    McEstimate est = empirical_tail(q, o.samples, seed);
    json je;
    je["t"] = jnum(t);
    je["point"] = jnum(est.point);
    je["ci_low"] = jnum(est.ci_low);
    je["ci_high"] = jnum(est.ci_high);
    je["hits"] = est.hits;
    je["samples"] = est.samples;
    je["seed"] = est.seed;
    je["center"] = jnum(est.center);
    je["rng"] = est.rng;
    jests.push_back(je);
    for (const BoundReport& rep : bounds_for(o.scenario, lam, o.n, t, alpha, f, o.center)) {
      bool dominated = std::log(est.ci_high) <= rep.log_bound;
      lines.push_back(o.scenario + "," + std::to_string(o.n) + "," + fmt17(t) + "," + rep.method +
                      "," + fmt17(rep.log_bound) + "," + fmt17(est.point) + "," +
                      fmt17(est.ci_high) + "," + (dominated ? "true" : "false"));
      json x;
      x["scenario"] = o.scenario;
      x["n"] = static_cast<std::uint64_t>(o.n);
      x["t"] = jnum(t);
      x["method"] = rep.method;
      x["log_bound"] = jnum(rep.log_bound);
      x["empirical"] = jnum(est.point);
      x["ci_high"] = jnum(est.ci_high);
      x["dominated"] = dominated;
      jrows.push_back(x);
    }
  }
  if (fmt == "csv") {
    emit_csv_report("scenario,n,t,method,log_bound,empirical,ci_high,dominated", lines, man,
                    c.out);
  } else {
    json res;
    res["estimates"] = jests;
    res["rows"] = jrows;
    emit_json_report(man, res, c.out);
  }
}

// ---------------------------------------------------------------------------
// oracle

struct OracleOpts {
  std::string scenario = "binary";
  std::string lambda = "0.25";
  std::size_t n = 8;
  std::string kind = "tail";
  std::string t = "0";
  std::string alpha = "2";
  std::string functional;
  std::string center = "product-mean";
  std::string explicit_center = "0";
};

void run_oracle(const OracleOpts& o, const CommonOpts& c) {
  std::string fmt = resolve_format(c.format, "oracle");
  std::uint64_t seed = resolve_seed(c.seed);
  double lam = parse_prob(o.lambda).value;
  ProcessSpec proc = make_process(o.scenario, lam);
  json man = base_manifest("oracle", fmt, c, seed);
  man["scenario"] = o.scenario;
  man["lambda"] = o.lambda;
  man["n"] = static_cast<std::uint64_t>(o.n);
  man["kind"] = o.kind;
  man["t"] = o.t;
  man["alpha"] = o.alpha;
  man["center"] = o.center;
  man["explicit-center"] = o.explicit_center;
  json res;
  if (o.kind == "tail") {
    std::string fname = o.functional.empty()
                            ? (o.scenario == "ssrw" ? std::string("endpoint")
                                                    : std::string("fraction-ones"))
                            : o.functional;
    man["functional"] = fname;
    TailQuery q;
    q.proc = proc;
    q.n = o.n;
    q.f = PathFunctional::by_name(fname);
    q.center = center_of(o.center);
    q.explicit_center = parse_double(o.explicit_center, "explicit-center");
    q.t = resolve_t(o.t, o.n);
    ExactTail et = exact_tail(q);
    res["t"] = jnum(q.t);
    res["functional"] = fname;
    res["prob"] = jnum(et.prob);
    res["log_prob"] = jnum(std::log(et.prob));
    res["joint_mean"] = jnum(et.joint_mean);
    res["product_mean"] = jnum(et.product_mean);
    res["median"] = jnum(et.median);
    res["center"] = jnum(et.center);
  } else if (o.kind == "hellinger") {
    man["functional"] = "";
    double alpha = parse_alpha(o.alpha);
    if (alpha == kPosInf)
      fail(Err::InvalidConfig, "use --kind esssup for the alpha = inf oracle");
    LogValue h = exact_joint_hellinger(proc, o.n, alpha);
    res["alpha"] = jnum(alpha);
    res["log_H"] = jnum(h.log);
    res["log2_H"] = jnum(h.log / kLn2);
  } else if (o.kind == "esssup") {
    man["functional"] = "";
    res["esssup_log"] = jnum(exact_joint_esssup_log(proc, o.n));
  } else {
    fail(Err::InvalidConfig, "unknown oracle kind '" + o.kind + "' (tail, hellinger, esssup)");
  }
  emit_json_report(man, res, c.out);
}

// ---------------------------------------------------------------------------
// mcmc

struct McmcOpts {
  std::string lambda = "0.25";
  std::string csv;
  std::string start = "stationary";
  std::size_t n0 = 10;
  std::size_t n = 1000;
  std::string t = "0.1";
  std::string alpha = "inf";
  double range_min = 0.0;
  double range_max = 1.0;
  std::string target;
};

void run_mcmc(const McmcOpts& o, const CommonOpts& c) {
  std::string fmt = resolve_format(c.format, "mcmc");
  std::uint64_t seed = resolve_seed(c.seed);
  Kernel k = o.csv.empty() ? Kernel::binary_flip(parse_prob(o.lambda))
                           : kernel_from_csv_file(o.csv);
  Dist nu;
  if (o.start == "stationary") {
    nu = stationary_dist(k);
  } else if (o.start.rfind("delta:", 0) == 0) {
    std::string tok = o.start.substr(6);
    try {
      std::size_t pos = 0;
      long long v = std::stoll(tok, &pos);
      if (pos != tok.size()) fail(Err::InvalidConfig, "bad start state '" + tok + "'");
      nu = Dist::delta(v, k.states());
    } catch (const std::logic_error&) {
      fail(Err::InvalidConfig, "bad start state '" + tok + "'");
    }
  } else {
    nu = dist_on_states(o.start, k.states(), "start");
  }
  double t = resolve_t(o.t, o.n);
  double alpha = parse_alpha(o.alpha);
  McmcReport mr = mcmc_bound(nu, k, o.n0, o.n, t, alpha, {o.range_min, o.range_max});
  json man = base_manifest("mcmc", fmt, c, seed);
  man["lambda"] = o.lambda;
  man["csv"] = o.csv;
  man["start"] = o.start;
  man["n0"] = static_cast<std::uint64_t>(o.n0);
  man["n"] = static_cast<std::uint64_t>(o.n);
  man["t"] = jnum(t);
  man["alpha"] = o.alpha;
  man["range-min"] = jnum(o.range_min);
  man["range-max"] = jnum(o.range_max);
  man["target"] = o.target;
  json res;
  res["ours"] = report_json(mr.ours);
  res["fan"] = report_json(mr.fan);
  res["log_c"] = jnum(mr.log_c);
  res["per_step_log"] = jnum(mr.per_step_log);
  res["lambda_r"] = jnum(mr.lambda_r);
  res["t_bar"] = jnum(mr.t_bar);
  if (!o.target.empty()) {
    double target = parse_double(o.target, "target");
    res["min_burnin"] = static_cast<std::uint64_t>(
        min_burnin(nu, k, o.n, t, alpha, target, {o.range_min, o.range_max}));
  }
  emit_json_report(man, res, c.out);
}

// ---------------------------------------------------------------------------
// Wiring.

struct Cli {
  CommonOpts common;
  DivergenceOpts divergence;
  KernelOpts kernel;
  TensorOpts tensor;
  BoundOpts bound;
  CompareOpts compare;
  SimulateOpts simulate;
  OracleOpts oracle;
  McmcOpts mcmc;
};

void add_common(CLI::App* sub, CommonOpts& c) {
  sub->add_option("--config", c.config,
                  "JSON config file; keys are the long option names, explicit flags win");
  sub->add_option("--out", c.out, "write the report here instead of stdout");
  sub->add_option("--format", c.format, "json|csv (csv: compare and simulate only)");
  sub->add_option("--seed", c.seed, "RNG seed; the DEPBOUND_SEED env var overrides it");
}

void setup(CLI::App& app, Cli& cli) {
  app.require_subcommand(0, 1);

  auto* d = app.add_subcommand(
      "divergence", "Hellinger integral / Renyi / KL / TV / chi-square between two laws");
  d->add_option("--kind", cli.divergence.kind, "hellinger|renyi|kl|tv|chi2");
  d->add_option("--alpha", cli.divergence.alpha, "order (> 1 or inf; rationals as decimals)");
  d->add_option("--nu", cli.divergence.nu, "first law, e.g. 1/3,2/3")->required();
  d->add_option("--mu", cli.divergence.mu, "reference law, e.g. 1/2,1/2")->required();
  d->add_option("--states", cli.divergence.states, "integer state labels (default 0,1,...)");
  add_common(d, cli.common);

  auto* k = app.add_subcommand(
      "kernel", "transition-kernel report: stationarity, spectrum, contraction, SDPI");
  k->add_option("--lambda", cli.kernel.lambda, "binary symmetric flip probability (a/b ok)");
  k->add_option("--stay", cli.kernel.stay, "binary symmetric stay probability (a/b ok)");
  k->add_option("--csv", cli.kernel.csv, "kernel CSV file (header of labels, then the matrix)");
  k->add_option("--rows", cli.kernel.rows, "inline rows, e.g. 3/4,1/4;1/4,3/4");
  k->add_option("--states", cli.kernel.states, "state labels for --rows (default 0,1,...)");
  k->add_option("--alpha", cli.kernel.alpha,
                "also report gamma_star and the SDPI ceiling at this order (binary symmetric)");
  k->add_option("--apply", cli.kernel.apply, "push this law through the kernel (a/b stays exact)");
  add_common(k, cli.common);

  auto* tz = app.add_subcommand(
      "tensor", "per-step tensorisation bounds vs the exact joint Hellinger integral");
  tz->add_option("--scenario", cli.tensor.scenario, "binary|ssrw|nonmarkov|independent");
  tz->add_option("--lambda", cli.tensor.lambda, "flip probability for the binary scenario");
  tz->add_option("--n", cli.tensor.n, "sequence length");
  tz->add_option("--alpha", cli.tensor.alpha, "order (> 1 or inf)");
  tz->add_option("--schedule", cli.tensor.schedule, "all-one|geometric|a2,a3,...,1");
  tz->add_option("--which", cli.tensor.which, "upper|lower|both");
  add_common(tz, cli.common);

  auto* b = app.add_subcommand(
      "bound",
      "deviation bound; methods: deviation, binary-closed, chain-tensor, chain-hyper, "
      "chain-sdpi, ssrw-closed, nonmarkov");
  b->add_option("--scenario", cli.bound.scenario, "binary|ssrw|nonmarkov|independent");
  b->add_option("--lambda", cli.bound.lambda, "flip probability for the binary scenario");
  b->add_option("--n", cli.bound.n, "sequence length");
  b->add_option("--t", cli.bound.t, "deviation level; accepts the token sqrt_n")->required();
  b->add_option("--alpha", cli.bound.alpha, "order (> 1 or inf)");
  b->add_option("--beta", cli.bound.beta, "nonmarkov conjugate order (>= 1) or 'best'");
  b->add_option("--route", cli.bound.route, "closed|tensor|hyper|sdpi (binary scenario)");
  b->add_option("--centering", cli.bound.centering, "product-mean|joint-mean (ssrw)");
  add_common(b, cli.common);

  auto* cp = app.add_subcommand(
      "compare", "our bound vs a baseline (kontorovich, fan, marton) with the crossover point");
  cp->add_option("--scenario", cli.compare.scenario, "binary");
  cp->add_option("--pair", cli.compare.pair,
                 "ours-vs-kontorovich|ours-vs-fan|ours-vs-marton")
      ->required();
  cp->add_option("--lambda", cli.compare.lambda, "flip probability");
  cp->add_option("--n", cli.compare.n, "sequence length");
  cp->add_option("--alpha", cli.compare.alpha, "order for the kontorovich pair");
  cp->add_option("--t-min", cli.compare.tmin, "sweep start (default 0.5 t_bar)");
  cp->add_option("--t-max", cli.compare.tmax, "sweep end (default 1.5 t_bar)");
  cp->add_option("--t-count", cli.compare.tcount, "sweep points (0 = header-only table)");
  cp->add_option("--side", cli.compare.side, "ours|base|both");
  add_common(cp, cli.common);

  auto* sm = app.add_subcommand(
      "simulate", "Monte Carlo tail estimates with exact CIs next to every bound");
  sm->add_option("--scenario", cli.simulate.scenario, "binary|ssrw|nonmarkov|independent");
  sm->add_option("--lambda", cli.simulate.lambda, "flip probability");
  sm->add_option("--n", cli.simulate.n, "sequence length");
  sm->add_option("--t", cli.simulate.t, "single deviation level (or use the sweep)");
  sm->add_option("--t-min", cli.simulate.tmin, "sweep start");
  sm->add_option("--t-max", cli.simulate.tmax, "sweep end");
  sm->add_option("--t-count", cli.simulate.tcount, "sweep points");
  sm->add_option("--alpha", cli.simulate.alpha, "order (> 1 or inf)");
  sm->add_option("--functional", cli.simulate.functional,
                 "fraction-ones|endpoint|match-fraction (default fits the scenario)");
  sm->add_option("--center", cli.simulate.center, "product-mean|joint-mean|median|explicit");
  sm->add_option("--explicit-center", cli.simulate.explicit_center, "center for --center explicit");
  sm->add_option("--samples", cli.simulate.samples, "Monte Carlo sample count (>= 1000)");
  add_common(sm, cli.common);

  auto* orc = app.add_subcommand(
      "oracle", "exact enumeration: tail probabilities, Hellinger integrals, ess-sup ratios");
  orc->add_option("--scenario", cli.oracle.scenario, "binary|ssrw|nonmarkov|independent");
  orc->add_option("--lambda", cli.oracle.lambda, "flip probability");
  orc->add_option("--n", cli.oracle.n, "sequence length (enumeration is capped)");
  orc->add_option("--kind", cli.oracle.kind, "tail|hellinger|esssup");
  orc->add_option("--t", cli.oracle.t, "deviation level for --kind tail");
  orc->add_option("--alpha", cli.oracle.alpha, "order for --kind hellinger");
  orc->add_option("--functional", cli.oracle.functional,
                  "fraction-ones|endpoint|match-fraction (default fits the scenario)");
  orc->add_option("--center", cli.oracle.center, "product-mean|joint-mean|median|explicit");
  orc->add_option("--explicit-center", cli.oracle.explicit_center, "center for --center explicit");
  add_common(orc, cli.common);

  auto* mc = app.add_subcommand(
      "mcmc", "time-average bounds after burn-in (methods mcmc-ours, mcmc-fan) and burn-in search");
  mc->add_option("--lambda", cli.mcmc.lambda, "binary symmetric flip probability");
  mc->add_option("--csv", cli.mcmc.csv, "kernel CSV file (overrides --lambda)");
  mc->add_option("--start", cli.mcmc.start, "stationary | delta:<state> | p1,p2,...");
  mc->add_option("--n0", cli.mcmc.n0, "burn-in steps");
  mc->add_option("--n", cli.mcmc.n, "averaging window length");
  mc->add_option("--t", cli.mcmc.t, "deviation level");
  mc->add_option("--alpha", cli.mcmc.alpha, "order (> 1 or inf)");
  mc->add_option("--range-min", cli.mcmc.range_min, "functional range lower end");
  mc->add_option("--range-max", cli.mcmc.range_max, "functional range upper end");
  mc->add_option("--target", cli.mcmc.target, "log-probability target: also search min burn-in");
  add_common(mc, cli.common);
}

void dispatch(const std::string& cmd, const Cli& cli) {
  if (cmd == "divergence") return run_divergence(cli.divergence, cli.common);
  if (cmd == "kernel") return run_kernel(cli.kernel, cli.common);
  if (cmd == "tensor") return run_tensor(cli.tensor, cli.common);
  if (cmd == "bound") return run_bound(cli.bound, cli.common);
  if (cmd == "compare") return run_compare(cli.compare, cli.common);
  if (cmd == "simulate") return run_simulate(cli.simulate, cli.common);
  if (cmd == "oracle") return run_oracle(cli.oracle, cli.common);
  if (cmd == "mcmc") return run_mcmc(cli.mcmc, cli.common);
  fail(Err::InvalidConfig, "unknown command '" + cmd + "'");
}

}  // namespace

int main(int argc, char** argv) {
  Cli cli;
  CLI::App app{
      "depbound: deviation bounds for dependent processes via change of measure\n"
      "scenarios: binary | ssrw | nonmarkov | independent\n"
      "bound methods: deviation, binary-closed, chain-tensor, chain-hyper, chain-sdpi,\n"
      "  ssrw-closed, nonmarkov, mcmc-ours, mcmc-fan, median-closed\n"
      "baselines: kontorovich, fan, marton\n"
      "functionals: fraction-ones, endpoint, match-fraction\n"
      "probabilities accept exact rationals (1/3); --config file.json merges under flags;\n"
      "DEPBOUND_SEED overrides --seed; exit codes: 0 ok, 2 invalid input, 3 computation error",
      "depbound"};
  setup(app, cli);
  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = merge_config(std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
    if (app.get_subcommands().empty()) {
      std::cout << app.help();
      return 0;
    }
    dispatch(app.get_subcommands().front()->get_name(), cli);
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") return app.exit(e);
    print_error("InvalidConfig", std::string("argument error: ") + e.what());
    return 2;
  } catch (const depbound::Error& e) {
    print_error(depbound::err_name(e.code()), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    print_error("Internal", e.what());
    return 3;
  }
}
