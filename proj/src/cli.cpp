#include "sextic/cli.hpp"

#include "sextic/asymptotics.hpp"
#include "sextic/identities.hpp"
#include "sextic/moments.hpp"
#include "sextic/numerics.hpp"
#include "sextic/orthopoly.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

namespace sextic::cli {

namespace {

std::string join_sizes(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

std::vector<std::size_t> parse_n_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("bad --n-list entry '" + item + "'");
    }
    out.push_back(std::stoul(item));
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i] <= out[i - 1]) throw std::invalid_argument("--n-list must be strictly increasing");
  }
  if (out.empty()) throw std::invalid_argument("--n-list is empty");
  return out;
}

struct Range {
  BigReal start;
  BigReal stop;
  std::size_t count = 1;
  BigReal at(std::size_t i) const {
    if (count == 1) return start;
    return start + (stop - start) * static_cast<unsigned long>(i) / static_cast<unsigned long>(count - 1);
  }
};

// "start:stop:count" or a single value; parsed at the current precision.
Range parse_range(const std::string& text, const std::string& fallback) {
  const std::string src = text.empty() ? fallback : text;
  std::vector<std::string> parts;
  std::stringstream ss(src);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  Range r;
  if (parts.size() == 1) {
    r.start = r.stop = parse_decimal(parts[0]);
    return r;
  }
  if (parts.size() != 3 || parts[2].empty() ||
      parts[2].find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("range must be start:stop:count, got '" + src + "'");
  }
  r.start = parse_decimal(parts[0]);
  r.stop = parse_decimal(parts[1]);
  r.count = std::stoul(parts[2]);
  if (r.count == 0) throw std::invalid_argument("range count must be positive");
  return r;
}

PrecisionContext context_for(const RunConfig& cfg, std::size_t max_index) {
  if (cfg.guard_digits) return PrecisionContext(cfg.target_digits, *cfg.guard_digits);
  return PrecisionContext::for_order(cfg.target_digits, max_index);
}

std::string fmt(const BigReal& x, const RunConfig& cfg) { return to_decimal(x, cfg.target_digits); }

std::string fmt_order(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.setf(std::ios::fixed);
  os.precision(4);
  os << v;
  return os.str();
}

Report cmd_moments(const RunConfig& cfg) {
  const std::size_t half = std::max<std::size_t>(2, (cfg.max_order + 1) / 2);
  const PrecisionContext ctx = context_for(cfg, 0);
  const Params params = Params::parse(cfg.t1, cfg.t2, ctx);
  const MomentTable table = build_moments(params, half, ctx);
  Report rep{cfg, {"j", "mu_j"}, {}, std::nullopt, {}};
  PrecisionScope scope(ctx);
  for (std::size_t j = 0; j <= cfg.max_order; ++j) {
    rep.rows.push_back({std::to_string(j), fmt(table[j], cfg)});
  }
  return rep;
}

Report cmd_recurrence(const RunConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("--n must be at least 1");
  const PrecisionContext ctx = context_for(cfg, cfg.n);
  const Params params = Params::parse(cfg.t1, cfg.t2, ctx);
  const RecurrenceTable t = build_recurrence(params, cfg.n, ctx);
  Report rep{cfg, {"n", "beta_n", "h_n", "p_n", "r_n", "R_n", "log_D_n"}, {}, std::nullopt, {}};
  PrecisionScope scope(ctx);
  for (std::size_t n = 0; n <= cfg.n; ++n) {
    rep.rows.push_back({std::to_string(n), fmt(t.beta(n), cfg), fmt(t.h(n), cfg), fmt(t.p(n), cfg),
                        fmt(t.small_r(n), cfg), fmt(t.big_r(n), cfg), fmt(log_hankel(t, n), cfg)});
  }
  return rep;
}

Report cmd_verify(const RunConfig& cfg) {
  if (cfg.n < 4) throw std::invalid_argument("verify needs --n >= 4");
  std::vector<std::string> checks;
  if (cfg.check == "all") {
    checks.assign(kCheckNames.begin(), kCheckNames.end());
  } else {
    bool known = false;
    for (const char* c : kCheckNames) known = known || cfg.check == c;
    if (!known) throw std::invalid_argument("unknown --check '" + cfg.check + "'");
    checks.push_back(cfg.check);
  }
  PrecisionContext ctx = context_for(cfg, cfg.n);
  // The t2 finite difference needs at least 60 working digits.
  const bool wants_dt2 = std::find(checks.begin(), checks.end(), "dt2") != checks.end();
  if (wants_dt2 && ctx.working_digits() < 60) ctx = ctx.with_extra_guard(60 - ctx.working_digits());

  const Params params = Params::parse(cfg.t1, cfg.t2, ctx);
  const RecurrenceTable table = build_recurrence(params, cfg.n, ctx);
  PrecisionScope scope(ctx);
  std::optional<BigReal> tol;
  if (cfg.tol) tol = parse_decimal(*cfg.tol);

  Report rep{cfg,
             {"check", "n_first", "n_last", "worst_n", "max_abs_residual", "max_rel_residual",
              "tolerance", "pass"},
             {},
             true,
             {}};
  std::string worst_name;
  BigReal worst_rel(-1);
  for (const auto& name : checks) {
    const ResidualReport r = run_check(name, table, tol);
    const BigReal used_tol = tol ? *tol : (name == "dt2" ? parse_decimal("1e-18") : default_tolerance(ctx));
    rep.rows.push_back({name, std::to_string(r.n_first), std::to_string(r.n_last),
                        std::to_string(r.worst_n), fmt(r.max_abs_residual, cfg),
                        fmt(r.max_rel_residual, cfg), fmt(used_tol, cfg), r.pass ? "true" : "false"});
    if (!r.pass) {
      rep.all_pass = false;
      if (r.max_rel_residual / used_tol > worst_rel) {
        worst_rel = r.max_rel_residual / used_tol;
        worst_name = name + " at n=" + std::to_string(r.worst_n) + " (relative residual " +
                     to_decimal(r.max_rel_residual, 6) + ")";
      }
    }
  }
  rep.summary_note = *rep.all_pass ? std::to_string(checks.size()) + " checks passed"
                                   : "worst offender: " + worst_name;
  return rep;
}

Report cmd_asympt(const RunConfig& cfg) {
  if (cfg.n_list.empty()) throw std::invalid_argument("asympt needs --n-list");
  const Quantity q = parse_quantity(cfg.quantity);
  const std::size_t N = cfg.n_list.back() + 2;
  const PrecisionContext ctx = context_for(cfg, N);
  const Params params = Params::parse(cfg.t1, cfg.t2, ctx);
  const RecurrenceTable table = build_recurrence(params, N, ctx);
  const AsymptoticModel model = AsymptoticModel::build(params, ctx);
  const DecayReport dr = error_decay_report(q, cfg.n_list, table, model);
  PrecisionScope scope(ctx);

  Report rep{cfg, {"n", "exact", "asym", "abs_error", "fitted_order", "regime_flag"}, {}, std::nullopt, {}};
  for (const auto& row : dr.rows) {
    std::string order;
    if (row.fitted_order) order = fmt_order(*row.fitted_order);
    else if (row.exact_match) order = "exact-match";
    rep.rows.push_back({std::to_string(row.n), fmt(row.exact, cfg), fmt(row.asym, cfg),
                        to_decimal(row.error, 10), order, regime_label(params)});
  }
  rep.summary_note = "expected order " + fmt_order(dr.expected_order) + ", window +/-" +
                     fmt_order(kOrderFitWindow) + (dr.pass() ? ", fits within window" : ", fit outside window");
  return rep;
}

BigReal sweep_scalar(const std::string& scalar, const RecurrenceTable& t, std::size_t n) {
  if (scalar == "beta") return t.beta(n);
  if (scalar == "h") return t.h(n);
  if (scalar == "p") return t.p(n);
  if (scalar == "r") return t.small_r(n);
  if (scalar == "R") return t.big_r(n);
  if (scalar == "logD") return log_hankel(t, n);
  if (scalar == "logh") return log(t.h(n));
  throw std::invalid_argument("unknown --scalar '" + scalar + "'");
}

Report cmd_sweep(const RunConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("--n must be at least 1");
  const PrecisionContext ctx = context_for(cfg, cfg.n);
  PrecisionScope scope(ctx);
  const Range r1 = parse_range(cfg.t1_range, cfg.t1);
  const Range r2 = parse_range(cfg.t2_range, cfg.t2);
  static const std::array<const char*, 7> kScalars = {"beta", "h", "p", "r", "R", "logD", "logh"};
  if (std::find(kScalars.begin(), kScalars.end(), cfg.scalar) == kScalars.end()) {
    throw std::invalid_argument("unknown --scalar '" + cfg.scalar + "'");
  }
  Report rep{cfg, {"t1", "t2", "n", cfg.scalar}, {}, std::nullopt, {}};
  for (std::size_t i = 0; i < r1.count; ++i) {
    for (std::size_t j = 0; j < r2.count; ++j) {
      const Params params{r1.at(i), r2.at(j)};
      const RecurrenceTable t = build_recurrence(params, cfg.n, ctx);
      rep.rows.push_back({fmt(params.t1, cfg), fmt(params.t2, cfg), std::to_string(cfg.n),
                          fmt(sweep_scalar(cfg.scalar, t, cfg.n), cfg)});
    }
  }
  return rep;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::map<std::string, std::string> RunConfig::echo() const {
  std::map<std::string, std::string> e{
      {"command", command},
      {"t1", t1},
      {"t2", t2},
      {"digits", std::to_string(target_digits)},
      {"guard", guard_digits ? std::to_string(*guard_digits) : "auto"},
      {"format", format == Format::csv ? "csv" : "json"},
  };
  if (command == "moments") e["max_order"] = std::to_string(max_order);
  if (command == "recurrence" || command == "verify" || command == "sweep") e["n"] = std::to_string(n);
  if (command == "verify") {
    e["check"] = check;
    e["tol"] = tol ? *tol : "default";
  }
  if (command == "asympt") {
    e["quantity"] = quantity;
    e["n_list"] = join_sizes(n_list);
  }
  if (command == "sweep") {
    e["t1_range"] = t1_range.empty() ? t1 : t1_range;
    e["t2_range"] = t2_range.empty() ? t2 : t2_range;
    e["scalar"] = scalar;
  }
  return e;
}

std::string to_csv(const Report& report) {
  std::ostringstream os;
  os << "# " << kToolName << ' ' << report.config.command << " csv " << kCsvSchema << '\n';
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    os << (i ? "," : "") << csv_cell(report.columns[i]);
  }
  os << "\r\n";
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << "\r\n";
  }
  return os.str();
}

std::string to_json(const Report& report, const std::string& timestamp) {
  nlohmann::json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = report.config.command;
  j["config"] = report.config.echo();
  j["timestamp"] = timestamp;
  j["columns"] = report.columns;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size() && i < report.columns.size(); ++i) {
      obj[report.columns[i]] = row[i];
    }
    rows.push_back(std::move(obj));
  }
  j["rows"] = std::move(rows);
  if (report.all_pass || !report.summary_note.empty()) {
    nlohmann::json summary = nlohmann::json::object();
    if (report.all_pass) summary["pass"] = *report.all_pass;
    summary["note"] = report.summary_note;
    j["summary"] = std::move(summary);
  }
  return j.dump(2) + "\n";
}

std::string report_timestamp() {
  std::time_t t;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch) {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  } else {
    t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Report execute(const RunConfig& cfg) {
  if (cfg.target_digits < 15) throw std::invalid_argument("--digits must be at least 15");
  if (cfg.command == "moments") return cmd_moments(cfg);
  if (cfg.command == "recurrence") return cmd_recurrence(cfg);
  if (cfg.command == "verify") return cmd_verify(cfg);
  if (cfg.command == "asympt") return cmd_asympt(cfg);
  if (cfg.command == "sweep") return cmd_sweep(cfg);
  throw std::invalid_argument("unknown command '" + cfg.command + "'");
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    for (auto& c : key)
      if (c == '_') c = '-';
    out.emplace_back(key, trim(line.substr(eq + 1)));
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string format = "csv";
  std::string n_list;
  std::string config_path;
  std::optional<unsigned> guard;
  std::optional<std::string> tol;
  std::optional<std::string> output;

  CLI::App app{"High-precision orthogonal polynomials for the weight exp(-x^6 - t2 x^4 - t1 x^2)",
               kToolName};
  app.require_subcommand(1);
  app.option_defaults()->take_last();
  app.set_version_flag("--version", kToolVersion);

  auto add_common = [&](CLI::App* sub) {
    sub->option_defaults()->take_last();
    sub->add_option("--t1", cfg.t1, "coefficient of x^2 (decimal)")->allow_extra_args(false);
    sub->add_option("--t2", cfg.t2, "coefficient of x^4 (decimal)");
    sub->add_option("--digits", cfg.target_digits, "target decimal digits")->envname(kDigitsEnv);
    sub->add_option("--guard", guard, "guard digits (default: max(30, ceil(1.2 N)))");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", output, "output file (default: stdout)");
    sub->add_option("--config", config_path, "key = value file mirroring the flags");
  };

  auto* moments = app.add_subcommand("moments", "even moments mu_0 .. mu_max-order");
  add_common(moments);
  moments->add_option("--max-order", cfg.max_order, "highest moment order");

  auto* recurrence = app.add_subcommand("recurrence", "beta_n, h_n, p(n), r_n, R_n, ln D_n");
  add_common(recurrence);
  recurrence->add_option("--n", cfg.n, "largest index N");

  auto* verify = app.add_subcommand("verify", "residual checks of the exact identities");
  add_common(verify);
  verify->add_option("--n", cfg.n, "largest index N; checks run over 2..N-2");
  verify->add_option("--check", cfg.check, "dpi, ladder, ode, compat, pform, dt2 or all");
  verify->add_option("--tol", tol, "relative tolerance override");

  auto* asympt = app.add_subcommand("asympt", "exact vs asymptotic values with order fits");
  add_common(asympt);
  asympt->add_option("--quantity", cfg.quantity, "beta, p, logD, logh, u, A");
  asympt->add_option("--n-list", n_list, "comma-separated increasing indices");

  auto* sweep = app.add_subcommand("sweep", "one scalar over a (t1, t2) grid");
  add_common(sweep);
  sweep->add_option("--t1-range", cfg.t1_range, "start:stop:count");
  sweep->add_option("--t2-range", cfg.t2_range, "start:stop:count");
  sweep->add_option("--n", cfg.n, "index n");
  sweep->add_option("--scalar", cfg.scalar, "beta, h, p, r, R, logD, logh");

  // Config-file entries are spliced in ahead of the command-line flags so
  // that, with take_last, explicit flags win.
  std::vector<std::string> argv = args;
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config") path = args[i + 1];
    if (path.empty()) continue;
    try {
      std::vector<std::string> spliced;
      for (const auto& [k, v] : read_config_file(path)) {
        spliced.push_back("--" + k);
        spliced.push_back(v);
      }
      argv.insert(argv.begin() + 1, spliced.begin(), spliced.end());
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kInvalidArguments;
    }
    break;
  }
  // Values like "-1" must bind to the preceding option rather than look like flags.
  std::vector<std::string> fused;
  for (std::size_t i = 0; i < argv.size(); ++i) {
    const std::string& a = argv[i];
    if (a.rfind("--", 0) == 0 && a.find('=') == std::string::npos && i + 1 < argv.size() &&
        argv[i + 1].size() > 1 && argv[i + 1][0] == '-' &&
        (std::isdigit(static_cast<unsigned char>(argv[i + 1][1])) || argv[i + 1][1] == '.')) {
      fused.push_back(a + "=" + argv[i + 1]);
      ++i;
    } else {
      fused.push_back(a);
    }
  }

  try {
    std::vector<std::string> reversed(fused.rbegin(), fused.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForVersion& e) {
    out << kToolVersion << '\n';
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArguments;
  }

  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  cfg.format = format == "json" ? Format::json : Format::csv;
  cfg.guard_digits = guard;
  cfg.tol = tol;
  cfg.output_path = output;

  try {
    if (!n_list.empty()) cfg.n_list = parse_n_list(n_list);
    if (cfg.guard_digits && *cfg.guard_digits < PrecisionContext::kMinGuard) {
      throw std::invalid_argument("--guard must be at least " + std::to_string(PrecisionContext::kMinGuard));
    }
    const Report rep = execute(cfg);
    const std::string text =
        cfg.format == Format::json ? to_json(rep, report_timestamp()) : to_csv(rep);
    if (cfg.output_path) {
      std::ofstream f(*cfg.output_path, std::ios::binary);
      if (!f) throw std::invalid_argument("cannot write '" + *cfg.output_path + "'");
      f << text;
    } else {
      out << text;
    }
    if (rep.all_pass && !*rep.all_pass) {
      err << "verification failed: " << rep.summary_note << '\n';
      return kVerificationFailed;
    }
    return kSuccess;
  } catch (const QuadratureFailure& e) {
    err << "quadrature failure: " << e.what() << '\n';
    return kQuadratureFailed;
  } catch (const PrecisionExhausted& e) {
    err << "precision exhausted: " << e.what() << "; try --guard " << e.suggested_guard_digits()
        << '\n';
    return kPrecisionExhausted;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArguments;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArguments;
  }
}

}  // namespace sextic::cli
