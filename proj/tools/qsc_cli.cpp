// Command-line driver: exponent computation, code evaluation, bound
// verification, oracle cross-checks. CSV/JSON output, 17 significant digits.
// Exit codes: 0 success, 1 usage/input error, 2 verified-bound violation.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qsc/converse.hpp"
#include "qsc/exponents.hpp"
#include "qsc/oracle.hpp"
#include "qsc/schur_weyl.hpp"
#include "qsc/spectrum.hpp"
#include "qsc/universal_code.hpp"

namespace {

using json = nlohmann::json;

constexpr double kLn2 = 0.69314718055994530942;

struct Options {
  std::string format = "csv";
  std::string output;  // empty = stdout
  bool bits = false;
  std::int64_t budget = 2'000'000;
  unsigned jobs = 0;  // 0 = hardware_concurrency
  std::uint64_t seed = 1;
};

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;

  void emit(const Options& opt) const {
    std::ostringstream os;
    if (opt.format == "json") {
      json arr = json::array();
      for (const auto& row : rows) {
        json obj;
        for (std::size_t i = 0; i < columns.size(); ++i) obj[columns[i]] = row[i];
        arr.push_back(std::move(obj));
      }
      os << arr.dump(2) << '\n';
    } else {
      for (std::size_t i = 0; i < columns.size(); ++i)
        os << (i ? "," : "") << csv_quote(columns[i]);
      os << "\r\n";
      for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
          if (i) os << ',';
          const json& cell = row[i];
          if (cell.is_number_float())
            os << fmt17(cell.get<double>());
          else if (cell.is_string())
            os << csv_quote(cell.get<std::string>());
          else
            os << cell.dump();
        }
        os << "\r\n";
      }
    }
    if (opt.output.empty()) {
      std::cout << os.str();
    } else {
      std::ofstream f(opt.output, std::ios::binary);
      if (!f) throw CLI::ValidationError("--output", "cannot open " + opt.output);
      f << os.str();
    }
  }
};

// Spectrum input: "p1,p2,..." | "uniform:d" | path to a JSON source file.
struct SourceInput {
  qsc::Spectrum spectrum;
  std::optional<qsc::PureSource> source;
};

SourceInput parse_spectrum_arg(const std::string& arg) {
  if (arg.rfind("uniform:", 0) == 0) {
    int d = std::stoi(arg.substr(8));
    return {qsc::Spectrum::uniform(d), std::nullopt};
  }
  if (arg.find(',') != std::string::npos || arg.find_first_not_of(
          "0123456789.eE+-") == std::string::npos) {
    std::vector<double> p;
    std::stringstream ss(arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) p.push_back(std::stod(tok));
    std::sort(p.rbegin(), p.rend());
    return {qsc::Spectrum(p), std::nullopt};
  }
  std::ifstream f(arg);
  if (!f) throw CLI::ValidationError("--spectrum", "cannot read " + arg);
  json doc = json::parse(f);
  std::vector<double> probs = doc.at("probabilities").get<std::vector<double>>();
  std::vector<Eigen::VectorXcd> states;
  for (const auto& st : doc.at("states")) {
    Eigen::VectorXcd v(st.size());
    for (std::size_t i = 0; i < st.size(); ++i) {
      if (st[i].is_array())
        v[Eigen::Index(i)] = std::complex<double>(st[i][0].get<double>(),
                                                  st[i][1].get<double>());
      else
        v[Eigen::Index(i)] = st[i].get<double>();
    }
    v.normalize();
    states.push_back(std::move(v));
  }
  qsc::PureSource src(std::move(states), std::move(probs));
  return {qsc::spectrum_from_source(src), std::move(src)};
}

// Grid: "x" | "lo:hi" (step 1) | "lo:hi:step".
std::vector<double> parse_grid(const std::string& arg) {
  std::vector<double> parts;
  std::stringstream ss(arg);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(std::stod(tok));
  if (parts.size() == 1) return {parts[0]};
  double lo = parts[0], hi = parts[1];
  double step = parts.size() > 2 ? parts[2] : 1.0;
  if (step <= 0 || hi < lo) throw CLI::ValidationError("grid", "bad range " + arg);
  std::vector<double> out;
  for (double x = lo; x <= hi + 1e-12 * std::max(1.0, std::abs(hi)); x += step)
    out.push_back(x);
  return out;
}

std::vector<int> parse_int_grid(const std::string& arg) {
  std::vector<int> out;
  for (double x : parse_grid(arg)) out.push_back(int(std::lround(x)));
  return out;
}

// Parallel map with deterministic output order.
template <typename F>
void parallel_for(std::size_t count, unsigned jobs, F&& body) {
  unsigned workers = jobs ? jobs : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<std::size_t>(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
        body(i);
    });
  for (auto& t : pool) t.join();
}

double to_nats(double r, const Options& o) { return o.bits ? r * kLn2 : r; }
double from_nats(double r, const Options& o) { return o.bits ? r / kLn2 : r; }

const char* regime_name(qsc::Regime r) {
  switch (r) {
    case qsc::Regime::R_below_logk: return "low_rate";
    case qsc::Regime::R_between_logk_and_H: return "interior";
    default: return "above_entropy";
  }
}

json exponent_row(const qsc::Spectrum& a, double R, const Options& opt) {
  using qsc::Characterization;
  auto psi = qsc::error_exponent(a, R, Characterization::psi_form);
  auto div = qsc::error_exponent(a, R, Characterization::divergence_form);
  auto tilt = qsc::error_exponent(a, R, Characterization::tilted_closed_form);
  auto fpsi = qsc::fidelity_exponent(a, R, Characterization::psi_form);
  auto fdiv = qsc::fidelity_exponent(a, R, Characterization::divergence_form);
  auto ftilt = qsc::fidelity_exponent(a, R, Characterization::tilted_closed_form);
  json row;
  row["rate"] = from_nats(R, opt);
  row["error_exponent_psi"] = from_nats(psi.value, opt);
  row["error_exponent_divergence"] = from_nats(div.value, opt);
  row["error_exponent_tilted"] = from_nats(tilt.value, opt);
  row["fidelity_exponent_psi"] = from_nats(fpsi.value, opt);
  row["fidelity_exponent_divergence"] = from_nats(fdiv.value, opt);
  row["fidelity_exponent_tilted"] = from_nats(ftilt.value, opt);
  row["regime"] = regime_name(tilt.regime);
  if (tilt.s_star) row["s_star"] = *tilt.s_star;
  if (ftilt.s_star) row["fidelity_s_star"] = *ftilt.s_star;
  return row;
}

int cmd_exponent(const SourceInput& in, double R, const Options& opt) {
  json row = exponent_row(in.spectrum, to_nats(R, opt), opt);
  Table t;
  for (auto it = row.begin(); it != row.end(); ++it) t.columns.push_back(it.key());
  std::vector<json> cells;
  for (const auto& c : t.columns) cells.push_back(row[c]);
  t.rows.push_back(std::move(cells));
  t.emit(opt);
  return 0;
}

int cmd_sweep(const SourceInput& in, const std::vector<double>& rates,
              const Options& opt) {
  std::vector<json> rows(rates.size());
  parallel_for(rates.size(), opt.jobs, [&](std::size_t i) {
    rows[i] = exponent_row(in.spectrum, to_nats(rates[i], opt), opt);
  });
  Table t;
  for (auto it = rows.front().begin(); it != rows.front().end(); ++it)
    t.columns.push_back(it.key());
  for (auto& row : rows) {
    std::vector<json> cells;
    for (const auto& c : t.columns)
      cells.push_back(row.contains(c) ? row[c] : json());
    t.rows.push_back(std::move(cells));
  }
  t.emit(opt);
  return 0;
}

int cmd_code_eval(const SourceInput& in, double R, const std::vector<int>& ns,
                  const Options& opt) {
  double Rn = to_nats(R, opt);
  std::vector<qsc::CodeEvaluation> evs(ns.size());
  parallel_for(ns.size(), opt.jobs, [&](std::size_t i) {
    evs[i] = qsc::evaluate_code(in.spectrum, Rn, ns[i], opt.budget);
  });
  Table t;
  t.columns = {"n", "rate", "adjusted_rate", "log_dim_K", "visible_error",
               "blind_error_upper", "blind_error_doubled", "fidelity_lower",
               "bound_12_7", "bound_12_8", "bound_12_9", "degenerate"};
  int violations = 0;
  for (const auto& ev : evs) {
    t.rows.push_back({ev.n, from_nats(ev.R, opt), from_nats(ev.R_n, opt),
                      from_nats(ev.log_dim_K, opt), ev.visible_error,
                      ev.blind_error_upper, ev.blind_error_doubled,
                      ev.fidelity_lower, ev.bound_12_7, ev.bound_12_8,
                      ev.bound_12_9, ev.degenerate});
    if (ev.degenerate) continue;
    if (ev.visible_error > ev.bound_12_7 + 1e-12) ++violations;
    if (ev.blind_error_upper > ev.bound_12_8 + 1e-12) ++violations;
    if (ev.fidelity_lower < ev.bound_12_9 - 1e-12) ++violations;
    if (ev.log_dim_K > ev.n * ev.R + 1e-9) ++violations;
  }
  t.emit(opt);
  return violations ? 2 : 0;
}

int cmd_verify_bounds(const SourceInput& in, double R, const std::vector<int>& ns,
                      const Options& opt) {
  const auto& a = in.spectrum;
  double Rn = to_nats(R, opt);
  struct Row {
    qsc::BlockBoundReport block;
    std::optional<qsc::CodeEvaluation> ev;
    int code_violations = 0;
  };
  std::vector<Row> rows(ns.size());
  parallel_for(ns.size(), opt.jobs, [&](std::size_t i) {
    int n = ns[i];
    rows[i].block = qsc::check_block_bounds(n, a, {Rn, qsc::entropy(a)}, opt.budget);
    auto ev = qsc::evaluate_code(a, Rn, n, opt.budget);
    if (!ev.degenerate) {
      if (ev.visible_error > ev.bound_12_7 + 1e-12) ++rows[i].code_violations;
      if (ev.blind_error_upper > ev.bound_12_8 + 1e-12) ++rows[i].code_violations;
      if (ev.fidelity_lower < ev.bound_12_9 - 1e-12) ++rows[i].code_violations;
      if (ev.log_dim_K > n * ev.R + 1e-9) ++rows[i].code_violations;
    }
    rows[i].ev = std::move(ev);
  });
  Table t;
  t.columns = {"n", "block_violations", "index_count_ok", "region_ok",
               "code_violations", "visible_error", "bound_12_7_margin",
               "fidelity_margin_12_9", "degenerate"};
  int total = 0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const auto& r = rows[i];
    total += r.block.violations + r.code_violations;
    const auto& ev = *r.ev;
    t.rows.push_back({ns[i], r.block.violations, r.block.index_count,
                      r.block.region_lower && r.block.region_upper,
                      r.code_violations, ev.visible_error,
                      ev.bound_12_7 - ev.visible_error,
                      ev.fidelity_lower - ev.bound_12_9, ev.degenerate});
  }
  t.emit(opt);
  return total ? 2 : 0;
}

int cmd_oracle_check(const SourceInput& in, std::optional<double> R,
                     const std::vector<int>& ns, const Options& opt) {
  Table t;
  t.columns = {"n", "lambda", "matrix_trace", "combinatorial_trace",
               "trace_delta", "operator_norm", "highest_weight", "norm_delta"};
  int violations = 0;
  for (int n : ns) {
    for (const auto& row : qsc::schur_weyl_cross_check(in.spectrum, n, opt.budget)) {
      std::string lam;
      for (std::size_t i = 0; i < row.lambda.parts.size(); ++i)
        lam += (i ? "." : "") + std::to_string(row.lambda.parts[i]);
      double tdelta = std::abs(row.matrix_trace - row.combinatorial_trace);
      double ndelta = std::abs(row.operator_norm - row.highest_weight);
      if (tdelta > 1e-8 || ndelta > 1e-8) ++violations;
      t.rows.push_back({n, lam, row.matrix_trace, row.combinatorial_trace,
                        tdelta, row.operator_norm, row.highest_weight, ndelta});
    }
  }
  if (in.source && R) {
    Table e;
    e.columns = {"n", "visible_error", "blind_error", "bures_visible",
                 "bures_blind", "visible_vs_code_delta", "sandwich_ok"};
    for (int n : ns) {
      auto err = qsc::exact_errors(*in.source, to_nats(*R, opt), n, opt.budget);
      double code = qsc::visible_error_exact(in.spectrum, to_nats(*R, opt), n,
                                             opt.budget);
      double delta = std::abs(err.visible - code);
      bool sandwich = err.bures_visible <= err.visible + 1e-12 &&
                      err.visible <= 2 * err.bures_visible + 1e-12 &&
                      err.bures_blind <= err.blind + 1e-12 &&
                      err.blind <= 2 * err.bures_blind + 1e-12;
      if (delta > 1e-10 || !sandwich) ++violations;
      e.rows.push_back({n, err.visible, err.blind, err.bures_visible,
                        err.bures_blind, delta, sandwich});
    }
    t.emit(opt);
    // source-level error table always goes to stdout so both are visible
    e.emit(Options{opt.format, "", opt.bits, opt.budget, opt.jobs, opt.seed});
    return violations ? 2 : 0;
  }
  t.emit(opt);
  return violations ? 2 : 0;
}

int cmd_tails(const SourceInput& in, const std::vector<double>& S_grid,
              const std::vector<int>& ns, const Options& opt) {
  const auto& a = in.spectrum;
  struct Key {
    double S;
    int n;
  };
  std::vector<Key> keys;
  for (double S : S_grid)
    for (int n : ns) keys.push_back({to_nats(S, opt), n});
  std::vector<std::array<double, 3>> vals(keys.size());
  parallel_for(keys.size(), opt.jobs, [&](std::size_t i) {
    auto [S, n] = keys[i];
    double log_tail =
        qsc::spectral_tail_log(a, n, -n * S, qsc::TailSide::lt, opt.budget);
    vals[i] = {log_tail, -log_tail / n, qsc::eta(a, S)};
  });
  Table t;
  t.columns = {"S", "n", "tail", "empirical_exponent", "eta"};
  for (std::size_t i = 0; i < keys.size(); ++i)
    t.rows.push_back({from_nats(keys[i].S, opt), keys[i].n,
                      std::exp(vals[i][0]), from_nats(vals[i][1], opt),
                      from_nats(vals[i][2], opt)});
  t.emit(opt);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Source-coding exponents, Schur-Weyl code evaluation, and bound verification"};
  app.require_subcommand(1);

  Options opt;
  if (const char* env = std::getenv("QSC_BUDGET")) opt.budget = std::atoll(env);
  std::string spectrum_arg;
  std::string rate_arg, n_arg = "1", S_arg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--spectrum", spectrum_arg,
                    "probabilities 'p1,p2,...', 'uniform:d', or JSON source file")
        ->required();
    sub->add_option("--format", opt.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", opt.output, "output path (default stdout)");
    sub->add_flag("--bits", opt.bits, "rates and exponents in bits");
    sub->add_option("--budget", opt.budget, "enumeration budget");
    sub->add_option("--jobs", opt.jobs, "worker count (0 = auto)");
    sub->add_option("--seed", opt.seed, "random seed");
  };

  auto* sc_exp = app.add_subcommand("exponent", "error/fidelity exponents at one rate");
  add_common(sc_exp);
  sc_exp->add_option("--rate", rate_arg)->required();

  auto* sc_sweep = app.add_subcommand("sweep", "exponents over a rate grid");
  add_common(sc_sweep);
  sc_sweep->add_option("--rates", rate_arg, "lo:hi:step")->required();

  auto* sc_code = app.add_subcommand("code-eval", "exact universal-code evaluation");
  add_common(sc_code);
  sc_code->add_option("--rate", rate_arg)->required();
  sc_code->add_option("--n", n_arg, "n or lo:hi[:step]")->required();

  auto* sc_ver = app.add_subcommand("verify-bounds", "per-n inequality sweep");
  add_common(sc_ver);
  sc_ver->add_option("--rate", rate_arg)->required();
  sc_ver->add_option("--n", n_arg, "n or lo:hi[:step]")->required();

  auto* sc_orc = app.add_subcommand("oracle-check", "matrix-level cross checks");
  add_common(sc_orc);
  sc_orc->add_option("--rate", rate_arg, "rate for source-level error check");
  sc_orc->add_option("--n", n_arg, "n or lo:hi[:step]")->required();

  auto* sc_tails = app.add_subcommand("tails", "spectral tails and exponents");
  add_common(sc_tails);
  sc_tails->add_option("--S", S_arg, "threshold grid lo:hi:step (nats/bits)")->required();
  sc_tails->add_option("--n", n_arg, "n or lo:hi[:step]")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    SourceInput in = parse_spectrum_arg(spectrum_arg);
    if (sc_exp->parsed()) return cmd_exponent(in, std::stod(rate_arg), opt);
    if (sc_sweep->parsed()) return cmd_sweep(in, parse_grid(rate_arg), opt);
    if (sc_code->parsed())
      return cmd_code_eval(in, std::stod(rate_arg), parse_int_grid(n_arg), opt);
    if (sc_ver->parsed())
      return cmd_verify_bounds(in, std::stod(rate_arg), parse_int_grid(n_arg), opt);
    if (sc_orc->parsed()) {
      std::optional<double> R;
      if (!rate_arg.empty()) R = std::stod(rate_arg);
      return cmd_oracle_check(in, R, parse_int_grid(n_arg), opt);
    }
    if (sc_tails->parsed())
      return cmd_tails(in, parse_grid(S_arg), parse_int_grid(n_arg), opt);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
