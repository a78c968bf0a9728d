// psq: command-line driver for the prime-plus-square toolkit. Every
// subcommand runs one experiment, writes CSV or JSON, and drops a manifest
// (<output>.manifest.json) with the exact post-precedence parameters, so any
// run can be reproduced byte for byte from its manifest.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "psq/circle.hpp"
#include "psq/farey.hpp"
#include "psq/gauss.hpp"
#include "psq/io.hpp"
#include "psq/parallel.hpp"
#include "psq/represent.hpp"
#include "psq/series.hpp"
#include "psq/sieve.hpp"
#include "psq/singular.hpp"
#include "psq/version.hpp"

namespace {

using psq::Cell;
using psq::Config;
using psq::Table;

// Command-line misuse (as opposed to a failed run): reported with usage text
// and exit code 2.
struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kSubcommands = {
    "sieve",       "gauss-verify", "singular", "singular-converge",
    "singular-minscan", "repr",    "exceptional", "theta-approx",
    "jacobi-check", "reconstruct", "hankel",   "lp-check",
    "vterm",       "meansq"};

// Damping epsilon baked into the circle-method series; the sieve handed to
// those operations must reach the matching prime-power horizon.
constexpr double kSeriesEps = 1e-12;

// ---------------------------------------------------------------------------
// Effective parameters: defaults <- config file <- flags.
// ---------------------------------------------------------------------------

Config defaults_for(const std::string& sub) {
  Config d;
  d["threads"] = "0";
  d["format"] = "csv";
  d["output"] = "";
  if (sub == "sieve") {
    d["limit"] = "1000";
  } else if (sub == "gauss-verify") {
    d["qmax"] = "500";
  } else if (sub == "singular") {
    d["nmax"] = "1000";
    d["cutoff"] = "10000";
    d["truncation"] = "0";  // 0: Euler product; >0: Gauss-sum form at P
  } else if (sub == "singular-converge") {
    d["nmax"] = "10";  // the target n
    d["cutoff"] = "100000";
    d["checkpoints"] = "10,31,100,316,1000";  // the P grid
  } else if (sub == "singular-minscan") {
    d["limit"] = "10000";
    d["cutoff"] = "10000";
  } else if (sub == "repr") {
    d["nmax"] = "1000";
  } else if (sub == "exceptional") {
    d["limit"] = "100000";
    d["checkpoints"] = "";  // empty: just the limit itself
  } else if (sub == "theta-approx") {
    d["qmax"] = "32";
    d["nmax"] = "4096";
    d["samples"] = "5";  // offsets per (a, q), spanning [-1/(qQ), 1/(qQ)]
  } else if (sub == "jacobi-check") {
    d["samples"] = "100";
  } else if (sub == "reconstruct") {
    d["nmax"] = "512";
    d["samples"] = "0";  // 0: smallest power of two >= 12 N
  } else if (sub == "hankel") {
    d["nmax"] = "1024";  // the scale N
    d["limit"] = "0";    // top of the n range; 0: same as N
  } else if (sub == "lp-check") {
    d["qmax"] = "12";
    d["nmax"] = "1024";  // window half-width is fixed at xi = 4/N
  } else if (sub == "vterm") {
    d["nmax"] = "1024";      // the scale N
    d["limit"] = "64";       // coefficients m = 1..limit
    d["truncation"] = "0";   // modulus cutoff P; 0: the dissection's own P
  } else if (sub == "meansq") {
    d["nmax"] = "1048576";
    d["cutoff"] = "10000";
    d["dyadic"] = "0";
  }
  return d;
}

struct Params {
  Config values;

  const std::string& str(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end())
      throw std::invalid_argument("missing parameter: " + key);
    return it->second;
  }
  std::uint64_t u64(const std::string& key) const {
    const std::string& s = str(key);
    std::size_t pos = 0;
    std::uint64_t v = 0;
    try {
      v = std::stoull(s, &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (pos != s.size())
      throw std::invalid_argument("parameter " + key + ": bad integer '" + s +
                                  "'");
    return v;
  }
  bool flag(const std::string& key) const { return str(key) == "1"; }
  std::vector<std::uint64_t> u64_list(const std::string& key) const {
    std::vector<std::uint64_t> out;
    std::stringstream ss(str(key));
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      std::size_t pos = 0;
      out.push_back(std::stoull(item, &pos));
      if (pos != item.size())
        throw std::invalid_argument("parameter " + key + ": bad list entry '" +
                                    item + "'");
    }
    return out;
  }
};

// ---------------------------------------------------------------------------
// Output plumbing.
// ---------------------------------------------------------------------------

std::string now_iso8601() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string sibling_path(const std::string& path, const std::string& tag) {
  std::filesystem::path p(path);
  std::filesystem::path q = p.parent_path() / p.stem();
  return q.string() + tag + p.extension().string();
}

struct Run {
  std::string subcommand;
  Params params;
  std::string format;              // csv | json
  std::string out_path;            // primary output
  std::vector<std::string> outputs;

  void emit(const Table& t, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    if (format == "json")
      t.write_json(out);
    else
      t.write_csv(out);
    if (!out) throw std::runtime_error("write failed: " + path);
    outputs.push_back(path);
  }
  void emit(const Table& t) { emit(t, out_path); }
};

// ---------------------------------------------------------------------------
// Sieve sizing for the damped prime series: the horizon depends (through the
// crude Chebyshev bound) on the table size itself, so iterate to a fixed
// point before building.
// ---------------------------------------------------------------------------

std::uint64_t prime_series_sieve_limit(std::uint64_t n_scale) {
  std::uint64_t limit = std::max<std::uint64_t>(n_scale, 1024);
  for (int i = 0; i < 64; ++i) {
    std::uint64_t h = psq::detail::prime_horizon(n_scale, kSeriesEps, limit);
    if (h <= limit) return limit;
    limit = h;
  }
  return limit;
}

std::uint64_t pow2_at_least(std::uint64_t n) {
  std::uint64_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

// ---------------------------------------------------------------------------
// Subcommands.
// ---------------------------------------------------------------------------

void run_sieve(Run& run) {
  std::uint64_t limit = run.params.u64("limit");
  auto tables = psq::build_sieve(limit);
  Table t({"n", "lambda", "mu", "phi", "tau", "prime"});
  for (std::uint64_t n = 1; n <= limit; ++n)
    t.add_row({n, tables.lambda[n], static_cast<std::int64_t>(tables.mu[n]),
               tables.phi[n], static_cast<std::uint64_t>(tables.tau[n]),
               static_cast<std::uint64_t>(tables.is_prime(n) ? 1 : 0)});
  run.emit(t);
}

int run_gauss_verify(Run& run) {
  auto report = psq::verify_gauss_bound(run.params.u64("qmax"));
  Table t({"q_max", "triples_checked", "violations", "worst_ratio", "worst_q",
           "worst_a", "worst_n", "trichotomy_ok", "max_integer_residue"});
  t.add_row({report.q_max, report.triples_checked,
             static_cast<std::uint64_t>(report.violations.size()),
             report.worst_ratio, report.worst_q, report.worst_a,
             report.worst_n,
             static_cast<std::uint64_t>(report.classical_trichotomy_ok ? 1 : 0),
             report.max_integer_residue});
  run.emit(t);
  if (!report.violations.empty()) {
    const auto& v = report.violations.front();
    std::cerr << "psq: gauss bound violated at q=" << v.q << " a=" << v.a
              << " n=" << v.n << " |G|^2=" << psq::format_real(v.abs2) << "\n";
    return 1;
  }
  if (!report.classical_trichotomy_ok) {
    std::cerr << "psq: classical |G(a,0;q)| trichotomy violated below q_max="
              << report.q_max << "\n";
    return 1;
  }
  return 0;
}

void run_singular(Run& run) {
  std::uint64_t n_max = run.params.u64("nmax");
  std::uint64_t cutoff = run.params.u64("cutoff");
  std::uint64_t trunc = run.params.u64("truncation");
  std::uint64_t sieve_limit = std::max({n_max, trunc > 0 ? trunc : cutoff, std::uint64_t{16}});
  auto tables = psq::build_sieve(sieve_limit);
  Table t({"n", "value", "mode", "parameter"});
  if (trunc > 0) {
    auto vals = psq::singular_series_truncated_batch(
        1, n_max + 1, static_cast<double>(trunc), tables);
    for (const auto& v : vals)
      t.add_row({v.n, v.value, std::string("truncated"), v.parameter});
  } else {
    auto vals = psq::singular_series_euler_batch(1, n_max + 1, cutoff, tables);
    for (std::uint64_t n = 1; n <= n_max; ++n)
      t.add_row({n, vals[n - 1], std::string("euler"),
                 static_cast<double>(cutoff)});
  }
  run.emit(t);
}

void run_singular_converge(Run& run) {
  std::uint64_t n = run.params.u64("nmax");
  std::uint64_t cutoff = run.params.u64("cutoff");
  auto grid = run.params.u64_list("checkpoints");
  if (grid.empty()) throw std::invalid_argument("empty truncation grid");
  std::uint64_t p_top = *std::max_element(grid.begin(), grid.end());
  auto tables = psq::build_sieve(std::max({n, cutoff, p_top}));
  std::vector<double> p_list(grid.begin(), grid.end());
  auto report = psq::convergence_check(n, p_list, cutoff, tables);
  Table t({"n", "big_p", "reference", "discrepancy"});
  for (std::size_t i = 0; i < report.p_values.size(); ++i)
    t.add_row({report.n, report.p_values[i], report.reference,
               report.discrepancies[i]});
  run.emit(t);
}

void run_singular_minscan(Run& run) {
  std::uint64_t limit = run.params.u64("limit");
  std::uint64_t cutoff = run.params.u64("cutoff");
  auto tables = psq::build_sieve(std::max(limit, cutoff));
  auto scan = psq::singular_lower_bound_scan(limit, cutoff, tables);
  Table t({"limit", "cutoff", "min_value", "argmin", "scanned"});
  t.add_row({limit, cutoff, scan.min_value, scan.argmin, scan.scanned});
  run.emit(t);
}

void run_repr(Run& run) {
  std::uint64_t n_max = run.params.u64("nmax");
  auto tables = psq::build_sieve(std::max<std::uint64_t>(n_max, 16));
  auto rep = psq::rep_all(n_max, tables);
  Table t({"n", "weighted", "prime_weighted", "count", "square"});
  for (std::uint64_t n = 1; n <= n_max; ++n)
    t.add_row({n, rep.weighted[n], rep.prime_weighted[n],
               static_cast<std::uint64_t>(rep.count[n]),
               static_cast<std::uint64_t>(rep.square_flag[n])});
  run.emit(t);
}

void run_exceptional(Run& run) {
  std::uint64_t limit = run.params.u64("limit");
  auto checkpoints = run.params.u64_list("checkpoints");
  if (checkpoints.empty()) checkpoints.push_back(limit);
  auto tables = psq::build_sieve(std::max<std::uint64_t>(limit, 16));
  auto report = psq::exceptional_set(limit, checkpoints, tables);
  Table t({"n"});
  for (auto n : report.exceptional) t.add_row({n});
  run.emit(t);
  Table counts({"x", "count"});
  for (const auto& [x, e] : report.counts) counts.add_row({x, e});
  run.emit(counts, sibling_path(run.out_path, "-counts"));
}

void run_theta_approx(Run& run) {
  std::uint64_t q_max = run.params.u64("qmax");
  std::uint64_t n_scale = run.params.u64("nmax");
  std::uint64_t samples = std::max<std::uint64_t>(run.params.u64("samples"), 1);
  psq::GenParams p(n_scale);
  double big_q = std::sqrt(static_cast<double>(n_scale) *
                           std::log(static_cast<double>(n_scale)));
  Table t({"q", "a", "offset", "measured", "bound_scale", "ratio"});
  for (std::uint64_t q = 1; q <= q_max; ++q) {
    double w = 1.0 / (static_cast<double>(q) * big_q);
    for (std::uint64_t a = 1; a <= q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      for (std::uint64_t i = 0; i < samples; ++i) {
        double offset =
            samples == 1 ? 0.0
                         : -w + 2.0 * w * static_cast<double>(i) /
                                   static_cast<double>(samples - 1);
        auto err = psq::theta_approx_error(a, q, offset, p);
        t.add_row({q, a, offset, err.measured, err.bound_scale,
                   err.measured / err.bound_scale});
      }
    }
  }
  run.emit(t);
}

void run_jacobi_check(Run& run) {
  std::uint64_t samples = std::max<std::uint64_t>(run.params.u64("samples"), 1);
  Table t({"alpha", "z_re", "z_im", "residual"});
  for (std::uint64_t i = 0; i < samples; ++i) {
    double alpha = samples == 1 ? 0.0
                                : 0.5 * static_cast<double>(i) /
                                      static_cast<double>(samples - 1);
    std::complex<double> z;
    switch (i % 6) {
      case 0: z = 0.1; break;
      case 1: z = 0.5; break;
      case 2: z = 1.0; break;
      case 3: z = 2.0; break;
      case 4: z = {1.0 / (std::acos(-1.0) * 10.0), -2.0 * alpha}; break;
      default: z = {1.0 / (std::acos(-1.0) * 100.0), -2.0 * alpha}; break;
    }
    t.add_row({alpha, z.real(), z.imag(),
               psq::jacobi_transform_residual(alpha, z)});
  }
  run.emit(t);
}

void run_reconstruct(Run& run) {
  std::uint64_t n_max = run.params.u64("nmax");
  std::uint64_t m = run.params.u64("samples");
  if (m == 0) m = pow2_at_least(12 * n_max);
  auto tables = psq::build_sieve(prime_series_sieve_limit(n_max));
  auto recon = psq::parseval_reconstruct(n_max, m, tables);
  auto rep = psq::rep_all(n_max, tables);
  Table t({"n", "direct", "reconstructed", "abs_error"});
  for (std::uint64_t n = 1; n <= n_max; ++n)
    t.add_row({n, rep.weighted[n], recon[n],
               std::abs(recon[n] - rep.weighted[n])});
  run.emit(t);
}

void run_hankel(Run& run) {
  std::uint64_t n_scale = run.params.u64("nmax");
  std::uint64_t n_top = run.params.u64("limit");
  if (n_top == 0) n_top = n_scale;
  Table t({"n", "quad_re", "quad_im", "main_term", "residual",
           "residual_times_n"});
  for (std::uint64_t n = 1; n <= n_top; ++n) {
    auto quad = psq::hankel_integral(n, n_scale);
    double main = psq::hankel_main_term(n, n_scale);
    double res = std::abs(quad.real() - main);
    t.add_row({n, quad.real(), quad.imag(), main, res,
               res * static_cast<double>(n)});
  }
  run.emit(t);
}

void run_lp_check(Run& run) {
  std::uint64_t q_max = run.params.u64("qmax");
  std::uint64_t n_scale = run.params.u64("nmax");
  double xi = 4.0 / static_cast<double>(n_scale);
  auto tables = psq::build_sieve(prime_series_sieve_limit(n_scale));
  Table t({"q", "xi", "n_scale", "lhs", "normalizer", "ratio"});
  for (std::uint64_t q = 1; q <= q_max; ++q) {
    auto v = psq::lp_mean_square_check(q, xi, n_scale, tables);
    t.add_row({q, xi, n_scale, v.lhs, v.normalizer, v.lhs / v.normalizer});
  }
  run.emit(t);
}

void run_vterm(Run& run) {
  std::uint64_t n_scale = run.params.u64("nmax");
  std::uint64_t m_max = run.params.u64("limit");
  std::uint64_t trunc = run.params.u64("truncation");
  auto arcs = psq::build_arcs(n_scale);
  double big_p = trunc > 0 ? static_cast<double>(trunc) : arcs.small_p;
  std::uint64_t sieve_limit =
      std::max({static_cast<std::uint64_t>(big_p) + 1, m_max,
                std::uint64_t{16}});
  auto tables = psq::build_sieve(sieve_limit);
  Table t({"m", "v_main", "r_m"});
  for (std::uint64_t m = 1; m <= m_max; ++m) {
    auto v = psq::v_main_term(m, big_p, n_scale, tables);
    auto tu = psq::tu_coefficient(m, arcs, tables);
    t.add_row({m, v.product_form, tu.extension_error});
  }
  run.emit(t);
}

void run_meansq(Run& run) {
  std::uint64_t n_max = run.params.u64("nmax");
  std::uint64_t cutoff = run.params.u64("cutoff");
  bool dyadic = run.params.flag("dyadic");
  auto tables = psq::build_sieve(std::max(n_max, cutoff));
  std::vector<std::uint64_t> grid;
  if (dyadic) {
    for (std::uint64_t n = 4096; n <= n_max; n *= 2) grid.push_back(n);
    if (grid.empty()) grid.push_back(n_max);
  } else {
    grid.push_back(n_max);
  }
  Table t({"n_scale", "sum_sq", "normalizer", "ratio"});
  for (auto n : grid) {
    auto stat = psq::mean_square_statistic(n, tables, cutoff);
    t.add_row({stat.n_max, stat.sum_sq, stat.normalizer, stat.ratio});
  }
  run.emit(t);
}

// ---------------------------------------------------------------------------
// Driver.
// ---------------------------------------------------------------------------

void print_usage(std::ostream& out) {
  out << "usage: psq <subcommand> [flags]\n  subcommands:";
  for (const auto& s : kSubcommands) out << " " << s;
  out << "\n  flags: --limit --nmax --qmax --cutoff --truncation --samples\n"
         "         --threads --output <path> --format csv|json\n"
         "         --config <path> --checkpoints a,b,c --dyadic --show-config\n"
         "  PSQ_OUTPUT_DIR sets the default output directory.\n";
}

int run_main(int argc, char** argv) {
  CLI::App app{"prime-plus-square circle-method toolkit"};
  app.name("psq");

  std::string sub;
  app.add_option("subcommand", sub, "experiment to run")->required();

  std::uint64_t limit = 0, nmax = 0, qmax = 0, cutoff = 0, truncation = 0,
                samples = 0, threads = 0;
  std::string output, format, config_path;
  std::vector<std::uint64_t> checkpoints;
  bool dyadic = false, show_config = false;

  auto* o_limit = app.add_option("--limit", limit);
  auto* o_nmax = app.add_option("--nmax", nmax);
  auto* o_qmax = app.add_option("--qmax", qmax);
  auto* o_cutoff = app.add_option("--cutoff", cutoff);
  auto* o_trunc = app.add_option("--truncation", truncation);
  auto* o_samples = app.add_option("--samples", samples);
  auto* o_threads = app.add_option("--threads", threads);
  auto* o_output = app.add_option("--output", output);
  auto* o_format =
      app.add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--config", config_path);
  auto* o_checkpoints =
      app.add_option("--checkpoints", checkpoints)->delimiter(',');
  auto* o_dyadic = app.add_flag("--dyadic", dyadic);
  app.add_flag("--show-config", show_config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "psq: " << e.what() << "\n";
    print_usage(std::cerr);
    return 2;
  }

  if (std::find(kSubcommands.begin(), kSubcommands.end(), sub) ==
      kSubcommands.end()) {
    std::cerr << "psq: unknown subcommand '" << sub << "'\n";
    print_usage(std::cerr);
    return 2;
  }

  // Precedence: built-in defaults, then the config file, then flags.
  Config effective = defaults_for(sub);
  if (!config_path.empty()) {
    for (const auto& [key, value] : psq::parse_config_file(config_path)) {
      if (!effective.count(key))
        throw usage_error("config key '" + key +
                          "' does not apply to subcommand " + sub);
      effective[key] = value;
    }
  }
  auto override_if = [&](const CLI::Option* o, const std::string& key,
                         const std::string& value) {
    if (!o->count()) return;
    if (!effective.count(key))
      throw usage_error("flag --" + key + " does not apply to subcommand " +
                        sub);
    effective[key] = value;
  };
  override_if(o_limit, "limit", std::to_string(limit));
  override_if(o_nmax, "nmax", std::to_string(nmax));
  override_if(o_qmax, "qmax", std::to_string(qmax));
  override_if(o_cutoff, "cutoff", std::to_string(cutoff));
  override_if(o_trunc, "truncation", std::to_string(truncation));
  override_if(o_samples, "samples", std::to_string(samples));
  if (o_threads->count()) effective["threads"] = std::to_string(threads);
  if (o_output->count()) effective["output"] = output;
  if (o_format->count()) effective["format"] = format;
  if (o_checkpoints->count()) {
    std::string joined;
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
      if (i) joined += ',';
      joined += std::to_string(checkpoints[i]);
    }
    override_if(o_checkpoints, "checkpoints", joined);
  }
  if (o_dyadic->count()) override_if(o_dyadic, "dyadic", "1");

  // Resolve the output path so the manifest round-trips it losslessly.
  if (effective["output"].empty()) {
    std::string name = sub + (effective["format"] == "json" ? ".json" : ".csv");
    const char* dir = std::getenv("PSQ_OUTPUT_DIR");
    effective["output"] =
        dir && *dir ? (std::filesystem::path(dir) / name).string() : name;
  }

  if (show_config) {
    psq::write_config(effective, std::cout);
    return 0;
  }

  psq::set_thread_count(
      static_cast<unsigned>(Params{effective}.u64("threads")));

  Run run;
  run.subcommand = sub;
  run.params = Params{effective};
  run.format = effective["format"];
  run.out_path = effective["output"];

  psq::RunManifest manifest;
  manifest.subcommand = sub;
  manifest.parameters = effective;
  manifest.tool_version = psq::version_string;
  manifest.started_at = now_iso8601();

  int rc = 0;
  if (sub == "sieve") run_sieve(run);
  else if (sub == "gauss-verify") rc = run_gauss_verify(run);
  else if (sub == "singular") run_singular(run);
  else if (sub == "singular-converge") run_singular_converge(run);
  else if (sub == "singular-minscan") run_singular_minscan(run);
  else if (sub == "repr") run_repr(run);
  else if (sub == "exceptional") run_exceptional(run);
  else if (sub == "theta-approx") run_theta_approx(run);
  else if (sub == "jacobi-check") run_jacobi_check(run);
  else if (sub == "reconstruct") run_reconstruct(run);
  else if (sub == "hankel") run_hankel(run);
  else if (sub == "lp-check") run_lp_check(run);
  else if (sub == "vterm") run_vterm(run);
  else if (sub == "meansq") run_meansq(run);

  manifest.finished_at = now_iso8601();
  manifest.outputs = run.outputs;
  std::string manifest_path = run.out_path + ".manifest.json";
  std::ofstream mout(manifest_path, std::ios::binary);
  if (!mout)
    throw std::runtime_error("cannot open manifest file: " + manifest_path);
  manifest.write_json(mout);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_main(argc, argv);
  } catch (const usage_error& e) {
    std::cerr << "psq: " << e.what() << "\n";
    print_usage(std::cerr);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "psq: " << e.what() << "\n";
    return 1;
  }
}
