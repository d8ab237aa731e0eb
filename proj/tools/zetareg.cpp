// zetareg command-line tool. Reports go out as JSON (or text), grids as CSV.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "zetareg/errors.hpp"
#include "zetareg/numtheory.hpp"
#include "zetareg/primezeta.hpp"
#include "zetareg/serialize.hpp"
#include "zetareg/spectral.hpp"
#include "zetareg/zeros.hpp"
#include "zetareg/zeta.hpp"

namespace {

using namespace zetareg;
using nlohmann::json;

enum exit_code : int {
  exit_ok = 0,
  exit_usage = 1,
  exit_pole = 2,
  exit_singularity = 3,
  exit_no_continuation = 4,
  exit_domain = 5,
  exit_range = 6,
  exit_accuracy = 7,
  exit_conditioning = 8,
  exit_io = 9,
};

// Height up to which zeros are computed when no zeros file is given.
constexpr double default_zero_height = 60.0;

struct run_config {
  double tolerance = 1e-10;
  std::uint64_t sieve_limit = 10'000'000;
  long k_max = 1000;
  double exclusion_radius = 1e-3;
  std::string zeros_file;
  std::string output_path;
  std::string format;  // empty: csv for grids, json for reports

  void validate() const {
    if (!(tolerance > 0.0) || !(exclusion_radius > 0.0) || sieve_limit == 0 || k_max <= 0) {
      throw domain_error("numeric options must be positive");
    }
  }

  std::string format_or(const char* fallback) const { return format.empty() ? fallback : format; }
};

class output {
 public:
  explicit output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw io_error("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void finish() {
    stream().flush();
    if (!stream()) throw io_error("write failed");
  }

 private:
  std::ofstream file_;
};

void emit_json(const run_config& cfg, const json& j) {
  output out(cfg.output_path);
  out.stream() << j.dump(2) << '\n';
  out.finish();
}

std::string fmt(double x, const char* f = "%.16g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string fmt(complex z) {
  if (z.imag() == 0.0) return fmt(z.real());
  return fmt(z.real()) + (std::signbit(z.imag()) ? " - " : " + ") + fmt(std::abs(z.imag())) + "i";
}

window parse_window(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw domain_error("--window expects re_min,re_max,im_min,im_max");
    }
  }
  if (v.size() != 4) throw domain_error("--window expects re_min,re_max,im_min,im_max");
  return {v[0], v[1], v[2], v[3]};
}

operator_spectrum parse_spectrum(const std::string& text) {
  if (text == "primes") return operator_spectrum::primes();
  if (text.rfind("power:", 0) == 0) {
    const auto arg = text.substr(6);
    std::size_t used = 0;
    int p = 0;
    try {
      p = std::stoi(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != arg.size()) throw domain_error("power:<p> needs an integer exponent");
    return operator_spectrum::power_law(p);
  }
  if (text.rfind("file:", 0) == 0) return load_explicit_spectrum(text.substr(5));
  throw domain_error("--spectrum expects power:<p>, primes or file:<path>");
}

// Lazily built shared state; the sieve and zeros are only computed when a
// subcommand needs them.
class context {
 public:
  explicit context(run_config cfg) : cfg_(std::move(cfg)) {}

  const run_config& cfg() const { return cfg_; }
  const zeta_engine& engine() const { return engine_; }

  const number_tables& tables() {
    if (!tables_) tables_ = std::make_unique<number_tables>(cfg_.sieve_limit);
    return *tables_;
  }

  zeros_table zeros() {
    if (!cfg_.zeros_file.empty()) return load_zeros(cfg_.zeros_file);
    return find_zeros(engine_, 0.0, default_zero_height);
  }

  const prime_zeta& pz() {
    if (!pz_) {
      prime_zeta_config pc;
      pc.tolerance = cfg_.tolerance;
      pc.k_max = cfg_.k_max;
      pc.exclusion_radius = cfg_.exclusion_radius;
      pz_ = std::make_unique<prime_zeta>(tables(), zeros(), pc, engine_);
    }
    return *pz_;
  }

 private:
  run_config cfg_;
  zeta_engine engine_;
  std::unique_ptr<number_tables> tables_;
  std::unique_ptr<prime_zeta> pz_;
};

void require_format(const run_config& cfg, std::initializer_list<const char*> allowed) {
  if (cfg.format.empty()) return;
  for (const char* a : allowed) {
    if (cfg.format == a) return;
  }
  throw domain_error("--format " + cfg.format + " is not supported by this subcommand");
}

// ---- subcommands ----------------------------------------------------------

int cmd_zeta(context& ctx, double re, double im) {
  require_format(ctx.cfg(), {"json", "text"});
  const auto r = ctx.engine().evaluate(complex(re, im));
  if (ctx.cfg().format_or("json") == "text") {
    output out(ctx.cfg().output_path);
    out.stream() << "zeta(" << fmt(complex(re, im)) << ") = " << fmt(r.value) << '\n'
                 << "method: " << to_string(r.method) << '\n'
                 << "error estimate: " << fmt(r.error_estimate, "%.3g") << '\n';
    out.finish();
  } else {
    json payload = to_json(r);
    payload["s"] = to_json(complex(re, im));
    emit_json(ctx.cfg(), report("zeta", std::move(payload)));
  }
  return exit_ok;
}

int cmd_prime_zeta(context& ctx, double re, double im) {
  require_format(ctx.cfg(), {"json", "text"});
  const complex s(re, im);
  const auto v = ctx.pz().continued(s);
  if (ctx.cfg().format_or("json") == "text") {
    output out(ctx.cfg().output_path);
    out.stream() << "P(" << fmt(s) << ") = " << fmt(v.value) << '\n'
                 << "k used: " << v.k_used << '\n'
                 << "error estimate: " << fmt(v.error_estimate, "%.3g") << '\n'
                 << "branch flags:";
    for (long k : v.branch_flags) out.stream() << ' ' << k;
    out.stream() << (v.branch_flags.empty() ? " none\n" : "\n");
    out.finish();
  } else {
    json payload = to_json(v);
    payload["s"] = to_json(s);
    emit_json(ctx.cfg(), report("prime_zeta", std::move(payload)));
  }
  return exit_ok;
}

int cmd_scan(context& ctx, const std::string& window_text, int nx, int ny) {
  require_format(ctx.cfg(), {"csv", "json"});
  const auto bounds = parse_window(window_text);
  if (!(bounds.re_min > 0.0)) {
    throw no_continuation_error("scan: the prime zeta function has no continuation to Re(s) <= 0");
  }
  const auto points = strip_scan(ctx.pz(), bounds, nx, ny);
  if (ctx.cfg().format_or("csv") == "json") {
    json rows = json::array();
    for (const auto& p : points) {
      json row{{"sigma", p.sigma}, {"tau", p.tau}, {"flag", std::string(to_string(p.flag))}};
      row["value"] = p.value ? to_json(*p.value) : json(nullptr);
      rows.push_back(std::move(row));
    }
    emit_json(ctx.cfg(), report("scan", {{"nx", nx}, {"ny", ny}, {"points", std::move(rows)}}));
  } else {
    output out(ctx.cfg().output_path);
    write_scan_csv(out.stream(), points);
    out.finish();
  }
  return exit_ok;
}

int cmd_singularities(context& ctx, const std::string& window_text) {
  require_format(ctx.cfg(), {"json"});
  const auto bounds = parse_window(window_text);
  const auto catalog = make_singularity_catalog(bounds, ctx.cfg().k_max, ctx.zeros(), ctx.tables());
  emit_json(ctx.cfg(), report("singularities", to_json(catalog)));
  return exit_ok;
}

int cmd_zeros(context& ctx, double t_max) {
  require_format(ctx.cfg(), {"csv", "json"});
  zeros_table zeros;
  if (!ctx.cfg().zeros_file.empty()) {
    zeros = load_zeros(ctx.cfg().zeros_file);
    std::erase_if(zeros.ordinates, [&](double t) { return t > t_max; });
  } else {
    zeros = find_zeros(ctx.engine(), 0.0, t_max);
  }
  if (ctx.cfg().format == "json") {
    emit_json(ctx.cfg(), report("zeros", {{"t_max", t_max}, {"ordinates", zeros.ordinates}}));
  } else {
    output out(ctx.cfg().output_path);
    write_zeros(out.stream(), zeros);
    out.finish();
  }
  return exit_ok;
}

void print_verdict_text(std::ostream& os, const operator_spectrum& spectrum,
                        const regularization_verdict& v) {
  os << "spectrum: " << spectrum.description << '\n';
  if (const auto* r = std::get_if<regularized>(&v.status)) {
    os << "status: Regularized\n"
       << "zeta_D(0) = " << fmt(r->zeta_at_0) << '\n'
       << "zeta_D'(0) = " << fmt(r->zeta_prime_at_0) << '\n'
       << "ln det = " << fmt(r->ln_det) << '\n'
       << "W[0] = " << fmt(r->w0) << "  (mu = " << fmt(r->mu) << ")\n"
       << "error estimate: " << fmt(r->error_estimate, "%.3g") << '\n';
    return;
  }
  const auto& n = std::get<not_regularizable>(v.status);
  os << "status: NotRegularizable\n" << "reason: " << n.reason << '\n';
  for (const auto& d : n.diagnostics) os << "  - " << d << '\n';
}

int cmd_det(context& ctx, const std::string& spectrum_text, double mu) {
  require_format(ctx.cfg(), {"json", "text"});
  const auto spectrum = parse_spectrum(spectrum_text);
  if (!(mu > 0.0)) throw domain_error("--mu must be positive");
  // Only the prime spectrum consults the sieve and the zeros.
  const number_tables small(2);
  const prime_zeta local(small, zeros_table{}, {}, ctx.engine());
  const prime_zeta& pz = spectrum.is_primes() ? ctx.pz() : local;
  const auto verdict = regularized_log_det(spectrum, mu, pz);
  if (ctx.cfg().format_or("json") == "text") {
    output out(ctx.cfg().output_path);
    print_verdict_text(out.stream(), spectrum, verdict);
    out.finish();
  } else {
    json payload = to_json(verdict);
    payload["spectrum"] = spectrum.description;
    emit_json(ctx.cfg(), report("det", std::move(payload)));
  }
  return exit_ok;
}

int cmd_cutoff(context& ctx, const std::string& spectrum_text, double eps_min, double eps_max,
               int points, bool with_log) {
  require_format(ctx.cfg(), {"json", "csv"});
  const auto spectrum = parse_spectrum(spectrum_text);
  const number_tables small(2);
  const number_tables& tables = spectrum.is_primes() ? ctx.tables() : small;
  const auto fit = fit_cutoff(spectrum, log_spaced(eps_min, eps_max, points), with_log, tables);
  if (ctx.cfg().format == "csv") {
    output out(ctx.cfg().output_path);
    out.stream() << "epsilon,energy\n";
    for (std::size_t i = 0; i < fit.epsilons.size(); ++i) {
      out.stream() << fmt(fit.epsilons[i], "%.17g") << ',' << fmt(fit.energies[i], "%.17g") << '\n';
    }
    out.finish();
  } else {
    json payload = to_json(fit);
    payload["spectrum"] = spectrum.description;
    payload["with_log"] = with_log;
    emit_json(ctx.cfg(), report("cutoff", std::move(payload)));
  }
  return exit_ok;
}

int cmd_pnt(context& ctx, std::vector<double> xs) {
  require_format(ctx.cfg(), {"csv", "json"});
  if (xs.empty()) {
    for (double x = 1e3; x <= static_cast<double>(ctx.cfg().sieve_limit); x *= 10.0) xs.push_back(x);
  }
  const auto rows = pnt_table(xs, ctx.tables());
  if (ctx.cfg().format == "json") {
    emit_json(ctx.cfg(), report("pnt", {{"rows", to_json(std::span<const pnt_row>(rows))}}));
  } else {
    output out(ctx.cfg().output_path);
    write_pnt_csv(out.stream(), rows);
    out.finish();
  }
  return exit_ok;
}

int run(int argc, char** argv) {
  CLI::App app{"Riemann and prime zeta functions, spectral determinants and cutoff fits"};
  app.require_subcommand(1);
  app.fallthrough();

  run_config cfg;
  app.add_option("--tol", cfg.tolerance, "prime zeta truncation tolerance")->capture_default_str();
  app.add_option("--sieve-limit", cfg.sieve_limit, "largest integer sieved")->capture_default_str();
  app.add_option("--k-max", cfg.k_max, "largest k whose singular points are checked")
      ->capture_default_str();
  app.add_option("--exclusion-radius", cfg.exclusion_radius, "radius refused around singular points")
      ->capture_default_str();
  app.add_option("--zeros-file", cfg.zeros_file, "zeta zero ordinates, one per line")
      ->check(CLI::ExistingFile);
  app.add_option("--out", cfg.output_path, "write output here instead of stdout");
  app.add_option("--format", cfg.format, "csv, json or text")
      ->check(CLI::IsMember({"csv", "json", "text"}));

  double re = 0.0;
  double im = 0.0;
  std::string window_text;
  int nx = 41;
  int ny = 41;
  double t_max = 30.0;
  std::string spectrum_text;
  double mu = 1.0;
  double eps_min = 0.005;
  double eps_max = 0.05;
  int points = 12;
  bool with_log = false;
  std::vector<double> xs;

  auto* zeta = app.add_subcommand("zeta", "Riemann zeta at s = re + i im");
  zeta->add_option("--re", re)->required();
  zeta->add_option("--im", im)->capture_default_str();

  auto* pzeta = app.add_subcommand("prime-zeta", "prime zeta function at s = re + i im");
  pzeta->add_option("--re", re)->required();
  pzeta->add_option("--im", im)->capture_default_str();

  auto* scan = app.add_subcommand("scan", "|P| on a grid, CSV");
  scan->add_option("--window", window_text, "re_min,re_max,im_min,im_max")->required();
  scan->add_option("--nx", nx)->capture_default_str()->check(CLI::PositiveNumber);
  scan->add_option("--ny", ny)->capture_default_str()->check(CLI::PositiveNumber);

  auto* sing = app.add_subcommand("singularities", "singular points of P in a window, JSON");
  sing->add_option("--window", window_text, "re_min,re_max,im_min,im_max")->required();

  auto* zeros = app.add_subcommand("zeros", "zeta zero ordinates in (0, t-max]");
  zeros->add_option("--t-max", t_max)->capture_default_str();

  auto* det = app.add_subcommand("det", "zeta-regularized determinant verdict");
  det->add_option("--spectrum", spectrum_text, "power:<p>, primes or file:<path>")->required();
  det->add_option("--mu", mu)->capture_default_str();

  auto* cutoff = app.add_subcommand("cutoff", "exponential cutoff energy fit");
  cutoff->add_option("--spectrum", spectrum_text, "power:<p>, primes or file:<path>")->required();
  cutoff->add_option("--eps-min", eps_min)->capture_default_str();
  cutoff->add_option("--eps-max", eps_max)->capture_default_str();
  cutoff->add_option("--points", points)->capture_default_str();
  cutoff->add_flag("--with-log", with_log, "add the logarithmic basis terms");

  auto* pnt = app.add_subcommand("pnt", "prime counting against x/ln x and Li(x)");
  pnt->add_option("--x", xs, "evaluation points (default powers of ten)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  cfg.validate();
  context ctx(cfg);
  if (*zeta) return cmd_zeta(ctx, re, im);
  if (*pzeta) return cmd_prime_zeta(ctx, re, im);
  if (*scan) return cmd_scan(ctx, window_text, nx, ny);
  if (*sing) return cmd_singularities(ctx, window_text);
  if (*zeros) return cmd_zeros(ctx, t_max);
  if (*det) return cmd_det(ctx, spectrum_text, mu);
  if (*cutoff) return cmd_cutoff(ctx, spectrum_text, eps_min, eps_max, points, with_log);
  if (*pnt) return cmd_pnt(ctx, xs);
  return exit_usage;
}

int fail(int code, const std::exception& e) {
  std::cerr << "zetareg: " << e.what() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const pole_error& e) {
    return fail(exit_pole, e);
  } catch (const singularity_error& e) {
    return fail(exit_singularity, e);
  } catch (const no_continuation_error& e) {
    return fail(exit_no_continuation, e);
  } catch (const domain_error& e) {
    return fail(exit_domain, e);
  } catch (const range_error& e) {
    return fail(exit_range, e);
  } catch (const accuracy_error& e) {
    return fail(exit_accuracy, e);
  } catch (const conditioning_error& e) {
    return fail(exit_conditioning, e);
  } catch (const io_error& e) {
    return fail(exit_io, e);
  } catch (const std::exception& e) {
    return fail(exit_usage, e);
  }
}
