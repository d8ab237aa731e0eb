#include "zetareg/zeros.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "zetareg/errors.hpp"

namespace zetareg {

namespace {
constexpr double bisection_width = 1e-11;
}

zeros_table find_zeros(const zeta_engine& engine, double t_min, double t_max, double step) {
  if (!(t_min >= 0.0) || !(t_min < t_max)) throw domain_error("find_zeros requires 0 <= t_min < t_max");
  if (t_max > engine.config().im_domain_limit) {
    throw accuracy_error("find_zeros: t_max exceeds the continuation height limit");
  }
  if (!(step > 0.0)) throw domain_error("find_zeros: step must be positive");

  auto f = [&](double t) { return engine.xi(complex(0.5, t)).real(); };
  zeros_table out;
  const auto steps = static_cast<std::size_t>(std::ceil((t_max - t_min) / step));
  double lo = t_min;
  double f_lo = f(lo);
  for (std::size_t i = 1; i <= steps; ++i) {
    const double hi = std::min(t_max, t_min + static_cast<double>(i) * step);
    const double f_hi = f(hi);
    if (f_lo == 0.0) {
      if (lo > 0.0) out.ordinates.push_back(lo);
    } else if ((f_lo < 0.0) != (f_hi < 0.0) && f_hi != 0.0) {
      double a = lo, b = hi, fa = f_lo;
      while (b - a > bisection_width) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) {
          a = b = m;
          break;
        }
        if ((fm < 0.0) == (fa < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      out.ordinates.push_back(0.5 * (a + b));
    }
    lo = hi;
    f_lo = f_hi;
  }
  if (f_lo == 0.0 && lo > 0.0 &&
      (out.ordinates.empty() || out.ordinates.back() < lo)) {
    out.ordinates.push_back(lo);
  }
  out.source = zeros_source::computed;
  return out;
}

double max_xi_residual(const zeta_engine& engine, const zeros_table& zeros) {
  double worst = 0.0;
  for (double t : zeros.ordinates) worst = std::max(worst, std::abs(engine.xi(complex(0.5, t))));
  return worst;
}

void write_zeros(std::ostream& out, const zeros_table& zeros) {
  char buf[64];
  for (double t : zeros.ordinates) {
    std::snprintf(buf, sizeof buf, "%.9f\n", t);
    out << buf;
  }
}

zeros_table read_zeros(std::istream& in) {
  zeros_table out;
  out.source = zeros_source::loaded;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line.substr(first));
    double t = 0.0;
    std::string rest;
    if (!(ls >> t) || (ls >> rest) || !std::isfinite(t) || t <= 0.0) {
      throw io_error("zeros file line " + std::to_string(line_no) + ": expected a positive ordinate");
    }
    if (!out.ordinates.empty() && t <= out.ordinates.back()) {
      throw io_error("zeros file line " + std::to_string(line_no) + ": ordinates must increase");
    }
    out.ordinates.push_back(t);
  }
  return out;
}

zeros_table load_zeros(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open zeros file " + path.string());
  return read_zeros(in);
}

}  // namespace zetareg
