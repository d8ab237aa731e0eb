#include "zetareg/serialize.hpp"

#include <cstdio>
#include <variant>

namespace zetareg {

using nlohmann::json;

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string_view to_string(singularity_kind k) {
  return k == singularity_kind::pole_image ? "pole_image" : "zero_image";
}

}  // namespace

json to_json(complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const zeta_result& r) {
  return json{{"value", to_json(r.value)},
              {"method", std::string(to_string(r.method))},
              {"error_estimate", r.error_estimate}};
}

json to_json(const prime_zeta_value& v) {
  return json{{"value", to_json(v.value)},
              {"k_used", v.k_used},
              {"error_estimate", v.error_estimate},
              {"branch_flags", v.branch_flags}};
}

json to_json(const singular_point& p) {
  json j{{"location", to_json(p.location)}, {"kind", std::string(to_string(p.kind))}, {"k", p.k}};
  j["zero_index"] = p.zero_index ? json(*p.zero_index) : json(nullptr);
  return j;
}

json to_json(const singularity_catalog& c) {
  json entries = json::array();
  for (const auto& p : c.entries) entries.push_back(to_json(p));
  return json{{"window",
               {{"re_min", c.bounds.re_min},
                {"re_max", c.bounds.re_max},
                {"im_min", c.bounds.im_min},
                {"im_max", c.bounds.im_max}}},
              {"k_max", c.k_max},
              {"zeros_used", c.zeros_used},
              {"count", c.entries.size()},
              {"entries", std::move(entries)}};
}

json to_json(const regularization_verdict& v) {
  if (const auto* r = std::get_if<regularized>(&v.status)) {
    return json{{"status", "Regularized"},
                {"zeta_at_0", to_json(r->zeta_at_0)},
                {"zeta_prime_at_0", to_json(r->zeta_prime_at_0)},
                {"ln_det", to_json(r->ln_det)},
                {"w0", to_json(r->w0)},
                {"mu", r->mu},
                {"error_estimate", r->error_estimate},
                {"diagnostics", json::array()}};
  }
  const auto& n = std::get<not_regularizable>(v.status);
  json points = json::array();
  for (const auto& p : n.accumulating_points) points.push_back(to_json(p));
  json samples = json::array();
  for (const auto& s : n.boundary_samples) samples.push_back({{"sigma", s.sigma}, {"abs_p", s.abs_p}});
  return json{{"status", "NotRegularizable"},
              {"reason", n.reason},
              {"diagnostics", n.diagnostics},
              {"accumulating_points", std::move(points)},
              {"boundary_samples", std::move(samples)},
              {"smallest_admissible_sigma", n.smallest_admissible_sigma}};
}

json to_json(const cutoff_fit& f) {
  json coeffs = json::array();
  for (std::size_t i = 0; i < f.basis.size(); ++i) {
    coeffs.push_back({{"basis", f.basis[i]}, {"value", f.coefficients[i]}});
  }
  json points = json::array();
  for (std::size_t i = 0; i < f.epsilons.size(); ++i) {
    points.push_back({{"epsilon", f.epsilons[i]}, {"energy", f.energies[i]}});
  }
  return json{{"finite_part", f.finite_part},
              {"stability", f.stability},
              {"residual", f.residual},
              {"coefficients", std::move(coeffs)},
              {"points", std::move(points)}};
}

json to_json(std::span<const pnt_row> rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"x", r.x},
                   {"prime_count", r.prime_count},
                   {"x_over_log_x", r.x_over_log_x},
                   {"log_integral", r.log_integral}});
  }
  return out;
}

json report(std::string_view kind, json payload) {
  json out{{"schema_version", schema_version}, {"kind", std::string(kind)}};
  for (auto& [key, value] : payload.items()) out[key] = std::move(value);
  return out;
}

void write_scan_csv(std::ostream& out, std::span<const scan_point> points) {
  out << scan_csv_header << '\n';
  for (const auto& p : points) {
    out << fmt(p.sigma) << ',' << fmt(p.tau) << ',';
    if (p.value) {
      out << fmt(std::abs(*p.value)) << ',' << fmt(p.value->real()) << ',' << fmt(p.value->imag());
    } else {
      out << ",,";
    }
    out << ',' << to_string(p.flag) << '\n';
  }
}

void write_pnt_csv(std::ostream& out, std::span<const pnt_row> rows) {
  out << pnt_csv_header << '\n';
  for (const auto& r : rows) {
    out << fmt(r.x) << ',' << r.prime_count << ',' << fmt(r.x_over_log_x) << ','
        << fmt(r.log_integral) << '\n';
  }
}

}  // namespace zetareg
