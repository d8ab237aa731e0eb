#pragma once

#include <nlohmann/json.hpp>

#include <ostream>
#include <span>
#include <string_view>

#include "zetareg/numtheory.hpp"
#include "zetareg/primezeta.hpp"
#include "zetareg/spectral.hpp"
#include "zetareg/zeta.hpp"

namespace zetareg {

inline constexpr int schema_version = 1;
inline constexpr std::string_view scan_csv_header = "sigma,tau,abs_p,re_p,im_p,flag";
inline constexpr std::string_view pnt_csv_header = "x,prime_count,x_over_log_x,log_integral";

nlohmann::json to_json(complex z);
nlohmann::json to_json(const zeta_result& r);
nlohmann::json to_json(const prime_zeta_value& v);
nlohmann::json to_json(const singular_point& p);
nlohmann::json to_json(const singularity_catalog& c);
nlohmann::json to_json(const regularization_verdict& v);
nlohmann::json to_json(const cutoff_fit& f);
nlohmann::json to_json(std::span<const pnt_row> rows);

/// Wraps a payload as {"schema_version", "kind", ...payload}.
nlohmann::json report(std::string_view kind, nlohmann::json payload);

/// Scan rows under scan_csv_header; value columns are empty where P was not
/// evaluated.
void write_scan_csv(std::ostream& out, std::span<const scan_point> points);
void write_pnt_csv(std::ostream& out, std::span<const pnt_row> rows);

}  // namespace zetareg
