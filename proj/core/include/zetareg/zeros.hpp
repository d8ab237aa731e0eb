#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "zetareg/zeta.hpp"

namespace zetareg {

enum class zeros_source { computed, loaded };

/// Heights t_j > 0 of nontrivial zeros 1/2 + i t_j, strictly increasing.
struct zeros_table {
  std::vector<double> ordinates;
  zeros_source source = zeros_source::computed;
};

/// Locates zeros of xi on the critical line in [t_min, t_max] by scanning
/// Re xi(1/2 + i t) with the given step and bisecting each sign change to
/// a bracket narrower than 1e-11. Zeros closer together than `step` can be
/// missed.
zeros_table find_zeros(const zeta_engine& engine, double t_min, double t_max, double step = 0.1);

/// Largest |xi(1/2 + i t)| over the table; used to validate loaded files.
double max_xi_residual(const zeta_engine& engine, const zeros_table& zeros);

/// Text format: one decimal ordinate per line, '#' lines ignored.
void write_zeros(std::ostream& out, const zeros_table& zeros);
zeros_table read_zeros(std::istream& in);
zeros_table load_zeros(const std::filesystem::path& path);

}  // namespace zetareg
