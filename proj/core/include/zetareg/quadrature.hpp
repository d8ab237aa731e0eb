#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <vector>

namespace zetareg::quadrature {

template <typename T>
struct result {
  T value{};
  double error = 0.0;      // estimated absolute error
  double abs_integral = 0.0;  // integral of |f|, the scale for relative tolerances
  std::size_t evaluations = 0;
  bool converged = false;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T>
struct panel {
  double a, b;
  T value;
  double error;
  double abs_value;
};

template <typename T, typename F>
panel<T> gk15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(center);
  T kronrod = fc * kronrod_weights[7];
  T gauss = fc * gauss_weights[3];
  double abs_sum = std::abs(fc) * kronrod_weights[7];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kronrod_nodes[j];
    const T f1 = f(center - dx);
    const T f2 = f(center + dx);
    kronrod += (f1 + f2) * kronrod_weights[j];
    abs_sum += (std::abs(f1) + std::abs(f2)) * kronrod_weights[j];
    if (j % 2 == 1) gauss += (f1 + f2) * gauss_weights[j / 2];
  }
  panel<T> p{a, b, kronrod * half, 0.0, abs_sum * std::abs(half)};
  p.error = std::abs((kronrod - gauss) * half);
  return p;
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
///
/// Panels are bisected largest-error first until the summed error estimate
/// drops below max(abs_tol, rel_tol * integral of |f|) or max_panels is hit.
/// Works for real and complex integrands. Deterministic: panel order and
/// summation order depend only on (f, a, b, tolerances).
template <typename F>
auto integrate(F&& f, double a, double b, double abs_tol, double rel_tol,
               std::size_t max_panels = 4000) {
  using T = std::decay_t<decltype(f(a))>;
  using panel = detail::panel<T>;
  auto cmp = [](const panel& x, const panel& y) {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  };
  std::priority_queue<panel, std::vector<panel>, decltype(cmp)> heap(cmp);

  result<T> out;
  panel first = detail::gk15<T>(f, a, b);
  out.evaluations = 15;
  double total_error = first.error;
  double total_abs = first.abs_value;
  heap.push(first);

  while (heap.size() < max_panels) {
    if (total_error <= std::max(abs_tol, rel_tol * total_abs)) break;
    panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // interval exhausted
    heap.pop();
    panel left = detail::gk15<T>(f, worst.a, mid);
    panel right = detail::gk15<T>(f, mid, worst.b);
    out.evaluations += 30;
    total_error += left.error + right.error - worst.error;
    total_abs += left.abs_value + right.abs_value - worst.abs_value;
    heap.push(left);
    heap.push(right);
  }

  // Sum in left-to-right order so the result does not depend on heap layout.
  std::vector<panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const panel& x, const panel& y) { return x.a < y.a; });
  T sum{};
  double err = 0.0;
  double abs_sum = 0.0;
  for (const auto& p : panels) {
    sum += p.value;
    err += p.error;
    abs_sum += p.abs_value;
  }
  out.value = sum;
  out.error = err;
  out.abs_integral = abs_sum;
  out.converged = err <= std::max(abs_tol, rel_tol * abs_sum);
  return out;
}

}  // namespace zetareg::quadrature
