#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace zetareg {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class domain_error : public error {
 public:
  using error::error;
};

/// Evaluation at (or numerically on top of) a pole.
class pole_error : public error {
 public:
  using error::error;
};

/// Index or size outside what a table or configuration supports.
class range_error : public error {
 public:
  using error::error;
};

/// The requested accuracy cannot be delivered with the current settings.
class accuracy_error : public error {
 public:
  using error::error;
};

/// Least-squares system too ill-conditioned to solve.
class conditioning_error : public error {
 public:
  using error::error;
};

/// Input file missing or malformed.
class io_error : public error {
 public:
  using error::error;
};

/// Prime zeta requested at Re(s) <= 0, where no continuation exists.
class no_continuation_error : public domain_error {
 public:
  using domain_error::domain_error;
};

enum class singularity_kind { pole_image, zero_image };

/// Point lies inside the exclusion disk of a singular point of P(s).
class singularity_error : public error {
 public:
  singularity_error(const std::string& what, std::complex<double> location,
                    singularity_kind kind, long k,
                    std::optional<std::size_t> zero_index = std::nullopt)
      : error(what), location_(location), kind_(kind), k_(k), zero_index_(zero_index) {}

  std::complex<double> location() const noexcept { return location_; }
  singularity_kind kind() const noexcept { return kind_; }
  long k() const noexcept { return k_; }
  std::optional<std::size_t> zero_index() const noexcept { return zero_index_; }

 private:
  std::complex<double> location_;
  singularity_kind kind_;
  long k_;
  std::optional<std::size_t> zero_index_;
};

}  // namespace zetareg
