#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace skewjensen {

/// Default smoothing floor applied at ingestion.
inline constexpr double kDefaultSmoothing = 1e-9;
/// Tolerance on |sum - 1| for a vector to count as normalized.
inline constexpr double kNormalizationTolerance = 1e-9;

/// Discrete probability vector with d >= 2 strictly positive bins summing to 1.
class Histogram {
 public:
  /// Validates without modifying; throws DomainError / DimensionError.
  explicit Histogram(std::vector<double> bins);

  std::span<const double> bins() const { return bins_; }
  const std::vector<double>& values() const { return bins_; }
  std::size_t size() const { return bins_.size(); }
  double operator[](std::size_t i) const { return bins_[i]; }

  friend bool operator==(const Histogram&, const Histogram&) = default;

 private:
  std::vector<double> bins_;
};

/// Raises every bin to at least `epsilon` and rescales so the bins sum to one.
///
/// Bins raised to the floor stay exactly at `epsilon`; the remaining mass is
/// rescaled proportionally. A row that needs no clamping and already sums to
/// one within `tolerance` is returned unchanged, so smoothing is idempotent.
/// Throws DomainError on negative or non-finite entries and on all-zero rows.
Histogram smooth_histogram(std::vector<double> raw, double epsilon = kDefaultSmoothing,
                           double tolerance = kNormalizationTolerance);

/// Non-negative, not necessarily normalized, vector with at least one positive entry.
class PositiveMeasure {
 public:
  explicit PositiveMeasure(std::vector<double> mass);
  PositiveMeasure(const Histogram& h) : mass_(h.values()) {}  // NOLINT(implicit)

  std::span<const double> mass() const { return mass_; }
  std::size_t size() const { return mass_.size(); }
  double operator[](std::size_t i) const { return mass_[i]; }

 private:
  std::vector<double> mass_;
};

/// Skew parameter alpha in [0, 1].
class SkewParameter {
 public:
  explicit SkewParameter(double alpha);

  double value() const { return alpha_; }
  bool is_endpoint() const { return alpha_ == 0.0 || alpha_ == 1.0; }
  SkewParameter complement() const { return SkewParameter(1.0 - alpha_); }

 private:
  double alpha_;
};

}  // namespace skewjensen
