#include "skewjensen/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "skewjensen/error.hpp"

namespace skewjensen {

Histogram::Histogram(std::vector<double> bins) : bins_(std::move(bins)) {
  if (bins_.size() < 2) throw DimensionError("histogram needs at least 2 bins");
  double sum = 0.0;
  for (std::size_t i = 0; i < bins_.size(); ++i) {
    if (!std::isfinite(bins_[i]) || !(bins_[i] > 0.0)) {
      std::ostringstream os;
      os << "histogram bin " << i << " must be strictly positive, got " << bins_[i];
      throw DomainError(os.str());
    }
    sum += bins_[i];
  }
  if (std::abs(sum - 1.0) > kNormalizationTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "histogram bins sum to " << sum << ", expected 1";
    throw DomainError(os.str());
  }
}

Histogram smooth_histogram(std::vector<double> raw, double epsilon, double tolerance) {
  if (!(epsilon > 0.0)) throw ConfigError("smoothing epsilon must be positive");
  if (raw.size() < 2) throw DimensionError("histogram needs at least 2 bins");
  if (epsilon * static_cast<double>(raw.size()) >= 1.0) {
    throw ConfigError("smoothing epsilon too large for the number of bins");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!std::isfinite(raw[i]) || raw[i] < 0.0) {
      std::ostringstream os;
      os << "entry " << i << " is negative or not finite (" << raw[i] << ")";
      throw DomainError(os.str());
    }
    total += raw[i];
  }
  if (!(total > 0.0)) throw DomainError("degenerate row: all entries are zero");

  const bool needs_clamp = std::any_of(raw.begin(), raw.end(), [&](double v) { return v < epsilon; });
  if (!needs_clamp && std::abs(total - 1.0) <= tolerance) return Histogram(std::move(raw));

  for (double& v : raw) v /= total;

  // Water-filling: bins below the floor are pinned at epsilon, the rest share
  // the remaining mass proportionally. Rescaling can push further bins under
  // the floor, so repeat until stable (at most d passes).
  std::vector<bool> pinned(raw.size(), false);
  for (std::size_t pass = 0; pass < raw.size(); ++pass) {
    std::size_t n_pinned = 0;
    double free_mass = 0.0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (!pinned[i] && raw[i] < epsilon) pinned[i] = true;
      if (pinned[i]) {
        ++n_pinned;
      } else {
        free_mass += raw[i];
      }
    }
    const double target = 1.0 - epsilon * static_cast<double>(n_pinned);
    bool changed = false;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (pinned[i]) {
        raw[i] = epsilon;
      } else {
        raw[i] *= target / free_mass;
        if (raw[i] < epsilon) changed = true;
      }
    }
    if (!changed) break;
  }
  return Histogram(std::move(raw));
}

PositiveMeasure::PositiveMeasure(std::vector<double> mass) : mass_(std::move(mass)) {
  if (mass_.empty()) throw DimensionError("positive measure must be non-empty");
  bool any_positive = false;
  for (std::size_t i = 0; i < mass_.size(); ++i) {
    if (!std::isfinite(mass_[i]) || mass_[i] < 0.0) {
      std::ostringstream os;
      os << "positive measure entry " << i << " is negative or not finite (" << mass_[i] << ")";
      throw DomainError(os.str());
    }
    any_positive = any_positive || mass_[i] > 0.0;
  }
  if (!any_positive) throw DomainError("positive measure has no positive entry");
}

SkewParameter::SkewParameter(double alpha) : alpha_(alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    std::ostringstream os;
    os << "skew parameter alpha must lie in [0, 1], got " << alpha;
    throw ConfigError(os.str());
  }
}

}  // namespace skewjensen
