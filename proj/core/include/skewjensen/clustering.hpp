#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "skewjensen/centroids.hpp"
#include "skewjensen/generators.hpp"
#include "skewjensen/histogram.hpp"

namespace skewjensen {

/// Histograms with integer class labels.
class LabeledDataset {
 public:
  LabeledDataset() = default;
  /// Throws DimensionError on size mismatch or mixed histogram lengths.
  LabeledDataset(std::vector<Histogram> items, std::vector<int> labels);

  void add(Histogram item, int label);

  const std::vector<Histogram>& items() const { return items_; }
  const std::vector<int>& labels() const { return labels_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  /// Sorted distinct labels.
  std::vector<int> classes() const;

 private:
  std::vector<Histogram> items_;
  std::vector<int> labels_;
};

struct KMeansOptions {
  std::size_t max_rounds = 100;
  CentroidOptions centroid;
};

struct KMeansResult {
  std::vector<std::size_t> assignments;
  std::vector<std::vector<double>> centers;
  /// Sum of sym_skew_jensen(point, assigned center) after seeding and after each round.
  std::vector<double> objective_trace;
  std::size_t rounds = 0;
  bool converged = false;
};

/// Lloyd iteration under sym_skew_jensen: seeding by divergence-weighted
/// sampling (k-means++ style), assignment to the nearest center (lowest index
/// on ties), centers re-solved by CCCP warm-started at the previous center.
/// An empty cluster is re-seeded at the point farthest from its own center.
KMeansResult kmeans(const std::vector<Histogram>& points, std::size_t k, SkewParameter alpha,
                    std::shared_ptr<const Generator> generator, std::uint64_t seed,
                    const KMeansOptions& options = {});

/// Uniform-weight centroid of every class. Centers live in the positive
/// orthant and are not projected onto the simplex.
std::map<int, CentroidResult> class_centroids(const LabeledDataset& data, SkewParameter alpha,
                                              std::shared_ptr<const Generator> generator,
                                              const CentroidOptions& options = {});

/// Class whose center minimizes sym_skew_jensen(query, center); ties go to the
/// smallest class id.
int nn_classify(std::span<const double> query, const std::map<int, std::vector<double>>& centers,
                SkewParameter alpha, const Generator& generator);

struct SweepOptions {
  double split = 0.5;
  std::uint64_t seed = 42;
  /// Train and test on every item instead of a stratified split.
  bool insample = false;
  /// Worker threads for independent alpha cells; 0 picks the hardware count.
  unsigned threads = 0;
  CentroidOptions centroid;
};

struct SweepRow {
  double alpha = 0.0;
  double accuracy = 0.0;
  std::map<int, double> class_accuracy;
  std::map<int, std::size_t> centroid_iterations;
  double mean_iterations = 0.0;
};

struct SweepReport {
  std::vector<SweepRow> rows;
};

/// Nearest-centroid classification accuracy for every alpha in `alphas`
/// (strictly increasing, within [0, 1/2]). Deterministic for a fixed seed
/// regardless of the worker count. Throws ConfigError for a degenerate split.
SweepReport alpha_sweep(const LabeledDataset& data, std::span<const double> alphas,
                        std::shared_ptr<const Generator> generator,
                        const SweepOptions& options = {});

/// Default alpha grid {0.01, 0.05, 0.10, ..., 0.50}.
std::vector<double> default_alpha_grid();

/// Samples `n_per_class` histograms per prototype from
/// Dirichlet(concentration * prototype); class i gets label i + 1. Samples
/// are smoothed with `epsilon`.
LabeledDataset synth_dataset(const std::vector<Histogram>& prototypes, double concentration,
                             std::size_t n_per_class, std::uint64_t seed,
                             double epsilon = kDefaultSmoothing);

}  // namespace skewjensen
