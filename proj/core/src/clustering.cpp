#include "skewjensen/clustering.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "skewjensen/divergences.hpp"
#include "skewjensen/error.hpp"

namespace skewjensen {

namespace {

// Portable draws: the standard distributions are implementation-defined, so
// uniform variates are built directly from the engine output.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  return std::min(n - 1, static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n)));
}

double standard_normal(std::mt19937_64& rng) {
  // Box-Muller; 1 - u keeps the log argument in (0, 1]
  const double u1 = 1.0 - uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

// Marsaglia-Tsang, with the shape < 1 boost.
double gamma_variate(double shape, std::mt19937_64& rng) {
  if (shape < 1.0) {
    const double u = 1.0 - uniform01(rng);
    return gamma_variate(shape + 1.0, rng) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double x = standard_normal(rng);
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = 1.0 - uniform01(rng);
    if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
  }
}

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_index(rng, i)]);
}

std::vector<std::vector<double>> as_vectors(const std::vector<Histogram>& hs) {
  std::vector<std::vector<double>> out;
  out.reserve(hs.size());
  for (const auto& h : hs) out.push_back(h.values());
  return out;
}

struct Assignment {
  std::vector<std::size_t> labels;
  std::vector<double> distance;
  double objective = 0.0;
};

Assignment assign(const std::vector<std::vector<double>>& points,
                  const std::vector<std::vector<double>>& centers, SkewParameter alpha,
                  const Generator& f) {
  Assignment a;
  a.labels.resize(points.size());
  a.distance.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_c = 0;
    for (std::size_t c = 0; c < centers.size(); ++c) {
      const double d = sym_skew_jensen(f, points[i], centers[c], alpha);
      if (d < best) {
        best = d;
        best_c = c;
      }
    }
    a.labels[i] = best_c;
    a.distance[i] = best;
  }
  // fixed-order reduction
  for (double d : a.distance) a.objective += d;
  return a;
}

std::vector<std::vector<double>> seed_centers(const std::vector<std::vector<double>>& points,
                                              std::size_t k, SkewParameter alpha,
                                              const Generator& f, std::mt19937_64& rng) {
  std::vector<std::vector<double>> centers;
  std::vector<bool> chosen(points.size(), false);
  std::size_t first = uniform_index(rng, points.size());
  centers.push_back(points[first]);
  chosen[first] = true;
  std::vector<double> dist(points.size(), std::numeric_limits<double>::infinity());
  while (centers.size() < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      dist[i] = std::min(dist[i], chosen[i] ? 0.0 : sym_skew_jensen(f, points[i], centers.back(), alpha));
      total += dist[i];
    }
    std::size_t pick = points.size();
    if (total > 0.0) {
      const double u = uniform01(rng) * total;
      double acc = 0.0;
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (chosen[i] || dist[i] <= 0.0) continue;
        acc += dist[i];
        pick = i;
        if (acc > u) break;
      }
    }
    if (pick == points.size()) {
      // every remaining point coincides with a center
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (!chosen[i]) {
          pick = i;
          break;
        }
      }
    }
    chosen[pick] = true;
    centers.push_back(points[pick]);
  }
  return centers;
}

// Moves the centers of empty clusters onto the points farthest from their
// current centers. Returns true if anything changed.
bool reseed_empty(const std::vector<std::vector<double>>& points,
                  std::vector<std::vector<double>>& centers, Assignment& a, SkewParameter alpha,
                  const Generator& f) {
  bool changed = false;
  for (std::size_t c = 0; c < centers.size(); ++c) {
    const bool empty = std::none_of(a.labels.begin(), a.labels.end(),
                                    [c](std::size_t l) { return l == c; });
    if (!empty) continue;
    std::size_t far = 0;
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (a.distance[i] > a.distance[far]) far = i;
    }
    centers[c] = points[far];
    a = assign(points, centers, alpha, f);
    changed = true;
  }
  return changed;
}

}  // namespace

LabeledDataset::LabeledDataset(std::vector<Histogram> items, std::vector<int> labels) {
  if (items.size() != labels.size()) {
    throw DimensionError("labeled dataset: number of labels differs from number of items");
  }
  for (std::size_t i = 0; i < items.size(); ++i) add(std::move(items[i]), labels[i]);
}

void LabeledDataset::add(Histogram item, int label) {
  if (!items_.empty() && item.size() != items_.front().size()) {
    throw DimensionError("labeled dataset: histograms have different bin counts");
  }
  items_.push_back(std::move(item));
  labels_.push_back(label);
}

std::vector<int> LabeledDataset::classes() const {
  std::vector<int> c = labels_;
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

KMeansResult kmeans(const std::vector<Histogram>& points, std::size_t k, SkewParameter alpha,
                    std::shared_ptr<const Generator> generator, std::uint64_t seed,
                    const KMeansOptions& options) {
  if (!generator) throw ConfigError("kmeans: null generator");
  if (k == 0 || k > points.size()) throw ConfigError("kmeans: need 1 <= k <= number of points");
  const auto& f = *generator;
  const auto pts = as_vectors(points);
  std::mt19937_64 rng(seed);

  KMeansResult result;
  result.centers = seed_centers(pts, k, alpha, f, rng);
  Assignment a = assign(pts, result.centers, alpha, f);
  reseed_empty(pts, result.centers, a, alpha, f);
  result.objective_trace.push_back(a.objective);

  for (std::size_t round = 1; round <= options.max_rounds; ++round) {
    for (std::size_t c = 0; c < k; ++c) {
      std::vector<std::vector<double>> members;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (a.labels[i] == c) members.push_back(pts[i]);
      }
      if (members.empty()) continue;
      CentroidOptions copt = options.centroid;
      copt.start = result.centers[c];
      const auto problem = CentroidProblem::uniform(std::move(members), alpha, generator);
      result.centers[c] = solve_centroid(problem, copt).center;
    }
    Assignment next = assign(pts, result.centers, alpha, f);
    reseed_empty(pts, result.centers, next, alpha, f);
    const bool stable = next.labels == a.labels;
    a = std::move(next);
    result.objective_trace.push_back(a.objective);
    result.rounds = round;
    if (stable) {
      result.converged = true;
      break;
    }
  }
  result.assignments = a.labels;
  return result;
}

std::map<int, CentroidResult> class_centroids(const LabeledDataset& data, SkewParameter alpha,
                                              std::shared_ptr<const Generator> generator,
                                              const CentroidOptions& options) {
  if (data.empty()) throw ConfigError("class_centroids: empty dataset");
  std::map<int, std::vector<std::vector<double>>> members;
  for (std::size_t i = 0; i < data.size(); ++i) {
    members[data.labels()[i]].push_back(data.items()[i].values());
  }
  std::map<int, CentroidResult> out;
  for (auto& [label, pts] : members) {
    const auto problem = CentroidProblem::uniform(std::move(pts), alpha, generator);
    out.emplace(label, solve_centroid(problem, options));
  }
  return out;
}

int nn_classify(std::span<const double> query, const std::map<int, std::vector<double>>& centers,
                SkewParameter alpha, const Generator& generator) {
  if (centers.empty()) throw ConfigError("nn_classify: no centers");
  double best = std::numeric_limits<double>::infinity();
  int best_label = centers.begin()->first;
  for (const auto& [label, center] : centers) {
    const double d = sym_skew_jensen(generator, query, center, alpha);
    if (d < best) {
      best = d;
      best_label = label;
    }
  }
  return best_label;
}

std::vector<double> default_alpha_grid() {
  return {0.01, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5};
}

SweepReport alpha_sweep(const LabeledDataset& data, std::span<const double> alphas,
                        std::shared_ptr<const Generator> generator, const SweepOptions& options) {
  if (!generator) throw ConfigError("alpha_sweep: null generator");
  if (alphas.empty()) throw ConfigError("alpha_sweep: empty alpha grid");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] >= 0.0 && alphas[i] <= 0.5)) {
      throw ConfigError("alpha_sweep: alphas must lie in [0, 1/2]");
    }
    if (i > 0 && !(alphas[i] > alphas[i - 1])) {
      throw ConfigError("alpha_sweep: alphas must be strictly increasing");
    }
  }
  if (!options.insample && !(options.split > 0.0 && options.split < 1.0)) {
    throw ConfigError("alpha_sweep: split must lie in (0, 1)");
  }

  const auto classes = data.classes();
  if (classes.size() < 2) throw ConfigError("alpha_sweep: need at least two classes");

  LabeledDataset train;
  LabeledDataset test;
  if (options.insample) {
    train = data;
    test = data;
  } else {
    std::mt19937_64 rng(options.seed);
    for (int label : classes) {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < data.size(); ++i) {
        if (data.labels()[i] == label) idx.push_back(i);
      }
      shuffle(idx, rng);
      const auto n_train =
          static_cast<std::size_t>(std::llround(options.split * static_cast<double>(idx.size())));
      if (n_train == 0 || n_train == idx.size()) {
        std::ostringstream os;
        os << "alpha_sweep: split " << options.split << " leaves class " << label
           << " without train or test items";
        throw ConfigError(os.str());
      }
      std::sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
      std::sort(idx.begin() + static_cast<std::ptrdiff_t>(n_train), idx.end());
      for (std::size_t r = 0; r < idx.size(); ++r) {
        (r < n_train ? train : test).add(data.items()[idx[r]], label);
      }
    }
  }

  SweepReport report;
  report.rows.resize(alphas.size());
  std::vector<std::exception_ptr> errors(alphas.size());

  auto run_cell = [&](std::size_t cell) {
    const SkewParameter alpha(alphas[cell]);
    const auto fitted = class_centroids(train, alpha, generator, options.centroid);
    std::map<int, std::vector<double>> centers;
    SweepRow row;
    row.alpha = alphas[cell];
    double iters = 0.0;
    for (const auto& [label, res] : fitted) {
      centers.emplace(label, res.center);
      row.centroid_iterations.emplace(label, res.iterations);
      iters += static_cast<double>(res.iterations);
    }
    row.mean_iterations = iters / static_cast<double>(fitted.size());
    std::map<int, std::size_t> hits;
    std::map<int, std::size_t> totals;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < test.size(); ++i) {
      const int truth = test.labels()[i];
      const int guess = nn_classify(test.items()[i].bins(), centers, alpha, *generator);
      ++totals[truth];
      if (guess == truth) {
        ++hits[truth];
        ++correct;
      }
    }
    row.accuracy = static_cast<double>(correct) / static_cast<double>(test.size());
    for (const auto& [label, n] : totals) {
      row.class_accuracy[label] = static_cast<double>(hits[label]) / static_cast<double>(n);
    }
    report.rows[cell] = std::move(row);
  };

  unsigned workers = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(alphas.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t cell = next++; cell < alphas.size(); cell = next++) {
      try {
        run_cell(cell);
      } catch (...) {
        errors[cell] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return report;
}

LabeledDataset synth_dataset(const std::vector<Histogram>& prototypes, double concentration,
                             std::size_t n_per_class, std::uint64_t seed, double epsilon) {
  if (!(concentration > 0.0) || !std::isfinite(concentration)) {
    throw ConfigError("synth_dataset: concentration must be positive and finite");
  }
  if (n_per_class == 0) throw ConfigError("synth_dataset: classes must not be empty");
  if (prototypes.empty()) throw ConfigError("synth_dataset: no prototypes");
  std::mt19937_64 rng(seed);
  LabeledDataset out;
  for (std::size_t c = 0; c < prototypes.size(); ++c) {
    const auto& proto = prototypes[c];
    for (std::size_t n = 0; n < n_per_class; ++n) {
      std::vector<double> draw(proto.size());
      for (std::size_t j = 0; j < draw.size(); ++j) draw[j] = gamma_variate(concentration * proto[j], rng);
      double total = std::accumulate(draw.begin(), draw.end(), 0.0);
      if (!(total > 0.0)) {
        // every coordinate underflowed; fall back to the prototype
        draw = proto.values();
        total = 1.0;
      }
      for (double& v : draw) v /= total;
      out.add(smooth_histogram(std::move(draw), epsilon), static_cast<int>(c) + 1);
    }
  }
  return out;
}

}  // namespace skewjensen
