#include "skewjensen_cli/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "json_writer.hpp"
#include "skewjensen/centroids.hpp"
#include "skewjensen/clustering.hpp"
#include "skewjensen/divergences.hpp"
#include "skewjensen/error.hpp"
#include "skewjensen/expfam.hpp"
#include "skewjensen/generators.hpp"
#include "skewjensen/io.hpp"

namespace skewjensen::cli {

namespace {

using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 42;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SKEWJENSEN_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError("SKEWJENSEN_SEED must be a non-negative integer");
  }
  return kDefaultSeed;
}

std::vector<double> parse_list(const std::string& text, std::string_view what) {
  std::vector<double> out;
  for (const auto& row : parse_csv_rows(text, what)) out.insert(out.end(), row.begin(), row.end());
  if (out.empty()) throw ConfigError(std::string(what) + ": empty list");
  return out;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

json to_json(const std::vector<double>& v) { return json(v); }

struct Common {
  std::string input;
  std::string output;
  std::string generator = "shannon";
  double epsilon = kDefaultSmoothing;
};

IngestionConfig ingestion(const Common& c) {
  IngestionConfig cfg;
  cfg.epsilon = c.epsilon;
  cfg.validate();
  return cfg;
}

const std::vector<std::string> kMeasures = {"kl",  "ekl", "jeffreys", "js",      "k",       "k-alpha",
                                            "js-alpha", "sj",  "skl",      "l-alpha", "s-param", "phi"};

// div -------------------------------------------------------------------------

struct DivArgs {
  Common common;
  std::string measure;
  double alpha = 0.5;
  std::string phi = "jeffreys";
};

int run_div(const DivArgs& a, std::ostream& out) {
  const auto rows = read_vectors(a.common.input);
  if (rows.size() % 2 != 0) {
    throw ConfigError("div: input must contain an even number of rows (consecutive pairs)");
  }
  const auto gen = make_separable(a.common.generator);
  const bool needs_skew = a.measure == "k-alpha" || a.measure == "js-alpha" ||
                          a.measure == "sj" || a.measure == "skl" || a.measure == "l-alpha";
  std::optional<SkewParameter> alpha;
  if (needs_skew) alpha.emplace(a.alpha);

  std::vector<Histogram> hs;
  if (a.measure != "ekl") hs = to_histograms(rows, ingestion(a.common), a.common.input);

  json result = json::array();
  for (std::size_t i = 0; i + 1 < rows.size(); i += 2) {
    double v = 0.0;
    if (a.measure == "ekl") {
      v = ekl(PositiveMeasure(rows[i]), PositiveMeasure(rows[i + 1]));
    } else {
      const auto& p = hs[i];
      const auto& q = hs[i + 1];
      if (a.measure == "kl") v = kl(p, q);
      else if (a.measure == "jeffreys") v = jeffreys(p, q);
      else if (a.measure == "js") v = js(p, q);
      else if (a.measure == "k") v = k_div(p, q);
      else if (a.measure == "k-alpha") v = k_alpha(p, q, *alpha);
      else if (a.measure == "js-alpha") v = js_alpha(p, q, *alpha);
      else if (a.measure == "sj") v = sym_skew_jensen(*gen, p.bins(), q.bins(), *alpha);
      else if (a.measure == "skl") v = skl_alpha(p, q, *alpha);
      else if (a.measure == "l-alpha") v = l_alpha(p, q, *alpha);
      else if (a.measure == "s-param") v = s_param(*gen, p.bins(), q.bins(), a.alpha);
      else if (a.measure == "phi") v = phi_divergence(make_phi(a.phi), p, q);
    }
    json entry;
    entry["row_pair"] = json::array({i, i + 1});
    entry["measure"] = a.measure;
    entry["alpha"] = a.alpha;
    entry["value"] = v;
    result.push_back(std::move(entry));
  }
  emit(a.common.output, dump_json(result), out);
  return kSuccess;
}

// profile ---------------------------------------------------------------------

struct ProfileArgs {
  std::string output;
  std::string generator = "shannon";
  double x = 0.1;
  double y = 0.9;
  std::string alphas = "0.01,0.1,0.2,0.25,0.3,0.4,0.5";
  std::size_t t_steps = 101;
};

int run_profile(const ProfileArgs& a, std::ostream& out) {
  if (a.t_steps < 2) throw ConfigError("profile: --t-steps must be at least 2");
  const auto alphas = parse_list(a.alphas, "--alphas");
  std::vector<double> ts(a.t_steps);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    ts[i] = static_cast<double>(i) / static_cast<double>(a.t_steps - 1);
  }
  const auto rows = scalar_profile(make_generator(a.generator), a.x, a.y, alphas, ts);
  emit(a.output, profile_to_csv(rows), out);
  return kSuccess;
}

// natparam / bhatt ------------------------------------------------------------

std::shared_ptr<const ExponentialFamily> family_for(const std::string& name, std::size_t source_len) {
  return make_family(name, name == "multinomial" ? source_len : 0);
}

struct NatparamArgs {
  std::string input;
  std::string output;
  std::string family;
  std::string to = "natural";
};

int run_natparam(const NatparamArgs& a, std::ostream& out) {
  const auto rows = read_vectors(a.input);
  json result = json::array();
  for (const auto& row : rows) {
    if (a.to == "natural") {
      result.push_back(to_json(to_natural(family_for(a.family, row.size()), row).values()));
    } else {
      const auto fam = family_for(a.family, row.size() + 1);
      result.push_back(to_json(to_source(NaturalParam(fam, row))));
    }
  }
  emit(a.output, dump_json(result), out);
  return kSuccess;
}

struct BhattArgs {
  std::string input;
  std::string output;
  std::string family;
  double alpha = 0.5;
  std::string params = "source";
};

NaturalParam read_member(const std::string& family, const json& v, bool natural) {
  if (!v.is_array()) throw ParseError("bhatt: parameters must be JSON arrays");
  std::vector<double> x;
  for (const auto& e : v) {
    if (!e.is_number()) throw ParseError("bhatt: non-numeric parameter");
    x.push_back(e.get<double>());
  }
  if (natural) return NaturalParam(family_for(family, x.size() + 1), x);
  return to_natural(family_for(family, x.size()), x);
}

int run_bhatt(const BhattArgs& a, std::ostream& out) {
  json pairs;
  try {
    pairs = json::parse(read_text_file(a.input));
  } catch (const json::parse_error& e) {
    throw ParseError(a.input + ": " + e.what());
  }
  if (!pairs.is_array()) throw ParseError(a.input + ": expected an array of {p, q} objects");
  const SkewParameter alpha(a.alpha);
  const bool natural = a.params == "natural";
  json result = json::array();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& item = pairs[i];
    if (!item.is_object() || !item.contains("p") || !item.contains("q")) {
      throw ParseError(a.input + ": element " + std::to_string(i) + " lacks 'p' or 'q'");
    }
    const auto p = read_member(a.family, item["p"], natural);
    const auto q = read_member(a.family, item["q"], natural);
    json entry;
    entry["pair"] = i;
    entry["alpha"] = a.alpha;
    entry["bhattacharyya"] = bhattacharyya_alpha(p, q, alpha);
    entry["bhattacharyya_reverse"] = bhattacharyya_alpha(q, p, alpha);
    entry["sym_bhattacharyya"] = sym_bhattacharyya(p, q, alpha);
    result.push_back(std::move(entry));
  }
  emit(a.output, dump_json(result), out);
  return kSuccess;
}

// centroid --------------------------------------------------------------------

struct CentroidArgs {
  Common common;
  double alpha = 0.5;
  std::string init = "arith";
  double tol = 1e-10;
  std::size_t max_iter = 10000;
  std::string weights;
  bool strict = false;
};

json result_json(const CentroidResult& r) {
  json j;
  j["center"] = to_json(r.center);
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["residual"] = r.residual;
  j["energy_trace"] = to_json(r.energy_trace);
  j["endpoint"] = r.endpoint;
  return j;
}

int run_centroid(const CentroidArgs& a, std::ostream& out, std::ostream& err) {
  auto points = read_vectors(a.common.input);
  if (points.empty()) throw ConfigError("centroid: no points in " + a.common.input);
  std::vector<double> weights;
  if (a.weights.empty()) {
    weights.assign(points.size(), 1.0 / static_cast<double>(points.size()));
  } else {
    for (const auto& row : read_vectors(a.weights)) weights.insert(weights.end(), row.begin(), row.end());
    double total = 0.0;
    for (double w : weights) {
      if (!(w > 0.0)) throw ConfigError("centroid: weights must be positive");
      total += w;
    }
    for (double& w : weights) w /= total;
  }
  CentroidOptions opt;
  opt.tol = a.tol;
  opt.max_iter = a.max_iter;
  opt.init = parse_centroid_init(a.init);
  const CentroidProblem problem(std::move(points), std::move(weights), SkewParameter(a.alpha),
                                make_separable(a.common.generator));
  const auto r = solve_centroid(problem, opt);
  emit(a.common.output, dump_json(result_json(r)), out);
  if (!r.converged) {
    err << "warning: centroid did not converge within " << a.max_iter << " iterations\n";
    if (a.strict) return kNumericalFailure;
  }
  return kSuccess;
}

// kmeans ----------------------------------------------------------------------

struct KMeansArgs {
  Common common;
  std::size_t k = 2;
  double alpha = 0.5;
  std::uint64_t seed = 0;
  std::size_t max_rounds = 100;
  bool strict = false;
};

int run_kmeans(const KMeansArgs& a, std::ostream& out, std::ostream& err) {
  const auto hs = load_histograms(a.common.input, ingestion(a.common));
  KMeansOptions opt;
  opt.max_rounds = a.max_rounds;
  const auto r = kmeans(hs, a.k, SkewParameter(a.alpha), make_separable(a.common.generator), a.seed, opt);
  json j;
  j["assignments"] = r.assignments;
  json centers = json::array();
  for (const auto& c : r.centers) centers.push_back(to_json(c));
  j["centers"] = std::move(centers);
  j["objective_trace"] = to_json(r.objective_trace);
  j["rounds"] = r.rounds;
  j["converged"] = r.converged;
  emit(a.common.output, dump_json(j), out);
  if (!r.converged) {
    err << "warning: k-means assignments still changing after " << a.max_rounds << " rounds\n";
    if (a.strict) return kNumericalFailure;
  }
  return kSuccess;
}

// sweep / synth / intensity ---------------------------------------------------

struct SweepArgs {
  Common common;
  std::string alphas;
  std::uint64_t seed = 0;
  double split = 0.5;
  bool insample = false;
  unsigned threads = 0;
};

int run_sweep(const SweepArgs& a, std::ostream& out) {
  const auto data = load_labeled(a.common.input, ingestion(a.common));
  const auto alphas = a.alphas.empty() ? default_alpha_grid() : parse_list(a.alphas, "--alphas");
  SweepOptions opt;
  opt.split = a.split;
  opt.seed = a.seed;
  opt.insample = a.insample;
  opt.threads = a.threads;
  const auto report = alpha_sweep(data, alphas, make_separable(a.common.generator), opt);
  emit(a.common.output, sweep_to_csv(report), out);
  return kSuccess;
}

struct SynthArgs {
  Common common;
  double concentration = 100.0;
  std::size_t n = 100;
  std::uint64_t seed = 0;
};

int run_synth(const SynthArgs& a, std::ostream& out) {
  const auto protos = load_histograms(a.common.input, ingestion(a.common));
  const auto data = synth_dataset(protos, a.concentration, a.n, a.seed, a.common.epsilon);
  emit(a.common.output, labeled_to_csv(data), out);
  return kSuccess;
}

struct IntensityArgs {
  Common common;
  std::size_t bins = 256;
};

int run_intensity(const IntensityArgs& a, std::ostream& out) {
  IngestionConfig cfg = ingestion(a.common);
  cfg.bins = a.bins;
  const auto px = load_pixels(a.common.input);
  emit(a.common.output, histograms_to_csv({intensity_histogram(px, cfg)}), out);
  return kSuccess;
}

void add_common(CLI::App* sub, Common& c, bool with_generator, bool with_epsilon) {
  sub->add_option("--input,-i", c.input, "Input file (CSV, or JSON when the extension is .json)")
      ->required();
  sub->add_option("--output,-o", c.output, "Output file (stdout when omitted)");
  if (with_generator) {
    sub->add_option("--generator,-g", c.generator, "Convex generator")
        ->check(CLI::IsMember(generator_names()))
        ->capture_default_str();
  }
  if (with_epsilon) {
    sub->add_option("--epsilon", c.epsilon, "Smoothing floor for histogram bins")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symmetrized skew Jensen divergences, centroids and clustering"};
  app.require_subcommand(1);
  app.fallthrough(false);

  std::uint64_t seed_default = kDefaultSeed;
  try {
    seed_default = default_seed();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kUserError;
  }

  DivArgs div;
  auto* div_cmd = app.add_subcommand("div", "Divergences between consecutive row pairs");
  add_common(div_cmd, div.common, true, true);
  div_cmd->add_option("--measure,-m", div.measure, "Measure")->required()->check(CLI::IsMember(kMeasures));
  div_cmd->add_option("--alpha,-a", div.alpha, "Skew parameter (alpha' in [-1,1] for s-param)")
      ->capture_default_str();
  div_cmd->add_option("--phi", div.phi, "Phi generator for --measure phi")
      ->check(CLI::IsMember(phi_names()))
      ->capture_default_str();

  ProfileArgs prof;
  auto* prof_cmd = app.add_subcommand("profile", "Scalar base distance grid as CSV (alpha,t,sj)");
  prof_cmd->add_option("--output,-o", prof.output, "Output CSV (stdout when omitted)");
  prof_cmd->add_option("--generator,-g", prof.generator, "Convex generator")
      ->check(CLI::IsMember(generator_names()))
      ->capture_default_str();
  prof_cmd->add_option("--x", prof.x, "Start of the path x_t = (1-t) x + t y")->capture_default_str();
  prof_cmd->add_option("--y", prof.y, "Fixed second argument")->capture_default_str();
  prof_cmd->add_option("--alphas", prof.alphas, "Comma-separated alphas in (0, 1/2]")->capture_default_str();
  prof_cmd->add_option("--t-steps", prof.t_steps, "Number of t samples in [0, 1]")->capture_default_str();

  NatparamArgs nat;
  auto* nat_cmd = app.add_subcommand("natparam", "Convert between source and natural parameters");
  nat_cmd->add_option("--input,-i", nat.input, "JSON array of parameter vectors")->required();
  nat_cmd->add_option("--output,-o", nat.output, "Output JSON (stdout when omitted)");
  nat_cmd->add_option("--family,-f", nat.family, "Exponential family")
      ->required()
      ->check(CLI::IsMember({"multinomial", "gaussian", "poisson"}));
  nat_cmd->add_option("--to", nat.to, "Target parametrization")
      ->check(CLI::IsMember({"natural", "source"}))
      ->capture_default_str();

  BhattArgs bh;
  auto* bh_cmd = app.add_subcommand("bhatt", "Skew Bhattacharyya divergences in closed form");
  bh_cmd->add_option("--input,-i", bh.input, "JSON array of {\"p\": [...], \"q\": [...]}")->required();
  bh_cmd->add_option("--output,-o", bh.output, "Output JSON (stdout when omitted)");
  bh_cmd->add_option("--family,-f", bh.family, "Exponential family")
      ->required()
      ->check(CLI::IsMember({"multinomial", "gaussian", "poisson"}));
  bh_cmd->add_option("--alpha,-a", bh.alpha, "Skew parameter")->capture_default_str();
  bh_cmd->add_option("--params", bh.params, "Parametrization of the input pairs")
      ->check(CLI::IsMember({"source", "natural"}))
      ->capture_default_str();

  CentroidArgs cen;
  auto* cen_cmd = app.add_subcommand("centroid", "CCCP centroid of a weighted point set");
  add_common(cen_cmd, cen.common, true, false);
  cen_cmd->add_option("--alpha,-a", cen.alpha, "Skew parameter")->capture_default_str();
  cen_cmd->add_option("--init", cen.init, "Initialization")
      ->check(CLI::IsMember({"arith", "quasi"}))
      ->capture_default_str();
  cen_cmd->add_option("--tol", cen.tol, "Sup-norm tolerance on the update")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cen_cmd->add_option("--max-iter", cen.max_iter, "Iteration cap")->capture_default_str();
  cen_cmd->add_option("--weights,-w", cen.weights, "Weights file (uniform when omitted)");
  cen_cmd->add_flag("--strict", cen.strict, "Exit with code 2 when not converged");

  KMeansArgs km;
  km.seed = seed_default;
  auto* km_cmd = app.add_subcommand("kmeans", "k-means clustering of histograms");
  add_common(km_cmd, km.common, true, true);
  km_cmd->add_option("--k,-k", km.k, "Number of clusters")->capture_default_str();
  km_cmd->add_option("--alpha,-a", km.alpha, "Skew parameter")->capture_default_str();
  km_cmd->add_option("--seed", km.seed, "Random seed (default from SKEWJENSEN_SEED)")->capture_default_str();
  km_cmd->add_option("--max-rounds", km.max_rounds, "Lloyd round cap")->capture_default_str();
  km_cmd->add_flag("--strict", km.strict, "Exit with code 2 when not converged");

  SweepArgs sw;
  sw.seed = seed_default;
  auto* sw_cmd = app.add_subcommand("sweep", "Nearest-centroid accuracy over an alpha grid");
  add_common(sw_cmd, sw.common, true, true);
  sw_cmd->add_option("--alphas", sw.alphas, "Comma-separated alphas in [0, 1/2] (default grid 0.01..0.5)");
  sw_cmd->add_option("--seed", sw.seed, "Random seed (default from SKEWJENSEN_SEED)")->capture_default_str();
  sw_cmd->add_option("--split", sw.split, "Train fraction per class")->capture_default_str();
  sw_cmd->add_flag("--insample", sw.insample, "Train and test on all items");
  sw_cmd->add_option("--threads", sw.threads, "Worker threads (0 = hardware)")->capture_default_str();

  SynthArgs sy;
  sy.seed = seed_default;
  auto* sy_cmd = app.add_subcommand("synth", "Sample a labeled Dirichlet dataset around prototype rows");
  add_common(sy_cmd, sy.common, false, true);
  sy_cmd->add_option("--concentration,-c", sy.concentration, "Dirichlet concentration")->capture_default_str();
  sy_cmd->add_option("--n,-n", sy.n, "Items per class")->capture_default_str();
  sy_cmd->add_option("--seed", sy.seed, "Random seed (default from SKEWJENSEN_SEED)")->capture_default_str();

  IntensityArgs in;
  auto* in_cmd = app.add_subcommand("intensity", "Intensity histogram of R,G,B pixel rows");
  add_common(in_cmd, in.common, false, true);
  in_cmd->add_option("--bins", in.bins, "Number of bins")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o;
    std::ostringstream e_os;
    const int code = app.exit(e, o, e_os);
    out << o.str();
    err << e_os.str();
    if (code == 0) return kSuccess;
    const CLI::App* failing = &app;
    for (const auto* sub : app.get_subcommands()) failing = sub;
    err << failing->help();
    return kUserError;
  }

  try {
    if (*div_cmd) return run_div(div, out);
    if (*prof_cmd) return run_profile(prof, out);
    if (*nat_cmd) return run_natparam(nat, out);
    if (*bh_cmd) return run_bhatt(bh, out);
    if (*cen_cmd) return run_centroid(cen, out, err);
    if (*km_cmd) return run_kmeans(km, out, err);
    if (*sw_cmd) return run_sweep(sw, out);
    if (*sy_cmd) return run_synth(sy, out);
    if (*in_cmd) return run_intensity(in, out);
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUserError;
  }
  return kUserError;
}

}  // namespace skewjensen::cli
