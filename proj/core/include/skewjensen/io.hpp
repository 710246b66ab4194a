#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "skewjensen/clustering.hpp"
#include "skewjensen/divergences.hpp"
#include "skewjensen/histogram.hpp"

namespace skewjensen {

struct IngestionConfig {
  double epsilon = kDefaultSmoothing;
  double tolerance = kNormalizationTolerance;
  /// Number of equal-width bins for intensity histograms.
  std::size_t bins = 256;

  /// Throws ConfigError unless epsilon > 0, tolerance > 0 and bins >= 2.
  void validate() const;
};

/// 17 significant digits, '.' decimal separator, independent of locale.
std::string format_double(double v);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Numeric rows from comma-separated text. Blank lines and lines starting
/// with '#' are skipped. ParseError messages carry "<name>:<row>:<column>".
std::vector<std::vector<double>> parse_csv_rows(std::string_view text,
                                                std::string_view name = "<input>");

/// Rows of a .json file (array of arrays, or a single flat array) or of a CSV
/// file (any other extension).
std::vector<std::vector<double>> read_vectors(const std::filesystem::path& path);

/// Clamps to the smoothing floor and renormalizes each row; rows must share
/// one length >= 2 and contain no negative entries.
std::vector<Histogram> to_histograms(const std::vector<std::vector<double>>& rows,
                                     const IngestionConfig& config = {},
                                     std::string_view name = "<input>");
std::vector<Histogram> load_histograms(const std::filesystem::path& path,
                                       const IngestionConfig& config = {});

std::string histograms_to_csv(const std::vector<Histogram>& hs);

/// Labeled CSV: integer label in the first column, histogram bins after.
LabeledDataset parse_labeled(std::string_view text, const IngestionConfig& config = {},
                             std::string_view name = "<input>");
LabeledDataset load_labeled(const std::filesystem::path& path, const IngestionConfig& config = {});
std::string labeled_to_csv(const LabeledDataset& data);

struct Pixel {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;
};

/// Intensity I = 0.3 R + 0.596 G + 0.11 B per pixel, binned into
/// `config.bins` equal-width bins over [0, 255], then smoothed.
///
/// The weights sum to 1.006, so white reaches I = 256.53; intensities above
/// 255 land in the top bin. Throws DomainError for channels outside [0, 255].
Histogram intensity_histogram(std::span<const Pixel> pixels, const IngestionConfig& config = {});

/// Pixels as CSV triples "R,G,B".
std::vector<Pixel> load_pixels(const std::filesystem::path& path);

/// Columns: alpha, accuracy, acc_class_<label>..., mean_cccp_iters.
std::string sweep_to_csv(const SweepReport& report);

/// Columns: alpha, t, sj.
std::string profile_to_csv(const std::vector<ProfileRow>& rows);

}  // namespace skewjensen
