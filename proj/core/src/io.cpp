#include "skewjensen/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "skewjensen/error.hpp"

namespace skewjensen {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void parse_failure(std::string_view name, std::size_t row, std::size_t col,
                                std::string_view what) {
  std::ostringstream os;
  os << name << ":" << row << ":" << col << ": " << what;
  throw ParseError(os.str());
}

double parse_number(std::string_view cell, std::string_view name, std::size_t row,
                    std::size_t col) {
  cell = trim(cell);
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
    parse_failure(name, row, col, "not a number: '" + std::string(cell) + "'");
  }
  return v;
}

}  // namespace

void IngestionConfig::validate() const {
  if (!(epsilon > 0.0)) throw ConfigError("smoothing epsilon must be positive");
  if (!(tolerance > 0.0)) throw ConfigError("normalization tolerance must be positive");
  if (bins < 2) throw ConfigError("intensity histograms need at least 2 bins");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw ConfigError("failed writing '" + path.string() + "'");
}

std::vector<std::vector<double>> parse_csv_rows(std::string_view text, std::string_view name) {
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    std::vector<double> row;
    std::size_t col = 0;
    for (;;) {
      ++col;
      const auto comma = line.find(',');
      row.push_back(parse_number(line.substr(0, comma), name, line_no, col));
      if (comma == std::string_view::npos) break;
      line.remove_prefix(comma + 1);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::vector<double>> read_vectors(const std::filesystem::path& path) {
  const auto text = read_text_file(path);
  if (path.extension() != ".json") return parse_csv_rows(text, path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  if (!j.is_array()) throw ParseError(path.string() + ": expected a JSON array");
  std::vector<std::vector<double>> rows;
  const bool flat = !j.empty() && j.front().is_number();
  auto read_row = [&](const nlohmann::json& r, std::size_t idx) {
    if (!r.is_array()) throw ParseError(path.string() + ": element " + std::to_string(idx) + " is not an array");
    std::vector<double> row;
    for (const auto& v : r) {
      if (!v.is_number()) throw ParseError(path.string() + ": non-numeric entry in row " + std::to_string(idx));
      row.push_back(v.get<double>());
    }
    return row;
  };
  if (flat) {
    rows.push_back(read_row(j, 0));
  } else {
    for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(read_row(j[i], i));
  }
  return rows;
}

std::vector<Histogram> to_histograms(const std::vector<std::vector<double>>& rows,
                                     const IngestionConfig& config, std::string_view name) {
  config.validate();
  std::vector<Histogram> out;
  out.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() < 2) parse_failure(name, r + 1, 1, "histogram rows need at least 2 bins");
    if (!out.empty() && row.size() != out.front().size()) {
      parse_failure(name, r + 1, 1, "row has " + std::to_string(row.size()) + " bins, expected " +
                                        std::to_string(out.front().size()));
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (!std::isfinite(row[c]) || row[c] < 0.0) {
        parse_failure(name, r + 1, c + 1, "negative or non-finite entry " + format_double(row[c]));
      }
    }
    try {
      out.push_back(smooth_histogram(row, config.epsilon, config.tolerance));
    } catch (const DomainError& e) {
      parse_failure(name, r + 1, 1, e.what());
    }
  }
  return out;
}

std::vector<Histogram> load_histograms(const std::filesystem::path& path,
                                       const IngestionConfig& config) {
  return to_histograms(read_vectors(path), config, path.string());
}

std::string histograms_to_csv(const std::vector<Histogram>& hs) {
  std::string out;
  for (const auto& h : hs) {
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (i) out += ',';
      out += format_double(h[i]);
    }
    out += '\n';
  }
  return out;
}

LabeledDataset parse_labeled(std::string_view text, const IngestionConfig& config,
                             std::string_view name) {
  const auto rows = parse_csv_rows(text, name);
  std::vector<std::vector<double>> bins;
  std::vector<int> labels;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const double label = rows[r].front();
    if (label != std::floor(label) || std::abs(label) > 1e9) {
      parse_failure(name, r + 1, 1, "label must be an integer");
    }
    labels.push_back(static_cast<int>(label));
    bins.emplace_back(rows[r].begin() + 1, rows[r].end());
  }
  return LabeledDataset(to_histograms(bins, config, name), std::move(labels));
}

LabeledDataset load_labeled(const std::filesystem::path& path, const IngestionConfig& config) {
  return parse_labeled(read_text_file(path), config, path.string());
}

std::string labeled_to_csv(const LabeledDataset& data) {
  std::string out;
  for (std::size_t i = 0; i < data.size(); ++i) {
    out += std::to_string(data.labels()[i]);
    for (double v : data.items()[i].bins()) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

Histogram intensity_histogram(std::span<const Pixel> pixels, const IngestionConfig& config) {
  config.validate();
  if (pixels.empty()) throw ConfigError("intensity_histogram: no pixels");
  const double width = 255.0 / static_cast<double>(config.bins);
  std::vector<double> counts(config.bins, 0.0);
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    const auto& px = pixels[i];
    for (double ch : {px.r, px.g, px.b}) {
      if (!(ch >= 0.0 && ch <= 255.0)) {
        throw DomainError("pixel " + std::to_string(i) + " has a channel outside [0, 255]");
      }
    }
    const double intensity = 0.3 * px.r + 0.596 * px.g + 0.11 * px.b;
    const auto bin = std::min(config.bins - 1, static_cast<std::size_t>(intensity / width));
    counts[bin] += 1.0;
  }
  return smooth_histogram(std::move(counts), config.epsilon, config.tolerance);
}

std::vector<Pixel> load_pixels(const std::filesystem::path& path) {
  const auto rows = parse_csv_rows(read_text_file(path), path.string());
  std::vector<Pixel> px;
  px.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != 3) parse_failure(path.string(), r + 1, 1, "pixel rows need 3 channels");
    px.push_back({rows[r][0], rows[r][1], rows[r][2]});
  }
  return px;
}

std::string sweep_to_csv(const SweepReport& report) {
  std::string out = "alpha,accuracy";
  std::vector<int> classes;
  if (!report.rows.empty()) {
    for (const auto& [label, acc] : report.rows.front().class_accuracy) classes.push_back(label);
  }
  for (int c : classes) out += ",acc_class_" + std::to_string(c);
  out += ",mean_cccp_iters\n";
  for (const auto& row : report.rows) {
    out += format_double(row.alpha) + ',' + format_double(row.accuracy);
    for (int c : classes) {
      const auto it = row.class_accuracy.find(c);
      out += ',' + format_double(it == row.class_accuracy.end() ? 0.0 : it->second);
    }
    out += ',' + format_double(row.mean_iterations) + '\n';
  }
  return out;
}

std::string profile_to_csv(const std::vector<ProfileRow>& rows) {
  std::string out = "alpha,t,sj\n";
  for (const auto& r : rows) {
    out += format_double(r.alpha) + ',' + format_double(r.t) + ',' + format_double(r.value) + '\n';
  }
  return out;
}

}  // namespace skewjensen
