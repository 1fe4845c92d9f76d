#include "qae/datasets.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string_view>
#include <unordered_map>

#include "qae/errors.hpp"
#include "qae/io.hpp"

namespace qae {

namespace {

constexpr double kPi = std::numbers::pi;

// splitmix64 finalizer: decorrelates (seed, stream) pairs.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '"')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '"' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

void split_fields(std::string_view line, std::vector<std::string_view>& out) {
  out.clear();
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      return;
    }
    out.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

bool parse_number(std::string_view s, double& v) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(v);
}

// Calls fn(line_number, line) for each non-empty line; line_number is 1-based.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t start = 0;
  std::size_t line_no = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) fn(line_no, line);
    start = end + 1;
  }
}

}  // namespace

std::string to_string(Split split) {
  switch (split) {
    case Split::Train:
      return "train";
    case Split::Validation:
      return "validation";
    case Split::Test:
      return "test";
  }
  return "test";
}

Split parse_split(const std::string& text) {
  if (text == "train") return Split::Train;
  if (text == "validation") return Split::Validation;
  if (text == "test") return Split::Test;
  throw DataError("unknown split '" + text + "'");
}

void LabeledDataset::append(std::span<const double> x, Label label, Split split) {
  features.push_back(x);
  labels.push_back(label);
  splits.push_back(split);
}

FeatureMatrix LabeledDataset::select(Split split) const {
  FeatureMatrix out(n_features());
  out.reserve(count(split));
  for (std::size_t i = 0; i < size(); ++i) {
    if (splits[i] == split) out.push_back(features.row(i));
  }
  return out;
}

std::vector<Label> LabeledDataset::labels_of(Split split) const {
  std::vector<Label> out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (splits[i] == split) out.push_back(labels[i]);
  }
  return out;
}

std::size_t LabeledDataset::count(Split split) const {
  return static_cast<std::size_t>(std::count(splits.begin(), splits.end(), split));
}

std::size_t LabeledDataset::count(Split split, Label label) const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < size(); ++i) n += splits[i] == split && labels[i] == label;
  return n;
}

std::string to_string(ToyKind kind) {
  switch (kind) {
    case ToyKind::Moons:
      return "moons";
    case ToyKind::Circle:
      return "circle";
    case ToyKind::Donut:
      return "donut";
    case ToyKind::SCurve:
      return "scurve";
  }
  return "moons";
}

ToyKind parse_toy_kind(const std::string& text) {
  if (text == "moons") return ToyKind::Moons;
  if (text == "circle") return ToyKind::Circle;
  if (text == "donut") return ToyKind::Donut;
  if (text == "scurve" || text == "s_curve") return ToyKind::SCurve;
  throw ConfigError("unknown toy dataset '" + text + "' (expected moons|circle|donut|scurve)");
}

ToyOptions default_toy_options(ToyKind kind) {
  ToyOptions opts;
  switch (kind) {
    case ToyKind::Moons:
    case ToyKind::Circle:
      opts.noise = 0.05;
      break;
    case ToyKind::Donut:
      opts.noise = 0.1;
      break;
    case ToyKind::SCurve:
      opts.noise = 0.0;
      break;
  }
  return opts;
}

SplitSizes reference_split_sizes(ToyKind kind) {
  switch (kind) {
    case ToyKind::Moons:
      return {40000, 10000, 5000};
    case ToyKind::SCurve:
      return {8000, 2000, 5000};
    case ToyKind::Circle:
      return {31000, 8000, 5000};
    case ToyKind::Donut:
      return {40000, 10000, 5000};
  }
  return {};
}

FeatureMatrix sample_toy_class(ToyKind kind, Label label, std::size_t count, const ToyOptions& opts,
                               std::uint64_t seed) {
  if (opts.swap_classes && kind != ToyKind::SCurve) {
    label = label == Label::Normal ? Label::Anomaly : Label::Normal;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double sigma = opts.noise;
  auto jitter = [&] { return sigma > 0 ? sigma * gauss(rng) : 0.0; };

  FeatureMatrix out(2);
  out.reserve(count);
  const bool normal = label == Label::Normal;
  for (std::size_t k = 0; k < count; ++k) {
    double p[2] = {0, 0};
    switch (kind) {
      case ToyKind::Moons: {
        const double t = count > 1 ? kPi * static_cast<double>(k) / static_cast<double>(count - 1) : 0.0;
        if (normal) {
          p[0] = std::cos(t);
          p[1] = -std::sin(t);
        } else {
          p[0] = 1 - std::cos(t);
          p[1] = std::sin(t) - 0.5;
        }
        break;
      }
      case ToyKind::Circle: {
        const double a = 2 * kPi * unit(rng);
        const double r = normal ? 1.0 : opts.circle_inner;
        p[0] = r * std::cos(a);
        p[1] = r * std::sin(a);
        break;
      }
      case ToyKind::Donut: {
        const double a = 2 * kPi * unit(rng);
        const double lo = normal ? opts.donut_inner : 0.0;
        const double hi = normal ? opts.donut_outer : opts.donut_core;
        const double r = std::sqrt(lo * lo + (hi * hi - lo * lo) * unit(rng));
        p[0] = r * std::cos(a);
        p[1] = r * std::sin(a);
        break;
      }
      case ToyKind::SCurve: {
        if (!normal) throw UsageError("the S curve has no anomaly class; use pseudo-anomalies");
        const double t = 3 * kPi * (unit(rng) - 0.5);
        p[0] = std::sin(t);
        p[1] = (t > 0 ? 1.0 : t < 0 ? -1.0 : 0.0) * (std::cos(t) - 1);
        break;
      }
    }
    p[0] += jitter();
    p[1] += jitter();
    out.push_back(p);
  }
  return out;
}

namespace {

LabeledDataset two_class(ToyKind kind, std::size_t n, const ToyOptions& opts, std::uint64_t seed) {
  LabeledDataset data(2);
  data.provenance = fmt::format("{} n={} noise={} seed={}", to_string(kind), n, opts.noise, seed);
  const auto normal = sample_toy_class(kind, Label::Normal, (n + 1) / 2, opts, stream_seed(seed, 0));
  const auto anomaly = sample_toy_class(kind, Label::Anomaly, n / 2, opts, stream_seed(seed, 1));
  for (std::size_t i = 0; i < normal.rows(); ++i) data.append(normal.row(i), Label::Normal, Split::Test);
  for (std::size_t i = 0; i < anomaly.rows(); ++i) data.append(anomaly.row(i), Label::Anomaly, Split::Test);
  return data;
}

}  // namespace

LabeledDataset gen_moons(std::size_t n, double noise, std::uint64_t seed) {
  if (n < 2) throw ConfigError("gen_moons needs n >= 2");
  ToyOptions opts = default_toy_options(ToyKind::Moons);
  opts.noise = noise;
  return two_class(ToyKind::Moons, n, opts, seed);
}

LabeledDataset gen_circle(std::size_t n, double noise, std::uint64_t seed) {
  if (n < 2) throw ConfigError("gen_circle needs n >= 2");
  ToyOptions opts = default_toy_options(ToyKind::Circle);
  opts.noise = noise;
  return two_class(ToyKind::Circle, n, opts, seed);
}

LabeledDataset gen_donut(std::size_t n, double inner, double outer, double core, double noise,
                         std::uint64_t seed) {
  if (n < 2) throw ConfigError("gen_donut needs n >= 2");
  if (!(0 < core && core < inner && inner < outer)) {
    throw ConfigError("donut radii must satisfy 0 < core < inner < outer");
  }
  ToyOptions opts = default_toy_options(ToyKind::Donut);
  opts.donut_inner = inner;
  opts.donut_outer = outer;
  opts.donut_core = core;
  opts.noise = noise;
  return two_class(ToyKind::Donut, n, opts, seed);
}

LabeledDataset gen_s_curve(std::size_t n, double noise, std::uint64_t seed) {
  if (n < 2) throw ConfigError("gen_s_curve needs n >= 2");
  ToyOptions opts = default_toy_options(ToyKind::SCurve);
  opts.noise = noise;
  LabeledDataset data(2);
  data.provenance = fmt::format("scurve n={} noise={} seed={}", n, noise, seed);
  const auto pts = sample_toy_class(ToyKind::SCurve, Label::Normal, n, opts, stream_seed(seed, 0));
  for (std::size_t i = 0; i < pts.rows(); ++i) data.append(pts.row(i), Label::Normal, Split::Test);
  return data;
}

Box2 bounding_box(const FeatureMatrix& points) {
  if (points.empty() || points.n_features() != 2) throw UsageError("bounding box needs 2D points");
  Box2 b{points.row(0)[0], points.row(0)[0], points.row(0)[1], points.row(0)[1]};
  for (std::size_t i = 1; i < points.rows(); ++i) {
    const auto r = points.row(i);
    b.x0_min = std::min(b.x0_min, r[0]);
    b.x0_max = std::max(b.x0_max, r[0]);
    b.x1_min = std::min(b.x1_min, r[1]);
    b.x1_max = std::max(b.x1_max, r[1]);
  }
  return b;
}

FeatureMatrix gen_scurve_pseudo_anomalies(const FeatureMatrix& normal, double min_dist, std::size_t n,
                                          std::uint64_t seed, const Box2& region) {
  if (normal.empty() || normal.n_features() != 2) throw UsageError("pseudo-anomalies need 2D normal points");
  if (!(min_dist > 0)) throw ConfigError("min_dist must be positive");

  // Uniform grid with cell size min_dist: any point within min_dist of a candidate lies in
  // the candidate's cell or one of its eight neighbours.
  auto cell = [&](double v) { return static_cast<std::int64_t>(std::floor(v / min_dist)); };
  auto key = [](std::int64_t a, std::int64_t b) { return (a << 32) ^ (b & 0xffffffff); };
  std::unordered_map<std::int64_t, std::vector<std::size_t>> grid;
  for (std::size_t i = 0; i < normal.rows(); ++i) {
    grid[key(cell(normal.row(i)[0]), cell(normal.row(i)[1]))].push_back(i);
  }
  const double d2 = min_dist * min_dist;
  auto far_enough = [&](double x, double y) {
    const auto cx = cell(x);
    const auto cy = cell(y);
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        const auto it = grid.find(key(cx + dx, cy + dy));
        if (it == grid.end()) continue;
        for (std::size_t i : it->second) {
          const double ex = normal.row(i)[0] - x;
          const double ey = normal.row(i)[1] - y;
          if (ex * ex + ey * ey <= d2) return false;
        }
      }
    }
    return true;
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(region.x0_min, region.x0_max);
  std::uniform_real_distribution<double> uy(region.x1_min, region.x1_max);
  FeatureMatrix out(2);
  out.reserve(n);
  std::size_t attempts = 0;
  while (out.rows() < n) {
    const double p[2] = {ux(rng), uy(rng)};
    ++attempts;
    if (far_enough(p[0], p[1])) out.push_back(p);
    if (attempts >= 10000 && static_cast<double>(out.rows()) < 0.001 * static_cast<double>(attempts)) {
      throw DataError(fmt::format("pseudo-anomaly region too tight: {} of {} candidates accepted",
                                  out.rows(), attempts));
    }
  }
  return out;
}

FeatureMatrix gen_scurve_pseudo_anomalies(const FeatureMatrix& normal, double min_dist, std::size_t n,
                                          std::uint64_t seed) {
  return gen_scurve_pseudo_anomalies(normal, min_dist, n, seed, bounding_box(normal));
}

LabeledDataset make_toy_dataset(ToyKind kind, const SplitSizes& sizes, const ToyOptions& opts,
                                std::uint64_t seed) {
  if (sizes.train == 0 || sizes.validation == 0 || sizes.test < 2) {
    throw ConfigError("toy dataset needs nonempty train/validation and at least 2 test samples");
  }
  LabeledDataset data(2);
  data.provenance = fmt::format("{} train={} validation={} test={} noise={} seed={}", to_string(kind),
                                sizes.train, sizes.validation, sizes.test, opts.noise, seed);
  const auto train = sample_toy_class(kind, Label::Normal, sizes.train, opts, stream_seed(seed, 10));
  const auto val = sample_toy_class(kind, Label::Normal, sizes.validation, opts, stream_seed(seed, 20));
  const auto test_normal = sample_toy_class(kind, Label::Normal, (sizes.test + 1) / 2, opts, stream_seed(seed, 30));
  const FeatureMatrix test_anomaly =
      kind == ToyKind::SCurve
          ? gen_scurve_pseudo_anomalies(train, 0.07, sizes.test / 2, stream_seed(seed, 31))
          : sample_toy_class(kind, Label::Anomaly, sizes.test / 2, opts, stream_seed(seed, 31));

  for (std::size_t i = 0; i < train.rows(); ++i) data.append(train.row(i), Label::Normal, Split::Train);
  for (std::size_t i = 0; i < val.rows(); ++i) data.append(val.row(i), Label::Normal, Split::Validation);
  for (std::size_t i = 0; i < test_normal.rows(); ++i) data.append(test_normal.row(i), Label::Normal, Split::Test);
  for (std::size_t i = 0; i < test_anomaly.rows(); ++i) {
    data.append(test_anomaly.row(i), Label::Anomaly, Split::Test);
  }
  return data;
}

LabeledDataset load_creditcard(const std::filesystem::path& path, const CreditCardOptions& opts) {
  const std::string text = read_file(path);
  std::vector<std::string_view> fields;
  std::vector<int> feature_cols(kCreditCardFeatures, -1);
  int class_col = -1;
  std::size_t n_cols = 0;
  std::vector<double> values;
  std::vector<Label> labels;
  bool header_seen = false;

  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    split_fields(line, fields);
    if (!header_seen) {
      header_seen = true;
      n_cols = fields.size();
      std::vector<std::string> required{"Time", "Amount", "Class"};
      for (int v = 1; v <= 28; ++v) required.push_back("V" + std::to_string(v));
      for (const auto& name : required) {
        if (std::find(fields.begin(), fields.end(), name) == fields.end()) {
          throw DataError("credit-card CSV " + path.string() + " is missing column '" + name + "'");
        }
      }
      for (std::size_t c = 0; c < fields.size(); ++c) {
        if (fields[c] == "Class") class_col = static_cast<int>(c);
        for (std::size_t f = 0; f < kCreditCardFeatures; ++f) {
          if (fields[c] == "V" + std::to_string(f + 1)) feature_cols[f] = static_cast<int>(c);
        }
      }
      return;
    }
    const std::size_t row = line_no - 1;
    if (fields.size() != n_cols) {
      throw DataError(fmt::format("credit-card row {}: expected {} fields, found {}", row, n_cols, fields.size()));
    }
    double parsed = 0;
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (!parse_number(fields[c], parsed)) {
        throw DataError(fmt::format("credit-card row {}: non-numeric cell '{}' in column {}", row, fields[c], c));
      }
      if (static_cast<int>(c) == class_col) {
        if (parsed != 0 && parsed != 1) throw DataError(fmt::format("credit-card row {}: Class must be 0 or 1", row));
        labels.push_back(parsed == 1 ? Label::Anomaly : Label::Normal);
      }
    }
    for (int col : feature_cols) {
      parse_number(fields[col], parsed);
      values.push_back(parsed);
    }
  });
  if (!header_seen) throw DataError("credit-card CSV " + path.string() + " is empty");

  std::vector<std::size_t> normal_rows;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == Label::Normal) normal_rows.push_back(i);
  }
  if (normal_rows.size() <= opts.validation + opts.test_normal) {
    throw DataError(fmt::format("credit-card file has {} normal rows; need more than {} for validation + test",
                                normal_rows.size(), opts.validation + opts.test_normal));
  }
  std::mt19937_64 rng(opts.seed);
  std::shuffle(normal_rows.begin(), normal_rows.end(), rng);

  constexpr int kDropped = -1;
  std::vector<int> assignment(labels.size(), static_cast<int>(Split::Test));
  const std::size_t n_train = normal_rows.size() - opts.validation - opts.test_normal;
  for (std::size_t k = 0; k < normal_rows.size(); ++k) {
    int split = static_cast<int>(Split::Test);
    if (k < n_train) {
      split = opts.train_subsample > 0 && k >= opts.train_subsample ? kDropped : static_cast<int>(Split::Train);
    } else if (k < n_train + opts.validation) {
      split = static_cast<int>(Split::Validation);
    }
    assignment[normal_rows[k]] = split;
  }

  LabeledDataset data(kCreditCardFeatures);
  data.provenance = fmt::format("creditcard {} seed={} subsample={}", path.filename().string(), opts.seed,
                                opts.train_subsample);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (assignment[i] == kDropped) continue;
    data.append(std::span(values).subspan(i * kCreditCardFeatures, kCreditCardFeatures), labels[i],
                static_cast<Split>(assignment[i]));
  }
  return data;
}

void ScalerParams::transform(std::span<const double> in, std::span<double> out) const {
  if (in.size() != min.size() || out.size() != min.size()) {
    throw UsageError("scaler fitted on " + std::to_string(min.size()) + " features, got " +
                     std::to_string(in.size()));
  }
  for (std::size_t f = 0; f < in.size(); ++f) {
    const double v = -kPi + 2 * kPi * (in[f] - min[f]) / (max[f] - min[f]);
    out[f] = std::clamp(v, -kPi, kPi);
  }
}

std::vector<double> ScalerParams::transform(std::span<const double> in) const {
  std::vector<double> out(in.size());
  transform(in, out);
  return out;
}

ScalerParams fit_scaler(const LabeledDataset& data, Split split) {
  const FeatureMatrix fit = data.select(split);
  if (fit.empty()) throw UsageError("scaler fit split '" + to_string(split) + "' is empty");
  ScalerParams params;
  const std::size_t nf = fit.n_features();
  params.min.assign(fit.row(0).begin(), fit.row(0).end());
  params.max = params.min;
  for (std::size_t i = 1; i < fit.rows(); ++i) {
    const auto r = fit.row(i);
    for (std::size_t f = 0; f < nf; ++f) {
      params.min[f] = std::min(params.min[f], r[f]);
      params.max[f] = std::max(params.max[f], r[f]);
    }
  }
  for (std::size_t f = 0; f < nf; ++f) {
    if (!(params.max[f] > params.min[f])) {
      throw DataError("feature " + std::to_string(f) + " is constant on the fit split");
    }
  }
  return params;
}

LabeledDataset apply_scaler(const LabeledDataset& data, const ScalerParams& params) {
  LabeledDataset out = data;
  for (std::size_t i = 0; i < out.size(); ++i) params.transform(data.features.row(i), out.features.row(i));
  return out;
}

std::string dataset_to_csv(const LabeledDataset& data) {
  std::string s;
  for (std::size_t f = 0; f < data.n_features(); ++f) s += fmt::format("f{},", f);
  s += "label,split\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (double v : data.features.row(i)) {
      s += format_double(v);
      s += ',';
    }
    s += data.labels[i] == Label::Anomaly ? "1," : "0,";
    s += to_string(data.splits[i]);
    s += '\n';
  }
  return s;
}

void write_dataset_csv(const std::filesystem::path& path, const LabeledDataset& data) {
  write_file_atomic(path, dataset_to_csv(data));
}

LabeledDataset read_dataset_csv(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  std::vector<std::string_view> fields;
  LabeledDataset data;
  std::size_t nf = 0;
  bool header_seen = false;
  std::vector<double> row;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    split_fields(line, fields);
    if (!header_seen) {
      header_seen = true;
      if (fields.size() < 3 || fields[fields.size() - 2] != "label" || fields.back() != "split") {
        throw DataError(path.string() + ": header must be f0,...,label,split");
      }
      nf = fields.size() - 2;
      for (std::size_t f = 0; f < nf; ++f) {
        if (fields[f] != "f" + std::to_string(f)) throw DataError(path.string() + ": bad feature column name");
      }
      data = LabeledDataset(nf);
      return;
    }
    if (fields.size() != nf + 2) {
      throw DataError(fmt::format("{} line {}: expected {} fields", path.string(), line_no, nf + 2));
    }
    row.resize(nf);
    for (std::size_t f = 0; f < nf; ++f) {
      if (!parse_number(fields[f], row[f])) {
        throw DataError(fmt::format("{} line {}: non-numeric feature '{}'", path.string(), line_no, fields[f]));
      }
    }
    Label label;
    if (fields[nf] == "0") {
      label = Label::Normal;
    } else if (fields[nf] == "1") {
      label = Label::Anomaly;
    } else {
      throw DataError(fmt::format("{} line {}: label must be 0 or 1", path.string(), line_no));
    }
    data.append(row, label, parse_split(std::string(fields[nf + 1])));
  });
  if (!header_seen) throw DataError(path.string() + " is empty");
  data.provenance = path.filename().string();
  return data;
}

}  // namespace qae
