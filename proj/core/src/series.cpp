#include "islandsim/series.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>

#include "islandsim/errors.hpp"
#include "numfmt.hpp"

namespace islandsim {

namespace {

constexpr std::array<int, 12> kMonthDays{31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
constexpr int kYear = 2021;

std::string two(int v) { return (v < 10 ? "0" : "") + std::to_string(v); }

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
  std::size_t b = 0;
  while (b < s.size() && (s[b] == ' ' || s[b] == '\t')) ++b;
  return s.substr(b);
}

}  // namespace

double HourlySeries::mean() const {
  return values.empty() ? 0.0 : energy() / static_cast<double>(values.size());
}

double HourlySeries::peak() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

double HourlySeries::energy() const { return std::accumulate(values.begin(), values.end(), 0.0); }

double HourlySeries::factor() const {
  const double base = capacity > 0.0 ? capacity : peak();
  return base > 0.0 ? mean() / base : 0.0;
}

std::string hour_timestamp(int hour_of_year) {
  int day = hour_of_year / 24;
  const int hour = hour_of_year % 24;
  int month = 0;
  while (month < 11 && day >= kMonthDays[static_cast<std::size_t>(month)]) {
    day -= kMonthDays[static_cast<std::size_t>(month)];
    ++month;
  }
  return std::to_string(kYear) + "-" + two(month + 1) + "-" + two(day + 1) + "T" + two(hour) + ":00";
}

HourlySeries parse_csv(std::istream& in, const std::string& source, const std::string& label,
                       double capacity) {
  HourlySeries s;
  s.label = label;
  s.capacity = capacity;
  std::string line;
  if (!std::getline(in, line) || trim(line) != "timestamp,value_mw") {
    throw IoError(source, "header must be 'timestamp,value_mw'");
  }
  int row = 0;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    ++row;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw IoError(source, "row " + std::to_string(row) + ": expected two columns");
    const std::string ts = trim(line.substr(0, comma));
    const std::string val = trim(line.substr(comma + 1));
    if (row <= kHoursPerYear && ts != hour_timestamp(row - 1)) {
      throw IoError(source, "row " + std::to_string(row) + ": expected timestamp " +
                                hour_timestamp(row - 1) + ", got '" + ts + "' (gap or disorder)");
    }
    double v = 0.0;
    auto [end, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
    if (ec != std::errc{} || end != val.data() + val.size()) {
      throw IoError(source, "row " + std::to_string(row) + ": cannot parse value '" + val + "'");
    }
    if (!std::isfinite(v) || v < 0.0) {
      throw ValidationError(source + ": row " + std::to_string(row) + ": negative or non-finite value " + val);
    }
    s.values.push_back(v);
  }
  if (s.values.size() != static_cast<std::size_t>(kHoursPerYear)) {
    throw ValidationError(source + ": length error: expected " + std::to_string(kHoursPerYear) +
                          " rows, got " + std::to_string(s.values.size()));
  }
  return s;
}

HourlySeries ingest_csv(const std::filesystem::path& path, const std::string& label,
                        double capacity) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string(), "cannot open series file");
  return parse_csv(in, path.string(), label.empty() ? path.stem().string() : label, capacity);
}

void write_csv(const HourlySeries& series, std::ostream& os) {
  os << "timestamp,value_mw\n";
  for (std::size_t h = 0; h < series.values.size(); ++h) {
    os << hour_timestamp(static_cast<int>(h)) << ',' << detail::num(series.values[h]) << '\n';
  }
}

void write_csv(const HourlySeries& series, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path.string(), "cannot write series file");
  write_csv(series, out);
  if (!out) throw IoError(path.string(), "write failed");
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> ar1(std::mt19937_64& rng, std::size_t n, double phi, double sigma) {
  std::normal_distribution<double> eps(0.0, 1.0);
  std::vector<double> z(n);
  double x = eps(rng);
  const double scale = std::sqrt(1.0 - phi * phi);
  for (auto& v : z) {
    x = phi * x + scale * eps(rng);
    v = sigma * x;
  }
  return z;
}

// Finds the root of a monotone increasing f on [lo, hi].
template <class F>
double bisect(F f, double target, double lo, double hi) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

HourlySeries synth_load(const SynthesisTargets& t, std::mt19937_64& rng) {
  if (!(t.peak > 0.0) || !(t.load_factor > 0.0 && t.load_factor <= 1.0)) {
    throw ValidationError("load synthesis needs peak > 0 and load factor in (0, 1]");
  }
  const auto noise = ar1(rng, kHoursPerYear, 0.9, 0.02);
  std::vector<double> shape(kHoursPerYear);
  for (int h = 0; h < kHoursPerYear; ++h) {
    const double day = h / 24;
    const double hr = h % 24;
    const double daily = 0.55 + 0.22 * std::exp(-std::pow((hr - 12.5) / 3.0, 2)) +
                         0.30 * std::exp(-std::pow((hr - 20.5) / 2.2, 2)) -
                         0.08 * std::exp(-std::pow((hr - 4.0) / 2.5, 2));
    const double seasonal = 1.0 + 0.22 * std::cos(kTwoPi * (day - 205.0) / 365.0) +
                            0.08 * std::cos(2.0 * kTwoPi * (day - 20.0) / 365.0);
    shape[static_cast<std::size_t>(h)] = daily * seasonal * (1.0 + noise[static_cast<std::size_t>(h)]);
  }
  const double smax = *std::max_element(shape.begin(), shape.end());
  const double smean = std::accumulate(shape.begin(), shape.end(), 0.0) / kHoursPerYear;
  // affine map onto the exact peak and mean
  const double a = t.peak * (1.0 - t.load_factor) / (smax - smean);
  const double b = t.peak - a * smax;
  HourlySeries s;
  s.label = "load";
  for (double v : shape) s.values.push_back(a * v + b);
  if (*std::min_element(s.values.begin(), s.values.end()) < 0.0) {
    throw ValidationError("load factor " + detail::num(t.load_factor) +
                          " is unreachable with the daily shape (negative load)");
  }
  return s;
}

HourlySeries synth_wind(const SynthesisTargets& t, std::mt19937_64& rng) {
  if (!(t.capacity > 0.0) || !(t.capacity_factor > 0.0 && t.capacity_factor < 1.0)) {
    throw ValidationError("wind synthesis needs capacity > 0 and capacity factor in (0, 1)");
  }
  const auto fast = ar1(rng, kHoursPerYear, 0.97, 1.0);
  const auto slow = ar1(rng, kHoursPerYear / 24, 0.8, 0.6);
  std::vector<double> z(kHoursPerYear);
  for (int h = 0; h < kHoursPerYear; ++h) {
    const double season = 0.3 * std::cos(kTwoPi * (h / 24 - 15.0) / 365.0);
    z[static_cast<std::size_t>(h)] = fast[static_cast<std::size_t>(h)] +
                                     slow[static_cast<std::size_t>(h / 24)] + season;
  }
  auto out = [&](double shift, std::size_t h) { return 1.0 / (1.0 + std::exp(-2.2 * (z[h] + shift))); };
  auto cf = [&](double shift) {
    double sum = 0.0;
    for (std::size_t h = 0; h < z.size(); ++h) sum += out(shift, h);
    return sum / static_cast<double>(z.size());
  };
  const double shift = bisect(cf, t.capacity_factor, -20.0, 20.0);
  HourlySeries s;
  s.label = "wind";
  s.capacity = t.capacity;
  for (std::size_t h = 0; h < z.size(); ++h) s.values.push_back(t.capacity * out(shift, h));
  return s;
}

double clear_sky(int h) {
  constexpr double lat = 36.0 * std::numbers::pi / 180.0;
  const double n = h / 24 + 1;
  const double decl = 23.45 * std::numbers::pi / 180.0 * std::sin(kTwoPi * (284.0 + n) / 365.0);
  const double omega = (15.0 * ((h % 24) + 0.5 - 12.0)) * std::numbers::pi / 180.0;
  const double el = std::sin(lat) * std::sin(decl) + std::cos(lat) * std::cos(decl) * std::cos(omega);
  return std::max(0.0, el);
}

HourlySeries synth_pv(const SynthesisTargets& t, std::mt19937_64& rng) {
  if (!(t.capacity > 0.0) || !(t.capacity_factor > 0.0 && t.capacity_factor < 1.0)) {
    throw ValidationError("pv synthesis needs capacity > 0 and capacity factor in (0, 1)");
  }
  const auto days = ar1(rng, kHoursPerYear / 24, 0.6, 1.0);
  const auto hours = ar1(rng, kHoursPerYear, 0.7, 0.08);
  std::vector<double> base(kHoursPerYear);
  for (int h = 0; h < kHoursPerYear; ++h) {
    const double d = days[static_cast<std::size_t>(h / 24)];
    const double summer = std::cos(kTwoPi * (h / 24 - 180.0) / 365.0);
    const double clear = 1.0 / (1.0 + std::exp(-(1.6 + 0.8 * summer + 1.2 * d)));
    const double cloud = std::clamp(0.15 + 0.85 * clear + hours[static_cast<std::size_t>(h)], 0.0, 1.0);
    base[static_cast<std::size_t>(h)] = clear_sky(h) * cloud;
  }
  auto cf = [&](double k) {
    double sum = 0.0;
    for (double b : base) sum += std::min(1.0, k * b);
    return sum / kHoursPerYear;
  };
  double hi = 1.0;
  while (cf(hi) < t.capacity_factor && hi < 1e6) hi *= 2.0;
  if (cf(hi) < t.capacity_factor) {
    throw ValidationError("pv capacity factor " + detail::num(t.capacity_factor) + " is unreachable");
  }
  const double k = bisect(cf, t.capacity_factor, 0.0, hi);
  HourlySeries s;
  s.label = "pv";
  s.capacity = t.capacity;
  for (double b : base) s.values.push_back(t.capacity * std::min(1.0, k * b));
  return s;
}

}  // namespace

HourlySeries synthesize(SeriesKind kind, const SynthesisTargets& targets, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  switch (kind) {
    case SeriesKind::load: return synth_load(targets, rng);
    case SeriesKind::wind: return synth_wind(targets, rng);
    case SeriesKind::pv: return synth_pv(targets, rng);
  }
  throw ValidationError("unknown series kind");
}

}  // namespace islandsim
