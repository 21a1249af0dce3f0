#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace islandsim {

inline constexpr int kHoursPerYear = 8760;

/// One year of hourly values in MW.
struct HourlySeries {
  std::string label;
  std::vector<double> values;
  double capacity = 0.0;  // MW; 0 means the factor is taken against the peak

  double mean() const;
  double peak() const;
  double energy() const;  // MWh
  /// Load factor (mean / peak) or capacity factor (mean / capacity).
  double factor() const;
};

/// `timestamp,value_mw` with 8760 consecutive hourly rows. Throws IoError for
/// unreadable or malformed files and ValidationError for bad values, citing
/// the 1-based data row.
HourlySeries ingest_csv(const std::filesystem::path& path, const std::string& label = {},
                        double capacity = 0.0);
HourlySeries parse_csv(std::istream& in, const std::string& source, const std::string& label = {},
                       double capacity = 0.0);

void write_csv(const HourlySeries& series, std::ostream& os);
void write_csv(const HourlySeries& series, const std::filesystem::path& path);

/// ISO timestamp of an hour of the (non-leap) simulated year, e.g. 2021-01-01T00:00.
std::string hour_timestamp(int hour_of_year);

enum class SeriesKind { load, wind, pv };

struct SynthesisTargets {
  double peak = 210.0;           // load, MW
  double load_factor = 0.46;     // load
  double capacity = 1.0;         // wind and pv, MW
  double capacity_factor = 0.4;  // wind and pv

  friend bool operator==(const SynthesisTargets&, const SynthesisTargets&) = default;
};

/// Seed-deterministic synthetic year. Throws ValidationError if the targets
/// cannot be met.
HourlySeries synthesize(SeriesKind kind, const SynthesisTargets& targets, std::uint64_t seed);

}  // namespace islandsim
