#include <gtest/gtest.h>

#include <sstream>

#include "islandsim/errors.hpp"
#include "islandsim/series.hpp"

using namespace islandsim;

namespace {

std::string csv_of(const std::vector<double>& v) {
  std::ostringstream os;
  os << "timestamp,value_mw\n";
  for (std::size_t h = 0; h < v.size(); ++h) os << hour_timestamp(static_cast<int>(h)) << ',' << v[h] << '\n';
  return os.str();
}

}  // namespace

TEST(Series, TimestampsCoverTheYear) {
  EXPECT_EQ(hour_timestamp(0), "2021-01-01T00:00");
  EXPECT_EQ(hour_timestamp(25), "2021-01-02T01:00");
  EXPECT_EQ(hour_timestamp(8759), "2021-12-31T23:00");
}

TEST(Series, WellFormedFileParses) {
  std::vector<double> v(kHoursPerYear, 10.0);
  v[5] = 30.0;
  std::istringstream in(csv_of(v));
  const auto s = parse_csv(in, "mem");
  EXPECT_EQ(s.values.size(), 8760u);
  EXPECT_DOUBLE_EQ(s.peak(), 30.0);
  EXPECT_NEAR(s.mean(), (8759 * 10.0 + 30.0) / 8760, 1e-12);
  EXPECT_NEAR(s.factor(), s.mean() / 30.0, 1e-12);
}

TEST(Series, ShortFileNamesExpectedAndActualLength) {
  std::istringstream in(csv_of(std::vector<double>(8759, 1.0)));
  try {
    parse_csv(in, "mem");
    FAIL();
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("8760"), std::string::npos);
    EXPECT_NE(msg.find("8759"), std::string::npos);
  }
}

TEST(Series, NegativeValueCitesRow) {
  std::vector<double> v(kHoursPerYear, 1.0);
  v[99] = -2.0;
  std::istringstream in(csv_of(v));
  try {
    parse_csv(in, "mem");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("row 100"), std::string::npos);
  }
}

TEST(Series, GapAndGarbageAreParseErrors) {
  std::string text = csv_of(std::vector<double>(kHoursPerYear, 1.0));
  std::string gap = text;
  gap.erase(gap.find(hour_timestamp(3)), std::string(hour_timestamp(3) + ",1\n").size());
  std::istringstream a(gap);
  EXPECT_THROW(parse_csv(a, "mem"), IoError);
  std::istringstream b("timestamp,value_mw\n2021-01-01T00:00,abc\n");
  EXPECT_THROW(parse_csv(b, "mem"), IoError);
  std::istringstream c("time,mw\n");
  EXPECT_THROW(parse_csv(c, "mem"), IoError);
  EXPECT_THROW(ingest_csv("/nonexistent/series.csv"), IoError);
}

TEST(Series, LoadSynthesisIsDeterministicAndHitsTargets) {
  const SynthesisTargets t;
  const auto a = synthesize(SeriesKind::load, t, 7);
  const auto b = synthesize(SeriesKind::load, t, 7);
  EXPECT_EQ(a.values, b.values);
  EXPECT_NEAR(a.peak(), 210.0, 1e-9);
  EXPECT_NEAR(a.factor(), 0.46, 0.005);
  EXPECT_NE(a.values, synthesize(SeriesKind::load, t, 8).values);
}

TEST(Series, WindSynthesisHitsCapacityFactor) {
  SynthesisTargets t;
  t.capacity_factor = 0.40;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto w = synthesize(SeriesKind::wind, t, seed);
    EXPECT_GE(w.factor(), 0.39);
    EXPECT_LE(w.factor(), 0.41);
    EXPECT_LE(w.peak(), 1.0);
  }
}

TEST(Series, PvIsZeroAtNight) {
  SynthesisTargets t;
  t.capacity_factor = 0.21;
  const auto pv = synthesize(SeriesKind::pv, t, 1);
  EXPECT_NEAR(pv.factor(), 0.21, 0.01);
  for (int h = 0; h < kHoursPerYear; ++h) {
    const int hod = h % 24;
    if (hod <= 4 || hod >= 19) EXPECT_EQ(pv.values[static_cast<std::size_t>(h)], 0.0) << h;
  }
}

TEST(Series, SynthesizedSeriesRoundTripThroughCsv) {
  SynthesisTargets t;
  for (auto kind : {SeriesKind::load, SeriesKind::wind, SeriesKind::pv}) {
    if (kind == SeriesKind::pv) t.capacity_factor = 0.21;
    const auto s = synthesize(kind, t, 11);
    std::ostringstream os;
    write_csv(s, os);
    std::istringstream in(os.str());
    const auto back = parse_csv(in, "mem", s.label, s.capacity);
    EXPECT_EQ(back.values, s.values);
    EXPECT_NEAR(back.factor(), s.factor(), 1e-3 * s.factor());
  }
}

TEST(Series, UnreachableTargetsRejected) {
  SynthesisTargets t;
  t.load_factor = 1.5;
  EXPECT_THROW(synthesize(SeriesKind::load, t, 1), ValidationError);
  t.load_factor = 0.05;
  EXPECT_THROW(synthesize(SeriesKind::load, t, 1), ValidationError);
  t = {};
  t.capacity_factor = 0.0;
  EXPECT_THROW(synthesize(SeriesKind::wind, t, 1), ValidationError);
}
