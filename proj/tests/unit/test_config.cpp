#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "islandsim/config.hpp"
#include "islandsim/errors.hpp"
#include "islandsim/scenario.hpp"

using namespace islandsim;

TEST(Config, DefaultsAreValid) {
  EXPECT_TRUE(validate_config(default_config(false)).empty());
  EXPECT_TRUE(validate_config(default_config(true)).empty());
  EXPECT_EQ(default_config(true).system.thermal_units.size(), 3u);
  EXPECT_EQ(default_config(false).system.thermal_units.size(), 18u);
}

TEST(Config, DumpParseRoundTrip) {
  for (bool reduced : {false, true}) {
    const Config c = default_config(reduced);
    const Config back = parse_config(dump_config(c));
    EXPECT_TRUE(back == c);
    EXPECT_EQ(dump_config(back), dump_config(c));
  }
}

TEST(Config, HashTracksContent) {
  Config a = default_config(true);
  Config b = a;
  EXPECT_EQ(config_hash(a), config_hash(b));
  EXPECT_EQ(config_hash(a).size(), 16u);
  b.series.seed += 1;
  EXPECT_NE(config_hash(a), config_hash(b));
}

TEST(Config, UnknownKeyRejected) {
  auto text = dump_config(default_config(true));
  text.insert(text.find('{') + 1, "\"surprise\": 1,");
  EXPECT_THROW(parse_config(text), ValidationError);
}

TEST(Config, MalformedJsonIsIoError) { EXPECT_THROW(parse_config("{ not json"), IoError); }

TEST(Config, MissingFileIsIoError) { EXPECT_THROW(load_config("/nonexistent/island.json"), IoError); }

TEST(Config, ValidationFindsBrokenUnit) {
  Config c = default_config(true);
  c.system.thermal_units[0].p_min = c.system.thermal_units[0].p_max + 1;
  EXPECT_FALSE(validate_config(c).empty());
  c = default_config(true);
  c.system.start_states.pop_back();
  EXPECT_FALSE(validate_config(c).empty());
}

TEST(Config, LoadResolvesRelativeSeriesPaths) {
  const auto dir = std::filesystem::temp_directory_path() / "islandsim_cfg_test";
  std::filesystem::create_directories(dir);
  Config c = default_config(true);
  c.series.load.csv = "load.csv";
  {
    std::ofstream f(dir / "cfg.json");
    f << dump_config(c);
  }
  const Config back = load_config(dir / "cfg.json");
  EXPECT_EQ(std::filesystem::path(back.series.load.csv), dir / "load.csv");
  std::filesystem::remove_all(dir);
}

TEST(Scenario, IdsEncodeConceptAndSizing) {
  EXPECT_EQ(make_scenario(Management::central, 75, 45, 2).id, "C_P045.0_H02.0");
  EXPECT_EQ(make_scenario(Management::self, 75, 30, 8).id, "S_P030.0_H08.0");
  EXPECT_EQ(make_scenario(Management::central, 50, 7.5, 10).id, "C_P007.5_H10.0_W050.0");
  EXPECT_TRUE(base_scenario().is_base());
  EXPECT_EQ(store_flag(Management::central), "1");
  EXPECT_EQ(store_flag(Management::self), "2");
  EXPECT_EQ(management_from_string("self"), Management::self);
  EXPECT_THROW(management_from_string("hybrid"), ValidationError);
}

TEST(Scenario, PlanStartsWithBaseAndHasNoDuplicates) {
  Config c = default_config(true);
  c.sweep.central = {{30, 30}, {8}};
  c.sweep.self = {{30}, {8, 4}};
  const auto plan = sweep_plan(c);
  ASSERT_EQ(plan.size(), 4u);
  EXPECT_EQ(plan[0].id, "BASE");
  EXPECT_EQ(plan[1].id, "C_P030.0_H08.0");
  EXPECT_EQ(plan[2].management, Management::self);
}

TEST(Scenario, SystemsFollowTheConcept) {
  Config c = default_config(true);
  SeriesSet s;
  s.load.values.assign(48, 100);
  s.wind.values.assign(48, 0.5);
  s.new_wind.values.assign(48, 0.25);
  s.pv.values.assign(48, 0.1);

  const auto central = build_scenario_system(c, s, make_scenario(Management::central, 75, 30, 8));
  ASSERT_EQ(central.bes_units.size(), 1u);
  EXPECT_TRUE(central.hps_plants.empty());
  EXPECT_DOUBLE_EQ(central.bes_units[0].e_max, 240);
  EXPECT_DOUBLE_EQ(central.wind_new[0], 75 * 0.25);
  EXPECT_DOUBLE_EQ(central.wind_existing[0], c.system.existing_wind_mw * 0.5);

  const auto self = build_scenario_system(c, s, make_scenario(Management::self, 75, 30, 8));
  ASSERT_EQ(self.hps_plants.size(), 1u);
  EXPECT_TRUE(self.bes_units.empty());
  EXPECT_DOUBLE_EQ(self.wind_new[0], 0.0);
  EXPECT_DOUBLE_EQ(self.hps_res[0][0], 75 * 0.25);
  EXPECT_DOUBLE_EQ(self.hps_plants[0].storage.e_max, 240);

  const auto base = build_scenario_system(c, s, base_scenario());
  EXPECT_TRUE(base.bes_units.empty());
  EXPECT_DOUBLE_EQ(base.wind_new[0], 0.0);
  EXPECT_THROW(build_scenario_system(c, s, make_scenario(Management::self, 75, 0, 0)), ValidationError);
}
