#include <string>

#include <gtest/gtest.h>

#include "experiments/config.hpp"
#include "leosg/errors.hpp"

namespace leosg::experiments {
namespace {

TEST(Config, DefaultsTraceToPublishedParameters) {
  const ExperimentConfig c;
  EXPECT_EQ(c.earth_radius_km, 6371.0);
  EXPECT_EQ(c.tx_power_dbw, 15.0);
  EXPECT_EQ(c.alpha, 2.0);
  EXPECT_EQ(c.sr_omega, 1.29);
  EXPECT_EQ(c.sr_b, 0.158);
  EXPECT_EQ(c.sr_m, 19.4);
  EXPECT_EQ(c.threshold_db, -10.0);
  EXPECT_EQ(c.gw_densities_per_km2, std::vector<double>{3.0});
  EXPECT_EQ(c.relay_gw_count, 200u);
}

TEST(Config, PresetsRoundTrip) {
  for (auto kind : {ExperimentKind::fig3, ExperimentKind::fig4, ExperimentKind::fig5, ExperimentKind::custom,
                    ExperimentKind::validate}) {
    const ExperimentConfig c = preset(kind);
    EXPECT_NO_THROW(c.validate());
    EXPECT_EQ(parse_config_text(serialize_config(c)), c) << to_string(kind);
  }
}

TEST(Config, ShippedPresetFilesMatchBuiltIns) {
  for (auto kind : {ExperimentKind::fig3, ExperimentKind::fig4, ExperimentKind::fig5}) {
    ExperimentConfig file = load_config(std::string(LEOSG_PRESET_DIR) + "/" + to_string(kind) + ".cfg");
    ExperimentConfig built_in = preset(kind);
    built_in.output_dir = file.output_dir;
    EXPECT_EQ(file, built_in) << to_string(kind);
  }
}

TEST(Config, PresetGridsAreVerbatim) {
  EXPECT_EQ(preset(ExperimentKind::fig3).counts, (std::vector<double>{100, 300, 1000}));
  const auto fig4 = preset(ExperimentKind::fig4);
  ASSERT_EQ(fig4.counts.size(), 40u);
  EXPECT_EQ(fig4.counts.front(), 5.0);
  EXPECT_EQ(fig4.counts.back(), 200.0);
  EXPECT_EQ(preset(ExperimentKind::fig5).altitudes_km, (std::vector<double>{500, 1000, 1500}));
}

TEST(Config, ParsesCommentsListsAndNone) {
  const auto c = parse_config_text(
      "# comment\n"
      "experiment = custom\n"
      "shell.counts = 10, 20,30\n"
      "coverage.noise_dbw = none\n"
      "coverage.system = interference_limited  # trailing\n");
  EXPECT_EQ(c.counts, (std::vector<double>{10, 20, 30}));
  EXPECT_FALSE(c.noise_dbw.has_value());
  EXPECT_EQ(c.system_type, "interference_limited");
}

TEST(Config, UnknownAndDuplicateKeysAreErrors) {
  EXPECT_THROW(parse_config_text("experiment = custom\nshell.colour = red\n"), config_error);
  EXPECT_THROW(parse_config_text("trials = 100\ntrials = 200\n"), config_error);
  EXPECT_THROW(parse_config_text("trials\n"), config_error);
  EXPECT_THROW(parse_config_text("trials = many\n"), config_error);
}

TEST(Config, ValidationErrors) {
  ExperimentConfig c = preset(ExperimentKind::fig4);
  c.trials = 50;
  EXPECT_THROW(c.validate(), config_error);
  c = preset(ExperimentKind::fig4);
  c.noise_dbw.reset();
  EXPECT_THROW(c.validate(), config_error);
  c = preset(ExperimentKind::custom);
  c.counts.clear();
  EXPECT_THROW(c.validate(), config_error);
  c = preset(ExperimentKind::custom);
  c.counts = {2.5};
  EXPECT_THROW(c.validate(), config_error);
  c = preset(ExperimentKind::custom);
  c.alpha = 5.0;
  EXPECT_THROW(c.validate(), config_error);
  EXPECT_THROW(parse_experiment_kind("fig9"), config_error);
}

TEST(Config, MissingFileIsIoError) {
  EXPECT_THROW(load_config("/nonexistent/leosg.cfg"), std::ios_base::failure);
}

TEST(Config, BuildersApplySettings) {
  ExperimentConfig c = preset(ExperimentKind::custom);
  c.system_type = "noise_limited";
  c.nlos_interference = "constant";
  c.nlos_constant_dbw = -150.0;
  const SinrConfig s = make_sinr_config(c, 40, 750.0, -115.0);
  EXPECT_EQ(s.system_type, SystemType::noise_limited);
  EXPECT_EQ(std::get<NlosConstant>(s.nlos_interference).power_dbw, -150.0);
  EXPECT_EQ(std::get<Bpp>(s.shells.at(0).kind).count, 40u);
  EXPECT_EQ(s.shells[0].altitude_km, 750.0);
  EXPECT_EQ(s.noise_dbw, -115.0);
  c.scenario = "direct";
  EXPECT_TRUE(std::holds_alternative<Direct>(make_scenario(c, 3.0)));
  EXPECT_EQ(std::get<RelayCount>(std::get<GwRelay>(make_routing_mode(c, "gw_relay")).relays).count, 200u);
}

}  // namespace
}  // namespace leosg::experiments
