#include "evade/strategy.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace evade {

const char* stage_name(Stage stage) {
  switch (stage) {
    case Stage::LargeAzimuth: return "large-azimuth";
    case Stage::SmallAzimuth: return "small-azimuth";
    case Stage::ShortDistance: return "short-distance";
  }
  return "?";
}

Stage select_stage(std::optional<Stage> prev, double range, double azimuth,
                   const SwitchThresholds& t) {
  if (prev == Stage::ShortDistance) return Stage::ShortDistance;  // absorbing
  if (range <= t.enter_short_range) return Stage::ShortDistance;
  double mag = std::abs(azimuth);
  if (!prev.has_value()) {
    return mag <= t.small_large_split ? Stage::SmallAzimuth
                                      : Stage::LargeAzimuth;
  }
  if (*prev == Stage::LargeAzimuth) {
    return mag < t.large_exit_azimuth ? Stage::SmallAzimuth
                                      : Stage::LargeAzimuth;
  }
  // prev == SmallAzimuth
  return mag > t.small_large_split ? Stage::LargeAzimuth : Stage::SmallAzimuth;
}

ControlAction act(const StrategyBundle& bundle, Stage stage,
                  const Observation& obs) {
  switch (stage) {
    case Stage::LargeAzimuth:
      return policy_forward(bundle.large_azimuth, obs).mean;
    case Stage::SmallAzimuth:
      return policy_forward(bundle.small_azimuth, obs).mean;
    case Stage::ShortDistance:
      return policy_forward(bundle.short_distance, obs).mean;
  }
  return {};
}

ControlAction MultiStageStrategy::decide(const Observation& obs,
                                         const RelativeGeometry& rel) {
  stage_ = select_stage(stage_, rel.range, rel.azimuth, bundle_.thresholds);
  return act(bundle_, *stage_, obs);
}

ControlAction SinglePolicyStrategy::decide(const Observation& obs,
                                           const RelativeGeometry&) {
  return policy_forward(params_, obs).mean;
}

void save_bundle_manifest(const std::string& path,
                          const std::string& large_path,
                          const std::string& small_path,
                          const std::string& short_path,
                          const SwitchThresholds& thresholds) {
  nlohmann::json j;
  j["large_azimuth"] = large_path;
  j["small_azimuth"] = small_path;
  j["short_distance"] = short_path;
  j["enter_short_range_m"] = thresholds.enter_short_range;
  j["small_large_split_deg"] = rad2deg(thresholds.small_large_split);
  j["large_exit_azimuth_deg"] = rad2deg(thresholds.large_exit_azimuth);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write bundle manifest: " + path);
  out << j.dump(2) << "\n";
}

StrategyBundle load_bundle(const std::string& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) {
    throw std::runtime_error("cannot read bundle manifest: " + manifest_path);
  }
  nlohmann::json j = nlohmann::json::parse(in);
  // checkpoint paths are resolved relative to the manifest
  std::filesystem::path base =
      std::filesystem::path(manifest_path).parent_path();
  auto resolve = [&](const std::string& p) {
    std::filesystem::path fp(p);
    return fp.is_absolute() ? fp.string() : (base / fp).string();
  };
  StrategyBundle bundle;
  bundle.large_azimuth =
      load_checkpoint(resolve(j.at("large_azimuth").get<std::string>()));
  bundle.small_azimuth =
      load_checkpoint(resolve(j.at("small_azimuth").get<std::string>()));
  bundle.short_distance =
      load_checkpoint(resolve(j.at("short_distance").get<std::string>()));
  bundle.thresholds.enter_short_range =
      j.value("enter_short_range_m", 8000.0);
  bundle.thresholds.small_large_split =
      deg2rad(j.value("small_large_split_deg", 30.0));
  bundle.thresholds.large_exit_azimuth =
      deg2rad(j.value("large_exit_azimuth_deg", 15.0));
  if (!(bundle.thresholds.large_exit_azimuth <
        bundle.thresholds.small_large_split)) {
    throw std::runtime_error("bundle thresholds: exit must be below split");
  }
  return bundle;
}

}  // namespace evade
