#include "loadlm/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "loadlm/error.hpp"
#include "loadlm/prompt.hpp"

namespace loadlm {

void validate(const SynthConfig& config) {
  if (config.days <= 0) throw Error(ErrorCode::InvalidArgument, "synth days must be > 0");
  if (config.daily_amplitude < 0.0 || config.weekly_amplitude < 0.0 || config.noise_sd < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "synth amplitudes and noise_sd must be >= 0");
  }
  const double floor_level =
      config.base_load - config.daily_amplitude - config.weekly_amplitude - 4.0 * config.noise_sd;
  if (!(floor_level >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "synth config needs base - daily - weekly - 4*noise_sd >= 0");
  }
  if (config.resolution_decimals && (*config.resolution_decimals < 0 || *config.resolution_decimals > kMaxDecimals)) {
    throw Error(ErrorCode::InvalidArgument, "synth resolution_decimals out of range");
  }
}

LoadSeries synth_generate(const SynthConfig& config, const std::string& building_id) {
  validate(config);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const auto hours = static_cast<long long>(config.days) * 24;

  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> noise(0.0, config.noise_sd > 0.0 ? config.noise_sd : 1.0);

  std::vector<LoadRecord> records;
  records.reserve(static_cast<std::size_t>(hours));
  for (long long h = 0; h < hours; ++h) {
    double v = config.base_load + config.daily_amplitude * std::sin(two_pi * static_cast<double>(h % 24) / 24.0) +
               config.weekly_amplitude * std::sin(two_pi * static_cast<double>(h % 168) / 168.0);
    if (config.noise_sd > 0.0) v += noise(rng);
    v = std::max(v, 0.0);
    if (config.resolution_decimals) v = round_half_away(v, *config.resolution_decimals);
    records.push_back({building_id, config.start + std::chrono::hours{h}, v});
  }
  return LoadSeries(building_id, std::move(records));
}

}  // namespace loadlm
