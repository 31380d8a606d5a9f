#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "loadlm/series.hpp"

namespace loadlm {

/// Parameters of the synthetic building-load generator:
///   base + daily*sin(2*pi*h/24) + weekly*sin(2*pi*h/168) + N(0, noise_sd), clamped at 0.
/// `h` counts hours from `start`.
struct SynthConfig {
  std::uint64_t seed = 0;
  int days = 90;
  double base_load = 100.0;
  double daily_amplitude = 30.0;
  double weekly_amplitude = 10.0;
  double noise_sd = 5.0;
  Timestamp start = Timestamp{std::chrono::sys_days{std::chrono::year{2019} / 1 / 1}};
  /// Meter resolution: when set, readings are rounded half away from zero to this many decimals.
  std::optional<int> resolution_decimals;
};

/// Throws InvalidArgument unless days > 0, amplitudes >= 0, noise_sd >= 0 and
/// base - daily - weekly - 4*noise_sd >= 0.
void validate(const SynthConfig& config);

/// Deterministic for a fixed config. With noise_sd == 0 and weekly == 0 the
/// output is exactly 24-periodic (phases are reduced modulo the period).
[[nodiscard]] LoadSeries synth_generate(const SynthConfig& config, const std::string& building_id);

}  // namespace loadlm
