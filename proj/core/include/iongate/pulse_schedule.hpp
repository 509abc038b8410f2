#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace iongate {

// Unsigned envelope shapes on a segment of length d, with s the time since
// the segment start:
//   Constant, Flat -> 1
//   RampUp         -> sin^2(pi s / 2d)
//   RampDown       -> cos^2(pi s / 2d)
enum class Envelope { Constant, RampUp, Flat, RampDown };

struct PulseSegment {
  double duration = 0.0;
  Envelope shape = Envelope::Constant;
  double amplitude_scale = 1.0;  // +1 or -1
  double zeta_offset = 0.0;
  double phi_offset = 0.0;
};

// Piecewise amplitude and phase program starting at t = 0. The Rabi frequency
// at time t is peak * envelope(t) * amplitude_scale, where peak is the
// schedule's own peak_rabi if set and the caller's base Rabi frequency
// otherwise.
class PulseSchedule {
 public:
  // Throws GeometryError on non-positive durations, a scale other than +-1, or
  // an unsigned envelope that jumps at a segment boundary.
  explicit PulseSchedule(std::vector<PulseSegment> segments,
                         std::optional<double> peak_rabi = std::nullopt);

  [[nodiscard]] static PulseSchedule constant(double duration);

  [[nodiscard]] const std::vector<PulseSegment>& segments() const noexcept { return segments_; }
  [[nodiscard]] std::optional<double> peak_rabi() const noexcept { return peak_rabi_; }
  [[nodiscard]] double total_duration() const noexcept { return starts_.back(); }
  // Segment start times followed by the total duration.
  [[nodiscard]] const std::vector<double>& boundaries() const noexcept { return starts_; }
  [[nodiscard]] double segment_start(std::size_t index) const { return starts_.at(index); }

  // Index of the segment containing t; the right end belongs to the last segment.
  [[nodiscard]] std::size_t segment_index(double t) const;

  // Unsigned envelope value in [0, 1].
  [[nodiscard]] double envelope(double t) const;
  [[nodiscard]] double rabi(double t, double base_omega) const;
  [[nodiscard]] double peak(double base_omega) const;

  // Starts and ends at zero amplitude.
  [[nodiscard]] bool is_shaped() const;

  // Appends next after this schedule. Keeps this schedule's peak_rabi, which
  // must agree with next's when both are set.
  [[nodiscard]] PulseSchedule then(const PulseSchedule& next) const;

  // Integral over [a, b] (inside segment `index`) of
  //   envelope(t) * amplitude_scale * cos(delta t + zeta + zeta_offset).
  [[nodiscard]] double modulated_integral(std::size_t index, double a, double b, double delta,
                                          double zeta) const;

 private:
  std::vector<PulseSegment> segments_;
  std::optional<double> peak_rabi_;
  std::vector<double> starts_;
};

}  // namespace iongate
