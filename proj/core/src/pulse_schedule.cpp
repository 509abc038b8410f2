#include "iongate/pulse_schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "iongate/errors.hpp"

namespace iongate {

namespace {

double start_value(Envelope shape) { return shape == Envelope::RampUp ? 0.0 : 1.0; }
double end_value(Envelope shape) { return shape == Envelope::RampDown ? 0.0 : 1.0; }

// Integral of cos(w t + p) over [a, b].
double cos_integral(double w, double p, double a, double b) {
  if (std::abs(w) < 1e-12) return std::cos(p) * (b - a);
  return (std::sin(w * b + p) - std::sin(w * a + p)) / w;
}

}  // namespace

PulseSchedule::PulseSchedule(std::vector<PulseSegment> segments, std::optional<double> peak_rabi)
    : segments_(std::move(segments)), peak_rabi_(peak_rabi) {
  if (segments_.empty()) throw GeometryError("pulse schedule needs at least one segment");
  if (peak_rabi_ && !(*peak_rabi_ >= 0.0)) throw GeometryError("peak Rabi frequency must be >= 0");
  starts_.reserve(segments_.size() + 1);
  starts_.push_back(0.0);
  for (std::size_t k = 0; k < segments_.size(); ++k) {
    const PulseSegment& seg = segments_[k];
    if (!(seg.duration > 0.0) || !std::isfinite(seg.duration)) {
      throw GeometryError("segment " + std::to_string(k) + " has non-positive duration");
    }
    if (seg.amplitude_scale != 1.0 && seg.amplitude_scale != -1.0) {
      throw GeometryError("segment " + std::to_string(k) + " amplitude scale must be +1 or -1");
    }
    if (k > 0 && end_value(segments_[k - 1].shape) != start_value(seg.shape)) {
      throw GeometryError("envelope is discontinuous at the start of segment " +
                          std::to_string(k));
    }
    starts_.push_back(starts_.back() + seg.duration);
  }
}

PulseSchedule PulseSchedule::constant(double duration) {
  return PulseSchedule({PulseSegment{duration, Envelope::Constant, 1.0, 0.0, 0.0}});
}

std::size_t PulseSchedule::segment_index(double t) const {
  if (t < 0.0 || t > total_duration() * (1.0 + 1e-14)) {
    throw std::out_of_range("time " + std::to_string(t) + " outside pulse schedule");
  }
  const auto it = std::upper_bound(starts_.begin(), starts_.end(), t);
  const auto index = static_cast<std::size_t>(std::distance(starts_.begin(), it)) - 1;
  return std::min(index, segments_.size() - 1);
}

double PulseSchedule::envelope(double t) const {
  const std::size_t k = segment_index(t);
  const PulseSegment& seg = segments_[k];
  const double s = std::clamp((t - starts_[k]) / seg.duration, 0.0, 1.0);
  switch (seg.shape) {
    case Envelope::RampUp: {
      const double v = std::sin(0.5 * std::numbers::pi * s);
      return v * v;
    }
    case Envelope::RampDown: {
      const double v = std::cos(0.5 * std::numbers::pi * s);
      return v * v;
    }
    case Envelope::Constant:
    case Envelope::Flat:
      break;
  }
  return 1.0;
}

double PulseSchedule::peak(double base_omega) const { return peak_rabi_.value_or(base_omega); }

double PulseSchedule::rabi(double t, double base_omega) const {
  return peak(base_omega) * envelope(t) * segments_[segment_index(t)].amplitude_scale;
}

bool PulseSchedule::is_shaped() const {
  return start_value(segments_.front().shape) == 0.0 && end_value(segments_.back().shape) == 0.0;
}

PulseSchedule PulseSchedule::then(const PulseSchedule& next) const {
  if (peak_rabi_ && next.peak_rabi_ && *peak_rabi_ != *next.peak_rabi_) {
    throw GeometryError("cannot join schedules with different peak Rabi frequencies");
  }
  std::vector<PulseSegment> joined = segments_;
  joined.insert(joined.end(), next.segments_.begin(), next.segments_.end());
  return PulseSchedule(std::move(joined), peak_rabi_ ? peak_rabi_ : next.peak_rabi_);
}

double PulseSchedule::modulated_integral(std::size_t index, double a, double b, double delta,
                                         double zeta) const {
  const PulseSegment& seg = segments_.at(index);
  const double phase = zeta + seg.zeta_offset;
  const double base = cos_integral(delta, phase, a, b);
  double value = base;
  if (seg.shape == Envelope::RampUp || seg.shape == Envelope::RampDown) {
    // sin^2 = (1 - cos(k s))/2, cos^2 = (1 + cos(k s))/2 with k = pi / d.
    const double k = std::numbers::pi / seg.duration;
    const double t0 = starts_[index];
    const double cross = 0.5 * (cos_integral(delta + k, phase - k * t0, a, b) +
                                cos_integral(delta - k, phase + k * t0, a, b));
    value = seg.shape == Envelope::RampUp ? 0.5 * (base - cross) : 0.5 * (base + cross);
  }
  return seg.amplitude_scale * value;
}

}  // namespace iongate
