#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "comfortctl/errors.hpp"

namespace comfortctl {

inline constexpr double kHoursPerDay = 24.0;
inline constexpr double kTroughHour = 5.0;  // daily minimum at 05:00
inline constexpr double kPeakHour = 15.0;   // daily maximum at 15:00

// Synthetic multi-day outdoor temperature scenario. Each day draws its
// minimum and maximum from the given ranges; everything else is a
// deterministic function of the seed.
struct OutdoorProfile {
    std::uint64_t seed = 0;
    int days = 7;
    std::array<double, 2> daily_min_range{9.0, 13.0};
    std::array<double, 2> daily_max_range{20.0, 25.0};
    int samples_per_day = 240;
};

inline void validate(const OutdoorProfile& p) {
    if (p.days < 1) throw DomainError("profile.days must be >= 1");
    if (p.samples_per_day < 1) throw DomainError("profile.samples_per_day must be >= 1");
    if (!std::isfinite(p.daily_min_range[0]) || !std::isfinite(p.daily_min_range[1]) ||
        !(p.daily_min_range[0] <= p.daily_min_range[1]))
        throw DomainError("profile.daily_min_range must be finite and ordered");
    if (!std::isfinite(p.daily_max_range[0]) || !std::isfinite(p.daily_max_range[1]) ||
        !(p.daily_max_range[0] <= p.daily_max_range[1]))
        throw DomainError("profile.daily_max_range must be finite and ordered");
    if (!(p.daily_min_range[1] < p.daily_max_range[0]))
        throw DomainError(
            "profile.daily_min_range upper bound must lie below daily_max_range lower bound");
}

namespace detail {
// 53-bit uniform in [0, 1). Derived from the raw engine output so the stream
// does not depend on the standard library's distribution implementations.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}
}  // namespace detail

// Continuous diurnal temperature curve: cosine half-waves between anchor
// points at each day's trough (05:00) and peak (15:00). Consecutive days are
// joined by the half-wave from one day's peak down to the next day's trough,
// so the curve is continuous across day boundaries. The stretches before the
// first trough and after the last peak reuse the adjacent day's draw as a
// virtual anchor, which keeps the random draw count at exactly two per day.
class DiurnalCurve {
 public:
    explicit DiurnalCurve(const OutdoorProfile& profile) {
        validate(profile);
        std::mt19937_64 rng(profile.seed);
        std::vector<double> mins(static_cast<std::size_t>(profile.days));
        std::vector<double> maxs(static_cast<std::size_t>(profile.days));
        for (int d = 0; d < profile.days; ++d) {
            mins[static_cast<std::size_t>(d)] =
                detail::uniform(rng, profile.daily_min_range[0], profile.daily_min_range[1]);
            maxs[static_cast<std::size_t>(d)] =
                detail::uniform(rng, profile.daily_max_range[0], profile.daily_max_range[1]);
        }

        anchor_times_.push_back(kPeakHour - kHoursPerDay);
        anchor_values_.push_back(maxs.front());
        for (int d = 0; d < profile.days; ++d) {
            anchor_times_.push_back(d * kHoursPerDay + kTroughHour);
            anchor_values_.push_back(mins[static_cast<std::size_t>(d)]);
            anchor_times_.push_back(d * kHoursPerDay + kPeakHour);
            anchor_values_.push_back(maxs[static_cast<std::size_t>(d)]);
        }
        anchor_times_.push_back(profile.days * kHoursPerDay + kTroughHour);
        anchor_values_.push_back(mins.back());
        duration_ = profile.days * kHoursPerDay;
    }

    double duration() const { return duration_; }

    // Defined on [0, duration]; arguments outside are clamped to the covered
    // anchor span. An anchor time evaluates to its drawn value exactly.
    double value_at(double t) const {
        t = std::clamp(t, anchor_times_.front(), anchor_times_.back());
        const auto it = std::upper_bound(anchor_times_.begin(), anchor_times_.end(), t);
        if (it == anchor_times_.end()) return anchor_values_.back();
        const std::size_t j = static_cast<std::size_t>(it - anchor_times_.begin());
        if (j == 0) return anchor_values_.front();
        const double t0 = anchor_times_[j - 1];
        const double t1 = anchor_times_[j];
        const double v0 = anchor_values_[j - 1];
        const double v1 = anchor_values_[j];
        const double phase = (t - t0) / (t1 - t0);
        const double blend = 0.5 - 0.5 * std::cos(std::numbers::pi * phase);
        return v0 + (v1 - v0) * blend;
    }

 private:
    std::vector<double> anchor_times_;
    std::vector<double> anchor_values_;
    double duration_ = 0.0;
};

struct OutdoorSeries {
    std::vector<double> times;  // hours from scenario start
    std::vector<double> temps;  // °C
};

// Samples the diurnal curve on the profile's uniform grid, endpoint
// included. Sample times are computed as (i * 24) / samples_per_day so grid
// points that land on whole anchor hours are exact.
inline OutdoorSeries generate_outdoor(const OutdoorProfile& profile) {
    const DiurnalCurve curve(profile);
    const long total = static_cast<long>(profile.days) * profile.samples_per_day;
    OutdoorSeries series;
    series.times.reserve(static_cast<std::size_t>(total) + 1);
    series.temps.reserve(static_cast<std::size_t>(total) + 1);
    for (long i = 0; i <= total; ++i) {
        const double t = (static_cast<double>(i) * kHoursPerDay) / profile.samples_per_day;
        series.times.push_back(t);
        series.temps.push_back(curve.value_at(t));
    }
    return series;
}

}  // namespace comfortctl
