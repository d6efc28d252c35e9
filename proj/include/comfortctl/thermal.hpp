#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "comfortctl/aggregate.hpp"
#include "comfortctl/errors.hpp"
#include "comfortctl/occupant.hpp"
#include "comfortctl/policy.hpp"
#include "comfortctl/weather.hpp"

namespace comfortctl {

enum class ControlSign {
    Stabilizing,  // w = +k * h: a cold majority turns heating on
    Inverted,     // w = -k * h: the opposite sign convention
};

struct ThermalParams {
    double heat_exchange = 0.1;  // c: relaxation rate toward outdoor temperature, > 0
    double control_gain = 1.0;   // k: °C per time unit per signal count, >= 0
    double dt = 0.1;             // explicit integration step, > 0
    ControlSign control_sign = ControlSign::Stabilizing;
    double hysteresis = 0.0;     // re-engage guard width in °C, >= 0

    friend bool operator==(const ThermalParams&, const ThermalParams&) = default;
};

inline void validate(const ThermalParams& p) {
    if (!std::isfinite(p.heat_exchange) || !(p.heat_exchange > 0.0))
        throw DomainError("thermal.heat_exchange must be > 0");
    if (!std::isfinite(p.control_gain) || !(p.control_gain >= 0.0))
        throw DomainError("thermal.control_gain must be >= 0");
    if (!std::isfinite(p.dt) || !(p.dt > 0.0)) throw DomainError("thermal.dt must be > 0");
    if (!(p.heat_exchange * p.dt < 1.0))
        throw DomainError("thermal.heat_exchange * dt must stay below 1 for a stable explicit update");
    if (!std::isfinite(p.hysteresis) || p.hysteresis < 0.0)
        throw DomainError("thermal.hysteresis must be >= 0");
}

// HVAC drive computed from the aggregate occupant signal at the current room
// temperature. Zero whenever every occupant is comfortable (the dead-band).
inline double control_input(std::span<const Occupant> occupants, double room_temp,
                            const ThermalParams& params) {
    validate(params);
    const double sign = params.control_sign == ControlSign::Stabilizing ? 1.0 : -1.0;
    return sign * params.control_gain * total_signal(occupants, room_temp);
}

// One explicit fixed-step update of the room-temperature ODE
// dT/dt = -c * (T - T_ext) + w.
inline double step_room_temp(double room_temp, double outdoor_temp, double control,
                             const ThermalParams& params) {
    validate(params);
    return room_temp +
           params.dt * (-params.heat_exchange * (room_temp - outdoor_temp) + control);
}

// Per-interval override of the controller's target: either a common tolerance
// applied to every occupant, or a fixed target band. Intervals are half-open
// [start_time, end_time) in time units, ordered and non-overlapping.
struct BandSegment {
    double start_time = 0.0;
    double end_time = 0.0;
    std::optional<double> tolerance;
    std::optional<ComfortBand> band;
};

inline void validate_schedule(std::span<const BandSegment> schedule) {
    double prev_end = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        const BandSegment& seg = schedule[i];
        if (!std::isfinite(seg.start_time) || !std::isfinite(seg.end_time) ||
            !(seg.start_time < seg.end_time))
            throw DomainError("schedule segment " + std::to_string(i) +
                              ": start_time must be < end_time");
        if (seg.start_time < prev_end)
            throw DomainError("schedule segment " + std::to_string(i) +
                              ": overlaps the previous segment");
        if (seg.tolerance.has_value() == seg.band.has_value())
            throw DomainError("schedule segment " + std::to_string(i) +
                              ": exactly one of tolerance or band must be set");
        if (seg.tolerance && (!std::isfinite(*seg.tolerance) || *seg.tolerance < 0.0))
            throw DomainError("schedule segment " + std::to_string(i) +
                              ": tolerance must be >= 0");
        if (seg.band) validate(*seg.band);
        prev_end = seg.end_time;
    }
}

// Segment owning time t, or nullptr for gaps. Samples that land a rounding
// error past the final end_time (the last integration step) stay with the
// final segment.
inline const BandSegment* find_segment(std::span<const BandSegment> schedule, double t) {
    for (const BandSegment& seg : schedule) {
        if (t < seg.end_time) return t >= seg.start_time ? &seg : nullptr;
    }
    if (!schedule.empty()) {
        const BandSegment& last = schedule.back();
        const double slack = 1e-9 * std::max(1.0, std::fabs(last.end_time));
        if (t <= last.end_time + slack) return &last;
    }
    return nullptr;
}

// Everything recorded while a simulation runs. All series share the length
// of `times`. `signal_sum` and `discomfort_count` are evaluated at the
// simulated room temperature against the active tolerances;
// `per_user_abs_discomfort[i]` is occupant i's discomfort at the
// energy-optimal setpoint for the active band, i.e. the discomfort the
// policy asks them to accept at that moment.
struct SimulationTrace {
    std::vector<double> times;
    std::vector<double> outdoor;
    std::vector<double> room;
    std::vector<double> control;
    std::vector<int> signal_sum;
    std::vector<int> discomfort_count;
    std::vector<std::vector<double>> per_user_abs_discomfort;  // [occupant][sample]
};

namespace detail {

// Signals and target band in force during one stretch of the simulation.
// A fixed-band segment treats the band itself as every occupant's acceptable
// interval, so the drive is zero inside it and saturates at +/-N outside.
struct ControlRegime {
    std::vector<Occupant> occupants;  // active tolerances applied
    ComfortBand band;
    bool band_driven = false;

    int signal_sum_at(double t) const {
        if (!band_driven) return total_signal(occupants, t);
        const int n = static_cast<int>(occupants.size());
        if (t < band.t_min) return n;
        if (t > band.t_max) return -n;
        return 0;
    }
    int discomfort_count_at(double t) const {
        if (!band_driven) return total_abs_signal(occupants, t);
        return (t < band.t_min || t > band.t_max) ? static_cast<int>(occupants.size()) : 0;
    }
};

inline ControlRegime make_regime(std::span<const Occupant> occupants, const BandSegment* seg) {
    ControlRegime regime;
    regime.occupants.assign(occupants.begin(), occupants.end());
    if (seg && seg->tolerance) {
        for (Occupant& o : regime.occupants) o.tolerance = *seg->tolerance;
        regime.band = solve_band(regime.occupants);
    } else if (seg && seg->band) {
        regime.band = *seg->band;
        regime.band_driven = true;
    } else {
        regime.band = solve_band(regime.occupants);
    }
    return regime;
}

// Bang-bang drive with an optional re-engage guard: once the room reaches the
// dead-band the actuator stays off until the signal still fires when the
// room temperature is shifted `width` degrees into the band. With zero width
// this reduces exactly to w = sign * k * signal_sum(room).
class HysteresisController {
 public:
    HysteresisController(double width, double gain, double sign)
        : width_(width), gain_(gain), sign_(sign) {}

    double drive(const ControlRegime& regime, double room_temp) {
        if (width_ == 0.0)
            return sign_ * gain_ * regime.signal_sum_at(room_temp);
        if (direction_ == 0) {
            if (regime.signal_sum_at(room_temp + width_) > 0)
                direction_ = +1;
            else if (regime.signal_sum_at(room_temp - width_) < 0)
                direction_ = -1;
            else
                return 0.0;
        }
        const int sum = regime.signal_sum_at(room_temp);
        if (direction_ > 0 ? sum <= 0 : sum >= 0) {
            direction_ = 0;
            return 0.0;
        }
        return sign_ * gain_ * sum;
    }

 private:
    double width_;
    double gain_;
    double sign_;
    int direction_ = 0;  // +1 heating engaged, -1 cooling engaged
};

}  // namespace detail

// Closed-loop simulation over [0, duration]: at each sample the drive is
// computed from the occupant signals, the trace is recorded, and the room
// temperature advances one explicit step. Deterministic given its inputs.
inline SimulationTrace run_simulation(std::span<const Occupant> occupants,
                                      const std::function<double(double)>& outdoor_at,
                                      double duration, const ThermalParams& params,
                                      double initial_room_temp,
                                      std::span<const BandSegment> schedule = {}) {
    detail::check_occupants(occupants);
    for (const Occupant& o : occupants) validate(o);
    validate(params);
    validate_schedule(schedule);
    if (!std::isfinite(duration) || !(duration > 0.0))
        throw DomainError("duration must be > 0");
    detail::check_finite_temp(initial_room_temp, "initial_room_temp");

    // Regimes per segment plus the fallback regime for gaps.
    std::vector<detail::ControlRegime> regimes;
    regimes.reserve(schedule.size());
    for (const BandSegment& seg : schedule)
        regimes.push_back(detail::make_regime(occupants, &seg));
    const detail::ControlRegime base = detail::make_regime(occupants, nullptr);
    const auto regime_at = [&](double t) -> const detail::ControlRegime& {
        const BandSegment* seg = find_segment(schedule, t);
        return seg ? regimes[static_cast<std::size_t>(seg - schedule.data())] : base;
    };

    const long steps = std::lround(duration / params.dt);
    const double sign = params.control_sign == ControlSign::Stabilizing ? 1.0 : -1.0;
    detail::HysteresisController controller(params.hysteresis, params.control_gain, sign);

    SimulationTrace trace;
    const std::size_t samples = static_cast<std::size_t>(steps) + 1;
    trace.times.reserve(samples);
    trace.outdoor.reserve(samples);
    trace.room.reserve(samples);
    trace.control.reserve(samples);
    trace.signal_sum.reserve(samples);
    trace.discomfort_count.reserve(samples);
    trace.per_user_abs_discomfort.assign(occupants.size(), {});
    for (auto& series : trace.per_user_abs_discomfort) series.reserve(samples);

    double room = initial_room_temp;
    for (long n = 0; n <= steps; ++n) {
        const double t = static_cast<double>(n) * params.dt;
        const detail::ControlRegime& regime = regime_at(t);
        const double t_ext = outdoor_at(t);
        const double w = controller.drive(regime, room);
        const double sp = setpoint(t_ext, regime.band);

        trace.times.push_back(t);
        trace.outdoor.push_back(t_ext);
        trace.room.push_back(room);
        trace.control.push_back(w);
        trace.signal_sum.push_back(regime.signal_sum_at(room));
        trace.discomfort_count.push_back(regime.discomfort_count_at(room));
        for (std::size_t i = 0; i < occupants.size(); ++i)
            trace.per_user_abs_discomfort[i].push_back(abs_discomfort(occupants[i], sp));

        if (n < steps) {
            room = step_room_temp(room, t_ext, w, params);
            if (!std::isfinite(room) || std::fabs(room) > 200.0)
                throw NumericError("room temperature diverged to " + std::to_string(room) +
                                   " at step " + std::to_string(n + 1) + " (t=" +
                                   std::to_string(static_cast<double>(n + 1) * params.dt) + ")");
        }
    }
    return trace;
}

// Profile-driven variant: outdoor temperatures come from the seeded diurnal
// curve; the room starts at the first outdoor sample unless told otherwise.
inline SimulationTrace run_simulation(std::span<const Occupant> occupants,
                                      const OutdoorProfile& profile,
                                      const ThermalParams& params,
                                      std::optional<double> initial_room_temp = std::nullopt,
                                      std::span<const BandSegment> schedule = {}) {
    const DiurnalCurve curve(profile);
    return run_simulation(
        occupants, [&curve](double t) { return curve.value_at(t); }, curve.duration(), params,
        initial_room_temp.value_or(curve.value_at(0.0)), schedule);
}

}  // namespace comfortctl
