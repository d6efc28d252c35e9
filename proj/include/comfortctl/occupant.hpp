#pragma once

#include <cmath>
#include <string>

#include "comfortctl/errors.hpp"

namespace comfortctl {

// One occupant's comfort model: an ideal temperature, a Gaussian length
// scale governing how fast discomfort grows away from it, and a tolerance
// half-width defining the temperature band the occupant accepts.
struct Occupant {
    int id = 0;
    double ideal_temp = 20.0;  // °C
    double sensitivity = 1.0;  // °C, strictly positive
    double tolerance = 0.0;    // °C, non-negative

    friend bool operator==(const Occupant&, const Occupant&) = default;
};

inline void validate(const Occupant& o) {
    if (!std::isfinite(o.ideal_temp))
        throw DomainError("occupant " + std::to_string(o.id) + ": ideal_temp must be finite");
    if (!std::isfinite(o.sensitivity) || !(o.sensitivity > 0.0))
        throw DomainError("occupant " + std::to_string(o.id) + ": sensitivity must be > 0");
    if (!std::isfinite(o.tolerance) || o.tolerance < 0.0)
        throw DomainError("occupant " + std::to_string(o.id) + ": tolerance must be >= 0");
}

// Ternary feedback an occupant can press on their remote: +1 too cold,
// 0 comfortable, -1 too hot. The numeric encoding is what gets summed
// by the aggregation layer, so it is part of the contract.
enum class ComfortSignal : int {
    Hot = -1,
    Comfortable = 0,
    Cold = +1,
};

constexpr int to_int(ComfortSignal s) { return static_cast<int>(s); }

namespace detail {
inline void check_finite_temp(double temp, const char* what) {
    if (!std::isfinite(temp)) throw DomainError(std::string(what) + " must be finite");
}
}  // namespace detail

// Signed discomfort in (-1, +1): positive when the room is colder than the
// occupant's ideal, negative when warmer. The value at the ideal itself is 0,
// the common limit of both branches, so the function is continuous and
// strictly decreasing.
inline double signed_discomfort(const Occupant& o, double room_temp) {
    validate(o);
    detail::check_finite_temp(room_temp, "room_temp");
    const double gap = room_temp - o.ideal_temp;
    if (gap == 0.0) return 0.0;
    const double bump = std::exp(-(gap * gap) / (o.sensitivity * o.sensitivity));
    return gap < 0.0 ? 1.0 - bump : bump - 1.0;
}

// |signed_discomfort|, in [0, 1); zero exactly at the ideal temperature.
inline double abs_discomfort(const Occupant& o, double room_temp) {
    return std::fabs(signed_discomfort(o, room_temp));
}

// Ternary signal. The acceptable interval
// [ideal - tolerance, ideal + tolerance] is inclusive at both ends, and the
// boundary comparisons are exact IEEE comparisons, no epsilon: the signal is
// a pure step function of room_temp.
inline ComfortSignal comfort_signal(const Occupant& o, double room_temp) {
    validate(o);
    detail::check_finite_temp(room_temp, "room_temp");
    if (room_temp < o.ideal_temp - o.tolerance) return ComfortSignal::Cold;
    if (room_temp > o.ideal_temp + o.tolerance) return ComfortSignal::Hot;
    return ComfortSignal::Comfortable;
}

}  // namespace comfortctl
