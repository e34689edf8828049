#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fixtime/sim.hpp"

namespace fixtime {

struct SvgSeries {
    std::string label;
    std::vector<double> t;
    std::vector<double> y;
};

struct SvgPanel {
    std::string ylabel;
    std::vector<SvgSeries> series;
    /// log10 ordinate; values below log_floor are drawn at the floor.
    bool log_y = false;
    double log_floor = 1e-12;
};

/// Vertically stacked line charts sharing the time abscissa.
void write_svg(std::ostream& os, const std::string& title, std::span<const SvgPanel> panels);

struct LabeledTrajectory {
    std::string label;
    const Trajectory* traj = nullptr;
};

/// Panels x(t) (one series per component), V(t) and u(t). Series are
/// decimated to at most max_points samples.
std::vector<SvgPanel> trajectory_panels(std::span<const LabeledTrajectory> runs, bool log_state = false,
                                        std::size_t max_points = 1500);

}  // namespace fixtime
