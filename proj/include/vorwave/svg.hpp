#pragma once

#include "vorwave/fields.hpp"
#include "vorwave/kinematics.hpp"

#include <string>
#include <vector>

namespace vorwave {

/// Streamline fan with velocity arrows over one period. Fixed styling; arrow
/// segments carry data-u / data-v attributes so tests can read the field back.
void write_streamline_figure(const std::string& path, const FieldSampler& fs,
                             int n_levels = 9, int arrows_x = 16, int arrows_y = 6);

/// Drift profile D(p) against mean streamline height plus particle orbits for
/// a few depths.
void write_drift_orbit_figure(const std::string& path, const FieldSampler& fs,
                              const std::vector<Trajectory>& orbits);

} // namespace vorwave
