#pragma once

#include "sysw/birkhoff.hpp"

#include <string>

namespace sysw {

// Tree development of the triangulation with paths drawn on top; marked vertices are dots.
std::string development_svg(const ConeSurface& surface, const std::vector<GeodesicPath>& paths = {},
                            double width = 640.);

// Filmstrip of a sweepout: up to `max_frames` evenly spaced frames drawn on the development of the
// sphere, each labelled with its mass.
std::string sweepout_svg(const ConeSurface& sphere, const SweepOut& sweepout, int max_frames = 12,
                         double panel_width = 200.);

} // namespace sysw
