#pragma once

#include <string>

#include "kdist/multiples.hpp"
#include "kdist/tournament.hpp"

namespace kdist {

/// Renders a planar instance on the unit square: the n points as small
/// discs and every surviving edge as a chord coloured by its length class.
/// Edges that wrap around the torus are drawn as two clipped segments.
std::string render_svg(const MultipleTable& table, const SurvivorReport& report);

}  // namespace kdist
