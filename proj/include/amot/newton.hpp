#pragma once

#include <cstdint>
#include <vector>

#include "amot/common.hpp"

namespace amot {

// Lower Newton polygon of a set of lattice points (i, v_i). Points with
// absent valuation (zero coefficient) are simply omitted by the caller.
struct NewtonPolygon {
    // Hull vertices in increasing abscissa.
    std::vector<std::pair<int64_t, Rat>> vertices;

    // Slopes between consecutive vertices, each with its horizontal length.
    std::vector<std::pair<Rat, int64_t>> segments() const;

    // All slopes listed with multiplicity = horizontal length, ascending.
    std::vector<Rat> slopes_with_multiplicity() const;
};

NewtonPolygon lower_hull(std::vector<std::pair<int64_t, Rat>> points);

}  // namespace amot
