#pragma once

#include <vector>

#include "sibgeo/geometry.hpp"

namespace sibgeo {

// Radical inverse of `index` in `base`.
double halton(unsigned long index, unsigned base);

// The first `count` points of the Halton sequence (bases 2, 3, 5, 7, ...;
// index starting at 1) mapped affinely onto the chart's sampling box.
std::vector<Vec> halton_points(const Chart& chart, int count);

// Cell centres of a k^n grid over the box with k = ceil(count^(1/n)),
// truncated to the first `count` points in lexicographic order.
std::vector<Vec> grid_points(const Chart& chart, int count);

}  // namespace sibgeo
