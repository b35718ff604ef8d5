#include "sibgeo/sampling.hpp"

#include <array>
#include <cmath>

namespace sibgeo {

namespace {
constexpr std::array<unsigned, kMaxDim> kPrimes = {2, 3, 5, 7, 11, 13, 17, 19};
}

double halton(unsigned long index, unsigned base) {
  double result = 0.0;
  double f = 1.0;
  while (index > 0) {
    f /= base;
    result += f * static_cast<double>(index % base);
    index /= base;
  }
  return result;
}

std::vector<Vec> halton_points(const Chart& chart, int count) {
  if (count < 1) throw BadParameters("sample count must be at least 1");
  const int n = chart.dim();
  std::vector<Vec> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int k = 1; k <= count; ++k) {
    Vec p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const Interval& b = chart.box()[static_cast<std::size_t>(i)];
      p[static_cast<std::size_t>(i)] = b.lo + halton(static_cast<unsigned long>(k), kPrimes[static_cast<std::size_t>(i)]) * (b.hi - b.lo);
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

std::vector<Vec> grid_points(const Chart& chart, int count) {
  if (count < 1) throw BadParameters("sample count must be at least 1");
  const int n = chart.dim();
  int k = static_cast<int>(std::ceil(std::pow(static_cast<double>(count), 1.0 / n) - 1e-9));
  if (k < 1) k = 1;
  std::vector<Vec> pts;
  pts.reserve(static_cast<std::size_t>(count));
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  while (static_cast<int>(pts.size()) < count) {
    Vec p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const Interval& b = chart.box()[static_cast<std::size_t>(i)];
      p[static_cast<std::size_t>(i)] = b.lo + (idx[static_cast<std::size_t>(i)] + 0.5) / k * (b.hi - b.lo);
    }
    pts.push_back(std::move(p));
    int axis = n - 1;
    while (axis >= 0 && ++idx[static_cast<std::size_t>(axis)] == k) idx[static_cast<std::size_t>(axis--)] = 0;
    if (axis < 0) break;
  }
  return pts;
}

}  // namespace sibgeo
