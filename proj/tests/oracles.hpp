// Copyright 2026 The Tendon Hand Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Reference computations written from scratch with plain doubles, so test
// expectations never come from the code under test.

#ifndef TENDON_HAND_TESTS_ORACLES_HPP_
#define TENDON_HAND_TESTS_ORACLES_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace oracle {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Joint {
  double kappa = 0.0;  // Nm/rad
  double arm = 0.0;    // m
  double link = 0.0;   // m
  double rest = 0.0;   // rad
};

struct Disk {
  double cx = 0.0;
  double cy = 0.0;
  double r = 0.0;
  double k = 0.0;  // N/m
};

inline double kappa_from_compliance(double deg_per_nm) {
  return 180.0 / (std::numbers::pi * deg_per_nm);
}

inline std::array<Point, 4> chain(const std::array<Joint, 3>& j, Point base, double heading,
                                  const std::array<double, 3>& q) {
  std::array<Point, 4> p{base, {}, {}, {}};
  for (int i = 0; i < 3; ++i) {
    heading += q[i];
    p[i + 1] = {p[i].x + j[i].link * std::cos(heading), p[i].y + j[i].link * std::sin(heading)};
  }
  return p;
}

// Distance from the disk center to segment ab.
inline double center_distance(const Disk& d, Point a, Point b) {
  const double ux = b.x - a.x, uy = b.y - a.y;
  const double len2 = ux * ux + uy * uy;
  double t = len2 > 0.0 ? ((d.cx - a.x) * ux + (d.cy - a.y) * uy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(a.x + t * ux - d.cx, a.y + t * uy - d.cy);
}

// Springs, minus tendon work, plus one penalty term per link and disk.
inline double energy(const std::array<Joint, 3>& j, double tension, const std::vector<Disk>& disks,
                     const std::array<double, 3>& q) {
  double e = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double dq = q[i] - j[i].rest;
    e += 0.5 * j[i].kappa * dq * dq - tension * j[i].arm * dq;
  }
  if (!disks.empty()) {
    const auto p = chain(j, {0.0, 0.0}, 0.0, q);
    for (const Disk& d : disks) {
      for (int i = 0; i < 3; ++i) {
        const double pen = d.r - center_distance(d, p[i], p[i + 1]);
        if (pen > 0.0) e += 0.5 * d.k * pen * pen;
      }
    }
  }
  return e;
}

// Smallest energy over a uniform grid on [lo, hi]^3.
inline double grid_minimum(const std::array<Joint, 3>& j, double tension, const std::vector<Disk>& disks,
                           double lo, double hi, double step) {
  const int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9));  // never past hi
  double best = std::numeric_limits<double>::infinity();
  for (int a = 0; a <= n; ++a) {
    for (int b = 0; b <= n; ++b) {
      for (int c = 0; c <= n; ++c) {
        const std::array<double, 3> q = {lo + a * step, lo + b * step, lo + c * step};
        best = std::min(best, energy(j, tension, disks, q));
      }
    }
  }
  return best;
}

// Ordinary least squares on (x, y); returns {slope, intercept, r_squared}.
inline std::array<double, 3> least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  return {slope, my - slope * mx, (sxy * sxy) / (sxx * syy)};
}

// The contact-threshold rule for one pulley pair, spelled out branch by branch.
inline double pair_feedback(double f1, double f2, double threshold) {
  if (f1 >= threshold && f2 >= threshold) return (f1 + f2) / 2.0;
  if (f1 < threshold && f2 < threshold) return (f1 + f2) / 2.0;
  if (f1 >= threshold) return f1;
  return f2;
}

}  // namespace oracle

#endif  // TENDON_HAND_TESTS_ORACLES_HPP_
