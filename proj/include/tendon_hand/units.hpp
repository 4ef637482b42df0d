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

#ifndef TENDON_HAND_UNITS_HPP_
#define TENDON_HAND_UNITS_HPP_

#include <numbers>

// Everything inside the library is SI. Kilogram-force only shows up at the
// config and report boundaries.
namespace tendon_hand {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kStandardGravity = 9.80665;  // m/s^2
inline constexpr double kNewtonsPerKgf = 9.80665;

constexpr double kgf_to_newtons(double kgf) { return kgf * kNewtonsPerKgf; }
constexpr double newtons_to_kgf(double newtons) { return newtons / kNewtonsPerKgf; }
constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace tendon_hand

#endif  // TENDON_HAND_UNITS_HPP_
