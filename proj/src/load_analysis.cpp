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

#include "tendon_hand/load_analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>
#include <utility>

namespace tendon_hand {

double calibrate_efficiency(double mass_kg, double tension_kgf) {
  if (!(mass_kg > 0.0) || !(tension_kgf > 0.0) || !std::isfinite(mass_kg) ||
      !std::isfinite(tension_kgf)) {
    throw DomainError("calibration needs positive mass and tension");
  }
  return mass_kg / tension_kgf;
}

double required_tension(double mass_kg, int hands_sharing, double efficiency) {
  if (!(mass_kg >= 0.0)) throw DomainError("mass must be >= 0");
  if (hands_sharing < 1) throw DomainError("hands_sharing must be >= 1");
  if (!(efficiency > 0.0)) throw DomainError("efficiency must be calibrated (> 0)");
  return (mass_kg / hands_sharing) / efficiency;
}

namespace {

void require_calibrated(const GripCalibration& c) {
  if (!(c.mass_kg > 0.0) || !(c.tension_kgf > 0.0) || !std::isfinite(c.mass_kg) ||
      !std::isfinite(c.tension_kgf)) {
    throw DomainError("calibration needs positive mass and tension");
  }
}

}  // namespace

double required_tension(double mass_kg, int hands_sharing, const GripCalibration& calibration) {
  if (!(mass_kg >= 0.0)) throw DomainError("mass must be >= 0");
  if (hands_sharing < 1) throw DomainError("hands_sharing must be >= 1");
  require_calibrated(calibration);
  return (mass_kg / hands_sharing / calibration.mass_kg) * calibration.tension_kgf;
}

double capacity_mass(const GripCalibration& calibration, double max_tension_n) {
  require_calibrated(calibration);
  if (!(max_tension_n >= 0.0)) throw DomainError("max tension must be >= 0");
  return calibration.mass_kg * (max_tension_n / kgf_to_newtons(calibration.tension_kgf));
}

MarginReport margin_report(const HandSpec& spec, const PayloadScenario& scenario) {
  if (spec.actuators.empty()) throw InvalidSpecError("hand has no actuators");
  MarginReport r;
  r.efficiency = scenario.calibration.efficiency();
  r.required_kgf = required_tension(scenario.payload_mass, scenario.hands_sharing, scenario.calibration);
  r.required_n = kgf_to_newtons(r.required_kgf);
  double weakest_n = std::numeric_limits<double>::infinity();
  for (const auto& act : spec.actuators) {
    ActuatorMargin m;
    m.actuator_id = act.id;
    m.required_kgf = r.required_kgf;
    m.required_n = r.required_n;
    m.max_n = act.max_tension;
    m.max_kgf = newtons_to_kgf(act.max_tension);
    weakest_n = std::min(weakest_n, act.max_tension);
    r.actuators.push_back(m);
  }
  r.capacity_mass = capacity_mass(scenario.calibration, weakest_n);
  r.share_mass = scenario.payload_mass / scenario.hands_sharing;
  r.margin_ratio = r.share_mass > 0.0 ? r.capacity_mass / r.share_mass
                                      : std::numeric_limits<double>::infinity();
  r.pass = r.share_mass <= r.capacity_mass;
  return r;
}

bool non_decreasing(std::span<const double> values, double slack) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::isnan(values[i])) return false;
    if (i > 0 && values[i] < values[i - 1] - slack) return false;
  }
  return true;
}

std::vector<RampRow> RampResult::rows(const HandSpec& spec) const {
  std::vector<RampRow> out;
  for (const auto& p : points) {
    for (std::size_t a = 0; a < spec.actuators.size(); ++a) {
      RampRow row;
      row.mass_kg = p.mass;
      row.actuator_id = spec.actuators[a].id;
      row.converged = p.converged;
      if (p.state) {
        row.tension_n = p.state->tendons[a].actuator_tension;
        row.saturated = p.state->tendons[a].saturated;
      } else {
        row.tension_n = std::numeric_limits<double>::quiet_NaN();
      }
      out.push_back(row);
    }
  }
  return out;
}

std::vector<double> RampResult::peak_tensions() const {
  std::vector<double> out;
  for (const auto& p : points) {
    if (!p.state) {
      out.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    double peak = 0.0;
    for (const auto& t : p.state->tendons) peak = std::max(peak, t.actuator_tension);
    out.push_back(peak);
  }
  return out;
}

namespace {

// Force the hand exerts on the named object, projected on the load direction.
double support_force(const HandState& state, const std::string& object, const Vec2& dir) {
  double total = 0.0;
  for (const ContactPoint& c : all_contacts(state)) {
    if (c.object == object) total += c.force * c.normal.dot(dir);
  }
  return total;
}

struct Displaced {
  HandState state;
  double support = 0.0;
};

Displaced solve_displaced(const HandSpec& spec, std::vector<ObjectShape> shapes, std::size_t object,
                          const Vec2& dir, double delta, const std::vector<ActuatorCommand>& lengths,
                          const std::string& name, const SolverOptions& options) {
  shapes[object].pose.x += delta * dir.x();
  shapes[object].pose.y += delta * dir.y();
  Displaced d{solve_hand(spec, lengths, shapes, {}, options), 0.0};
  d.support = support_force(d.state, name, dir);
  return d;
}

RampPoint solve_mass(const HandSpec& spec, std::span<const ObjectShape> shapes, std::size_t object,
                     double mass, const RampConfig& config, const std::vector<ActuatorCommand>& lengths,
                     const SolverOptions& options) {
  RampPoint p;
  p.mass = mass;
  const Vec2 dir = config.load_direction.normalized();
  const double weight = mass * spec.gravity / config.hands_sharing;
  const std::vector<ObjectShape> base(shapes.begin(), shapes.end());
  auto at = [&](double delta) {
    ++p.load_iterations;
    return solve_displaced(spec, base, object, dir, delta, lengths, config.object, options);
  };
  try {
    // Bracket the handle displacement whose contact reaction carries the
    // weight, then refine it with a safeguarded secant (Illinois) search.
    double lo = 0.0;
    Displaced f_lo = at(lo);
    double step = 1e-4;
    while (f_lo.support > weight) {
      const double next = lo - step;
      Displaced f = at(next);
      if (f.support >= f_lo.support && f.support > weight) {
        p.failure = "no handle position balances " + std::to_string(mass) + " kg";
        return p;
      }
      lo = next;
      f_lo = std::move(f);
      step *= 2.0;
    }
    double hi = lo;
    Displaced f_hi = f_lo;
    step = 1e-4;
    while (f_hi.support < weight) {
      hi += step;
      step *= 2.0;
      f_hi = at(hi);
      if (hi - lo > config.max_displacement) {
        p.failure = "grasp cannot carry " + std::to_string(mass) + " kg";
        p.state = std::move(f_hi.state);
        return p;
      }
      if (f_hi.support < weight) {
        lo = hi;
        f_lo = f_hi;
      }
    }

    Displaced* best = std::abs(f_lo.support - weight) < std::abs(f_hi.support - weight) ? &f_lo : &f_hi;
    const double tol = config.force_tolerance * std::max(1.0, weight);
    double g_lo = f_lo.support - weight;
    double g_hi = f_hi.support - weight;
    int side = 0;
    for (int it = 0; std::abs(best->support - weight) > tol && it < config.max_load_iterations; ++it) {
      if (hi - lo <= 1e-15 * std::max(1.0, std::abs(hi))) break;
      double mid = lo - g_lo * (hi - lo) / (g_hi - g_lo);
      if (!(mid > lo && mid < hi)) mid = 0.5 * (lo + hi);
      Displaced f = at(mid);
      const double g = f.support - weight;
      if (g < 0.0) {
        lo = mid;
        f_lo = std::move(f);
        g_lo = g;
        if (side == -1) g_hi *= 0.5;
        side = -1;
      } else {
        hi = mid;
        f_hi = std::move(f);
        g_hi = g;
        if (side == 1) g_lo *= 0.5;
        side = 1;
      }
      best = std::abs(f_lo.support - weight) < std::abs(f_hi.support - weight) ? &f_lo : &f_hi;
    }
    p.displacement = best == &f_lo ? lo : hi;
    p.converged = std::abs(best->support - weight) <= tol && best->state.diagnostics.converged;
    if (!p.converged) {
      p.failure = "handle balance not reached at " + std::to_string(mass) + " kg";
    }
    p.state = std::move(best->state);
  } catch (const SolverError& e) {
    p.failure = e.what();
  }
  return p;
}

}  // namespace

RampResult payload_ramp(const HandSpec& spec, std::span<const ObjectShape> shapes,
                        std::span<const double> masses, const RampConfig& config,
                        const SolverOptions& options) {
  require_valid(spec);
  if (config.hold.size() != spec.actuators.size()) {
    throw DomainError("ramp needs one hold command per actuator");
  }
  if (config.hands_sharing < 1) throw DomainError("hands_sharing must be >= 1");
  for (double m : masses) {
    if (!(m >= 0.0)) throw DomainError("ramp masses must be >= 0");
  }

  const auto obj = std::find_if(shapes.begin(), shapes.end(),
                               [&](const ObjectShape& o) { return o.name == config.object; });
  if (obj == shapes.end()) throw DomainError("ramp object '" + config.object + "' not in scene");
  const auto object = static_cast<std::size_t>(obj - shapes.begin());

  RampResult result;
  result.hold = solve_hand(spec, config.hold, shapes, {}, options);
  std::vector<ActuatorCommand> lengths;
  for (const auto& t : result.hold.tendons) lengths.push_back({CommandKind::kExcursion, t.actuator_excursion});

  result.points.resize(masses.size());
  // Entries only read the shared inputs; anything but a solver failure is
  // carried back to the calling thread.
  std::vector<std::exception_ptr> errors(masses.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < masses.size(); i = next++) {
      try {
        result.points[i] = solve_mass(spec, shapes, object, masses[i], config, lengths, options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n_threads = std::clamp(config.threads, 1, std::max<int>(1, static_cast<int>(masses.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return result;
}

}  // namespace tendon_hand
