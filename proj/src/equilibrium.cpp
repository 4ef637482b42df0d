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

#include "tendon_hand/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

namespace tendon_hand {

namespace {

Vec2 perp(const Vec2& v) { return {-v.y(), v.x()}; }

void require_three_joints(const FingerSpec& finger) {
  if (finger.joints.size() != static_cast<std::size_t>(kJointsPerFinger)) {
    throw InvalidSpecError("finger '" + std::string(to_string(finger.name)) +
                           "' must have exactly 3 joints");
  }
}

// Material points of the finger that can touch `shape`. Half-planes are tested
// at the chain vertices (a straight link penetrates deepest at an end, and
// vertex sampling stays smooth when a link lies flat on the plane); curved
// shapes use the deepest point of each link.
template <class Fn>
void for_each_candidate(const FingerSpec& finger, const LinkPoints& pts,
                        std::span<const ObjectShape> shapes, Fn&& fn) {
  for (const auto& shape : shapes) {
    if (!shape.visibility.sees(finger.name)) continue;
    if (shape.kind == ShapeKind::kHalfPlane) {
      fn(0, pts[0], shape);
      for (int link = 0; link < kJointsPerFinger; ++link) fn(link, pts[link + 1], shape);
    } else {
      for (int link = 0; link < kJointsPerFinger; ++link) {
        fn(link, deepest_point(shape, pts[link], pts[link + 1]), shape);
      }
    }
  }
}

bool sees_anything(const FingerSpec& finger, std::span<const ObjectShape> shapes) {
  return std::any_of(shapes.begin(), shapes.end(),
                     [&](const ObjectShape& s) { return s.visibility.sees(finger.name); });
}

struct Box {
  JointAngles lo;
  JointAngles hi;

  JointAngles project(const JointAngles& x) const { return x.cwiseMax(lo).cwiseMin(hi); }
};

double projected_gradient_norm(const Box& box, const JointAngles& x, const JointAngles& g) {
  return (x - box.project(x - g)).norm();
}

}  // namespace

LinkPoints forward_kinematics(const FingerSpec& finger, const JointAngles& angles) {
  require_three_joints(finger);
  LinkPoints pts;
  pts[0] = Vec2(finger.base_pose.x, finger.base_pose.y);
  double heading = finger.base_pose.theta;
  for (int i = 0; i < kJointsPerFinger; ++i) {
    heading += angles[i];
    pts[i + 1] = pts[i] + finger.joints[i].link_length * Vec2(std::cos(heading), std::sin(heading));
  }
  return pts;
}

Vec2 load_point(const LinkPoints& points, const PointLoad& load) {
  const Vec2 axis = (points[load.link + 1] - points[load.link]).normalized();
  return points[load.link] + load.along * axis + load.across * perp(axis);
}

double potential_energy(const FingerSpec& finger, const JointAngles& angles, double branch_tension,
                        std::span<const ObjectShape> shapes, std::span<const PointLoad> loads) {
  require_three_joints(finger);
  double e = 0.0;
  for (int i = 0; i < kJointsPerFinger; ++i) {
    const JointSpec& j = finger.joints[i];
    const double dq = angles[i] - j.rest_angle;
    e += 0.5 * stiffness(j) * dq * dq - branch_tension * j.moment_arm * dq;
  }
  const LinkPoints pts = forward_kinematics(finger, angles);
  for_each_candidate(finger, pts, shapes, [&](int, const Vec2& p, const ObjectShape& shape) {
    const double sd = signed_distance(shape, p);
    if (sd < 0.0) e += 0.5 * shape.contact_stiffness * sd * sd;
  });
  for (const auto& load : loads) e -= load.force.dot(load_point(pts, load));
  return e;
}

JointTorques energy_gradient(const FingerSpec& finger, const JointAngles& angles,
                             double branch_tension, std::span<const ObjectShape> shapes,
                             std::span<const PointLoad> loads) {
  require_three_joints(finger);
  JointTorques g;
  for (int i = 0; i < kJointsPerFinger; ++i) {
    const JointSpec& j = finger.joints[i];
    g[i] = stiffness(j) * (angles[i] - j.rest_angle) - branch_tension * j.moment_arm;
  }
  const LinkPoints pts = forward_kinematics(finger, angles);
  // A force F at a point p on link `link` does work against rotation of every
  // joint up to and including that link.
  auto apply_force = [&](int link, const Vec2& p, const Vec2& force) {
    for (int j = 0; j <= link; ++j) g[j] -= perp(p - pts[j]).dot(force);
  };
  for_each_candidate(finger, pts, shapes, [&](int link, const Vec2& p, const ObjectShape& shape) {
    const double sd = signed_distance(shape, p);
    if (sd < 0.0) apply_force(link, p, -shape.contact_stiffness * sd * outward_normal(shape, p));
  });
  for (const auto& load : loads) apply_force(load.link, load_point(pts, load), load.force);
  return g;
}

std::vector<ContactPoint> finger_contacts(const FingerSpec& finger, const LinkPoints& points,
                                          std::span<const ObjectShape> shapes) {
  std::vector<ContactPoint> out;
  for_each_candidate(finger, points, shapes, [&](int link, const Vec2& p, const ObjectShape& shape) {
    if (auto c = contact_force(shape, p)) {
      c->finger = finger.name;
      c->body = ContactBody::kLink;
      c->index = link;
      out.push_back(std::move(*c));
    }
  });
  return out;
}

FingerState solve_finger(const FingerSpec& finger, double branch_tension,
                         std::span<const ObjectShape> shapes, std::span<const PointLoad> loads,
                         const SolverOptions& options) {
  require_three_joints(finger);
  if (!(branch_tension >= 0.0) || !std::isfinite(branch_tension)) {
    throw DomainError("branch tension must be finite and >= 0, got " +
                      std::to_string(branch_tension));
  }

  Box box;
  JointAngles rest;
  JointAngles spring;
  for (int i = 0; i < kJointsPerFinger; ++i) {
    box.lo[i] = finger.joints[i].limits.min;
    box.hi[i] = finger.joints[i].limits.max;
    rest[i] = finger.joints[i].rest_angle;
    spring[i] = stiffness(finger.joints[i]);
  }
  const bool capped = sees_anything(finger, shapes) || !loads.empty();

  auto energy = [&](const JointAngles& x) {
    return potential_energy(finger, x, branch_tension, shapes, loads);
  };
  auto gradient = [&](const JointAngles& x) {
    return energy_gradient(finger, x, branch_tension, shapes, loads);
  };
  // Difference Hessians of the analytic gradient. Contact onset makes the
  // energy only C1, so besides the central difference the one-sided ones are
  // kept as fallbacks: at a kink one of them models the side the minimizer is
  // on.
  enum class Stencil { kCentral, kForward, kBackward };
  auto hessian = [&](const JointAngles& x, const JointTorques& g0, Stencil stencil) {
    constexpr double h = 1e-6;
    Eigen::Matrix3d hess;
    for (int j = 0; j < kJointsPerFinger; ++j) {
      JointAngles xp = x;
      JointAngles xm = x;
      xp[j] += h;
      xm[j] -= h;
      switch (stencil) {
        case Stencil::kCentral:
          hess.col(j) = (gradient(xp) - gradient(xm)) / (2.0 * h);
          break;
        case Stencil::kForward:
          hess.col(j) = (gradient(xp) - g0) / h;
          break;
        case Stencil::kBackward:
          hess.col(j) = (g0 - gradient(xm)) / h;
          break;
      }
    }
    return Eigen::Matrix3d(0.5 * (hess + hess.transpose()));
  };

  auto cap = [&](JointAngles d) {
    if (capped) {
      const double m = d.cwiseAbs().maxCoeff();
      if (m > options.max_step) d *= options.max_step / m;
    }
    return d;
  };

  struct Descent {
    JointAngles x;
    double fx = 0.0;
    SolveDiagnostics diag;
  };
  auto descend = [&](const JointAngles& start) {
    JointAngles x = box.project(start);
    double fx = energy(x);
    SolveDiagnostics diag;

    for (diag.iterations = 0; diag.iterations <= options.max_iterations; ++diag.iterations) {
      const JointAngles g = gradient(x);
      diag.residual = projected_gradient_norm(box, x, g);
      if (diag.residual <= options.tolerance) {
        diag.converged = true;
        break;
      }
      if (diag.iterations == options.max_iterations) break;

      // Bound constraints that are active and pushed against stay fixed.
      const double eps = std::min(1e-9, diag.residual);
      std::array<bool, 3> free{};
      std::vector<int> free_idx;
      for (int i = 0; i < kJointsPerFinger; ++i) {
        const bool at_lo = x[i] <= box.lo[i] + eps && g[i] > 0.0;
        const bool at_hi = x[i] >= box.hi[i] - eps && g[i] < 0.0;
        free[i] = !(at_lo || at_hi);
        if (free[i]) free_idx.push_back(i);
      }

      // Regularized Newton step and diagonally scaled gradient, both restricted
      // to the free coordinates so a bound one cannot shrink the step cap.
      auto direction = [&](const Eigen::Matrix3d& hess) {
        JointAngles scaled = JointAngles::Zero();
        for (int i : free_idx) scaled[i] = -g[i] / std::max(hess(i, i), spring[i]);
        JointAngles d = scaled;
        JointAngles descent_curve = JointAngles::Zero();
        if (!free_idx.empty()) {
          const int n = static_cast<int>(free_idx.size());
          Eigen::MatrixXd hf(n, n);
          Eigen::VectorXd gf(n);
          for (int r = 0; r < n; ++r) {
            gf[r] = g[free_idx[r]];
            for (int c = 0; c < n; ++c) hf(r, c) = hess(free_idx[r], free_idx[c]);
          }
          double mu = 0.0;
          const double scale = hf.diagonal().cwiseAbs().maxCoeff() + 1e-12;
          Eigen::LLT<Eigen::MatrixXd> llt;
          for (int tries = 0; tries < 40; ++tries) {
            llt.compute(hf + mu * Eigen::MatrixXd::Identity(n, n));
            if (llt.info() == Eigen::Success) break;
            mu = mu == 0.0 ? 1e-10 * scale : mu * 10.0;
          }
          const Eigen::VectorXd df = llt.solve(-gf);
          for (int r = 0; r < n; ++r) d[free_idx[r]] = df[r];
          // Near a saddle the regularized step can home in on it; the most
          // negative curvature direction leads off it instead.
          if (mu > 0.0) {
            const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hf);
            if (eig.eigenvalues()[0] < -1e-7 * scale) {
              Eigen::VectorXd v = eig.eigenvectors().col(0);
              if (v.dot(gf) > 0.0) v = -v;
              v *= options.max_step / v.cwiseAbs().maxCoeff();
              for (int r = 0; r < n; ++r) descent_curve[free_idx[r]] = v[r];
            }
          }
        }
        if (!(g.dot(d) < 0.0) || !d.allFinite()) d = scaled;
        return std::tuple{cap(d), cap(scaled), descent_curve};
      };

      auto line_search = [&](const JointAngles& dir, double required_drop) {
        double alpha = 1.0;
        for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
          const JointAngles xn = box.project(x + alpha * dir);
          const JointAngles dx = xn - x;
          if (dx.cwiseAbs().maxCoeff() == 0.0) return false;
          const double fn = energy(xn);
          // A decrease clearly above rounding is judged by Armijo. Near the
          // minimum energy changes drop to rounding level; there the projected
          // gradient, which is still resolvable, has to shrink instead.
          const double scale = std::max(1.0, std::abs(fx));
          const double rounding = 8.0 * std::numeric_limits<double>::epsilon() * scale;
          bool ok = false;
          if (fn < fx - rounding) {
            ok = fn <= fx + 1e-4 * g.dot(dx);
          } else if (std::abs(fn - fx) <= 1e-14 * scale) {
            ok = projected_gradient_norm(box, xn, gradient(xn)) < required_drop * diag.residual;
          }
          if (ok) {
            x = xn;
            fx = fn;
            return true;
          }
        }
        return false;
      };

      bool accepted = false;
      for (Stencil stencil : {Stencil::kCentral, Stencil::kForward, Stencil::kBackward}) {
        const auto [newton, scaled, curve] = direction(hessian(x, g, stencil));
        if (curve.any() && line_search(curve, 0.0)) {
          accepted = true;
          break;
        }
        if (line_search(newton, 0.999)) {
          accepted = true;
          break;
        }
        if (stencil == Stencil::kBackward) accepted = line_search(scaled, 0.999);
      }
      if (!accepted) break;
    }
    return Descent{x, fx, diag};
  };

  Descent best = descend(rest);
  if (options.search == MinimumSearch::kLowest && capped) {
    // Contacts and loads can split the box into several basins. Coarse grid
    // cells lower than their face neighbours seed extra descents; the lowest
    // converged minimum wins, ties going to the earlier start.
    constexpr double kSeedSpacing = 5.0 * kPi / 180.0;
    std::array<int, 3> n{};
    for (int i = 0; i < kJointsPerFinger; ++i) {
      n[i] = 1 + static_cast<int>(std::ceil((box.hi[i] - box.lo[i]) / kSeedSpacing));
    }
    auto node = [&](int a, int b, int c) {
      JointAngles q;
      const std::array<int, 3> k = {a, b, c};
      for (int i = 0; i < kJointsPerFinger; ++i) {
        q[i] = n[i] == 1 ? box.lo[i] : box.lo[i] + (box.hi[i] - box.lo[i]) * k[i] / (n[i] - 1);
      }
      return q;
    };
    std::vector<double> grid(static_cast<std::size_t>(n[0] * n[1] * n[2]));
    auto at = [&](int a, int b, int c) -> double& {
      return grid[static_cast<std::size_t>((a * n[1] + b) * n[2] + c)];
    };
    for (int a = 0; a < n[0]; ++a)
      for (int b = 0; b < n[1]; ++b)
        for (int c = 0; c < n[2]; ++c) at(a, b, c) = energy(node(a, b, c));
    std::vector<std::pair<double, JointAngles>> seeds;
    for (int a = 0; a < n[0]; ++a) {
      for (int b = 0; b < n[1]; ++b) {
        for (int c = 0; c < n[2]; ++c) {
          const double e = at(a, b, c);
          bool lowest = true;
          const std::array<std::array<int, 3>, 6> nb = {{{a - 1, b, c}, {a + 1, b, c}, {a, b - 1, c},
                                                        {a, b + 1, c}, {a, b, c - 1}, {a, b, c + 1}}};
          for (const auto& [i, j, k] : nb) {
            if (i < 0 || j < 0 || k < 0 || i >= n[0] || j >= n[1] || k >= n[2]) continue;
            lowest = lowest && e <= at(i, j, k);
          }
          if (lowest) seeds.emplace_back(e, node(a, b, c));
        }
      }
    }
    std::stable_sort(seeds.begin(), seeds.end(),
                     [](const auto& l, const auto& r) { return l.first < r.first; });
    constexpr std::size_t kMaxSeeds = 8;
    if (seeds.size() > kMaxSeeds) seeds.resize(kMaxSeeds);
    for (const auto& seed : seeds) {
      Descent d = descend(seed.second);
      if (d.diag.converged && (!best.diag.converged || d.fx < best.fx)) best = std::move(d);
    }
  }
  const JointAngles& x = best.x;
  const double fx = best.fx;
  const SolveDiagnostics& diag = best.diag;

  if (!diag.converged) {
    throw SolverError("finger '" + std::string(to_string(finger.name)) + "' did not converge after " +
                          std::to_string(diag.iterations) + " iterations (residual " +
                          std::to_string(diag.residual) + " Nm)",
                      diag);
  }

  FingerState state;
  state.finger = finger.name;
  state.angles = x;
  state.points = forward_kinematics(finger, x);
  state.contacts = finger_contacts(finger, state.points, shapes);
  state.branch_tension = branch_tension;
  state.branch_excursion = wire_excursion(finger, x);
  state.energy = fx;
  state.diagnostics = diag;
  return state;
}

namespace {

struct ActuatorSolve {
  std::vector<FingerState> fingers;
  TendonState tendon;
};

ActuatorSolve solve_actuator_at(const HandSpec& spec, const ActuatorSpec& act, double tension,
                                std::span<const ObjectShape> shapes, const HandLoads& loads,
                                const SolverOptions& options) {
  ActuatorSolve out;
  out.tendon.actuator_id = act.id;
  out.tendon.actuator_tension = tension;
  const double branch = act.coupling == Coupling::kMovablePulley ? pulley_split(tension).first : tension;
  double sum = 0.0;
  for (FingerId id : act.driven_fingers) {
    std::span<const PointLoad> finger_loads;
    for (std::size_t f = 0; f < spec.fingers.size() && f < loads.size(); ++f) {
      if (spec.fingers[f].name == id) finger_loads = loads[f];
    }
    FingerState fs = solve_finger(finger(spec, id), branch, shapes, finger_loads, options);
    out.tendon.branch_tensions.push_back(branch);
    out.tendon.branch_excursions.push_back(fs.branch_excursion);
    sum += fs.branch_excursion;
    out.fingers.push_back(std::move(fs));
  }
  out.tendon.actuator_excursion = sum / static_cast<double>(act.driven_fingers.size());
  return out;
}

// Finds the actuator tension whose equilibrium draws `target` meters of wire.
// Excursion is non-decreasing in tension, so a bracketed Illinois search
// converges; the bracket always contains the answer.
ActuatorSolve solve_actuator_length(const HandSpec& spec, const ActuatorSpec& act, double target,
                                    std::span<const ObjectShape> shapes, const HandLoads& loads,
                                    const SolverOptions& options, double& residual) {
  ActuatorSolve lo = solve_actuator_at(spec, act, 0.0, shapes, loads, options);
  if (target <= lo.tendon.actuator_excursion) {
    residual = 0.0;  // slack wire: the tendon cannot push
    return lo;
  }
  ActuatorSolve hi = solve_actuator_at(spec, act, act.max_tension, shapes, loads, options);
  if (hi.tendon.actuator_excursion < target) {
    hi.tendon.saturated = true;
    residual = target - hi.tendon.actuator_excursion;
    return hi;
  }

  double t_lo = 0.0;
  double t_hi = act.max_tension;
  double f_lo = lo.tendon.actuator_excursion - target;
  double f_hi = hi.tendon.actuator_excursion - target;
  int side = 0;
  ActuatorSolve best = std::abs(f_lo) < std::abs(f_hi) ? lo : hi;
  double best_f = std::min(std::abs(f_lo), std::abs(f_hi));
  for (int it = 0; it < 200; ++it) {
    if (best_f <= 1e-15 || (t_hi - t_lo) <= 1e-13 * act.max_tension) break;
    double t = (t_lo * f_hi - t_hi * f_lo) / (f_hi - f_lo);
    if (!(t > t_lo && t < t_hi)) t = 0.5 * (t_lo + t_hi);
    ActuatorSolve mid = solve_actuator_at(spec, act, t, shapes, loads, options);
    const double fm = mid.tendon.actuator_excursion - target;
    if (std::abs(fm) < best_f) {
      best_f = std::abs(fm);
      best = mid;
    }
    if (fm == 0.0) break;
    if ((fm < 0.0) == (f_lo < 0.0)) {
      t_lo = t;
      f_lo = fm;
      if (side == -1) f_hi *= 0.5;
      side = -1;
    } else {
      t_hi = t;
      f_hi = fm;
      if (side == 1) f_lo *= 0.5;
      side = 1;
    }
  }
  residual = best_f;
  return best;
}

}  // namespace

HandState solve_hand(const HandSpec& spec, std::span<const ActuatorCommand> commands,
                     std::span<const ObjectShape> shapes, const HandLoads& loads,
                     const SolverOptions& hand_options) {
  require_valid(spec);
  SolverOptions options = hand_options;
  options.search = MinimumSearch::kFromRest;
  if (commands.size() != spec.actuators.size()) {
    throw DomainError("expected " + std::to_string(spec.actuators.size()) +
                      " actuator commands, got " + std::to_string(commands.size()));
  }

  HandState state;
  state.fingers.resize(spec.fingers.size());
  state.diagnostics.converged = true;
  for (std::size_t a = 0; a < spec.actuators.size(); ++a) {
    const ActuatorSpec& act = spec.actuators[a];
    const ActuatorCommand& cmd = commands[a];
    ActuatorSolve solved;
    if (cmd.kind == CommandKind::kTension) {
      const ClampedTension ct = clamp_tension(cmd.value, act);
      solved = solve_actuator_at(spec, act, ct.tension, shapes, loads, options);
      solved.tendon.saturated = ct.saturated;
    } else {
      if (!(cmd.value >= 0.0)) {
        throw DomainError("length command for actuator " + std::to_string(act.id) +
                          " must be >= 0 excursion");
      }
      double residual = 0.0;
      solved = solve_actuator_length(spec, act, cmd.value, shapes, loads, options, residual);
      if (!solved.tendon.saturated) {
        state.excursion_residual = std::max(state.excursion_residual, residual);
      }
    }
    state.saturated = state.saturated || solved.tendon.saturated;
    for (auto& fs : solved.fingers) {
      state.diagnostics.iterations += fs.diagnostics.iterations;
      state.diagnostics.residual = std::max(state.diagnostics.residual, fs.diagnostics.residual);
      state.diagnostics.converged = state.diagnostics.converged && fs.diagnostics.converged;
      for (std::size_t f = 0; f < spec.fingers.size(); ++f) {
        if (spec.fingers[f].name == fs.finger) state.fingers[f] = std::move(fs);
      }
    }
    state.tendons.push_back(std::move(solved.tendon));
  }

  state.palm_contacts = palm_contacts(spec, shapes);
  state.sensors = read_sensors(all_contacts(state), spec);
  return state;
}

std::vector<ContactPoint> all_contacts(const HandState& state) {
  std::vector<ContactPoint> out;
  for (const auto& f : state.fingers) out.insert(out.end(), f.contacts.begin(), f.contacts.end());
  out.insert(out.end(), state.palm_contacts.begin(), state.palm_contacts.end());
  return out;
}

}  // namespace tendon_hand
