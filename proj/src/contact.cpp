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

#include "tendon_hand/contact.hpp"

#include <algorithm>
#include <cmath>

namespace tendon_hand {

namespace {

Vec2 center(const ObjectShape& s) { return {s.pose.x, s.pose.y}; }
Vec2 direction(double theta) { return {std::cos(theta), std::sin(theta)}; }

Vec2 closest_on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return a;
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return a + t * ab;
}

// Closest pair between segments p1-q1 and p2-q2; returns the parameter on the
// first segment.
double closest_segment_param(const Vec2& p1, const Vec2& q1, const Vec2& p2, const Vec2& q2) {
  const Vec2 d1 = q1 - p1;
  const Vec2 d2 = q2 - p2;
  const Vec2 r = p1 - p2;
  const double a = d1.squaredNorm();
  const double e = d2.squaredNorm();
  const double f = d2.dot(r);
  double s = 0.0;
  double t = 0.0;
  if (a == 0.0 && e == 0.0) return 0.0;
  if (a == 0.0) return 0.0;
  const double c = d1.dot(r);
  if (e == 0.0) return std::clamp(-c / a, 0.0, 1.0);

  // Proper crossings: the intersection is the deepest point.
  const double cross = d1.x() * d2.y() - d1.y() * d2.x();
  if (cross != 0.0) {
    const Vec2 w = p2 - p1;
    const double s_hit = (w.x() * d2.y() - w.y() * d2.x()) / cross;
    const double t_hit = (w.x() * d1.y() - w.y() * d1.x()) / cross;
    if (s_hit >= 0.0 && s_hit <= 1.0 && t_hit >= 0.0 && t_hit <= 1.0) return s_hit;
  }

  const double b = d1.dot(d2);
  const double denom = a * e - b * b;
  s = denom != 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
  t = (b * s + f) / e;
  if (t < 0.0) {
    s = std::clamp(-c / a, 0.0, 1.0);
  } else if (t > 1.0) {
    s = std::clamp((b - c) / a, 0.0, 1.0);
  }
  return s;
}

}  // namespace

std::vector<Violation> validate(const ObjectShape& shape, const std::string& field) {
  std::vector<Violation> out;
  const auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(shape.pose.x) || !finite(shape.pose.y) || !finite(shape.pose.theta)) {
    out.push_back({field + ".pose", "non-finite pose"});
  }
  if (!(shape.contact_stiffness > 0.0) || !finite(shape.contact_stiffness)) {
    out.push_back({field + ".contact_stiffness", "contact_stiffness > 0"});
  }
  if (shape.kind != ShapeKind::kHalfPlane && (!(shape.radius > 0.0) || !finite(shape.radius))) {
    out.push_back({field + ".radius", "radius > 0"});
  }
  if (shape.kind == ShapeKind::kCapsule &&
      (!(shape.half_length > 0.0) || !finite(shape.half_length))) {
    out.push_back({field + ".half_length", "half_length > 0"});
  }
  return out;
}

double signed_distance(const ObjectShape& shape, const Vec2& point) {
  switch (shape.kind) {
    case ShapeKind::kDisk:
      return (point - center(shape)).norm() - shape.radius;
    case ShapeKind::kHalfPlane:
      return (point - center(shape)).dot(direction(shape.pose.theta));
    case ShapeKind::kCapsule: {
      const Vec2 axis = shape.half_length * direction(shape.pose.theta);
      const Vec2 c = center(shape);
      return (point - closest_on_segment(c - axis, c + axis, point)).norm() - shape.radius;
    }
  }
  return 0.0;
}

Vec2 outward_normal(const ObjectShape& shape, const Vec2& point) {
  Vec2 v;
  switch (shape.kind) {
    case ShapeKind::kDisk:
      v = point - center(shape);
      break;
    case ShapeKind::kHalfPlane:
      return direction(shape.pose.theta);
    case ShapeKind::kCapsule: {
      const Vec2 axis = shape.half_length * direction(shape.pose.theta);
      const Vec2 c = center(shape);
      v = point - closest_on_segment(c - axis, c + axis, point);
      break;
    }
  }
  const double n = v.norm();
  if (n == 0.0) return direction(shape.pose.theta + kPi / 2.0);
  return v / n;
}

Vec2 deepest_point(const ObjectShape& shape, const Vec2& a, const Vec2& b) {
  switch (shape.kind) {
    case ShapeKind::kDisk:
      return closest_on_segment(a, b, center(shape));
    case ShapeKind::kHalfPlane:
      return signed_distance(shape, b) < signed_distance(shape, a) ? b : a;
    case ShapeKind::kCapsule: {
      const Vec2 axis = shape.half_length * direction(shape.pose.theta);
      const Vec2 c = center(shape);
      const double s = closest_segment_param(a, b, c - axis, c + axis);
      return a + s * (b - a);
    }
  }
  return a;
}

std::optional<ContactPoint> contact_force(const ObjectShape& shape, const Vec2& point) {
  const double sd = signed_distance(shape, point);
  if (!(sd < 0.0)) return std::nullopt;
  ContactPoint c;
  c.object = shape.name;
  c.position = point;
  c.penetration = -sd;
  c.normal = outward_normal(shape, point);
  c.force = shape.contact_stiffness * c.penetration;
  return c;
}

std::vector<ContactPoint> palm_contacts(const HandSpec& spec, std::span<const ObjectShape> shapes) {
  std::vector<ContactPoint> out;
  for (const auto& site : spec.sensor_layout) {
    if (site.kind != SensorSiteKind::kPalm) continue;
    for (const auto& shape : shapes) {
      if (!shape.visibility.palm) continue;
      if (auto c = contact_force(shape, site.position)) {
        c->body = ContactBody::kPalm;
        c->index = site.palm_index;
        out.push_back(std::move(*c));
      }
    }
  }
  return out;
}

std::vector<SensorReading> read_sensors(std::span<const ContactPoint> contacts, const HandSpec& spec) {
  std::vector<SensorReading> out;
  out.reserve(spec.sensor_layout.size());
  for (const auto& site : spec.sensor_layout) {
    double raw = 0.0;
    for (const auto& c : contacts) {
      if (site.kind == SensorSiteKind::kFingertip) {
        if (c.body == ContactBody::kLink && c.finger == site.finger &&
            c.index == kJointsPerFinger - 1) {
          raw += c.force;
        }
      } else if (c.body == ContactBody::kPalm && c.index == site.palm_index) {
        raw += c.force;
      }
    }
    SensorReading r;
    r.site = site;
    r.raw_force = raw;
    r.saturated = raw > spec.sensor_max;
    r.force = std::clamp(raw, 0.0, spec.sensor_max);
    out.push_back(r);
  }
  return out;
}

}  // namespace tendon_hand
