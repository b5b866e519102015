#include "okc/shape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace okc {

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double cross(Point o, Point a, Point b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

bool on_segment(Point p, Point q, Point r) {
  return std::min(p.x, r.x) <= q.x && q.x <= std::max(p.x, r.x) && std::min(p.y, r.y) <= q.y &&
         q.y <= std::max(p.y, r.y);
}

bool segments_intersect(Point p1, Point p2, Point p3, Point p4) {
  const double d1 = cross(p3, p4, p1);
  const double d2 = cross(p3, p4, p2);
  const double d3 = cross(p1, p2, p3);
  const double d4 = cross(p1, p2, p4);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
  if (d1 == 0 && on_segment(p3, p1, p4)) return true;
  if (d2 == 0 && on_segment(p3, p2, p4)) return true;
  if (d3 == 0 && on_segment(p1, p3, p2)) return true;
  if (d4 == 0 && on_segment(p1, p4, p2)) return true;
  return false;
}

double segment_distance(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = ab.x * ab.x + ab.y * ab.y;
  double t = len2 > 0.0 ? ((p.x - a.x) * ab.x + (p.y - a.y) * ab.y) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, a + t * ab);
}

bool polygon_contains(const Polygon& poly, Point p) {
  bool inside = false;
  const auto& v = poly.vertices;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    if ((v[i].y > p.y) != (v[j].y > p.y) && p.x < (v[j].x - v[i].x) * (p.y - v[i].y) / (v[j].y - v[i].y) + v[i].x)
      inside = !inside;
  }
  return inside;
}

double disk_sd(const Disk& d, Point p) { return distance(p, d.center) - d.radius; }

std::vector<double> parse_numbers(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (tok.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad number '" + tok + "' in shape description");
    }
  }
  return out;
}

std::vector<std::vector<double>> parse_groups(const std::string& s) {
  std::vector<std::vector<double>> out;
  std::stringstream ss(s);
  std::string group;
  while (std::getline(ss, group, ';'))
    if (!group.empty()) out.push_back(parse_numbers(group));
  return out;
}

}  // namespace

void validate(const ShapeSpec& shape) {
  std::visit(overloaded{
                 [](const Disk& d) {
                   if (!(d.radius > 0.0)) throw std::invalid_argument("disk radius must be > 0");
                 },
                 [](const Rectangle& r) {
                   if (!(r.width > 0.0) || !(r.height > 0.0))
                     throw std::invalid_argument("rectangle width and height must be > 0");
                 },
                 [](const UnionOfDisks& u) {
                   if (u.disks.empty()) throw std::invalid_argument("union of disks is empty");
                   for (std::size_t i = 0; i < u.disks.size(); ++i) {
                     if (!(u.disks[i].radius > 0.0)) throw std::invalid_argument("disk radius must be > 0");
                     for (std::size_t j = 0; j < i; ++j)
                       if (distance(u.disks[i].center, u.disks[j].center) <= u.disks[i].radius + u.disks[j].radius)
                         throw std::invalid_argument("union of disks has overlapping members " + std::to_string(j) +
                                                     " and " + std::to_string(i));
                   }
                 },
                 [](const Polygon& p) {
                   const auto& v = p.vertices;
                   const std::size_t n = v.size();
                   if (n < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
                   for (std::size_t i = 0; i < n; ++i) {
                     for (std::size_t j = i + 1; j < n; ++j) {
                       const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
                       if (adjacent) continue;
                       if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]))
                         throw std::invalid_argument("polygon is self-intersecting");
                     }
                   }
                 },
             },
             shape);
}

double perimeter(const ShapeSpec& shape) {
  validate(shape);
  return std::visit(overloaded{
                        [](const Disk& d) { return 2.0 * std::numbers::pi * d.radius; },
                        [](const Rectangle& r) { return 2.0 * (r.width + r.height); },
                        [](const UnionOfDisks& u) {
                          double s = 0.0;
                          for (const Disk& d : u.disks) s += 2.0 * std::numbers::pi * d.radius;
                          return s;
                        },
                        [](const Polygon& p) {
                          double s = 0.0;
                          const auto& v = p.vertices;
                          for (std::size_t i = 0; i < v.size(); ++i) s += distance(v[i], v[(i + 1) % v.size()]);
                          return s;
                        },
                    },
                    shape);
}

double area(const ShapeSpec& shape) {
  validate(shape);
  return std::visit(overloaded{
                        [](const Disk& d) { return std::numbers::pi * d.radius * d.radius; },
                        [](const Rectangle& r) { return r.width * r.height; },
                        [](const UnionOfDisks& u) {
                          double s = 0.0;
                          for (const Disk& d : u.disks) s += std::numbers::pi * d.radius * d.radius;
                          return s;
                        },
                        [](const Polygon& p) {
                          double s = 0.0;
                          const auto& v = p.vertices;
                          for (std::size_t i = 0; i < v.size(); ++i) {
                            const Point a = v[i];
                            const Point b = v[(i + 1) % v.size()];
                            s += a.x * b.y - b.x * a.y;
                          }
                          return 0.5 * std::abs(s);
                        },
                    },
                    shape);
}

BoundingBox bounding_box(const ShapeSpec& shape) {
  return std::visit(
      overloaded{
          [](const Disk& d) {
            return BoundingBox{d.center.x - d.radius, d.center.x + d.radius, d.center.y - d.radius,
                               d.center.y + d.radius};
          },
          [](const Rectangle& r) {
            return BoundingBox{r.corner.x, r.corner.x + r.width, r.corner.y, r.corner.y + r.height};
          },
          [](const UnionOfDisks& u) {
            constexpr double inf = std::numeric_limits<double>::infinity();
            BoundingBox b{inf, -inf, inf, -inf};
            for (const Disk& d : u.disks) {
              b.x_min = std::min(b.x_min, d.center.x - d.radius);
              b.x_max = std::max(b.x_max, d.center.x + d.radius);
              b.y_min = std::min(b.y_min, d.center.y - d.radius);
              b.y_max = std::max(b.y_max, d.center.y + d.radius);
            }
            return b;
          },
          [](const Polygon& p) {
            constexpr double inf = std::numeric_limits<double>::infinity();
            BoundingBox b{inf, -inf, inf, -inf};
            for (const Point& v : p.vertices) {
              b.x_min = std::min(b.x_min, v.x);
              b.x_max = std::max(b.x_max, v.x);
              b.y_min = std::min(b.y_min, v.y);
              b.y_max = std::max(b.y_max, v.y);
            }
            return b;
          },
      },
      shape);
}

double signed_distance(const ShapeSpec& shape, Point p) {
  return std::visit(overloaded{
                        [&](const Disk& d) { return disk_sd(d, p); },
                        [&](const Rectangle& r) {
                          const double cx = r.corner.x + 0.5 * r.width;
                          const double cy = r.corner.y + 0.5 * r.height;
                          const double qx = std::abs(p.x - cx) - 0.5 * r.width;
                          const double qy = std::abs(p.y - cy) - 0.5 * r.height;
                          const double outside = std::hypot(std::max(qx, 0.0), std::max(qy, 0.0));
                          return outside + std::min(std::max(qx, qy), 0.0);
                        },
                        [&](const UnionOfDisks& u) {
                          double s = std::numeric_limits<double>::infinity();
                          for (const Disk& d : u.disks) s = std::min(s, disk_sd(d, p));
                          return s;
                        },
                        [&](const Polygon& poly) {
                          const auto& v = poly.vertices;
                          double dmin = std::numeric_limits<double>::infinity();
                          for (std::size_t i = 0; i < v.size(); ++i)
                            dmin = std::min(dmin, segment_distance(p, v[i], v[(i + 1) % v.size()]));
                          return polygon_contains(poly, p) ? -dmin : dmin;
                        },
                    },
                    shape);
}

ShapeSpec parse_shape(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("shape must look like kind:params, got '" + text + "'");
  const std::string kind = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  ShapeSpec shape;
  if (kind == "disk") {
    const auto v = parse_numbers(rest);
    if (v.size() != 1 && v.size() != 3) throw std::invalid_argument("disk expects R or R,cx,cy");
    shape = Disk{v.size() == 3 ? Point{v[1], v[2]} : Point{}, v[0]};
  } else if (kind == "rect") {
    const auto v = parse_numbers(rest);
    if (v.size() != 2 && v.size() != 4) throw std::invalid_argument("rect expects w,h or w,h,x0,y0");
    shape = Rectangle{v.size() == 4 ? Point{v[2], v[3]} : Point{}, v[0], v[1]};
  } else if (kind == "disks") {
    UnionOfDisks u;
    for (const auto& g : parse_groups(rest)) {
      if (g.size() != 3) throw std::invalid_argument("disks expects cx,cy,r groups separated by ';'");
      u.disks.push_back({{g[0], g[1]}, g[2]});
    }
    shape = u;
  } else if (kind == "polygon") {
    Polygon p;
    for (const auto& g : parse_groups(rest)) {
      if (g.size() != 2) throw std::invalid_argument("polygon expects x,y groups separated by ';'");
      p.vertices.push_back({g[0], g[1]});
    }
    shape = p;
  } else {
    throw std::invalid_argument("unknown shape kind '" + kind + "'");
  }
  validate(shape);
  return shape;
}

}  // namespace okc
