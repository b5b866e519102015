#pragma once

#include <string>
#include <variant>
#include <vector>

namespace okc {

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
double distance(Point a, Point b);

struct Disk {
  Point center;
  double radius = 1.0;
};

struct Rectangle {
  Point corner;  // lower-left
  double width = 1.0;
  double height = 1.0;
};

struct UnionOfDisks {
  std::vector<Disk> disks;
};

struct Polygon {
  std::vector<Point> vertices;  // simple, either orientation
};

using ShapeSpec = std::variant<Disk, Rectangle, UnionOfDisks, Polygon>;

struct BoundingBox {
  double x_min, x_max, y_min, y_max;
};

// Throws std::invalid_argument for non-positive sizes, overlapping union
// members or self-intersecting polygons.
void validate(const ShapeSpec& shape);

double perimeter(const ShapeSpec& shape);
double area(const ShapeSpec& shape);
BoundingBox bounding_box(const ShapeSpec& shape);
// Signed distance, negative inside. Exact for disks and rectangles, exact
// up to union min for unions, exact for polygons.
double signed_distance(const ShapeSpec& shape, Point p);

// Parses `disk:R[,cx,cy]`, `rect:w,h[,x0,y0]`, `disks:cx,cy,r;cx,cy,r;...`,
// `polygon:x,y;x,y;...`.
ShapeSpec parse_shape(const std::string& text);

}  // namespace okc
