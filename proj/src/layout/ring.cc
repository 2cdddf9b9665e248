#include "scrollbio/layout/ring.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "scrollbio/util/error.h"

namespace scrollbio::layout {

using std::numbers::pi;

RingMapping::RingMapping(int strip_width, int strip_height, RingGeometry geometry)
    : width_(strip_width), height_(strip_height), geometry_(geometry) {
  if (width_ < 2 || width_ % 2 != 0 || height_ < 1) {
    throw InvalidArgument("ring strip must have even width >= 2, got " +
                          std::to_string(width_));
  }
  if (!(geometry_.thickness > 0 && geometry_.thickness < geometry_.outer_radius)) {
    throw InvalidArgument("ring thickness must lie in (0, outer_radius)");
  }
}

int RingMapping::canvas_size() const {
  return static_cast<int>(std::ceil(2 * geometry_.outer_radius));
}

double RingMapping::Theta(double x) const {
  const double half = width_ / 2.0;
  if (x < half || !geometry_.mirror_second_half) return pi * x / half;
  return 2 * pi - pi * (x - half) / half;
}

double RingMapping::Radius(double y) const {
  const double f = y / height_;
  const double r0 = geometry_.outer_radius;
  return geometry_.top_outside ? r0 - f * geometry_.thickness
                               : r0 - geometry_.thickness + f * geometry_.thickness;
}

Point RingMapping::Forward(double x, double y) const {
  const double c = geometry_.outer_radius;
  const double theta = Theta(x), r = Radius(y);
  return {c + r * std::cos(theta), c - r * std::sin(theta)};
}

std::optional<Point> RingMapping::Inverse(double px, double py) const {
  const double c = geometry_.outer_radius;
  const double dx = px - c, dy = c - py;
  const double r = std::hypot(dx, dy);
  const double r_in = geometry_.outer_radius - geometry_.thickness;
  if (r < r_in || r > geometry_.outer_radius) return std::nullopt;
  double theta = std::atan2(dy, dx);
  if (theta < 0) theta += 2 * pi;
  const double half = width_ / 2.0;
  double x;
  if (theta < pi || !geometry_.mirror_second_half) {
    x = theta / pi * half;
  } else {
    x = half + (2 * pi - theta) / pi * half;
  }
  x = std::clamp(x, 0.0, static_cast<double>(width_));
  double f = (geometry_.outer_radius - r) / geometry_.thickness;
  if (!geometry_.top_outside) f = 1 - f;
  return Point{x, std::clamp(f, 0.0, 1.0) * height_};
}

RingLayout BuildRingLayout(const SegmentPlan &plan, const RingMapping &mapping) {
  RingLayout layout;
  layout.strip_width = mapping.strip_width();
  layout.strip_height = mapping.strip_height();
  layout.canvas_size = mapping.canvas_size();
  layout.geometry = mapping.geometry();
  const double r_out = mapping.geometry().outer_radius;
  const double r_in = r_out - mapping.geometry().thickness;
  const int half = mapping.strip_width() / 2;

  int x = 0;
  for (size_t i = 0; i < plan.blocks.size(); ++i) {
    const PlannedBlock &b = plan.blocks[i];
    if (b.assigned_width == 0) continue;
    const int x0 = x, x1 = x + b.assigned_width;
    x = x1;
    const double scale =
        static_cast<double>(b.natural_width) / b.assigned_width;
    auto emit = [&](int s0, int s1) {
      RingBlock rb;
      rb.block_index = i;
      rb.kind = b.kind;
      rb.half = mapping.Half(s0);
      rb.theta0 = mapping.Theta(s0);
      // The end of a half is its own boundary, not the next half's start.
      rb.theta1 = (s1 == half && rb.half == 0) ? std::numbers::pi
                                               : mapping.Theta(s1);
      rb.inner_radius = r_in;
      rb.outer_radius = r_out;
      rb.strip_x0 = s0;
      rb.strip_x1 = s1;
      rb.source_x0 = b.x0 + (s0 - x0) * scale;
      rb.source_scale = scale;
      layout.blocks.push_back(rb);
    };
    if (x0 < half && x1 > half) {
      emit(x0, half);
      emit(half, x1);
    } else {
      emit(x0, x1);
    }
  }
  return layout;
}

namespace {

Rgb Bilinear(const RasterImage &img, double sx, double sy) {
  sx = std::clamp(sx, 0.0, static_cast<double>(img.width() - 1));
  sy = std::clamp(sy, 0.0, static_cast<double>(img.height() - 1));
  const int x0 = static_cast<int>(std::floor(sx));
  const int y0 = static_cast<int>(std::floor(sy));
  const int x1 = std::min(x0 + 1, img.width() - 1);
  const int y1 = std::min(y0 + 1, img.height() - 1);
  const double tx = sx - x0, ty = sy - y0;
  Rgb a = img.at(x0, y0), b = img.at(x1, y0), c = img.at(x0, y1),
      d = img.at(x1, y1);
  auto mix = [&](uint8_t p, uint8_t q, uint8_t r, uint8_t s) {
    double top = p + (q - p) * tx;
    double bottom = r + (s - r) * tx;
    return static_cast<uint8_t>(std::lround(top + (bottom - top) * ty));
  };
  return {mix(a.r, b.r, c.r, d.r), mix(a.g, b.g, c.g, d.g),
          mix(a.b, b.b, c.b, d.b)};
}

}  // namespace

RasterImage RenderRing(const RasterImage &strip, const RingMapping &mapping,
                       Rgb background) {
  if (strip.width() != mapping.strip_width() ||
      strip.height() != mapping.strip_height()) {
    throw InvalidArgument("strip does not match ring mapping");
  }
  const int size = mapping.canvas_size();
  RasterImage out(size, size, background);
  for (int py = 0; py < size; ++py) {
    for (int px = 0; px < size; ++px) {
      auto p = mapping.Inverse(px + 0.5, py + 0.5);
      if (!p) continue;
      out.set(px, py, Bilinear(strip, p->x - 0.5, p->y - 0.5));
    }
  }
  return out;
}

RasterImage PadToEvenWidth(const RasterImage &strip, Rgb background) {
  if (strip.width() % 2 == 0) return strip;
  return ConcatColumns({strip, RasterImage(1, strip.height(), background)});
}

RingGeometry DefaultGeometry(int strip_width, int strip_height) {
  RingGeometry g;
  g.thickness = strip_height;
  g.outer_radius = strip_width / (2 * pi) + strip_height / 2.0;
  return g;
}

}  // namespace scrollbio::layout
