#ifndef SCROLLBIO_LAYOUT_RING_H_
#define SCROLLBIO_LAYOUT_RING_H_

#include <optional>
#include <vector>

#include "scrollbio/layout/raster.h"
#include "scrollbio/layout/segment_plan.h"

namespace scrollbio::layout {

struct RingGeometry {
  double outer_radius = 0;
  double thickness = 0;
  // Strip top on the outer circle; false puts it on the inner circle.
  bool top_outside = true;
  // Mirror the second half instead of continuing its angle; breaks the
  // angular continuity between halves.
  bool mirror_second_half = false;
};

struct Point {
  double x = 0;
  double y = 0;
};

// Rectangle strip -> annulus. The strip is split into two equal halves;
// column x of the first half lands at angle 2*pi*x/W on the upper
// semicircle, the second half continues on the lower semicircle. Canvas
// coordinates have the ring center at (R, R) with y pointing down; angles
// run counterclockwise on screen from the positive x axis.
class RingMapping {
 public:
  // Throws InvalidArgument for an odd or empty strip, or thickness not in
  // (0, outer_radius).
  RingMapping(int strip_width, int strip_height, RingGeometry geometry);

  int strip_width() const { return width_; }
  int strip_height() const { return height_; }
  const RingGeometry &geometry() const { return geometry_; }
  // Square canvas edge length.
  int canvas_size() const;

  // x in [0, W].
  double Theta(double x) const;
  double Radius(double y) const;
  int Half(double x) const { return x < width_ / 2.0 ? 0 : 1; }

  Point Forward(double x, double y) const;
  // Strip coordinates of a canvas point, or nullopt off the ring.
  std::optional<Point> Inverse(double px, double py) const;

 private:
  int width_;
  int height_;
  RingGeometry geometry_;
};

// One planned block (or the part of it in one half) on the ring.
struct RingBlock {
  size_t block_index = 0;
  BlockKind kind = BlockKind::kOther;
  int half = 0;
  double theta0 = 0;
  double theta1 = 0;
  double inner_radius = 0;
  double outer_radius = 0;
  // Strip column range, and the affine map back to source columns:
  // source_x = source_x0 + (strip_x - strip_x0) * source_scale.
  int strip_x0 = 0;
  int strip_x1 = 0;
  double source_x0 = 0;
  double source_scale = 0;
};

struct RingLayout {
  int strip_width = 0;
  int strip_height = 0;
  int canvas_size = 0;
  RingGeometry geometry;
  std::vector<RingBlock> blocks;
};

// Lays the plan's blocks out along the strip and onto the ring. Blocks that
// straddle the half boundary are split.
RingLayout BuildRingLayout(const SegmentPlan &plan, const RingMapping &mapping);

// Inverse-maps every canvas pixel and samples the strip bilinearly.
RasterImage RenderRing(const RasterImage &strip, const RingMapping &mapping,
                       Rgb background = {255, 255, 255});

// Appends one background column if the width is odd.
RasterImage PadToEvenWidth(const RasterImage &strip,
                           Rgb background = {255, 255, 255});

// Radius that keeps the ring's mid-circle as long as the strip.
RingGeometry DefaultGeometry(int strip_width, int strip_height);

}  // namespace scrollbio::layout

#endif  // SCROLLBIO_LAYOUT_RING_H_
