#ifndef SCROLLBIO_LAYOUT_PIPELINE_H_
#define SCROLLBIO_LAYOUT_PIPELINE_H_

#include "json.hpp"
#include "scrollbio/layout/energy.h"
#include "scrollbio/layout/raster.h"
#include "scrollbio/layout/ring.h"
#include "scrollbio/layout/segment_plan.h"

namespace scrollbio::layout {

struct LayoutConfig {
  EnergyConfig energy;
  PlanConfig plan;
  // Zero radius/thickness selects DefaultGeometry for the strip.
  RingGeometry geometry;
  Rgb background = {255, 255, 255};
};

struct LayoutResult {
  SegmentPlan plan;
  RasterImage strip;
  RingLayout ring;
  RasterImage ring_image;
};

// Plans the strip, scales the core, carves compressed non-core blocks,
// stretches expanded ones, then projects the strip onto the ring.
LayoutResult LayoutHandscroll(const RasterImage &image,
                              const HandscrollRecord &handscroll,
                              int target_length, const LayoutConfig &config = {});

nlohmann::json ToJson(const SegmentPlan &plan);
nlohmann::json ToJson(const RingLayout &layout);

LayoutConfig LayoutConfigFromJson(const nlohmann::json &j);
nlohmann::json ToJson(const LayoutConfig &config);

}  // namespace scrollbio::layout

#endif  // SCROLLBIO_LAYOUT_PIPELINE_H_
