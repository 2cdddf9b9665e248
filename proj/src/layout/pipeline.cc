#include "scrollbio/layout/pipeline.h"

#include "scrollbio/layout/seam_carver.h"
#include "scrollbio/util/error.h"

namespace scrollbio::layout {

using nlohmann::json;

LayoutResult LayoutHandscroll(const RasterImage &image,
                              const HandscrollRecord &handscroll,
                              int target_length, const LayoutConfig &config) {
  if (image.width() != handscroll.image_width ||
      image.height() != handscroll.image_height) {
    throw InvalidArgument("image " + handscroll.image_ref + " is " +
                          std::to_string(image.width()) + "x" +
                          std::to_string(image.height()) +
                          ", record declares " +
                          std::to_string(handscroll.image_width) + "x" +
                          std::to_string(handscroll.image_height));
  }
  LayoutResult result;
  result.plan = PlanSegments(handscroll, target_length, config.plan);

  std::vector<RasterImage> parts;
  for (const PlannedBlock &b : result.plan.blocks) {
    if (b.assigned_width == 0) continue;
    if (b.natural_width == 0) {
      parts.emplace_back(b.assigned_width, image.height(), config.background);
      continue;
    }
    RasterImage block = image.Columns(b.x0, b.x1);
    if (b.kind != BlockKind::kCore && b.assigned_width < b.natural_width) {
      parts.push_back(CarveWidth(block, b.assigned_width, config.energy));
    } else {
      parts.push_back(ResizeWidth(block, b.assigned_width));
    }
  }
  result.strip = PadToEvenWidth(ConcatColumns(parts), config.background);

  RingGeometry geometry = config.geometry;
  if (geometry.outer_radius <= 0 || geometry.thickness <= 0) {
    RingGeometry d = DefaultGeometry(result.strip.width(), result.strip.height());
    geometry.outer_radius = d.outer_radius;
    geometry.thickness = d.thickness;
  }
  RingMapping mapping(result.strip.width(), result.strip.height(), geometry);
  result.ring = BuildRingLayout(result.plan, mapping);
  result.ring_image = RenderRing(result.strip, mapping, config.background);
  return result;
}

json ToJson(const SegmentPlan &plan) {
  json blocks = json::array();
  for (const auto &b : plan.blocks) {
    blocks.push_back({{"x0", b.x0},
                      {"x1", b.x1},
                      {"kind", ToString(b.kind)},
                      {"natural_width", b.natural_width},
                      {"assigned_width", b.assigned_width},
                      {"min_ratio", b.min_ratio}});
  }
  return {{"target_length", plan.target_length},
          {"global_ratio", plan.global_ratio},
          {"blocks", std::move(blocks)}};
}

json ToJson(const RingLayout &layout) {
  json blocks = json::array();
  for (const auto &b : layout.blocks) {
    blocks.push_back({{"block_index", b.block_index},
                      {"kind", ToString(b.kind)},
                      {"half", b.half},
                      {"theta0", b.theta0},
                      {"theta1", b.theta1},
                      {"inner_radius", b.inner_radius},
                      {"outer_radius", b.outer_radius},
                      {"strip_x0", b.strip_x0},
                      {"strip_x1", b.strip_x1},
                      {"source_x0", b.source_x0},
                      {"source_scale", b.source_scale}});
  }
  return {{"strip_width", layout.strip_width},
          {"strip_height", layout.strip_height},
          {"canvas_size", layout.canvas_size},
          {"outer_radius", layout.geometry.outer_radius},
          {"thickness", layout.geometry.thickness},
          {"top_outside", layout.geometry.top_outside},
          {"mirror_second_half", layout.geometry.mirror_second_half},
          {"blocks", std::move(blocks)}};
}

LayoutConfig LayoutConfigFromJson(const json &j) {
  LayoutConfig c;
  if (!j.is_object()) return c;
  c.energy.alpha = j.value("alpha", c.energy.alpha);
  c.energy.beta = j.value("beta", c.energy.beta);
  const std::string blur = j.value("blur", std::string("binomial5"));
  if (blur == "none") {
    c.energy.blur = BlurKernel::kNone;
  } else if (blur != "binomial5") {
    throw InvalidArgument("unknown blur kernel: " + blur);
  }
  c.plan.max_block_width = j.value("max_block_width", c.plan.max_block_width);
  c.plan.text_min_ratio = j.value("text_min_ratio", c.plan.text_min_ratio);
  c.plan.core_fraction = j.value("core_fraction", c.plan.core_fraction);
  c.geometry.outer_radius = j.value("outer_radius", 0.0);
  c.geometry.thickness = j.value("thickness", 0.0);
  c.geometry.top_outside = j.value("top_outside", true);
  c.geometry.mirror_second_half = j.value("mirror_second_half", false);
  return c;
}

json ToJson(const LayoutConfig &c) {
  return {{"alpha", c.energy.alpha},
          {"beta", c.energy.beta},
          {"blur", c.energy.blur == BlurKernel::kNone ? "none" : "binomial5"},
          {"max_block_width", c.plan.max_block_width},
          {"text_min_ratio", c.plan.text_min_ratio},
          {"core_fraction", c.plan.core_fraction},
          {"outer_radius", c.geometry.outer_radius},
          {"thickness", c.geometry.thickness},
          {"top_outside", c.geometry.top_outside},
          {"mirror_second_half", c.geometry.mirror_second_half}};
}

}  // namespace scrollbio::layout
