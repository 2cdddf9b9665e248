#ifndef SCROLLBIO_LAYOUT_SEGMENT_PLAN_H_
#define SCROLLBIO_LAYOUT_SEGMENT_PLAN_H_

#include <vector>

#include "scrollbio/corpus/model.h"
#include "scrollbio/util/error.h"

namespace scrollbio::layout {

struct PlanConfig {
  // Non-core spans are cut into blocks no wider than this.
  int max_block_width = 128;
  // Text blocks keep at least this fraction of their natural width.
  double text_min_ratio = 0.75;
  // Fraction of the target length given to the core painting.
  double core_fraction = 1.0 / 3.0;
};

struct PlannedBlock {
  // Source columns [x0, x1); empty for padding blocks.
  int x0 = 0;
  int x1 = 0;
  BlockKind kind = BlockKind::kOther;
  int natural_width = 0;
  int assigned_width = 0;
  double min_ratio = 0;
};

// Left-to-right blocks whose assigned widths sum to target_length.
struct SegmentPlan {
  int target_length = 0;
  // Compression ratio of the non-core content before text protection.
  double global_ratio = 0;
  std::vector<PlannedBlock> blocks;
};

// Text floors cannot be met even if every other block shrinks to zero.
class PlanningError : public Error {
 public:
  PlanningError(const std::string &what, double feasible_ratio)
      : Error(what), feasible_ratio_(feasible_ratio) {}
  // The largest text floor ratio the target admits.
  double feasible_ratio() const { return feasible_ratio_; }

 private:
  double feasible_ratio_;
};

// Plans the strip: the core block takes core_fraction of the target (scaled,
// never carved); the rest is shared by non-core blocks in proportion to
// their natural width, with text blocks floored at text_min_ratio and the
// deficit taken from the other blocks. Widths are integers summing to
// target_length exactly (largest-remainder rounding).
SegmentPlan PlanSegments(int image_width, const PixelRect &core,
                         const std::vector<RegionAnnotation> &regions,
                         int target_length, const PlanConfig &config = {});

SegmentPlan PlanSegments(const HandscrollRecord &handscroll, int target_length,
                         const PlanConfig &config = {});

}  // namespace scrollbio::layout

#endif  // SCROLLBIO_LAYOUT_SEGMENT_PLAN_H_
