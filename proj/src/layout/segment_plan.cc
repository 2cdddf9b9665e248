#include "scrollbio/layout/segment_plan.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace scrollbio::layout {
namespace {

int Priority(BlockKind kind) {
  switch (kind) {
    case BlockKind::kText: return 3;
    case BlockKind::kSilk: return 2;
    case BlockKind::kOther: return 1;
    default: return 0;
  }
}

// Splits [x0, x1) into kind-homogeneous runs, then each run into near-equal
// pieces no wider than max_width.
void AppendSpan(int x0, int x1, const std::vector<BlockKind> &kinds,
                int max_width, double text_min_ratio,
                std::vector<PlannedBlock> &out) {
  int run_start = x0;
  for (int x = x0 + 1; x <= x1; ++x) {
    if (x < x1 && kinds[x] == kinds[run_start]) continue;
    const int len = x - run_start;
    const int pieces = (len + max_width - 1) / max_width;
    for (int p = 0; p < pieces; ++p) {
      const int b0 = run_start + static_cast<int>(static_cast<long>(len) * p / pieces);
      const int b1 =
          run_start + static_cast<int>(static_cast<long>(len) * (p + 1) / pieces);
      PlannedBlock block;
      block.x0 = b0;
      block.x1 = b1;
      block.kind = kinds[run_start];
      block.natural_width = b1 - b0;
      block.min_ratio = block.kind == BlockKind::kText ? text_min_ratio : 0.0;
      out.push_back(block);
    }
    run_start = x;
  }
}

// Finds t with sum_i max(floor_i, t * natural_i) == budget and returns the
// per-block real widths. Requires sum(floor) <= budget.
std::vector<double> WaterFill(const std::vector<double> &natural,
                              const std::vector<double> &floor, double budget) {
  auto total = [&](double t) {
    double s = 0;
    for (size_t i = 0; i < natural.size(); ++i) {
      s += std::max(floor[i], t * natural[i]);
    }
    return s;
  };
  // Breakpoints t_i = floor_i / natural_i; between them total(t) is linear.
  std::vector<double> breaks = {0.0};
  for (size_t i = 0; i < natural.size(); ++i) {
    if (natural[i] > 0 && floor[i] > 0) breaks.push_back(floor[i] / natural[i]);
  }
  std::sort(breaks.begin(), breaks.end());
  double t = 0;
  bool found = false;
  for (size_t k = 0; k < breaks.size() && !found; ++k) {
    const double lo = breaks[k];
    const double hi = k + 1 < breaks.size() ? breaks[k + 1] : -1;
    // Slope on (lo, hi): natural width of blocks not held at their floor.
    double fixed = 0, slope = 0;
    for (size_t i = 0; i < natural.size(); ++i) {
      if (natural[i] > 0 && floor[i] / natural[i] <= lo) {
        slope += natural[i];
      } else {
        fixed += floor[i];
      }
    }
    if (slope <= 0) continue;
    const double cand = (budget - fixed) / slope;
    if (cand >= lo - 1e-12 && (hi < 0 || cand <= hi + 1e-12)) {
      t = std::max(cand, 0.0);
      found = true;
    }
  }
  std::vector<double> out(natural.size());
  for (size_t i = 0; i < natural.size(); ++i) {
    out[i] = std::max(floor[i], t * natural[i]);
  }
  // Every block is pinned at its floor (all-text spans): the floors already
  // use the budget or leave a remainder that only scaling can take.
  if (!found) {
    const double used = total(0);
    const double nat = std::accumulate(natural.begin(), natural.end(), 0.0);
    for (size_t i = 0; i < natural.size(); ++i) {
      out[i] = floor[i] + (nat > 0 ? (budget - used) * natural[i] / nat : 0);
    }
  }
  return out;
}

// Integer widths summing to `total`, rounding by largest remainder with
// ties to the earlier block. No width drops below its lower bound.
std::vector<int> LargestRemainder(const std::vector<double> &real,
                                  const std::vector<int> &lower, int total) {
  std::vector<int> out(real.size());
  std::vector<std::pair<double, size_t>> rem;
  int sum = 0;
  for (size_t i = 0; i < real.size(); ++i) {
    out[i] = std::max(lower[i], static_cast<int>(std::floor(real[i] + 1e-9)));
    sum += out[i];
    rem.emplace_back(real[i] - out[i], i);
  }
  std::stable_sort(rem.begin(), rem.end(),
                   [](const auto &a, const auto &b) { return a.first > b.first; });
  for (size_t k = 0; sum < total; k = (k + 1) % rem.size()) {
    ++out[rem[k].second];
    ++sum;
  }
  // Accumulated rounding slack: take it back from the smallest remainders.
  for (size_t k = rem.size(); sum > total && k-- > 0;) {
    const size_t i = rem[k].second;
    if (out[i] > lower[i]) {
      --out[i];
      --sum;
    }
  }
  return out;
}

}  // namespace

SegmentPlan PlanSegments(int image_width, const PixelRect &core,
                         const std::vector<RegionAnnotation> &regions,
                         int target_length, const PlanConfig &config) {
  if (core.w <= 0 || core.x < 0 || core.x + core.w > image_width) {
    throw InvalidArgument("core region outside the strip");
  }
  if (config.max_block_width < 1) throw InvalidArgument("max_block_width < 1");
  if (!(config.core_fraction > 0 && config.core_fraction < 1)) {
    throw InvalidArgument("core_fraction must lie in (0, 1)");
  }
  if (target_length < 3 || target_length * 3 < core.w) {
    throw InvalidArgument("target length " + std::to_string(target_length) +
                          " infeasible for a core " + std::to_string(core.w) +
                          " px wide");
  }

  std::vector<BlockKind> kinds(image_width, BlockKind::kOther);
  for (const auto &r : regions) {
    for (int x = std::max(0, r.x); x < std::min(image_width, r.x + r.w); ++x) {
      if (Priority(r.kind) > Priority(kinds[x])) kinds[x] = r.kind;
    }
  }

  SegmentPlan plan;
  plan.target_length = target_length;
  std::vector<PlannedBlock> &blocks = plan.blocks;
  AppendSpan(0, core.x, kinds, config.max_block_width, config.text_min_ratio,
             blocks);
  const size_t core_index = blocks.size();
  blocks.push_back({core.x, core.x + core.w, BlockKind::kCore, core.w, 0, 0});
  AppendSpan(core.x + core.w, image_width, kinds, config.max_block_width,
             config.text_min_ratio, blocks);

  const double core_real = target_length * config.core_fraction;
  const double budget = target_length - core_real;

  std::vector<double> real(blocks.size(), 0.0);
  real[core_index] = core_real;
  std::vector<size_t> others;
  double natural_total = 0;
  for (size_t i = 0; i < blocks.size(); ++i) {
    if (i == core_index) continue;
    others.push_back(i);
    natural_total += blocks[i].natural_width;
  }

  if (others.empty()) {
    // Nothing besides the core: pad both sides evenly.
    PlannedBlock pad{core.x, core.x, BlockKind::kPadding, 0, 0, 0};
    blocks.insert(blocks.begin(), pad);
    pad.x0 = pad.x1 = core.x + core.w;
    blocks.push_back(pad);
    real = {budget / 2, core_real, budget / 2};
    plan.global_ratio = 0;
  } else {
    plan.global_ratio = budget / natural_total;
    std::vector<double> natural, floor;
    double text_natural = 0, floor_total = 0;
    for (size_t i : others) {
      const PlannedBlock &b = blocks[i];
      natural.push_back(b.natural_width);
      double f = b.kind == BlockKind::kText
                     ? std::ceil(b.min_ratio * b.natural_width - 1e-9)
                     : 0.0;
      floor.push_back(f);
      floor_total += f;
      if (b.kind == BlockKind::kText) text_natural += b.natural_width;
    }
    if (floor_total > budget + 1e-9) {
      const double feasible = text_natural > 0 ? budget / text_natural : 0;
      throw PlanningError(
          "text floors need " + std::to_string(floor_total) + " px but only " +
              std::to_string(budget) + " px remain after the core; relax the "
              "text ratio to at most " + std::to_string(feasible),
          feasible);
    }
    std::vector<double> filled = WaterFill(natural, floor, budget);
    for (size_t k = 0; k < others.size(); ++k) real[others[k]] = filled[k];
  }

  std::vector<int> lower(blocks.size(), 0);
  for (size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].kind == BlockKind::kText) {
      lower[i] = static_cast<int>(
          std::ceil(blocks[i].min_ratio * blocks[i].natural_width - 1e-9));
    }
  }
  std::vector<int> widths = LargestRemainder(real, lower, target_length);
  for (size_t i = 0; i < blocks.size(); ++i) blocks[i].assigned_width = widths[i];
  return plan;
}

SegmentPlan PlanSegments(const HandscrollRecord &handscroll, int target_length,
                         const PlanConfig &config) {
  return PlanSegments(handscroll.image_width, handscroll.core_region,
                      handscroll.regions, target_length, config);
}

}  // namespace scrollbio::layout
