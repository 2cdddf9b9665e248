#ifndef SCROLLBIO_LAYOUT_SEAM_CARVER_H_
#define SCROLLBIO_LAYOUT_SEAM_CARVER_H_

#include <functional>
#include <vector>

#include "scrollbio/layout/energy.h"
#include "scrollbio/layout/raster.h"

namespace scrollbio::layout {

// An 8-connected vertical seam: one column per row, adjacent rows differ
// by at most one column.
struct Seam {
  std::vector<int> columns;
  double energy = 0;
};

// Minimum-total-energy vertical seam by dynamic programming. Ties go to the
// leftmost predecessor and, on the last row, the leftmost end column.
Seam FindMinimumSeam(const EnergyMap &energy);

RasterImage RemoveSeam(const RasterImage &image, const Seam &seam);
EnergyMap RemoveSeam(const EnergyMap &energy, const Seam &seam);

using EnergyFunction = std::function<EnergyMap(const RasterImage &)>;

// Per-iteration record of a carve, for inspection and tests.
struct CarveStep {
  EnergyMap energy;  // the map the seam was found on
  Seam seam;
};

// Removes seams until the image is target_width wide. The first seam is
// found on `energy`; after every removal the energy is recomputed on the
// carved image with `recompute`. Throws InvalidArgument when target_width is
// outside [1, width] or `energy` does not match the image.
RasterImage CarveWidth(const RasterImage &image, const EnergyMap &energy,
                       int target_width, const EnergyFunction &recompute,
                       std::vector<CarveStep> *trace = nullptr);

// Carves with the fused gradient/saliency energy.
RasterImage CarveWidth(const RasterImage &image, int target_width,
                       const EnergyConfig &config);

}  // namespace scrollbio::layout

#endif  // SCROLLBIO_LAYOUT_SEAM_CARVER_H_
