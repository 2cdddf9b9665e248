#include "scrollbio/layout/seam_carver.h"

#include <limits>

#include "scrollbio/util/error.h"

namespace scrollbio::layout {

Seam FindMinimumSeam(const EnergyMap &energy) {
  const int w = energy.width(), h = energy.height();
  if (w < 1 || h < 1) throw InvalidArgument("empty energy map");
  Grid<double> cost(w, h);
  Grid<int> from(w, h, -1);
  for (int x = 0; x < w; ++x) cost.at(x, 0) = energy.at(x, 0);
  for (int y = 1; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int best = x;
      double best_cost = std::numeric_limits<double>::infinity();
      for (int px = std::max(0, x - 1); px <= std::min(w - 1, x + 1); ++px) {
        if (cost.at(px, y - 1) < best_cost) {
          best_cost = cost.at(px, y - 1);
          best = px;
        }
      }
      cost.at(x, y) = best_cost + energy.at(x, y);
      from.at(x, y) = best;
    }
  }
  int end = 0;
  for (int x = 1; x < w; ++x) {
    if (cost.at(x, h - 1) < cost.at(end, h - 1)) end = x;
  }
  Seam seam;
  seam.columns.resize(h);
  seam.columns[h - 1] = end;
  for (int y = h - 1; y > 0; --y) seam.columns[y - 1] = from.at(seam.columns[y], y);
  // Sum along the path rather than reuse the DP total so the reported
  // energy is the plain sum of the seam's cells.
  for (int y = 0; y < h; ++y) seam.energy += energy.at(seam.columns[y], y);
  return seam;
}

RasterImage RemoveSeam(const RasterImage &image, const Seam &seam) {
  if (image.width() < 2) throw InvalidArgument("cannot carve a 1-pixel image");
  RasterImage out(image.width() - 1, image.height());
  for (int y = 0; y < image.height(); ++y) {
    const int cut = seam.columns.at(y);
    for (int x = 0, ox = 0; x < image.width(); ++x) {
      if (x != cut) out.set(ox++, y, image.at(x, y));
    }
  }
  return out;
}

EnergyMap RemoveSeam(const EnergyMap &energy, const Seam &seam) {
  EnergyMap out(energy.width() - 1, energy.height());
  for (int y = 0; y < energy.height(); ++y) {
    const int cut = seam.columns.at(y);
    for (int x = 0, ox = 0; x < energy.width(); ++x) {
      if (x != cut) out.at(ox++, y) = energy.at(x, y);
    }
  }
  return out;
}

RasterImage CarveWidth(const RasterImage &image, const EnergyMap &energy,
                       int target_width, const EnergyFunction &recompute,
                       std::vector<CarveStep> *trace) {
  if (target_width < 1 || target_width > image.width()) {
    throw InvalidArgument("carve target " + std::to_string(target_width) +
                          " outside [1, " + std::to_string(image.width()) +
                          "]; seam insertion is not supported");
  }
  if (energy.width() != image.width() || energy.height() != image.height()) {
    throw InvalidArgument("energy map does not match image");
  }
  RasterImage current = image;
  EnergyMap current_energy = energy;
  while (current.width() > target_width) {
    Seam seam = FindMinimumSeam(current_energy);
    current = RemoveSeam(current, seam);
    if (trace) trace->push_back({std::move(current_energy), seam});
    if (current.width() > target_width) current_energy = recompute(current);
  }
  return current;
}

RasterImage CarveWidth(const RasterImage &image, int target_width,
                       const EnergyConfig &config) {
  EnergyFunction fn = [config](const RasterImage &img) {
    return ComputeEnergy(img, config);
  };
  return CarveWidth(image, fn(image), target_width, fn);
}

}  // namespace scrollbio::layout
