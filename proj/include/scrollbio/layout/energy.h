#ifndef SCROLLBIO_LAYOUT_ENERGY_H_
#define SCROLLBIO_LAYOUT_ENERGY_H_

#include <vector>

#include "scrollbio/layout/raster.h"

namespace scrollbio::layout {

// Real-valued per-pixel grid.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(int width, int height, T fill = T{})
      : width_(width), height_(height),
        values_(static_cast<size_t>(width) * height, fill) {}

  int width() const { return width_; }
  int height() const { return height_; }
  T &at(int x, int y) { return values_[static_cast<size_t>(y) * width_ + x]; }
  const T &at(int x, int y) const {
    return values_[static_cast<size_t>(y) * width_ + x];
  }
  std::vector<T> &values() { return values_; }
  const std::vector<T> &values() const { return values_; }

  bool operator==(const Grid &) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<T> values_;
};

using EnergyMap = Grid<double>;

struct Lab {
  double l = 0;
  double a = 0;
  double b = 0;
};

using LabImage = Grid<Lab>;

// sRGB channels in [0, 1] to CIE L*a*b* under D65.
Lab SrgbToLab(double r, double g, double b);
LabImage ToLab(const RasterImage &image);

// Max-min normalization into [0, 1]. A constant map normalizes to zeros.
EnergyMap Normalize(const EnergyMap &map);

// |Gx| + |Gy| of luminance with 3x3 Sobel kernels and replicated borders,
// normalized.
EnergyMap GradientEnergy(const RasterImage &image);

enum class BlurKernel {
  kNone,       // identity
  kBinomial5,  // separable [1 4 6 4 1] / 16, replicated borders
};

// Frequency-tuned saliency: squared Lab distance between the mean color of
// the original image and each pixel of the blurred image, normalized.
EnergyMap FtSaliency(const RasterImage &image, BlurKernel blur);

// The same formula on Lab inputs; `filtered` supplies c(x, y), `original`
// supplies the mean. Returns the raw (unnormalized) values.
EnergyMap FtSaliencyRaw(const LabImage &original, const LabImage &filtered);

// alpha * N(grad) + beta * N(sal) before the final normalization. Throws
// InvalidArgument on mismatched dimensions or bad weights.
EnergyMap FuseEnergyRaw(const EnergyMap &grad, const EnergyMap &sal,
                        double alpha, double beta);

// Normalized fusion.
EnergyMap FuseEnergy(const EnergyMap &grad, const EnergyMap &sal, double alpha,
                     double beta);

struct EnergyConfig {
  double alpha = 0.7;
  double beta = 0.3;
  BlurKernel blur = BlurKernel::kBinomial5;
};

EnergyMap ComputeEnergy(const RasterImage &image, const EnergyConfig &config);

}  // namespace scrollbio::layout

#endif  // SCROLLBIO_LAYOUT_ENERGY_H_
