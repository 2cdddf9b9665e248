#include "scrollbio/layout/energy.h"

#include <algorithm>
#include <cmath>

#include "scrollbio/util/error.h"

namespace scrollbio::layout {
namespace {

// D65 reference white, Y normalized to 1.
constexpr double kWhiteX = 0.95047;
constexpr double kWhiteY = 1.0;
constexpr double kWhiteZ = 1.08883;

double Linearize(double c) {
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double LabF(double t) {
  constexpr double delta = 6.0 / 29.0;
  return t > delta * delta * delta ? std::cbrt(t)
                                   : t / (3 * delta * delta) + 4.0 / 29.0;
}

struct FloatRgb {
  double r, g, b;
};

Grid<FloatRgb> ToFloat(const RasterImage &image) {
  Grid<FloatRgb> out(image.width(), image.height());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      Rgb c = image.at(x, y);
      out.at(x, y) = {c.r / 255.0, c.g / 255.0, c.b / 255.0};
    }
  }
  return out;
}

Grid<FloatRgb> Binomial5(const Grid<FloatRgb> &in) {
  static constexpr double kTaps[5] = {1 / 16.0, 4 / 16.0, 6 / 16.0, 4 / 16.0,
                                      1 / 16.0};
  const int w = in.width(), h = in.height();
  Grid<FloatRgb> tmp(w, h), out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      FloatRgb acc{0, 0, 0};
      for (int k = -2; k <= 2; ++k) {
        const FloatRgb &p = in.at(std::clamp(x + k, 0, w - 1), y);
        acc.r += kTaps[k + 2] * p.r;
        acc.g += kTaps[k + 2] * p.g;
        acc.b += kTaps[k + 2] * p.b;
      }
      tmp.at(x, y) = acc;
    }
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      FloatRgb acc{0, 0, 0};
      for (int k = -2; k <= 2; ++k) {
        const FloatRgb &p = tmp.at(x, std::clamp(y + k, 0, h - 1));
        acc.r += kTaps[k + 2] * p.r;
        acc.g += kTaps[k + 2] * p.g;
        acc.b += kTaps[k + 2] * p.b;
      }
      out.at(x, y) = acc;
    }
  }
  return out;
}

LabImage ToLab(const Grid<FloatRgb> &in) {
  LabImage out(in.width(), in.height());
  for (size_t i = 0; i < in.values().size(); ++i) {
    const FloatRgb &c = in.values()[i];
    out.values()[i] = SrgbToLab(c.r, c.g, c.b);
  }
  return out;
}

void CheckWeights(double alpha, double beta) {
  if (!(alpha >= 0 && beta >= 0 && alpha + beta > 0)) {
    throw InvalidArgument("fusion weights must be >= 0 with a positive sum");
  }
}

}  // namespace

Lab SrgbToLab(double r, double g, double b) {
  const double lr = Linearize(r), lg = Linearize(g), lb = Linearize(b);
  const double x = 0.4124564 * lr + 0.3575761 * lg + 0.1804375 * lb;
  const double y = 0.2126729 * lr + 0.7151522 * lg + 0.0721750 * lb;
  const double z = 0.0193339 * lr + 0.1191920 * lg + 0.9503041 * lb;
  const double fx = LabF(x / kWhiteX);
  const double fy = LabF(y / kWhiteY);
  const double fz = LabF(z / kWhiteZ);
  return {116 * fy - 16, 500 * (fx - fy), 200 * (fy - fz)};
}

LabImage ToLab(const RasterImage &image) { return ToLab(ToFloat(image)); }

EnergyMap Normalize(const EnergyMap &map) {
  EnergyMap out(map.width(), map.height(), 0.0);
  if (map.values().empty()) return out;
  auto [lo, hi] = std::minmax_element(map.values().begin(), map.values().end());
  const double min = *lo, range = *hi - *lo;
  if (!(range > 0)) return out;
  for (size_t i = 0; i < map.values().size(); ++i) {
    out.values()[i] = (map.values()[i] - min) / range;
  }
  return out;
}

EnergyMap GradientEnergy(const RasterImage &image) {
  const int w = image.width(), h = image.height();
  Grid<double> luma(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      Rgb c = image.at(x, y);
      luma.at(x, y) = 0.299 * c.r + 0.587 * c.g + 0.114 * c.b;
    }
  }
  auto p = [&](int x, int y) {
    return luma.at(std::clamp(x, 0, w - 1), std::clamp(y, 0, h - 1));
  };
  EnergyMap raw(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double gx = (p(x + 1, y - 1) + 2 * p(x + 1, y) + p(x + 1, y + 1)) -
                        (p(x - 1, y - 1) + 2 * p(x - 1, y) + p(x - 1, y + 1));
      const double gy = (p(x - 1, y + 1) + 2 * p(x, y + 1) + p(x + 1, y + 1)) -
                        (p(x - 1, y - 1) + 2 * p(x, y - 1) + p(x + 1, y - 1));
      raw.at(x, y) = std::abs(gx) + std::abs(gy);
    }
  }
  return Normalize(raw);
}

EnergyMap FtSaliencyRaw(const LabImage &original, const LabImage &filtered) {
  if (original.width() != filtered.width() ||
      original.height() != filtered.height()) {
    throw InvalidArgument("saliency inputs differ in size");
  }
  Lab mean;
  for (const Lab &c : original.values()) {
    mean.l += c.l;
    mean.a += c.a;
    mean.b += c.b;
  }
  const double n = static_cast<double>(original.values().size());
  mean = {mean.l / n, mean.a / n, mean.b / n};
  EnergyMap out(original.width(), original.height());
  for (size_t i = 0; i < filtered.values().size(); ++i) {
    const Lab &c = filtered.values()[i];
    const double dl = mean.l - c.l, da = mean.a - c.a, db = mean.b - c.b;
    out.values()[i] = dl * dl + da * da + db * db;
  }
  return out;
}

EnergyMap FtSaliency(const RasterImage &image, BlurKernel blur) {
  Grid<FloatRgb> rgb = ToFloat(image);
  LabImage original = ToLab(rgb);
  if (blur == BlurKernel::kNone) return Normalize(FtSaliencyRaw(original, original));
  return Normalize(FtSaliencyRaw(original, ToLab(Binomial5(rgb))));
}

EnergyMap FuseEnergyRaw(const EnergyMap &grad, const EnergyMap &sal,
                        double alpha, double beta) {
  if (grad.width() != sal.width() || grad.height() != sal.height()) {
    throw InvalidArgument("energy maps differ in size");
  }
  CheckWeights(alpha, beta);
  const EnergyMap ng = Normalize(grad), ns = Normalize(sal);
  EnergyMap out(grad.width(), grad.height());
  for (size_t i = 0; i < out.values().size(); ++i) {
    out.values()[i] = alpha * ng.values()[i] + beta * ns.values()[i];
  }
  return out;
}

EnergyMap FuseEnergy(const EnergyMap &grad, const EnergyMap &sal, double alpha,
                     double beta) {
  return Normalize(FuseEnergyRaw(grad, sal, alpha, beta));
}

EnergyMap ComputeEnergy(const RasterImage &image, const EnergyConfig &config) {
  return FuseEnergy(GradientEnergy(image), FtSaliency(image, config.blur),
                    config.alpha, config.beta);
}

}  // namespace scrollbio::layout
