#ifndef SCROLLBIO_LAYOUT_RASTER_H_
#define SCROLLBIO_LAYOUT_RASTER_H_

#include <cstdint>
#include <string>
#include <vector>

namespace scrollbio::layout {

struct Rgb {
  uint8_t r = 0;
  uint8_t g = 0;
  uint8_t b = 0;

  bool operator==(const Rgb &) const = default;
};

// 8-bit RGB raster, row major.
class RasterImage {
 public:
  RasterImage() = default;
  // Throws InvalidArgument unless width, height >= 1.
  RasterImage(int width, int height, Rgb fill = {255, 255, 255});

  int width() const { return width_; }
  int height() const { return height_; }

  Rgb at(int x, int y) const {
    const uint8_t *p = &pixels_[Index(x, y)];
    return {p[0], p[1], p[2]};
  }
  void set(int x, int y, Rgb c) {
    uint8_t *p = &pixels_[Index(x, y)];
    p[0] = c.r;
    p[1] = c.g;
    p[2] = c.b;
  }

  const std::vector<uint8_t> &pixels() const { return pixels_; }

  // Columns [x0, x1) as a new image.
  RasterImage Columns(int x0, int x1) const;

  bool operator==(const RasterImage &) const = default;

 private:
  size_t Index(int x, int y) const {
    return (static_cast<size_t>(y) * width_ + x) * 3;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<uint8_t> pixels_;
};

// Joins images of equal height left to right.
RasterImage ConcatColumns(const std::vector<RasterImage> &parts);

// Resamples horizontally to new_width with linear interpolation; height
// is kept. Used for the uniformly scaled core painting.
RasterImage ResizeWidth(const RasterImage &image, int new_width);

// PNG I/O through libpng. Any PNG is converted to 8-bit RGB on read.
RasterImage ReadPng(const std::string &path);
void WritePng(const RasterImage &image, const std::string &path);
std::string EncodePng(const RasterImage &image);

}  // namespace scrollbio::layout

#endif  // SCROLLBIO_LAYOUT_RASTER_H_
