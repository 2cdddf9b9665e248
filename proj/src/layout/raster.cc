#include "scrollbio/layout/raster.h"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstring>

#include "scrollbio/util/error.h"

namespace scrollbio::layout {

RasterImage::RasterImage(int width, int height, Rgb fill)
    : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw InvalidArgument("raster dimensions must be >= 1, got " +
                          std::to_string(width) + "x" + std::to_string(height));
  }
  pixels_.resize(static_cast<size_t>(width) * height * 3);
  for (size_t i = 0; i < pixels_.size(); i += 3) {
    pixels_[i] = fill.r;
    pixels_[i + 1] = fill.g;
    pixels_[i + 2] = fill.b;
  }
}

RasterImage RasterImage::Columns(int x0, int x1) const {
  if (x0 < 0 || x1 > width_ || x0 >= x1) {
    throw InvalidArgument("column range [" + std::to_string(x0) + ", " +
                          std::to_string(x1) + ") outside image");
  }
  RasterImage out(x1 - x0, height_);
  for (int y = 0; y < height_; ++y) {
    std::memcpy(&out.pixels_[out.Index(0, y)], &pixels_[Index(x0, y)],
                static_cast<size_t>(x1 - x0) * 3);
  }
  return out;
}

RasterImage ConcatColumns(const std::vector<RasterImage> &parts) {
  if (parts.empty()) throw InvalidArgument("nothing to concatenate");
  int width = 0;
  const int height = parts.front().height();
  for (const auto &p : parts) {
    if (p.height() != height) throw InvalidArgument("height mismatch in concat");
    width += p.width();
  }
  RasterImage out(width, height);
  int x0 = 0;
  for (const auto &p : parts) {
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < p.width(); ++x) out.set(x0 + x, y, p.at(x, y));
    }
    x0 += p.width();
  }
  return out;
}

RasterImage ResizeWidth(const RasterImage &image, int new_width) {
  if (new_width < 1) throw InvalidArgument("resize to zero width");
  if (new_width == image.width()) return image;
  RasterImage out(new_width, image.height());
  const double scale = static_cast<double>(image.width()) / new_width;
  for (int x = 0; x < new_width; ++x) {
    double sx = (x + 0.5) * scale - 0.5;
    sx = std::clamp(sx, 0.0, static_cast<double>(image.width() - 1));
    const int x0 = static_cast<int>(std::floor(sx));
    const int x1 = std::min(x0 + 1, image.width() - 1);
    const double t = sx - x0;
    for (int y = 0; y < image.height(); ++y) {
      Rgb a = image.at(x0, y), b = image.at(x1, y);
      auto mix = [t](uint8_t u, uint8_t v) {
        return static_cast<uint8_t>(std::lround(u + (v - u) * t));
      };
      out.set(x, y, {mix(a.r, b.r), mix(a.g, b.g), mix(a.b, b.b)});
    }
  }
  return out;
}

RasterImage ReadPng(const std::string &path) {
  png_image img;
  std::memset(&img, 0, sizeof(img));
  img.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&img, path.c_str())) {
    throw Error("cannot read PNG " + path + ": " + img.message);
  }
  img.format = PNG_FORMAT_RGB;
  std::vector<uint8_t> buffer(PNG_IMAGE_SIZE(img));
  if (!png_image_finish_read(&img, nullptr, buffer.data(), 0, nullptr)) {
    std::string msg = img.message;
    png_image_free(&img);
    throw Error("cannot decode PNG " + path + ": " + msg);
  }
  RasterImage out(static_cast<int>(img.width), static_cast<int>(img.height));
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      const uint8_t *p = &buffer[(static_cast<size_t>(y) * out.width() + x) * 3];
      out.set(x, y, {p[0], p[1], p[2]});
    }
  }
  return out;
}

namespace {

png_image Describe(const RasterImage &image) {
  png_image img;
  std::memset(&img, 0, sizeof(img));
  img.version = PNG_IMAGE_VERSION;
  img.width = static_cast<png_uint_32>(image.width());
  img.height = static_cast<png_uint_32>(image.height());
  img.format = PNG_FORMAT_RGB;
  return img;
}

}  // namespace

void WritePng(const RasterImage &image, const std::string &path) {
  png_image img = Describe(image);
  if (!png_image_write_to_file(&img, path.c_str(), 0, image.pixels().data(), 0,
                               nullptr)) {
    throw Error("cannot write PNG " + path + ": " + img.message);
  }
}

std::string EncodePng(const RasterImage &image) {
  png_image img = Describe(image);
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&img, nullptr, &size, 0, image.pixels().data(),
                                 0, nullptr)) {
    throw Error(std::string("cannot size PNG: ") + img.message);
  }
  std::string out(size, '\0');
  if (!png_image_write_to_memory(&img, out.data(), &size, 0,
                                 image.pixels().data(), 0, nullptr)) {
    throw Error(std::string("cannot encode PNG: ") + img.message);
  }
  out.resize(size);
  return out;
}

}  // namespace scrollbio::layout
