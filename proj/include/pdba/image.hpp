#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pdba {

class ImageIoError : public std::runtime_error {
 public:
  explicit ImageIoError(const std::string& what) : std::runtime_error(what) {}
};

// Raster image with channel-planar storage: data[c*D + pixel], pixel =
// row*width + col, values normalized to [0,1] by the format maximum.
struct Image {
  enum class Format { PgmAscii, PgmBinary, PpmAscii, PpmBinary, Png };

  int height = 0;
  int width = 0;
  int channels = 1;
  int max_val = 255;
  Format format = Format::PpmBinary;
  std::vector<double> data;

  std::size_t pixel_count() const {
    return static_cast<std::size_t>(height) * width;
  }
  std::size_t size() const { return pixel_count() * channels; }
};

// PGM (P2/P5) and PPM (P3/P6), 8- or 16-bit; PNG when built with PDBA_ENABLE_PNG.
// Throws ImageIoError on unreadable or malformed files.
Image load_image(const std::string& path);

// Writes in the image's own format, clipping to [0,1] and scaling by max_val.
void save_image(const Image& img, const std::string& path);

// Deterministic RGB test scene: piecewise-constant shapes over a gradient
// ramp, values in [0,1].
Image synthetic_image(int height, int width);

}  // namespace pdba
