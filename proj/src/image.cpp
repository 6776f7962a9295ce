#include "pdba/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#ifdef PDBA_ENABLE_PNG
#include <png.h>

#include <cstdio>
#include <memory>
#endif

namespace pdba {

namespace {

// Skips whitespace and '#' comment lines between PNM header tokens.
int next_pnm_int(std::istream& in, const std::string& path) {
  for (;;) {
    const int c = in.peek();
    if (c == EOF) throw ImageIoError(path + ": truncated header");
    if (std::isspace(c)) {
      in.get();
      continue;
    }
    if (c == '#') {
      std::string line;
      std::getline(in, line);
      continue;
    }
    break;
  }
  int value = 0;
  if (!(in >> value)) throw ImageIoError(path + ": malformed header");
  return value;
}

Image load_pnm(std::ifstream& in, const std::string& path, const std::string& magic) {
  Image img;
  if (magic == "P2") {
    img.format = Image::Format::PgmAscii;
    img.channels = 1;
  } else if (magic == "P5") {
    img.format = Image::Format::PgmBinary;
    img.channels = 1;
  } else if (magic == "P3") {
    img.format = Image::Format::PpmAscii;
    img.channels = 3;
  } else if (magic == "P6") {
    img.format = Image::Format::PpmBinary;
    img.channels = 3;
  } else {
    throw ImageIoError(path + ": unsupported magic '" + magic + "'");
  }

  img.width = next_pnm_int(in, path);
  img.height = next_pnm_int(in, path);
  img.max_val = next_pnm_int(in, path);
  if (img.width < 1 || img.height < 1 || img.max_val < 1 || img.max_val > 65535)
    throw ImageIoError(path + ": invalid dimensions or max value");

  const std::size_t d = img.pixel_count();
  const std::size_t n = d * img.channels;
  img.data.assign(n, 0.0);
  const double inv = 1.0 / img.max_val;

  const bool ascii =
      img.format == Image::Format::PgmAscii || img.format == Image::Format::PpmAscii;
  if (ascii) {
    // Samples are interleaved per pixel in the file; storage is planar.
    for (std::size_t pix = 0; pix < d; ++pix)
      for (int c = 0; c < img.channels; ++c) {
        int v = 0;
        if (!(in >> v)) throw ImageIoError(path + ": truncated pixel data");
        if (v < 0 || v > img.max_val) throw ImageIoError(path + ": sample out of range");
        img.data[static_cast<std::size_t>(c) * d + pix] = v * inv;
      }
    return img;
  }

  // Binary: a single whitespace byte separates the header from the raster.
  in.get();
  const int bytes = img.max_val > 255 ? 2 : 1;
  std::vector<unsigned char> raw(n * bytes);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size())
    throw ImageIoError(path + ": truncated pixel data");
  for (std::size_t pix = 0; pix < d; ++pix)
    for (int c = 0; c < img.channels; ++c) {
      const std::size_t at = (pix * img.channels + c) * bytes;
      int v = raw[at];
      if (bytes == 2) v = (v << 8) | raw[at + 1];  // big-endian
      if (v > img.max_val) throw ImageIoError(path + ": sample out of range");
      img.data[static_cast<std::size_t>(c) * d + pix] = v * inv;
    }
  return img;
}

void save_pnm(const Image& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ImageIoError(path + ": cannot open for writing");

  const bool ascii =
      img.format == Image::Format::PgmAscii || img.format == Image::Format::PpmAscii;
  const char* magic = nullptr;
  switch (img.format) {
    case Image::Format::PgmAscii: magic = "P2"; break;
    case Image::Format::PgmBinary: magic = "P5"; break;
    case Image::Format::PpmAscii: magic = "P3"; break;
    case Image::Format::PpmBinary: magic = "P6"; break;
    default: throw ImageIoError(path + ": format is not PNM");
  }
  out << magic << '\n' << img.width << ' ' << img.height << '\n' << img.max_val << '\n';

  const std::size_t d = img.pixel_count();
  auto quantize = [&](std::size_t pix, int c) {
    const double v = std::clamp(img.data[static_cast<std::size_t>(c) * d + pix], 0.0, 1.0);
    return static_cast<int>(std::lround(v * img.max_val));
  };

  if (ascii) {
    for (std::size_t pix = 0; pix < d; ++pix) {
      for (int c = 0; c < img.channels; ++c) {
        out << quantize(pix, c);
        out << ((c + 1 == img.channels) ? '\n' : ' ');
      }
    }
  } else {
    const int bytes = img.max_val > 255 ? 2 : 1;
    std::vector<unsigned char> raw;
    raw.reserve(d * img.channels * bytes);
    for (std::size_t pix = 0; pix < d; ++pix)
      for (int c = 0; c < img.channels; ++c) {
        const int v = quantize(pix, c);
        if (bytes == 2) raw.push_back(static_cast<unsigned char>(v >> 8));
        raw.push_back(static_cast<unsigned char>(v & 0xff));
      }
    out.write(reinterpret_cast<const char*>(raw.data()),
              static_cast<std::streamsize>(raw.size()));
  }
  if (!out) throw ImageIoError(path + ": write failed");
}

#ifdef PDBA_ENABLE_PNG

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};

Image load_png(const std::string& path) {
  std::unique_ptr<std::FILE, FileCloser> fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw ImageIoError(path + ": cannot open");

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw ImageIoError(path + ": libpng init failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw ImageIoError(path + ": png decode failed");
  }
  png_init_io(png, fp.get());
  png_read_info(png, info);

  // Normalize to 8-bit gray or RGB without alpha.
  png_set_expand(png);
  png_set_strip_16(png);
  png_set_strip_alpha(png);
  if (png_get_color_type(png, info) == PNG_COLOR_TYPE_PALETTE)
    png_set_palette_to_rgb(png);
  png_read_update_info(png, info);

  Image img;
  img.format = Image::Format::Png;
  img.width = static_cast<int>(png_get_image_width(png, info));
  img.height = static_cast<int>(png_get_image_height(png, info));
  const int color = png_get_color_type(png, info);
  img.channels = color == PNG_COLOR_TYPE_GRAY ? 1 : 3;
  img.max_val = 255;

  const std::size_t d = img.pixel_count();
  const std::size_t stride = png_get_rowbytes(png, info);
  std::vector<unsigned char> row(stride);
  img.data.assign(d * img.channels, 0.0);
  for (int r = 0; r < img.height; ++r) {
    png_read_row(png, row.data(), nullptr);
    for (int col = 0; col < img.width; ++col)
      for (int c = 0; c < img.channels; ++c)
        img.data[static_cast<std::size_t>(c) * d + static_cast<std::size_t>(r) * img.width + col] =
            row[col * img.channels + c] / 255.0;
  }
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return img;
}

void save_png(const Image& img, const std::string& path) {
  std::unique_ptr<std::FILE, FileCloser> fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw ImageIoError(path + ": cannot open for writing");

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    throw ImageIoError(path + ": libpng init failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw ImageIoError(path + ": png encode failed");
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, img.width, img.height, 8,
               img.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);

  const std::size_t d = img.pixel_count();
  std::vector<unsigned char> row(static_cast<std::size_t>(img.width) * img.channels);
  for (int r = 0; r < img.height; ++r) {
    for (int col = 0; col < img.width; ++col)
      for (int c = 0; c < img.channels; ++c) {
        const double v = std::clamp(
            img.data[static_cast<std::size_t>(c) * d + static_cast<std::size_t>(r) * img.width + col],
            0.0, 1.0);
        row[col * img.channels + c] = static_cast<unsigned char>(std::lround(v * 255.0));
      }
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

#endif  // PDBA_ENABLE_PNG

bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         std::equal(suffix.rbegin(), suffix.rend(), s.rbegin(), [](char a, char b) {
           return std::tolower(static_cast<unsigned char>(a)) ==
                  std::tolower(static_cast<unsigned char>(b));
         });
}

}  // namespace

Image load_image(const std::string& path) {
  if (has_suffix(path, ".png")) {
#ifdef PDBA_ENABLE_PNG
    return load_png(path);
#else
    throw ImageIoError(path + ": PNG support not built in (rebuild with PDBA_ENABLE_PNG)");
#endif
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageIoError(path + ": cannot open");
  std::string magic;
  in >> magic;
  return load_pnm(in, path, magic);
}

void save_image(const Image& img, const std::string& path) {
  if (img.data.size() != img.size())
    throw ImageIoError(path + ": image buffer does not match its dimensions");
  if (img.format == Image::Format::Png) {
#ifdef PDBA_ENABLE_PNG
    save_png(img, path);
    return;
#else
    throw ImageIoError(path + ": PNG support not built in (rebuild with PDBA_ENABLE_PNG)");
#endif
  }
  save_pnm(img, path);
}

Image synthetic_image(int height, int width) {
  Image img;
  img.height = height;
  img.width = width;
  img.channels = 3;
  img.max_val = 255;
  img.format = Image::Format::PpmBinary;
  const std::size_t d = img.pixel_count();
  img.data.assign(d * 3, 0.0);

  auto set = [&](int r, int c, double red, double green, double blue) {
    const std::size_t pix = static_cast<std::size_t>(r) * width + c;
    img.data[pix] = red;
    img.data[d + pix] = green;
    img.data[2 * d + pix] = blue;
  };

  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      // Background: smooth ramps, different slope per channel.
      const double u = width > 1 ? static_cast<double>(c) / (width - 1) : 0.0;
      const double v = height > 1 ? static_cast<double>(r) / (height - 1) : 0.0;
      double red = 0.15 + 0.55 * u;
      double green = 0.20 + 0.45 * v;
      double blue = 0.30 + 0.30 * (1.0 - u);

      // Flat rectangle, upper left.
      if (r >= height / 8 && r < height * 3 / 8 && c >= width / 10 && c < width * 2 / 5) {
        red = 0.85;
        green = 0.25;
        blue = 0.20;
      }
      // Flat rectangle, lower right.
      if (r >= height * 5 / 8 && r < height * 7 / 8 && c >= width / 2 &&
          c < width * 9 / 10) {
        red = 0.15;
        green = 0.35;
        blue = 0.80;
      }
      // Disk in the middle.
      const double dr = r - 0.5 * height;
      const double dc = c - 0.55 * width;
      const double rad = 0.18 * std::min(height, width);
      if (dr * dr + dc * dc <= rad * rad) {
        red = 0.95;
        green = 0.85;
        blue = 0.25;
      }
      set(r, c, red, green, blue);
    }
  }
  return img;
}

}  // namespace pdba
