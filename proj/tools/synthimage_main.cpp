#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pdba/image.hpp"

// Writes the deterministic synthetic test scene so the inpainting CLI can be
// exercised without external data.

int main(int argc, char** argv) {
  CLI::App app{"Generate the synthetic RGB test image"};
  int width = 64, height = 64;
  std::string out = "synthetic.ppm";
  bool ascii = false;
  app.add_option("--width", width, "Image width")->check(CLI::PositiveNumber);
  app.add_option("--height", height, "Image height")->check(CLI::PositiveNumber);
  app.add_option("--out", out, "Output path (.ppm)");
  app.add_flag("--ascii", ascii, "Write ASCII (P3) instead of binary (P6)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    pdba::Image img = pdba::synthetic_image(height, width);
    if (ascii) img.format = pdba::Image::Format::PpmAscii;
    pdba::save_image(img, out);
    std::cout << "wrote " << out << " (" << width << "x" << height << ")\n";
    return 0;
  } catch (const pdba::ImageIoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 3;
  }
}
