#pragma once

#include <string>

#include "floorplan/raster.hpp"

namespace floorplan::raster {

// PGM (P5, maxval 255) is the bit-exact fixture format; PNG covers real
// scans. read_image/write_image dispatch on the file extension.
GrayRaster read_pgm(const std::string& path);
void write_pgm(const std::string& path, const GrayRaster& img);
GrayRaster read_png(const std::string& path);
void write_png(const std::string& path, const GrayRaster& img);
GrayRaster read_image(const std::string& path);
void write_image(const std::string& path, const GrayRaster& img);

// ink (foreground) renders black, background white
GrayRaster to_gray(const BinaryRaster& r);

}  // namespace floorplan::raster
