#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace pac {

// Binary netpbm images. 16-bit samples are big-endian on disk per the format.
struct GrayImage8 {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;
};

struct GrayImage16 {
  int width = 0;
  int height = 0;
  std::vector<std::uint16_t> pixels;
};

struct RgbImage8 {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // interleaved, 3 per pixel
};

// Readers throw ParseError with the file path and byte offset on malformed
// magic, headers, or truncated rasters.
GrayImage8 read_pgm8(const std::filesystem::path& path);
GrayImage16 read_pgm16(const std::filesystem::path& path);
RgbImage8 read_ppm8(const std::filesystem::path& path);

void write_pgm8(const std::filesystem::path& path, const GrayImage8& image);
void write_pgm16(const std::filesystem::path& path, const GrayImage16& image);
void write_ppm8(const std::filesystem::path& path, const RgbImage8& image);

}  // namespace pac
