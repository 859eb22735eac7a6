#include "pacpose/netpbm.hpp"

#include <cctype>
#include <fstream>
#include <string>

#include "pacpose/error.hpp"

namespace pac {

namespace {

constexpr int kMaxDim = 1 << 16;

// Byte-counting reader so parse errors can name exact offsets.
class PnmReader {
 public:
  explicit PnmReader(const std::filesystem::path& path)
      : path_(path.string()), in_(path, std::ios::binary) {
    if (!in_) {
      throw ParseError(path_, 0, "cannot open file");
    }
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(path_, offset_, what);
  }

  int get() {
    const int c = in_.get();
    if (c != EOF) ++offset_;
    return c;
  }

  // Whitespace (and '#' comments to end of line) between header tokens.
  void skip_separators() {
    while (true) {
      int c = in_.peek();
      if (c == '#') {
        while (c != EOF && c != '\n') c = get();
      } else if (c != EOF && std::isspace(c)) {
        get();
      } else {
        return;
      }
    }
  }

  long parse_int(const char* what) {
    skip_separators();
    std::string token;
    while (std::isdigit(in_.peek())) token.push_back(static_cast<char>(get()));
    if (token.empty()) fail(std::string("expected ") + what);
    return std::stol(token);
  }

  void expect_magic(const char* magic) {
    for (const char* p = magic; *p; ++p) {
      if (get() != *p) fail(std::string("bad magic, expected ") + magic);
    }
  }

  // Header: "<magic> <width> <height> <maxval>" then exactly one whitespace
  // byte before the raster.
  void read_header(const char* magic, long expected_maxval, int& width, int& height) {
    expect_magic(magic);
    const long w = parse_int("width");
    const long h = parse_int("height");
    const long maxval = parse_int("maxval");
    if (w < 1 || h < 1 || w > kMaxDim || h > kMaxDim) fail("unreasonable dimensions");
    if (maxval != expected_maxval) {
      fail("unsupported maxval " + std::to_string(maxval));
    }
    const int c = get();
    if (c == EOF || !std::isspace(c)) fail("missing raster separator");
    width = static_cast<int>(w);
    height = static_cast<int>(h);
  }

  void read_raster(std::uint8_t* dst, std::size_t n) {
    in_.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(n));
    const std::size_t got = static_cast<std::size_t>(in_.gcount());
    offset_ += got;
    if (got != n) fail("truncated raster");
  }

 private:
  std::string path_;
  std::ifstream in_;
  std::size_t offset_ = 0;
};

void write_header(std::ofstream& out, const char* magic, int w, int h, int maxval) {
  out << magic << "\n" << w << " " << h << "\n" << maxval << "\n";
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ParseError(path.string(), 0, "cannot open file for writing");
  }
  return out;
}

}  // namespace

GrayImage8 read_pgm8(const std::filesystem::path& path) {
  PnmReader r(path);
  GrayImage8 img;
  r.read_header("P5", 255, img.width, img.height);
  img.pixels.resize(static_cast<std::size_t>(img.width) * img.height);
  r.read_raster(img.pixels.data(), img.pixels.size());
  return img;
}

GrayImage16 read_pgm16(const std::filesystem::path& path) {
  PnmReader r(path);
  GrayImage16 img;
  r.read_header("P5", 65535, img.width, img.height);
  const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
  std::vector<std::uint8_t> raw(n * 2);
  r.read_raster(raw.data(), raw.size());
  img.pixels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    img.pixels[i] = static_cast<std::uint16_t>((raw[2 * i] << 8) | raw[2 * i + 1]);
  }
  return img;
}

RgbImage8 read_ppm8(const std::filesystem::path& path) {
  PnmReader r(path);
  RgbImage8 img;
  r.read_header("P6", 255, img.width, img.height);
  img.pixels.resize(static_cast<std::size_t>(img.width) * img.height * 3);
  r.read_raster(img.pixels.data(), img.pixels.size());
  return img;
}

void write_pgm8(const std::filesystem::path& path, const GrayImage8& image) {
  std::ofstream out = open_for_write(path);
  write_header(out, "P5", image.width, image.height, 255);
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size()));
}

void write_pgm16(const std::filesystem::path& path, const GrayImage16& image) {
  std::ofstream out = open_for_write(path);
  write_header(out, "P5", image.width, image.height, 65535);
  std::vector<std::uint8_t> raw(image.pixels.size() * 2);
  for (std::size_t i = 0; i < image.pixels.size(); ++i) {
    raw[2 * i] = static_cast<std::uint8_t>(image.pixels[i] >> 8);
    raw[2 * i + 1] = static_cast<std::uint8_t>(image.pixels[i] & 0xff);
  }
  out.write(reinterpret_cast<const char*>(raw.data()),
            static_cast<std::streamsize>(raw.size()));
}

void write_ppm8(const std::filesystem::path& path, const RgbImage8& image) {
  std::ofstream out = open_for_write(path);
  write_header(out, "P6", image.width, image.height, 255);
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size()));
}

}  // namespace pac
