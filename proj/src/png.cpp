#include <zlib.h>

#include <cstdint>
#include <vector>

#include "grassland/error.hpp"
#include "grassland/render.hpp"

namespace grassland {

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_chunk(std::vector<std::uint8_t>& out, const char type[4],
               const std::vector<std::uint8_t>& payload) {
  put_u32(out, static_cast<std::uint32_t>(payload.size()));
  const std::size_t type_at = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), payload.begin(), payload.end());
  unsigned long crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, out.data() + type_at, static_cast<uInt>(4 + payload.size()));
  put_u32(out, static_cast<std::uint32_t>(crc));
}

}  // namespace

std::vector<std::uint8_t> encode_png(const Frame& frame) {
  if (frame.width_px <= 0 || frame.height_px <= 0 ||
      frame.pixels.size() != static_cast<std::size_t>(frame.width_px) * frame.height_px) {
    fail(ErrorKind::Contract, "encode_png: malformed frame");
  }

  // Raw image data: each scanline prefixed with filter byte 0 (None).
  std::vector<std::uint8_t> raw;
  raw.reserve(static_cast<std::size_t>(frame.height_px) * (1 + 3 * frame.width_px));
  for (int y = 0; y < frame.height_px; ++y) {
    raw.push_back(0);
    for (int x = 0; x < frame.width_px; ++x) {
      const Rgb px = frame.at(x, y);
      raw.push_back(px.r);
      raw.push_back(px.g);
      raw.push_back(px.b);
    }
  }

  uLongf bound = compressBound(static_cast<uLong>(raw.size()));
  std::vector<std::uint8_t> compressed(bound);
  if (compress2(compressed.data(), &bound, raw.data(), static_cast<uLong>(raw.size()),
                Z_DEFAULT_COMPRESSION) != Z_OK) {
    fail(ErrorKind::Io, "encode_png: deflate failed");
  }
  compressed.resize(bound);

  std::vector<std::uint8_t> out{0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
  std::vector<std::uint8_t> ihdr;
  put_u32(ihdr, static_cast<std::uint32_t>(frame.width_px));
  put_u32(ihdr, static_cast<std::uint32_t>(frame.height_px));
  ihdr.push_back(8);   // bit depth
  ihdr.push_back(2);   // color type: truecolor RGB
  ihdr.push_back(0);   // compression
  ihdr.push_back(0);   // filter
  ihdr.push_back(0);   // no interlace
  put_chunk(out, "IHDR", ihdr);
  put_chunk(out, "IDAT", compressed);
  put_chunk(out, "IEND", {});
  return out;
}

}  // namespace grassland
