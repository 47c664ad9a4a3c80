#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "grassland/error.hpp"
#include "grassland/render.hpp"

namespace grassland {

namespace {

// Every color render_frame can emit, clean or overlaid, padded to a 16-entry
// global color table.
constexpr std::array<Rgb, 16> kColorTable = {{
    palette::kGrass, palette::kWater, palette::kLava, palette::kWallBody,
    palette::kWallBorder, palette::kStartFlag, palette::kDestFlag, palette::kFlagPole,
    palette::kPathStroke, palette::kPositionMark, palette::kAgent,
    {0, 0, 0}, {0, 0, 0}, {0, 0, 0}, {0, 0, 0}, {0, 0, 0},
}};

constexpr int kMinCodeSize = 4;  // 16-color table

std::uint8_t index_of(Rgb c) {
  for (std::size_t i = 0; i < kColorTable.size(); ++i) {
    if (kColorTable[i] == c) return static_cast<std::uint8_t>(i);
  }
  fail(ErrorKind::Contract, "encode_gif: pixel color is not in the render palette");
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

// LSB-first bit packer feeding 255-byte data sub-blocks.
class BitPacker {
 public:
  void put(std::uint32_t code, int bits) {
    acc_ |= static_cast<std::uint64_t>(code) << used_;
    used_ += bits;
    while (used_ >= 8) {
      bytes_.push_back(static_cast<std::uint8_t>(acc_ & 0xFF));
      acc_ >>= 8;
      used_ -= 8;
    }
  }

  void flush_to(std::vector<std::uint8_t>& out) {
    if (used_ > 0) {
      bytes_.push_back(static_cast<std::uint8_t>(acc_ & 0xFF));
      acc_ = 0;
      used_ = 0;
    }
    std::size_t at = 0;
    while (at < bytes_.size()) {
      const std::size_t n = std::min<std::size_t>(255, bytes_.size() - at);
      out.push_back(static_cast<std::uint8_t>(n));
      out.insert(out.end(), bytes_.begin() + at, bytes_.begin() + at + n);
      at += n;
    }
    out.push_back(0);  // block terminator
  }

 private:
  std::vector<std::uint8_t> bytes_;
  std::uint64_t acc_ = 0;
  int used_ = 0;
};

// Standard GIF LZW over palette indices.
void lzw_encode(const std::vector<std::uint8_t>& indices, std::vector<std::uint8_t>& out) {
  const std::uint32_t clear_code = 1u << kMinCodeSize;
  const std::uint32_t end_code = clear_code + 1;

  std::unordered_map<std::uint64_t, std::uint32_t> table;
  std::uint32_t next_code = end_code + 1;
  int code_bits = kMinCodeSize + 1;
  auto reset_table = [&] {
    table.clear();
    next_code = end_code + 1;
    code_bits = kMinCodeSize + 1;
  };

  BitPacker packer;
  packer.put(clear_code, code_bits);
  reset_table();

  std::uint32_t prefix = indices.front();
  for (std::size_t i = 1; i < indices.size(); ++i) {
    const std::uint8_t k = indices[i];
    const std::uint64_t key = (static_cast<std::uint64_t>(prefix) << 8) | k;
    auto it = table.find(key);
    if (it != table.end()) {
      prefix = it->second;
      continue;
    }
    packer.put(prefix, code_bits);
    if (next_code == 4096) {
      packer.put(clear_code, code_bits);
      reset_table();
    } else {
      table.emplace(key, next_code);
      ++next_code;
      // The decoder's table adds lag one code behind ours, so the width grows
      // only once next_code has passed the power of two, not when it hits it.
      if (next_code == (1u << code_bits) + 1 && code_bits < 12) ++code_bits;
    }
    prefix = k;
  }
  packer.put(prefix, code_bits);
  packer.put(end_code, code_bits);
  packer.flush_to(out);
}

}  // namespace

std::vector<std::uint8_t> encode_gif(const std::vector<Frame>& frames) {
  if (frames.empty()) fail(ErrorKind::Contract, "encode_gif: no frames");
  const int w = frames.front().width_px;
  const int h = frames.front().height_px;
  for (const Frame& f : frames) {
    if (f.width_px != w || f.height_px != h) {
      fail(ErrorKind::Contract, "encode_gif: frames differ in size");
    }
  }

  std::vector<std::uint8_t> out;
  out.insert(out.end(), {'G', 'I', 'F', '8', '9', 'a'});
  put_u16(out, static_cast<std::uint16_t>(w));
  put_u16(out, static_cast<std::uint16_t>(h));
  out.push_back(0xF3);  // global table, 8-bit color resolution, 16 entries
  out.push_back(0);     // background color index
  out.push_back(0);     // pixel aspect ratio
  for (Rgb c : kColorTable) {
    out.push_back(c.r);
    out.push_back(c.g);
    out.push_back(c.b);
  }

  // Netscape looping extension: repeat forever.
  out.insert(out.end(), {0x21, 0xFF, 0x0B});
  const char* app = "NETSCAPE2.0";
  out.insert(out.end(), app, app + 11);
  out.insert(out.end(), {0x03, 0x01, 0x00, 0x00, 0x00});

  for (const Frame& frame : frames) {
    // Graphic control: 1.00s delay, no transparency, no disposal.
    out.insert(out.end(), {0x21, 0xF9, 0x04, 0x00});
    put_u16(out, 100);
    out.insert(out.end(), {0x00, 0x00});

    out.push_back(0x2C);  // image descriptor
    put_u16(out, 0);
    put_u16(out, 0);
    put_u16(out, static_cast<std::uint16_t>(w));
    put_u16(out, static_cast<std::uint16_t>(h));
    out.push_back(0x00);  // no local table, not interlaced

    std::vector<std::uint8_t> indices;
    indices.reserve(frame.pixels.size());
    for (Rgb px : frame.pixels) indices.push_back(index_of(px));
    out.push_back(kMinCodeSize);
    lzw_encode(indices, out);
  }
  out.push_back(0x3B);  // trailer
  return out;
}

}  // namespace grassland
