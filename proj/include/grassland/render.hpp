#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grassland/world.hpp"

namespace grassland {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  bool operator==(const Rgb&) const = default;
};

// Fixed rendering palette. Overlay colors (path stroke, position mark, agent
// fill) never appear in a clean frame, which is how parse_frame tells an
// annotated frame from a plain one. The flag pole is near-black on purpose:
// pure black is reserved for the position mark.
namespace palette {
inline constexpr Rgb kGrass{0x4C, 0xAF, 0x50};
inline constexpr Rgb kWater{0x21, 0x96, 0xF3};
inline constexpr Rgb kLava{0xF4, 0x43, 0x36};
inline constexpr Rgb kWallBody{0x8D, 0x6E, 0x63};
inline constexpr Rgb kWallBorder{0xFF, 0xEB, 0x3B};
inline constexpr Rgb kStartFlag{0xFF, 0xFF, 0xFF};
inline constexpr Rgb kDestFlag{0xB7, 0x1C, 0x1C};
inline constexpr Rgb kFlagPole{0x21, 0x21, 0x21};
inline constexpr Rgb kPathStroke{0xD5, 0x00, 0x00};
inline constexpr Rgb kPositionMark{0x00, 0x00, 0x00};
inline constexpr Rgb kAgent{0xFF, 0x98, 0x00};
}  // namespace palette

struct Frame {
  int width_px = 0;
  int height_px = 0;
  int cell_px = 0;
  int tick = 0;
  std::vector<Rgb> pixels;  // row-major, width_px * height_px

  Rgb at(int x, int y) const {
    return pixels[static_cast<std::size_t>(y) * width_px + x];
  }
  void set(int x, int y, Rgb c) {
    if (x >= 0 && x < width_px && y >= 0 && y < height_px) {
      pixels[static_cast<std::size_t>(y) * width_px + x] = c;
    }
  }

  bool operator==(const Frame&) const = default;
};

// Draft annotations drawn on top of a frame. PathLine strokes a 3px red
// polyline through the listed cell centers; PositionMark outlines the cell in
// black and drops the agent disc on it.
struct Overlay {
  enum class Kind : std::uint8_t { PathLine, PositionMark };
  Kind kind = Kind::PositionMark;
  std::vector<Coord> points;

  static Overlay path_line(std::vector<Coord> cells) {
    return Overlay{Kind::PathLine, std::move(cells)};
  }
  static Overlay position_mark(Coord cell) { return Overlay{Kind::PositionMark, {cell}}; }
};

// Rasterizes the scenario at tick t, then draws overlays in list order.
// Identical inputs produce identical pixels. Throws ErrorKind::Horizon for t
// outside the lava trajectory and ErrorKind::Contract for overlay coordinates
// outside the grid.
Frame render_frame(const DynamicScenario& scenario, int t,
                   const std::vector<Overlay>& overlays = {}, int cell_px = 32);

// Frames for ticks 0..frames-1 (one per second). overlays_per_tick[t], when
// present, is drawn on frame t. frames > horizon+1 is a horizon error.
std::vector<Frame> render_video(const DynamicScenario& scenario, int frames = 6,
                                const std::vector<std::vector<Overlay>>& overlays_per_tick = {},
                                int cell_px = 32);

// Logical content recovered from a clean frame.
struct ParsedFrame {
  int height = 0;
  int width = 0;
  std::vector<Cell> cells;  // row-major
  Coord start;
  Coord dest;
  CoordSet lava;

  bool operator==(const ParsedFrame&) const = default;
};

// Inverse of render_frame on frames rendered without overlays: recovers cell
// kinds, the lava set, and the flag cells by scanning each cell's pixels.
// Any pixel outside the clean palette (overlay ink included) is a parse error
// naming the offending cell.
ParsedFrame parse_frame(const Frame& frame);

// Minimal standard-compliant encoders. PNG output is byte-stable for
// identical frames; the GIF runs at one frame per second and loops.
std::vector<std::uint8_t> encode_png(const Frame& frame);
std::vector<std::uint8_t> encode_gif(const std::vector<Frame>& frames);

// "frame_0007.png" — the on-disk naming for tick 7.
std::string frame_filename(int tick);

}  // namespace grassland
