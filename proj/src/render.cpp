#include "grassland/render.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>

namespace grassland {

namespace {

using namespace palette;

struct CellBox {
  int x0 = 0;
  int y0 = 0;
  int size = 0;
};

CellBox box_of(Coord c, int cell_px) { return {c.col * cell_px, c.row * cell_px, cell_px}; }

void fill_rect(Frame& f, int x0, int y0, int w, int h, Rgb color) {
  for (int y = y0; y < y0 + h; ++y) {
    for (int x = x0; x < x0 + w; ++x) f.set(x, y, color);
  }
}

// Flag glyph: a near-black pole with a right-pointing triangular cloth.
// Geometry is integer math off cell_px so every size renders the same way
// and even 8px cells keep several cloth pixels for parse-back.
void draw_flag(Frame& f, CellBox b, Rgb cloth) {
  const int cp = b.size;
  const int pole_w = std::max(2, cp / 16);
  const int pole_x = b.x0 + cp * 5 / 16;
  const int pole_y0 = b.y0 + cp / 8;
  const int pole_y1 = b.y0 + cp - cp / 8;
  fill_rect(f, pole_x, pole_y0, pole_w, pole_y1 - pole_y0, kFlagPole);

  const int cloth_h = std::max(3, cp * 3 / 8);
  const int cloth_w = std::max(3, cp * 7 / 16);
  for (int k = 0; k < cloth_h; ++k) {
    const int w = cloth_w - k * cloth_w / cloth_h;
    fill_rect(f, pole_x + pole_w, pole_y0 + k, w, 1, cloth);
  }
}

void draw_wall(Frame& f, CellBox b) {
  fill_rect(f, b.x0, b.y0, b.size, b.size, kWallBorder);
  fill_rect(f, b.x0 + 2, b.y0 + 2, b.size - 4, b.size - 4, kWallBody);
}

void draw_mark(Frame& f, CellBox b) {
  // 2px square outline along the cell boundary, then the agent disc.
  fill_rect(f, b.x0, b.y0, b.size, 2, kPositionMark);
  fill_rect(f, b.x0, b.y0 + b.size - 2, b.size, 2, kPositionMark);
  fill_rect(f, b.x0, b.y0, 2, b.size, kPositionMark);
  fill_rect(f, b.x0 + b.size - 2, b.y0, 2, b.size, kPositionMark);

  const int cx = b.x0 + b.size / 2;
  const int cy = b.y0 + b.size / 2;
  const int radius = std::max(2, b.size * 5 / 16);
  for (int y = cy - radius; y <= cy + radius; ++y) {
    for (int x = cx - radius; x <= cx + radius; ++x) {
      const int dx = x - cx;
      const int dy = y - cy;
      if (dx * dx + dy * dy <= radius * radius) f.set(x, y, kAgent);
    }
  }
}

void draw_segment(Frame& f, int x0, int y0, int x1, int y1) {
  // Bresenham with a 3x3 brush: a 3px-wide stroke.
  const int dx = std::abs(x1 - x0);
  const int dy = -std::abs(y1 - y0);
  const int sx = x0 < x1 ? 1 : -1;
  const int sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  int x = x0;
  int y = y0;
  while (true) {
    for (int oy = -1; oy <= 1; ++oy) {
      for (int ox = -1; ox <= 1; ++ox) f.set(x + ox, y + oy, kPathStroke);
    }
    if (x == x1 && y == y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y += sy;
    }
  }
}

void require_in_grid(const GridWorld& world, const std::vector<Coord>& points) {
  for (Coord c : points) {
    if (!world.in_bounds(c)) {
      fail(ErrorKind::Contract, "overlay coordinate " + to_string(c) + " outside grid");
    }
  }
}

bool is_one_of(Rgb c, std::initializer_list<Rgb> set) {
  for (Rgb s : set) {
    if (c == s) return true;
  }
  return false;
}

}  // namespace

Frame render_frame(const DynamicScenario& scenario, int t, const std::vector<Overlay>& overlays,
                   int cell_px) {
  if (cell_px < 8) fail(ErrorKind::Contract, "cell_px must be at least 8");
  const GridWorld& world = scenario.world;
  const CoordSet& lava = lava_at(scenario, t);  // throws on horizon breach

  Frame f;
  f.cell_px = cell_px;
  f.tick = t;
  f.width_px = world.width * cell_px;
  f.height_px = world.height * cell_px;
  f.pixels.assign(static_cast<std::size_t>(f.width_px) * f.height_px, kGrass);

  for (int row = 0; row < world.height; ++row) {
    for (int col = 0; col < world.width; ++col) {
      const Coord cell{row, col};
      const CellBox b = box_of(cell, cell_px);
      switch (world.at(cell)) {
        case Cell::Grass: break;  // already grass
        case Cell::Water: fill_rect(f, b.x0, b.y0, b.size, b.size, kWater); break;
        case Cell::Wall: draw_wall(f, b); break;
      }
      if (contains(lava, cell)) fill_rect(f, b.x0, b.y0, b.size, b.size, kLava);
    }
  }
  draw_flag(f, box_of(world.start, cell_px), kStartFlag);
  draw_flag(f, box_of(world.dest, cell_px), kDestFlag);

  for (const Overlay& overlay : overlays) {
    require_in_grid(world, overlay.points);
    if (overlay.kind == Overlay::Kind::PathLine) {
      for (std::size_t i = 0; i + 1 < overlay.points.size(); ++i) {
        const CellBox a = box_of(overlay.points[i], cell_px);
        const CellBox b = box_of(overlay.points[i + 1], cell_px);
        draw_segment(f, a.x0 + cell_px / 2, a.y0 + cell_px / 2, b.x0 + cell_px / 2,
                     b.y0 + cell_px / 2);
      }
      if (overlay.points.size() == 1) {
        const CellBox a = box_of(overlay.points[0], cell_px);
        draw_segment(f, a.x0 + cell_px / 2, a.y0 + cell_px / 2, a.x0 + cell_px / 2,
                     a.y0 + cell_px / 2);
      }
    } else {
      if (overlay.points.empty()) fail(ErrorKind::Contract, "position mark without a cell");
      draw_mark(f, box_of(overlay.points[0], cell_px));
    }
  }
  return f;
}

std::vector<Frame> render_video(const DynamicScenario& scenario, int frames,
                                const std::vector<std::vector<Overlay>>& overlays_per_tick,
                                int cell_px) {
  if (frames < 1 || frames > scenario.horizon() + 1) {
    fail(ErrorKind::Horizon, "requested " + std::to_string(frames) + " frames but ticks run 0.." +
                                 std::to_string(scenario.horizon()));
  }
  std::vector<Frame> out;
  out.reserve(static_cast<std::size_t>(frames));
  for (int t = 0; t < frames; ++t) {
    const std::vector<Overlay>* overlays = nullptr;
    if (static_cast<std::size_t>(t) < overlays_per_tick.size()) {
      overlays = &overlays_per_tick[static_cast<std::size_t>(t)];
    }
    out.push_back(render_frame(scenario, t, overlays ? *overlays : std::vector<Overlay>{},
                               cell_px));
  }
  return out;
}

ParsedFrame parse_frame(const Frame& frame) {
  if (frame.cell_px < 8 || frame.width_px % frame.cell_px != 0 ||
      frame.height_px % frame.cell_px != 0) {
    fail(ErrorKind::Parse, "frame dimensions are not a multiple of cell_px");
  }
  ParsedFrame out;
  out.width = frame.width_px / frame.cell_px;
  out.height = frame.height_px / frame.cell_px;
  out.cells.assign(static_cast<std::size_t>(out.width) * out.height, Cell::Grass);

  std::vector<Coord> starts, dests, lava;
  for (int row = 0; row < out.height; ++row) {
    for (int col = 0; col < out.width; ++col) {
      const Coord cell{row, col};
      bool wall = false, water = false, has_lava = false, has_start = false, has_dest = false;
      for (int y = row * frame.cell_px; y < (row + 1) * frame.cell_px; ++y) {
        for (int x = col * frame.cell_px; x < (col + 1) * frame.cell_px; ++x) {
          const Rgb px = frame.at(x, y);
          if (!is_one_of(px, {kGrass, kWater, kLava, kWallBody, kWallBorder, kStartFlag,
                              kDestFlag, kFlagPole})) {
            char msg[96];
            std::snprintf(msg, sizeof(msg), "cell (%d,%d): pixel #%02X%02X%02X is not clean map ink",
                          row, col, px.r, px.g, px.b);
            fail(ErrorKind::Parse, msg);
          }
          wall |= px == kWallBody;
          water |= px == kWater;
          has_lava |= px == kLava;
          has_start |= px == kStartFlag;
          has_dest |= px == kDestFlag;
        }
      }
      Cell kind = Cell::Grass;
      if (wall) kind = Cell::Wall;
      else if (water) kind = Cell::Water;
      out.cells[static_cast<std::size_t>(row) * out.width + col] = kind;
      if (has_lava) lava.push_back(cell);
      if (has_start) starts.push_back(cell);
      if (has_dest) dests.push_back(cell);
    }
  }
  if (starts.size() != 1 || dests.size() != 1) {
    fail(ErrorKind::Parse, "expected exactly one start and one destination flag, found " +
                               std::to_string(starts.size()) + "/" + std::to_string(dests.size()));
  }
  out.start = starts.front();
  out.dest = dests.front();
  out.lava = make_coord_set(std::move(lava));
  return out;
}

std::string frame_filename(int tick) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "frame_%04d.png", tick);
  return buf;
}

}  // namespace grassland
