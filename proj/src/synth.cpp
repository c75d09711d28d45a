#include "shapecat/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <string>

#include "shapecat/error.hpp"
#include "shapecat/image_io.hpp"
#include "shapecat/rng.hpp"
#include "shapecat/taxonomy.hpp"

namespace fs = std::filesystem;

namespace shapecat {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Drawing surface; x is the column, y is the row, pixels test their integer
// center against each primitive.
struct Canvas {
  BinaryImage img;

  explicit Canvas(int size) {
    img.width = size;
    img.height = size;
    img.pixels.assign(static_cast<std::size_t>(size) * size, 0);
  }

  void plot(int x, int y) {
    if (x < 0 || y < 0 || x >= img.width || y >= img.height) return;
    img.at(y, x) = 1;
  }

  void ellipse(double cx, double cy, double rx, double ry, double angle = 0.0) {
    const double reach = std::max(rx, ry) + 1.0;
    const double cs = std::cos(angle), sn = std::sin(angle);
    const int x0 = static_cast<int>(std::floor(cx - reach));
    const int x1 = static_cast<int>(std::ceil(cx + reach));
    const int y0 = static_cast<int>(std::floor(cy - reach));
    const int y1 = static_cast<int>(std::ceil(cy + reach));
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        const double dx = x - cx, dy = y - cy;
        const double u = dx * cs + dy * sn;
        const double w = -dx * sn + dy * cs;
        if ((u / rx) * (u / rx) + (w / ry) * (w / ry) <= 1.0) plot(x, y);
      }
    }
  }

  void disc(double cx, double cy, double r) { ellipse(cx, cy, r, r); }

  // Thick segment: all pixels within `r` of the segment.
  void capsule(double ax, double ay, double bx, double by, double r) {
    const double x0 = std::min(ax, bx) - r - 1, x1 = std::max(ax, bx) + r + 1;
    const double y0 = std::min(ay, by) - r - 1, y1 = std::max(ay, by) + r + 1;
    const double vx = bx - ax, vy = by - ay;
    const double len_sq = vx * vx + vy * vy;
    for (int y = static_cast<int>(y0); y <= static_cast<int>(std::ceil(y1)); ++y) {
      for (int x = static_cast<int>(x0); x <= static_cast<int>(std::ceil(x1)); ++x) {
        double t = len_sq > 0 ? ((x - ax) * vx + (y - ay) * vy) / len_sq : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        const double dx = x - (ax + t * vx), dy = y - (ay + t * vy);
        if (dx * dx + dy * dy <= r * r) plot(x, y);
      }
    }
  }

  // Radially perturbed disc; harmonics 2..5 scaled by `roughness`. A stretch
  // factor != 1 widens or narrows the blob horizontally.
  void blob(double cx, double cy, double radius, double roughness, Rng& rng,
            double stretch = 1.0) {
    double amp_cos[6], amp_sin[6];
    for (int k = 2; k <= 5; ++k) {
      amp_cos[k] = (rng.uniform01() * 2.0 - 1.0) / k;
      amp_sin[k] = (rng.uniform01() * 2.0 - 1.0) / k;
    }
    const double reach = radius * (1.0 + roughness) * std::max(1.0, stretch) + 1.0;
    const int x0 = static_cast<int>(std::floor(cx - reach));
    const int x1 = static_cast<int>(std::ceil(cx + reach));
    const int y0 = static_cast<int>(std::floor(cy - reach));
    const int y1 = static_cast<int>(std::ceil(cy + reach));
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        const double dx = (x - cx) / stretch, dy = y - cy;
        const double d = std::sqrt(dx * dx + dy * dy);
        const double theta = std::atan2(dy, dx);
        double bump = 0.0;
        for (int k = 2; k <= 5; ++k) {
          bump += amp_cos[k] * std::cos(k * theta) + amp_sin[k] * std::sin(k * theta);
        }
        if (d <= radius * (1.0 + roughness * bump)) plot(x, y);
      }
    }
  }
};

void ensure_foreground(BinaryImage& img, double cx, double cy) {
  for (std::uint8_t p : img.pixels) {
    if (p) return;
  }
  const int x = std::clamp(static_cast<int>(std::lround(cx)), 0, img.width - 1);
  const int y = std::clamp(static_cast<int>(std::lround(cy)), 0, img.height - 1);
  img.at(y, x) = 1;
}

void draw_stick_figure(Canvas& canvas, Rng& rng, double cx, double cy, double scale) {
  const double head_r = (5.0 + rng.uniform01() * 2.0) * scale;
  const double torso = (16.0 + rng.uniform01() * 6.0) * scale;
  const double limb = (12.0 + rng.uniform01() * 5.0) * scale;
  const double width = (1.6 + rng.uniform01() * 0.8) * scale;
  const double top_y = cy - torso * 0.7;

  canvas.disc(cx, top_y - head_r, head_r);
  canvas.capsule(cx, top_y, cx, top_y + torso, width);
  const double hip_y = top_y + torso;
  const double spread = 0.45 + rng.uniform01() * 0.25;
  canvas.capsule(cx, hip_y, cx - limb * spread, hip_y + limb, width);
  canvas.capsule(cx, hip_y, cx + limb * spread, hip_y + limb, width);
  const double shoulder_y = top_y + torso * 0.25;
  const double arm = limb * (0.7 + rng.uniform01() * 0.3);
  canvas.capsule(cx, shoulder_y, cx - arm * 0.8, shoulder_y + arm * 0.5, width * 0.9);
  canvas.capsule(cx, shoulder_y, cx + arm * 0.8, shoulder_y + arm * 0.5, width * 0.9);
}

}  // namespace

BinaryImage synth_silhouette(const ShapeSpec& spec, int size) {
  if (size < 8) fail(Err::DegenerateSpec, "canvas must be at least 8 pixels");
  Canvas canvas(size);
  double cx = size / 2.0, cy = size / 2.0;

  if (const auto* e = std::get_if<Ellipse>(&spec)) {
    if (e->rx <= 0.0 || e->ry <= 0.0) fail(Err::DegenerateSpec, "ellipse radii must be > 0");
    for (int y = 0; y < size; ++y) {
      for (int x = 0; x < size; ++x) {
        const double nx = (x - e->cx) / e->rx;
        const double ny = (y - e->cy) / e->ry;
        if (nx * nx + ny * ny <= 1.0) canvas.img.at(y, x) = 1;
      }
    }
    cx = e->cx;
    cy = e->cy;
  } else if (const auto* b = std::get_if<Blob>(&spec)) {
    if (b->roughness < 0.0) fail(Err::DegenerateSpec, "roughness must be >= 0");
    Rng rng(mix_seed(b->seed, 0xb10b));
    canvas.blob(cx, cy, size * 0.33, b->roughness, rng);
  } else {
    const auto& fig = std::get<StickFigure>(spec);
    Rng rng(mix_seed(fig.seed, 0x571c));
    draw_stick_figure(canvas, rng, cx, cy + size * 0.05, size / 64.0);
  }

  ensure_foreground(canvas.img, cx, cy);
  return canvas.img;
}

namespace {

// Body archetypes for the surrogate dataset. Every function draws around
// (cx, cy) at the given scale with per-sample jitter from rng.
enum class Archetype {
  Quadruped,
  LongNeck,
  LowLong,
  Bird,
  Turtle,
  Rodent,
  Fish,
  Stick,
  Tree,
  Flower,
  Rosette,
  Berry,
  Shell,
};

struct Recipe {
  std::string_view subcategory;
  Archetype archetype;
  double size_mul;   // overall footprint
  double aspect;     // body elongation tweak
  double appendage;  // legs / petals / trunk emphasis
};

constexpr Recipe kRecipes[] = {
    {"beaver", Archetype::Rodent, 1.00, 1.10, 1.05},
    {"cugar_body", Archetype::Quadruped, 1.05, 1.15, 1.00},
    {"crocodile", Archetype::LowLong, 1.10, 1.30, 0.55},
    {"dolphine", Archetype::Fish, 1.05, 1.10, 0.80},
    {"elephant", Archetype::Quadruped, 1.15, 0.95, 1.15},
    {"emu", Archetype::Bird, 1.05, 1.20, 1.25},
    {"flamingo", Archetype::Bird, 1.00, 1.00, 1.45},
    {"gerenuk", Archetype::LongNeck, 1.00, 1.05, 1.30},
    {"hawksbill", Archetype::Turtle, 1.00, 1.00, 1.00},
    {"hedgehog", Archetype::Rodent, 0.90, 1.00, 0.90},
    {"leopards", Archetype::Quadruped, 1.05, 1.25, 0.95},
    {"llama", Archetype::LongNeck, 1.05, 1.00, 1.15},
    {"okapi", Archetype::Quadruped, 1.00, 1.10, 1.05},
    {"pigeon", Archetype::Bird, 0.85, 0.95, 1.05},
    {"platypus", Archetype::LowLong, 0.90, 1.15, 0.50},
    {"rhino", Archetype::Quadruped, 1.10, 1.05, 0.95},
    {"rooster", Archetype::Bird, 0.95, 1.00, 1.20},
    {"wild_cat", Archetype::Quadruped, 0.95, 1.20, 0.95},
    {"bonsai", Archetype::Tree, 1.00, 1.00, 0.75},
    {"joushua_tree", Archetype::Tree, 1.05, 1.15, 1.30},
    {"lotus", Archetype::Rosette, 1.00, 1.00, 0.80},
    {"nautilus", Archetype::Shell, 0.95, 1.00, 0.70},
    {"strawberry", Archetype::Berry, 0.95, 1.05, 0.60},
    {"sunflower", Archetype::Flower, 1.00, 1.00, 0.85},
    {"water_lilly", Archetype::Rosette, 1.05, 1.10, 0.75},
};

struct Pose {
  double cx, cy, scale, lean;
  double stretch;  // horizontal width multiplier
};

void draw_quadruped(Canvas& c, Rng& rng, const Pose& p, const Recipe& r) {
  const double body_rx = 17.0 * p.scale * p.stretch * r.size_mul * r.aspect;
  const double body_ry = 10.5 * p.scale * r.size_mul / std::sqrt(r.aspect);
  const double body_y = p.cy - 4.0 * p.scale;
  c.ellipse(p.cx, body_y, body_rx, body_ry, p.lean);

  const double leg_len = (15.0 + rng.uniform01() * 4.0) * p.scale * r.appendage;
  const double leg_w = (2.1 + rng.uniform01() * 0.7) * p.scale;
  const double top = body_y + body_ry * 0.45;
  for (double fx : {-0.72, -0.38, 0.38, 0.72}) {
    const double x = p.cx + fx * body_rx;
    const double sway = (rng.uniform01() - 0.5) * 3.0;
    c.capsule(x, top, x + sway, top + leg_len, leg_w);
  }

  const double neck_len = (7.0 + rng.uniform01() * 3.0) * p.scale;
  const double head_r = (4.5 + rng.uniform01() * 1.5) * p.scale;
  const double nx = p.cx + body_rx * 0.85;
  const double ny = body_y - body_ry * 0.5;
  c.capsule(nx, ny, nx + neck_len * 0.5, ny - neck_len, head_r * 0.5);
  c.disc(nx + neck_len * 0.6, ny - neck_len - head_r * 0.4, head_r);

  if (rng.uniform01() < 0.7) {  // tail
    const double tx = p.cx - body_rx * 0.95;
    c.capsule(tx, body_y, tx - 7.0 * p.scale, body_y - 5.0 * p.scale, 1.3 * p.scale);
  }
}

void draw_long_neck(Canvas& c, Rng& rng, const Pose& p, const Recipe& r) {
  const double body_rx = 14.0 * p.scale * p.stretch * r.size_mul * r.aspect;
  const double body_ry = 9.0 * p.scale * r.size_mul;
  const double body_y = p.cy + 2.0 * p.scale;
  c.ellipse(p.cx, body_y, body_rx, body_ry, p.lean);

  const double leg_len = (16.0 + rng.uniform01() * 5.0) * p.scale * r.appendage;
  const double leg_w = (1.9 + rng.uniform01() * 0.5) * p.scale;
  for (double fx : {-0.6, -0.25, 0.35, 0.68}) {
    const double x = p.cx + fx * body_rx;
    c.capsule(x, body_y + body_ry * 0.4, x, body_y + body_ry * 0.4 + leg_len, leg_w);
  }

  const double neck_len = (17.0 + rng.uniform01() * 6.0) * p.scale * r.appendage;
  const double head_r = (3.2 + rng.uniform01() * 1.2) * p.scale;
  const double nx = p.cx + body_rx * 0.8;
  const double ny = body_y - body_ry * 0.4;
  const double tilt = 0.25 + rng.uniform01() * 0.3;
  c.capsule(nx, ny, nx + neck_len * tilt, ny - neck_len, 1.8 * p.scale);
  c.disc(nx + neck_len * tilt, ny - neck_len - head_r * 0.5, head_r);
}

void draw_low_long(Canvas& c, Rng& rng, const Pose& p, const Recipe& r) {
  const double body_rx = 17.0 * p.scale * p.stretch * r.size_mul * r.aspect;
  const double body_ry = 6.5 * p.scale * r.size_mul;
  const double body_y = p.cy + 6.0 * p.scale;
  c.ellipse(p.cx, body_y, body_rx, body_ry, p.lean * 0.5);
  // tapering tail and snout
  c.ellipse(p.cx - body_rx * 0.95, body_y, body_rx * 0.45, body_ry * 0.55, -0.08);
  c.ellipse(p.cx + body_rx * 0.9, body_y - 1.0, body_rx * 0.35, body_ry * 0.5, 0.05);
  const double leg_len = (5.0 + rng.uniform01() * 3.0) * p.scale * (r.appendage + 0.3);
  for (double fx : {-0.55, -0.2, 0.25, 0.6}) {
    const double x = p.cx + fx * body_rx;
    c.capsule(x, body_y + body_ry * 0.5, x, body_y + body_ry * 0.5 + leg_len, 1.8 * p.scale);
  }
}

void draw_bird(Canvas& c, Rng& rng, const Pose& p, const Recipe& r) {
  const double body_rx = 11.0 * p.scale * p.stretch * r.size_mul * r.aspect;
  const double body_ry = 8.5 * p.scale * r.size_mul;
  const double body_y = p.cy - 6.0 * p.scale;
  c.ellipse(p.cx, body_y, body_rx, body_ry, p.lean);

  const double leg_len = (14.0 + rng.uniform01() * 6.0) * p.scale * r.appendage;
  const double leg_w = (1.0 + rng.uniform01() * 0.4) * p.scale;
  const double gap = body_rx * (0.2 + rng.uniform01() * 0.15);
  c.capsule(p.cx - gap, body_y + body_ry * 0.6, p.cx - gap, body_y + body_ry * 0.6 + leg_len,
            leg_w);
  c.capsule(p.cx + gap, body_y + body_ry * 0.6, p.cx + gap, body_y + body_ry * 0.6 + leg_len,
            leg_w);

  const double neck_len = (8.0 + rng.uniform01() * 4.0) * p.scale * r.appendage;
  const double head_r = (3.0 + rng.uniform01() * 1.0) * p.scale;
  const double nx = p.cx + body_rx * 0.7;
  const double ny = body_y - body_ry * 0.5;
  c.capsule(nx, ny, nx + neck_len * 0.35, ny - neck_len, 1.4 * p.scale);
  c.disc(nx + neck_len * 0.35, ny - neck_len - head_r * 0.3, head_r);
  c.capsule(nx + neck_len * 0.35 + head_r, ny - neck_len - head_r * 0.3,
            nx + neck_len * 0.35 + head_r + 3.0 * p.scale, ny - neck_len, 0.9 * p.scale);
  // tail feathers
  c.ellipse(p.cx - body_rx * 0.9, body_y - body_ry * 0.3, 6.5 * p.scale, 2.6 * p.scale, -0.5);
}

void draw_turtle(Canvas& c, Rng& rng, const Pose& p, const Recipe& r) {
  const double shell_rx = 16.0 * p.scale * p.stretch * r.size_mul;
  const double shell_ry = 11.0 * p.scale * r.size_mul;
  c.ellipse(p.cx, p.cy, shell_rx, shell_ry, 0.0);
  c.disc(p.cx + shell_rx * 1.05, p.cy + 2.0 * p.scale, 3.6 * p.scale);
  const double flip = (5.0 + rng.uniform01() * 2.0) * p.scale * (r.appendage + 0.4);
  for (double fx : {-0.7, -0.3, 0.3, 0.7}) {
    const double x = p.cx + fx * shell_rx;
    c.capsule(x, p.cy + shell_ry * 0.7, x + (fx < 0 ? -flip : flip) * 0.4,
              p.cy + shell_ry * 0.7 + flip, 1.9 * p.scale);
  }
}

void draw_rodent(Canvas& c, Rng& rng, const Pose& p, const Recipe& r) {
  const double radius = 14.0 * p.scale * r.size_mul;
  c.blob(p.cx, p.cy, radius, 0.12 + 0.1 * rng.uniform01(), rng, p.stretch);
  c.disc(p.cx + radius * 0.9, p.cy - radius * 0.35, 4.5 * p.scale);
  // ears or spines
  const int tufts = 2 + static_cast<int>(rng.uniform01() * 3.0);
  for (int k = 0; k < tufts; ++k) {
    const double a = kPi * (0.15 + 0.6 * rng.uniform01());
    c.capsule(p.cx + radius * 0.6 * std::cos(a), p.cy - radius * 0.7 * std::sin(a),
              p.cx + radius * 1.15 * std::cos(a), p.cy - radius * 1.25 * std::sin(a),
              1.1 * p.scale);
  }
  const double tail = radius * r.appendage;
  c.capsule(p.cx - radius * 0.9, p.cy + radius * 0.2, p.cx - radius * 0.9 - tail,
            p.cy + radius * 0.45, 1.6 * p.scale);
  // short legs
  const double leg = (3.0 + 7.0 * r.appendage) * p.scale;
  for (double fx : {-0.45, 0.1, 0.55}) {
    const double x = p.cx + fx * radius;
    c.capsule(x, p.cy + radius * 0.75, x, p.cy + radius * 0.75 + leg, 1.6 * p.scale);
  }
}

void draw_fish(Canvas& c, Rng& rng, const Pose& p, const Recipe& r) {
  const double body_rx = 16.0 * p.scale * p.stretch * r.size_mul * r.aspect;
  const double body_ry = 8.0 * p.scale * r.size_mul;
  const double tilt = p.lean + 0.15;
  c.ellipse(p.cx, p.cy, body_rx, body_ry, tilt);
  // dorsal fin, fluke, snout
  c.ellipse(p.cx, p.cy - body_ry * 0.9, 4.5 * p.scale, 3.2 * p.scale, 0.8);
  const double tx = p.cx - body_rx * 0.95, ty = p.cy + body_rx * 0.18;
  c.ellipse(tx, ty, 6.0 * p.scale, 2.4 * p.scale, 0.9);
  c.ellipse(tx, ty, 6.0 * p.scale, 2.4 * p.scale, -0.5);
  c.capsule(p.cx + body_rx * 0.9, p.cy - body_rx * 0.12,
            p.cx + body_rx * 1.12, p.cy - body_rx * 0.05, 2.2 * p.scale);
  (void)rng;
}

void draw_tree(Canvas& c, Rng& rng, const Pose& p, const Recipe& r) {
  const double trunk_len = (12.0 + rng.uniform01() * 18.0) * p.scale * r.appendage;
  const double trunk_w = (2.6 + rng.uniform01() * 1.2) * p.scale;
  const double top_y = p.cy + 14.0 * p.scale;
  c.capsule(p.cx, top_y - trunk_len, p.cx, top_y, trunk_w);

  const int tufts = 3 + static_cast<int>(rng.uniform01() * 3.0);
  const double crown_y = top_y - trunk_len;
  const double crown_r = 14.5 * p.scale * p.stretch * r.size_mul;
  for (int k = 0; k < tufts; ++k) {
    const double a = 2.0 * kPi * rng.uniform01();
    const double d = crown_r * 0.75 * rng.uniform01();
    const double rr = crown_r * (0.5 + 0.4 * rng.uniform01());
    if (r.aspect > 1.1) {  // spiky tufts
      c.ellipse(p.cx + d * std::cos(a), crown_y + d * 0.6 * std::sin(a), rr, rr * 0.4,
                a * 0.5);
    } else {
      c.disc(p.cx + d * std::cos(a), crown_y + d * 0.6 * std::sin(a), rr);
    }
  }
  if (rng.uniform01() < 0.5) {  // low branch
    const double by = top_y - trunk_len * 0.55;
    c.capsule(p.cx, by, p.cx + 9.0 * p.scale, by - 6.0 * p.scale, 1.4 * p.scale);
  }
}

void draw_flower(Canvas& c, Rng& rng, const Pose& p, const Recipe& r) {
  const double head_y = p.cy - (4.0 + rng.uniform01() * 14.0) * p.scale;
  const double core = (6.0 + rng.uniform01() * 3.5) * p.scale * p.stretch * r.size_mul;
  const int petals = 7 + static_cast<int>(rng.uniform01() * 5.0);
  const double petal_len = core * (1.2 + 0.4 * rng.uniform01()) * r.appendage;
  for (int k = 0; k < petals; ++k) {
    const double a = 2.0 * kPi * (k + 0.7 * rng.uniform01() * 0.2) / petals;
    const double d = core + petal_len * 0.45;
    c.ellipse(p.cx + d * std::cos(a), head_y + d * std::sin(a), petal_len * 0.62,
              petal_len * 0.28, a);
  }
  c.disc(p.cx, head_y, core);

  const double stem_len = (12.0 + rng.uniform01() * 18.0) * p.scale;
  c.capsule(p.cx, head_y + core, p.cx, head_y + core + stem_len, 1.6 * p.scale);
  if (rng.uniform01() < 0.8) {
    const double ly = head_y + core + stem_len * 0.6;
    c.ellipse(p.cx - 5.0 * p.scale, ly, 5.5 * p.scale, 2.2 * p.scale, 0.5);
    c.ellipse(p.cx + 5.0 * p.scale, ly - 4.0 * p.scale, 5.5 * p.scale, 2.2 * p.scale, -0.5);
  }
}

void draw_rosette(Canvas& c, Rng& rng, const Pose& p, const Recipe& r) {
  const int petals = 6 + static_cast<int>(rng.uniform01() * 4.0);
  const double reach = 18.5 * p.scale * p.stretch * r.size_mul;
  for (int k = 0; k < petals; ++k) {
    const double a = 2.0 * kPi * k / petals + rng.uniform01() * 0.2;
    c.ellipse(p.cx + reach * 0.55 * std::cos(a), p.cy + reach * 0.5 * std::sin(a),
              reach * 0.52 * r.appendage, reach * 0.30, a);
  }
  c.disc(p.cx, p.cy, reach * 0.55);
}

void draw_berry(Canvas& c, Rng& rng, const Pose& p, const Recipe& r) {
  const double radius = 17.0 * p.scale * r.size_mul;
  c.blob(p.cx, p.cy + 3.0 * p.scale, radius, 0.08 + 0.08 * rng.uniform01(), rng, p.stretch);
  // leafy crown
  const double crown_y = p.cy + 3.0 * p.scale - radius;
  for (double a : {2.2, 1.57, 0.9}) {
    c.ellipse(p.cx + 6.0 * p.scale * std::cos(a), crown_y - 3.0 * p.scale * std::sin(a),
              6.0 * p.scale, 2.4 * p.scale * (r.appendage + 0.5), a);
  }
}

void draw_shell(Canvas& c, Rng& rng, const Pose& p, const Recipe& r) {
  const double radius = 15.0 * p.scale * r.size_mul;
  c.ellipse(p.cx, p.cy, radius * p.stretch, radius);
  c.disc(p.cx - radius * 0.75, p.cy + radius * 0.4, radius * 0.55);
  c.capsule(p.cx - radius * 1.3, p.cy + radius * 0.75, p.cx - radius * 0.3,
            p.cy + radius * 0.95, 3.0 * p.scale * (r.appendage + 0.3));
  (void)rng;
}

void draw_archetype(Canvas& canvas, Rng& rng, const Recipe& recipe, const Pose& pose) {
  switch (recipe.archetype) {
    case Archetype::Quadruped: draw_quadruped(canvas, rng, pose, recipe); break;
    case Archetype::LongNeck: draw_long_neck(canvas, rng, pose, recipe); break;
    case Archetype::LowLong: draw_low_long(canvas, rng, pose, recipe); break;
    case Archetype::Bird: draw_bird(canvas, rng, pose, recipe); break;
    case Archetype::Turtle: draw_turtle(canvas, rng, pose, recipe); break;
    case Archetype::Rodent: draw_rodent(canvas, rng, pose, recipe); break;
    case Archetype::Fish: draw_fish(canvas, rng, pose, recipe); break;
    case Archetype::Stick: draw_stick_figure(canvas, rng, pose.cx, pose.cy, pose.scale); break;
    case Archetype::Tree: draw_tree(canvas, rng, pose, recipe); break;
    case Archetype::Flower: draw_flower(canvas, rng, pose, recipe); break;
    case Archetype::Rosette: draw_rosette(canvas, rng, pose, recipe); break;
    case Archetype::Berry: draw_berry(canvas, rng, pose, recipe); break;
    case Archetype::Shell: draw_shell(canvas, rng, pose, recipe); break;
  }
}

// A small share of samples borrows an archetype from the other class; real
// silhouette masks are similarly messy.
constexpr double kConfuserRate = 0.05;

BinaryImage surrogate_sample(std::size_t recipe_index, int size, std::uint64_t sample_seed) {
  Canvas canvas(size);
  Rng rng(sample_seed);
  const Recipe* recipe = &kRecipes[recipe_index];

  const double unit = size / 100.0;
  Pose pose;
  pose.scale = (0.80 + rng.uniform01() * 0.28) * unit;
  pose.cx = size * 0.5 + (rng.uniform01() - 0.5) * 10.0 * unit;
  pose.cy = size * 0.5 + (rng.uniform01() - 0.5) * 10.0 * unit;
  pose.lean = (rng.uniform01() - 0.5) * 0.24;
  pose.stretch = 0.88 + rng.uniform01() * 0.30;

  if (rng.uniform01() < kConfuserRate) {
    const ClassLabel own = *subcategory_class(recipe->subcategory);
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < std::size(kRecipes); ++i) {
      if (*subcategory_class(kRecipes[i].subcategory) != own) pool.push_back(i);
    }
    recipe = &kRecipes[pool[rng.uniform_index(pool.size())]];
  }

  draw_archetype(canvas, rng, *recipe, pose);

  BinaryImage img = std::move(canvas.img);
  if (rng.uniform01() < 0.5) img = flip_horizontal(img);
  ensure_foreground(img, size * 0.5, size * 0.5);
  return img;
}

}  // namespace

void write_synth_dataset(const std::string& out_dir, const SynthDatasetOptions& options) {
  if (options.per_class < 1) fail(Err::InvalidArgument, "per_class must be >= 1");
  if (options.size < 8) fail(Err::DegenerateSpec, "canvas must be at least 8 pixels");
  if (options.flavor != "caltech" && options.flavor != "simple")
    fail(Err::InvalidArgument, "flavor must be 'caltech' or 'simple'");

  fs::create_directories(out_dir);

  auto sample_name = [](int index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d.pgm", index);
    return std::string(buf);
  };

  if (options.flavor == "simple") {
    // Separable fixture: ellipses vs. stick figures.
    const fs::path plants = fs::path(out_dir) / "sunflower";
    const fs::path animals = fs::path(out_dir) / "elephant";
    fs::create_directories(plants);
    fs::create_directories(animals);
    for (int i = 0; i < options.per_class; ++i) {
      Rng rng(mix_seed(options.seed, 0x5150 + i));
      const double rx = options.size * (0.18 + 0.14 * rng.uniform01());
      const double ry = options.size * (0.18 + 0.14 * rng.uniform01());
      const double cx = options.size * (0.42 + 0.16 * rng.uniform01());
      const double cy = options.size * (0.42 + 0.16 * rng.uniform01());
      const BinaryImage img = synth_silhouette(Ellipse{cx, cy, rx, ry}, options.size);
      save_pgm_mask((plants / sample_name(i)).string(), img);
    }
    for (int i = 0; i < options.per_class; ++i) {
      const BinaryImage img =
          synth_silhouette(StickFigure{mix_seed(options.seed, 0xa11a + i)}, options.size);
      save_pgm_mask((animals / sample_name(i)).string(), img);
    }
    return;
  }

  // Full 25-subcategory surrogate with class-balanced totals.
  int animal_count = 0, plant_count = 0;
  for (const Recipe& recipe : kRecipes) {
    (subcategory_class(recipe.subcategory) == ClassLabel::Animal ? animal_count
                                                                 : plant_count)++;
  }
  int recipe_index = 0;
  int animal_cursor = 0, plant_cursor = 0;
  for (const Recipe& recipe : kRecipes) {
    const bool is_animal = subcategory_class(recipe.subcategory) == ClassLabel::Animal;
    const int groups = is_animal ? animal_count : plant_count;
    int& cursor = is_animal ? animal_cursor : plant_cursor;
    // Spread the class quota across its subcategories.
    const int base = options.per_class / groups;
    const int extra = cursor < options.per_class % groups ? 1 : 0;
    const int count = base + extra;
    ++cursor;

    const fs::path dir = fs::path(out_dir) / std::string(recipe.subcategory);
    fs::create_directories(dir);
    for (int i = 0; i < count; ++i) {
      const std::uint64_t sample_seed =
          mix_seed(options.seed, static_cast<std::uint64_t>(recipe_index) * 100003u + i);
      const BinaryImage img = surrogate_sample(recipe_index, options.size, sample_seed);
      save_pgm_mask((dir / sample_name(i)).string(), img);
    }
    ++recipe_index;
  }
}

}  // namespace shapecat
