#pragma once

// Newton polygon pictures as SVG or ASCII. Output bytes depend only on the RenderSpec.

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "ffhecke/bundle.hpp"
#include "ffhecke/levi.hpp"

namespace ffhecke::render {

enum class Format { SVG, ASCII };
enum class Style { Solid, Dashed, Dotted };

struct Overlay {
  Bundle bundle;
  Style style = Style::Solid;
  bool mark_min_slope = false;
};

struct RenderSpec {
  Format format = Format::SVG;
  std::vector<Overlay> overlays;
  // Dotted verticals from the first overlay down to the x-axis.
  std::vector<std::int64_t> splits;
};

inline constexpr std::int64_t kUnit = 40;
inline constexpr std::int64_t kMargin = 20;

namespace detail {

struct Extent {
  std::int64_t x_max = 0;
  std::int64_t y_min = 0;
  std::int64_t y_max = 0;
};

inline Extent extent(const RenderSpec& spec) {
  Extent e;
  for (const auto& o : spec.overlays)
    for (const auto& p : NewtonPolygon(o.bundle).breakpoints()) {
      e.x_max = std::max(e.x_max, p.x);
      e.y_min = std::min(e.y_min, p.y.floor());
      e.y_max = std::max(e.y_max, p.y.ceil());
    }
  return e;
}

// Pixel values are multiples of 1/den; printed exactly when integral, else to three places.
inline std::string px(const Rational& v) {
  if (v.is_integer()) return std::to_string(v.num());
  Rational scaled = v * Rational(1000);
  std::int64_t t = scaled.floor();
  std::string sign = t < 0 ? "-" : "";
  std::int64_t a = t < 0 ? -t : t;
  std::string frac = std::to_string(a % 1000);
  frac.insert(0, 3 - frac.size(), '0');
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  return sign + std::to_string(a / 1000) + "." + frac;
}

inline const char* dash(Style s) {
  switch (s) {
    case Style::Dashed: return " stroke-dasharray=\"8 4\"";
    case Style::Dotted: return " stroke-dasharray=\"2 4\"";
    case Style::Solid: break;
  }
  return "";
}

inline Rational value_at(const Bundle& b, const Rational& x) {
  const auto& pts = NewtonPolygon(b).breakpoints();
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (x <= Rational(pts[i].x)) {
      const auto& a = pts[i - 1];
      const auto& c = pts[i];
      return a.y + (c.y - a.y) * (x - Rational(a.x)) / Rational(c.x - a.x);
    }
  return pts.back().y;
}

inline std::string svg(const RenderSpec& spec) {
  auto e = extent(spec);
  auto sx = [&](const Rational& x) { return px(Rational(kMargin) + x * Rational(kUnit)); };
  auto sy = [&](const Rational& y) { return px(Rational(kMargin) + (Rational(e.y_max) - y) * Rational(kUnit)); };
  std::int64_t w = e.x_max * kUnit + 2 * kMargin;
  std::int64_t h = (e.y_max - e.y_min) * kUnit + 2 * kMargin;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << w << ' ' << h << "\" width=\"" << w
     << "\" height=\"" << h << "\">\n";
  os << "  <line x1=\"" << sx(Rational(0)) << "\" y1=\"" << sy(Rational(0)) << "\" x2=\"" << sx(Rational(e.x_max))
     << "\" y2=\"" << sy(Rational(0)) << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
  for (const auto& o : spec.overlays) {
    const auto& pts = NewtonPolygon(o.bundle).breakpoints();
    std::size_t last = o.mark_min_slope ? pts.size() - 1 : pts.size();
    os << "  <polyline points=\"";
    for (std::size_t i = 0; i < last; ++i) os << (i ? " " : "") << sx(Rational(pts[i].x)) << ',' << sy(pts[i].y);
    os << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"" << dash(o.style) << "/>\n";
    if (o.mark_min_slope) {
      const auto& a = pts[pts.size() - 2];
      const auto& c = pts.back();
      os << "  <line x1=\"" << sx(Rational(a.x)) << "\" y1=\"" << sy(a.y) << "\" x2=\"" << sx(Rational(c.x))
         << "\" y2=\"" << sy(c.y) << "\" stroke=\"orange\" stroke-width=\"2\"" << dash(o.style) << "/>\n";
    }
  }
  for (auto x : spec.splits) {
    Rational top = value_at(spec.overlays.front().bundle, Rational(x));
    os << "  <line x1=\"" << sx(Rational(x)) << "\" y1=\"" << sy(top) << "\" x2=\"" << sx(Rational(x)) << "\" y2=\""
       << sy(Rational(0)) << "\" stroke=\"black\" stroke-width=\"1\"" << dash(Style::Dotted) << "/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

// Four columns and two rows per unit. Later overlays draw over earlier ones.
inline std::string ascii(const RenderSpec& spec) {
  constexpr std::int64_t cx = 4, cy = 2;
  auto e = extent(spec);
  const std::int64_t cols = e.x_max * cx + 1;
  const std::int64_t rows = (e.y_max - e.y_min) * cy + 1;
  std::vector<std::string> grid(static_cast<std::size_t>(rows), std::string(static_cast<std::size_t>(cols), ' '));
  auto row_of = [&](const Rational& y) { return (Rational(e.y_max) - y) * Rational(cy); };
  auto put = [&](std::int64_t r, std::int64_t c, char ch) {
    if (r >= 0 && r < rows && c >= 0 && c < cols) grid[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = ch;
  };
  for (std::int64_t c = 0; c < cols; ++c) put(row_of(Rational(0)).floor(), c, '-');
  for (auto x : spec.splits) {
    Rational top = value_at(spec.overlays.front().bundle, Rational(x));
    for (std::int64_t r = row_of(top).floor(); r <= row_of(Rational(0)).floor(); ++r) put(r, x * cx, ':');
  }
  for (const auto& o : spec.overlays) {
    const auto& pts = NewtonPolygon(o.bundle).breakpoints();
    const Rational min_from(pts[pts.size() - 2].x);
    char glyph = o.style == Style::Solid ? '#' : (o.style == Style::Dashed ? '=' : '.');
    for (std::int64_t c = 0; c < cols; ++c) {
      Rational x(c, cx);
      bool marked = o.mark_min_slope && x > min_from;
      put(row_of(value_at(o.bundle, x)).floor(), c, marked ? 'o' : glyph);
    }
  }
  std::string out;
  for (auto& line : grid) {
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

}  // namespace detail

inline std::string render(const RenderSpec& spec) {
  if (spec.overlays.empty()) throw Error(ErrorCode::InvalidInput, "render needs at least one bundle");
  return spec.format == Format::SVG ? detail::svg(spec) : detail::ascii(spec);
}

// Fixtures for the three worked pictures.
inline RenderSpec figure(int which, Format format = Format::SVG) {
  RenderSpec s;
  s.format = format;
  auto b = [](std::vector<std::int64_t> L, std::vector<std::int64_t> chi) {
    return b_of_chi(LeviDatum(std::move(L)), Character(std::move(chi))).bundle;
  };
  switch (which) {
    case 1:
      s.overlays.push_back({b({2, 3, 3}, {2, 2, 1}), Style::Solid, true});
      break;
    case 2:
      s.overlays.push_back({b({2, 3, 3}, {2, 2, 1}), Style::Solid, false});
      s.overlays.push_back({b({2, 3, 3}, {1, 2, 3}), Style::Solid, false});
      s.splits.push_back(2);
      break;
    case 3:
      s.overlays.push_back({b({3, 4}, {2, 1}), Style::Solid, true});
      s.overlays.push_back({b({3, 4}, {1, 3}), Style::Dashed, false});
      break;
    default:
      throw Error(ErrorCode::InvalidInput, "figures are numbered 1 to 3");
  }
  return s;
}

}  // namespace ffhecke::render
