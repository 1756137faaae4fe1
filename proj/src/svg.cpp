#include "towbandit/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "towbandit/text.hpp"

namespace towbandit::svg {

namespace {

struct Rgb {
  int r, g, b;
};

Rgb lerp(const Rgb& a, const Rgb& b, double t) {
  auto mix = [t](int u, int v) {
    return static_cast<int>(std::lround(u + (v - u) * t));
  };
  return {mix(a.r, b.r), mix(a.g, b.g), mix(a.b, b.b)};
}

// Sequential ramp for values in [0, 1]: pale yellow through teal to deep blue.
Rgb sequential(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const Rgb low{255, 255, 204}, mid{65, 182, 196}, high{8, 29, 88};
  return t < 0.5 ? lerp(low, mid, 2.0 * t) : lerp(mid, high, 2.0 * t - 1.0);
}

// Diverging ramp for values in [-1, 1]: blue, white at zero, red.
Rgb diverging(double t) {
  t = std::clamp(t, -1.0, 1.0);
  const Rgb neg{33, 102, 172}, zero{247, 247, 247}, pos{178, 24, 43};
  return t < 0.0 ? lerp(zero, neg, -t) : lerp(zero, pos, t);
}

std::string fill(const Rgb& c) {
  std::ostringstream os;
  os << "rgb(" << c.r << "," << c.g << "," << c.b << ")";
  return os.str();
}

struct Layout {
  static constexpr double plot = 460.0;
  static constexpr double left = 56.0;
  static constexpr double top = 34.0;
  static constexpr double bottom = 44.0;
  static constexpr double legend = 92.0;

  double cell;
  int axis_cells;

  explicit Layout(int cells) : cell(plot / cells), axis_cells(cells) {}

  double width() const { return left + plot + legend; }
  double height() const { return top + plot + bottom; }
  // Probability p maps to the cell with index round(p/step) - 1.
  double x_of(int index) const { return left + index * cell; }
  double y_of(int index) const { return top + plot - (index + 1) * cell; }
};

void emit_axes(std::ostringstream& os, const Layout& lay, double step) {
  using text::format_fixed;
  os << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#222\">\n";
  for (int decile = 0; decile <= 10; ++decile) {
    const double p = decile / 10.0;
    const double frac = p / (lay.axis_cells * step);
    const double x = lay.left + frac * Layout::plot;
    const double y = lay.top + Layout::plot - frac * Layout::plot;
    os << "<line x1=\"" << format_fixed(x, 1) << "\" y1=\""
       << format_fixed(lay.top + Layout::plot, 1) << "\" x2=\""
       << format_fixed(x, 1) << "\" y2=\""
       << format_fixed(lay.top + Layout::plot + 4, 1)
       << "\" stroke=\"#222\"/>\n";
    os << "<text x=\"" << format_fixed(x, 1) << "\" y=\""
       << format_fixed(lay.top + Layout::plot + 16, 1)
       << "\" text-anchor=\"middle\">" << format_fixed(p, 1) << "</text>\n";
    os << "<line x1=\"" << format_fixed(lay.left - 4, 1) << "\" y1=\""
       << format_fixed(y, 1) << "\" x2=\"" << format_fixed(lay.left, 1)
       << "\" y2=\"" << format_fixed(y, 1) << "\" stroke=\"#222\"/>\n";
    os << "<text x=\"" << format_fixed(lay.left - 8, 1) << "\" y=\""
       << format_fixed(y + 4, 1) << "\" text-anchor=\"end\">"
       << format_fixed(p, 1) << "</text>\n";
  }
  os << "<text x=\"" << format_fixed(lay.left + Layout::plot / 2, 1)
     << "\" y=\"" << format_fixed(lay.top + Layout::plot + 34, 1)
     << "\" text-anchor=\"middle\">p_A</text>\n";
  os << "<text x=\"14\" y=\"" << format_fixed(lay.top + Layout::plot / 2, 1)
     << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
     << format_fixed(lay.top + Layout::plot / 2, 1) << ")\">p_B</text>\n";
  os << "</g>\n";
}

template <typename Color>
void emit_legend(std::ostringstream& os, const Layout& lay, Color color,
                 double lo, double hi, const char* lo_label,
                 const char* mid_label, const char* hi_label) {
  using text::format_fixed;
  const double bar_x = lay.left + Layout::plot + 24;
  const double bar_h = Layout::plot * 0.7;
  const double bar_y = lay.top + (Layout::plot - bar_h) / 2;
  const int strips = 64;
  for (int s = 0; s < strips; ++s) {
    const double t = lo + (hi - lo) * (s + 0.5) / strips;
    const double y = bar_y + bar_h - (s + 1) * bar_h / strips;
    os << "<rect x=\"" << format_fixed(bar_x, 1) << "\" y=\""
       << format_fixed(y, 2) << "\" width=\"14\" height=\""
       << format_fixed(bar_h / strips + 0.5, 2) << "\" fill=\""
       << fill(color(t)) << "\"/>\n";
  }
  os << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#222\">\n";
  os << "<text x=\"" << format_fixed(bar_x + 20, 1) << "\" y=\""
     << format_fixed(bar_y + bar_h + 4, 1) << "\">" << lo_label << "</text>\n";
  os << "<text x=\"" << format_fixed(bar_x + 20, 1) << "\" y=\""
     << format_fixed(bar_y + bar_h / 2 + 4, 1) << "\">" << mid_label
     << "</text>\n";
  os << "<text x=\"" << format_fixed(bar_x + 20, 1) << "\" y=\""
     << format_fixed(bar_y + 4, 1) << "\">" << hi_label << "</text>\n";
  os << "</g>\n";
}

template <typename Value, typename Color>
std::string render(const std::vector<sweep::SweepRecord>& records,
                   double grid_step, const char* title, Value value,
                   Color color, double lo, double hi, const char* lo_label,
                   const char* mid_label, const char* hi_label) {
  const int cells =
      static_cast<int>(std::floor(0.99 / grid_step + 1e-9));
  const Layout lay(cells);
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
     << text::format_fixed(lay.width(), 0) << "\" height=\""
     << text::format_fixed(lay.height(), 0) << "\" viewBox=\"0 0 "
     << text::format_fixed(lay.width(), 0) << " "
     << text::format_fixed(lay.height(), 0) << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << text::format_fixed(lay.left + Layout::plot / 2, 1)
     << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"14\" fill=\"#111\">"
     << title << "</text>\n";

  const double size = lay.cell + 0.05;  // slight overlap hides hairline seams
  for (const auto& rec : records) {
    const int ix = static_cast<int>(std::lround(rec.p_a / grid_step)) - 1;
    const int iy = static_cast<int>(std::lround(rec.p_b / grid_step)) - 1;
    os << "<rect x=\"" << text::format_fixed(lay.x_of(ix), 2) << "\" y=\""
       << text::format_fixed(lay.y_of(iy), 2) << "\" width=\""
       << text::format_fixed(size, 2) << "\" height=\""
       << text::format_fixed(size, 2) << "\" fill=\"" << fill(color(value(rec)))
       << "\"/>\n";
  }

  emit_axes(os, lay, grid_step);
  emit_legend(os, lay, color, lo, hi, lo_label, mid_label, hi_label);
  os << "</svg>\n";
  return os.str();
}

}  // namespace

std::string max_cdr_heatmap(const std::vector<sweep::SweepRecord>& records,
                            double grid_step) {
  return render(
      records, grid_step, "max CDR over lambda",
      [](const sweep::SweepRecord& r) { return (r.max_cdr - 0.5) * 2.0; },
      sequential, 0.0, 1.0, "0.5", "0.75", "1.0");
}

std::string lambda_m_heatmap(const std::vector<sweep::SweepRecord>& records,
                             double grid_step) {
  return render(
      records, grid_step, "mean optimal lambda",
      [](const sweep::SweepRecord& r) { return r.lambda_m; }, diverging, -1.0,
      1.0, "-1", "0", "1");
}

}  // namespace towbandit::svg
