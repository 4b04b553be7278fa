#ifndef STYLO_APP_SVG_H_
#define STYLO_APP_SVG_H_

#include <span>
#include <string>
#include <vector>

namespace stylo::app {

struct ScatterPoint {
  double x = 0.0;
  double y = 0.0;
  std::string group;
  std::string label;
};

struct ScatterOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  // Placed verbatim (escaped) inside <metadata>.
  std::string metadata;
};

// Evenly spaced ticks at 1, 2 or 5 times a power of ten covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi, int target = 6);

std::string xml_escape(std::string_view text);

// Self-contained 800x600 SVG. Groups get markers in sorted group order,
// cycling through 8 shapes, and a legend entry each.
std::string render_scatter_svg(std::span<const ScatterPoint> points,
                               const ScatterOptions& options);

}  // namespace stylo::app

#endif  // STYLO_APP_SVG_H_
