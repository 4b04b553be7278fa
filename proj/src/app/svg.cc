#include "stylo/app/svg.h"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

namespace stylo::app {

namespace {

constexpr double kWidth = 800, kHeight = 600;
constexpr double kLeft = 70, kRight = 610, kTop = 50, kBottom = 530;

constexpr const char* kColors[8] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

std::string tick_label(double v, double step) {
  const int decimals = std::max(0, static_cast<int>(-std::floor(std::log10(step) + 1e-9)));
  if (std::abs(v) < step * 1e-6) v = 0.0;
  return fmt::format("{:.{}f}", v, decimals);
}

std::string attr(double v) { return fmt::format("{:.2f}", v); }

std::string marker(int shape, double x, double y, const char* color) {
  const double r = 5.5;
  const std::string style = fmt::format("fill=\"{}\" stroke=\"#222\" stroke-width=\"0.6\"", color);
  auto points = [&](std::initializer_list<std::pair<double, double>> pts) {
    std::string s;
    for (auto [dx, dy] : pts) {
      if (!s.empty()) s += ' ';
      s += attr(x + dx) + "," + attr(y + dy);
    }
    return fmt::format("<polygon points=\"{}\" {}/>", s, style);
  };
  switch (shape) {
    case 0:
      return fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"{}\" {}/>", attr(x), attr(y), attr(r), style);
    case 1:
      return fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" {}/>", attr(x - r * 0.85),
                         attr(y - r * 0.85), attr(r * 1.7), attr(r * 1.7), style);
    case 2:
      return points({{0, -r}, {r, r * 0.8}, {-r, r * 0.8}});
    case 3:
      return points({{0, -r * 1.2}, {r, 0}, {0, r * 1.2}, {-r, 0}});
    case 4:
      return points({{0, r}, {r, -r * 0.8}, {-r, -r * 0.8}});
    case 5: {
      const double a = r * 0.35;
      return points({{-a, -r}, {a, -r}, {a, -a}, {r, -a}, {r, a}, {a, a},
                     {a, r}, {-a, r}, {-a, a}, {-r, a}, {-r, -a}, {-a, -a}});
    }
    case 6: {
      std::string s;
      for (int k = 0; k < 10; ++k) {
        const double rad = k % 2 == 0 ? r * 1.2 : r * 0.5;
        const double ang = -M_PI / 2 + k * M_PI / 5;
        if (!s.empty()) s += ' ';
        s += attr(x + rad * std::cos(ang)) + "," + attr(y + rad * std::sin(ang));
      }
      return fmt::format("<polygon points=\"{}\" {}/>", s, style);
    }
    default: {
      std::string s;
      for (int k = 0; k < 6; ++k) {
        const double ang = k * M_PI / 3;
        if (!s.empty()) s += ' ';
        s += attr(x + r * std::cos(ang)) + "," + attr(y + r * std::sin(ang));
      }
      return fmt::format("<polygon points=\"{}\" {}/>", s, style);
    }
  }
}

}  // namespace

std::vector<double> nice_ticks(double lo, double hi, int target) {
  if (!(hi > lo)) {
    const double pad = std::abs(lo) > 0 ? std::abs(lo) * 0.5 : 1.0;
    lo -= pad;
    hi += pad;
  }
  const double raw = (hi - lo) / std::max(1, target - 1);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag * 10;
  for (double m : {1.0, 2.0, 5.0}) {
    if (raw <= m * mag * (1 + 1e-9)) {
      step = m * mag;
      break;
    }
  }
  std::vector<double> ticks;
  const long first = static_cast<long>(std::floor(lo / step + 1e-9));
  const long last = static_cast<long>(std::ceil(hi / step - 1e-9));
  for (long k = first; k <= last; ++k) ticks.push_back(k * step);
  return ticks;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string render_scatter_svg(std::span<const ScatterPoint> points, const ScatterOptions& options) {
  std::map<std::string, int> groups;
  for (const auto& p : points) groups.emplace(p.group, 0);
  int next = 0;
  for (auto& [name, index] : groups) index = next++;

  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  if (!points.empty()) {
    xmin = xmax = points[0].x;
    ymin = ymax = points[0].y;
    for (const auto& p : points) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  }
  const auto xt = nice_ticks(xmin, xmax);
  const auto yt = nice_ticks(ymin, ymax);
  const double x0 = xt.front(), x1 = xt.back(), y0 = yt.front(), y1 = yt.back();
  auto sx = [&](double v) { return kLeft + (v - x0) / (x1 - x0) * (kRight - kLeft); };
  auto sy = [&](double v) { return kBottom - (v - y0) / (y1 - y0) * (kBottom - kTop); };

  std::string s;
  s += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
      "font-family=\"Helvetica, Arial, sans-serif\" font-size=\"12\">\n",
      kWidth, kHeight);
  if (!options.metadata.empty()) s += "<metadata>" + xml_escape(options.metadata) + "</metadata>\n";
  s += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n", kWidth, kHeight);
  s += fmt::format("<text x=\"{}\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">{}</text>\n",
                   attr((kLeft + kRight) / 2), xml_escape(options.title));

  s += "<g stroke=\"#ddd\" stroke-width=\"1\">\n";
  for (double t : xt) {
    s += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\"/>\n", attr(sx(t)), attr(kTop), attr(kBottom));
  }
  for (double t : yt) {
    s += fmt::format("<line x1=\"{1}\" y1=\"{0}\" x2=\"{2}\" y2=\"{0}\"/>\n", attr(sy(t)), attr(kLeft), attr(kRight));
  }
  s += "</g>\n";
  s += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#333\"/>\n",
                   attr(kLeft), attr(kTop), attr(kRight - kLeft), attr(kBottom - kTop));

  const double xstep = xt.size() > 1 ? xt[1] - xt[0] : 1.0;
  const double ystep = yt.size() > 1 ? yt[1] - yt[0] : 1.0;
  s += "<g fill=\"#333\">\n";
  for (double t : xt) {
    s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", attr(sx(t)),
                     attr(kBottom + 18), tick_label(t, xstep));
  }
  for (double t : yt) {
    s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n", attr(kLeft - 8),
                     attr(sy(t) + 4), tick_label(t, ystep));
  }
  s += "</g>\n";
  s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", attr((kLeft + kRight) / 2),
                   attr(kBottom + 45), xml_escape(options.x_label));
  s += fmt::format("<text x=\"20\" y=\"{0}\" text-anchor=\"middle\" transform=\"rotate(-90 20 {0})\">{1}</text>\n",
                   attr((kTop + kBottom) / 2), xml_escape(options.y_label));

  s += "<g>\n";
  for (const auto& p : points) {
    const int g = groups.at(p.group);
    s += "<g><title>" + xml_escape(p.label.empty() ? p.group : p.label + " (" + p.group + ")") + "</title>";
    s += marker(g % 8, sx(p.x), sy(p.y), kColors[g % 8]);
    s += "</g>\n";
  }
  s += "</g>\n";

  s += "<g>\n";
  double ly = kTop + 10;
  for (const auto& [name, g] : groups) {
    s += marker(g % 8, kRight + 30, ly, kColors[g % 8]);
    s += fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", attr(kRight + 45), attr(ly + 4), xml_escape(name));
    ly += 22;
  }
  s += "</g>\n</svg>\n";
  return s;
}

}  // namespace stylo::app
