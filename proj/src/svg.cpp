#include "malsim/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace malsim {

namespace {

// Drawing happens in km coordinates with the y axis flipped at write time.
void svg_header(double half_width, std::ostream& out) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" height=\"900\" "
                "viewBox=\"%.6f %.6f %.6f %.6f\">\n",
                -half_width, -half_width, 2 * half_width, 2 * half_width);
  out << buf;
  out << "<rect x=\"" << -half_width << "\" y=\"" << -half_width << "\" width=\""
      << 2 * half_width << "\" height=\"" << 2 * half_width << "\" fill=\"white\"/>\n";
}

void street_layer(const StreetSystem& streets, std::ostream& out) {
  const double stroke = std::max(streets.window().half_width() / 400.0, 1e-4);
  char buf[256];
  out << "<g id=\"streets\" stroke=\"red\" stroke-width=\"" << stroke << "\">\n";
  for (const Segment& s : streets.segments()) {
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.6f\" y1=\"%.6f\" x2=\"%.6f\" y2=\"%.6f\"/>\n", s.a.x, -s.a.y,
                  s.b.x, -s.b.y);
    out << buf;
  }
  out << "</g>\n";
}

const char* state_color(NodeState s) {
  switch (s) {
    case NodeState::S: return "blue";
    case NodeState::I: return "black";
    case NodeState::G: return "green";
  }
  return "gray";
}

}  // namespace

void write_streets_svg(const StreetSystem& streets, std::ostream& out) {
  svg_header(streets.window().half_width(), out);
  street_layer(streets, out);
  out << "</svg>\n";
}

void write_snapshot_svg(const StreetSystem* streets, const DeviceSet& devices,
                        const EpidemicRun& run, double t, double circle_radius,
                        std::string_view annotation, std::ostream& out) {
  const double half_width = devices.window.half_width();
  svg_header(half_width, out);
  if (streets) street_layer(*streets, out);

  const double dot = std::max(half_width / 250.0, 1e-4);
  char buf[256];
  out << "<g id=\"devices\">\n";
  for (const auto& [id, state] : snapshot(run, t)) {
    const Vec2 p = devices.devices[static_cast<std::size_t>(id)].position;
    std::snprintf(buf, sizeof(buf), "<circle cx=\"%.6f\" cy=\"%.6f\" r=\"%.6f\" fill=\"%s\"/>\n",
                  p.x, -p.y, dot, state_color(state));
    out << buf;
  }
  out << "</g>\n";

  out << "<g id=\"overlay\">\n";
  if (circle_radius > 0.0) {
    std::snprintf(buf, sizeof(buf),
                  "<circle cx=\"0\" cy=\"0\" r=\"%.6f\" fill=\"none\" stroke=\"black\" "
                  "stroke-width=\"%.6f\"/>\n",
                  circle_radius, std::max(half_width / 300.0, 1e-4));
    out << buf;
  }
  if (!annotation.empty()) {
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.6f\" y=\"%.6f\" font-size=\"%.6f\" fill=\"black\">",
                  -0.95 * half_width, -0.9 * half_width, half_width / 20.0);
    out << buf << annotation << "</text>\n";
  }
  out << "</g>\n</svg>\n";
}

}  // namespace malsim
