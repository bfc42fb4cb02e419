#include "kdist/svg.hpp"

#include <array>
#include <map>
#include <sstream>

namespace kdist {

namespace {

constexpr double kPointRadius = 0.006;
constexpr double kStroke = 0.002;

const std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                              "#9467bd", "#8c564b", "#e377c2", "#17becf"};

void line(std::ostringstream& out, double x1, double y1, double x2, double y2, const char* colour) {
  out << "    <line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2 << "\" stroke=\""
      << colour << "\" stroke-width=\"" << kStroke << "\"/>\n";
}

}  // namespace

std::string render_svg(const MultipleTable& table, const SurvivorReport& report) {
  if (table.dimension() != 2) throw DomainError("SVG rendering needs a two-dimensional instance");
  const double unit = table.unit();
  auto x = [&](int k) { return table.coordinate(k, 0) / unit; };
  auto y = [&](int k) { return table.coordinate(k, 1) / unit; };

  std::ostringstream out;
  out.precision(9);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 1 1\">\n";
  out << "  <defs><clipPath id=\"square\"><rect x=\"0\" y=\"0\" width=\"1\" height=\"1\"/></clipPath></defs>\n";
  out << "  <rect x=\"0\" y=\"0\" width=\"1\" height=\"1\" fill=\"white\" stroke=\"black\" stroke-width=\"" << kStroke
      << "\"/>\n";
  // y axis points up.
  out << "  <g transform=\"matrix(1 0 0 -1 0 1)\" clip-path=\"url(#square)\">\n";

  std::map<int, std::size_t> class_of_rank;
  for (std::size_t i = 0; i < report.witnesses.size(); ++i) {
    const EdgeRef& w = report.witnesses[i];
    class_of_rank[table.length_rank(w.k - w.j)] = i;
  }

  for (const EdgeRef& s : report.survivors) {
    const char* colour = kPalette[class_of_rank[table.length_rank(s.k - s.j)] % kPalette.size()];
    double d[2];
    bool wraps = false;
    for (int r = 0; r < 2; ++r) {
      const Arc arc = table.arc(s.j, s.k, r);
      const double from = table.coordinate(s.j, r) / unit;
      const double to = table.coordinate(s.k, r) / unit;
      d[r] = to - from;
      if (arc.kind == Arc::Kind::Wrapped) {
        wraps = true;
        d[r] += d[r] > 0 ? -1.0 : 1.0;
      }
    }
    line(out, x(s.j), y(s.j), x(s.j) + d[0], y(s.j) + d[1], colour);
    if (wraps) line(out, x(s.k) - d[0], y(s.k) - d[1], x(s.k), y(s.k), colour);
  }
  for (int k = 1; k <= table.n(); ++k) {
    out << "    <circle cx=\"" << x(k) << "\" cy=\"" << y(k) << "\" r=\"" << kPointRadius << "\" fill=\"black\"/>\n";
  }
  out << "  </g>\n</svg>\n";
  return out.str();
}

}  // namespace kdist
