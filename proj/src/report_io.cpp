#include "engram/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "text_format.hpp"

namespace engram::report {

namespace {

std::string cell(double v) { return std::isfinite(v) ? text::format_double(v) : std::string(); }

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

}  // namespace

void write_creation_csv(std::ostream& out, const analysis::CreationDensity& d) {
  out << "bin_centre_pct,count,kde\n";
  for (std::size_t b = 0; b < d.counts.size(); ++b) {
    out << cell(d.bin_centres[b]) << ',' << d.counts[b] << ',' << cell(d.kde[b]) << '\n';
  }
}

void write_contiguity_csv(std::ostream& out, const analysis::ContiguityProfile& p) {
  out << "age_difference,overflow,pairs,mean_weight\n";
  for (std::size_t d = 0; d < p.pairs.size(); ++d) {
    out << d << ',' << (d == p.cap ? 1 : 0) << ',' << p.pairs[d] << ',' << cell(p.mean[d]) << '\n';
  }
}

void write_acf_csv(std::ostream& out, const analysis::AcfTable& t) {
  out << "lag,stm,ltm,stm_engrams,ltm_engrams\n";
  for (std::size_t i = 0; i < t.stm.size(); ++i) {
    out << i + 1 << ',' << cell(t.stm[i]) << ',' << cell(t.ltm[i]) << ',' << t.stm_engrams[i] << ','
        << t.ltm_engrams[i] << '\n';
  }
}

void write_age_csv(std::ostream& out, const std::vector<analysis::AgePoint>& curve) {
  out << "step,mean_age\n";
  for (const auto& p : curve) out << p.step << ',' << cell(p.mean_age) << '\n';
}

void write_bound_csv(std::ostream& out, const analysis::BoundReport& r) {
  out << "step,ltm_size,total_lifespan,asymptote,predicted_lifespan,exceeds\n";
  for (const auto& row : r.rows) {
    out << row.step << ',' << row.ltm_size << ',' << cell(row.total_lifespan) << ','
        << cell(row.asymptote) << ',' << cell(row.predicted_lifespan) << ',' << (row.exceeds ? 1 : 0)
        << '\n';
  }
}

std::string svg_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                     const std::vector<PlotSeries>& series) {
  constexpr double W = 640, H = 400, L = 70, R = 20, T = 40, B = 55;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = 0.0, y1 = -x0;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (!std::isfinite(x0)) x0 = 0.0, x1 = 1.0, y1 = 1.0;
  if (x1 <= x0) x1 = x0 + 1.0;
  if (y1 <= y0) y1 = y0 + 1.0;
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << escape_xml(title) << "</text>\n"
      << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = x0 + (x1 - x0) * k / 4.0, yv = y0 + (y1 - y0) * k / 4.0;
    svg << "<text x=\"" << px(xv) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">"
        << text::format_double(std::round(xv * 100) / 100) << "</text>\n"
        << "<text x=\"" << L - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">"
        << text::format_double(std::round(yv * 100) / 100) << "</text>\n";
  }
  svg << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">"
      << escape_xml(x_label) << "</text>\n"
      << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << (T + H - B) / 2 << ")\">" << escape_xml(y_label) << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* colour = kPalette[si % std::size(kPalette)];
    const std::size_t n = std::min(s.x.size(), s.y.size());
    if (s.bars) {
      const double width = n > 1 ? (W - L - R) / static_cast<double>(n) * 0.9 : 10.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        const double top = py(std::max(s.y[i], 0.0)), base = py(std::min(s.y[i], 0.0));
        svg << "<rect x=\"" << px(s.x[i]) - width / 2 << "\" y=\"" << top << "\" width=\"" << width
            << "\" height=\"" << base - top << "\" fill=\"" << colour << "\" fill-opacity=\"0.5\"/>\n";
      }
    } else {
      std::string path;
      bool pen_down = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
          pen_down = false;
          continue;
        }
        path += (pen_down ? " L" : " M") + text::format_double(px(s.x[i])) + ' ' +
                text::format_double(py(s.y[i]));
        pen_down = true;
      }
      if (!path.empty()) {
        svg << "<path d=\"" << path << "\" fill=\"none\" stroke=\"" << colour
            << "\" stroke-width=\"1.5\"/>\n";
      }
    }
    svg << "<text x=\"" << W - R - 4 << "\" y=\"" << T + 14 * (si + 1) << "\" text-anchor=\"end\" fill=\""
        << colour << "\">" << escape_xml(s.name) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string graph_dot(const MemoryState& state, double min_weight) {
  std::vector<EngramId> ids(state.wm().begin(), state.wm().end());
  ids.insert(ids.end(), state.stm().begin(), state.stm().end());
  ids.insert(ids.end(), state.ltm().begin(), state.ltm().end());
  std::sort(ids.begin(), ids.end());

  std::ostringstream out;
  out << "digraph engrams {\n";
  for (EngramId id : ids) {
    const Engram& e = state.engram(id);
    out << "  " << id << " [tier=\"" << tier_name(e.tier) << "\", creation_step=" << e.creation_step
        << ", lifespan=" << text::format_double(e.lifespan) << "];\n";
  }
  for (EngramId i : ids) {
    std::vector<EngramId> peers;
    for (const auto& [j, count] : state.graph().neighbours(i)) {
      if (count > 0) peers.push_back(j);
    }
    std::sort(peers.begin(), peers.end());
    for (EngramId j : peers) {
      const double w = state.edge_weight(i, j);
      if (w < min_weight) continue;
      out << "  " << i << " -> " << j << " [weight=" << text::format_double(w) << ", label=\""
          << text::format_double(w) << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace engram::report
