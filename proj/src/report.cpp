#include "nlsmooth/report.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace nlsmooth {

namespace {

std::string error_cell(double e) { return fmt::format("{:.2e}", e); }

std::string order_cell(const std::optional<double>& p) { return p ? fmt::format("{:.2f}", *p) : "-"; }

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string csv_number(double v) { return fmt::format("{:.17g}", v == 0.0 ? 0.0 : v); }

std::string level_label(int level) {
  if (level == kNoSmoothing) return "No smoothing";
  return "Smoothing level M=" + std::to_string(level);
}

void write_solution_csv(std::ostream& os, const DiscreteSolution& u,
                        const std::optional<PiecewiseSmoothFunction>& exact) {
  os << (exact ? "x,u,u_exact,error\n" : "x,u\n");
  for (int i = 0; i < u.grid.size(); ++i) {
    const double x = u.grid.node(i);
    os << csv_number(x) << ',' << csv_number(u.values[i]);
    if (exact) {
      const double e = (*exact)(x);
      os << ',' << csv_number(e) << ',' << csv_number(std::abs(u.values[i] - e));
    }
    os << '\n';
  }
}

void write_study_csv(std::ostream& os, const std::vector<ConvergenceReport>& reports) {
  os << "example,level,backend,n,error,order\n";
  for (const auto& r : reports)
    for (const auto& row : r.rows) {
      os << r.example << ',' << (r.level == kNoSmoothing ? std::string("none") : std::to_string(r.level)) << ','
         << backend_name(r.backend) << ',' << row.n << ',' << csv_number(row.error) << ',';
      if (row.order) os << csv_number(*row.order);
      os << '\n';
    }
}

void write_study_markdown(std::ostream& os, const std::vector<ConvergenceReport>& reports, const std::string& title) {
  os << "## " << title << "\n\n";
  for (std::size_t p = 0; p < reports.size(); p += 2) {
    const std::size_t last = std::min(p + 2, reports.size());
    os << "| N |";
    for (std::size_t r = p; r < last; ++r) os << ' ' << level_label(reports[r].level) << " error | Order |";
    os << "\n|---:|";
    for (std::size_t r = p; r < last; ++r) os << "---:|---:|";
    os << '\n';
    std::vector<int> ns;
    for (std::size_t r = p; r < last; ++r)
      for (const auto& row : reports[r].rows) ns.push_back(row.n);
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    for (int n : ns) {
      os << "| " << n << " |";
      for (std::size_t r = p; r < last; ++r) {
        const auto& rows = reports[r].rows;
        const auto it = std::find_if(rows.begin(), rows.end(), [n](const ConvergenceRow& x) { return x.n == n; });
        if (it == rows.end())
          os << " | |";
        else
          os << ' ' << error_cell(it->error) << " | " << order_cell(it->order) << " |";
      }
      os << '\n';
    }
    os << '\n';
  }
  if (!reports.empty())
    os << "Error norm: " << reports.front().norm << ". Backend: " << backend_name(reports.front().backend) << ".\n";
}

void write_study_svg(std::ostream& os, const std::vector<ConvergenceReport>& reports, const std::string& title) {
  const double W = 640, H = 480, left = 80, right = 170, top = 50, bottom = 60;
  double nmin = 1e300, nmax = 0, emin = 1e300, emax = 0;
  for (const auto& r : reports)
    for (const auto& row : r.rows) {
      nmin = std::min(nmin, double(row.n));
      nmax = std::max(nmax, double(row.n));
      if (row.error > 0) {
        emin = std::min(emin, row.error);
        emax = std::max(emax, row.error);
      }
    }
  if (nmax == 0) nmin = 1, nmax = 10;
  if (emax == 0) emin = 1e-16, emax = 1;
  const double lx0 = std::log10(nmin) - 0.05, lx1 = std::log10(nmax) + 0.05;
  const double ly0 = std::floor(std::log10(emin)), ly1 = std::ceil(std::log10(emax));
  const double span_y = std::max(ly1 - ly0, 1.0);
  auto px = [&](double n) { return left + (std::log10(n) - lx0) / (lx1 - lx0) * (W - left - right); };
  auto py = [&](double e) { return top + (ly0 + span_y - std::log10(e)) / span_y * (H - top - bottom); };

  os << fmt::format(R"(<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">)", W, H, W, H)
     << '\n';
  os << R"(<rect width="100%" height="100%" fill="white"/>)" << '\n';
  os << fmt::format(R"(<text x="{}" y="28" font-family="sans-serif" font-size="16" text-anchor="middle">{}</text>)",
                    (left + W - right) / 2, escape_xml(title))
     << '\n';
  os << fmt::format(R"(<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black"/>)", left, top,
                    W - left - right, H - top - bottom)
     << '\n';
  const int step = span_y > 12 ? 2 : 1;
  for (int d = static_cast<int>(ly0); d <= static_cast<int>(ly0 + span_y); d += step) {
    const double y = py(std::pow(10.0, d));
    os << fmt::format(R"(<line x1="{}" y1="{:.2f}" x2="{}" y2="{:.2f}" stroke="#ddd"/>)", left, y, W - right, y) << '\n';
    os << fmt::format(R"(<text x="{}" y="{:.2f}" font-family="sans-serif" font-size="11" text-anchor="end">1e{}</text>)",
                      left - 6, y + 4, d)
       << '\n';
  }
  std::vector<int> ns;
  for (const auto& r : reports)
    for (const auto& row : r.rows) ns.push_back(row.n);
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  for (int n : ns) {
    const double x = px(n);
    os << fmt::format(R"(<line x1="{:.2f}" y1="{}" x2="{:.2f}" y2="{}" stroke="#ddd"/>)", x, top, x, H - bottom) << '\n';
    os << fmt::format(R"(<text x="{:.2f}" y="{}" font-family="sans-serif" font-size="11" text-anchor="middle">{}</text>)",
                      x, H - bottom + 16, n)
       << '\n';
  }
  os << fmt::format(R"(<text x="{}" y="{}" font-family="sans-serif" font-size="13" text-anchor="middle">N</text>)",
                    (left + W - right) / 2, H - 18)
     << '\n';
  os << fmt::format(
            R"svg(<text x="20" y="{}" font-family="sans-serif" font-size="13" text-anchor="middle" transform="rotate(-90 20 {})">max error</text>)svg",
            (top + H - bottom) / 2, (top + H - bottom) / 2)
     << '\n';
  for (std::size_t r = 0; r < reports.size(); ++r) {
    const char* color = kPalette[r % std::size(kPalette)];
    std::string pts;
    for (const auto& row : reports[r].rows)
      if (row.error > 0) pts += fmt::format("{:.2f},{:.2f} ", px(row.n), py(row.error));
    os << fmt::format(R"(<polyline points="{}" fill="none" stroke="{}" stroke-width="2"/>)", pts, color) << '\n';
    for (const auto& row : reports[r].rows)
      if (row.error > 0)
        os << fmt::format(R"(<circle cx="{:.2f}" cy="{:.2f}" r="3" fill="{}"/>)", px(row.n), py(row.error), color)
           << '\n';
    const double ly = top + 16 + 20 * r;
    os << fmt::format(R"(<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="2"/>)", W - right + 12, ly,
                      W - right + 36, ly, color)
       << '\n';
    const std::string label = reports[r].level == kNoSmoothing ? "none" : "M=" + std::to_string(reports[r].level);
    os << fmt::format(R"(<text x="{}" y="{}" font-family="sans-serif" font-size="12">{}</text>)", W - right + 42, ly + 4,
                      label)
       << '\n';
  }
  os << "</svg>\n";
}

void write_coefficient_table(std::ostream& os, const SmoothingRecord& rec) {
  os << "location";
  for (int k = 0; k <= rec.level; ++k) os << ",c_k" << k;
  os << '\n';
  for (std::size_t j = 0; j < rec.locations.size(); ++j) {
    os << csv_number(rec.locations[j]);
    for (int k = 0; k <= rec.level; ++k) os << ',' << csv_number(rec.coefficient(static_cast<int>(j), k));
    os << '\n';
  }
}

}  // namespace nlsmooth
