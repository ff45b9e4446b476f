// SVG line charts for the per-round metrics.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>

#include "wsn/io.hpp"

namespace wsn::io {

namespace {

constexpr double kWidth = 800;
constexpr double kHeight = 500;
constexpr double kLeft = 70;
constexpr double kRight = 170;  // legend column
constexpr double kTop = 40;
constexpr double kBottom = 50;

constexpr std::array<const char*, 8> kPalette = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd",
                                                 "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};

struct Series {
  std::string label;
  std::vector<double> values;  // index 0 = round 1
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

double nice_step(double span, int target_ticks) {
  if (span <= 0) return 1;
  const double raw = span / target_ticks;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / mag;
  const double nice = f <= 1 ? 1 : f <= 2 ? 2 : f <= 5 ? 5 : 10;
  return nice * mag;
}

std::string render(const std::string& title, const std::string& y_label,
                   const std::vector<Series>& series) {
  std::size_t rounds = 0;
  double y_max = 0;
  for (const auto& s : series) {
    rounds = std::max(rounds, s.values.size());
    for (double v : s.values) y_max = std::max(y_max, v);
  }
  const double x_max = std::max<double>(static_cast<double>(rounds), 1);
  const double x_step = nice_step(x_max, 8);
  const double y_step = nice_step(std::max(y_max, 1.0), 6);
  const double x_top = std::ceil(x_max / x_step) * x_step;
  const double y_top = std::ceil(std::max(y_max, 1.0) / y_step) * y_step;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + pw * x / x_top; };
  auto py = [&](double y) { return kTop + ph * (1 - y / y_top); };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
         num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + ' ' + num(kHeight) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" +
         escape(title) + "</text>\n";

  for (double x = 0; x <= x_top + 1e-9; x += x_step) {
    svg += "<line x1=\"" + num(px(x)) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(px(x)) +
           "\" y2=\"" + num(kTop + ph) + "\" stroke=\"#e0e0e0\"/>\n";
    svg += "<text x=\"" + num(px(x)) + "\" y=\"" + num(kTop + ph + 16) +
           "\" text-anchor=\"middle\">" + label_num(x) + "</text>\n";
  }
  for (double y = 0; y <= y_top + 1e-9; y += y_step) {
    svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(py(y)) + "\" x2=\"" + num(kLeft + pw) +
           "\" y2=\"" + num(py(y)) + "\" stroke=\"#e0e0e0\"/>\n";
    svg += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(py(y) + 4) +
           "\" text-anchor=\"end\">" + label_num(y) + "</text>\n";
  }
  svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(pw) +
         "\" height=\"" + num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
  svg += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kHeight - 12) +
         "\" text-anchor=\"middle\">Round</text>\n";
  svg += "<text transform=\"translate(18 " + num(kTop + ph / 2) +
         ") rotate(-90)\" text-anchor=\"middle\">" + escape(y_label) + "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* color = kPalette[i % kPalette.size()];
    svg += "<polyline class=\"series\" data-label=\"" + escape(s.label) +
           "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t r = 0; r < s.values.size(); ++r) {
      if (r) svg += ' ';
      svg += num(px(static_cast<double>(r + 1))) + ',' + num(py(s.values[r]));
    }
    svg += "\"><title>" + escape(s.label) + "</title></polyline>\n";

    const double ly = kTop + 10 + 22 * static_cast<double>(i);
    const double lx = kLeft + pw + 16;
    svg += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(lx + 24) +
           "\" y2=\"" + num(ly) + "\" stroke=\"" + color + "\" stroke-width=\"3\"/>\n";
    svg += "<text class=\"legend\" x=\"" + num(lx + 30) + "\" y=\"" + num(ly + 4) + "\">" +
           escape(s.label) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

using Extract = std::function<double(const RoundRecord&)>;

/// Mean over runs of a per-round quantity. A finished run contributes its
/// `after_end` value (computed from its last record) for the rounds it did
/// not reach.
std::vector<double> mean_series(const std::vector<const SimSummary*>& runs, const Extract& value,
                                const std::function<double(const SimSummary&)>& after_end,
                                bool cumulative) {
  std::size_t rounds = 0;
  for (const SimSummary* s : runs) rounds = std::max(rounds, s->per_round.size());
  std::vector<double> mean(rounds, 0.0);
  for (const SimSummary* s : runs) {
    double acc = 0;
    for (std::size_t r = 0; r < rounds; ++r) {
      double v;
      if (r < s->per_round.size()) {
        acc += value(s->per_round[r]);
        v = cumulative ? acc : value(s->per_round[r]);
      } else {
        v = cumulative ? acc : after_end(*s);
      }
      mean[r] += v;
    }
  }
  for (double& v : mean) v /= static_cast<double>(runs.size());
  return mean;
}

}  // namespace

std::vector<std::filesystem::path> emit_plots(const SummaryGroups& groups,
                                              const std::filesystem::path& out_dir) {
  if (groups.empty()) throw std::invalid_argument("emit_plots: no summaries to plot");
  for (const auto& [label, runs] : groups) {
    if (runs.empty()) throw std::invalid_argument("emit_plots: empty group '" + label + "'");
  }

  auto last_alive = [](const SimSummary& s) {
    return s.per_round.empty() ? 0.0 : static_cast<double>(s.per_round.back().alive);
  };
  auto last_dead = [](const SimSummary& s) {
    return s.per_round.empty() ? 0.0 : static_cast<double>(s.per_round.back().dead);
  };
  auto zero = [](const SimSummary&) { return 0.0; };

  struct Chart {
    const char* file;
    const char* title;
    const char* y_label;
    Extract value;
    std::function<double(const SimSummary&)> after_end;
    bool cumulative;
  };
  const std::vector<Chart> charts = {
      {"alive.svg", "Alive nodes per round", "Alive nodes",
       [](const RoundRecord& r) { return static_cast<double>(r.alive); }, last_alive, false},
      {"dead.svg", "Dead nodes per round", "Dead nodes",
       [](const RoundRecord& r) { return static_cast<double>(r.dead); }, last_dead, false},
      {"ch_count.svg", "Cluster heads per round", "Cluster heads",
       [](const RoundRecord& r) { return static_cast<double>(r.ch_count); }, zero, false},
      {"packets_to_bs.svg", "Packets delivered to the base station", "Cumulative packets to BS",
       [](const RoundRecord& r) { return static_cast<double>(r.packets_to_bs); }, zero, true},
  };

  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  for (const auto& chart : charts) {
    std::vector<Series> series;
    for (const auto& [label, runs] : groups) {
      series.push_back({label, mean_series(runs, chart.value, chart.after_end, chart.cumulative)});
    }
    const auto path = out_dir / chart.file;
    write_file(path, render(chart.title, chart.y_label, series));
    written.push_back(path);
  }
  return written;
}

}  // namespace wsn::io
