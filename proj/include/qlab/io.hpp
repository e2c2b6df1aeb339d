#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace qlab {

// Locale-free float formatting with 17 significant digits (std::to_chars),
// so CSV bytes are identical across runs and machines.
std::string format_float(double v);

// Simple CSV assembly: fixed header, rows appended in a deterministic order,
// '\n' line endings, no quoting (emitted fields never contain commas).
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);
  std::string to_string() const;
  void write(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct PlotSeries {
  std::string label;
  std::string color;
  std::vector<std::pair<double, double>> points;
};

// Minimal deterministic SVG scatter plot; log-log or linear axes.
void write_svg_scatter(const std::string& path, const std::string& title,
                       const std::string& x_label, const std::string& y_label,
                       const std::vector<PlotSeries>& series, bool log_x,
                       bool log_y);

// Worker count: TSALLIS_QLAB_THREADS caps hardware concurrency (min 1).
int worker_count();

// Index-parallel loop; results must be written to per-index slots so the
// schedule never changes observable output.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace qlab
