#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ldc {

// Minimal SVG emission for report plots; no external plotting dependency.
std::string svg_histogram(const std::vector<double>& values, int bins, const std::string& title,
                          const std::string& x_label);

std::string svg_scatter(const std::vector<std::pair<double, double>>& points,
                        const std::string& title, const std::string& x_label,
                        const std::string& y_label, bool log_scale = false);

}  // namespace ldc
