#include "ldc/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ldc {

namespace {

constexpr int kWidth = 640, kHeight = 420;
constexpr int kMarginLeft = 60, kMarginRight = 20, kMarginTop = 40, kMarginBottom = 50;

std::string header(const std::string& title) {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
    return out.str();
}

std::string axes(const std::string& x_label, const std::string& y_label) {
    std::ostringstream out;
    int x0 = kMarginLeft, y0 = kHeight - kMarginBottom, x1 = kWidth - kMarginRight, y1 = kMarginTop;
    out << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1 << "\" y2=\"" << y0
        << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 << "\" y2=\"" << y1
        << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << x_label
        << "</text>\n"
        << "<text x=\"16\" y=\"" << (y0 + y1) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        << "transform=\"rotate(-90 16 " << (y0 + y1) / 2 << ")\">" << y_label << "</text>\n";
    return out.str();
}

}  // namespace

std::string svg_histogram(const std::vector<double>& values, int bins, const std::string& title,
                          const std::string& x_label) {
    std::ostringstream out;
    out << header(title) << axes(x_label, "count");
    if (!values.empty() && bins > 0) {
        double lo = *std::min_element(values.begin(), values.end());
        double hi = *std::max_element(values.begin(), values.end());
        if (hi <= lo) hi = lo + 1;
        std::vector<int> counts(static_cast<std::size_t>(bins), 0);
        for (double v : values) {
            int b = static_cast<int>((v - lo) / (hi - lo) * bins);
            ++counts[static_cast<std::size_t>(std::clamp(b, 0, bins - 1))];
        }
        int peak = *std::max_element(counts.begin(), counts.end());
        double plot_w = kWidth - kMarginLeft - kMarginRight;
        double plot_h = kHeight - kMarginTop - kMarginBottom;
        for (int b = 0; b < bins; ++b) {
            double h = plot_h * counts[static_cast<std::size_t>(b)] / std::max(1, peak);
            double x = kMarginLeft + plot_w * b / bins;
            out << "<rect x=\"" << x << "\" y=\"" << kHeight - kMarginBottom - h << "\" width=\""
                << plot_w / bins - 1 << "\" height=\"" << h << "\" fill=\"steelblue\"/>\n";
        }
        out << "<text x=\"" << kMarginLeft << "\" y=\"" << kHeight - kMarginBottom + 16
            << "\" font-family=\"sans-serif\" font-size=\"10\">" << lo << "</text>\n"
            << "<text x=\"" << kWidth - kMarginRight << "\" y=\"" << kHeight - kMarginBottom + 16
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << hi
            << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string svg_scatter(const std::vector<std::pair<double, double>>& points,
                        const std::string& title, const std::string& x_label,
                        const std::string& y_label, bool log_scale) {
    std::ostringstream out;
    out << header(title) << axes(x_label, y_label);
    if (!points.empty()) {
        auto transform = [&](double v) { return log_scale ? std::log10(std::max(v, 1e-12)) : v; };
        double xlo = transform(points.front().first), xhi = xlo;
        double ylo = transform(points.front().second), yhi = ylo;
        for (const auto& [x, y] : points) {
            xlo = std::min(xlo, transform(x)), xhi = std::max(xhi, transform(x));
            ylo = std::min(ylo, transform(y)), yhi = std::max(yhi, transform(y));
        }
        if (xhi <= xlo) xhi = xlo + 1;
        if (yhi <= ylo) yhi = ylo + 1;
        double plot_w = kWidth - kMarginLeft - kMarginRight;
        double plot_h = kHeight - kMarginTop - kMarginBottom;
        for (const auto& [x, y] : points) {
            double px = kMarginLeft + plot_w * (transform(x) - xlo) / (xhi - xlo);
            double py = kHeight - kMarginBottom - plot_h * (transform(y) - ylo) / (yhi - ylo);
            out << "<circle cx=\"" << px << "\" cy=\"" << py
                << "\" r=\"3\" fill=\"firebrick\" fill-opacity=\"0.7\"/>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace ldc
