#pragma once

// Minimal deterministic SVG line charts: polylines, shaded bands, reference
// lines, axes with ticks and a legend. Output depends only on the data, so
// charts can be diffed byte for byte.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace snrshrink::svg {

// Fixed-point text independent of the C locale.
inline std::string num(double v, int decimals = 2) {
    if (v == 0.0) v = 0.0;  // drop negative zero
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, decimals);
    std::string out(buf, res.ptr);
    if (out.find_first_not_of("-0.") == std::string::npos) out = decimals > 0 ? "0." + std::string(decimals, '0') : "0";
    return out;
}

inline std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
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

struct Line {
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f77b4";
    std::string label;
    bool dashed = false;
    double width = 2.0;
};

struct Band {
    std::vector<double> x;
    std::vector<double> lower;
    std::vector<double> upper;
    std::string color = "#1f77b4";
    double opacity = 0.25;
    std::string label;
};

// "Nice" tick positions covering [lo, hi].
inline std::vector<double> ticks(double lo, double hi, int target = 6) {
    if (!(hi > lo)) return {lo};
    const double raw = (hi - lo) / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    const double step = (norm < 1.5 ? 1.0 : norm < 3.0 ? 2.0 : norm < 7.0 ? 5.0 : 10.0) * mag;
    std::vector<double> out;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) {
        out.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
    }
    return out;
}

class Chart {
public:
    Chart(std::string title, std::string x_label, std::string y_label)
        : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

    Chart& size(double width, double height) {
        width_ = width;
        height_ = height;
        return *this;
    }
    Chart& y_range(double lo, double hi) {
        y_range_ = {lo, hi};
        return *this;
    }
    Chart& add(Line line) {
        lines_.push_back(std::move(line));
        return *this;
    }
    Chart& add(Band band) {
        bands_.push_back(std::move(band));
        return *this;
    }
    Chart& horizontal(double y, std::string color = "#888888") {
        hlines_.emplace_back(y, std::move(color));
        return *this;
    }

    std::string render() const {
        double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
        double y_lo = x_lo, y_hi = -x_lo;
        auto grow = [](double& lo, double& hi, double v) {
            if (std::isfinite(v)) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        };
        for (const auto& l : lines_) {
            for (double v : l.x) grow(x_lo, x_hi, v);
            for (double v : l.y) grow(y_lo, y_hi, v);
        }
        for (const auto& b : bands_) {
            for (double v : b.x) grow(x_lo, x_hi, v);
            for (double v : b.lower) grow(y_lo, y_hi, v);
            for (double v : b.upper) grow(y_lo, y_hi, v);
        }
        for (const auto& h : hlines_) grow(y_lo, y_hi, h.first);
        if (!std::isfinite(x_lo)) x_lo = 0.0, x_hi = 1.0;
        if (!std::isfinite(y_lo)) y_lo = 0.0, y_hi = 1.0;
        if (y_range_) std::tie(y_lo, y_hi) = *y_range_;
        if (x_hi == x_lo) x_hi = x_lo + 1.0;
        if (y_hi == y_lo) y_hi = y_lo + 1.0;

        const double left = 70, right = 20, top = 40, bottom = 55;
        const double pw = width_ - left - right;
        const double ph = height_ - top - bottom;
        auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * pw; };
        auto py = [&](double y) { return top + (1.0 - (std::clamp(y, y_lo, y_hi) - y_lo) / (y_hi - y_lo)) * ph; };

        std::string s;
        s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width_, 0) + "\" height=\"" + num(height_, 0) +
             "\" viewBox=\"0 0 " + num(width_, 0) + " " + num(height_, 0) + "\">\n";
        s += "<rect x=\"0\" y=\"0\" width=\"" + num(width_, 0) + "\" height=\"" + num(height_, 0) +
             "\" fill=\"white\"/>\n";
        s += "<text x=\"" + num(width_ / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
             "font-size=\"15\">" + escape(title_) + "</text>\n";

        // axes and ticks
        s += "<g stroke=\"#cccccc\" stroke-width=\"1\">\n";
        for (double t : ticks(x_lo, x_hi)) {
            s += "<line x1=\"" + num(px(t)) + "\" y1=\"" + num(top) + "\" x2=\"" + num(px(t)) + "\" y2=\"" +
                 num(top + ph) + "\"/>\n";
        }
        for (double t : ticks(y_lo, y_hi)) {
            s += "<line x1=\"" + num(left) + "\" y1=\"" + num(py(t)) + "\" x2=\"" + num(left + pw) + "\" y2=\"" +
                 num(py(t)) + "\"/>\n";
        }
        s += "</g>\n";
        s += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
             "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
        s += "<g font-family=\"sans-serif\" font-size=\"11\">\n";
        for (double t : ticks(x_lo, x_hi)) {
            s += "<text x=\"" + num(px(t)) + "\" y=\"" + num(top + ph + 16) + "\" text-anchor=\"middle\">" +
                 tick_label(t) + "</text>\n";
        }
        for (double t : ticks(y_lo, y_hi)) {
            s += "<text x=\"" + num(left - 6) + "\" y=\"" + num(py(t) + 4) + "\" text-anchor=\"end\">" +
                 tick_label(t) + "</text>\n";
        }
        s += "</g>\n";
        s += "<text x=\"" + num(left + pw / 2) + "\" y=\"" + num(height_ - 12) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" + escape(x_label_) + "</text>\n";
        s += "<text x=\"18\" y=\"" + num(top + ph / 2) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
             "font-size=\"13\" transform=\"rotate(-90 18 " + num(top + ph / 2) + ")\">" + escape(y_label_) +
             "</text>\n";

        for (const auto& b : bands_) {
            std::string pts;
            for (std::size_t i = 0; i < b.x.size(); ++i) pts += num(px(b.x[i])) + "," + num(py(b.upper[i])) + " ";
            for (std::size_t i = b.x.size(); i-- > 0;) pts += num(px(b.x[i])) + "," + num(py(b.lower[i])) + " ";
            if (!pts.empty()) pts.pop_back();
            s += "<polygon points=\"" + pts + "\" fill=\"" + b.color + "\" fill-opacity=\"" + num(b.opacity) +
                 "\" stroke=\"none\"/>\n";
        }
        for (const auto& h : hlines_) {
            s += "<line x1=\"" + num(left) + "\" y1=\"" + num(py(h.first)) + "\" x2=\"" + num(left + pw) + "\" y2=\"" +
                 num(py(h.first)) + "\" stroke=\"" + h.second + "\" stroke-width=\"1\" stroke-dasharray=\"2,3\"/>\n";
        }
        for (const auto& l : lines_) {
            std::string pts;
            for (std::size_t i = 0; i < l.x.size(); ++i) {
                if (!std::isfinite(l.y[i])) continue;
                pts += num(px(l.x[i])) + "," + num(py(l.y[i])) + " ";
            }
            if (!pts.empty()) pts.pop_back();
            s += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + l.color + "\" stroke-width=\"" +
                 num(l.width, 1) + "\"" + (l.dashed ? " stroke-dasharray=\"6,4\"" : "") + "/>\n";
        }

        // legend
        double ly = top + 14;
        s += "<g font-family=\"sans-serif\" font-size=\"11\">\n";
        for (const auto& b : bands_) {
            if (b.label.empty()) continue;
            s += "<rect x=\"" + num(left + 10) + "\" y=\"" + num(ly - 8) + "\" width=\"18\" height=\"10\" fill=\"" +
                 b.color + "\" fill-opacity=\"" + num(b.opacity) + "\"/>\n";
            s += "<text x=\"" + num(left + 34) + "\" y=\"" + num(ly + 1) + "\">" + escape(b.label) + "</text>\n";
            ly += 16;
        }
        for (const auto& l : lines_) {
            if (l.label.empty()) continue;
            s += "<line x1=\"" + num(left + 10) + "\" y1=\"" + num(ly - 3) + "\" x2=\"" + num(left + 28) + "\" y2=\"" +
                 num(ly - 3) + "\" stroke=\"" + l.color + "\" stroke-width=\"2\"" +
                 (l.dashed ? " stroke-dasharray=\"6,4\"" : "") + "/>\n";
            s += "<text x=\"" + num(left + 34) + "\" y=\"" + num(ly + 1) + "\">" + escape(l.label) + "</text>\n";
            ly += 16;
        }
        s += "</g>\n</svg>\n";
        return s;
    }

private:
    static std::string tick_label(double t) {
        std::string out = num(t, 3);
        while (!out.empty() && out.back() == '0') out.pop_back();
        if (!out.empty() && out.back() == '.') out.pop_back();
        return out;
    }

    std::string title_;
    std::string x_label_;
    std::string y_label_;
    double width_ = 720;
    double height_ = 460;
    std::optional<std::pair<double, double>> y_range_;
    std::vector<Line> lines_;
    std::vector<Band> bands_;
    std::vector<std::pair<double, std::string>> hlines_;
};

// Stacks rendered charts of equal width into one document, top to bottom.
inline std::string stack_vertical(const std::vector<std::string>& charts, double width, double height_each) {
    const double total = height_each * static_cast<double>(charts.size());
    std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width, 0) + "\" height=\"" + num(total, 0) +
         "\" viewBox=\"0 0 " + num(width, 0) + " " + num(total, 0) + "\">\n";
    for (std::size_t i = 0; i < charts.size(); ++i) {
        std::string body = charts[i];
        if (body.starts_with("<?xml")) body.erase(0, body.find('\n') + 1);
        // nested <svg> takes its own y offset
        body.replace(0, 4, "<svg y=\"" + num(height_each * static_cast<double>(i), 0) + "\"");
        s += body;
    }
    s += "</svg>\n";
    return s;
}

}  // namespace snrshrink::svg
