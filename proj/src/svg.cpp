#include "tabkit/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "tabkit/column.hpp"

namespace tabkit {

namespace {

constexpr double kMarginLeft = 64;
constexpr double kMarginRight = 20;
constexpr double kMarginTop = 44;
constexpr double kMarginBottom = 56;

constexpr const char* kPalette[] = {"#4878a8", "#e49444", "#d1605e", "#85b6b2", "#6a9f58",
                                    "#e7ca60", "#a87c9f", "#f1a2a9", "#967662", "#b8b0ac"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string xml_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string shorten(const std::string& label, std::size_t cap = 14) {
    if (label.size() <= cap) return label;
    return label.substr(0, cap - 2) + "..";
}

struct LinearScale {
    double lo = 0, hi = 1;     // domain
    double out_lo = 0, out_hi = 1;  // range (SVG px)
    double operator()(double v) const {
        if (hi == lo) return (out_lo + out_hi) / 2.0;
        return out_lo + (v - lo) / (hi - lo) * (out_hi - out_lo);
    }
};

std::vector<double> nice_ticks(double lo, double hi, int target = 5) {
    if (hi <= lo) return {lo};
    const double raw = (hi - lo) / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    double step = 10 * mag;
    if (norm < 1.5) step = mag;
    else if (norm < 3) step = 2 * mag;
    else if (norm < 7) step = 5 * mag;
    std::vector<double> ticks;
    const double first = std::ceil(lo / step);
    for (double i = first; i * step <= hi + step * 1e-9; i += 1.0) {
        ticks.push_back(i * step);
    }
    return ticks;
}

class SvgDoc {
public:
    SvgDoc(int width, int height) {
        out_ += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        out_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
                std::to_string(width) + "\" height=\"" + std::to_string(height) +
                "\" viewBox=\"0 0 " + std::to_string(width) + " " + std::to_string(height) +
                "\">\n";
        rect(0, 0, width, height, "#ffffff", "");
    }

    void rect(double x, double y, double w, double h, const std::string& fill,
              const std::string& cls, const std::string& stroke = "") {
        out_ += "<rect";
        if (!cls.empty()) out_ += " class=\"" + cls + "\"";
        out_ += " x=\"" + px(x) + "\" y=\"" + px(y) + "\" width=\"" + px(w) + "\" height=\"" +
                px(h) + "\" fill=\"" + fill + "\"";
        if (!stroke.empty()) out_ += " stroke=\"" + stroke + "\"";
        out_ += "/>\n";
    }

    void line(double x1, double y1, double x2, double y2, const std::string& stroke,
              double stroke_width = 1.0) {
        out_ += "<line x1=\"" + px(x1) + "\" y1=\"" + px(y1) + "\" x2=\"" + px(x2) + "\" y2=\"" +
                px(y2) + "\" stroke=\"" + stroke + "\" stroke-width=\"" + px(stroke_width) +
                "\"/>\n";
    }

    void text(double x, double y, const std::string& content, const std::string& anchor,
              int size = 11, const std::string& extra = "") {
        out_ += "<text x=\"" + px(x) + "\" y=\"" + px(y) + "\" font-family=\"sans-serif\"" +
                " font-size=\"" + std::to_string(size) + "\" text-anchor=\"" + anchor + "\"";
        if (!extra.empty()) out_ += " " + extra;
        out_ += ">" + xml_escape(content) + "</text>\n";
    }

    void circle(double cx, double cy, double r, const std::string& fill, const std::string& cls) {
        out_ += "<circle";
        if (!cls.empty()) out_ += " class=\"" + cls + "\"";
        out_ += " cx=\"" + px(cx) + "\" cy=\"" + px(cy) + "\" r=\"" + px(r) + "\" fill=\"" + fill +
                "\"/>\n";
    }

    void polyline(const std::vector<std::pair<double, double>>& points, const std::string& stroke,
                  const std::string& cls) {
        out_ += "<polyline";
        if (!cls.empty()) out_ += " class=\"" + cls + "\"";
        out_ += " fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (i > 0) out_ += " ";
            out_ += px(points[i].first) + "," + px(points[i].second);
        }
        out_ += "\"/>\n";
    }

    std::string finish() {
        out_ += "</svg>\n";
        return std::move(out_);
    }

private:
    std::string out_;
};

struct Layout {
    double x0, x1, y0, y1;  // plot area; y0 is the top edge
    explicit Layout(const PlotSpec& spec)
        : x0(kMarginLeft),
          x1(spec.width - kMarginRight),
          y0(kMarginTop),
          y1(spec.height - kMarginBottom) {}
    double plot_w() const { return x1 - x0; }
};

void draw_frame(SvgDoc& doc, const PlotSpec& spec, const Layout& area) {
    doc.text(spec.width / 2.0, 22, spec.title, "middle", 14, "font-weight=\"bold\"");
    doc.line(area.x0, area.y1, area.x1, area.y1, "#333333");  // x axis
    doc.line(area.x0, area.y0, area.x0, area.y1, "#333333");  // y axis
    if (!spec.x_label.empty()) {
        doc.text((area.x0 + area.x1) / 2.0, spec.height - 10.0, spec.x_label, "middle", 12);
    }
    if (!spec.y_label.empty()) {
        doc.text(14, (area.y0 + area.y1) / 2.0, spec.y_label, "middle", 12,
                 "transform=\"rotate(-90 14 " + px((area.y0 + area.y1) / 2.0) + ")\"");
    }
}

void draw_y_axis(SvgDoc& doc, const Layout& area, const LinearScale& scale) {
    for (double tick : nice_ticks(scale.lo, scale.hi)) {
        const double y = scale(tick);
        doc.line(area.x0 - 4, y, area.x0, y, "#333333");
        doc.line(area.x0, y, area.x1, y, "#eeeeee");
        doc.text(area.x0 - 7, y + 3.5, tick_label(tick), "end", 10);
    }
}

void render_count_bar(SvgDoc& doc, const PlotSpec& spec, const Layout& area) {
    const auto& series = std::get<BarSeries>(spec.series);
    double max_h = 0;
    for (double h : series.heights) max_h = std::max(max_h, h);
    LinearScale y{0, max_h > 0 ? max_h * 1.05 : 1.0, area.y1, area.y0};
    draw_y_axis(doc, area, y);
    const std::size_t n = series.labels.size();
    if (n == 0) return;
    const double band = area.plot_w() / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double h = series.heights[i];
        const double x = area.x0 + band * (static_cast<double>(i) + 0.1);
        doc.rect(x, y(h), band * 0.8, area.y1 - y(h), kPalette[0], "bar");
        doc.text(area.x0 + band * (static_cast<double>(i) + 0.5), area.y1 + 14,
                 shorten(series.labels[i]), "middle", 10);
    }
}

void render_grouped_bar(SvgDoc& doc, const PlotSpec& spec, const Layout& area) {
    const auto& series = std::get<GroupedBarSeries>(spec.series);
    double max_h = 0;
    for (const auto& row : series.heights) {
        for (double h : row) max_h = std::max(max_h, h);
    }
    LinearScale y{0, max_h > 0 ? max_h * 1.05 : 1.0, area.y1, area.y0};
    draw_y_axis(doc, area, y);
    const std::size_t groups = series.group_labels.size();
    const std::size_t k = series.series_names.size();
    if (groups == 0 || k == 0) return;
    const double band = area.plot_w() / static_cast<double>(groups);
    const double sub = band * 0.8 / static_cast<double>(k);
    for (std::size_t g = 0; g < groups; ++g) {
        for (std::size_t s = 0; s < k; ++s) {
            const double h = series.heights[s][g];
            const double x = area.x0 + band * (static_cast<double>(g) + 0.1) +
                             sub * static_cast<double>(s);
            doc.rect(x, y(h), sub, area.y1 - y(h), kPalette[s % kPaletteSize], "bar");
        }
        doc.text(area.x0 + band * (static_cast<double>(g) + 0.5), area.y1 + 14,
                 shorten(series.group_labels[g]), "middle", 10);
    }
    // series key
    double ky = area.y0 - 8;
    double kx = area.x1 - 14;
    for (std::size_t s = k; s-- > 0;) {
        doc.text(kx, ky, shorten(series.series_names[s], 10), "end", 10);
        doc.rect(kx + 4, ky - 8, 9, 9, kPalette[s % kPaletteSize], "key");
        kx -= 14 + 7.0 * static_cast<double>(shorten(series.series_names[s], 10).size());
    }
}

void render_histogram(SvgDoc& doc, const PlotSpec& spec, const Layout& area) {
    const auto& series = std::get<HistogramSeries>(spec.series);
    double max_c = 0;
    for (std::size_t c : series.counts) max_c = std::max(max_c, static_cast<double>(c));
    LinearScale y{0, max_c > 0 ? max_c * 1.05 : 1.0, area.y1, area.y0};
    LinearScale x{series.edges.front(), series.edges.back(), area.x0, area.x1};
    draw_y_axis(doc, area, y);
    for (std::size_t i = 0; i < series.counts.size(); ++i) {
        const double h = static_cast<double>(series.counts[i]);
        doc.rect(x(series.edges[i]), y(h), x(series.edges[i + 1]) - x(series.edges[i]),
                 area.y1 - y(h), kPalette[0], "bar", "#ffffff");
    }
    for (double tick : nice_ticks(x.lo, x.hi)) {
        doc.line(x(tick), area.y1, x(tick), area.y1 + 4, "#333333");
        doc.text(x(tick), area.y1 + 15, tick_label(tick), "middle", 10);
    }
}

void render_box(SvgDoc& doc, const PlotSpec& spec, const Layout& area) {
    const auto& stats = std::get<BoxStats>(spec.series);
    double lo = stats.whisker_low, hi = stats.whisker_high;
    for (double v : stats.outliers) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double pad = (hi - lo) > 0 ? (hi - lo) * 0.08 : std::max(std::abs(lo) * 0.1, 1.0);
    LinearScale y{lo - pad, hi + pad, area.y1, area.y0};
    draw_y_axis(doc, area, y);

    const double cx = (area.x0 + area.x1) / 2.0;
    const double half = area.plot_w() * 0.18;
    doc.line(cx, y(stats.whisker_low), cx, y(stats.q25), "#333333");
    doc.line(cx, y(stats.q75), cx, y(stats.whisker_high), "#333333");
    doc.line(cx - half * 0.6, y(stats.whisker_low), cx + half * 0.6, y(stats.whisker_low),
             "#333333");
    doc.line(cx - half * 0.6, y(stats.whisker_high), cx + half * 0.6, y(stats.whisker_high),
             "#333333");
    doc.rect(cx - half, y(stats.q75), half * 2, y(stats.q25) - y(stats.q75), kPalette[3], "boxbody",
             "#333333");
    doc.line(cx - half, y(stats.q50), cx + half, y(stats.q50), "#333333", 2.0);
    for (double v : stats.outliers) {
        doc.circle(cx, y(v), 2.5, kPalette[2], "outlier");
    }
}

void render_line(SvgDoc& doc, const PlotSpec& spec, const Layout& area) {
    const auto& series = std::get<LineSeries>(spec.series);
    if (series.x.empty()) return;
    double ylo = series.y.front(), yhi = series.y.front();
    for (double v : series.y) {
        ylo = std::min(ylo, v);
        yhi = std::max(yhi, v);
    }
    const double pad = (yhi - ylo) > 0 ? (yhi - ylo) * 0.08 : std::max(std::abs(ylo) * 0.1, 1.0);
    LinearScale y{ylo - pad, yhi + pad, area.y1, area.y0};
    const double xlo = static_cast<double>(series.x.front().epoch_s);
    const double xhi = static_cast<double>(series.x.back().epoch_s);
    LinearScale x{xlo, xhi == xlo ? xlo + 86400.0 : xhi, area.x0, area.x1};
    draw_y_axis(doc, area, y);

    std::vector<std::pair<double, double>> points;
    points.reserve(series.x.size());
    for (std::size_t i = 0; i < series.x.size(); ++i) {
        points.emplace_back(x(static_cast<double>(series.x[i].epoch_s)), y(series.y[i]));
    }
    doc.polyline(points, kPalette[0], "series");
    for (const auto& [px_, py_] : points) doc.circle(px_, py_, 2.0, kPalette[0], "point");

    // Up to six date labels, evenly spaced across the buckets.
    const std::size_t n = series.x.size();
    const std::size_t step = std::max<std::size_t>(1, (n + 5) / 6);
    for (std::size_t i = 0; i < n; i += step) {
        const double tx = x(static_cast<double>(series.x[i].epoch_s));
        doc.line(tx, area.y1, tx, area.y1 + 4, "#333333");
        doc.text(tx, area.y1 + 15, format_date(series.x[i]), "middle", 9);
    }
}

void render_heatmap(SvgDoc& doc, const PlotSpec& spec, const Layout& area) {
    const auto& series = std::get<HeatmapSeries>(spec.series);
    const std::size_t rows = series.row_labels.size();
    const std::size_t cols = series.col_labels.size();
    if (rows == 0 || cols == 0) return;
    double max_v = 0;
    for (const auto& row : series.cells) {
        for (double v : row) max_v = std::max(max_v, std::abs(v));
    }
    const double cw = area.plot_w() / static_cast<double>(cols);
    const double ch = (area.y1 - area.y0) / static_cast<double>(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const double v = series.cells[r][c];
            const double t = max_v > 0 ? std::abs(v) / max_v : 0.0;
            // white -> #4878a8
            const int red = static_cast<int>(std::lround(255 + (0x48 - 255) * t));
            const int green = static_cast<int>(std::lround(255 + (0x78 - 255) * t));
            const int blue = static_cast<int>(std::lround(255 + (0xa8 - 255) * t));
            char color[8];
            std::snprintf(color, sizeof(color), "#%02x%02x%02x", red, green, blue);
            const double x = area.x0 + cw * static_cast<double>(c);
            const double y = area.y0 + ch * static_cast<double>(r);
            doc.rect(x, y, cw, ch, color, "cell", "#cccccc");
            doc.text(x + cw / 2, y + ch / 2 + 4, format_double(v), "middle", 11,
                     t > 0.6 ? "fill=\"#ffffff\"" : "");
        }
        doc.text(area.x0 - 7, area.y0 + ch * (static_cast<double>(r) + 0.5) + 3.5,
                 shorten(series.row_labels[r]), "end", 10);
    }
    for (std::size_t c = 0; c < cols; ++c) {
        doc.text(area.x0 + cw * (static_cast<double>(c) + 0.5), area.y0 - 6,
                 shorten(series.col_labels[c]), "middle", 10);
    }
}

}  // namespace

std::string render_svg(const PlotSpec& spec) {
    SvgDoc doc(spec.width, spec.height);
    Layout area(spec);
    if (spec.kind != PlotKind::Heatmap) {
        draw_frame(doc, spec, area);
    } else {
        doc.text(spec.width / 2.0, 22, spec.title, "middle", 14, "font-weight=\"bold\"");
    }
    switch (spec.kind) {
        case PlotKind::CountBar: render_count_bar(doc, spec, area); break;
        case PlotKind::GroupedBar: render_grouped_bar(doc, spec, area); break;
        case PlotKind::Histogram: render_histogram(doc, spec, area); break;
        case PlotKind::Box: render_box(doc, spec, area); break;
        case PlotKind::Line: render_line(doc, spec, area); break;
        case PlotKind::Heatmap: render_heatmap(doc, spec, area); break;
    }
    return doc.finish();
}

}  // namespace tabkit
