#include "pgrad/svg.hpp"

#include <cstdio>

namespace pgrad {

namespace {

constexpr int kMargin = 42;

std::string fmt_px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::string xml_escape(const std::string& s) {
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

SvgCanvas::SvgCanvas(int width, int height, double x_lo, double x_hi, double y_lo,
                     double y_hi)
    : w_(width), h_(height), x_lo_(x_lo), x_hi_(x_hi), y_lo_(y_lo), y_hi_(y_hi) {}

double SvgCanvas::px(double x) const {
    return kMargin + (x - x_lo_) / (x_hi_ - x_lo_) * (w_ - 2 * kMargin);
}

double SvgCanvas::py(double y) const {
    return h_ - kMargin - (y - y_lo_) / (y_hi_ - y_lo_) * (h_ - 2 * kMargin);
}

void SvgCanvas::desc(const std::string& text) { desc_ = text; }

void SvgCanvas::polyline(const std::vector<std::pair<double, double>>& pts,
                         const std::string& id, const std::string& stroke, double width_px,
                         const std::string& extra_attrs) {
    if (pts.size() < 2) return;
    body_ += "<polyline id=\"" + xml_escape(id) + "\" fill=\"none\" stroke=\"" + stroke +
             "\" stroke-width=\"" + fmt_px(width_px) + "\"";
    if (!extra_attrs.empty()) {
        body_ += ' ';
        body_ += extra_attrs;
    }
    body_ += " points=\"";
    for (std::size_t k = 0; k < pts.size(); ++k) {
        if (k) body_ += ' ';
        body_ += fmt_px(px(pts[k].first));
        body_ += ',';
        body_ += fmt_px(py(pts[k].second));
    }
    body_ += "\"/>\n";
}

void SvgCanvas::line(double x0, double y0, double x1, double y1, const std::string& stroke,
                     double width_px) {
    body_ += "<line x1=\"" + fmt_px(px(x0)) + "\" y1=\"" + fmt_px(py(y0)) + "\" x2=\"" +
             fmt_px(px(x1)) + "\" y2=\"" + fmt_px(py(y1)) + "\" stroke=\"" + stroke +
             "\" stroke-width=\"" + fmt_px(width_px) + "\"/>\n";
}

void SvgCanvas::cell(double x0, double y0, double x1, double y1, const std::string& fill) {
    double a = px(x0), b = py(y1);
    body_ += "<rect x=\"" + fmt_px(a) + "\" y=\"" + fmt_px(b) + "\" width=\"" +
             fmt_px(px(x1) - a) + "\" height=\"" + fmt_px(py(y0) - b) + "\" fill=\"" + fill +
             "\"/>\n";
}

void SvgCanvas::text(double x, double y, const std::string& s, int px_size,
                     const std::string& fill) {
    body_ += "<text x=\"" + fmt_px(px(x)) + "\" y=\"" + fmt_px(py(y)) +
             "\" font-family=\"sans-serif\" font-size=\"" + std::to_string(px_size) +
             "\" fill=\"" + fill + "\">" + xml_escape(s) + "</text>\n";
}

std::string SvgCanvas::finish() const {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(w_) +
           "\" height=\"" + std::to_string(h_) + "\" viewBox=\"0 0 " + std::to_string(w_) +
           " " + std::to_string(h_) + "\">\n";
    if (!desc_.empty()) out += "<desc>" + xml_escape(desc_) + "</desc>\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(w_) + "\" height=\"" +
           std::to_string(h_) + "\" fill=\"#ffffff\"/>\n";
    out += body_;
    out += "</svg>\n";
    return out;
}

}  // namespace pgrad
