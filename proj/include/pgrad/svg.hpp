#pragma once

#include <string>
#include <utility>
#include <vector>

namespace pgrad {

// Minimal fixed-size SVG canvas mapping a data box to pixels, y pointing up.
class SvgCanvas {
  public:
    SvgCanvas(int width, int height, double x_lo, double x_hi, double y_lo, double y_hi);

    void desc(const std::string& text);
    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& id,
                  const std::string& stroke, double width_px,
                  const std::string& extra_attrs = "");
    void line(double x0, double y0, double x1, double y1, const std::string& stroke,
              double width_px);
    void cell(double x0, double y0, double x1, double y1, const std::string& fill);
    void text(double x, double y, const std::string& s, int px,
              const std::string& fill = "#333333");
    std::string finish() const;

    double px(double x) const;
    double py(double y) const;

  private:
    int w_, h_;
    double x_lo_, x_hi_, y_lo_, y_hi_;
    std::string desc_;
    std::string body_;
};

std::string xml_escape(const std::string& s);

}  // namespace pgrad
