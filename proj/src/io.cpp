#include "dwsv/io.hpp"

#include <cstdio>
#include <ostream>

namespace dwsv {

namespace {

// Fixed-point double formatting for SVG coordinates.
std::string fixed(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    for (char* c = buf; *c; ++c)
        if (*c == ',') *c = '.';
    return buf;
}

const char* kPalette[] = {"#1f6f8b", "#c0392b", "#2e8b57", "#8e44ad",
                          "#d35400", "#16748f", "#7f8c1f", "#34495e"};

} // namespace

std::string format_real(const Real& x, int sig_digits) { return x.str(sig_digits); }

void write_curve_csv(std::ostream& os, const CurveOutput& c) {
    os << "xi,x,y\n";
    for (const CurvePortion& portion : c.portions)
        for (const CurvePoint& p : portion.points)
            os << format_real(p.xi) << ',' << format_real(p.x) << ',' << format_real(p.y) << '\n';
}

namespace {

void json_curve_object(std::ostream& os, const CurveOutput& c) {
    os << "{\n  \"params\": {\"delta\": " << format_real(c.delta)
       << ", \"t\": " << format_real(c.t)
       << ", \"lambda\": " << format_real(c.params.lambda())
       << ", \"eta\": " << format_real(c.params.eta())
       << ", \"regime\": \"" << regime_name(c.params.regime()) << "\"},\n"
       << "  \"contact\": {\"x_axis\": " << format_real(c.contact_x_axis)
       << ", \"y_axis\": " << format_real(c.contact_y_axis) << "},\n"
       << "  \"points\": [\n";
    bool first = true;
    for (const CurvePortion& portion : c.portions) {
        for (const CurvePoint& p : portion.points) {
            if (!first) os << ",\n";
            first = false;
            os << "    {\"xi\": " << format_real(p.xi) << ", \"x\": " << format_real(p.x)
               << ", \"y\": " << format_real(p.y) << "}";
        }
    }
    os << "\n  ]\n}";
}

} // namespace

void write_curve_json(std::ostream& os, const CurveOutput& c) {
    json_curve_object(os, c);
    os << "\n";
}

void write_sweep_csv(std::ostream& os, const std::vector<CurveOutput>& cs) {
    os << "delta,regime,xi,x,y\n";
    for (const CurveOutput& c : cs) {
        std::string delta = format_real(c.delta);
        std::string regime = regime_name(c.params.regime());
        for (const CurvePortion& portion : c.portions)
            for (const CurvePoint& p : portion.points)
                os << delta << ',' << regime << ',' << format_real(p.xi) << ','
                   << format_real(p.x) << ',' << format_real(p.y) << '\n';
    }
}

void write_sweep_json(std::ostream& os, const std::vector<CurveOutput>& cs) {
    os << "{\"curves\": [\n";
    for (std::size_t i = 0; i < cs.size(); ++i) {
        json_curve_object(os, cs[i]);
        if (i + 1 < cs.size()) os << ",";
        os << "\n";
    }
    os << "]}\n";
}

void write_svg(std::ostream& os, const std::vector<CurveOutput>& cs) {
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-0.05 -0.05 1.1 1.1\" "
          "width=\"660\" height=\"660\">\n"
       << "<rect x=\"0\" y=\"0\" width=\"1\" height=\"1\" fill=\"none\" stroke=\"#404040\" "
          "stroke-width=\"0.002\"/>\n";
    int color_index = 0;
    for (const CurveOutput& c : cs) {
        const char* color = kPalette[color_index % 8];
        ++color_index;
        os << "<g stroke=\"" << color << "\" fill=\"none\" stroke-width=\"0.004\">\n";
        for (const CurvePortion& portion : c.portions) {
            os << "<polyline points=\"";
            bool first = true;
            for (const CurvePoint& p : portion.points) {
                if (!first) os << ' ';
                first = false;
                // SVG y axis points down; the unit square is flipped.
                os << fixed(p.x.to_double()) << ',' << fixed(1.0 - p.y.to_double());
            }
            os << "\"/>\n";
        }
        os << "</g>\n";
        double cx = c.contact_x_axis.to_double();
        double cy = c.contact_y_axis.to_double();
        os << "<g fill=\"" << color << "\">\n"
           << "<circle cx=\"" << fixed(cx) << "\" cy=\"1\" r=\"0.008\"/>\n"
           << "<circle cx=\"0\" cy=\"" << fixed(1.0 - cy) << "\" r=\"0.008\"/>\n";
        if (c.portions.size() > 1) {
            os << "<circle cx=\"" << fixed(1.0 - cx) << "\" cy=\"0\" r=\"0.008\"/>\n"
               << "<circle cx=\"1\" cy=\"" << fixed(cy) << "\" r=\"0.008\"/>\n";
        }
        os << "</g>\n";
    }
    os << "</svg>\n";
}

} // namespace dwsv
