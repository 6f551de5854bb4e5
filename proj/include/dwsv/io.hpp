// CSV / JSON / SVG emitters for curve data. All numeric output is
// locale-independent; CSV and JSON carry 20 significant digits, SVG uses a
// fixed decimal format. Output is deterministic for a fixed input.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dwsv/curve.hpp"
#include "dwsv/params.hpp"

namespace dwsv {

std::string format_real(const Real& x, int sig_digits = 20);

struct CurveOutput {
    Real delta;
    Real t;
    SpectralParams params;
    std::vector<CurvePortion> portions;  // 1 (first) or 4 (all)
    Real contact_x_axis;                 // kappa on the x-axis
    Real contact_y_axis;                 // contact height on the y-axis
};

// Header "xi,x,y"; portions concatenated in order.
void write_curve_csv(std::ostream& os, const CurveOutput& c);

// {"params":{...},"contact":{...},"points":[{"xi":..,"x":..,"y":..},...]}
void write_curve_json(std::ostream& os, const CurveOutput& c);

// Header "delta,regime,xi,x,y".
void write_sweep_csv(std::ostream& os, const std::vector<CurveOutput>& cs);

// {"curves":[ ... ]}
void write_sweep_json(std::ostream& os, const std::vector<CurveOutput>& cs);

// Self-contained SVG: unit square with 5% margin, one polyline per portion,
// contact points marked on the generating portion.
void write_svg(std::ostream& os, const std::vector<CurveOutput>& cs);

} // namespace dwsv
