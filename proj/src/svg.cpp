#include "vorwave/svg.hpp"
#include "vorwave/errors.hpp"
#include "vorwave/exporters.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace vorwave {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

struct Canvas {
    double w, h, margin;
    double x0, x1, y0, y1; // data window
    double sx(double x) const { return margin + (x - x0) / (x1 - x0) * (w - 2 * margin); }
    double sy(double y) const { return h - margin - (y - y0) / (y1 - y0) * (h - 2 * margin); }
};

void polyline(std::ofstream& out, const Canvas& cv, const std::vector<double>& x,
              const std::vector<double>& y, const char* cls, const char* color) {
    out << "<polyline class=\"" << cls << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1\" points=\"";
    for (size_t k = 0; k < x.size(); ++k) {
        if (k) out << ' ';
        out << num(cv.sx(x[k])) << ',' << num(cv.sy(y[k]));
    }
    out << "\"/>\n";
}

} // namespace

void write_streamline_figure(const std::string& path, const FieldSampler& fs, int n_levels,
                             int arrows_x, int arrows_y) {
    const HodographGrid& grid = fs.grid();
    const double d = fs.frame().d;
    double eta_max = 0.0;
    for (double e : fs.frame().eta) eta_max = std::max(eta_max, e);

    Canvas cv{900.0, 450.0, 40.0, -kPi, kPi, -d * 1.08, eta_max + 0.15 * d};
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open for writing: " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cv.w << "\" height=\"" << cv.h
        << "\" viewBox=\"0 0 " << cv.w << ' ' << cv.h << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // bed
    {
        std::vector<double> bx{-kPi, kPi}, by{-d, -d};
        polyline(out, cv, bx, by, "bed", "#444444");
    }
    // streamlines, surface last
    for (int k = 0; k < n_levels; ++k) {
        double p = grid.p0 * (1.0 - static_cast<double>(k) / (n_levels - 1));
        Streamline s = streamline(fs, p);
        std::vector<double> x = s.x, y = s.sigma;
        x.push_back(kPi); // close the period visually
        y.push_back(s.sigma[0]);
        polyline(out, cv, x, y, k == n_levels - 1 ? "surface" : "streamline",
                 k == n_levels - 1 ? "#0050a0" : "#7aa0c8");
    }
    // velocity arrows
    const double scale_len = (cv.w - 2 * cv.margin) / arrows_x * 0.45;
    double umax = 1e-12;
    std::vector<std::array<double, 4>> arrows;
    for (int ay = 0; ay < arrows_y; ++ay) {
        double p = grid.p0 * (1.0 - (ay + 0.5) / arrows_y);
        for (int ax = 0; ax < arrows_x; ++ax) {
            double x = -kPi + kTwoPi * (ax + 0.5) / arrows_x;
            auto e = fs.interpolant().eval(x, p);
            double y = e.h - d;
            Velocity vel = fs.velocity_hodograph(x, p);
            umax = std::max({umax, std::fabs(vel.u), std::fabs(vel.v)});
            arrows.push_back({x, y, vel.u, vel.v});
        }
    }
    for (const auto& a : arrows) {
        double px = cv.sx(a[0]), py = cv.sy(a[1]);
        double dx = a[2] / umax * scale_len;
        double dy = -a[3] / umax * scale_len; // svg y points down
        out << "<line class=\"vel\" data-x=\"" << format_double(a[0]) << "\" data-y=\""
            << format_double(a[1]) << "\" data-u=\"" << format_double(a[2]) << "\" data-v=\""
            << format_double(a[3]) << "\" x1=\"" << num(px) << "\" y1=\"" << num(py)
            << "\" x2=\"" << num(px + dx) << "\" y2=\"" << num(py + dy)
            << "\" stroke=\"#c04020\" stroke-width=\"1\"/>\n";
    }
    out << "<text x=\"" << cv.w / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"13\">"
        << "streamlines and velocity field (one period)</text>\n";
    out << "</svg>\n";
}

void write_drift_orbit_figure(const std::string& path, const FieldSampler& fs,
                              const std::vector<Trajectory>& orbits) {
    const HodographGrid& grid = fs.grid();
    const double d = fs.frame().d;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open for writing: " + path);
    const double W = 900.0, H = 420.0;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // left: drift profile D as a function of mean streamline height
    std::vector<double> Dv, Yv;
    double dmax = 1e-300;
    for (int j = 0; j <= grid.np; ++j) {
        double p = grid.p(j);
        DriftResult dr = traversal_and_drift(fs, p);
        Dv.push_back(dr.drift);
        Yv.push_back(fs.interpolant().value(0.0, p) - d);
        dmax = std::max(dmax, std::fabs(dr.drift));
    }
    Canvas left{W / 2.0, H, 45.0, 0.0, dmax * 1.1 + 1e-12, -d, Yv.back() + 0.1 * d};
    polyline(out, left, Dv, Yv, "drift-profile", "#0050a0");
    out << "<text x=\"" << W / 4 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"13\">"
        << "forward drift per period vs height</text>\n";

    // right: particle orbits in the physical frame
    double xmin = 1e300, xmax = -1e300;
    for (const auto& tr : orbits)
        for (double X : tr.X) {
            xmin = std::min(xmin, X);
            xmax = std::max(xmax, X);
        }
    if (orbits.empty()) {
        xmin = 0;
        xmax = 1;
    }
    Canvas right{W / 2.0, H, 45.0, xmin - 0.1, xmax + 0.1, -d * 1.05, 0.15 * d};
    out << "<g transform=\"translate(" << W / 2.0 << ",0)\">\n";
    for (const auto& tr : orbits) polyline(out, right, tr.X, tr.Y, "orbit", "#c04020");
    out << "<text x=\"" << W / 4 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"13\">"
        << "particle paths (physical frame)</text>\n";
    out << "</g>\n";
    out << "</svg>\n";
}

} // namespace vorwave
