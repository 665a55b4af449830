#include "stokes/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace stokes {

namespace {

constexpr double PI = 3.141592653589793238462643383279502884;
constexpr int W = 640, H = 640;

struct Canvas {
    std::ostringstream os;
    Canvas(const std::string& title) {
        os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W
           << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
           << "<title>" << title << "</title>\n"
           << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    }
    void line(double x1, double y1, double x2, double y2, const char* stroke, double width = 1.0,
              const char* dash = nullptr) {
        os << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
           << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width << "\"";
        if (dash) os << " stroke-dasharray=\"" << dash << "\"";
        os << "/>\n";
    }
    void text(double x, double y, const std::string& t, int size = 13, const char* fill = "#333") {
        os << "<text x=\"" << x << "\" y=\"" << y << "\" font-size=\"" << size
           << "\" font-family=\"sans-serif\" fill=\"" << fill << "\">" << t << "</text>\n";
    }
    void circle(double x, double y, double r, const char* fill, const char* stroke = "none") {
        os << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"" << r << "\" fill=\"" << fill
           << "\" stroke=\"" << stroke << "\"/>\n";
    }
    void raw(const std::string& s) { os << s; }
    std::string finish() {
        os << "</svg>\n";
        return os.str();
    }
};

struct Frame {
    // complex plane -> canvas, origin at lower-left-ish
    double cx = 90, cy = H - 90, scale = 1;
    double X(double x) const { return cx + x * scale; }
    double Y(double y) const { return cy - y * scale; }
};

std::string arc_path(const Frame& f, double r, double t0, double t1, bool close_to_origin) {
    std::ostringstream p;
    double x0 = f.X(r * std::cos(t0)), y0 = f.Y(r * std::sin(t0));
    double x1 = f.X(r * std::cos(t1)), y1 = f.Y(r * std::sin(t1));
    int large = (t1 - t0) > PI ? 1 : 0;
    if (close_to_origin) {
        p << "M " << f.X(0) << " " << f.Y(0) << " L " << x0 << " " << y0;
        p << " A " << r * f.scale << " " << r * f.scale << " 0 " << large << " 0 " << x1 << " "
          << y1 << " Z";
    } else {
        p << "M " << x0 << " " << y0 << " A " << r * f.scale << " " << r * f.scale << " 0 "
          << large << " 0 " << x1 << " " << y1;
    }
    return p.str();
}

void arrow(Canvas& c, const Frame& f, double x0, double y0, double x1, double y1,
           const char* color) {
    c.line(f.X(x0), f.Y(y0), f.X(x1), f.Y(y1), color, 2.0);
    double dx = x1 - x0, dy = y1 - y0;
    double n = std::hypot(dx, dy);
    if (n < 1e-12) return;
    dx /= n;
    dy /= n;
    double hx = x1 - 0.04 * (dx + 0.6 * dy) * n / f.scale * f.scale;
    (void)hx;
    double ax = x1 - (dx * 0.7 + dy * 0.4) * 12 / f.scale;
    double ay = y1 - (dy * 0.7 - dx * 0.4) * 12 / f.scale;
    double bx = x1 - (dx * 0.7 - dy * 0.4) * 12 / f.scale;
    double by = y1 - (dy * 0.7 + dx * 0.4) * 12 / f.scale;
    c.line(f.X(x1), f.Y(y1), f.X(ax), f.Y(ay), color, 2.0);
    c.line(f.X(x1), f.Y(y1), f.X(bx), f.Y(by), color, 2.0);
}

}  // namespace

std::string render_sectors_svg(const AnalysisBundle& b) {
    Canvas c("certified sector");
    Frame f;
    const SectorCertificate& cert = *b.certificate;
    double R = cert.R.convert_to<double>();
    double t0 = cert.theta0_pi.convert_to<double>() * PI;
    double t1 = cert.theta1_pi.convert_to<double>() * PI;
    f.scale = 440.0 / R;

    // axes
    c.line(f.X(-0.05 * R), f.Y(0), f.X(1.1 * R), f.Y(0), "#999");
    c.line(f.X(0), f.Y(-0.05 * R), f.X(0), f.Y(1.1 * R), "#999");

    // shaded sector
    c.raw("<path d=\"" + arc_path(f, R, t0, t1, true) +
          "\" fill=\"#cfe3ff\" fill-opacity=\"0.6\" stroke=\"#3b6fb5\" stroke-width=\"1.5\"/>\n");

    // S_delta ring at delta = R/4
    double delta = R / 4;
    c.raw("<path d=\"" + arc_path(f, delta, t0, t1, false) +
          "\" fill=\"none\" stroke=\"#b53b3b\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n");
    c.text(f.X(delta * std::cos(t1)) - 66, f.Y(delta * std::sin(t1)) - 6, "|z| = delta", 12,
           "#b53b3b");

    // growth/decay arrows per index along interior directions
    long m = b.formal.m();
    for (long j = 1; j <= m; ++j) {
        const auto& ic = cert.index(j);
        if (ic.cond == Cond::ZeroPart) continue;
        double frac = static_cast<double>(j) / static_cast<double>(m + 1);
        double th = t0 + (t1 - t0) * frac;
        double r_in = 0.35 * R, r_out = 0.8 * R;
        if (ic.cond == Cond::I) {
            // grows toward 0: arrow points inward
            arrow(c, f, r_out * std::cos(th), r_out * std::sin(th), r_in * std::cos(th),
                  r_in * std::sin(th), "#b53b3b");
            c.text(f.X(r_out * std::cos(th)) + 4, f.Y(r_out * std::sin(th)), "j=" + std::to_string(j),
                   12, "#b53b3b");
        } else {
            arrow(c, f, r_in * std::cos(th), r_in * std::sin(th), r_out * std::cos(th),
                  r_out * std::sin(th), "#2e7d32");
            c.text(f.X(r_in * std::cos(th)) + 4, f.Y(r_in * std::sin(th)) + 14,
                   "j=" + std::to_string(j), 12, "#2e7d32");
        }
    }
    c.text(20, 28, "sector (" + to_string(cert.theta0_pi) + "pi, " + to_string(cert.theta1_pi) +
                       "pi), R = " + to_string(cert.R));
    c.text(20, 48, "red: growth toward 0 (I), green: decay (J)", 12, "#555");
    return c.finish();
}

std::string render_growth_svg(const AnalysisBundle& b, const CrosscheckReport& rep,
                              const std::vector<RayTrace>& traces) {
    (void)b;
    Canvas c("growth along rays");
    double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
    for (const auto& t : traces)
        for (const auto& s : t.samples) {
            double x = 1.0 / s.rho;
            x_min = std::min(x_min, x);
            x_max = std::max(x_max, x);
            for (double v : s.log_norm) {
                y_min = std::min(y_min, v);
                y_max = std::max(y_max, v);
            }
        }
    if (y_max <= y_min) y_max = y_min + 1;
    double ml = 80, mr = 30, mt = 50, mb = 60;
    auto X = [&](double x) { return ml + (x - x_min) / (x_max - x_min) * (W - ml - mr); };
    auto Y = [&](double y) { return H - mb - (y - y_min) / (y_max - y_min) * (H - mt - mb); };
    c.line(ml, H - mb, W - mr, H - mb, "#333");
    c.line(ml, H - mb, ml, mt, "#333");
    c.text(W / 2 - 20, H - 20, "1 / rho");
    c.text(12, mt - 10, "log |column|");
    const char* colors[] = {"#b53b3b", "#2e7d32", "#3b6fb5", "#8e44ad", "#d4820a", "#16818a"};
    int ci = 0;
    for (std::size_t t = 0; t < traces.size(); ++t) {
        const auto& trace = traces[t];
        for (long j = 0; j < trace.m; ++j) {
            std::ostringstream pts;
            for (const auto& s : trace.samples)
                pts << X(1.0 / s.rho) << "," << Y(s.log_norm[static_cast<std::size_t>(j)]) << " ";
            const char* col = colors[ci % 6];
            c.raw("<polyline points=\"" + pts.str() + "\" fill=\"none\" stroke=\"" + col +
                  "\" stroke-width=\"1.6\"/>\n");
            ++ci;
        }
        char label[96];
        std::snprintf(label, sizeof label, "theta = %.4f%s", trace.theta,
                      t < rep.rays.size() && rep.rays[t].pass ? " (PASS)" : "");
        c.text(ml + 10, mt + 18 * (static_cast<double>(t) + 1), label, 12);
    }
    return c.finish();
}

std::string render_microsupport_svg(const AnalysisBundle& b) {
    Canvas c("microsupport base projection");
    Frame f;
    const SectorCertificate& cert = *b.certificate;
    const Witness& w = *b.witness;
    double R = cert.R.convert_to<double>();
    double t0 = cert.theta0_pi.convert_to<double>() * PI;
    double t1 = cert.theta1_pi.convert_to<double>() * PI;
    double delta = w.delta.convert_to<double>();
    f.scale = 440.0 / R;

    c.line(f.X(-0.05 * R), f.Y(0), f.X(1.1 * R), f.Y(0), "#999");
    c.line(f.X(0), f.Y(-0.05 * R), f.X(0), f.Y(1.1 * R), "#999");

    // zero-section support |z| >= delta inside the sector (annulus piece)
    std::ostringstream annulus;
    annulus << "M " << f.X(delta * std::cos(t0)) << " " << f.Y(delta * std::sin(t0)) << " L "
            << f.X(R * std::cos(t0)) << " " << f.Y(R * std::sin(t0)) << " A " << R * f.scale << " "
            << R * f.scale << " 0 0 0 " << f.X(R * std::cos(t1)) << " " << f.Y(R * std::sin(t1))
            << " L " << f.X(delta * std::cos(t1)) << " " << f.Y(delta * std::sin(t1)) << " A "
            << delta * f.scale << " " << delta * f.scale << " 0 0 1 " << f.X(delta * std::cos(t0))
            << " " << f.Y(delta * std::sin(t0)) << " Z";
    c.raw("<path d=\"" + annulus.str() +
          "\" fill=\"#cfe3ff\" fill-opacity=\"0.6\" stroke=\"#3b6fb5\"/>\n");

    // the circle |z| = delta carrying the conormal component
    c.raw("<path d=\"" + arc_path(f, delta, t0, t1, false) +
          "\" fill=\"none\" stroke=\"#b53b3b\" stroke-width=\"2.5\"/>\n");

    // witness point and covector direction (inward radial)
    double zx = w.zx.convert_to<double>(), zy = w.zy.convert_to<double>();
    c.circle(f.X(zx), f.Y(zy), 5, "#b53b3b", "#7a1f1f");
    arrow(c, f, zx, zy, zx * 0.45, zy * 0.45, "#7a1f1f");
    c.text(f.X(zx) + 8, f.Y(zy) - 8, "(z*; -lambda z*)", 12, "#7a1f1f");

    c.text(20, 28, "SS(F_delta) base projection, delta = " + to_string(w.delta));
    c.text(20, 48, "blue: zero-section support; red arc: conormal circle; arrow: witness covector",
           12, "#555");
    return c.finish();
}

}  // namespace stokes
