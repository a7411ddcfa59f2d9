#include "syndyn/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <string>

#include "syndyn/errors.hpp"

namespace syndyn {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

QuadratureResult kronrod(const std::function<double(double)> &f, double a, double b) {
    QuadratureResult r;
    double err = 0, l1 = 0;
    r.value = GK::integrate(f, a, b, 0, 0.0, &err, &l1);
    // The single-panel error estimate is reported on the reference interval.
    r.error = err * (b - a) / 2;
    r.l1 = l1;
    r.panels = 1;
    return r;
}

QuadratureResult refine(const std::function<double(double)> &f, double a, double b, const QuadratureResult &whole,
                        double want, unsigned depth) {
    double floor = 64 * std::numeric_limits<double>::epsilon() * whole.l1;
    if (whole.error <= std::max(want, floor) || depth == 0) {
        return whole;
    }
    double mid = a + (b - a) / 2;
    auto left = refine(f, a, mid, kronrod(f, a, mid), want / 2, depth - 1);
    auto right = refine(f, mid, b, kronrod(f, mid, b), want / 2, depth - 1);
    return {left.value + right.value, left.error + right.error, left.l1 + right.l1, left.panels + right.panels};
}

}  // namespace

QuadratureResult integrate_panels(const std::function<double(double)> &f, double a, double b,
                                  std::vector<double> cuts, double period, const QuadratureOptions &opts) {
    QuadratureResult res;
    if (!(b > a)) {
        return res;
    }
    std::vector<double> pts{a, b};
    for (double c : cuts) {
        if (c > a && c < b) {
            pts.push_back(c);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (period > 0) {
        std::vector<double> fine;
        for (size_t i = 0; i + 1 < pts.size(); i++) {
            double len = pts[i + 1] - pts[i];
            double m = std::ceil(len / period);
            if (m > double(opts.max_panels)) {
                throw NumericalError("oscillation period " + num_str(period) + " needs more than " +
                                     std::to_string(opts.max_panels) + " panels");
            }
            size_t pieces = std::max<size_t>(1, size_t(m));
            for (size_t k = 0; k < pieces; k++) {
                fine.push_back(pts[i] + len * double(k) / double(pieces));
            }
        }
        fine.push_back(pts.back());
        pts.swap(fine);
    }
    if (pts.size() - 1 > opts.max_panels) {
        throw NumericalError("quadrature needs more than " + std::to_string(opts.max_panels) + " panels");
    }
    for (size_t i = 0; i + 1 < pts.size(); i++) {
        auto coarse = kronrod(f, pts[i], pts[i + 1]);
        double want = std::max(opts.rel_tol * coarse.l1, opts.abs_tol * (pts[i + 1] - pts[i]) / (b - a));
        auto r = refine(f, pts[i], pts[i + 1], coarse, want, opts.max_depth);
        res.value += r.value;
        res.error += r.error;
        res.l1 += r.l1;
        res.panels += r.panels;
    }
    if (!std::isfinite(res.value)) {
        throw NumericalError("quadrature produced a non-finite value");
    }
    double target = std::max(opts.rel_tol * res.l1, opts.abs_tol);
    if (res.error > 10 * target) {
        throw NumericalError("quadrature did not converge: achieved error " + num_str(res.error) +
                             ", requested " + num_str(target));
    }
    return res;
}

}  // namespace syndyn
