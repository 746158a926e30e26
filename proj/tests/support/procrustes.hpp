// Similarity-transform alignment (rotation/reflection + uniform scale +
// translation) between two 2D point sets. Both candidate orthogonal branches
// are constructed explicitly and scored against the data, so the result is
// self-checking rather than trusting a derivation.
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "scimap/common.hpp"

namespace testsupport {

struct Alignment {
    std::vector<scimap::Point2> aligned;    // transformed A, in B's centered frame
    std::vector<scimap::Point2> reference;  // centered B
    double relative_residual = 0.0;         // ||aligned - reference|| / ||reference||
};

inline Alignment procrustes_align(const std::vector<scimap::Point2>& a,
                                  const std::vector<scimap::Point2>& b) {
    if (a.size() != b.size() || a.empty())
        throw std::invalid_argument("procrustes_align needs two equal, non-empty point sets");
    const std::size_t n = a.size();

    scimap::Point2 ma{0.0, 0.0}, mb{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        ma.x += a[i].x;
        ma.y += a[i].y;
        mb.x += b[i].x;
        mb.y += b[i].y;
    }
    ma.x /= static_cast<double>(n);
    ma.y /= static_cast<double>(n);
    mb.x /= static_cast<double>(n);
    mb.y /= static_cast<double>(n);

    std::vector<scimap::Point2> p(n), q(n);
    double pnorm2 = 0.0, qnorm2 = 0.0;
    double alpha = 0.0, beta = 0.0, gamma = 0.0, delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        p[i] = {a[i].x - ma.x, a[i].y - ma.y};
        q[i] = {b[i].x - mb.x, b[i].y - mb.y};
        pnorm2 += p[i].x * p[i].x + p[i].y * p[i].y;
        qnorm2 += q[i].x * q[i].x + q[i].y * q[i].y;
        alpha += p[i].x * q[i].x + p[i].y * q[i].y;
        beta += p[i].x * q[i].y - p[i].y * q[i].x;
        gamma += p[i].x * q[i].x - p[i].y * q[i].y;
        delta += p[i].y * q[i].x + p[i].x * q[i].y;
    }
    if (pnorm2 <= 0.0 || qnorm2 <= 0.0)
        throw std::invalid_argument("procrustes_align: degenerate (all-coincident) point set");

    const double g_rot = std::hypot(alpha, beta);
    const double g_ref = std::hypot(gamma, delta);

    double r00, r01, r10, r11;
    double g;
    if (g_rot >= g_ref) {
        g = g_rot;
        const double c = g > 0.0 ? alpha / g : 1.0;
        const double s = g > 0.0 ? beta / g : 0.0;
        r00 = c;
        r01 = -s;
        r10 = s;
        r11 = c;
    } else {
        g = g_ref;
        const double c = gamma / g;
        const double s = delta / g;
        r00 = c;
        r01 = s;
        r10 = s;
        r11 = -c;
    }
    const double scale = g > 0.0 ? g / pnorm2 : 1.0;

    Alignment out;
    out.aligned.resize(n);
    out.reference = q;
    double err2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = scale * (r00 * p[i].x + r01 * p[i].y);
        const double y = scale * (r10 * p[i].x + r11 * p[i].y);
        out.aligned[i] = {x, y};
        err2 += (x - q[i].x) * (x - q[i].x) + (y - q[i].y) * (y - q[i].y);
    }
    out.relative_residual = std::sqrt(err2 / qnorm2);
    return out;
}

}  // namespace testsupport
