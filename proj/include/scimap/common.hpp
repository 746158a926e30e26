// Shared basics: error type, 2D point, deterministic RNG, number formatting.
#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace scimap {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(const Point2& a, const Point2& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

inline double squared_distance(const Point2& a, const Point2& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

// Node coordinates in layout order (index i = node i of the input matrix).
using Positions = std::vector<Point2>;

// Thin wrapper around mt19937 that derives doubles and bounded ints directly
// from the raw engine output, so sequences do not depend on the standard
// library's distribution implementations.
class SeededRng {
public:
    explicit SeededRng(std::uint32_t seed) : gen_(seed) {}

    // 53-bit uniform in [0, 1).
    double unit() {
        const std::uint64_t hi = gen_() >> 5;   // 27 bits
        const std::uint64_t lo = gen_() >> 6;   // 26 bits
        return ((hi << 26) | lo) * (1.0 / 9007199254740992.0);
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    // Uniform-ish integer in [0, n). Modulo bias is irrelevant here; the
    // sequence only has to be reproducible.
    std::uint32_t below(std::uint32_t n) { return n == 0 ? 0 : gen_() % n; }

private:
    std::mt19937 gen_;
};

// Fixed-decimal formatting; -0 is normalized, and a tiny negative that
// rounds to zero loses its sign, so equal-looking values always serialize to
// identical bytes and re-serialization is a fixed point.
inline std::string format_fixed(double v, int decimals) {
    if (v == 0.0) v = 0.0;
    char buf[512];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    std::string s(buf);
    if (s[0] == '-' && s.find_first_not_of("0.", 1) == std::string::npos) s.erase(0, 1);
    return s;
}

// Compact formatting for report values (stress, modularity, ...).
inline std::string format_general(double v) {
    if (v == 0.0) v = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return std::string(buf);
}

// Integer-valued cells print bare, everything else with 6 decimals. Applied
// to matrix CSV cells so count matrices stay readable and re-serialization
// is a fixed point.
inline std::string format_cell(double v) {
    if (v == 0.0) v = 0.0;
    if (std::floor(v) == v && std::abs(v) < 1e15) {
        char buf[512];
        std::snprintf(buf, sizeof(buf), "%.0f", v);
        return std::string(buf);
    }
    std::string s = format_fixed(v, 6);
    // A cell that rounds to an integer at 6 decimals prints bare too, or the
    // read-back value would re-serialize through the integer branch above.
    const auto dot = s.find('.');
    if (dot != std::string::npos && s.find_first_not_of('0', dot + 1) == std::string::npos)
        s.erase(dot);
    return s;
}

}  // namespace scimap
