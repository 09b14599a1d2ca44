#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace hypcone {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Snap a double to `digits` significant decimal digits. Exported numerals
// go through this so that checksums are stable across parallel schedules.
inline double round_sig(double x, int digits = 12) {
    if (!std::isfinite(x)) return x;
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
    return std::strtod(buf, nullptr);
}

inline std::string format_sig(double x, int digits = 12) {
    char buf[48];
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
    return buf;
}

// FNV-1a, used for manifest checksums. Not cryptographic.
inline std::uint64_t fnv1a64(std::span<const char> bytes, std::uint64_t seed = 0xcbf29ce484222325ull) {
    std::uint64_t h = seed;
    for (char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t fnv1a64(const std::string& s, std::uint64_t seed = 0xcbf29ce484222325ull) {
    return fnv1a64(std::span<const char>(s.data(), s.size()), seed);
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms_residual = 0.0;
    std::size_t points = 0;
};

// Ordinary least squares y ~ slope*x + intercept.
inline LineFit fit_line(std::span<const double> xs, std::span<const double> ys) {
    LineFit fit;
    fit.points = xs.size();
    if (xs.size() < 2 || xs.size() != ys.size()) return fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double det = n * sxx - sx * sx;
    if (det == 0.0) return fit;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / n);
    return fit;
}

inline double mean(std::span<const double> v) {
    if (v.empty()) return 0.0;
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double stddev(std::span<const double> v) {
    if (v.size() < 2) return 0.0;
    const double m = mean(v);
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

} // namespace hypcone
