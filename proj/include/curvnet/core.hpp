#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace curvnet {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

// ---------------------------------------------------------------------------
// Errors. Every failure mode named by the operation that raises it.
// ---------------------------------------------------------------------------

struct ImmersionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UmbilicAmbiguityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedChartError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateStarError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateTriangleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoSecondFaceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct VariantOverflowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AreaPositivityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NetConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PatternValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TraceFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FitUnavailableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Small vectors
// ---------------------------------------------------------------------------

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    Vec3& operator-=(const Vec3& o) {
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    Vec3& operator*=(double s) {
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm2(const Vec3& v) { return dot(v, v); }
inline double norm(const Vec3& v) { return std::sqrt(norm2(v)); }
inline Vec3 normalized(const Vec3& v) {
    double n = norm(v);
    if (n <= 0.0) throw DegenerateTriangleError("cannot normalize zero vector");
    return v / n;
}
inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

// Angle between two nonzero vectors, in [0, pi].
inline double angle_between(const Vec3& a, const Vec3& b) {
    return std::atan2(norm(cross(a, b)), dot(a, b));
}

struct Vec2 {
    double u = 0.0, v = 0.0;

    Vec2() = default;
    Vec2(double u_, double v_) : u(u_), v(v_) {}

    Vec2 operator+(const Vec2& o) const { return {u + o.u, v + o.v}; }
    Vec2 operator-(const Vec2& o) const { return {u - o.u, v - o.v}; }
    Vec2 operator*(double s) const { return {u * s, v * s}; }
};

inline Vec2 operator*(double s, const Vec2& p) { return p * s; }
inline double dot(const Vec2& a, const Vec2& b) { return a.u * b.u + a.v * b.v; }
inline double cross2(const Vec2& a, const Vec2& b) { return a.u * b.v - a.v * b.u; }
inline double norm(const Vec2& p) { return std::hypot(p.u, p.v); }

// ---------------------------------------------------------------------------
// 2x2 symmetric eigenproblem (shape operator diagonalization)
// ---------------------------------------------------------------------------

struct Sym2 {
    // [a b; b c]
    double a = 0.0, b = 0.0, c = 0.0;

    double op_norm() const {
        double mean = 0.5 * (a + c);
        double disc = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
        return std::max(std::abs(mean - disc), std::abs(mean + disc));
    }
};

struct Eigen2 {
    double lambda1 = 0.0;  // lambda1 <= lambda2
    double lambda2 = 0.0;
    double c1 = 1.0, s1 = 0.0;  // unit eigenvector for lambda1; the other is (-s1, c1)
};

inline Eigen2 sym2_eigen(const Sym2& m) {
    Eigen2 r;
    double mean = 0.5 * (m.a + m.c);
    double half_diff = 0.5 * (m.a - m.c);
    double disc = std::sqrt(half_diff * half_diff + m.b * m.b);
    r.lambda1 = mean - disc;
    r.lambda2 = mean + disc;
    // Eigenvector for lambda1: rows of (M - lambda1 I) are orthogonal to it.
    double r1u = m.a - r.lambda1, r1v = m.b;
    double r2u = m.b, r2v = m.c - r.lambda1;
    double n1 = r1u * r1u + r1v * r1v;
    double n2 = r2u * r2u + r2v * r2v;
    double vu, vv;
    if (n1 >= n2) {
        vu = -r1v;
        vv = r1u;
    } else {
        vu = -r2v;
        vv = r2u;
    }
    double n = std::hypot(vu, vv);
    if (n == 0.0) {
        // umbilic: any direction is principal
        r.c1 = 1.0;
        r.s1 = 0.0;
    } else {
        r.c1 = vu / n;
        r.s1 = vv / n;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Quadrature: adaptive Simpson for smooth 1-D integrands
// ---------------------------------------------------------------------------

namespace detail {
template <class F>
double simpson_rec(const F& f, double a, double fa, double b, double fb, double m, double fm,
                   double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol = 1e-13, int max_depth = 40) {
    if (a == b) return 0.0;
    double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

// ---------------------------------------------------------------------------
// Misc numeric helpers
// ---------------------------------------------------------------------------

inline bool solve2x2(double a11, double a12, double a21, double a22, double b1, double b2,
                     double& x1, double& x2) {
    double det = a11 * a22 - a12 * a21;
    double scale = std::max({std::abs(a11), std::abs(a12), std::abs(a21), std::abs(a22)});
    if (std::abs(det) <= 1e-30 * std::max(scale * scale, 1e-300)) return false;
    x1 = (b1 * a22 - b2 * a12) / det;
    x2 = (a11 * b2 - a21 * b1) / det;
    return true;
}

// Inequality lhs <= rhs with relative slack for roundoff, plus a tiny absolute
// floor so that exact-zero bounds do not fail on last-ulp noise.
inline bool leq_with_slack(double lhs, double rhs, double rel = 1e-9, double abs_slack = 1e-12) {
    return lhs <= rhs + std::abs(rhs) * rel + abs_slack;
}

inline double sqr(double x) { return x * x; }

// Deterministic 64-bit generator (splitmix64); used wherever reproducible
// pseudo-random sampling is required.
class SplitMix64 {
  public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0); }

    // uniform in [a, b)
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

  private:
    uint64_t state_;
};

// Shortest-format-preserving decimal for doubles; used by all text exports so
// that identical runs produce byte-identical files.
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline double wrap_angle_02pi(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    return a;
}

}  // namespace curvnet
