#pragma once

#include "curvnet/surface.hpp"

namespace curvnet {

struct TraceConfig {
    double step = 1e-3;                 // arc-length integrator step
    double sample_spacing = 1e-3;       // target polyline spacing
    double umbilic_stop_radius = 1e-3;  // ambient distance to a known umbilic
    int max_steps = 400000;

    void validate() const {
        if (!(step > 0) || !(sample_spacing > 0) || !(umbilic_stop_radius > 0) || max_steps <= 0)
            throw ConfigError("trace config fields must be positive");
    }
};

enum class TraceStop { ReachedTarget, Boundary, UmbilicStop, StepCollapse };

struct TracedLine {
    std::vector<Vec2> uv;  // samples, one per accepted step
    std::vector<double> s;  // cumulative arc length
    TraceStop stop = TraceStop::ReachedTarget;

    double length() const { return s.empty() ? 0.0 : s.back(); }
};

struct TraceFailureError : TraceFailure {
    TracedLine partial;
    TraceFailureError(const std::string& msg, TracedLine p)
        : TraceFailure(msg), partial(std::move(p)) {}
};

namespace detail {

struct FieldSample {
    Vec2 velocity;  // parameter velocity of the unit principal direction
    Vec3 direction;
    bool umbilic = false;
    double align = 1.0;  // |cos| of the angle against the reference direction
};

inline FieldSample principal_field(const SurfaceChart& chart, const Vec2& uv, int family,
                                   const Vec3& ref) {
    SurfacePointData p = eval_point(chart, uv, false);
    Vec3 d = (family == 1) ? p.v1 : p.v2;
    double a = dot(d, ref);
    if (a < 0.0) {
        d = -d;
        a = -a;
    }
    Jet3 j = chart.jet(uv.u, uv.v);
    FieldSample fs;
    fs.velocity = parameter_velocity(j, d);
    fs.direction = d;
    fs.umbilic = p.umbilic;
    fs.align = a;
    return fs;
}

}  // namespace detail

// Classical 4th-order integration of the unit principal direction field in the
// parameter domain, with sign continuity carried along the trace. Stops at the
// target arc length, the domain boundary, or the umbilic stop radius.
class PrincipalTracer {
  public:
    PrincipalTracer(const SurfaceChart& chart, TraceConfig cfg)
        : chart_(chart), cfg_(cfg) {
        cfg_.validate();
        for (const Vec2& uq : chart.known_umbilics())
            umbilic_positions_.push_back(chart.position(uq));
        // On a completely umbilical chart any net is a curvature-line net; the
        // fallback frame field is globally smooth and tracing never stops.
        stop_at_umbilic_ = !chart.totally_umbilic();
    }

    // `initial_direction`: ambient hint resolving the line-field sign (and the
    // umbilic fallback frame ambiguity). Mandatory at umbilic seeds.
    TracedLine trace(const Vec2& seed, int family, double target_length,
                     std::optional<Vec3> initial_direction = std::nullopt) const {
        SurfacePointData p0 = eval_point(chart_, seed, false);
        if (p0.umbilic && !initial_direction)
            throw UmbilicAmbiguityError("trace seeded at an umbilic point without a direction");
        Vec3 ref;
        if (initial_direction) {
            Vec3 d = (family == 1) ? p0.v1 : p0.v2;
            ref = dot(d, *initial_direction) < 0.0 ? -d : d;
        } else {
            ref = (family == 1) ? p0.v1 : p0.v2;
        }

        TracedLine line;
        line.uv.push_back(seed);
        line.s.push_back(0.0);
        Vec2 cur = seed;
        double s = 0.0;
        double base_h = std::min(cfg_.step, cfg_.sample_spacing);

        for (int it = 0; it < cfg_.max_steps; ++it) {
            if (s >= target_length - 1e-15) {
                line.stop = TraceStop::ReachedTarget;
                return line;
            }
            double h = std::min(base_h, target_length - s);
            Vec2 next;
            try {
                next = rk4_step(cur, family, ref, h);
            } catch (const UmbilicAmbiguityError&) {
                line.stop = TraceStop::UmbilicStop;
                return line;
            }
            if (!chart_.domain().contains(next)) {
                double hb = clip_to_boundary(cur, family, ref, h);
                if (hb > 1e-14) {
                    Vec2 bp = rk4_step(cur, family, ref, hb);
                    line.uv.push_back(bp);
                    line.s.push_back(s + hb);
                }
                line.stop = TraceStop::Boundary;
                return line;
            }
            detail::FieldSample end_field = detail::principal_field(chart_, next, family, ref);
            if (stop_at_umbilic_ && (end_field.umbilic || near_umbilic(next))) {
                line.uv.push_back(next);
                line.s.push_back(s + h);
                line.stop = TraceStop::UmbilicStop;
                return line;
            }
            if (end_field.align < 0.5) {
                line.stop = TraceStop::StepCollapse;
                throw TraceFailureError("principal direction field discontinuity along trace",
                                        line);
            }
            cur = next;
            s += h;
            ref = end_field.direction;
            line.uv.push_back(cur);
            line.s.push_back(s);
        }
        throw TraceFailureError("trace exceeded max step count", line);
    }

    const SurfaceChart& chart() const { return chart_; }
    const TraceConfig& config() const { return cfg_; }

  private:
    bool near_umbilic(const Vec2& uv) const {
        if (umbilic_positions_.empty()) return false;
        Vec3 p = chart_.position(uv);
        for (const Vec3& u : umbilic_positions_)
            if (distance(p, u) <= cfg_.umbilic_stop_radius) return true;
        return false;
    }

    Vec2 rk4_step(const Vec2& cur, int family, const Vec3& ref, double h) const {
        auto f = [&](const Vec2& q) { return detail::principal_field(chart_, q, family, ref).velocity; };
        Vec2 k1 = f(cur);
        Vec2 k2 = f(cur + (0.5 * h) * k1);
        Vec2 k3 = f(cur + (0.5 * h) * k2);
        Vec2 k4 = f(cur + h * k3);
        return cur + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }

    // Largest step <= h that stays inside the domain (bisection).
    double clip_to_boundary(const Vec2& cur, int family, const Vec3& ref, double h) const {
        double lo = 0.0, hi = h;
        for (int i = 0; i < 60 && (hi - lo) > 1e-16 * std::max(1.0, h); ++i) {
            double mid = 0.5 * (lo + hi);
            if (chart_.domain().contains(rk4_step(cur, family, ref, mid)))
                lo = mid;
            else
                hi = mid;
        }
        return lo;
    }

    SurfaceChart chart_;
    TraceConfig cfg_;
    std::vector<Vec3> umbilic_positions_;
    bool stop_at_umbilic_ = true;
};

inline TracedLine trace_principal_line(const SurfaceChart& chart, const Vec2& seed, int family,
                                       double target_length, const TraceConfig& cfg,
                                       std::optional<Vec3> initial_direction = std::nullopt) {
    return PrincipalTracer(chart, cfg).trace(seed, family, target_length, initial_direction);
}

// Parameter points at the given arc-length offsets (sorted ascending, > 0)
// along a trace. Lands on each offset with a trimmed final step.
inline std::vector<Vec2> trace_anchors(const PrincipalTracer& tracer, const Vec2& seed, int family,
                                       const std::vector<double>& offsets,
                                       std::optional<Vec3> initial_direction = std::nullopt) {
    std::vector<Vec2> anchors;
    if (offsets.empty()) return anchors;
    TracedLine full = tracer.trace(seed, family, offsets.back(), initial_direction);
    if (full.stop != TraceStop::ReachedTarget)
        throw TraceFailureError("trace ended before reaching all requested anchor offsets", full);
    size_t k = 0;
    for (double off : offsets) {
        while (k + 1 < full.s.size() && full.s[k + 1] < off - 1e-14) ++k;
        if (std::abs(full.s[k] - off) <= 1e-13) {
            anchors.push_back(full.uv[k]);
            continue;
        }
        // re-integrate the partial step from sample k to land exactly
        Vec2 a = full.uv[k];
        Vec2 b = full.uv[std::min(k + 1, full.uv.size() - 1)];
        Vec3 hint = tracer.chart().position(b) - tracer.chart().position(a);
        TraceConfig sub = tracer.config();
        sub.step = std::max(1e-12, off - full.s[k]);
        sub.sample_spacing = sub.step;
        PrincipalTracer local(tracer.chart(), sub);
        TracedLine leg = local.trace(a, family, off - full.s[k], hint);
        anchors.push_back(leg.uv.back());
    }
    return anchors;
}

}  // namespace curvnet
