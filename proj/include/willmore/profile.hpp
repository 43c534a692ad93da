#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "willmore/quadrature.hpp"

namespace willmore {

/// Which ends of a generating curve lie on the rotation axis r = 0.
struct AxisContact {
    bool start = false;
    bool end = false;
};

/// Position and first two derivatives of a profile (r, h) with respect to
/// its parameter.
struct Jet {
    double r = 0, h = 0, dr = 0, dh = 0, ddr = 0, ddh = 0;
};

/// Role of a piece in a constructed profile; energies are broken down by it.
enum class SegmentRole { generic, neck, glue, cap, quarter };

const char* to_string(SegmentRole role);

struct PathSegment {
    std::function<Jet(double)> eval;
    double a = 0.0;  // parameter interval, a < b
    double b = 1.0;
    SegmentRole role = SegmentRole::generic;
    std::string label;
};

class ProfileCurve;

struct SamplingPlan {
    std::size_t total_intervals = 4096;
    std::size_t min_per_segment = 256;
};

/// Piecewise-analytic generating curve. Consecutive segments must meet
/// (end of one equals start of the next).
class ProfilePath {
public:
    ProfilePath() = default;
    ProfilePath(std::vector<PathSegment> segments, AxisContact contact);

    const std::vector<PathSegment>& segments() const { return segments_; }
    AxisContact contact() const { return contact_; }
    Jet start() const;
    Jet end() const;

    ProfilePath reversed() const;
    /// Rigid motion/scaling (r, h) -> (scale r, scale h + shift).
    ProfilePath transformed(double scale, double shift) const;
    /// Reflection h -> -h.
    ProfilePath mirrored() const;
    /// Concatenation; the first point of `next` must coincide with end().
    ProfilePath joined(const ProfilePath& next) const;

    /// Samples every segment uniformly in its parameter with node counts from
    /// `plan` (multiples of 4 per segment). The returned curve is
    /// parametrized by arclength and carries exact derivatives.
    ProfileCurve sample(const SamplingPlan& plan = {}) const;

private:
    std::vector<PathSegment> segments_;
    AxisContact contact_;
};

struct CurveChecks {
    /// Bound on |dh/dr| at an axis end (perpendicular contact).
    double perpendicular_tol = 1e-2;
};

/// Sampled generating curve of a surface of revolution.
///
/// Invariants: s strictly increasing; r >= 0 everywhere and r > 0 at every
/// sample that is not an axis end; consecutive samples distinct; axis ends
/// have r == 0 and meet the axis perpendicularly.
class ProfileCurve {
public:
    /// Derivatives of (r, h) with respect to s, one entry per sample.
    struct Derivatives {
        std::vector<double> dr, dh, ddr, ddh;
    };

    ProfileCurve() = default;
    ProfileCurve(std::vector<double> s, std::vector<double> r, std::vector<double> h, AxisContact contact = {},
                 std::optional<Derivatives> derivatives = std::nullopt, const CurveChecks& checks = {});

    std::size_t size() const { return s_.size(); }
    const std::vector<double>& s() const { return s_; }
    const std::vector<double>& r() const { return r_; }
    const std::vector<double>& h() const { return h_; }
    AxisContact contact() const { return contact_; }
    bool has_derivatives() const { return derivatives_.has_value(); }
    const Derivatives& derivatives() const { return *derivatives_; }

    ProfileCurve reversed() const;
    ProfileCurve scaled(double sigma) const;
    ProfileCurve without_derivatives() const;
    double diameter() const;
    double length() const;

private:
    std::vector<double> s_, r_, h_;
    AxisContact contact_;
    std::optional<Derivatives> derivatives_;
};

struct EnergyPart {
    double value = 0.0;
    double error = 0.0;
};

/// Willmore energy contributions; `other` collects untagged pieces.
struct EnergyBreakdown {
    EnergyPart cap, glue, neck, other, total;
    bool converged = true;
};

/// Energy of a sampled curve by composite Simpson on the sample grid.
/// Uses the stored derivatives when present, otherwise fourth-order finite
/// differences with respect to chord length (mirror ghosts at axis ends).
/// The error estimate is the Richardson difference against the grid of
/// every second sample.
EnergyBreakdown willmore_energy(const ProfileCurve& curve);

/// Energy of a piecewise-analytic curve by adaptive Simpson per segment.
EnergyBreakdown willmore_energy(const ProfilePath& path, const QuadratureSettings& q = {});

/// Energy density at every sample, per unit of the integration coordinate
/// x: the curve's s when it carries derivatives, chord length otherwise.
struct DensitySamples {
    std::vector<double> x, f;
};

DensitySamples energy_density(const ProfileCurve& curve);

/// Energy of the piece of the curve with s in [s_lo, s_hi].
double willmore_energy_between(const ProfileCurve& curve, double s_lo, double s_hi);

/// Unit tangent at every sample: stored derivatives or five-point
/// differences (same stencils as the energy).
std::vector<std::array<double, 2>> unit_tangents(const ProfileCurve& curve);

struct TangentLift {
    std::vector<double> theta;  // continuous lift, radians
    double turning = 0.0;       // (theta.back() - theta.front()) / 2 pi
    /// Turning number snapped to Z + 1/2 for curves closed on the axis at
    /// both ends, otherwise equal to `turning`.
    double tau = 0.0;
};

struct LiftSettings {
    /// Largest admissible angle change between consecutive samples.
    double max_step = 0.9 * 3.14159265358979323846;
};

/// Lift of the tangent angle atan2(h', r'), counterclockwise positive in the
/// (r, h) half-plane, starting from the principal angle of the first tangent.
/// Throws RefinementRequired when consecutive tangents differ by max_step or more.
TangentLift tangent_lift(const ProfileCurve& curve, const LiftSettings& settings = {});

struct MultiplicitySettings {
    /// Clustering radius relative to the curve diameter.
    double relative_tol = 1e-6;
};

struct TuplePoint {
    double r = 0.0, h = 0.0;
    int multiplicity = 1;
};

/// Maximum number of distinct passes of the curve through one point with r > 0.
int tuple_point_multiplicity(const ProfileCurve& curve, const MultiplicitySettings& settings = {});

/// All clustered self-intersection points with their multiplicities.
std::vector<TuplePoint> tuple_points(const ProfileCurve& curve, const MultiplicitySettings& settings = {});

struct LiYauReport {
    int multiplicity = 1;
    double energy = 0.0;
    double energy_error = 0.0;
    double bound = 0.0;      // 4 pi n
    double tolerance = 0.0;  // slack granted below the bound
    bool satisfied = true;
};

/// Checks W >= 4 pi n - tolerance, where the tolerance is max(abs_tol,
/// 10 x quadrature error estimate).
LiYauReport liyau_check(const ProfileCurve& curve, double abs_tol = 1e-6, const MultiplicitySettings& m = {});

}  // namespace willmore
