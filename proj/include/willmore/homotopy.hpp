#pragma once

#include <array>
#include <string>
#include <vector>

#include "willmore/catenoid_sphere.hpp"
#include "willmore/profile.hpp"

namespace willmore {

/// Two round spheres attached to the ends of one catenoid neck.
struct AttachmentConfig {
    CatSphKind lower = CatSphKind::alpha;
    CatSphKind upper = CatSphKind::alpha;
    double lambda = 20.0;
    double delta = 0.1;
    double R_lower = 20.0;
    double R_upper = 20.0;

    void validate() const;
};

/// Chain of spheres S_0 .. S_{n-1} joined by n-1 catenoid necks of the same
/// scale; neck j joins S_j below to S_{j+1} above. kinds[2j] and kinds[2j+1]
/// are the kinds of the lower and upper junction of neck j. A middle sphere
/// must see the same kind at both of its junctions.
struct ChainSpec {
    double lambda = 20.0;
    double delta = 0.1;
    std::vector<double> radii;
    std::vector<CatSphKind> kinds;
    /// Points on sphere arcs that must become sample vertices (e.g. a triple point).
    std::vector<std::array<double, 2>> vertices;

    void validate() const;
};

struct ModelPath {
    ProfilePath path;
    std::vector<double> neck_heights;  // waist height of every neck
    std::vector<double> sphere_centers;
};

/// Piecewise-analytic profile from the bottom pole to the top pole.
ModelPath chain_path(const ChainSpec& spec);
ModelPath model_path(const AttachmentConfig& cfg);

/// Sampled profile of the configuration; energy of the neck is zero, so the
/// total is the sum of the two catenoid-sphere energies.
ProfileCurve assemble_model(const AttachmentConfig& cfg, const SamplingPlan& plan = {});

/// Energy of the assembled model by per-segment adaptive quadrature.
EnergyBreakdown model_energy(const AttachmentConfig& cfg, const QuadratureSettings& q = {});

/// Three spheres, two alpha-alpha necks (tau = 5/2). The radius of the top
/// sphere is solved so that its circle passes through the point where the
/// bottom and middle circles meet, which makes that point a triple point.
struct TripleBubble {
    ChainSpec spec;
    std::array<double, 2> triple_point;
};
TripleBubble triple_bubble(double lambda = 2.0, double delta = 0.1, double R_middle = 1.5, double R_bottom = 6.0);

// ---------------------------------------------------------------------------
// Shrinking homotopy

struct HomotopyTrace {
    double lambda_start = 0, lambda_end = 0, delta = 0;
    std::vector<double> t, lambda_t, W;
    bool monotone = true;  // every forward difference in t is <= 0
    double epsilon = 0;    // 4 pi - W at the end of the trace
    std::vector<std::string> warnings;

    std::string to_csv() const;
};

/// W_beta(lambda_t, lambda_t, delta) for t_k = k/steps,
/// lambda_t = (1 - t) lambda_start + t lambda_end.
HomotopyTrace shrinking_trace(double lambda_start, double lambda_end, double delta, int steps,
                              const QuadratureSettings& q = {});

struct CompositeEnergy {
    double W_lower = 0, W_upper = 0, total = 0;
    double epsilon = 0;  // 4 pi - W_beta(Lambda, Lambda, delta)
    bool below_8pi = false;
    bool untouched_end_ok = true;  // untouched alpha end below 4 pi + epsilon
    std::string note;
};

/// Energy of the configuration after every beta end has been shrunk to the
/// trace end; alpha ends keep cfg.lambda. Throws ParameterError without a
/// beta end.
CompositeEnergy composite_energy_after_shrink(const AttachmentConfig& cfg, const HomotopyTrace& trace,
                                              const QuadratureSettings& q = {});

// ---------------------------------------------------------------------------
// Turning-number bound

struct TurningSegment {
    std::string kind;  // "start", "interior", "end"
    double s_from = 0, s_to = 0;
    double W_piece = 0;       // energy of the curve piece
    double W_quarters = 0;    // energy of the attached quarter circles
    double W_closed = 0;      // W_piece + W_quarters
    double required = 0;      // 2 pi (ends) or 4 pi (interior), on the piece
    bool ok = false;
};

struct TurningBoundReport {
    double tau = 0;
    bool reoriented = false;
    std::vector<double> crossing_s;  // t_l as arclength parameters
    std::vector<std::array<double, 2>> crossing_points;
    std::vector<TurningSegment> segments;
    double W = 0, W_error = 0;
    double bound = 0, tolerance = 0;
    bool global_ok = false;
    bool boundary_case = false;  // W equals the bound within tolerance (round sphere)
    bool passed = false;
    std::string to_json() const;
};

/// Splits the profile at the first parameters where the tangent lift reaches
/// 2 pi l + pi/2 and checks the per-piece and global energy bounds.
TurningBoundReport turning_bound_report(const ProfileCurve& curve, double tol = 1e-6);

/// SVG of the profile with crossing points and closing quarter circles.
std::string turning_bound_svg(const ProfileCurve& curve, const TurningBoundReport& report);

}  // namespace willmore
