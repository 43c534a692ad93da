#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "willmore/quadrature.hpp"

namespace willmore {

/// Smooth step phi with phi = 0 below center - delta, phi = 1 above
/// center + delta: the normalized antiderivative of exp(1/(y^2 - 1)),
/// rescaled to the band.
class GluingProfile {
public:
    GluingProfile() = default;
    GluingProfile(double delta, double center);

    double delta() const { return delta_; }
    double center() const { return center_; }
    /// Realized constant: max over a 1e5-point grid of max(delta |phi'|, delta^2 |phi''|).
    /// Independent of delta.
    double M() const;

    double operator()(double x) const;
    double d1(double x) const;
    double d2(double x) const;

    /// 1 - phi.
    GluingProfile complement() const;
    bool is_complement() const { return complement_; }

private:
    double delta_ = 0.5;
    double center_ = 1.0;
    bool complement_ = false;
};

/// Gluing function on [1 - delta, 1 + delta]; delta must lie in (0, 1).
GluingProfile make_gluing_function(double delta);
/// Same, with the band centered at `center` (delta in (0, center)).
GluingProfile make_gluing_function(double delta, double center);

/// The unscaled step g on [-1, 1] and its derivatives; g(y) = 0 for y <= -1
/// and g(y) = 1 for y >= 1.
double gluing_step(double y);
double gluing_step_d1(double y);
double gluing_step_d2(double y);
/// Normalizing constant: integral of exp(1/(y^2-1)) over (-1, 1).
double bump_integral();

/// Height, first and second Cartesian derivatives of a graph u(x, y).
struct CartesianJet {
    double u = 0, ux = 0, uy = 0, uxx = 0, uxy = 0, uyy = 0;
};

/// Height and polar derivatives u_r, u_rr, u_phi, u_rphi, u_phiphi.
struct PolarJet {
    double u = 0, ur = 0, urr = 0, up = 0, urp = 0, upp = 0;
};

PolarJet to_polar(const CartesianJet& c, double r, double phi);
CartesianJet to_cartesian(const PolarJet& p, double r, double phi);

/// Radial function value with first and second derivative.
struct RadialJet {
    double u = 0, du = 0, ddu = 0;
};

struct PolarGrid {
    double r_in = 0.9, r_out = 1.1;
    int n_r = 512;    // radial intervals; n_r + 1 nodes including both circles
    int n_phi = 128;  // angular nodes, periodic

    double radius(int i) const { return r_in + (r_out - r_in) * i / n_r; }
    double angle(int j) const;
    bool operator==(const PolarGrid&) const = default;
};

/// Graph u over the annulus r_in <= |x| <= r_out, sampled on a polar grid.
/// Derivatives are carried when the input has closed forms; otherwise
/// fourth-order differences are taken on demand.
class AnnulusGraph {
public:
    AnnulusGraph() = default;
    /// Values only.
    AnnulusGraph(PolarGrid grid, std::vector<double> values);
    /// Values with polar derivatives.
    AnnulusGraph(PolarGrid grid, std::vector<PolarJet> jets, bool radial);

    static AnnulusGraph from_cartesian(const PolarGrid& grid, const std::function<CartesianJet(double, double)>& f);
    static AnnulusGraph from_radial(const PolarGrid& grid, const std::function<RadialJet(double)>& f);
    static AnnulusGraph from_values(const PolarGrid& grid, const std::function<double(double, double)>& f);

    const PolarGrid& grid() const { return grid_; }
    bool radial() const { return radial_; }
    bool has_derivatives() const { return jets_.has_value(); }
    double value(int i, int j) const { return values_[index(i, j)]; }
    const std::vector<double>& values() const { return values_; }
    /// Stored derivatives, or fourth-order differences of the values.
    PolarJet jet(int i, int j) const;
    std::vector<PolarJet> all_jets() const;
    /// Same graph with stored derivatives dropped.
    AnnulusGraph values_only() const;

    /// sum over |alpha| <= 2 of sup |D^alpha u|, Cartesian derivatives,
    /// mixed derivative counted for both orders (d_x d_y and d_y d_x).
    double c2_norm() const;

    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * grid_.n_phi + j; }

private:
    PolarGrid grid_;
    std::vector<double> values_;
    std::optional<std::vector<PolarJet>> jets_;
    bool radial_ = false;
};

/// Pointwise difference u1 - u2 (derivatives carried when both have them).
AnnulusGraph difference(const AnnulusGraph& a, const AnnulusGraph& b);

/// (1 - phi(|x|)) u1 + phi(|x|) u2 on the shared grid, evaluated as
/// u1 + phi (u2 - u1) with phi = 0 and phi = 1 copied through unchanged.
AnnulusGraph delta_glue(const AnnulusGraph& u1, const AnnulusGraph& u2, const GluingProfile& phi);

struct GraphEnergy {
    double value = 0.0;
    double error = 0.0;
};

/// Willmore energy of the graph: Simpson in r (Richardson error estimate),
/// periodic trapezoid in phi.
GraphEnergy willmore_energy_graph(const AnnulusGraph& g);

/// Rotationally symmetric reduction 2 pi int (t h'' + h' + h'^3)^2 / (4 t (1+h'^2)^(5/2)) dt.
QuadratureResult willmore_energy_radial(const std::function<RadialJet(double)>& h, double a, double b,
                                        const QuadratureSettings& q = {});

/// Sum over |alpha| <= 2 of sup |D^alpha u| on a Cartesian grid of the disk
/// of given radius around the origin, and the second-order part alone.
struct DiskNorms {
    double c2 = 0.0;
    double second = 0.0;
};
DiskNorms disk_norms(const std::function<CartesianJet(double, double)>& f, double radius, int n);

// ---------------------------------------------------------------------------
// Gluing-bound verification

struct GluingPair {
    std::string label;
    AnnulusGraph u1, u2;
};

struct GluingPairRow {
    std::string label;
    std::string set;  // "fit", "holdout", "extra"
    bool skipped = false;
    std::string notice;
    double norm_u1 = 0, norm_u2 = 0;
    double distance = 0;  // ||u2 - u1||_C2
    double w1 = 0, w_glued = 0;
    double excess = 0;
    double ratio = 0;
    bool within_bound = true;
};

struct GluingBoundSettings {
    /// Multiplier applied to the largest fit-set ratio to obtain the bound
    /// used on the held-out set.
    double safety_factor = 2.0;
};

struct GluingBoundReport {
    double delta = 0;
    double M = 0;
    double max_fit_ratio = 0;
    double fitted_C = 0;
    std::vector<GluingPairRow> rows;
    std::vector<double> slope_norms, slope_excess;
    double slope = 0;
    bool slope_ok = false;
    bool passed = false;
    std::string to_json() const;
};

/// Evaluates W(glued) - W(u1) against ||u2 - u1||_C2 for the fit pairs,
/// fits C as safety_factor x the largest ratio and checks the bound on the
/// held-out and extra pairs. Pairs violating ||u_i||_C2 <= 1 are skipped.
GluingBoundReport verify_gluing_bound(const std::vector<GluingPair>& fit, const std::vector<GluingPair>& holdout,
                                      const std::vector<GluingPair>& extra, const std::vector<GluingPair>& slope_pairs,
                                      const GluingProfile& phi, const GluingBoundSettings& settings = {});

/// Random smooth pairs with ||u_i||_C2 <= 1 on the annulus: low-degree
/// polynomials plus plane waves, u2 = u1 + eps w with eps spread over
/// several decades. Deterministic in `seed`.
std::vector<GluingPair> random_gluing_corpus(const PolarGrid& grid, std::size_t count, std::uint64_t seed);

/// Pairs (base, base + c bump) for c in `scales`, base a shallow paraboloid.
std::vector<GluingPair> slope_corpus(const PolarGrid& grid, const std::vector<double>& scales);

}  // namespace willmore
