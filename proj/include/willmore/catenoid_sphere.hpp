#pragma once

#include <string>
#include <vector>

#include "willmore/gluing.hpp"
#include "willmore/profile.hpp"

namespace willmore {

/// beta: sphere tangent to the catenoid at the junction; alpha: transversal.
enum class CatSphKind { alpha, beta };

const char* to_string(CatSphKind kind);
CatSphKind parse_catsph_kind(const std::string& s);

struct CatSphParams {
    double lambda = 2.0;
    double R = 2.0;
    double delta = 0.1;
    CatSphKind kind = CatSphKind::beta;

    /// Throws ParameterError naming the violated constraint. delta = 0 is
    /// accepted only when `allow_zero_delta` is set.
    void validate(bool allow_zero_delta = false) const;
    double t0() const;     // arccosh(lambda) / lambda
    double theta() const;  // arcsin(1 / R)
};

/// Closed-form graphs of the catenary (u) and the sphere of radius R (v)
/// through (1, 0), with derivatives in t and in lambda. The lambda
/// derivatives of v are those of the tangent configuration R = lambda.
class DerivativeTable {
public:
    explicit DerivativeTable(double lambda);
    DerivativeTable(double lambda, double R);

    double lambda() const { return lambda_; }
    double R() const { return R_; }

    /// k-th t-derivative, k = 0..3. Domain t > 1/lambda.
    double u(int k, double t) const;
    /// lambda-derivative of the k-th t-derivative.
    double du(int k, double t) const;
    /// Domain |t| < R.
    double v(int k, double t) const;
    double dv(int k, double t) const;

    /// Band interpolant h = u + phi (v_s - u) with v_s = v (beta) or -v
    /// (alpha); derivatives h, h', h'' and lambda-derivatives of h', h''.
    struct Band {
        double h, h1, h2, dh1, dh2;
    };
    Band band(double t, const GluingProfile& phi, CatSphKind kind = CatSphKind::beta) const;

private:
    void check_u(double t) const;
    void check_v(double t) const;
    double lambda_, R_;
};

/// Closed forms of a DerivativeTable against five-point central differences
/// of the quantity one level below (t-derivatives from the previous order,
/// lambda-derivatives from the plain quantity). u and v themselves are
/// checked against the implicit equations of the catenary and the circle.
struct DerivativeCheck {
    struct Row {
        std::string name;
        double lambda;
        double max_rel_error;
    };
    std::vector<Row> rows;
    double worst = 0.0;
    double rel_tol = 1e-6;
    double band_lambda = 20, band_delta = 0.1;
    double band_dh1_max = 0.0;  // largest lambda-derivative of h' on the band (must be < 0)
    bool passed = false;
    std::string to_json() const;
};

DerivativeCheck check_derivative_table(const std::vector<double>& lambdas, int points = 100, double delta = 0.1,
                                       double rel_tol = 1e-6, double band_lambda = 20.0, double band_delta = 0.1);

/// Piecewise-analytic profile of CatSph(lambda, R, delta): catenary from the
/// waist (1/lambda, -t0) to radius 1 - delta, glued band up to 1 + delta,
/// then the spherical arc to the pole. Segments are tagged neck, glue, cap.
ProfilePath catsph_path(const CatSphParams& p, const GluingProfile& phi);
ProfileCurve build_catsph(const CatSphParams& p, const GluingProfile& phi, const SamplingPlan& plan = {});

/// Closed form 2 pi (1 + sqrt(1 - rho^2 / R^2)): energy of the round sphere
/// of radius R minus the cap cut off by a circle of radius rho.
double cap_energy_closed_form(double R, double rho);
/// d/dlambda of cap_energy_closed_form(lambda, 1 + delta).
double cap_energy_lambda_derivative(double lambda, double delta);

struct CatSphEnergy {
    EnergyBreakdown parts;
    double cap_closed_form = 0.0;
    bool closed_form_only = false;  // delta == 0 extension
};

/// Breakdown by adaptive quadrature per segment; delta = 0 returns the
/// closed-form extension 2 pi (1 + sqrt(1 - 1/R^2)).
CatSphEnergy catsph_energy(const CatSphParams& p, const QuadratureSettings& q = {});

/// Band energy alone, from the graph form of the integrand over [1-delta, 1+delta].
QuadratureResult glue_energy(double lambda, double R, double delta, CatSphKind kind,
                             const QuadratureSettings& q = {});

// ---------------------------------------------------------------------------
// Sweeps and verification

struct SweepRow {
    double lambda, R, delta;
    CatSphKind kind;
    double W_cap = 0, W_glue = 0, W_neck = 0, W_total = 0, err = 0;
    std::string status = "ok";
};

/// Rows in (lambda, delta) input order with R = lambda.
std::vector<SweepRow> catsph_sweep(CatSphKind kind, const std::vector<double>& lambdas,
                                   const std::vector<double>& deltas, const QuadratureSettings& q = {});
std::string sweep_csv(const std::vector<SweepRow>& rows);

struct Lemma24Settings {
    std::vector<double> mono_lambdas;  // part (i)
    std::vector<double> mono_deltas;
    double limit_lambda = 10.0;  // part (ii)
    std::vector<double> limit_deltas;
    std::vector<double> large_lambdas;  // part (iii)
    double large_delta = 0.1;
    double large_tol = 0.01;
    double limit_tol = 1e-3;

    static Lemma24Settings defaults();
};

struct Lemma24Report {
    struct Monotone {
        double delta;
        std::vector<double> lambdas, W, forward_diff;
        bool all_positive;
        double onset_lambda;  // smallest grid lambda from which all differences are positive (NaN if none)
    };
    std::vector<Monotone> monotone;

    double limit_lambda = 0, closed_form = 0;
    std::vector<double> limit_deltas, limit_gaps;
    bool limit_monotone = false, limit_small = false, closed_form_below_4pi = false;

    std::vector<double> large_lambdas, beta_gap, alpha_excess;
    bool beta_close = false, alpha_above = false, alpha_gap_decreasing = false;

    bool passed = false;
    std::string to_json() const;
};

Lemma24Report verify_lemma_2_4(const Lemma24Settings& s, const QuadratureSettings& q = {});

struct LemmaA3Settings {
    std::vector<double> lambdas{20, 50, 100, 200};
    std::vector<double> deltas{0.05, 0.1, 0.2};
    double spread_limit = 4.0;
    double step_rel = 1e-4;  // central-difference step lambda * step_rel
};

struct LemmaA3Report {
    struct Cell {
        double lambda, delta;
        double glue_alpha, glue_beta, dglue_beta;
        double scaled_alpha, scaled_beta, scaled_dbeta;
    };
    std::vector<Cell> cells;
    double alpha_min = 0, alpha_max = 0, beta_min = 0, beta_max = 0, dbeta_min = 0, dbeta_max = 0;
    double C_alpha = 0, C_beta = 0, C_dbeta = 0;
    bool alpha_ok = false, beta_ok = false, dbeta_ok = false;
    bool passed = false;
    std::string to_json() const;
};

LemmaA3Report verify_lemma_A3(const LemmaA3Settings& s, const QuadratureSettings& q = {});

}  // namespace willmore
