#include "willmore/catenoid_sphere.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "willmore/discrete.hpp"
#include "willmore/errors.hpp"
#include "willmore/profile_io.hpp"

namespace willmore {

namespace {
constexpr double kPi = std::numbers::pi;
}

const char* to_string(CatSphKind kind) { return kind == CatSphKind::alpha ? "alpha" : "beta"; }

CatSphKind parse_catsph_kind(const std::string& s) {
    if (s == "alpha" || s == "a") return CatSphKind::alpha;
    if (s == "beta" || s == "b") return CatSphKind::beta;
    throw ParameterError("unknown catenoid-sphere kind '" + s + "' (expected alpha or beta)");
}

void CatSphParams::validate(bool allow_zero_delta) const {
    if (!(lambda > 1.0) || !std::isfinite(lambda)) throw ParameterError("lambda must be > 1");
    if (!(R > 1.0) || !std::isfinite(R)) throw ParameterError("R must be > 1");
    if (allow_zero_delta && delta == 0.0) return;
    if (!(delta > 0.0)) throw ParameterError("delta must be > 0");
    if (!(delta < 1.0 - 1.0 / lambda)) throw ParameterError("delta must be < 1 - 1/lambda");
    if (!(delta < R - 1.0)) throw ParameterError("delta must be < R - 1");
}

double CatSphParams::t0() const { return std::acosh(lambda) / lambda; }
double CatSphParams::theta() const { return std::asin(1.0 / R); }

// ---------------------------------------------------------------------------
// DerivativeTable

DerivativeTable::DerivativeTable(double lambda) : DerivativeTable(lambda, lambda) {}

DerivativeTable::DerivativeTable(double lambda, double R) : lambda_(lambda), R_(R) {
    if (!(lambda > 1.0)) throw ParameterError("lambda must be > 1");
    if (!(R > 1.0)) throw ParameterError("R must be > 1");
}

void DerivativeTable::check_u(double t) const {
    if (!(t > 1.0 / lambda_)) throw ParameterError("catenary graph evaluated at t <= 1/lambda");
}
void DerivativeTable::check_v(double t) const {
    if (!(std::abs(t) < R_)) throw ParameterError("sphere graph evaluated at |t| >= R");
}

namespace {

// acosh(l t) - acosh(l) without cancellation near t = 1.
double acosh_difference(double l, double t) {
    const double a = std::sqrt(l * l * t * t - 1.0), b = std::sqrt(l * l - 1.0);
    const double num = l * (t - 1.0) + l * l * (t * t - 1.0) / (a + b);
    return std::log1p(num / (l + b));
}

}  // namespace

double DerivativeTable::u(int k, double t) const {
    check_u(t);
    const double l = lambda_, q = l * l * t * t - 1.0, sq = std::sqrt(q);
    switch (k) {
        case 0: return acosh_difference(l, t) / l;
        case 1: return 1.0 / sq;
        case 2: return -l * l * t / (q * sq);
        case 3: return l * l * (2.0 * l * l * t * t + 1.0) / (q * q * sq);
    }
    throw ParameterError("derivative order must be 0..3");
}

double DerivativeTable::du(int k, double t) const {
    check_u(t);
    const double l = lambda_, q = l * l * t * t - 1.0, sq = std::sqrt(q);
    switch (k) {
        case 0: {
            const double s1 = std::sqrt(l * l - 1.0);
            // l t / sq - l / s1 with the difference of square roots expanded
            const double tail = l * (1.0 - t * t) / (sq * s1 * (t * s1 + sq));
            return (tail - acosh_difference(l, t)) / (l * l);
        }
        case 1: return -l * t * t / (q * sq);
        case 2: return l * t * (2.0 + l * l * t * t) / (q * q * sq);
        case 3: return -l * (2.0 * std::pow(l * t, 4) + 11.0 * l * l * t * t + 2.0) / (q * q * q * sq);
    }
    throw ParameterError("derivative order must be 0..3");
}

double DerivativeTable::v(int k, double t) const {
    check_v(t);
    const double R = R_, p = R * R - t * t, sp = std::sqrt(p);
    switch (k) {
        case 0: return (t * t - 1.0) / (std::sqrt(R * R - 1.0) + sp);
        case 1: return t / sp;
        case 2: return R * R / (p * sp);
        case 3: return 3.0 * R * R * t / (p * p * sp);
    }
    throw ParameterError("derivative order must be 0..3");
}

double DerivativeTable::dv(int k, double t) const {
    check_v(t);
    const double l = R_, p = l * l - t * t, sp = std::sqrt(p);
    switch (k) {
        case 0: {
            const double s1 = std::sqrt(l * l - 1.0);
            return l * (1.0 - t * t) / (s1 * sp * (s1 + sp));
        }
        case 1: return -l * t / (p * sp);
        case 2: return -(l * l * l + 2.0 * l * t * t) / (p * p * sp);
        case 3: return -3.0 * l * t * (3.0 * l * l + 2.0 * t * t) / (p * p * p * sp);
    }
    throw ParameterError("derivative order must be 0..3");
}

DerivativeTable::Band DerivativeTable::band(double t, const GluingProfile& phi, CatSphKind kind) const {
    const double s = kind == CatSphKind::beta ? 1.0 : -1.0;
    const double f = phi(t), f1 = phi.d1(t), f2 = phi.d2(t);
    const double u0 = u(0, t), u1 = u(1, t), u2 = u(2, t);
    const double w0 = s * v(0, t) - u0, w1 = s * v(1, t) - u1, w2 = s * v(2, t) - u2;
    const double du1 = du(1, t), du2 = du(2, t);
    const double dw0 = s * dv(0, t) - du(0, t), dw1 = s * dv(1, t) - du1, dw2 = s * dv(2, t) - du2;
    Band b;
    b.h = u0 + f * w0;
    b.h1 = u1 + f * w1 + f1 * w0;
    b.h2 = u2 + f * w2 + 2.0 * f1 * w1 + f2 * w0;
    b.dh1 = du1 + f * dw1 + f1 * dw0;
    b.dh2 = du2 + f * dw2 + 2.0 * f1 * dw1 + f2 * dw0;
    return b;
}

namespace {

template <class F>
double five_point(F&& f, double x, double h) {
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

double rel_err(double exact, double approx) {
    return std::abs(exact - approx) / std::max({std::abs(exact), std::abs(approx), 1e-300});
}

}  // namespace

DerivativeCheck check_derivative_table(const std::vector<double>& lambdas, int points, double delta, double rel_tol,
                                       double band_lambda, double band_delta) {
    if (points < 1) throw ParameterError("points must be >= 1");
    if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("delta must be in (0, 1)");
    DerivativeCheck out;
    out.rel_tol = rel_tol;
    out.band_lambda = band_lambda;
    out.band_delta = band_delta;
    const double ht = 1e-3;
    std::vector<double> ts;
    for (int i = 0; i < points; ++i) ts.push_back(1.0 - delta + 2.0 * delta * (i + 0.5) / points);
    for (double l : lambdas) {
        if (!(1.0 / l < 1.0 - delta - 2 * ht) || !(1.0 + delta + 2 * ht < l))
            throw ParameterError("sample band leaves the domain of the closed forms for lambda=" + std::to_string(l));
        const DerivativeTable tab(l);
        const double hl = 1e-3 * l;
        auto row = [&](std::string name, auto&& exact, auto&& approx) {
            double e = 0.0;
            for (double t : ts) e = std::max(e, rel_err(exact(t), approx(t)));
            out.rows.push_back({std::move(name), l, e});
        };
        // u: cosh(lambda (u + t0)) / lambda = t; v: t^2 + (v - sqrt(R^2 - 1))^2 = R^2.
        const double t0 = std::acosh(l) / l;
        row("u", [](double t) { return t; }, [&](double t) { return std::cosh(l * (tab.u(0, t) + t0)) / l; });
        row("v", [&](double) { return l * l; },
            [&](double t) { return t * t + std::pow(tab.v(0, t) - std::sqrt(l * l - 1.0), 2); });
        static const char* un[] = {"u", "u'", "u''", "u'''"};
        static const char* vn[] = {"v", "v'", "v''", "v'''"};
        for (int k = 1; k <= 3; ++k) {
            row(un[k], [&](double t) { return tab.u(k, t); },
                [&](double t) { return five_point([&](double x) { return tab.u(k - 1, x); }, t, ht); });
            row(vn[k], [&](double t) { return tab.v(k, t); },
                [&](double t) { return five_point([&](double x) { return tab.v(k - 1, x); }, t, ht); });
        }
        for (int k = 0; k <= 3; ++k) {
            row(std::string("d_lambda ") + un[k], [&](double t) { return tab.du(k, t); },
                [&](double t) { return five_point([&](double m) { return DerivativeTable(m).u(k, t); }, l, hl); });
            row(std::string("d_lambda ") + vn[k], [&](double t) { return tab.dv(k, t); },
                [&](double t) { return five_point([&](double m) { return DerivativeTable(m).v(k, t); }, l, hl); });
        }
    }
    for (const auto& r : out.rows) out.worst = std::max(out.worst, r.max_rel_error);

    const DerivativeTable band_tab(band_lambda);
    const GluingProfile phi = make_gluing_function(band_delta);
    out.band_dh1_max = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= points; ++i) {
        const double t = 1.0 - band_delta + 2.0 * band_delta * i / points;
        out.band_dh1_max = std::max(out.band_dh1_max, band_tab.band(t, phi, CatSphKind::beta).dh1);
    }
    out.passed = out.worst <= rel_tol && out.band_dh1_max < 0.0;
    return out;
}

std::string DerivativeCheck::to_json() const {
    nlohmann::ordered_json j;
    auto rj = nlohmann::ordered_json::array();
    for (const auto& r : rows) rj.push_back({{"form", r.name}, {"lambda", r.lambda}, {"max_rel_error", r.max_rel_error}});
    j["forms"] = rj;
    j["worst"] = worst;
    j["rel_tol"] = rel_tol;
    j["band"] = {{"lambda", band_lambda}, {"delta", band_delta}, {"max_d_lambda_h1", band_dh1_max}};
    j["passed"] = passed;
    return j.dump(2);
}

// ---------------------------------------------------------------------------
// Profiles

ProfilePath catsph_path(const CatSphParams& p, const GluingProfile& phi) {
    p.validate();
    if (std::abs(phi.delta() - p.delta) > 1e-15 * p.delta || phi.center() != 1.0 || phi.is_complement())
        throw ParameterError("gluing profile must have half-width delta centred at radius 1");
    const double l = p.lambda, R = p.R, d = p.delta, t0 = p.t0();
    const DerivativeTable tab(l, R);
    const CatSphKind kind = p.kind;

    PathSegment neck;
    neck.role = SegmentRole::neck;
    neck.label = "catenary";
    neck.a = 0.0;
    neck.b = std::acosh(l * (1.0 - d)) / l;
    neck.eval = [l, t0](double s) {
        Jet j;
        const double c = std::cosh(l * s), sh = std::sinh(l * s);
        j.r = c / l;
        j.h = s - t0;
        j.dr = sh;
        j.dh = 1.0;
        j.ddr = l * c;
        j.ddh = 0.0;
        return j;
    };

    PathSegment glue;
    glue.role = SegmentRole::glue;
    glue.label = "band";
    glue.a = 1.0 - d;
    glue.b = 1.0 + d;
    glue.eval = [tab, phi, kind](double t) {
        const auto b = tab.band(t, phi, kind);
        Jet j;
        j.r = t;
        j.h = b.h;
        j.dr = 1.0;
        j.dh = b.h1;
        j.ddr = 0.0;
        j.ddh = b.h2;
        return j;
    };

    // Arc R (sin psi, c - s cos psi) from the band edge to the far pole,
    // psi measured from the pole nearest the junction.
    const double c = (kind == CatSphKind::beta ? 1.0 : -1.0) * std::sqrt(R * R - 1.0);
    const double sg = kind == CatSphKind::beta ? 1.0 : -1.0;
    PathSegment cap;
    cap.role = SegmentRole::cap;
    cap.label = "sphere";
    cap.a = std::asin((1.0 + d) / R);
    cap.b = kPi;
    cap.eval = [R, c, sg](double psi) {
        const double sn = std::sin(psi), cs = std::cos(psi);
        Jet j;
        j.r = R * sn;
        j.h = c - sg * R * cs;
        j.dr = R * cs;
        j.dh = sg * R * sn;
        j.ddr = -R * sn;
        j.ddh = sg * R * cs;
        return j;
    };
    return ProfilePath({neck, glue, cap}, {false, true});
}

ProfileCurve build_catsph(const CatSphParams& p, const GluingProfile& phi, const SamplingPlan& plan) {
    return catsph_path(p, phi).sample(plan);
}

double cap_energy_closed_form(double R, double rho) {
    if (!(R > 0.0) || !(rho >= 0.0) || rho > R) throw ParameterError("cap closed form needs 0 <= rho <= R");
    return 2.0 * kPi * (1.0 + std::sqrt(1.0 - rho * rho / (R * R)));
}

double cap_energy_lambda_derivative(double lambda, double delta) {
    const double a = 1.0 + delta;
    return 2.0 * kPi * a * a / (lambda * lambda * std::sqrt(lambda * lambda - a * a));
}

CatSphEnergy catsph_energy(const CatSphParams& p, const QuadratureSettings& q) {
    p.validate(true);
    CatSphEnergy out;
    if (p.delta == 0.0) {
        out.closed_form_only = true;
        out.cap_closed_form = cap_energy_closed_form(p.R, 1.0);
        out.parts.cap.value = out.cap_closed_form;
        out.parts.total.value = out.cap_closed_form;
        return out;
    }
    out.parts = willmore_energy(catsph_path(p, make_gluing_function(p.delta)), q);
    out.cap_closed_form = cap_energy_closed_form(p.R, 1.0 + p.delta);
    return out;
}

QuadratureResult glue_energy(double lambda, double R, double delta, CatSphKind kind, const QuadratureSettings& q) {
    CatSphParams p{lambda, R, delta, kind};
    p.validate();
    const DerivativeTable tab(lambda, R);
    const GluingProfile phi = make_gluing_function(delta);
    auto f = [&](double t) {
        const auto b = tab.band(t, phi, kind);
        return detail::graph_density(t, b.h1, b.h2);
    };
    return adaptive_simpson(f, 1.0 - delta, 1.0 + delta, q);
}

// ---------------------------------------------------------------------------
// Sweeps

std::vector<SweepRow> catsph_sweep(CatSphKind kind, const std::vector<double>& lambdas,
                                   const std::vector<double>& deltas, const QuadratureSettings& q) {
    std::vector<SweepRow> rows;
    for (double l : lambdas)
        for (double d : deltas) {
            SweepRow row{l, l, d, kind};
            try {
                const auto e = catsph_energy({l, l, d, kind}, q);
                row.W_cap = e.parts.cap.value;
                row.W_glue = e.parts.glue.value;
                row.W_neck = e.parts.neck.value;
                row.W_total = e.parts.total.value;
                row.err = e.parts.total.error;
                if (!e.parts.converged) row.status = "unconverged";
            } catch (const std::exception& ex) {
                row.status = std::string("error: ") + ex.what();
                for (char& c : row.status)
                    if (c == ',' || c == '\n') c = ';';
            }
            rows.push_back(row);
        }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "lambda,R,delta,kind,W_cap,W_glue,W_neck,W_total,err,status\n";
    for (const auto& r : rows)
        os << format_double(r.lambda) << ',' << format_double(r.R) << ',' << format_double(r.delta) << ','
           << to_string(r.kind) << ',' << format_double(r.W_cap) << ',' << format_double(r.W_glue) << ','
           << format_double(r.W_neck) << ',' << format_double(r.W_total) << ',' << format_double(r.err) << ','
           << r.status << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// Beta energies: monotonicity, delta -> 0 limit, large lambda

Lemma24Settings Lemma24Settings::defaults() {
    Lemma24Settings s;
    for (int l = 20; l <= 200; l += 10) s.mono_lambdas.push_back(l);
    s.mono_deltas = {0.1};
    s.limit_deltas = {1e-1, 1e-2, 1e-3};
    s.large_lambdas = {10, 100, 1000};
    return s;
}

namespace {

double total_energy(double l, double d, CatSphKind kind, const QuadratureSettings& q) {
    return catsph_energy({l, l, d, kind}, q).parts.total.value;
}

}  // namespace

Lemma24Report verify_lemma_2_4(const Lemma24Settings& s, const QuadratureSettings& q) {
    Lemma24Report rep;
    bool ok = true;
    for (double d : s.mono_deltas) {
        Lemma24Report::Monotone m;
        m.delta = d;
        m.lambdas = s.mono_lambdas;
        std::sort(m.lambdas.begin(), m.lambdas.end());
        for (double l : m.lambdas) m.W.push_back(total_energy(l, d, CatSphKind::beta, q));
        for (std::size_t k = 1; k < m.W.size(); ++k) m.forward_diff.push_back(m.W[k] - m.W[k - 1]);
        m.all_positive = std::all_of(m.forward_diff.begin(), m.forward_diff.end(), [](double x) { return x > 0.0; });
        m.onset_lambda = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t k = m.forward_diff.size(); k-- > 0;) {
            if (!(m.forward_diff[k] > 0.0)) break;
            m.onset_lambda = m.lambdas[k];
        }
        ok = ok && m.all_positive;
        rep.monotone.push_back(std::move(m));
    }

    rep.limit_lambda = s.limit_lambda;
    rep.closed_form = catsph_energy({s.limit_lambda, s.limit_lambda, 0.0, CatSphKind::beta}).parts.total.value;
    rep.closed_form_below_4pi = rep.closed_form < 4.0 * kPi;
    rep.limit_deltas = s.limit_deltas;
    std::sort(rep.limit_deltas.begin(), rep.limit_deltas.end(), std::greater<>());
    for (double d : rep.limit_deltas)
        rep.limit_gaps.push_back(std::abs(total_energy(s.limit_lambda, d, CatSphKind::beta, q) - rep.closed_form));
    rep.limit_monotone = true;
    for (std::size_t k = 1; k < rep.limit_gaps.size(); ++k)
        rep.limit_monotone = rep.limit_monotone && rep.limit_gaps[k] < rep.limit_gaps[k - 1];
    rep.limit_small = !rep.limit_gaps.empty() && rep.limit_gaps.back() < s.limit_tol;
    ok = ok && rep.closed_form_below_4pi && rep.limit_monotone && rep.limit_small;

    rep.large_lambdas = s.large_lambdas;
    std::sort(rep.large_lambdas.begin(), rep.large_lambdas.end());
    for (double l : rep.large_lambdas) {
        rep.beta_gap.push_back(std::abs(total_energy(l, s.large_delta, CatSphKind::beta, q) - 4.0 * kPi));
        rep.alpha_excess.push_back(total_energy(l, s.large_delta, CatSphKind::alpha, q) - 4.0 * kPi);
    }
    rep.beta_close = !rep.beta_gap.empty() && rep.beta_gap.back() < s.large_tol;
    rep.alpha_above = std::all_of(rep.alpha_excess.begin(), rep.alpha_excess.end(), [](double x) { return x > 0.0; });
    rep.alpha_gap_decreasing = true;
    for (std::size_t k = 1; k < rep.alpha_excess.size(); ++k)
        rep.alpha_gap_decreasing = rep.alpha_gap_decreasing && rep.alpha_excess[k] < rep.alpha_excess[k - 1];
    ok = ok && rep.beta_close && rep.alpha_above && rep.alpha_gap_decreasing;
    rep.passed = ok;
    return rep;
}

namespace {

nlohmann::ordered_json number_or_null(double x) {
    return std::isfinite(x) ? nlohmann::ordered_json(x) : nlohmann::ordered_json(nullptr);
}

}  // namespace

std::string Lemma24Report::to_json() const {
    nlohmann::ordered_json j;
    auto mono = nlohmann::ordered_json::array();
    for (const auto& m : monotone) {
        nlohmann::ordered_json o;
        o["delta"] = m.delta;
        o["lambda"] = m.lambdas;
        o["W_beta"] = m.W;
        o["forward_diff"] = m.forward_diff;
        o["all_positive"] = m.all_positive;
        o["onset_lambda"] = number_or_null(m.onset_lambda);
        mono.push_back(o);
    }
    j["increasing_in_lambda"] = mono;
    j["delta_limit"] = {{"lambda", limit_lambda},
                        {"closed_form", closed_form},
                        {"closed_form_below_4pi", closed_form_below_4pi},
                        {"delta", limit_deltas},
                        {"gap", limit_gaps},
                        {"gap_decreasing", limit_monotone},
                        {"last_gap_small", limit_small}};
    j["lambda_limit"] = {{"lambda", large_lambdas},
                         {"beta_gap_to_4pi", beta_gap},
                         {"alpha_excess_over_4pi", alpha_excess},
                         {"beta_close", beta_close},
                         {"alpha_above_4pi", alpha_above},
                         {"alpha_gap_decreasing", alpha_gap_decreasing}};
    j["passed"] = passed;
    return j.dump(2);
}

// ---------------------------------------------------------------------------
// Scaling of the band energies

LemmaA3Report verify_lemma_A3(const LemmaA3Settings& s, const QuadratureSettings& q) {
    LemmaA3Report rep;
    for (double l : s.lambdas)
        for (double d : s.deltas) {
            LemmaA3Report::Cell c{};
            c.lambda = l;
            c.delta = d;
            c.glue_alpha = glue_energy(l, l, d, CatSphKind::alpha, q).value;
            c.glue_beta = glue_energy(l, l, d, CatSphKind::beta, q).value;
            const double h = l * s.step_rel;
            c.dglue_beta = (glue_energy(l + h, l + h, d, CatSphKind::beta, q).value -
                            glue_energy(l - h, l - h, d, CatSphKind::beta, q).value) /
                           (2.0 * h);
            c.scaled_alpha = c.glue_alpha * d * l * l;
            c.scaled_beta = c.glue_beta * l * l / d;
            c.scaled_dbeta = c.dglue_beta * l * l * l / d;
            rep.cells.push_back(c);
        }
    if (rep.cells.empty()) return rep;
    auto minmax = [&](auto field, double& lo, double& hi) {
        lo = hi = rep.cells.front().*field;
        for (const auto& c : rep.cells) {
            lo = std::min(lo, c.*field);
            hi = std::max(hi, c.*field);
        }
    };
    minmax(&LemmaA3Report::Cell::scaled_alpha, rep.alpha_min, rep.alpha_max);
    minmax(&LemmaA3Report::Cell::scaled_beta, rep.beta_min, rep.beta_max);
    minmax(&LemmaA3Report::Cell::scaled_dbeta, rep.dbeta_min, rep.dbeta_max);
    rep.C_alpha = rep.alpha_max;
    rep.C_beta = rep.beta_max;
    rep.C_dbeta = std::max(0.0, -rep.dbeta_min);
    rep.alpha_ok = rep.alpha_min > 0.0 && rep.alpha_max <= s.spread_limit * rep.alpha_min;
    rep.beta_ok = rep.beta_min > 0.0 && rep.beta_max <= s.spread_limit * rep.beta_min;
    // One constant fitted at the smallest lambda must bound every larger lambda.
    const double l0 = *std::min_element(s.lambdas.begin(), s.lambdas.end());
    double C0 = 0.0;
    for (const auto& c : rep.cells)
        if (c.lambda == l0) C0 = std::max(C0, -c.scaled_dbeta);
    rep.dbeta_ok = std::isfinite(rep.dbeta_min) && rep.C_dbeta <= s.spread_limit * std::max(C0, 0.0) + 1e-12;
    rep.passed = rep.alpha_ok && rep.beta_ok && rep.dbeta_ok;
    return rep;
}

std::string LemmaA3Report::to_json() const {
    nlohmann::ordered_json j;
    auto cj = nlohmann::ordered_json::array();
    for (const auto& c : cells)
        cj.push_back({{"lambda", c.lambda},
                      {"delta", c.delta},
                      {"W_glue_alpha", c.glue_alpha},
                      {"W_glue_beta", c.glue_beta},
                      {"dW_glue_beta_dlambda", c.dglue_beta},
                      {"alpha_times_delta_lambda2", c.scaled_alpha},
                      {"beta_times_lambda2_over_delta", c.scaled_beta},
                      {"dbeta_times_lambda3_over_delta", c.scaled_dbeta}});
    j["cells"] = cj;
    j["alpha"] = {{"min", alpha_min}, {"max", alpha_max}, {"C", C_alpha}, {"ok", alpha_ok}};
    j["beta"] = {{"min", beta_min}, {"max", beta_max}, {"C", C_beta}, {"ok", beta_ok}};
    j["dbeta"] = {{"min", dbeta_min}, {"max", dbeta_max}, {"C", C_dbeta}, {"ok", dbeta_ok}};
    j["passed"] = passed;
    return j.dump(2);
}

}  // namespace willmore
