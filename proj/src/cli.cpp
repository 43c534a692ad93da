#include "willmore/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "willmore/catenoid_sphere.hpp"
#include "willmore/errors.hpp"
#include "willmore/flow.hpp"
#include "willmore/gluing.hpp"
#include "willmore/homotopy.hpp"
#include "willmore/profile_io.hpp"
#include "willmore/svg.hpp"

#ifndef WILLMORE_DATA_DIR
#define WILLMORE_DATA_DIR "data"
#endif

namespace willmore {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr double pi = std::numbers::pi;

// A failed check, as opposed to invalid input.
struct CheckFailed {};

double parse_number(const std::string& tok, const std::string& spec) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != tok.size() || !std::isfinite(v)) throw ParameterError("bad number '" + tok + "' in grid '" + spec + "'");
    return v;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    return s.substr(a, s.find_last_not_of(" \t") - a + 1);
}

std::vector<double> parse_list(const std::string& spec, double fallback) {
    if (trim(spec).empty()) return {fallback};
    return parse_grid(spec);
}

QuadratureSettings quadrature(const RunConfig& cfg) {
    QuadratureSettings q;
    q.rel_tol = cfg.tol;
    return q;
}

ProfilePath round_sphere(double R) {
    PathSegment seg;
    seg.a = -pi / 2;
    seg.b = pi / 2;
    seg.eval = [R](double t) {
        Jet j;
        j.r = R * std::cos(t);
        j.h = R * std::sin(t);
        j.dr = -R * std::sin(t);
        j.dh = R * std::cos(t);
        j.ddr = -j.r;
        j.ddh = -j.h;
        return j;
    };
    return ProfilePath({seg}, {true, true});
}

// r = cosh h for |h| <= 1
ProfilePath catenary_band() {
    PathSegment seg;
    seg.a = -1;
    seg.b = 1;
    seg.role = SegmentRole::neck;
    seg.eval = [](double t) {
        Jet j;
        j.r = std::cosh(t);
        j.h = t;
        j.dr = std::sinh(t);
        j.dh = 1;
        j.ddr = std::cosh(t);
        return j;
    };
    return ProfilePath({seg}, {false, false});
}

AttachmentConfig attachment(CatSphKind lo, CatSphKind up, double R) {
    AttachmentConfig c;
    c.lower = lo;
    c.upper = up;
    c.lambda = 20;
    c.delta = 0.1;
    c.R_lower = c.R_upper = R;
    return c;
}

std::string curve_csv(const ProfileCurve& c) {
    std::ostringstream os;
    write_profile_csv(os, c);
    return os.str();
}

ProfileCurve load_curve(const std::string& name) {
    if (!fs::exists(name)) {
        const auto names = builtin_curve_names();
        if (std::find(names.begin(), names.end(), name) != names.end()) return builtin_curve(name);
        throw ParameterError("no such file: " + name);
    }
    return read_profile_file(name).curve;
}

std::string ordered(const std::string& text) { return ordered_json::parse(text).dump(2) + "\n"; }

// Report to stdout, or to out/name when an output directory is set.
void emit(const RunConfig& cfg, const std::string& name, const std::string& text, std::ostream& out) {
    if (cfg.out.empty()) {
        out << text;
        return;
    }
    const std::string path = (fs::path(cfg.out) / name).string();
    write_atomic(path, text);
    out << "wrote " << path << "\n";
}

// ---------------------------------------------------------------------------

void cmd_energy(const RunConfig& cfg, const std::string& file, std::ostream& out) {
    const ProfileCurve c = read_profile_file(file).curve;
    const EnergyBreakdown e = willmore_energy(c);
    std::optional<double> tau;
    try {
        tau = tangent_lift(c).tau;
    } catch (const GeometryError&) {
    }
    const int mult = tuple_point_multiplicity(c);
    const std::string fmt = cfg.format.empty() ? "json" : cfg.format;
    if (fmt == "csv") {
        std::ostringstream os;
        os << "quantity,value\n";
        os << "W," << format_double(e.total.value) << "\n";
        os << "error," << format_double(e.total.error) << "\n";
        os << "cap," << format_double(e.cap.value) << "\n";
        os << "glue," << format_double(e.glue.value) << "\n";
        os << "neck," << format_double(e.neck.value) << "\n";
        os << "other," << format_double(e.other.value) << "\n";
        os << "tau," << (tau ? format_double(*tau) : "") << "\n";
        os << "multiplicity," << mult << "\n";
        emit(cfg, "energy.csv", os.str(), out);
        return;
    }
    ordered_json j;
    j["file"] = fs::path(file).filename().string();
    j["W"] = e.total.value;
    j["error"] = e.total.error;
    j["parts"] = {{"cap", e.cap.value}, {"glue", e.glue.value}, {"neck", e.neck.value}, {"other", e.other.value}};
    j["tau"] = tau ? ordered_json(*tau) : ordered_json(nullptr);
    j["multiplicity"] = mult;
    j["closed_on_axis"] = {c.contact().start, c.contact().end};
    emit(cfg, "energy.json", j.dump(2) + "\n", out);
}

void cmd_sweep(const RunConfig& cfg, const std::string& kind, const std::string& deltas, std::ostream& out) {
    const auto rows = catsph_sweep(parse_catsph_kind(kind), parse_grid(cfg.grid), parse_list(deltas, 0.1), quadrature(cfg));
    if (cfg.format == "json") {
        ordered_json arr = ordered_json::array();
        for (const auto& r : rows)
            arr.push_back({{"kind", to_string(r.kind)}, {"lambda", r.lambda}, {"R", r.R}, {"delta", r.delta},
                           {"W_cap", r.W_cap}, {"W_glue", r.W_glue}, {"W_neck", r.W_neck}, {"W_total", r.W_total},
                           {"err", r.err}, {"status", r.status}});
        emit(cfg, "sweep.json", arr.dump(2) + "\n", out);
    } else {
        emit(cfg, "sweep.csv", sweep_csv(rows), out);
    }
    for (const auto& r : rows)
        if (r.status != "ok") throw CheckFailed{};
}

struct VerifyOptions {
    std::string suite;
    std::vector<std::string> files;
    std::string deltas;
    int pairs = 50;
    double delta = 0.1;
};

std::string verify_gluing(const RunConfig& cfg, const VerifyOptions& v, bool& passed) {
    const PolarGrid g{0.85, 1.15, 128, 32};
    const auto fit = random_gluing_corpus(g, static_cast<std::size_t>(v.pairs), cfg.seed);
    const auto hold = random_gluing_corpus(g, static_cast<std::size_t>(v.pairs), cfg.seed + 1);
    // outside the hypothesis ||u||_C2 <= 1; must be skipped, not counted
    std::vector<GluingPair> extra;
    const auto steep = AnnulusGraph::from_cartesian(g, [](double x, double y) {
        return CartesianJet{x * x + y * y, 2 * x, 2 * y, 2, 0, 2};
    });
    extra.push_back({"steep-paraboloid", steep, steep});
    const auto rep = verify_gluing_bound(fit, hold, extra, slope_corpus(g, {1e-1, 1e-2, 1e-3, 1e-4}),
                                         make_gluing_function(v.delta));
    passed = rep.passed;
    return rep.to_json();
}

std::string verify_liyau(const RunConfig& cfg, const VerifyOptions& v, bool& passed) {
    std::vector<std::string> files = v.files;
    if (files.empty()) {
        for (const auto& e : fs::directory_iterator(data_dir()))
            if (e.path().extension() == ".csv" || e.path().extension() == ".json") files.push_back(e.path().string());
        std::sort(files.begin(), files.end());
    }
    ordered_json curves = ordered_json::array();
    int violations = 0;
    for (const auto& f : files) {
        const ProfileCurve c = read_profile_file(f).curve;
        ordered_json row;
        row["file"] = fs::path(f).filename().string();
        if (!c.contact().start || !c.contact().end) {
            row["skipped"] = true;
            row["notice"] = "not a closed surface";
            curves.push_back(row);
            continue;
        }
        const auto rep = liyau_check(c, std::max(1e-6, cfg.tol));
        row["skipped"] = false;
        row["multiplicity"] = rep.multiplicity;
        row["W"] = rep.energy;
        row["W_error"] = rep.energy_error;
        row["bound"] = rep.bound;
        row["tolerance"] = rep.tolerance;
        row["satisfied"] = rep.satisfied;
        violations += !rep.satisfied;
        curves.push_back(row);
    }
    passed = violations == 0;
    ordered_json j;
    j["curves"] = curves;
    j["violations"] = violations;
    j["passed"] = passed;
    return j.dump(2) + "\n";
}

void cmd_verify(const RunConfig& cfg, const VerifyOptions& v, std::ostream& out) {
    bool passed = false;
    std::string report;
    const auto q = quadrature(cfg);
    if (v.suite == "gluing") {
        report = verify_gluing(cfg, v, passed);
    } else if (v.suite == "lemma24") {
        auto s = Lemma24Settings::defaults();
        if (!cfg.grid.empty()) s.mono_lambdas = parse_grid(cfg.grid);
        const auto rep = verify_lemma_2_4(s, q);
        passed = rep.passed;
        report = rep.to_json();
    } else if (v.suite == "lemmaA3") {
        LemmaA3Settings s;
        if (!cfg.grid.empty()) s.lambdas = parse_grid(cfg.grid);
        if (!v.deltas.empty()) s.deltas = parse_grid(v.deltas);
        const auto rep = verify_lemma_A3(s, q);
        passed = rep.passed;
        report = rep.to_json();
    } else if (v.suite == "derivatives") {
        const auto rep = check_derivative_table(cfg.grid.empty() ? std::vector<double>{2, 6, 50} : parse_grid(cfg.grid));
        passed = rep.passed;
        report = rep.to_json();
    } else if (v.suite == "liyau") {
        report = verify_liyau(cfg, v, passed);
    } else if (v.suite == "turning") {
        if (v.files.size() > 1) throw ParameterError("turning takes one curve");
        const std::string file = v.files.empty() ? (fs::path(data_dir()) / "j_model.csv").string() : v.files[0];
        const ProfileCurve c = load_curve(file);
        const auto rep = turning_bound_report(c, std::max(1e-6, cfg.tol));
        passed = rep.passed;
        report = rep.to_json();
        if (!cfg.out.empty()) emit(cfg, "turning.svg", turning_bound_svg(c, rep), out);
    }
    emit(cfg, "verify_" + v.suite + ".json", ordered(report), out);
    if (!passed) throw CheckFailed{};
}

struct FlowOptions {
    std::string init;
    int steps = 1000;
    int nodes = 0;
    std::string metric = "sobolev";
    double dt = 1e-3;
    double floor = 0;
    int checkpoint_every = 0;
    double window = 2;
};

std::string series_svg(const std::vector<double>& x, const std::vector<double>& y, const std::string& title,
                       const std::string& xl, const std::string& yl, std::optional<double> level = std::nullopt) {
    SvgPlot p;
    p.equal_aspect(false);
    p.title(title);
    p.axes(xl, yl);
    p.polyline(x, y, "steelblue");
    if (level && !x.empty()) p.polyline({x.front(), x.back()}, {*level, *level}, "gray", 1.0, true);
    return p.str();
}

void cmd_flow(const RunConfig& cfg, const FlowOptions& f, std::ostream& out) {
    if (f.steps < 0 || f.nodes < 0 || f.checkpoint_every < 0) throw ParameterError("counts must be non-negative");
    if (!(f.dt > 0) || f.floor < 0) throw ParameterError("dt must be positive and floor non-negative");
    const ProfileCurve init = load_curve(f.init);
    FlowControls ctrl;
    ctrl.metric = f.metric == "l2" ? FlowMetric::l2 : FlowMetric::sobolev;
    ctrl.max_steps = f.steps;
    ctrl.nodes = f.nodes;
    ctrl.dt = f.dt;
    ctrl.r_floor = f.floor;
    ctrl.checkpoint_every = f.checkpoint_every;
    ctrl.neck_window = f.window;
    const auto tr = flow_run(init, ctrl, true);

    const fs::path dir(cfg.out.empty() ? "flow_out" : cfg.out);
    write_atomic((dir / "trajectory.csv").string(), tr.to_csv());
    write_atomic((dir / "final.json").string(), tr.final_json());
    for (const auto& s : tr.checkpoints) {
        char name[32];
        std::snprintf(name, sizeof name, "step_%06d.json", s.step);
        write_atomic((dir / "checkpoints" / name).string(), checkpoint_json(s));
    }
    std::vector<double> t, W, rmin;
    for (const auto& r : tr.records) {
        t.push_back(r.t);
        W.push_back(r.W);
        rmin.push_back(r.r_min);
    }
    write_atomic((dir / "energy.svg").string(), series_svg(t, W, "Willmore energy", "t", "W", 8 * pi));
    write_atomic((dir / "neck.svg").string(), series_svg(t, rmin, "neck radius", "t", "r_min"));
    SvgPlot prof;
    prof.title("profile");
    prof.axes("r", "h");
    prof.polyline(init.r(), init.h(), "gray", 1.0, true);
    prof.polyline(tr.final_state.profile.r(), tr.final_state.profile.h(), "firebrick");
    write_atomic((dir / "profile.svg").string(), prof.str());
    out << tr.final_json();
}

struct HomotopyOptions {
    double lambda_start = 8, lambda_end = 2, delta = 0.05;
    int steps = 60;
    std::string frames;
    std::string composite;  // "beta,beta" etc.; empty skips it
    double model_lambda = 0;
};

void cmd_homotopy(const RunConfig& cfg, const HomotopyOptions& h, std::ostream& out) {
    CatSphParams{h.lambda_start, h.lambda_start, h.delta, CatSphKind::beta}.validate();
    CatSphParams{h.lambda_end, h.lambda_end, h.delta, CatSphKind::beta}.validate();
    const auto q = quadrature(cfg);
    const auto tr = shrinking_trace(h.lambda_start, h.lambda_end, h.delta, h.steps, q);

    std::vector<double> frames;
    if (!h.frames.empty()) {
        frames = parse_grid(h.frames);
    } else if (h.lambda_start == h.lambda_end) {
        frames = {h.lambda_start};
    } else {
        frames = {h.lambda_start, 0.5 * (h.lambda_start + h.lambda_end), h.lambda_end};
    }
    const auto phi = make_gluing_function(h.delta);
    SvgPlot prof(900, 480);
    prof.title("shrinking homotopy");
    prof.axes("r", "h");
    ordered_json fr = ordered_json::array();
    double x0 = 0;
    const char* colors[] = {"steelblue", "darkorange", "seagreen", "firebrick", "purple"};
    for (std::size_t k = 0; k < frames.size(); ++k) {
        const CatSphParams p{frames[k], frames[k], h.delta, CatSphKind::beta};
        p.validate();
        // mirrored about the axis so the frame shows the whole cross-section
        const ProfileCurve c = build_catsph(p, phi).reversed();
        const double w = *std::max_element(c.r().begin(), c.r().end());
        std::vector<double> x, y;
        for (std::size_t i = 0; i < c.size(); ++i) {
            x.push_back(x0 + w - c.r()[i]);
            y.push_back(c.h()[i]);
        }
        for (std::size_t i = c.size(); i-- > 0;) {
            x.push_back(x0 + w + c.r()[i]);
            y.push_back(c.h()[i]);
        }
        prof.polyline(x, y, colors[k % 5]);
        prof.label(x0 + w, *std::max_element(c.h().begin(), c.h().end()) + 0.1 * w, "lambda = " + format_double(frames[k]));
        x0 += 2.4 * w;
        fr.push_back({{"lambda", frames[k]}, {"W", catsph_energy(p, q).parts.total.value}});
    }

    ordered_json j;
    j["lambda_start"] = tr.lambda_start;
    j["lambda_end"] = tr.lambda_end;
    j["delta"] = tr.delta;
    j["steps"] = h.steps;
    j["monotone"] = tr.monotone;
    j["W_start"] = tr.W.front();
    j["W_end"] = tr.W.back();
    j["epsilon"] = tr.epsilon;
    j["warnings"] = tr.warnings;
    j["frames"] = fr;
    bool ok = tr.monotone;
    if (!h.composite.empty()) {
        const auto comma = h.composite.find(',');
        if (comma == std::string::npos) throw ParameterError("composite expects two kinds, e.g. beta,beta");
        const double L = h.model_lambda > 0 ? h.model_lambda : h.lambda_start;
        AttachmentConfig c;
        c.lower = parse_catsph_kind(trim(h.composite.substr(0, comma)));
        c.upper = parse_catsph_kind(trim(h.composite.substr(comma + 1)));
        c.lambda = L;
        c.delta = h.delta;
        c.R_lower = c.R_upper = L;
        const auto ce = composite_energy_after_shrink(c, tr, q);
        j["composite"] = {{"lower", to_string(c.lower)}, {"upper", to_string(c.upper)}, {"lambda", L},
                          {"W_lower", ce.W_lower}, {"W_upper", ce.W_upper}, {"total", ce.total},
                          {"below_8pi", ce.below_8pi}, {"untouched_end_ok", ce.untouched_end_ok}, {"note", ce.note}};
        ok = ok && ce.below_8pi && ce.untouched_end_ok;
    }
    j["passed"] = ok;

    const fs::path dir(cfg.out.empty() ? "homotopy_out" : cfg.out);
    write_atomic((dir / "trace.csv").string(), tr.to_csv());
    write_atomic((dir / "trace.svg").string(),
                 series_svg(tr.lambda_t, tr.W, "W along the trace", "lambda_t", "W", 4 * pi));
    write_atomic((dir / "profiles.svg").string(), prof.str());
    write_atomic((dir / "summary.json").string(), j.dump(2) + "\n");
    out << j.dump(2) << "\n";
    if (!ok) throw CheckFailed{};
}

void cmd_generate(const RunConfig& cfg, const std::string& name, std::ostream& out) {
    std::vector<std::string> names;
    if (name == "all") {
        names = builtin_curve_names();
    } else {
        names = {name};
    }
    for (const auto& n : names) {
        const std::string text = curve_csv(builtin_curve(n));
        if (cfg.out.empty() && names.size() == 1) {
            out << text;
        } else {
            RunConfig c = cfg;
            if (c.out.empty()) c.out = ".";
            emit(c, n + ".csv", text, out);
        }
    }
}

}  // namespace

// ---------------------------------------------------------------------------

void RunConfig::validate() const {
    if (!(tol > 0) || !std::isfinite(tol)) throw ParameterError("tol must be positive");
    if (!format.empty() && format != "csv" && format != "json") throw ParameterError("format must be csv or json");
    parse_grid(grid);
}

std::vector<double> parse_grid(const std::string& spec) {
    const std::string s = trim(spec);
    std::vector<double> out;
    if (s.empty()) return out;
    if (s.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ':')) parts.push_back(trim(tok));
        if (parts.size() != 3) throw ParameterError("range grid must be a:b:step, got '" + spec + "'");
        const double a = parse_number(parts[0], spec), b = parse_number(parts[1], spec),
                     step = parse_number(parts[2], spec);
        if (!(step > 0)) throw ParameterError("grid step must be positive in '" + spec + "'");
        if (b < a) throw ParameterError("grid end below start in '" + spec + "'");
        const auto n = static_cast<long>(std::floor((b - a) / step * (1 + 1e-12)));
        if (n > 1000000) throw ParameterError("grid too large: '" + spec + "'");
        for (long k = 0; k <= n; ++k) out.push_back(a + static_cast<double>(k) * step);
        return out;
    }
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_number(trim(tok), spec));
    return out;
}

void write_atomic(const std::string& path, const std::string& content) {
    const fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    const fs::path tmp = p.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot write " + tmp.string());
        f << content;
        f.flush();
        if (!f) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, p);
}

std::vector<std::string> builtin_curve_names() {
    return {"sphere", "catenary", "j_model", "j_small", "bb_model", "ab_model", "triple_bubble"};
}

ProfileCurve builtin_curve(const std::string& name) {
    if (name == "sphere") return round_sphere(1.0).sample();
    if (name == "catenary") return catenary_band().sample();
    if (name == "j_model") return assemble_model(attachment(CatSphKind::alpha, CatSphKind::alpha, 20));
    if (name == "j_small") return assemble_model(attachment(CatSphKind::alpha, CatSphKind::alpha, 2));
    if (name == "bb_model") return assemble_model(attachment(CatSphKind::beta, CatSphKind::beta, 20));
    if (name == "ab_model") return assemble_model(attachment(CatSphKind::alpha, CatSphKind::beta, 20));
    if (name == "triple_bubble") return chain_path(triple_bubble().spec).path.sample();
    throw ParameterError("unknown curve '" + name + "'");
}

std::string data_dir() {
    if (const char* e = std::getenv("WILLMORE_DATA"); e && *e) return e;
    return WILLMORE_DATA_DIR;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Willmore energy of surfaces of revolution"};
    app.name("willmore");
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "TOML or INI file with option values");

    RunConfig cfg;
    app.add_option("--tol", cfg.tol, "relative quadrature tolerance")->envname("WILLMORE_TOL")->capture_default_str();
    app.add_option("--grid", cfg.grid, "lambda grid: a:b:step or a,b,c")->envname("WILLMORE_GRID");
    app.add_option("--seed", cfg.seed, "corpus seed")->envname("WILLMORE_SEED")->capture_default_str();
    app.add_option("--out", cfg.out, "output directory")->envname("WILLMORE_OUT");
    app.add_option("--format", cfg.format, "csv or json")
        ->envname("WILLMORE_FORMAT")
        ->check(CLI::IsMember({"csv", "json"}));

    std::string energy_file;
    auto* energy = app.add_subcommand("energy", "energy breakdown of a curve file");
    energy->add_option("file", energy_file, "profile (.csv or .json)")->required();

    std::string kind = "beta", deltas;
    auto* sweep = app.add_subcommand("sweep", "catenoid-sphere energies over a lambda grid");
    sweep->add_option("--kind", kind, "alpha or beta")->check(CLI::IsMember({"alpha", "beta"}))->capture_default_str();
    sweep->add_option("--deltas", deltas, "delta grid (default 0.1)");

    VerifyOptions vo;
    auto* verify = app.add_subcommand("verify", "run a verification suite; exit 1 when a check fails");
    verify->add_option("suite", vo.suite, "gluing, lemma24, lemmaA3, derivatives, liyau or turning")
        ->required()
        ->check(CLI::IsMember({"gluing", "lemma24", "lemmaA3", "derivatives", "liyau", "turning"}));
    verify->add_option("files", vo.files, "curves for liyau and turning");
    verify->add_option("--deltas", vo.deltas, "delta grid (lemmaA3)");
    verify->add_option("--pairs", vo.pairs, "fit and held-out pairs (gluing)")->check(CLI::PositiveNumber)->capture_default_str();
    verify->add_option("--delta", vo.delta, "gluing band half-width (gluing)")->capture_default_str();

    FlowOptions fo;
    auto* flow = app.add_subcommand("flow", "axisymmetric Willmore flow");
    flow->add_option("init", fo.init, "initial curve file or bundled curve name")->required();
    flow->add_option("--steps", fo.steps, "step budget")->capture_default_str();
    flow->add_option("--nodes", fo.nodes, "resample to this many nodes (odd; 0 keeps)")->capture_default_str();
    flow->add_option("--metric", fo.metric, "sobolev or l2")->check(CLI::IsMember({"sobolev", "l2"}))->capture_default_str();
    flow->add_option("--dt", fo.dt, "initial time step")->capture_default_str();
    flow->add_option("--floor", fo.floor, "neck radius stop (0: 1e-3 diameter)")->capture_default_str();
    flow->add_option("--checkpoint-every", fo.checkpoint_every, "steps between checkpoints (0: none)")->capture_default_str();
    flow->add_option("--window", fo.window, "neck window in units of r_min")->capture_default_str();

    HomotopyOptions ho;
    auto* hom = app.add_subcommand("homotopy", "shrinking homotopy of a beta end");
    hom->add_option("--lambda-start", ho.lambda_start)->capture_default_str();
    hom->add_option("--lambda-end", ho.lambda_end)->capture_default_str();
    hom->add_option("--delta", ho.delta)->capture_default_str();
    hom->add_option("--steps", ho.steps)->check(CLI::PositiveNumber)->capture_default_str();
    hom->add_option("--frames", ho.frames, "lambda values to draw (default start, middle, end)");
    hom->add_option("--composite", ho.composite, "kinds of a two-sphere model to shrink, e.g. beta,beta");
    hom->add_option("--model-lambda", ho.model_lambda, "scale of that model (default lambda-start)");

    std::string gen_name;
    auto* gen = app.add_subcommand("generate", "write a bundled curve as CSV");
    gen->add_option("name", gen_name, "curve name or all")->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        cfg.validate();
        if (energy->parsed()) {
            cmd_energy(cfg, energy_file, out);
        } else if (sweep->parsed()) {
            cmd_sweep(cfg, kind, deltas, out);
        } else if (verify->parsed()) {
            cmd_verify(cfg, vo, out);
        } else if (flow->parsed()) {
            cmd_flow(cfg, fo, out);
        } else if (hom->parsed()) {
            cmd_homotopy(cfg, ho, out);
        } else if (gen->parsed()) {
            cmd_generate(cfg, gen_name, out);
        }
    } catch (const CheckFailed&) {
        return 1;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const GeometryError& e) {
        err << "error: " << e.what() << " (sample " << e.index() << ")\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace willmore
