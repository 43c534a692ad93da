#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "willmore/profile.hpp"

namespace willmore {

/// Energy of the node positions: five-point differences in chord length
/// with mirror ghosts at axis ends, trapezoid weights with end corrections.
/// The height of an axis end is not read from the curve; it is taken from
/// the even fit h = h0 + a r^2 through the two neighbouring nodes, which
/// keeps the contact perpendicular. Needs an odd node count.
double discrete_energy(const ProfileCurve& curve);

/// Gradient of discrete_energy with respect to (r_i, h_i) by forward-mode
/// automatic differentiation. Entries of axis-end nodes are zero.
struct NodeGradient {
    std::vector<double> dr, dh;
};
NodeGradient discrete_gradient(const ProfileCurve& curve);

enum class FlowMetric {
    l2,      // mass-lumped 2 pi r ds per node
    sobolev  // bi-Laplacian plus curvature-weighted mass, for long runs
};

struct FlowControls {
    FlowMetric metric = FlowMetric::sobolev;
    double dt = 1e-3;          // first trial step
    double dt_max = 1e12;
    double grow = 2.0;         // trial step after an accepted first try
    int max_retries = 60;      // halvings before a step fails
    double armijo = 1e-4;
    double energy_tol = 1e-10;  // admissible increase per accepted step
    double redistribute_ratio = 4.0;  // spacing ratio (relative to the target density) that triggers resampling
    double curvature_weight = 1.0;    // node density 1 + w L (|k1| + |k2|)
    std::size_t nodes = 0;     // 0 keeps the initial count (made odd)
    double r_floor = 0.0;      // 0 means 1e-3 x initial diameter
    double grad_tol = 1e-3;    // on the metric norm of the gradient, relative to W
    double W_tol = 1e-3;
    double W_target = 4.0 * 3.14159265358979323846;
    int max_steps = 1000;
    int checkpoint_every = 0;
    double neck_window = 2.0;  // half-width of the neck window in units of r_min
    std::size_t history = 16;
    bool keep_turning = true;  // reject steps that change the turning number
};

struct FlowHistory {
    double t = 0.0, W = 0.0, r_min = 0.0;
};

/// Nodes move along their normals only; the axis ends follow.
struct FlowState {
    ProfileCurve profile;
    double t = 0.0;
    double dt = 0.0;
    double W = 0.0;
    double r_min = 0.0;       // vertex of the parabola through the thinnest node and its neighbours
    double s_min = 0.0;       // arclength location of r_min
    bool has_neck = false;    // r_min comes from an interior local minimum
    double grad_norm = 0.0;   // metric norm of the gradient at this state
    double tau = 0.0;
    int step = 0;
    double W_step = 0.0;           // energy after the descent step, before any resampling
    std::deque<FlowHistory> history;  // newest last
    std::string event;             // set when the step resampled the nodes
};

struct NeckDiagnostic {
    double r_min = 0.0, s_min = 0.0, h_min = 0.0;
    std::vector<double> rho, eta;  // rescaled radius and height in the window
    double residual = 0.0;          // sup |rho - cosh(eta)|
    int trend = 0;                  // sign of the least-squares slope of r_min(t) over the history
    bool is_neck = false;           // residual below 0.5
    std::string notice;
};

/// Blow-up window around the thinnest interior point: (r, h - h_min) / r_min
/// over arclength |s - s_min| <= window r_min, compared with the catenary.
NeckDiagnostic neck_rescale(const FlowState& s, double window = 2.0);

/// Smallest interior local minimum of r away from the axis ends (nodes 2 to
/// n-3), if any.
std::optional<std::size_t> neck_local_min(const ProfileCurve& curve);

/// neck_local_min, otherwise the smallest interior radius.
std::size_t neck_index(const ProfileCurve& curve);

/// Resamples to `nodes` points (odd) with density 1 + w L (|k1| + |k2|) in
/// chord length, by cubic Hermite interpolation with five-point tangents.
ProfileCurve redistribute(const ProfileCurve& curve, std::size_t nodes, double curvature_weight = 1.0);

FlowState make_flow_state(const ProfileCurve& init, const FlowControls& ctrl);

/// One accepted descent step with Armijo backtracking. Throws FlowStepFailure
/// when the retries are exhausted.
FlowState flow_step(const FlowState& s, const FlowControls& ctrl);

class FlowStepFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class FlowTermination { converged, singular_stop, budget };
const char* to_string(FlowTermination t);

struct FlowRecord {
    int step;
    double t, W, r_min, residual;
    double W_step;  // before resampling
    double tau;
    int trend;
    int multiplicity;
};

struct Trajectory {
    std::vector<FlowRecord> records;
    std::vector<FlowState> checkpoints;  // every checkpoint_every steps, plus the final state
    FlowState final_state;
    NeckDiagnostic final_neck;
    FlowTermination termination = FlowTermination::budget;
    std::vector<std::string> events;     // resampling, step failures
    std::string to_csv() const;          // step,t,W,r_min,residual
    std::string final_json() const;
};

/// Tracks tuple-point multiplicity along the run when set (costs one
/// intersection sweep per step).
Trajectory flow_run(const ProfileCurve& init, const FlowControls& ctrl, bool track_multiplicity = false);

std::string checkpoint_json(const FlowState& s);

}  // namespace willmore
