#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fnls/diagnostics.hpp"
#include "fnls/field.hpp"
#include "fnls/ground_state.hpp"
#include "fnls/model.hpp"

namespace fnls {

struct EvolveConfig {
    double dt_init = 1e-3;
    double t_max = 1.0;
    double cfl_safety = 0.9;
    double blowup_kinetic_factor = 1e3;
    double gradient_resolution_floor = 0.99;
    long checkpoint_every = 1000;
    long record_every = 10;
    // false: every step uses dt_init (no CFL factor)
    bool adaptive = true;
    long max_steps = 100000000;
    // c in dt = cfl * min(dt_init, c / (|V|_inf + k_cut^alpha))
    double stability_constant = 1.0;

    void validate() const;
};

struct TrajectoryState {
    double t = 0.0;
    ComplexField u;
    // running integral of ||u||_{L^r}^q dt
    double s_alpha_integral = 0.0;
    long step_count = 0;
    double last_dt = 0.0;

    double s_alpha_norm(const ModelParams& p) const;
};

struct StepInfo {
    // ||A^{1/2}u||^2 after the step
    double kinetic_raw = 0.0;
    // share of sum |u^|^2 above the 2/3 cutoff before truncation
    double high_fraction = 0.0;
};

// Strang splitting with cached symbols for one grid and model:
// e^{-i dt/2 A}, u -> e^{i dt V(u)} u, e^{-i dt/2 A}, then 2/3 truncation.
// Negative dt runs the scheme backwards.
class SplitStepper {
public:
    SplitStepper(const GridPtr& grid, const ModelParams& p);
    StepInfo step(ComplexField& u, double dt) const;
    // k_cut^alpha
    double linear_rate() const { return linear_rate_; }
    const ModelParams& params() const { return p_; }

private:
    GridPtr grid_;
    ModelParams p_;
    std::vector<double> sym_;
    double linear_rate_ = 0.0;

};

TrajectoryState strang_step(const TrajectoryState& s, double dt, const ModelParams& p);

double adapt_dt(const TrajectoryState& s, const ModelParams& p, const EvolveConfig& cfg);

// Returns the updated integral; s_alpha_norm reports its q-th root.
double s_alpha_accumulate(const TrajectoryState& s, double dt, const ModelParams& p);

enum class PreconditionClass { SubThreshold, BlowupClass, Indeterminate };
std::string to_string(PreconditionClass c);

// Equality with the ground-state values (relative 1e-9) counts as reaching them.
PreconditionClass precondition_class(const ComplexField& phi, const ModelParams& p, const GroundState& gs);

struct DiagnosticsSinks {
    std::function<void(const DiagnosticsRecord&)> on_record;
    // same cadence as on_record, with the state the record describes
    std::function<void(const DiagnosticsRecord&, const ComplexField&)> on_record_state;
    std::function<void(const TrajectoryState&)> on_checkpoint;
    // enables the concentration radii in records
    double kinetic_threshold = 0.0;
    bool with_virial_M = false;
};

struct TStarFit {
    double t_star = 0.0;
    double theta = 0.0;
    double residual = 0.0;
    bool valid = false;
};

// Least-squares line through K(t)^{-theta} over the last 20 records for
// theta in {alpha/2, 1}; picks the smaller normalized residual.
TStarFit fit_t_star(const std::vector<DiagnosticsRecord>& records, double alpha);

struct RunOutcome {
    enum class Kind { Completed, BlowupDetected, ResolutionLost };
    Kind kind = Kind::Completed;
    // last resolved time
    double t = 0.0;
    long steps = 0;
    double initial_kinetic = 0.0;
    double max_kinetic_ratio = 0.0;
    TStarFit fit;
    bool radial_warning = false;
    TrajectoryState final_state;
    std::vector<DiagnosticsRecord> tail;  // last records, at most 64
};

std::string to_string(RunOutcome::Kind k);

RunOutcome evolve(const ComplexField& phi, const ModelParams& p, const EvolveConfig& cfg,
                  const DiagnosticsSinks& sinks = {});

// Linear flow only (V = 0); used by verification code.
ComplexField linear_propagate(const ComplexField& f, double t, double alpha);

}  // namespace fnls
