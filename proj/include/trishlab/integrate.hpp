#ifndef TRISHLAB_INTEGRATE_HPP
#define TRISHLAB_INTEGRATE_HPP

#include <vector>

#include "trishlab/dynamics.hpp"

namespace trishlab {

enum class Method { FixedRK4, AdaptiveRK45 };

struct RecordPolicy {
    enum class Kind { LogPerDecade, FixedInterval };
    Kind kind = Kind::LogPerDecade;
    double value = 200.0;  // points per decade, or interval length

    static RecordPolicy log_per_decade(double n) { return {Kind::LogPerDecade, n}; }
    static RecordPolicy fixed_interval(double dt) { return {Kind::FixedInterval, dt}; }
};

struct IntegratorConfig {
    Method method = Method::AdaptiveRK45;
    double h_init = 1e-3;
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;
    double t_end = 1e4;
    RecordPolicy record;
    long max_steps = 50000000;
};

enum class Termination { ReachedTEnd, MaxSteps, DomainExit, StepUnderflow };

const char* termination_name(Termination t);

struct Trajectory {
    int dim = 0;
    std::vector<State> samples;  // strictly increasing sample times
    Termination termination = Termination::ReachedTEnd;
    long steps_taken = 0;
    long rhs_evaluations = 0;
};

/// Integrates the second-order dynamic from init over [init.t, cfg.t_end],
/// recording states at the policy times. Domain exit is a recorded
/// termination, not an exception: the partial trajectory stays usable.
Trajectory integrate_second_order(const DynamicsSpec& spec, const Objective& obj,
                                  const Schedule& sched, const State& init,
                                  const IntegratorConfig& cfg);

/// Integrates the first-order (x,y) reformulation from time t0; the stored
/// velocity is reconstructed through the first equation of the system.
Trajectory integrate_first_order(const DynamicsSpec& spec, const Objective& obj,
                                 const Schedule& sched, double t0, const Vec& x0, const Vec& y0,
                                 const IntegratorConfig& cfg);

}  // namespace trishlab

#endif
