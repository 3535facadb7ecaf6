#ifndef TRISHLAB_LYAPUNOV_HPP
#define TRISHLAB_LYAPUNOV_HPP

#include <optional>
#include <string>
#include <vector>

#include "trishlab/integrate.hpp"

namespace trishlab {

enum class FeasibilityMode { StrictDefinition, ProofConstraints };

/// Parameters of the energy analysis. The internal coupling constant b is
/// always c*lambda/2 and is not independently settable. When lambda is left
/// unset it defaults to the midpoint of the ProofConstraints interval.
struct LyapunovParams {
    std::optional<double> lambda;
    double a = 2.0;
    double c = 4.0;
    FeasibilityMode mode = FeasibilityMode::ProofConstraints;
};

/// Per-sample energy diagnostics. gamma and W_p = gamma E_p are carried in
/// log form: gamma integrates mu over multiple decades and overflows double
/// well before t reaches 1e5 on slow schedules.
struct EnergyRecord {
    double t = 0.0;
    double eps = 0.0;
    double gap = 0.0;       // phi_t(x) - phi_t(x_eps)
    double E_p = 0.0;       // gap + 0.5 ||v_p||^2
    double calE_p = 0.0;    // lambda=0 energy
    double vp_norm = 0.0;
    double Ap_norm = 0.0;   // ||grad phi_t(x) + (p-1) eps x||
    double mu = 0.0;
    double G = 0.0;
    double log_gamma = 0.0;  // log exp-integral of mu from t1 (0 before t1)
    double log_Wp = 0.0;     // log_gamma + log(E_p)
    double dist_xeps = 0.0;
    double grad_phi_norm = 0.0;
};

struct EnergyTriple {
    double E_p;
    double vp_norm;
    double gap;
};

/// E_p at one state given the matching viscosity point x_eps(t):
///   v_p = lambda sqrt(eps) (x - x_eps) + v + beta [grad phi_t(x) + (p-1) eps x]
///   E_p = (phi_t(x) - phi_t(x_eps)) + 0.5 ||v_p||^2
EnergyTriple energy_Ep(const Objective& obj, const Schedule& sched, const DynamicsSpec& spec,
                       double lambda, const State& state, const Vec& x_eps);

/// mu(t) = -eps_dot/(2 eps) + (delta - lambda) sqrt(eps)
double mu_of_t(const Schedule& sched, double delta, double lambda, double t);

/// G(t) = (lambda c + 2a) lambda eps_dot^2 / eps^{3/2} - eps_dot
///        + (1-p) beta lambda (delta - lambda) eps^2
double G_of_t(const Schedule& sched, const DynamicsSpec& spec, double lambda, double a, double c,
              double t);

struct FeasibilityReport {
    FeasibilityMode mode = FeasibilityMode::ProofConstraints;
    double lambda_lo = 0.0;
    double lambda_hi = 0.0;
    std::optional<double> t1;
    std::vector<std::string> notes;

    bool empty() const { return !(lambda_lo < lambda_hi); }
    double midpoint() const { return 0.5 * (lambda_lo + lambda_hi); }
};

/// Evaluates the growth-condition lambda interval. StrictDefinition applies
/// the literal piecewise definition (and reports an empty interval honestly
/// when its lower bound exceeds every upper bound, as happens at delta=3);
/// ProofConstraints uses the interval the rate proofs actually instantiate,
/// (delta/2, min(a delta/(a+1), (delta+sqrt(delta^2-4(1-p)))/2)).
/// When a power schedule and beta are supplied, t1 is the smallest time at
/// which the growth condition holds for the resolved lambda.
FeasibilityReport hp_feasible(double p, double delta, const LyapunovParams& params,
                              const Schedule* sched = nullptr, double beta = 0.0);

/// lambda from params, defaulting to the ProofConstraints midpoint.
double resolve_lambda(double p, double delta, const LyapunovParams& params);

struct InequalityStat {
    std::string name;
    long checked = 0;
    long violations = 0;
    double max_violation = 0.0;
    double slack_abs = 0.0;
    double slack_rel = 0.0;

    double violation_fraction() const {
        return checked > 0 ? static_cast<double>(violations) / static_cast<double>(checked) : 0.0;
    }
};

struct InequalityReport {
    double lambda = 0.0;
    double a = 0.0;
    double c = 0.0;
    double t1 = 0.0;  // first sample time with the growth condition active
    FeasibilityReport feasibility;
    std::vector<InequalityStat> stats;
    std::vector<std::string> notes;

    const InequalityStat* find(const std::string& name) const;
    std::string to_json() const;
};

struct MonitorResult {
    std::vector<EnergyRecord> records;  // one per trajectory sample
    InequalityReport report;
};

/// Full energy pass over a trajectory: per-sample records plus violation
/// counts for the Lemma 2.1 chain, the differential energy inequality, the
/// integrated energy bound and the gradient-integral bound. Requires the
/// objective's minimum-norm solution.
MonitorResult monitor(const Trajectory& traj, const Objective& obj, const Schedule& sched,
                      const DynamicsSpec& spec, const LyapunovParams& params);

}  // namespace trishlab

#endif
