#ifndef TRISHLAB_TIKHONOV_HPP
#define TRISHLAB_TIKHONOV_HPP

#include <optional>
#include <utility>

#include "trishlab/objective.hpp"
#include "trishlab/schedule.hpp"

namespace trishlab {

/// phi_t(x) = f(x) + eps(t)/2 ||x||^2, the time-indexed strongly convex
/// regularization of the objective.
double phi(const Objective& obj, const Schedule& sched, double t, const Vec& x);
Vec grad_phi(const Objective& obj, const Schedule& sched, double t, const Vec& x);

struct ViscosityResult {
    Vec x_eps;
    double residual = 0.0;  // ||grad f(x_eps) + eps x_eps||
    int iterations = 0;
};

/// Solves grad f(x) + eps x = 0 for eps > 0 (the viscosity curve point) with
/// a damped Newton method whose inner linear solves are conjugate-gradient
/// iterations on (hess f + eps I), plus a gradient-descent fallback. The
/// returned residual satisfies
///     residual <= max(1e-12 (1+eps)(1+||x_eps||), 1e-14).
ViscosityResult viscosity_point(const Objective& obj, double eps,
                                const Vec* warm_start = nullptr);

/// Stateful warm-started wrapper for repeated viscosity solves along a
/// trajectory. Not shared between threads; one tracker per worker.
class ViscosityTracker {
public:
    explicit ViscosityTracker(const Objective& obj) : obj_(&obj) {}
    ViscosityResult at(double eps);

private:
    const Objective* obj_;
    std::optional<Vec> last_;
};

/// The right-hand side (-eps_dot/eps) ||x_eps(t)|| bounding ||d/dt x_eps(t)||.
double viscosity_curve_derivative_bound(const Objective& obj, const Schedule& sched, double t);

/// Central finite difference of s -> phi_s(x_eps(s)) at t (lhs) against the
/// envelope identity value eps_dot(t)/2 ||x_eps(t)||^2 (rhs).
std::pair<double, double> envelope_derivative_identity_check(const Objective& obj,
                                                             const Schedule& sched, double t,
                                                             double dt);

}  // namespace trishlab

#endif
