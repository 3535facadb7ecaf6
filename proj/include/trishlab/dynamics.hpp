#ifndef TRISHLAB_DYNAMICS_HPP
#define TRISHLAB_DYNAMICS_HPP

#include <string>
#include <utility>
#include <vector>

#include "trishlab/tikhonov.hpp"

namespace trishlab {

enum class Variant { Trigs, Trish, Trishe, GeneralP };

/// The inertial family
///   xdd + delta sqrt(eps) xd + beta d/dt[grad phi_t(x) + (p-1) eps x]
///       + grad phi_t(x) = 0,
/// with p=0 (Trish: Hessian damping of f), p=1 (Trishe: damping of phi_t),
/// beta=0 (Trigs: no geometric damping), or free p in [0,1].
struct DynamicsSpec {
    Variant variant = Variant::Trish;
    double delta = 3.0;
    double beta = 1.0;
    double p = 0.0;

    static DynamicsSpec trigs(double delta);
    static DynamicsSpec trish(double delta, double beta);
    static DynamicsSpec trishe(double delta, double beta);
    static DynamicsSpec general(double p, double delta, double beta);
    /// "trigs" | "trish" | "trishe" | "general:<p>"
    static DynamicsSpec parse(const std::string& variant, double delta, double beta);

    std::string variant_name() const;
    /// Advisory parameter checks gated by the convergence theorems
    /// (delta > 2 sqrt(1-p); delta > 2 for Trish). Never constructor errors.
    std::vector<std::string> theorem_warnings() const;
};

struct State {
    double t = 0.0;
    Vec x;
    Vec v;
};

/// xdd = -delta sqrt(eps) v - beta [hess f(x) v + p (eps_dot x + eps v)]
///       - grad f(x) - eps x.  The Trigs path never touches the Hessian.
Vec acceleration(const DynamicsSpec& spec, const Objective& obj, const Schedule& sched,
                 const State& state);

/// Coefficients of the expanded Trishe form on eps(t)=t^-r:
///   xdd + viscous xd + beta hess f(x) xd + grad f(x) + state_coeff x = 0
/// with viscous = delta t^{-r/2} + beta t^{-r}, state_coeff = t^{-r} - r beta t^{-r-1}.
struct TrisheCoefficients {
    double viscous;
    double state_coeff;
};
TrisheCoefficients trishe_expanded_coefficients(const Schedule& sched, double delta, double beta,
                                                double t);

/// Equivalent first-order (x,y) system of the Trishe dynamic:
///   xd = -beta grad phi_t(x) + (1/beta - delta sqrt(eps)) x - y/beta
///   yd = (1/beta - delta sqrt(eps) - (beta delta/2) eps_dot/sqrt(eps)) x - y/beta
void first_order_rhs(const DynamicsSpec& spec, const Objective& obj, const Schedule& sched,
                     double t, const Vec& x, const Vec& y, Vec& xdot, Vec& ydot);

/// Initial (x0, y0) matching a second-order state: y0 solves the first
/// equation above for the given velocity,
///   y0 = -beta v - beta^2 grad phi_t(x) + (1 - beta delta sqrt(eps)) x.
std::pair<Vec, Vec> lift_to_first_order(const DynamicsSpec& spec, const Objective& obj,
                                        const Schedule& sched, const State& state);

}  // namespace trishlab

#endif
