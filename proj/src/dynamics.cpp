#include "trishlab/dynamics.hpp"

#include <cmath>

namespace trishlab {

namespace {

DynamicsSpec validated(Variant variant, double p, double delta, double beta) {
    if (!(delta > 0.0)) fail(Errc::InvalidArgument, "dynamics: delta must be positive");
    if (beta < 0.0) fail(Errc::InvalidArgument, "dynamics: beta must be nonnegative");
    if (p < 0.0 || p > 1.0) fail(Errc::InvalidArgument, "dynamics: p must lie in [0,1]");
    DynamicsSpec s;
    s.variant = variant;
    s.delta = delta;
    s.beta = beta;
    s.p = p;
    return s;
}

double positive_eps(const Schedule& sched, double t) {
    const double eps = sched.eps(t);
    if (!(eps > 0.0))
        fail(Errc::ScheduleUnderflow, "dynamics: eps(t) must be positive, got " +
                                          std::to_string(eps) + " at t=" + std::to_string(t));
    return eps;
}

}  // namespace

DynamicsSpec DynamicsSpec::trigs(double delta) { return validated(Variant::Trigs, 0.0, delta, 0.0); }

DynamicsSpec DynamicsSpec::trish(double delta, double beta) {
    return validated(Variant::Trish, 0.0, delta, beta);
}

DynamicsSpec DynamicsSpec::trishe(double delta, double beta) {
    return validated(Variant::Trishe, 1.0, delta, beta);
}

DynamicsSpec DynamicsSpec::general(double p, double delta, double beta) {
    return validated(Variant::GeneralP, p, delta, beta);
}

DynamicsSpec DynamicsSpec::parse(const std::string& variant, double delta, double beta) {
    if (variant == "trigs") return trigs(delta);
    if (variant == "trish") return trish(delta, beta);
    if (variant == "trishe") return trishe(delta, beta);
    if (variant.rfind("general:", 0) == 0) {
        const std::string tail = variant.substr(8);
        try {
            size_t used = 0;
            const double p = std::stod(tail, &used);
            if (used != tail.size()) throw std::invalid_argument(tail);
            return general(p, delta, beta);
        } catch (const std::logic_error&) {
            fail(Errc::InvalidArgument, "dynamics: cannot parse p from '" + variant + "'");
        }
    }
    fail(Errc::InvalidArgument,
         "unknown variant '" + variant + "' (expected trigs|trish|trishe|general:<p>)");
}

std::string DynamicsSpec::variant_name() const {
    switch (variant) {
        case Variant::Trigs: return "trigs";
        case Variant::Trish: return "trish";
        case Variant::Trishe: return "trishe";
        case Variant::GeneralP: return "general:" + std::to_string(p);
    }
    return "?";
}

std::vector<std::string> DynamicsSpec::theorem_warnings() const {
    std::vector<std::string> w;
    const double gate = 2.0 * std::sqrt(1.0 - p);
    if (!(delta > gate))
        w.push_back("delta=" + std::to_string(delta) + " does not exceed 2 sqrt(1-p)=" +
                    std::to_string(gate) + "; the energy-decay theorem does not apply");
    if (variant == Variant::Trish && !(delta > 2.0))
        w.push_back("trish rate theorem needs delta > 2, got delta=" + std::to_string(delta));
    return w;
}

Vec acceleration(const DynamicsSpec& spec, const Objective& obj, const Schedule& sched,
                 const State& state) {
    const double eps = positive_eps(sched, state.t);
    const double damping = spec.delta * std::sqrt(eps);

    Vec a = grad(obj, state.x);     // will be negated below
    axpy(eps, state.x, a);          // grad phi_t(x)
    axpy(damping, state.v, a);
    if (spec.beta > 0.0) {
        Vec geo = hess_vec(obj, state.x, state.v);
        if (spec.p > 0.0) {
            axpy(spec.p * sched.eps_dot(state.t), state.x, geo);
            axpy(spec.p * eps, state.v, geo);
        }
        axpy(spec.beta, geo, a);
    }
    return -1.0 * std::move(a);
}

TrisheCoefficients trishe_expanded_coefficients(const Schedule& sched, double delta, double beta,
                                                double t) {
    const double r = sched.power_r();  // WrongScheduleKind unless Power
    const double eps = positive_eps(sched, t);
    TrisheCoefficients c;
    c.viscous = delta * std::pow(t, -r / 2.0) + beta * eps;
    c.state_coeff = eps - r * beta * std::pow(t, -r - 1.0);
    return c;
}

void first_order_rhs(const DynamicsSpec& spec, const Objective& obj, const Schedule& sched,
                     double t, const Vec& x, const Vec& y, Vec& xdot, Vec& ydot) {
    if (!(spec.beta > 0.0))
        fail(Errc::BetaZero, "first-order reformulation needs beta > 0");
    const double eps = positive_eps(sched, t);
    const double se = std::sqrt(eps);
    const double inv_beta = 1.0 / spec.beta;
    const double cx = inv_beta - spec.delta * se;
    const double cy = cx - 0.5 * spec.beta * spec.delta * sched.eps_dot(t) / se;

    xdot = grad(obj, x);
    axpy(eps, x, xdot);                      // grad phi_t(x)
    for (size_t i = 0; i < xdot.size(); ++i)
        xdot[i] = -spec.beta * xdot[i] + cx * x[i] - inv_beta * y[i];
    ydot.resize(x.size());
    for (size_t i = 0; i < x.size(); ++i) ydot[i] = cy * x[i] - inv_beta * y[i];
}

std::pair<Vec, Vec> lift_to_first_order(const DynamicsSpec& spec, const Objective& obj,
                                        const Schedule& sched, const State& state) {
    if (!(spec.beta > 0.0))
        fail(Errc::BetaZero, "first-order reformulation needs beta > 0");
    const double eps = positive_eps(sched, state.t);
    const double se = std::sqrt(eps);

    Vec gphi = grad(obj, state.x);
    axpy(eps, state.x, gphi);
    Vec y0(state.x.size());
    const double cx = 1.0 - spec.beta * spec.delta * se;
    for (size_t i = 0; i < y0.size(); ++i)
        y0[i] = -spec.beta * state.v[i] - spec.beta * spec.beta * gphi[i] + cx * state.x[i];
    return {state.x, std::move(y0)};
}

}  // namespace trishlab
