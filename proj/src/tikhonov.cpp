#include "trishlab/tikhonov.hpp"

#include <cmath>

namespace trishlab {

double phi(const Objective& obj, const Schedule& sched, double t, const Vec& x) {
    return eval(obj, x) + 0.5 * sched.eps(t) * dot(x, x);
}

Vec grad_phi(const Objective& obj, const Schedule& sched, double t, const Vec& x) {
    Vec g = grad(obj, x);
    axpy(sched.eps(t), x, g);
    return g;
}

namespace {

double phi_eps(const Objective& obj, double eps, const Vec& x) {
    return obj.value(x) + 0.5 * eps * dot(x, x);
}

Vec grad_phi_eps(const Objective& obj, double eps, const Vec& x) {
    Vec g = obj.gradient(x);
    axpy(eps, x, g);
    return g;
}

double solve_tol(double eps, const Vec& x) {
    return std::max(1e-12 * (1.0 + eps) * (1.0 + norm2(x)), 1e-14);
}

// CG on (hess f(x) + eps I) d = -g. The operator is eps-strongly positive,
// so plain CG is enough; a handful of iterations at these dimensions.
bool cg_newton_direction(const Objective& obj, double eps, const Vec& x, const Vec& g, Vec& d) {
    const int n = static_cast<int>(x.size());
    d.assign(n, 0.0);
    Vec r = -1.0 * g;  // residual of (H+eps I) d = -g at d = 0
    Vec p = r;
    double rr = dot(r, r);
    const double tol2 = std::max(1e-16 * rr, 1e-28);
    const int max_it = 10 * n + 20;
    for (int it = 0; it < max_it && rr > tol2; ++it) {
        Vec hp = hess_vec(obj, x, p);
        axpy(eps, p, hp);
        const double php = dot(p, hp);
        if (!(php > 0.0) || !std::isfinite(php)) return false;
        const double alpha = rr / php;
        axpy(alpha, p, d);
        axpy(-alpha, hp, r);
        const double rr_new = dot(r, r);
        p = r + (rr_new / rr) * p;
        rr = rr_new;
    }
    return all_finite(d) && dot(d, g) < 0.0;
}

// Backtracking step that also retreats from the domain boundary.
bool line_search(const Objective& obj, double eps, Vec& x, double& fx, const Vec& d,
                 double slope) {
    double alpha = 1.0;
    for (int k = 0; k < 60; ++k) {
        Vec xt = x;
        axpy(alpha, d, xt);
        if (obj.contains(xt)) {
            const double ft = phi_eps(obj, eps, xt);
            if (std::isfinite(ft) && ft <= fx + 1e-4 * alpha * slope) {
                x = std::move(xt);
                fx = ft;
                return true;
            }
        }
        alpha *= 0.5;
    }
    return false;
}

}  // namespace

ViscosityResult viscosity_point(const Objective& obj, double eps, const Vec* warm_start) {
    if (!(eps > 0.0))
        fail(Errc::InvalidArgument, "viscosity_point: eps must be positive (curve undefined at 0)");

    Vec x;
    if (warm_start && static_cast<int>(warm_start->size()) == obj.dim && obj.contains(*warm_start))
        x = *warm_start;
    else
        x.assign(obj.dim, 0.0);
    if (!obj.contains(x))
        fail(Errc::DomainViolation, "viscosity_point: no feasible starting point for " + obj.name);

    ViscosityResult res;
    double fx = phi_eps(obj, eps, x);

    const int newton_max = 200;
    for (int it = 0; it < newton_max; ++it) {
        Vec g = grad_phi_eps(obj, eps, x);
        const double gn = norm2(g);
        res.iterations = it;
        if (gn <= solve_tol(eps, x)) {
            res.x_eps = x;
            res.residual = gn;
            return res;
        }
        Vec d;
        if (!cg_newton_direction(obj, eps, x, g, d)) break;
        if (!line_search(obj, eps, x, fx, d, dot(g, d))) break;
    }

    // Gradient-descent fallback; slow but only exercised when the Newton model
    // is unusable (e.g. noisy finite-difference Hessians).
    const long fallback_max = 100000;
    for (long it = 0; it < fallback_max; ++it) {
        Vec g = grad_phi_eps(obj, eps, x);
        const double gn = norm2(g);
        if (gn <= solve_tol(eps, x)) {
            res.x_eps = x;
            res.residual = gn;
            res.iterations += static_cast<int>(std::min<long>(it, 1 << 30));
            return res;
        }
        Vec d = (-1.0 / std::max(gn, 1e-300)) * g;
        double step = std::max(1.0, norm2(x)) ;
        bool moved = false;
        for (int k = 0; k < 60; ++k) {
            Vec xt = x;
            axpy(step, d, xt);
            if (obj.contains(xt)) {
                const double ft = phi_eps(obj, eps, xt);
                if (std::isfinite(ft) && ft < fx) {
                    x = std::move(xt);
                    fx = ft;
                    moved = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if (!moved) break;
    }
    fail(Errc::NonConvergence,
         "viscosity_point: solver stalled on " + obj.name + " at eps=" + std::to_string(eps));
}

ViscosityResult ViscosityTracker::at(double eps) {
    ViscosityResult r = viscosity_point(*obj_, eps, last_ ? &*last_ : nullptr);
    last_ = r.x_eps;
    return r;
}

double viscosity_curve_derivative_bound(const Objective& obj, const Schedule& sched, double t) {
    const double eps = sched.eps(t);
    if (!(eps > 0.0)) fail(Errc::ScheduleUnderflow, "derivative bound needs eps(t) > 0");
    const ViscosityResult r = viscosity_point(obj, eps);
    return (-sched.eps_dot(t) / eps) * norm2(r.x_eps);
}

std::pair<double, double> envelope_derivative_identity_check(const Objective& obj,
                                                             const Schedule& sched, double t,
                                                             double dt) {
    if (!(dt > 0.0) || t - dt < sched.t_min())
        fail(Errc::InvalidArgument, "identity check needs 0 < dt and t-dt >= t_min");
    ViscosityTracker tracker(obj);
    const ViscosityResult at_m = tracker.at(sched.eps(t - dt));
    const ViscosityResult at_c = tracker.at(sched.eps(t));
    const ViscosityResult at_p = tracker.at(sched.eps(t + dt));
    const double fm = phi(obj, sched, t - dt, at_m.x_eps);
    const double fp = phi(obj, sched, t + dt, at_p.x_eps);
    const double lhs = (fp - fm) / (2.0 * dt);
    const double rhs = 0.5 * sched.eps_dot(t) * dot(at_c.x_eps, at_c.x_eps);
    return {lhs, rhs};
}

}  // namespace trishlab
