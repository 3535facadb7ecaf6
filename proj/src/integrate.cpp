#include "trishlab/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace trishlab {

const char* termination_name(Termination t) {
    switch (t) {
        case Termination::ReachedTEnd: return "reached_t_end";
        case Termination::MaxSteps: return "max_steps";
        case Termination::DomainExit: return "domain_exit";
        case Termination::StepUnderflow: return "step_underflow";
    }
    return "?";
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9;
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                 A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920, E5 = -17253.0 / 339200,
                 E6 = 22.0 / 525, E7 = -1.0 / 40;

using Rhs = std::function<void(double, const Vec&, Vec&)>;

struct Stepper {
    Rhs rhs;
    long rhs_evals = 0;

    void eval(double t, const Vec& z, Vec& out) {
        ++rhs_evals;
        rhs(t, z, out);
    }

    // One classical RK4 step.
    void rk4(double t, const Vec& z, double h, Vec& out) {
        const size_t n = z.size();
        Vec k1(n), k2(n), k3(n), k4(n), tmp(n);
        eval(t, z, k1);
        for (size_t i = 0; i < n; ++i) tmp[i] = z[i] + 0.5 * h * k1[i];
        eval(t + 0.5 * h, tmp, k2);
        for (size_t i = 0; i < n; ++i) tmp[i] = z[i] + 0.5 * h * k2[i];
        eval(t + 0.5 * h, tmp, k3);
        for (size_t i = 0; i < n; ++i) tmp[i] = z[i] + h * k3[i];
        eval(t + h, tmp, k4);
        out.resize(n);
        for (size_t i = 0; i < n; ++i)
            out[i] = z[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }

    // One Dormand-Prince attempt; returns the scaled max-norm error estimate.
    double rk45(double t, const Vec& z, double h, double atol, double rtol, Vec& out) {
        const size_t n = z.size();
        Vec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n);
        eval(t, z, k1);
        for (size_t i = 0; i < n; ++i) tmp[i] = z[i] + h * A21 * k1[i];
        eval(t + C2 * h, tmp, k2);
        for (size_t i = 0; i < n; ++i) tmp[i] = z[i] + h * (A31 * k1[i] + A32 * k2[i]);
        eval(t + C3 * h, tmp, k3);
        for (size_t i = 0; i < n; ++i)
            tmp[i] = z[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
        eval(t + C4 * h, tmp, k4);
        for (size_t i = 0; i < n; ++i)
            tmp[i] = z[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
        eval(t + C5 * h, tmp, k5);
        for (size_t i = 0; i < n; ++i)
            tmp[i] = z[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] +
                                 A65 * k5[i]);
        eval(t + h, tmp, k6);
        out.resize(n);
        for (size_t i = 0; i < n; ++i)
            out[i] = z[i] +
                     h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
        eval(t + h, out, k7);

        double err = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] +
                                  E6 * k6[i] + E7 * k7[i]);
            const double sc = atol + rtol * std::max(std::abs(z[i]), std::abs(out[i]));
            err = std::max(err, std::abs(e) / sc);
        }
        return err;
    }
};

std::vector<double> record_times(double t0, double t_end, const RecordPolicy& policy) {
    std::vector<double> times;
    times.push_back(t0);
    if (policy.kind == RecordPolicy::Kind::LogPerDecade) {
        if (!(t0 > 0.0)) fail(Errc::InvalidArgument, "log-spaced recording needs t0 > 0");
        const double n = std::max(policy.value, 1.0);
        const double step = 1.0 / n;
        for (double e = std::log10(t0) + step;; e += step) {
            const double t = std::pow(10.0, e);
            if (t >= t_end * (1.0 - 1e-12)) break;
            if (t > times.back() * (1.0 + 1e-12)) times.push_back(t);
        }
    } else {
        const double dt = policy.value;
        if (!(dt > 0.0)) fail(Errc::InvalidArgument, "fixed-interval recording needs dt > 0");
        for (double t = t0 + dt; t < t_end * (1.0 - 1e-12); t += dt) times.push_back(t);
    }
    times.push_back(t_end);
    return times;
}

Trajectory drive(Stepper& stepper, double t0, Vec z, const IntegratorConfig& cfg, int dim,
                 const std::function<State(double, const Vec&)>& to_state) {
    if (!(cfg.t_end > t0)) fail(Errc::InvalidArgument, "integrator: t_end must exceed t0");
    if (!(cfg.abs_tol > 0.0) || !(cfg.rel_tol > 0.0))
        fail(Errc::InvalidArgument, "integrator: tolerances must be positive");
    if (cfg.max_steps <= 0) fail(Errc::InvalidArgument, "integrator: max_steps must be positive");

    Trajectory traj;
    traj.dim = dim;
    const std::vector<double> rec = record_times(t0, cfg.t_end, cfg.record);
    size_t next_rec = 1;  // rec[0] == t0 recorded below
    traj.samples.push_back(to_state(t0, z));

    double t = t0;
    double h = std::min(cfg.h_init, cfg.t_end - t0);
    long steps = 0;
    Vec z_new;

    auto record_if_due = [&](double tt, const Vec& zz) {
        while (next_rec < rec.size() && tt >= rec[next_rec] * (1.0 - 1e-14)) {
            traj.samples.push_back(to_state(tt, zz));
            ++next_rec;
        }
    };

    while (t < cfg.t_end * (1.0 - 1e-14)) {
        if (++steps > cfg.max_steps) {
            traj.termination = Termination::MaxSteps;
            traj.steps_taken = steps - 1;
            traj.rhs_evaluations = stepper.rhs_evals;
            return traj;
        }

        // Clip to the next record time so samples land exactly on the grid.
        double target = cfg.t_end;
        if (next_rec < rec.size()) target = rec[next_rec];
        double h_try = std::min(h, target - t);
        bool hit_target = h_try >= target - t - 1e-14 * target;
        if (hit_target) h_try = target - t;

        bool domain_reject = false;
        double err = 0.0;
        bool ok = true;
        try {
            if (cfg.method == Method::FixedRK4) {
                stepper.rk4(t, z, h_try, z_new);
                err = 0.0;
            } else {
                err = stepper.rk45(t, z, h_try, cfg.abs_tol, cfg.rel_tol, z_new);
            }
            if (!all_finite(z_new) || !std::isfinite(err)) ok = false;
        } catch (const Error& e) {
            if (e.code() != Errc::DomainViolation) throw;
            ok = false;
            domain_reject = true;
        }

        if (cfg.method == Method::FixedRK4) {
            if (!ok) {
                traj.termination = domain_reject ? Termination::DomainExit
                                                 : Termination::StepUnderflow;
                traj.steps_taken = steps;
                traj.rhs_evaluations = stepper.rhs_evals;
                return traj;
            }
            t = hit_target ? target : t + h_try;
            z = z_new;
            record_if_due(t, z);
            continue;
        }

        if (ok && err <= 1.0) {
            t = hit_target ? target : t + h_try;
            z = z_new;
            record_if_due(t, z);
            const double factor =
                err > 0.0 ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0) : 5.0;
            h = std::max(h_try, h) * factor;
        } else {
            const double factor =
                ok ? std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9) : 0.5;
            h = h_try * factor;
            if (h < 1e-14 * std::max(t, 1.0)) {
                traj.termination = domain_reject ? Termination::DomainExit
                                                 : Termination::StepUnderflow;
                traj.steps_taken = steps;
                traj.rhs_evaluations = stepper.rhs_evals;
                return traj;
            }
        }
    }

    // Make sure the terminal state is present even if clipping skipped it.
    if (traj.samples.back().t < cfg.t_end * (1.0 - 1e-14))
        traj.samples.push_back(to_state(t, z));
    traj.termination = Termination::ReachedTEnd;
    traj.steps_taken = steps;
    traj.rhs_evaluations = stepper.rhs_evals;
    return traj;
}

}  // namespace

Trajectory integrate_second_order(const DynamicsSpec& spec, const Objective& obj,
                                  const Schedule& sched, const State& init,
                                  const IntegratorConfig& cfg) {
    const int d = obj.dim;
    if (static_cast<int>(init.x.size()) != d || static_cast<int>(init.v.size()) != d)
        fail(Errc::InvalidArgument, "integrate: initial state dimension mismatch");
    if (!(init.t >= sched.t_min()) || !(sched.t_min() > 0.0))
        fail(Errc::InvalidArgument, "integrate: need init.t >= t_min > 0");
    if (!obj.contains(init.x))
        fail(Errc::DomainViolation, "integrate: initial point outside the objective domain");

    Stepper stepper;
    stepper.rhs = [&spec, &obj, &sched, d](double t, const Vec& z, Vec& out) {
        State s;
        s.t = t;
        s.x.assign(z.begin(), z.begin() + d);
        s.v.assign(z.begin() + d, z.end());
        const Vec a = acceleration(spec, obj, sched, s);
        out.resize(2 * d);
        for (int i = 0; i < d; ++i) {
            out[i] = s.v[i];
            out[d + i] = a[i];
        }
    };

    Vec z0(2 * d);
    for (int i = 0; i < d; ++i) {
        z0[i] = init.x[i];
        z0[d + i] = init.v[i];
    }
    auto to_state = [d](double t, const Vec& z) {
        State s;
        s.t = t;
        s.x.assign(z.begin(), z.begin() + d);
        s.v.assign(z.begin() + d, z.end());
        return s;
    };
    return drive(stepper, init.t, std::move(z0), cfg, d, to_state);
}

Trajectory integrate_first_order(const DynamicsSpec& spec, const Objective& obj,
                                 const Schedule& sched, double t0, const Vec& x0, const Vec& y0,
                                 const IntegratorConfig& cfg) {
    const int d = obj.dim;
    if (static_cast<int>(x0.size()) != d || static_cast<int>(y0.size()) != d)
        fail(Errc::InvalidArgument, "integrate: initial state dimension mismatch");
    if (!(spec.beta > 0.0)) fail(Errc::BetaZero, "first-order integration needs beta > 0");
    if (!(t0 >= sched.t_min()) || !(sched.t_min() > 0.0))
        fail(Errc::InvalidArgument, "integrate: need t0 >= t_min > 0");
    if (!obj.contains(x0))
        fail(Errc::DomainViolation, "integrate: initial point outside the objective domain");

    Stepper stepper;
    stepper.rhs = [&spec, &obj, &sched, d](double t, const Vec& z, Vec& out) {
        Vec x(z.begin(), z.begin() + d), y(z.begin() + d, z.end());
        Vec xd, yd;
        first_order_rhs(spec, obj, sched, t, x, y, xd, yd);
        out.resize(2 * d);
        for (int i = 0; i < d; ++i) {
            out[i] = xd[i];
            out[d + i] = yd[i];
        }
    };

    Vec z0(2 * d);
    for (int i = 0; i < d; ++i) {
        z0[i] = x0[i];
        z0[d + i] = y0[i];
    }
    // Velocity reconstruction via the first equation of the system.
    auto to_state = [&spec, &obj, &sched, d](double t, const Vec& z) {
        Vec x(z.begin(), z.begin() + d), y(z.begin() + d, z.end());
        Vec xd, yd;
        first_order_rhs(spec, obj, sched, t, x, y, xd, yd);
        State s;
        s.t = t;
        s.x = std::move(x);
        s.v = std::move(xd);
        return s;
    };
    return drive(stepper, t0, std::move(z0), cfg, d, to_state);
}

}  // namespace trishlab
