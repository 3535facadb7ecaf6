#include "trishlab.h"

#include <algorithm>
#include <cstring>
#include <string>

#include "trishlab/analysis.hpp"
#include "trishlab/io.hpp"
#include "trishlab/suites.hpp"

namespace {

thread_local std::string g_last_error = "no error";

int set_error(trishlab_status code, const std::string& what) {
    g_last_error = what;
    return code;
}

trishlab_status map_errc(trishlab::Errc c) {
    using trishlab::Errc;
    switch (c) {
        case Errc::InvalidArgument: return TRISHLAB_ERR_INVALID_ARGUMENT;
        case Errc::DomainViolation: return TRISHLAB_ERR_DOMAIN_VIOLATION;
        case Errc::NonConvergence: return TRISHLAB_ERR_NONCONVERGENCE;
        case Errc::ScheduleUnderflow: return TRISHLAB_ERR_SCHEDULE_UNDERFLOW;
        case Errc::BetaZero: return TRISHLAB_ERR_BETA_ZERO;
        case Errc::WrongScheduleKind: return TRISHLAB_ERR_WRONG_SCHEDULE_KIND;
        case Errc::InfeasibleDelta: return TRISHLAB_ERR_INFEASIBLE_DELTA;
        case Errc::MissingMinNormSolution: return TRISHLAB_ERR_MISSING_MIN_NORM;
        case Errc::InsufficientSamples: return TRISHLAB_ERR_INSUFFICIENT_SAMPLES;
        case Errc::NonPositiveQuantity: return TRISHLAB_ERR_NONPOSITIVE_QUANTITY;
        case Errc::Io: return TRISHLAB_ERR_IO;
    }
    return TRISHLAB_ERR_INTERNAL;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        fn();
        return TRISHLAB_OK;
    } catch (const trishlab::Error& e) {
        return set_error(map_errc(e.code()), e.what());
    } catch (const std::exception& e) {
        return set_error(TRISHLAB_ERR_INTERNAL, e.what());
    } catch (...) {
        return set_error(TRISHLAB_ERR_INTERNAL, "unknown error");
    }
}

int require(bool cond, const char* what) {
    return cond ? TRISHLAB_OK : set_error(TRISHLAB_ERR_INVALID_ARGUMENT, what);
}

trishlab::Vec to_vec(const double* p, int n) { return trishlab::Vec(p, p + n); }

trishlab::IntegratorConfig convert_cfg(const trishlab_integrator_config* c) {
    trishlab::IntegratorConfig cfg;
    if (!c) return cfg;
    cfg.method = c->adaptive ? trishlab::Method::AdaptiveRK45 : trishlab::Method::FixedRK4;
    if (c->h_init > 0.0) cfg.h_init = c->h_init;
    if (c->abs_tol > 0.0) cfg.abs_tol = c->abs_tol;
    if (c->rel_tol > 0.0) cfg.rel_tol = c->rel_tol;
    cfg.t_end = c->t_end;
    if (c->record_interval > 0.0)
        cfg.record = trishlab::RecordPolicy::fixed_interval(c->record_interval);
    else if (c->record_log_per_decade > 0)
        cfg.record = trishlab::RecordPolicy::log_per_decade(c->record_log_per_decade);
    if (c->max_steps > 0) cfg.max_steps = c->max_steps;
    return cfg;
}

trishlab::LyapunovParams convert_params(const trishlab_lyapunov_params* p) {
    trishlab::LyapunovParams params;
    if (!p) return params;
    if (p->lambda >= 0.0) params.lambda = p->lambda;
    if (p->a > 0.0) params.a = p->a;
    if (p->c > 0.0) params.c = p->c;
    params.mode = p->strict_mode ? trishlab::FeasibilityMode::StrictDefinition
                                 : trishlab::FeasibilityMode::ProofConstraints;
    return params;
}

trishlab::Series to_series(const double* t, const double* q, int n) {
    trishlab::Series s;
    s.t.assign(t, t + n);
    s.q.assign(q, q + n);
    return s;
}

}  // namespace

struct trishlab_objective {
    trishlab::Objective obj;
};
struct trishlab_schedule {
    trishlab::Schedule sched;
};
struct trishlab_dynamics {
    trishlab::DynamicsSpec spec;
};
struct trishlab_trajectory {
    trishlab::Trajectory traj;
};
struct trishlab_report {
    trishlab::MonitorResult mon;
    std::string json;
};
struct trishlab_suite_result {
    std::vector<trishlab::CriterionResult> results;
};

extern "C" {

const char* trishlab_version(void) { return "1.0.0"; }

const char* trishlab_last_error(void) { return g_last_error.c_str(); }

/* ------------------------------------------------------------ objectives */

int trishlab_objective_builtin(const char* id, trishlab_objective** out) {
    if (int rc = require(id && out, "builtin: id and out must be non-NULL")) return rc;
    return guarded([&] { *out = new trishlab_objective{trishlab::make_builtin(id)}; });
}

int trishlab_objective_quadratic(int dim, const double* a_rowmajor, const double* b,
                                 trishlab_objective** out) {
    if (int rc = require(a_rowmajor && b && out && dim > 0, "quadratic: bad arguments")) return rc;
    return guarded([&] {
        *out = new trishlab_objective{trishlab::make_quadratic(
            dim, std::vector<double>(a_rowmajor, a_rowmajor + dim * dim), to_vec(b, dim))};
    });
}

int trishlab_objective_dim(const trishlab_objective* obj, int* dim) {
    if (int rc = require(obj && dim, "dim: bad arguments")) return rc;
    *dim = obj->obj.dim;
    return TRISHLAB_OK;
}

int trishlab_objective_value(const trishlab_objective* obj, const double* x, double* out) {
    if (int rc = require(obj && x && out, "value: bad arguments")) return rc;
    return guarded([&] { *out = trishlab::eval(obj->obj, to_vec(x, obj->obj.dim)); });
}

int trishlab_objective_gradient(const trishlab_objective* obj, const double* x, double* out) {
    if (int rc = require(obj && x && out, "gradient: bad arguments")) return rc;
    return guarded([&] {
        const trishlab::Vec g = trishlab::grad(obj->obj, to_vec(x, obj->obj.dim));
        std::memcpy(out, g.data(), g.size() * sizeof(double));
    });
}

int trishlab_objective_hess_vec(const trishlab_objective* obj, const double* x, const double* v,
                                double* out) {
    if (int rc = require(obj && x && v && out, "hess_vec: bad arguments")) return rc;
    return guarded([&] {
        const trishlab::Vec hv =
            trishlab::hess_vec(obj->obj, to_vec(x, obj->obj.dim), to_vec(v, obj->obj.dim));
        std::memcpy(out, hv.data(), hv.size() * sizeof(double));
    });
}

int trishlab_objective_min_norm(const trishlab_objective* obj, double* out, int* has) {
    if (int rc = require(obj && has, "min_norm: bad arguments")) return rc;
    *has = obj->obj.min_norm_solution ? 1 : 0;
    if (*has && out)
        std::memcpy(out, obj->obj.min_norm_solution->data(),
                    obj->obj.min_norm_solution->size() * sizeof(double));
    return TRISHLAB_OK;
}

void trishlab_objective_free(trishlab_objective* obj) { delete obj; }

/* ------------------------------------------------------------- schedules */

int trishlab_schedule_power(double r, trishlab_schedule** out) {
    if (int rc = require(out != nullptr, "power: out must be non-NULL")) return rc;
    return guarded([&] { *out = new trishlab_schedule{trishlab::Schedule::power(r)}; });
}

int trishlab_schedule_custom(trishlab_schedule_fn eps, trishlab_schedule_fn eps_dot, void* user,
                             double t_min, trishlab_schedule** out) {
    if (int rc = require(eps && eps_dot && out, "custom: callbacks and out must be non-NULL"))
        return rc;
    return guarded([&] {
        *out = new trishlab_schedule{trishlab::Schedule::custom(
            [eps, user](double t) { return eps(t, user); },
            [eps_dot, user](double t) { return eps_dot(t, user); }, t_min)};
    });
}

int trishlab_schedule_eps(const trishlab_schedule* sched, double t, double* out) {
    if (int rc = require(sched && out, "eps: bad arguments")) return rc;
    return guarded([&] { *out = sched->sched.eps(t); });
}

int trishlab_schedule_eps_dot(const trishlab_schedule* sched, double t, double* out) {
    if (int rc = require(sched && out, "eps_dot: bad arguments")) return rc;
    return guarded([&] { *out = sched->sched.eps_dot(t); });
}

void trishlab_schedule_free(trishlab_schedule* sched) { delete sched; }

/* -------------------------------------------------------------- dynamics */

int trishlab_dynamics_create(const char* variant, double delta, double beta,
                             trishlab_dynamics** out) {
    if (int rc = require(variant && out, "dynamics: bad arguments")) return rc;
    return guarded([&] {
        *out = new trishlab_dynamics{trishlab::DynamicsSpec::parse(variant, delta, beta)};
    });
}

void trishlab_dynamics_free(trishlab_dynamics* dyn) { delete dyn; }

int trishlab_viscosity_point(const trishlab_objective* obj, double eps, double* x_out,
                             double* residual, int* iterations) {
    if (int rc = require(obj && x_out, "viscosity: bad arguments")) return rc;
    return guarded([&] {
        const trishlab::ViscosityResult r = trishlab::viscosity_point(obj->obj, eps);
        std::memcpy(x_out, r.x_eps.data(), r.x_eps.size() * sizeof(double));
        if (residual) *residual = r.residual;
        if (iterations) *iterations = r.iterations;
    });
}

/* ------------------------------------------------------------ integration */

void trishlab_integrator_config_default(trishlab_integrator_config* cfg) {
    if (!cfg) return;
    cfg->adaptive = 1;
    cfg->h_init = 1e-3;
    cfg->abs_tol = 1e-9;
    cfg->rel_tol = 1e-9;
    cfg->t_end = 1e4;
    cfg->record_log_per_decade = 200;
    cfg->record_interval = 0.0;
    cfg->max_steps = 0;
}

int trishlab_integrate(const trishlab_dynamics* dyn, const trishlab_objective* obj,
                       const trishlab_schedule* sched, double t0, const double* x0,
                       const double* v0, const trishlab_integrator_config* cfg,
                       trishlab_trajectory** out) {
    if (int rc = require(dyn && obj && sched && x0 && v0 && out, "integrate: bad arguments"))
        return rc;
    return guarded([&] {
        trishlab::State init{t0, to_vec(x0, obj->obj.dim), to_vec(v0, obj->obj.dim)};
        *out = new trishlab_trajectory{trishlab::integrate_second_order(
            dyn->spec, obj->obj, sched->sched, init, convert_cfg(cfg))};
    });
}

int trishlab_integrate_first_order(const trishlab_dynamics* dyn, const trishlab_objective* obj,
                                   const trishlab_schedule* sched, double t0, const double* x0,
                                   const double* v0, const trishlab_integrator_config* cfg,
                                   trishlab_trajectory** out) {
    if (int rc = require(dyn && obj && sched && x0 && v0 && out, "integrate: bad arguments"))
        return rc;
    return guarded([&] {
        trishlab::State init{t0, to_vec(x0, obj->obj.dim), to_vec(v0, obj->obj.dim)};
        const auto [xx, yy] =
            trishlab::lift_to_first_order(dyn->spec, obj->obj, sched->sched, init);
        *out = new trishlab_trajectory{trishlab::integrate_first_order(
            dyn->spec, obj->obj, sched->sched, t0, xx, yy, convert_cfg(cfg))};
    });
}

int trishlab_trajectory_size(const trishlab_trajectory* traj, int* n) {
    if (int rc = require(traj && n, "trajectory_size: bad arguments")) return rc;
    *n = static_cast<int>(traj->traj.samples.size());
    return TRISHLAB_OK;
}

int trishlab_trajectory_dim(const trishlab_trajectory* traj, int* dim) {
    if (int rc = require(traj && dim, "trajectory_dim: bad arguments")) return rc;
    *dim = traj->traj.dim;
    return TRISHLAB_OK;
}

int trishlab_trajectory_sample(const trishlab_trajectory* traj, int i, double* t, double* x,
                               double* v) {
    if (int rc = require(traj, "trajectory_sample: bad arguments")) return rc;
    if (i < 0 || i >= static_cast<int>(traj->traj.samples.size()))
        return set_error(TRISHLAB_ERR_INVALID_ARGUMENT, "trajectory_sample: index out of range");
    const trishlab::State& s = traj->traj.samples[i];
    if (t) *t = s.t;
    if (x) std::memcpy(x, s.x.data(), s.x.size() * sizeof(double));
    if (v) std::memcpy(v, s.v.data(), s.v.size() * sizeof(double));
    return TRISHLAB_OK;
}

int trishlab_trajectory_termination(const trishlab_trajectory* traj, const char** name) {
    if (int rc = require(traj && name, "termination: bad arguments")) return rc;
    *name = trishlab::termination_name(traj->traj.termination);
    return TRISHLAB_OK;
}

void trishlab_trajectory_free(trishlab_trajectory* traj) { delete traj; }

int trishlab_trajectory_quantity(const trishlab_trajectory* traj, const trishlab_objective* obj,
                                 const trishlab_schedule* sched, const trishlab_dynamics* dyn,
                                 const char* quantity, double* t, double* q, int* n) {
    if (int rc = require(traj && obj && sched && dyn && quantity && n, "quantity: bad arguments"))
        return rc;
    return guarded([&] {
        const trishlab::Series s = trishlab::quantity_series(
            traj->traj, obj->obj, sched->sched, dyn->spec, trishlab::parse_quantity(quantity));
        if (t && q) {
            const int want = std::min(*n, static_cast<int>(s.t.size()));
            std::memcpy(t, s.t.data(), want * sizeof(double));
            std::memcpy(q, s.q.data(), want * sizeof(double));
        }
        *n = static_cast<int>(s.t.size());
    });
}

/* --------------------------------------------------------------- monitor */

int trishlab_monitor(const trishlab_trajectory* traj, const trishlab_objective* obj,
                     const trishlab_schedule* sched, const trishlab_dynamics* dyn,
                     const trishlab_lyapunov_params* params, trishlab_report** out) {
    if (int rc = require(traj && obj && sched && dyn && out, "monitor: bad arguments")) return rc;
    return guarded([&] {
        auto* rep = new trishlab_report;
        rep->mon =
            trishlab::monitor(traj->traj, obj->obj, sched->sched, dyn->spec, convert_params(params));
        rep->json = rep->mon.report.to_json();
        *out = rep;
    });
}

int trishlab_report_json(const trishlab_report* rep, const char** json) {
    if (int rc = require(rep && json, "report_json: bad arguments")) return rc;
    *json = rep->json.c_str();
    return TRISHLAB_OK;
}

void trishlab_report_free(trishlab_report* rep) { delete rep; }

int trishlab_hp_feasible(double p, double delta, const trishlab_lyapunov_params* params,
                         const trishlab_schedule* sched, double beta, double* lambda_lo,
                         double* lambda_hi, double* t1, int* has_t1) {
    if (int rc = require(lambda_lo && lambda_hi, "hp_feasible: bad arguments")) return rc;
    return guarded([&] {
        const trishlab::FeasibilityReport rep = trishlab::hp_feasible(
            p, delta, convert_params(params), sched ? &sched->sched : nullptr, beta);
        *lambda_lo = rep.lambda_lo;
        *lambda_hi = rep.lambda_hi;
        if (has_t1) *has_t1 = rep.t1 ? 1 : 0;
        if (t1 && rep.t1) *t1 = *rep.t1;
    });
}

/* -------------------------------------------------------------- analysis */

int trishlab_fit_rate(const double* t, const double* q, int n, double t_lo, double t_hi,
                      double* slope, double* intercept, double* r2) {
    if (int rc = require(t && q && slope && n > 0, "fit_rate: bad arguments")) return rc;
    return guarded([&] {
        const trishlab::RateFit fit = trishlab::fit_rate(to_series(t, q, n), {t_lo, t_hi});
        *slope = fit.slope;
        if (intercept) *intercept = fit.intercept;
        if (r2) *r2 = fit.r2;
    });
}

int trishlab_bounded_ratio(const double* t, const double* q, int n, double exponent, double t_lo,
                           double t_hi, double* max_first, double* max_last, double* ratio) {
    if (int rc = require(t && q && ratio && n > 0, "bounded_ratio: bad arguments")) return rc;
    return guarded([&] {
        const trishlab::BoundedReport rep =
            trishlab::bounded_scaled_quantity(to_series(t, q, n), exponent, {t_lo, t_hi});
        if (max_first) *max_first = rep.max_first_decade;
        if (max_last) *max_last = rep.max_last_decade;
        *ratio = rep.ratio;
    });
}

int trishlab_integral_tail(const double* t, const double* q, int n, double weight, double split,
                           double* total, double* tail_fraction) {
    if (int rc = require(t && q && tail_fraction && n > 0, "integral_tail: bad arguments"))
        return rc;
    return guarded([&] {
        const trishlab::IntegralTail tail =
            trishlab::weighted_integral_tail(to_series(t, q, n), weight, split);
        if (total) *total = tail.total;
        *tail_fraction = tail.tail_fraction;
    });
}

int trishlab_oscillation_count(const double* t, const double* q, int n, double t_lo, double t_hi,
                               int* count) {
    if (int rc = require(t && q && count && n > 0, "oscillation_count: bad arguments")) return rc;
    return guarded(
        [&] { *count = trishlab::oscillation_count(to_series(t, q, n), {t_lo, t_hi}); });
}

/* ------------------------------------------------------------------- io */

int trishlab_trajectory_write_csv(const trishlab_trajectory* traj, const trishlab_objective* obj,
                                  const trishlab_schedule* sched, const trishlab_report* rep,
                                  const char* path) {
    if (int rc = require(traj && obj && sched && path, "write_csv: bad arguments")) return rc;
    return guarded([&] {
        trishlab::write_trajectory_csv(path, traj->traj, obj->obj, sched->sched,
                                       rep ? &rep->mon.records : nullptr);
    });
}

int trishlab_svg_write(const char* path, const char* title, const char* xlabel,
                       const char* ylabel, int n_series, const char* const* labels,
                       const double* const* ts, const double* const* qs, const int* ns) {
    if (int rc = require(path && labels && ts && qs && ns && n_series > 0,
                         "svg_write: bad arguments"))
        return rc;
    return guarded([&] {
        std::vector<trishlab::SvgSeries> series(n_series);
        for (int k = 0; k < n_series; ++k) {
            series[k].label = labels[k];
            series[k].t.assign(ts[k], ts[k] + ns[k]);
            series[k].q.assign(qs[k], qs[k] + ns[k]);
        }
        trishlab::write_svg_loglog(path, title ? title : "", xlabel ? xlabel : "t",
                                   ylabel ? ylabel : "", series);
    });
}

/* --------------------------------------------------------- verification */

int trishlab_suite_run(const char* suite, int threads, trishlab_suite_result** out) {
    if (int rc = require(suite && out, "suite_run: bad arguments")) return rc;
    return guarded([&] {
        *out = new trishlab_suite_result{trishlab::run_suite(suite, threads)};
    });
}

int trishlab_suite_size(const trishlab_suite_result* res, int* n) {
    if (int rc = require(res && n, "suite_size: bad arguments")) return rc;
    *n = static_cast<int>(res->results.size());
    return TRISHLAB_OK;
}

int trishlab_suite_criterion(const trishlab_suite_result* res, int i, const char** id,
                             const char** name, int* passed, const char** detail) {
    if (int rc = require(res, "suite_criterion: bad arguments")) return rc;
    if (i < 0 || i >= static_cast<int>(res->results.size()))
        return set_error(TRISHLAB_ERR_INVALID_ARGUMENT, "suite_criterion: index out of range");
    const trishlab::CriterionResult& r = res->results[i];
    if (id) *id = r.id.c_str();
    if (name) *name = r.name.c_str();
    if (passed) *passed = r.passed ? 1 : 0;
    if (detail) *detail = r.detail.c_str();
    return TRISHLAB_OK;
}

void trishlab_suite_result_free(trishlab_suite_result* res) { delete res; }

}  // extern "C"
