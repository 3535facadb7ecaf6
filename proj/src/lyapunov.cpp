#include "trishlab/lyapunov.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace trishlab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double positive_eps(const Schedule& sched, double t) {
    const double eps = sched.eps(t);
    if (!(eps > 0.0))
        fail(Errc::ScheduleUnderflow, "lyapunov: eps(t) must be positive at t=" + std::to_string(t));
    return eps;
}

void validate_params(const LyapunovParams& params, double delta) {
    if (!(params.a > 1.0)) fail(Errc::InvalidArgument, "lyapunov params: need a > 1");
    if (!(params.c > 2.0)) fail(Errc::InvalidArgument, "lyapunov params: need c > 2");
    if (params.lambda && !(*params.lambda >= 0.0 && *params.lambda < delta))
        fail(Errc::InvalidArgument, "lyapunov params: need 0 <= lambda < delta");
}

double log_sum_exp(double la, double lb) {
    if (la == kNegInf) return lb;
    if (lb == kNegInf) return la;
    const double hi = std::max(la, lb);
    return hi + std::log(std::exp(la - hi) + std::exp(lb - hi));
}

Vec a_p_term(const Objective& obj, double eps, double p, const State& state) {
    Vec ap = grad(obj, state.x);
    axpy(eps, state.x, ap);                 // grad phi_t(x)
    axpy((p - 1.0) * eps, state.x, ap);     // + (p-1) eps x
    return ap;
}

}  // namespace

EnergyTriple energy_Ep(const Objective& obj, const Schedule& sched, const DynamicsSpec& spec,
                       double lambda, const State& state, const Vec& x_eps) {
    if (!(lambda >= 0.0 && lambda < spec.delta))
        fail(Errc::InvalidArgument, "energy_Ep: need 0 <= lambda < delta");
    const double eps = positive_eps(sched, state.t);
    const double se = std::sqrt(eps);

    const double gap = phi(obj, sched, state.t, state.x) - phi(obj, sched, state.t, x_eps);

    Vec vp = a_p_term(obj, eps, spec.p, state);
    for (size_t i = 0; i < vp.size(); ++i)
        vp[i] = lambda * se * (state.x[i] - x_eps[i]) + state.v[i] + spec.beta * vp[i];

    EnergyTriple out;
    out.vp_norm = norm2(vp);
    out.gap = gap;
    out.E_p = gap + 0.5 * out.vp_norm * out.vp_norm;
    return out;
}

double mu_of_t(const Schedule& sched, double delta, double lambda, double t) {
    const double eps = positive_eps(sched, t);
    return -sched.eps_dot(t) / (2.0 * eps) + (delta - lambda) * std::sqrt(eps);
}

double G_of_t(const Schedule& sched, const DynamicsSpec& spec, double lambda, double a, double c,
              double t) {
    const double eps = positive_eps(sched, t);
    const double de = sched.eps_dot(t);
    return (lambda * c + 2.0 * a) * lambda * de * de / std::pow(eps, 1.5) - de +
           (1.0 - spec.p) * spec.beta * lambda * (spec.delta - lambda) * eps * eps;
}

double resolve_lambda(double p, double delta, const LyapunovParams& params) {
    validate_params(params, delta);
    if (params.lambda) return *params.lambda;
    const double hi =
        std::min(params.a * delta / (params.a + 1.0),
                 0.5 * (delta + std::sqrt(std::max(delta * delta - 4.0 * (1.0 - p), 0.0))));
    return 0.5 * (0.5 * delta + hi);
}

FeasibilityReport hp_feasible(double p, double delta, const LyapunovParams& params,
                              const Schedule* sched, double beta) {
    validate_params(params, delta);
    if (p < 0.0 || p > 1.0) fail(Errc::InvalidArgument, "hp_feasible: p must lie in [0,1]");
    const double gate = 2.0 * std::sqrt(1.0 - p);
    if (!(delta > gate))
        fail(Errc::InfeasibleDelta, "hp_feasible: need delta > 2 sqrt(1-p) = " +
                                        std::to_string(gate) + ", got delta=" +
                                        std::to_string(delta));

    const double a = params.a, c = params.c;
    FeasibilityReport rep;
    rep.mode = params.mode;

    const double upper =
        std::min(a * delta / (a + 1.0),
                 0.5 * (delta + std::sqrt(delta * delta - 4.0 * (1.0 - p))));

    if (params.mode == FeasibilityMode::ProofConstraints) {
        rep.lambda_lo = 0.5 * delta;
        rep.lambda_hi = upper;
    } else {
        // Literal piecewise definition. The heavy lower branch applies for
        // delta above sqrt(2) - 1/c, which is where the paper's own delta=3
        // experiments sit; the interval is then typically empty.
        const double heavy_lower =
            0.5 * (delta + 1.0 / c + std::sqrt((delta + 1.0 / c) * (delta + 1.0 / c) - 2.0));
        if (p > 0.5) {
            const double c_gate = std::max(2.0, (1.0 + std::sqrt(2.0 * (1.0 - p))) / (2.0 * p - 1.0));
            if (!(c > c_gate))
                rep.notes.push_back("strict definition needs c > " + std::to_string(c_gate) +
                                    " for p=" + std::to_string(p) + "; interval reported empty");
            if (c > c_gate && delta <= std::sqrt(2.0) - 1.0 / c)
                rep.lambda_lo = 0.5 * delta;
            else
                rep.lambda_lo = std::max(0.5 * delta, heavy_lower);
            rep.lambda_hi = c > c_gate ? upper : rep.lambda_lo;
        } else {
            rep.lambda_lo = std::max(0.5 * delta, heavy_lower);
            rep.lambda_hi = upper;
        }
        if (rep.empty())
            rep.notes.push_back(
                "strict growth-condition interval is empty at these parameters; the "
                "proof-constraints mode stays usable");
    }

    // Earliest time the growth condition holds, for power schedules.
    if (sched && sched->kind() == Schedule::Kind::Power && !rep.empty()) {
        const double lambda =
            params.lambda ? *params.lambda : 0.5 * (rep.lambda_lo + rep.lambda_hi);
        const double margin =
            std::min(2.0 * lambda - delta, 0.5 * (delta - (a + 1.0) / a * lambda));
        const double r = sched->power_r();
        if (margin > 0.0) {
            auto holds = [&](double t) {
                const double slope = 0.5 * r * std::pow(t, 0.5 * (r - 2.0));
                return slope <= margin && delta * beta <= std::pow(t, 0.5 * r);
            };
            double lo = sched->t_min();
            if (holds(lo)) {
                rep.t1 = lo;
            } else {
                double hi = std::max(lo, 1.0);
                while (!holds(hi) && hi < 1e15) hi *= 2.0;
                if (holds(hi)) {
                    for (int i = 0; i < 200; ++i) {
                        const double mid = 0.5 * (lo + hi);
                        (holds(mid) ? hi : lo) = mid;
                    }
                    rep.t1 = hi;
                } else {
                    rep.notes.push_back("growth condition never holds below t=1e15");
                }
            }
        } else {
            rep.notes.push_back("lambda=" + std::to_string(lambda) +
                                " leaves no positive slope margin; t1 undefined");
        }
    }
    return rep;
}

const InequalityStat* InequalityReport::find(const std::string& name) const {
    for (const auto& s : stats)
        if (s.name == name) return &s;
    return nullptr;
}

std::string InequalityReport::to_json() const {
    nlohmann::json j;
    j["lambda"] = lambda;
    j["a"] = a;
    j["c"] = c;
    j["t1"] = t1;
    j["feasibility"] = {
        {"mode", feasibility.mode == FeasibilityMode::ProofConstraints ? "proof_constraints"
                                                                       : "strict_definition"},
        {"lambda_lo", feasibility.lambda_lo},
        {"lambda_hi", feasibility.lambda_hi},
        {"empty", feasibility.empty()},
    };
    if (feasibility.t1) j["feasibility"]["t1"] = *feasibility.t1;
    j["inequalities"] = nlohmann::json::array();
    for (const auto& s : stats)
        j["inequalities"].push_back({{"name", s.name},
                                     {"checked", s.checked},
                                     {"violations", s.violations},
                                     {"violation_fraction", s.violation_fraction()},
                                     {"max_violation", s.max_violation},
                                     {"slack", {{"abs", s.slack_abs}, {"rel", s.slack_rel}}}});
    j["notes"] = notes;
    return j.dump(2);
}

MonitorResult monitor(const Trajectory& traj, const Objective& obj, const Schedule& sched,
                      const DynamicsSpec& spec, const LyapunovParams& params) {
    if (!obj.min_norm_solution)
        fail(Errc::MissingMinNormSolution,
             "monitor: objective '" + obj.name + "' has no known minimum-norm solution");
    validate_params(params, spec.delta);
    const Vec& xstar = *obj.min_norm_solution;
    const double nx2 = dot(xstar, xstar);
    const double lambda = resolve_lambda(spec.p, spec.delta, params);

    MonitorResult out;
    out.report.lambda = lambda;
    out.report.a = params.a;
    out.report.c = params.c;
    LyapunovParams fixed = params;
    fixed.lambda = lambda;
    out.report.feasibility = hp_feasible(spec.p, spec.delta, fixed, &sched, spec.beta);

    const size_t n = traj.samples.size();
    out.records.resize(n);

    ViscosityTracker tracker(obj);
    for (size_t i = 0; i < n; ++i) {
        const State& s = traj.samples[i];
        EnergyRecord& rec = out.records[i];
        rec.t = s.t;
        rec.eps = positive_eps(sched, s.t);
        const ViscosityResult vp = tracker.at(rec.eps);

        const EnergyTriple e = energy_Ep(obj, sched, spec, lambda, s, vp.x_eps);
        const EnergyTriple e0 = energy_Ep(obj, sched, spec, 0.0, s, vp.x_eps);
        rec.gap = e.gap;
        rec.E_p = e.E_p;
        rec.vp_norm = e.vp_norm;
        rec.calE_p = e0.E_p;
        rec.mu = mu_of_t(sched, spec.delta, lambda, s.t);
        rec.G = G_of_t(sched, spec, lambda, params.a, params.c, s.t);
        rec.dist_xeps = dist(s.x, vp.x_eps);
        Vec ap = a_p_term(obj, rec.eps, spec.p, s);
        rec.Ap_norm = norm2(ap);
        Vec gp = grad(obj, s.x);
        axpy(rec.eps, s.x, gp);
        rec.grad_phi_norm = norm2(gp);
    }

    // Start of the monitored window: first sample past the growth-condition
    // time (falls back to the start of the trajectory when t1 is unknown).
    size_t j0 = 0;
    if (out.report.feasibility.t1) {
        while (j0 < n && traj.samples[j0].t < *out.report.feasibility.t1) ++j0;
        if (j0 >= n) {
            out.report.notes.push_back("no samples past t1; differential monitors skipped");
            j0 = n;
        }
    } else {
        out.report.notes.push_back(
            "t1 unavailable; integrated monitors start at the first sample");
    }
    out.report.t1 = j0 < n ? traj.samples[j0].t : std::numeric_limits<double>::quiet_NaN();

    // log gamma(t) = integral of mu from the effective t1, trapezoid rule.
    for (size_t i = j0 + 1; i < n; ++i) {
        const double dt = out.records[i].t - out.records[i - 1].t;
        out.records[i].log_gamma =
            out.records[i - 1].log_gamma + 0.5 * dt * (out.records[i].mu + out.records[i - 1].mu);
    }
    for (size_t i = 0; i < n; ++i)
        out.records[i].log_Wp = out.records[i].E_p > 0.0
                                    ? out.records[i].log_gamma + std::log(out.records[i].E_p)
                                    : kNegInf;

    InequalityStat gap_stat{"gap_nonneg", 0, 0, 0.0, 1e-8, 0.0};
    InequalityStat lemma_gap{"lemma21_value_gap", 0, 0, 0.0, 1e-8, 0.0};
    InequalityStat lemma_dist{"lemma21_distance", 0, 0, 0.0, 1e-8, 0.0};
    InequalityStat est14{"est14_differential", 0, 0, 0.0, 1e-6, 1e-3};
    InequalityStat intE{"integrated_energy_bound", 0, 0, 0.0, 1e-12, 1e-3};
    InequalityStat intG{"gradient_integral_bound", 0, 0, 0.0, 1e-9, 1e-3};

    auto check = [](InequalityStat& st, double lhs, double rhs, double slack) {
        ++st.checked;
        if (lhs > rhs + slack) {
            ++st.violations;
            st.max_violation = std::max(st.max_violation, lhs - rhs);
        }
    };

    const bool have_min = obj.min_value.has_value();
    for (size_t i = 0; i < n; ++i) {
        const EnergyRecord& rec = out.records[i];
        check(gap_stat, 0.0, rec.gap, gap_stat.slack_abs);
        if (have_min) {
            const double fgap = eval(obj, traj.samples[i].x) - *obj.min_value;
            check(lemma_gap, fgap, rec.E_p + 0.5 * rec.eps * nx2, lemma_gap.slack_abs);
        }
        check(lemma_dist, rec.dist_xeps * rec.dist_xeps, 2.0 * rec.E_p / rec.eps,
              lemma_dist.slack_abs);
    }

    // Differential inequality, centered three-point derivative on the
    // (nonuniform) sample grid.
    const double grad_coeff = spec.beta * (spec.delta - lambda) / (2.0 * spec.delta);
    for (size_t i = std::max<size_t>(j0, 1); i + 1 < n; ++i) {
        const double h0 = out.records[i].t - out.records[i - 1].t;
        const double h1 = out.records[i + 1].t - out.records[i].t;
        const double Edot = (out.records[i + 1].E_p * h0 * h0 - out.records[i - 1].E_p * h1 * h1 +
                             out.records[i].E_p * (h1 * h1 - h0 * h0)) /
                            (h0 * h1 * (h0 + h1));
        const double lhs = Edot + out.records[i].mu * out.records[i].E_p +
                           grad_coeff * out.records[i].grad_phi_norm * out.records[i].grad_phi_norm;
        const double rhs = 0.5 * nx2 * out.records[i].G;
        check(est14, lhs, rhs, est14.slack_abs + est14.slack_rel * std::abs(out.records[i].E_p));
    }

    // Integrated bounds, accumulated in log space so gamma never overflows.
    if (j0 < n) {
        const double E_at_t1 = out.records[j0].E_p;
        const double logE1 = E_at_t1 > 0.0 ? std::log(E_at_t1) : kNegInf;
        double logI = kNegInf;              // log int_{t1}^{t} G gamma ds
        double intGds = 0.0;                // int_{t1}^{t} G ds
        double intGrad = 0.0;               // int_{t1}^{t} ||grad phi||^2 ds
        for (size_t i = j0 + 1; i < n; ++i) {
            const EnergyRecord& a = out.records[i - 1];
            const EnergyRecord& b = out.records[i];
            const double dt = b.t - a.t;
            const double la = a.G > 0.0 ? std::log(a.G) + a.log_gamma : kNegInf;
            const double lb = b.G > 0.0 ? std::log(b.G) + b.log_gamma : kNegInf;
            logI = log_sum_exp(logI, std::log(0.5 * dt) + log_sum_exp(la, lb));
            intGds += 0.5 * dt * (a.G + b.G);
            intGrad += 0.5 * dt *
                       (a.grad_phi_norm * a.grad_phi_norm + b.grad_phi_norm * b.grad_phi_norm);

            const double bound_log =
                log_sum_exp(std::log(0.5 * nx2) + logI - b.log_gamma, logE1 - b.log_gamma);
            const double bound = nx2 > 0.0 || E_at_t1 > 0.0 ? std::exp(bound_log) : 0.0;
            check(intE, b.E_p, bound, intE.slack_abs + intE.slack_rel * std::abs(bound));

            if (spec.beta > 0.0) {
                const double lead = 2.0 * spec.delta / (spec.beta * (spec.delta - lambda));
                const double rhs = lead * E_at_t1 + 0.5 * lead * nx2 * intGds;
                check(intG, intGrad, rhs, intG.slack_abs + intG.slack_rel * std::abs(rhs));
            }
        }
    }
    if (spec.beta <= 0.0)
        out.report.notes.push_back("beta=0: gradient-integral bound is vacuous and skipped");
    if (sched.kind() == Schedule::Kind::Power && sched.power_r() < 1.0 &&
        (spec.variant == Variant::Trish || spec.p == 0.0))
        out.report.notes.push_back(
            "r < 1: the trish rate theorem is stated for 1 <= r < 2; rate assertions follow "
            "the theorem-specific range");
    for (auto& w : spec.theorem_warnings()) out.report.notes.push_back(w);

    out.report.stats = {gap_stat, lemma_gap, lemma_dist, est14, intE, intG};
    return out;
}

}  // namespace trishlab
