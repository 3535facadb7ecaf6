#include "trishlab/suites.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "trishlab/analysis.hpp"
#include "trishlab/integrate.hpp"
#include "trishlab/lyapunov.hpp"

namespace trishlab {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// ---------------------------------------------------------------- run cache

struct RunCache {
    std::map<std::string, Trajectory> runs;
    const Trajectory& get(const std::string& key) const { return runs.at(key); }
};

IntegratorConfig paper_cfg(double t_end) {
    IntegratorConfig cfg;
    cfg.t_end = t_end;
    cfg.record = RecordPolicy::log_per_decade(200);
    return cfg;
}

Trajectory paper_run(const std::string& variant, double r, double t_end) {
    const Objective f2 = make_f2();
    const Schedule sched = Schedule::power(r);
    const DynamicsSpec spec = DynamicsSpec::parse(variant, 3.0, variant == "trigs" ? 0.0 : 1.0);
    return integrate_second_order(spec, f2, sched, {1.0, {3.0, -2.0}, {0.0, 0.0}},
                                  paper_cfg(t_end));
}

const std::map<std::string, std::function<Trajectory()>>& run_recipes() {
    static const std::map<std::string, std::function<Trajectory()>> recipes = {
        {"trish_r1.5", [] { return paper_run("trish", 1.5, 1e5); }},
        {"trishe_r1.5", [] { return paper_run("trishe", 1.5, 1e5); }},
        {"trish_r1", [] { return paper_run("trish", 1.0, 1e5); }},
        {"trigs_r1.5_1e3", [] { return paper_run("trigs", 1.5, 1e3); }},
    };
    return recipes;
}

void prefetch(RunCache& cache, const std::set<std::string>& keys, int threads) {
    std::vector<std::pair<std::string, std::future<Trajectory>>> pending;
    std::vector<std::string> todo(keys.begin(), keys.end());
    const size_t width = static_cast<size_t>(std::max(threads, 1));
    size_t next = 0;
    while (next < todo.size() || !pending.empty()) {
        while (next < todo.size() && pending.size() < width) {
            const std::string key = todo[next++];
            pending.emplace_back(key, std::async(std::launch::async, run_recipes().at(key)));
        }
        cache.runs[pending.front().first] = pending.front().second.get();
        pending.erase(pending.begin());
    }
}

// ------------------------------------------------------------ small helpers

CriterionResult result(std::string id, std::string name, bool passed, std::string detail) {
    return {std::move(id), std::move(name), passed, std::move(detail)};
}

// Least-squares slope of log10(q) against t (semi-log fit).
double semilog_slope(const Series& s, Window w) {
    std::vector<double> ts, lq;
    for (size_t i = 0; i < s.t.size(); ++i)
        if (s.t[i] >= w.t_lo && s.t[i] <= w.t_hi && s.q[i] > 0.0) {
            ts.push_back(s.t[i]);
            lq.push_back(std::log10(s.q[i]));
        }
    if (ts.size() < 5) fail(Errc::InsufficientSamples, "semilog fit: too few positive samples");
    double mt = 0.0, mq = 0.0;
    for (size_t i = 0; i < ts.size(); ++i) {
        mt += ts[i];
        mq += lq[i];
    }
    mt /= ts.size();
    mq /= ts.size();
    double stt = 0.0, stq = 0.0;
    for (size_t i = 0; i < ts.size(); ++i) {
        stt += (ts[i] - mt) * (ts[i] - mt);
        stq += (ts[i] - mt) * (lq[i] - mq);
    }
    return stq / stt;
}

std::string variant_of(const std::string& key) { return key.substr(0, key.find('_')); }

Series velocity_norm_series(const Trajectory& traj) {
    Series s;
    for (const auto& st : traj.samples) {
        s.t.push_back(st.t);
        s.q.push_back(norm2(st.v));
    }
    return s;
}

// ------------------------------------------------------------ criterion 1

CriterionResult crit_oracle(RunCache&) {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    double worst_visc = 0.0;

    for (int dim : {2, 3, 5, 8}) {
        for (int rep = 0; rep < 2; ++rep) {
            Eigen::MatrixXd M(dim, dim);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) M(i, j) = unit(rng);
            Eigen::MatrixXd A = M.transpose() * M + 0.5 * Eigen::MatrixXd::Identity(dim, dim);
            Vec b(dim);
            for (int i = 0; i < dim; ++i) b[i] = unit(rng);

            std::vector<double> a_flat(dim * dim);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) a_flat[i * dim + j] = A(i, j);
            const Objective q = make_quadratic(dim, a_flat, b);

            for (double eps : {1.0, 1e-2, 1e-4}) {
                Eigen::VectorXd bb(dim);
                for (int i = 0; i < dim; ++i) bb(i) = b[i];
                const Eigen::VectorXd ref =
                    (A + eps * Eigen::MatrixXd::Identity(dim, dim)).llt().solve(bb);
                const ViscosityResult r = viscosity_point(q, eps);
                double gap = 0.0;
                for (int i = 0; i < dim; ++i) gap = std::max(gap, std::abs(r.x_eps[i] - ref(i)));
                worst_visc = std::max(worst_visc, gap);
            }
        }
    }

    // Closed form for f2.
    const Objective f2 = make_f2();
    for (double eps : {1.0, 1e-2, 1e-4}) {
        const ViscosityResult r = viscosity_point(f2, eps);
        const double s = 1.0 / (2.0 + eps);
        worst_visc = std::max({worst_visc, std::abs(r.x_eps[0] - s), std::abs(r.x_eps[1] - s)});
    }

    // Finite-difference consistency of gradient and Hessian-vector product.
    const double h_g = std::cbrt(std::numeric_limits<double>::epsilon());
    double worst_g = 0.0, worst_h = 0.0;
    for (const Objective& obj : {make_f1(), f2}) {
        std::uniform_real_distribution<double> coord(
            obj.name == "f1" ? -0.5 : -3.0, obj.name == "f1" ? 2.0 : 3.0);
        for (int k = 0; k < 100; ++k) {
            Vec x{coord(rng), coord(rng)};
            const Vec g = grad(obj, x);
            const double scale_g = std::max(norm2(g), 1e-8);
            for (int i = 0; i < 2; ++i) {
                const double h = h_g * (1.0 + std::abs(x[i]));
                Vec xp = x, xm = x;
                xp[i] += h;
                xm[i] -= h;
                const double fd = (eval(obj, xp) - eval(obj, xm)) / (2.0 * h);
                worst_g = std::max(worst_g, std::abs(fd - g[i]) / scale_g);
            }
            Vec v{unit(rng), unit(rng)};
            const Vec hv = hess_vec(obj, x, v);
            const double h = 1e-6 * (1.0 + norm2(x)) / std::max(norm2(v), 1e-12);
            Vec xp = x, xm = x;
            axpy(h, v, xp);
            axpy(-h, v, xm);
            const Vec gp = grad(obj, xp), gm = grad(obj, xm);
            const double scale_h = std::max(norm2(hv), 1e-8);
            for (int i = 0; i < 2; ++i)
                worst_h = std::max(worst_h,
                                   std::abs((gp[i] - gm[i]) / (2.0 * h) - hv[i]) / scale_h);
        }
    }

    const bool pass = worst_visc <= 1e-10 && worst_g <= 1e-5 && worst_h <= 1e-4;
    return result("1", "viscosity and derivative oracles", pass,
                  "max viscosity gap " + num(worst_visc) + " (<=1e-10), grad FD rel err " +
                      num(worst_g) + " (<=1e-5), hvp FD rel err " + num(worst_h) + " (<=1e-4)");
}

// ------------------------------------------------------------ criterion 2

CriterionResult crit_tikhonov_path(RunCache&) {
    const Objective f2 = make_f2();
    const Vec& xstar = *f2.min_norm_solution;
    const double nx = norm2(xstar);
    ViscosityTracker tracker(f2);
    double prev = std::numeric_limits<double>::infinity();
    double final_dist = 0.0;
    bool norm_ok = true, monotone = true;
    for (double eps = 1.0; eps >= 1e-6 * (1.0 - 1e-12); eps /= std::sqrt(10.0)) {
        const ViscosityResult r = tracker.at(eps);
        if (norm2(r.x_eps) > nx + 1e-10) norm_ok = false;
        const double d = dist(r.x_eps, xstar);
        if (d > prev + 1e-10) monotone = false;
        prev = d;
        final_dist = d;
    }
    const bool pass = norm_ok && monotone && final_dist <= 1e-3;
    return result("2", "tikhonov path selects the minimum-norm solution", pass,
                  std::string("norm bound ") + (norm_ok ? "ok" : "violated") + ", distance " +
                      (monotone ? "monotone" : "not monotone") + ", final gap " + num(final_dist) +
                      " (<=1e-3)");
}

// ------------------------------------------------------------ criterion 3

CriterionResult crit_envelope_identity(RunCache&) {
    const Schedule sched = Schedule::power(1.0);
    double worst = 0.0;
    const Objective quad = make_quadratic(2, {1.0, 0.0, 0.0, 1.0}, {1.0, 0.0});
    for (const Objective& obj : {quad, make_f2()}) {
        for (double t : {2.0, 10.0, 100.0}) {
            const auto [lhs, rhs] = envelope_derivative_identity_check(obj, sched, t, 1e-3 * t);
            worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300));
        }
    }
    return result("3", "envelope derivative identity", worst <= 1e-4,
                  "max relative mismatch " + num(worst) + " (<=1e-4)");
}

// ------------------------------------------------------------ criterion 4

CriterionResult crit_theorem6(RunCache&) {
    const Objective f2 = make_f2();
    const Schedule sched = Schedule::power(1.5);
    const DynamicsSpec spec = DynamicsSpec::trishe(3.0, 1.0);
    IntegratorConfig cfg;
    cfg.abs_tol = cfg.rel_tol = 1e-10;
    cfg.t_end = 101.0;
    cfg.record = RecordPolicy::fixed_interval(0.5);

    const State init{1.0, {3.0, -2.0}, {0.0, 0.0}};
    const Trajectory second = integrate_second_order(spec, f2, sched, init, cfg);
    const auto [x0, y0] = lift_to_first_order(spec, f2, sched, init);
    const Trajectory first = integrate_first_order(spec, f2, sched, init.t, x0, y0, cfg);

    if (second.samples.size() != first.samples.size())
        return result("4", "theorem-6.1 first/second order equivalence", false,
                      "sample grids differ");
    double gap_x = 0.0, gap_v = 0.0;
    for (size_t i = 0; i < second.samples.size(); ++i) {
        gap_x = std::max(gap_x, dist(second.samples[i].x, first.samples[i].x));
        gap_v = std::max(gap_v, dist(second.samples[i].v, first.samples[i].v));
    }
    const bool pass = gap_x <= 1e-6 && gap_v <= 1e-6;
    return result("4", "theorem-6.1 first/second order equivalence", pass,
                  "sup |x2-x1| " + num(gap_x) + ", sup |v2-v1| " + num(gap_v) + " (<=1e-6)");
}

// ------------------------------------------------------------ criterion 5

CriterionResult crit_heavy_ball(RunCache&) {
    // Pure heavy ball xdd + 2 xd + x = 0 realized with a zero objective and a
    // frozen schedule (delta sqrt(eps) = 2, the eps x term supplies grad f);
    // the measured values are f(x) = 0.5 ||x||^2.
    const Objective zero = make_quadratic(2, {0.0, 0.0, 0.0, 0.0}, {0.0, 0.0});
    const Schedule sched = Schedule::constant(1.0, 1e-3);
    const DynamicsSpec spec = DynamicsSpec::trigs(2.0);
    IntegratorConfig cfg;
    cfg.t_end = 25.0;
    cfg.record = RecordPolicy::fixed_interval(0.05);
    const Trajectory traj =
        integrate_second_order(spec, zero, sched, {1e-3, {1.0, 1.0}, {0.0, 0.0}}, cfg);

    Series f;
    for (const auto& s : traj.samples) {
        f.t.push_back(s.t);
        f.q.push_back(0.5 * dot(s.x, s.x));
    }
    const double slope = semilog_slope(f, {5.0, 20.0});
    const bool pass = slope >= -1.25 && slope <= -0.75;
    return result("5", "heavy-ball exponential value decay", pass,
                  "log10 slope of f over t in [5,20]: " + num(slope) + " (in [-1.25,-0.75])");
}

// ------------------------------------------------------------ criterion 6

CriterionResult crit_rates_values(RunCache& cache) {
    const Objective f2 = make_f2();
    const Schedule sched = Schedule::power(1.5);
    std::ostringstream detail;
    bool pass = true;
    for (const char* key : {"trish_r1.5", "trishe_r1.5"}) {
        const Trajectory& traj = cache.get(key);
        const DynamicsSpec spec = DynamicsSpec::parse(variant_of(key), 3.0, 1.0);
        const Series fg = quantity_series(traj, f2, sched, spec, Quantity::FGap);
        const BoundedReport b = bounded_scaled_quantity(fg, 1.5, {1.0, 1e5});
        const RateFit fit = fit_rate(fg, {1e2, 1e4});
        pass = pass && b.bounded && fit.slope <= -1.3;
        detail << key << ": t^1.5 fgap ratio " << num(b.ratio) << " (<=3), slope "
               << num(fit.slope) << " (<=-1.3); ";
    }
    return result("6a", "value rate O(1/t^r) at r=1.5", pass, detail.str());
}

CriterionResult crit_rates_distance(RunCache& cache) {
    const Objective f2 = make_f2();
    const Schedule sched = Schedule::power(1.0);
    const DynamicsSpec spec = DynamicsSpec::trish(3.0, 1.0);
    const Trajectory& traj = cache.get("trish_r1");
    const Series dx = quantity_series(traj, f2, sched, spec, Quantity::DistXepsSq);
    const BoundedReport b = bounded_scaled_quantity(dx, 0.5, {1.0, 1e5});
    const double final_dist = dist(traj.samples.back().x, {0.5, 0.5});
    const bool pass = b.bounded && final_dist <= 0.15;
    return result("6b", "viscosity-curve tracking and strong convergence at r=1", pass,
                  "t^0.5 dist^2 ratio " + num(b.ratio) + " (<=3), |x(1e5)-x*| " + num(final_dist) +
                      " (<=0.15)");
}

CriterionResult crit_rates_velocity(RunCache& cache) {
    const Objective f2 = make_f2();
    const Schedule sched = Schedule::power(1.5);
    std::ostringstream detail;
    bool pass = true;
    for (const char* key : {"trish_r1.5", "trishe_r1.5"}) {
        const DynamicsSpec spec = DynamicsSpec::parse(variant_of(key), 3.0, 1.0);
        const Series vg =
            quantity_series(cache.get(key), f2, sched, spec, Quantity::VelGradCombo);
        const BoundedReport b = bounded_scaled_quantity(vg, 0.875, {1.0, 1e5});
        pass = pass && b.bounded;
        detail << key << ": t^0.875 |xd+beta grad f| ratio " << num(b.ratio) << " (<=3); ";
    }
    return result("6c", "velocity-gradient combination rate at r=1.5", pass, detail.str());
}

// ------------------------------------------------------------ criterion 7

CriterionResult crit_integral_estimates(RunCache& cache) {
    const Objective f2 = make_f2();
    const Schedule sched = Schedule::power(1.5);
    const double r = 1.5;
    std::ostringstream detail;
    bool pass = true;
    for (const char* key : {"trish_r1.5", "trishe_r1.5"}) {
        const Trajectory& traj = cache.get(key);
        const DynamicsSpec spec = DynamicsSpec::parse(variant_of(key), 3.0, 1.0);
        const Series gn = quantity_series(traj, f2, sched, spec, Quantity::GradNorm);
        const IntegralTail tg = weighted_integral_tail(gn, (3.0 * r - 2.0) / 2.0, 1e4);
        const IntegralTail tv = weighted_integral_tail(velocity_norm_series(traj), r - 1.0, 1e4);
        pass = pass && tg.tail_fraction <= 0.2 && tv.tail_fraction <= 0.2;
        detail << key << ": grad tail " << num(tg.tail_fraction) << ", velocity tail "
               << num(tv.tail_fraction) << " (<=0.2); ";
    }
    return result("7", "gradient and velocity integral estimates converge", pass, detail.str());
}

// ------------------------------------------------------------ criterion 8

CriterionResult crit_lyapunov_monitors(RunCache& cache) {
    const Objective f2 = make_f2();
    const Schedule sched = Schedule::power(1.5);
    LyapunovParams params;  // ProofConstraints midpoint lambda, a=2, c=4
    std::ostringstream detail;
    bool pass = true;

    for (const char* key : {"trish_r1.5", "trishe_r1.5"}) {
        const DynamicsSpec spec = DynamicsSpec::parse(variant_of(key), 3.0, 1.0);
        const MonitorResult mon = monitor(cache.get(key), f2, sched, spec, params);
        const InequalityStat* lg = mon.report.find("lemma21_value_gap");
        const InequalityStat* ld = mon.report.find("lemma21_distance");
        const InequalityStat* e14 = mon.report.find("est14_differential");
        const bool lemma_ok = lg && ld && lg->violations == 0 && ld->violations == 0;
        const bool est_ok = e14 && e14->violation_fraction() < 0.01;
        pass = pass && lemma_ok && est_ok;
        detail << key << ": lemma2.1 violations " << (lg ? lg->violations : -1) << "/"
               << (ld ? ld->violations : -1) << ", est14 fraction "
               << num(e14 ? e14->violation_fraction() : 1.0) << " (<1%); ";

        if (spec.variant == Variant::Trishe) {
            Series es;
            for (const auto& rec : mon.records)
                if (rec.t >= mon.report.t1) {
                    es.t.push_back(rec.t);
                    es.q.push_back(rec.E_p);
                }
            const BoundedReport b =
                bounded_scaled_quantity(es, (1.5 + 2.0) / 2.0, {mon.report.t1, 1e5});
            pass = pass && b.bounded;
            detail << "t^1.75 E_1 ratio " << num(b.ratio) << " (<=3); ";
        }
    }
    return result("8", "lyapunov energy monitors", pass, detail.str());
}

// ------------------------------------------------------------ criterion 9

CriterionResult crit_feasibility(RunCache&) {
    LyapunovParams strict;
    strict.mode = FeasibilityMode::StrictDefinition;
    const FeasibilityReport rs = hp_feasible(1.0, 3.0, strict);

    LyapunovParams proof;
    const Schedule sched = Schedule::power(1.0);
    const FeasibilityReport rp = hp_feasible(1.0, 3.0, proof, &sched, 1.0);

    const bool strict_ok = rs.empty();
    const bool interval_ok =
        std::abs(rp.lambda_lo - 1.5) <= 1e-12 && std::abs(rp.lambda_hi - 2.0) <= 1e-12;
    const bool t1_ok = rp.t1 && *rp.t1 >= 9.0 - 1e-6;
    const bool pass = strict_ok && interval_ok && t1_ok;
    return result("9", "growth-condition feasibility honesty", pass,
                  std::string("strict interval ") + (strict_ok ? "empty" : "NONEMPTY") +
                      ", proof interval (" + num(rp.lambda_lo) + "," + num(rp.lambda_hi) +
                      ") (=(1.5,2)), t1 " + (rp.t1 ? num(*rp.t1) : "none") + " (>=9)");
}

// ------------------------------------------------------------ criterion 10

CriterionResult crit_oscillation(RunCache& cache) {
    const Objective f2 = make_f2();
    const Schedule sched = Schedule::power(1.5);
    const Series fg_trigs = quantity_series(cache.get("trigs_r1.5_1e3"), f2, sched,
                                            DynamicsSpec::trigs(3.0), Quantity::FGap);
    const Series fg_trish = quantity_series(cache.get("trish_r1.5"), f2, sched,
                                            DynamicsSpec::trish(3.0, 1.0), Quantity::FGap);
    const int n_trigs = oscillation_count(fg_trigs, {1.0, 1e3});
    const int n_trish = oscillation_count(fg_trish, {1.0, 1e3});
    return result("10", "hessian damping attenuates oscillations", n_trigs > n_trish,
                  "fgap slope sign changes on [1,1e3]: trigs " + std::to_string(n_trigs) +
                      " > trish " + std::to_string(n_trish));
}

// --------------------------------------------------------------- suite map

struct CriterionDef {
    std::function<CriterionResult(RunCache&)> run;
    std::vector<std::string> needs;
};

const std::vector<std::pair<std::string, CriterionDef>>& all_criteria() {
    static const std::vector<std::pair<std::string, CriterionDef>> defs = {
        {"1", {crit_oracle, {}}},
        {"2", {crit_tikhonov_path, {}}},
        {"3", {crit_envelope_identity, {}}},
        {"4", {crit_theorem6, {}}},
        {"5", {crit_heavy_ball, {}}},
        {"6a", {crit_rates_values, {"trish_r1.5", "trishe_r1.5"}}},
        {"6b", {crit_rates_distance, {"trish_r1"}}},
        {"6c", {crit_rates_velocity, {"trish_r1.5", "trishe_r1.5"}}},
        {"7", {crit_integral_estimates, {"trish_r1.5", "trishe_r1.5"}}},
        {"8", {crit_lyapunov_monitors, {"trish_r1.5", "trishe_r1.5"}}},
        {"9", {crit_feasibility, {}}},
        {"10", {crit_oscillation, {"trigs_r1.5_1e3", "trish_r1.5"}}},
    };
    return defs;
}

const std::map<std::string, std::vector<std::string>>& suites() {
    static const std::map<std::string, std::vector<std::string>> m = {
        {"oracles", {"1", "2", "3"}},
        {"theorem6", {"4"}},
        {"heavyball", {"5"}},
        {"rates", {"6a", "6b", "6c", "7"}},
        {"lyapunov", {"8", "9"}},
        {"oscillation", {"10"}},
        {"all", {"1", "2", "3", "4", "5", "6a", "6b", "6c", "7", "8", "9", "10"}},
    };
    return m;
}

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const auto& [name, ids] : suites()) names.push_back(name);
    return names;
}

std::vector<CriterionResult> run_suite(const std::string& suite, int threads) {
    const auto it = suites().find(suite);
    if (it == suites().end())
        fail(Errc::InvalidArgument, "unknown suite '" + suite + "'");

    RunCache cache;
    std::set<std::string> needed;
    for (const auto& id : it->second)
        for (const auto& [cid, def] : all_criteria())
            if (cid == id)
                for (const auto& key : def.needs) needed.insert(key);
    prefetch(cache, needed, threads);

    std::vector<CriterionResult> results;
    for (const auto& id : it->second)
        for (const auto& [cid, def] : all_criteria())
            if (cid == id) results.push_back(def.run(cache));
    return results;
}

}  // namespace trishlab
