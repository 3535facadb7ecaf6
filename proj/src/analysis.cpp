#include "trishlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace trishlab {

const char* quantity_name(Quantity q) {
    switch (q) {
        case Quantity::FGap: return "fgap";
        case Quantity::DistXepsSq: return "dist_xeps_sq";
        case Quantity::DistXstar: return "dist_xstar";
        case Quantity::VelGradCombo: return "vel_grad_combo";
        case Quantity::GradNorm: return "gradnorm";
    }
    return "?";
}

Quantity parse_quantity(const std::string& name) {
    for (Quantity q : {Quantity::FGap, Quantity::DistXepsSq, Quantity::DistXstar,
                       Quantity::VelGradCombo, Quantity::GradNorm})
        if (name == quantity_name(q)) return q;
    fail(Errc::InvalidArgument, "unknown quantity '" + name + "'");
}

Series quantity_series(const Trajectory& traj, const Objective& obj, const Schedule& sched,
                       const DynamicsSpec& spec, Quantity q) {
    Series out;
    out.t.reserve(traj.samples.size());
    out.q.reserve(traj.samples.size());

    if (q == Quantity::FGap && !obj.min_value)
        fail(Errc::InvalidArgument, "fgap needs an objective with a known minimum value");
    if (q == Quantity::DistXstar && !obj.min_norm_solution)
        fail(Errc::MissingMinNormSolution, "dist_xstar needs the minimum-norm solution");

    ViscosityTracker tracker(obj);
    for (const State& s : traj.samples) {
        double v = 0.0;
        switch (q) {
            case Quantity::FGap:
                v = eval(obj, s.x) - *obj.min_value;
                break;
            case Quantity::DistXepsSq: {
                const double d = dist(s.x, tracker.at(sched.eps(s.t)).x_eps);
                v = d * d;
                break;
            }
            case Quantity::DistXstar:
                v = dist(s.x, *obj.min_norm_solution);
                break;
            case Quantity::VelGradCombo: {
                Vec w = grad(obj, s.x);
                for (size_t i = 0; i < w.size(); ++i) w[i] = s.v[i] + spec.beta * w[i];
                v = norm2(w);
                break;
            }
            case Quantity::GradNorm:
                v = norm2(grad(obj, s.x));
                break;
        }
        out.t.push_back(s.t);
        out.q.push_back(v);
    }
    return out;
}

RateFit fit_rate(const Series& series, Window window) {
    if (!(window.t_lo < window.t_hi))
        fail(Errc::InvalidArgument, "fit_rate: window needs t_lo < t_hi");
    std::vector<double> lt, lq;
    long in_window = 0;
    for (size_t i = 0; i < series.t.size(); ++i) {
        if (series.t[i] < window.t_lo || series.t[i] > window.t_hi) continue;
        ++in_window;
        if (series.q[i] > 0.0) {
            lt.push_back(std::log(series.t[i]));
            lq.push_back(std::log(series.q[i]));
        }
    }
    if (in_window < 20)
        fail(Errc::InsufficientSamples,
             "fit_rate: only " + std::to_string(in_window) + " samples in window (need 20)");
    if (static_cast<long>(lt.size()) < 20)
        fail(Errc::NonPositiveQuantity, "fit_rate: fewer than 20 positive samples in window");

    const size_t n = lt.size();
    double st = 0.0, sq = 0.0;
    for (size_t i = 0; i < n; ++i) {
        st += lt[i];
        sq += lq[i];
    }
    const double mt = st / n, mq = sq / n;
    double stt = 0.0, stq = 0.0, sqq = 0.0;
    for (size_t i = 0; i < n; ++i) {
        stt += (lt[i] - mt) * (lt[i] - mt);
        stq += (lt[i] - mt) * (lq[i] - mq);
        sqq += (lq[i] - mq) * (lq[i] - mq);
    }
    RateFit fit;
    fit.window = window;
    fit.n_used = static_cast<long>(n);
    fit.slope = stq / stt;
    fit.intercept = mq - fit.slope * mt;
    fit.r2 = sqq > 0.0 ? (stq * stq) / (stt * sqq) : 1.0;
    return fit;
}

Series log_bin_envelope(const Series& series, double bins_per_decade) {
    if (!(bins_per_decade > 0.0))
        fail(Errc::InvalidArgument, "log_bin_envelope: bins_per_decade must be positive");
    Series out;
    if (series.t.empty()) return out;
    long bin = std::numeric_limits<long>::min();
    for (size_t i = 0; i < series.t.size(); ++i) {
        if (!(series.t[i] > 0.0)) continue;
        const long b = static_cast<long>(std::floor(std::log10(series.t[i]) * bins_per_decade));
        if (b != bin) {
            out.t.push_back(series.t[i]);
            out.q.push_back(series.q[i]);
            bin = b;
        } else if (series.q[i] > out.q.back()) {
            out.q.back() = series.q[i];
            out.t.back() = series.t[i];
        }
    }
    return out;
}

BoundedReport bounded_scaled_quantity(const Series& series, double exponent, Window window) {
    if (!(window.t_lo > 0.0) || !(window.t_hi >= 100.0 * window.t_lo))
        fail(Errc::InvalidArgument, "bounded_scaled_quantity: window must span >= 2 decades");
    double first = 0.0, last = 0.0;
    long n_first = 0, n_last = 0;
    for (size_t i = 0; i < series.t.size(); ++i) {
        const double t = series.t[i];
        if (t < window.t_lo || t > window.t_hi) continue;
        const double s = std::pow(t, exponent) * series.q[i];
        if (t <= 10.0 * window.t_lo) {
            first = std::max(first, s);
            ++n_first;
        }
        if (t >= 0.1 * window.t_hi) {
            last = std::max(last, s);
            ++n_last;
        }
    }
    if (n_first < 2 || n_last < 2)
        fail(Errc::InsufficientSamples, "bounded_scaled_quantity: too few samples per decade");
    BoundedReport rep;
    rep.max_first_decade = first;
    rep.max_last_decade = last;
    rep.ratio = first > 0.0 ? last / first : (last > 0.0 ? std::numeric_limits<double>::infinity()
                                                         : 0.0);
    rep.bounded = rep.ratio <= 3.0;
    return rep;
}

IntegralTail weighted_integral_tail(const Series& series, double weight_exponent, double split) {
    if (series.t.size() < 2)
        fail(Errc::InsufficientSamples, "weighted_integral_tail: need at least two samples");
    auto integrand = [&](size_t i) {
        return std::pow(series.t[i], weight_exponent) * series.q[i] * series.q[i];
    };
    double total = 0.0, tail = 0.0;
    for (size_t i = 1; i < series.t.size(); ++i) {
        const double piece = 0.5 * (series.t[i] - series.t[i - 1]) * (integrand(i) + integrand(i - 1));
        total += piece;
        if (series.t[i - 1] >= split)
            tail += piece;
        else if (series.t[i] > split)  // straddling segment, linear share
            tail += piece * (series.t[i] - split) / (series.t[i] - series.t[i - 1]);
    }
    IntegralTail out;
    out.total = total;
    out.tail_fraction = total > 0.0 ? tail / total : 0.0;
    return out;
}

int oscillation_count(const Series& series, Window window) {
    double qmax = 0.0;
    std::vector<double> diffs;
    for (size_t i = 1; i < series.t.size(); ++i) {
        if (series.t[i - 1] < window.t_lo || series.t[i] > window.t_hi) continue;
        diffs.push_back(series.q[i] - series.q[i - 1]);
        qmax = std::max(qmax, std::abs(series.q[i]));
    }
    const double floor = 1e-14 * qmax;
    int count = 0;
    double prev = 0.0;
    for (double d : diffs) {
        if (std::abs(d) <= floor) continue;
        if (prev != 0.0 && d * prev < 0.0) ++count;
        prev = d;
    }
    return count;
}

}  // namespace trishlab
