#ifndef TRISHLAB_ANALYSIS_HPP
#define TRISHLAB_ANALYSIS_HPP

#include <string>
#include <vector>

#include "trishlab/lyapunov.hpp"

namespace trishlab {

enum class Quantity { FGap, DistXepsSq, DistXstar, VelGradCombo, GradNorm };

const char* quantity_name(Quantity q);
Quantity parse_quantity(const std::string& name);

/// A sampled time series (t strictly increasing).
struct Series {
    std::vector<double> t;
    std::vector<double> q;
};

/// Extracts a quantity along a trajectory. FGap needs the objective minimum
/// value, DistXstar the minimum-norm solution; DistXepsSq performs one
/// warm-started viscosity solve per sample. VelGradCombo is ||v + beta grad f||.
Series quantity_series(const Trajectory& traj, const Objective& obj, const Schedule& sched,
                       const DynamicsSpec& spec, Quantity q);

struct Window {
    double t_lo;
    double t_hi;
};

struct RateFit {
    Window window{0.0, 0.0};
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    long n_used = 0;
};

/// Least-squares slope of log(q) against log(t) over the window, using only
/// samples with q > 0. Needs at least 20 usable samples.
RateFit fit_rate(const Series& series, Window window);

/// Replaces the series by per-log-bin maxima; stabilizes fits of oscillatory
/// quantities before fit_rate.
Series log_bin_envelope(const Series& series, double bins_per_decade);

struct BoundedReport {
    double max_first_decade = 0.0;
    double max_last_decade = 0.0;
    double ratio = 0.0;
    bool bounded = false;  // ratio <= 3
};

/// Checks sup of t^exponent * q(t) over the window's first decade against its
/// last decade. The window must span at least two decades.
BoundedReport bounded_scaled_quantity(const Series& series, double exponent, Window window);

struct IntegralTail {
    double total = 0.0;
    double tail_fraction = 0.0;
};

/// Trapezoid integral of t^weight_exponent * q(t)^2 over the sampled range
/// and the fraction contributed at and beyond the split time.
IntegralTail weighted_integral_tail(const Series& series, double weight_exponent, double split);

/// Sign changes of successive differences of q over the window, ignoring
/// differences below 1e-14 * max|q| (floating-point ripple guard).
int oscillation_count(const Series& series, Window window);

}  // namespace trishlab

#endif
