#ifndef TRISHLAB_SCHEDULE_HPP
#define TRISHLAB_SCHEDULE_HPP

#include <functional>
#include <string>

#include "trishlab/common.hpp"

namespace trishlab {

/// Tikhonov regularization schedule eps(t), nonincreasing with eps(t) -> 0.
/// Queries below t_min raise ScheduleUnderflow. Custom schedules must supply
/// eps and its derivative analytically; nothing here differentiates numerically.
class Schedule {
public:
    enum class Kind { Power, Custom };

    /// eps(t) = t^-r with 0 < r <= 2 (r < 2 is what the rate theorems need).
    static Schedule power(double r, double t_min = 1e-6);

    static Schedule custom(std::function<double(double)> eps,
                           std::function<double(double)> eps_dot, double t_min,
                           std::string label = "custom");

    /// Frozen schedule eps(t) = eps0, eps_dot = 0.
    static Schedule constant(double eps0, double t_min = 1e-6);

    double eps(double t) const;
    double eps_dot(double t) const;

    Kind kind() const { return kind_; }
    double power_r() const;
    double t_min() const { return t_min_; }
    const std::string& label() const { return label_; }

private:
    Schedule() = default;

    Kind kind_ = Kind::Custom;
    double r_ = 0.0;
    double t_min_ = 0.0;
    std::string label_;
    std::function<double(double)> eps_fn_;
    std::function<double(double)> eps_dot_fn_;
};

}  // namespace trishlab

#endif
