#include "trishlab/schedule.hpp"

#include <cmath>

namespace trishlab {

namespace {
void check_time(double t, double t_min, const std::string& label) {
    if (!(t >= t_min))
        fail(Errc::ScheduleUnderflow, "schedule '" + label + "': t=" + std::to_string(t) +
                                          " below t_min=" + std::to_string(t_min));
}
}  // namespace

Schedule Schedule::power(double r, double t_min) {
    if (!(r > 0.0) || r > 2.0)
        fail(Errc::InvalidArgument, "power schedule needs 0 < r <= 2, got r=" + std::to_string(r));
    if (!(t_min > 0.0)) fail(Errc::InvalidArgument, "power schedule needs t_min > 0");
    Schedule s;
    s.kind_ = Kind::Power;
    s.r_ = r;
    s.t_min_ = t_min;
    s.label_ = "power(r=" + std::to_string(r) + ")";
    return s;
}

Schedule Schedule::custom(std::function<double(double)> eps, std::function<double(double)> eps_dot,
                          double t_min, std::string label) {
    if (!eps || !eps_dot)
        fail(Errc::InvalidArgument, "custom schedule needs both eps and eps_dot");
    if (!(t_min > 0.0)) fail(Errc::InvalidArgument, "custom schedule needs t_min > 0");
    Schedule s;
    s.kind_ = Kind::Custom;
    s.t_min_ = t_min;
    s.label_ = std::move(label);
    s.eps_fn_ = std::move(eps);
    s.eps_dot_fn_ = std::move(eps_dot);
    return s;
}

Schedule Schedule::constant(double eps0, double t_min) {
    if (eps0 < 0.0) fail(Errc::InvalidArgument, "constant schedule needs eps0 >= 0");
    return custom([eps0](double) { return eps0; }, [](double) { return 0.0; }, t_min,
                  "constant(eps=" + std::to_string(eps0) + ")");
}

double Schedule::eps(double t) const {
    check_time(t, t_min_, label_);
    if (kind_ == Kind::Power) return std::pow(t, -r_);
    return eps_fn_(t);
}

double Schedule::eps_dot(double t) const {
    check_time(t, t_min_, label_);
    if (kind_ == Kind::Power) return -r_ * std::pow(t, -r_ - 1.0);
    return eps_dot_fn_(t);
}

double Schedule::power_r() const {
    if (kind_ != Kind::Power)
        fail(Errc::WrongScheduleKind, "schedule '" + label_ + "' is not a power schedule");
    return r_;
}

}  // namespace trishlab
