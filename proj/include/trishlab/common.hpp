#ifndef TRISHLAB_COMMON_HPP
#define TRISHLAB_COMMON_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace trishlab {

using Vec = std::vector<double>;

enum class Errc {
    InvalidArgument,
    DomainViolation,
    NonConvergence,
    ScheduleUnderflow,
    BetaZero,
    WrongScheduleKind,
    InfeasibleDelta,
    MissingMinNormSolution,
    InsufficientSamples,
    NonPositiveQuantity,
    Io,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

// ---- small dense-vector helpers (dims here are tiny, no BLAS needed) ----

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Vec operator+(Vec a, const Vec& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

inline Vec operator-(Vec a, const Vec& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

inline Vec operator*(double s, Vec a) {
    for (double& x : a) x *= s;
    return a;
}

// a += s*b
inline void axpy(double s, const Vec& b, Vec& a) {
    for (size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
}

inline bool all_finite(const Vec& a) {
    for (double x : a)
        if (!std::isfinite(x)) return false;
    return true;
}

inline double dist(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace trishlab

#endif
