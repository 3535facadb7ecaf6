#ifndef TRISHLAB_OBJECTIVE_HPP
#define TRISHLAB_OBJECTIVE_HPP

#include <functional>
#include <optional>
#include <string>

#include "trishlab/common.hpp"

namespace trishlab {

/// A C^2-smooth convex objective with exact first and second derivatives.
/// Immutable after construction; all evaluations are pure and thread-safe.
struct Objective {
    int dim = 0;
    std::string name;
    std::function<double(const Vec&)> value;
    std::function<Vec(const Vec&)> gradient;
    /// Analytic Hessian-vector product. May be empty, in which case hess_vec()
    /// falls back to a central finite difference of the gradient.
    std::function<Vec(const Vec&, const Vec&)> hess_vec_analytic;
    /// Open-domain membership test. Empty means the whole space.
    std::function<bool(const Vec&)> domain_predicate;
    std::optional<double> min_value;
    std::optional<Vec> min_norm_solution;
    std::optional<double> strong_convexity_modulus;

    bool contains(const Vec& x) const { return !domain_predicate || domain_predicate(x); }
};

double eval(const Objective& obj, const Vec& x);
Vec grad(const Objective& obj, const Vec& x);
Vec hess_vec(const Objective& obj, const Vec& x, const Vec& v);

/// f1(x) = x1 + x2^2 - 2 ln((x1+1)(x2+1)) on the open box (-1,inf)^2.
/// Strictly convex; unique minimizer (1, (sqrt(5)-1)/2).
Objective make_f1();

/// f2(x) = 0.5 (x1+x2-1)^2. Minimizers form the line x1+x2=1; the minimum
/// norm solution is (1/2, 1/2).
Objective make_f2();

/// f(x) = 0.5 <Ax,x> - <b,x> with A symmetric PSD (row-major, dim x dim).
/// The minimum-norm solution is the pseudo-inverse solve of Ax=b (dim <= 32).
Objective make_quadratic(int dim, const std::vector<double>& a_rowmajor, const Vec& b);

/// Same as make_quadratic but requires A positive definite and records the
/// strong convexity modulus lambda_min(A).
Objective make_strongly_convex_quadratic(int dim, const std::vector<double>& a_rowmajor,
                                         const Vec& b);

/// Resolve "f1" or "f2" by id. Quadratics need data and are built through
/// make_quadratic; "quadratic" here yields InvalidArgument with a hint.
Objective make_builtin(const std::string& id);

}  // namespace trishlab

#endif
