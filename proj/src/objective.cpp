#include "trishlab/objective.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>

namespace trishlab {

namespace {

void check_dim(const Objective& obj, const Vec& x) {
    if (static_cast<int>(x.size()) != obj.dim)
        fail(Errc::InvalidArgument, obj.name + ": point has dimension " +
                                        std::to_string(x.size()) + ", expected " +
                                        std::to_string(obj.dim));
}

void check_domain(const Objective& obj, const Vec& x) {
    check_dim(obj, x);
    if (!obj.contains(x))
        fail(Errc::DomainViolation, obj.name + ": point outside the objective domain");
}

}  // namespace

double eval(const Objective& obj, const Vec& x) {
    check_domain(obj, x);
    return obj.value(x);
}

Vec grad(const Objective& obj, const Vec& x) {
    check_domain(obj, x);
    return obj.gradient(x);
}

Vec hess_vec(const Objective& obj, const Vec& x, const Vec& v) {
    check_domain(obj, x);
    if (obj.hess_vec_analytic) return obj.hess_vec_analytic(x, v);
    // Central difference of the gradient along v, step scaled so that the
    // probe points stay representable for both tiny and large ||v||.
    const double h = std::sqrt(std::numeric_limits<double>::epsilon()) * (1.0 + norm2(x)) /
                     std::max(norm2(v), 1e-30);
    Vec xp = x, xm = x;
    axpy(h, v, xp);
    axpy(-h, v, xm);
    if (!obj.contains(xp) || !obj.contains(xm))
        fail(Errc::DomainViolation, obj.name + ": finite-difference probe left the domain");
    Vec gp = obj.gradient(xp);
    const Vec gm = obj.gradient(xm);
    for (size_t i = 0; i < gp.size(); ++i) gp[i] = (gp[i] - gm[i]) / (2.0 * h);
    return gp;
}

Objective make_f1() {
    Objective obj;
    obj.dim = 2;
    obj.name = "f1";
    obj.value = [](const Vec& x) {
        return x[0] + x[1] * x[1] - 2.0 * (std::log(x[0] + 1.0) + std::log(x[1] + 1.0));
    };
    obj.gradient = [](const Vec& x) {
        return Vec{1.0 - 2.0 / (x[0] + 1.0), 2.0 * x[1] - 2.0 / (x[1] + 1.0)};
    };
    obj.hess_vec_analytic = [](const Vec& x, const Vec& v) {
        const double h00 = 2.0 / ((x[0] + 1.0) * (x[0] + 1.0));
        const double h11 = 2.0 + 2.0 / ((x[1] + 1.0) * (x[1] + 1.0));
        return Vec{h00 * v[0], h11 * v[1]};
    };
    obj.domain_predicate = [](const Vec& x) { return x[0] > -1.0 && x[1] > -1.0; };
    const double x2 = (std::sqrt(5.0) - 1.0) / 2.0;
    obj.min_norm_solution = Vec{1.0, x2};
    obj.min_value = 1.0 + x2 * x2 - 2.0 * (std::log(2.0) + std::log(x2 + 1.0));
    return obj;
}

Objective make_f2() {
    Objective obj;
    obj.dim = 2;
    obj.name = "f2";
    obj.value = [](const Vec& x) {
        const double s = x[0] + x[1] - 1.0;
        return 0.5 * s * s;
    };
    obj.gradient = [](const Vec& x) {
        const double s = x[0] + x[1] - 1.0;
        return Vec{s, s};
    };
    obj.hess_vec_analytic = [](const Vec&, const Vec& v) {
        const double s = v[0] + v[1];
        return Vec{s, s};
    };
    obj.min_value = 0.0;
    obj.min_norm_solution = Vec{0.5, 0.5};
    return obj;
}

namespace {

Objective make_quadratic_impl(int dim, const std::vector<double>& a, const Vec& b,
                              bool require_pd) {
    if (dim <= 0) fail(Errc::InvalidArgument, "quadratic: dim must be positive");
    if (static_cast<int>(a.size()) != dim * dim || static_cast<int>(b.size()) != dim)
        fail(Errc::InvalidArgument, "quadratic: A must be dim*dim row-major, b length dim");

    Eigen::MatrixXd A(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) A(i, j) = a[i * dim + j];
    const double asym = (A - A.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * (1.0 + A.cwiseAbs().maxCoeff()))
        fail(Errc::InvalidArgument, "quadratic: A must be symmetric");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    const Eigen::VectorXd evals = es.eigenvalues();
    const double lam_max = std::max(evals.maxCoeff(), 0.0);
    const double psd_tol = 1e-12 * (1.0 + lam_max);
    if (evals.minCoeff() < -psd_tol)
        fail(Errc::InvalidArgument, "quadratic: A must be positive semidefinite");
    if (require_pd && evals.minCoeff() <= psd_tol)
        fail(Errc::InvalidArgument, "strongly convex quadratic: A must be positive definite");

    Objective obj;
    obj.dim = dim;
    obj.name = require_pd ? "sc_quadratic" : "quadratic";
    obj.value = [A = A, bv = b](const Vec& x) {
        double q = 0.0, l = 0.0;
        for (int i = 0; i < A.rows(); ++i) {
            double ax = 0.0;
            for (int j = 0; j < A.cols(); ++j) ax += A(i, j) * x[j];
            q += x[i] * ax;
            l += bv[i] * x[i];
        }
        return 0.5 * q - l;
    };
    obj.gradient = [A = A, bv = b](const Vec& x) {
        Vec g(x.size());
        for (int i = 0; i < A.rows(); ++i) {
            double ax = 0.0;
            for (int j = 0; j < A.cols(); ++j) ax += A(i, j) * x[j];
            g[i] = ax - bv[i];
        }
        return g;
    };
    obj.hess_vec_analytic = [A = A](const Vec&, const Vec& v) {
        Vec hv(v.size());
        for (int i = 0; i < A.rows(); ++i) {
            double av = 0.0;
            for (int j = 0; j < A.cols(); ++j) av += A(i, j) * v[j];
            hv[i] = av;
        }
        return hv;
    };

    // Minimum-norm solution through a dense pseudo-inverse, small dims only.
    if (dim <= 32) {
        Eigen::VectorXd bb(dim);
        for (int i = 0; i < dim; ++i) bb(i) = b[i];
        const double cutoff = 1e-12 * std::max(lam_max, 1.0);
        Eigen::VectorXd xs = Eigen::VectorXd::Zero(dim);
        for (int k = 0; k < dim; ++k) {
            if (evals(k) > cutoff) {
                const Eigen::VectorXd u = es.eigenvectors().col(k);
                xs += (u.dot(bb) / evals(k)) * u;
            }
        }
        // Only a consistent system Ax=b has argmin f nonempty.
        if ((A * xs - bb).norm() <= 1e-10 * (1.0 + bb.norm())) {
            Vec xstar(dim);
            for (int i = 0; i < dim; ++i) xstar[i] = xs(i);
            obj.min_norm_solution = xstar;
            obj.min_value = obj.value(xstar);
        }
    }
    if (require_pd) obj.strong_convexity_modulus = evals.minCoeff();
    return obj;
}

}  // namespace

Objective make_quadratic(int dim, const std::vector<double>& a_rowmajor, const Vec& b) {
    return make_quadratic_impl(dim, a_rowmajor, b, false);
}

Objective make_strongly_convex_quadratic(int dim, const std::vector<double>& a_rowmajor,
                                         const Vec& b) {
    return make_quadratic_impl(dim, a_rowmajor, b, true);
}

Objective make_builtin(const std::string& id) {
    if (id == "f1") return make_f1();
    if (id == "f2") return make_f2();
    if (id == "quadratic")
        fail(Errc::InvalidArgument, "builtin 'quadratic' needs matrix data; use make_quadratic");
    fail(Errc::InvalidArgument, "unknown builtin objective '" + id + "' (expected f1|f2|quadratic)");
}

}  // namespace trishlab
