#include "rkhs.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "discrepancy.hpp"

namespace stratsamp {

double kernel(const Point& x, const Point& y) {
    if (x.size() != y.size()) throw std::invalid_argument("kernel: dimension mismatch");
    double prod = 1.0;
    for (std::size_t k = 0; k < x.size(); ++k) prod *= 1.0 - std::max(x[k], y[k]);
    return prod;
}

double mean_embedding(const Point& z) {
    double prod = 1.0;
    for (double zk : z) prod *= (1.0 - zk * zk) * 0.5;
    return prod;
}

double representer(const PointSet& points, const Point& z) {
    if (static_cast<int>(z.size()) != points.dim())
        throw std::invalid_argument("representer: dimension mismatch");
    double mean = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) mean += kernel(z, points.point(i));
    mean /= static_cast<double>(points.size());
    return mean_embedding(z) - mean;
}

WorstCaseError worst_case_error_identity(const PointSet& points) {
    const int d = points.dim();
    const std::size_t n = points.size();
    double l2 = l2_exact(points).value;
    if (l2 <= 0.0) throw std::runtime_error("worst_case_error_identity: degenerate ||h|| = 0");

    // I(h) = 3^-d - (1/N) sum mean_embedding(x_n)
    double me = 0.0;
    for (std::size_t i = 0; i < n; ++i) me += mean_embedding(points.point(i));
    me /= static_cast<double>(n);
    double integral_h = std::pow(3.0, -d) - me;

    // Ihat(h) = (1/N) sum h(x_m)
    double hat_h = 0.0;
    for (std::size_t i = 0; i < n; ++i) hat_h += representer(points, points.point(i));
    hat_h /= static_cast<double>(n);

    WorstCaseError r;
    r.l2 = l2;
    r.wce = std::abs(integral_h - hat_h) / l2;
    return r;
}

namespace {

double pow_int(double x, int d) {
    double v = 1.0;
    for (int i = 0; i < d; ++i) v *= x;
    return v;
}

}  // namespace

std::vector<Integrand> integrand_suite(int d) {
    if (d < 1) throw std::invalid_argument("integrand_suite: dimension must be >= 1");
    const double pi = 3.14159265358979323846;
    std::vector<Integrand> suite;

    {
        Integrand f;
        f.id = "f1";
        f.eval = [d](const Point& x) {
            double v = 1.0;
            for (double xk : x) v *= 1.0 - xk;
            return v;
        };
        f.exact_integral = pow_int(0.5, d);
        f.norm_dq = [](double) { return 1.0; };  // |mixed derivative| == 1
        f.norm_h1k = 1.0;
        f.variance_constant = pow_int(1.0 / 3.0, d) - pow_int(0.25, d);
        suite.push_back(std::move(f));
    }
    {
        Integrand f;
        f.id = "f2";
        f.eval = [d](const Point& x) {
            double v = 1.0;
            for (double xk : x) v *= 1.0 - xk * xk;
            return v;
        };
        f.exact_integral = pow_int(2.0 / 3.0, d);
        f.norm_dq = [d](double q) {
            if (std::isinf(q)) return pow_int(2.0, d);
            // (int (2x)^q dx)^{d/q}
            return std::pow(std::pow(2.0, q) / (q + 1.0), d / q);
        };
        f.norm_h1k = pow_int(2.0 / std::sqrt(3.0), d);
        f.variance_constant = pow_int(8.0 / 15.0, d) - pow_int(4.0 / 9.0, d);
        suite.push_back(std::move(f));
    }
    {
        Integrand f;
        f.id = "f3";
        f.eval = [d, pi](const Point& x) {
            double v = 1.0;
            for (double xk : x) v *= std::sin(pi * xk);
            return v;
        };
        f.exact_integral = pow_int(2.0 / pi, d);
        f.norm_dq = [d, pi](double q) {
            if (std::isinf(q)) return pow_int(pi, d);
            if (q == 1.0) return pow_int(2.0, d);          // pi * int |cos| = 2
            if (q == 2.0) return pow_int(pi / std::sqrt(2.0), d);
            throw std::invalid_argument("f3: norm available for q in {1, 2, inf}");
        };
        f.norm_h1k = pow_int(pi / std::sqrt(2.0), d);
        f.variance_constant = pow_int(0.5, d) - pow_int(4.0 / (pi * pi), d);
        suite.push_back(std::move(f));
    }
    return suite;
}

const Integrand& integrand_by_id(const std::vector<Integrand>& suite, const std::string& id) {
    for (const auto& f : suite)
        if (f.id == id) return f;
    throw std::invalid_argument("unknown integrand: " + id);
}

double approx_error(const Integrand& f, const PointSet& points) {
    double mean = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) mean += f.eval(points.point(i));
    mean /= static_cast<double>(points.size());
    return std::abs(mean - f.exact_integral);
}

}  // namespace stratsamp
