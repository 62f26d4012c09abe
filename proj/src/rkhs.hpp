#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "geometry.hpp"

namespace stratsamp {

// K(x,y) = prod_k (1 - max(x_k, y_k)): the kernel of the Sobolev space of
// functions with square-integrable mixed first derivative.
double kernel(const Point& x, const Point& y);

// int K(z, x) dx = prod_k (1 - z_k^2)/2.
double mean_embedding(const Point& z);

// h(z) = mean_embedding(z) - (1/N) sum_n K(z, x_n).
double representer(const PointSet& points, const Point& z);

// Builds the normalized representer f* = h/||h|| and evaluates both the exact
// integral and the sample mean of f*. The gap |I - Ihat| equals the L2 star
// discrepancy; both are returned.
struct WorstCaseError {
    double wce = 0.0;
    double l2 = 0.0;
};
WorstCaseError worst_case_error_identity(const PointSet& points);

struct Integrand {
    std::string id;
    std::function<double(const Point&)> eval;
    double exact_integral = 0.0;
    // || . ||*_{d,q} of the mixed derivative; q in {1, 2, inf} provided
    std::function<double(double)> norm_dq;
    double norm_h1k = 0.0;            // equals norm_dq(2)
    double variance_constant = 0.0;   // C = int (f - I)^2
    bool boundary_ok = true;          // f = 0 on every upper face
};

// f1 = prod (1-x), f2 = prod (1-x^2), f3 = prod sin(pi x), with exact
// integrals, norms and variance constants.
std::vector<Integrand> integrand_suite(int d);
const Integrand& integrand_by_id(const std::vector<Integrand>& suite, const std::string& id);

// |(1/N) sum f(x_n) - I(f)|
double approx_error(const Integrand& f, const PointSet& points);

}  // namespace stratsamp
