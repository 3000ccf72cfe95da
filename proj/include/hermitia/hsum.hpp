#pragma once

#include <optional>
#include <string>

#include "hermitia/forms.hpp"

namespace hermitia {

enum class EvalMethod { ExactEnumeration, Truncated, CfAccelerated };
std::string method_name(EvalMethod m);

struct HEvalReport {
    EvalMethod method = EvalMethod::ExactEnumeration;
    std::optional<Rational> exact;  // set for exact enumeration
    double value = 0;
    long terms_used = 0;
    // absent means "exact"; for cf-accelerated this is an empirical estimate, not a bound
    std::optional<double> truncation_bound;
};

// sum of h(z,1)^k over forms with a < 0 < h(z,1), N(b) - ac = delta
Rational eval_exact(int k, const BigInt& delta, const QuadElem& z);
HEvalReport eval_exact_report(int k, const BigInt& delta, const QuadElem& z);

// partial sum over 1 <= |a| <= a_max, any odd k, no tail control
double partial_sum(int k, long delta, Complex z, long a_max, const FieldSpec& f, long* terms = nullptr);
// C * sum_{a > a_max} (delta/a)^k with C the lattice-point bound for a disk of radius sqrt(delta)
double tail_bound(int k, long delta, long a_max, const FieldSpec& f);
HEvalReport eval_truncated(int k, long delta, Complex z, long a_max, const FieldSpec& f);

// |z|^{2k} H(1/z) - H(z) == P_{k,delta}(z, zb)
bool reduction_identity_check(int k, const BigInt& delta, const QuadElem& z);

// midpoint mean of the truncated sum over the parallelogram spanned by 1 and the reduced omega
double average_quadrature(int k, long delta, const FieldSpec& f, int grid_n, long a_max, int threads = 0);

}  // namespace hermitia
