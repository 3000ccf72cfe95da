#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "hermitia/field.hpp"

namespace hermitia {

using Real = boost::multiprecision::mpfr_float;

// sets the working precision of Real for the current thread, restores it on exit
class PrecisionScope {
public:
    explicit PrecisionScope(int bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

Real real_pi();
std::string real_str(const Real& x, int digits);

// #{beta in O_d / n O_d : N(beta) + delta = 0 mod n}, all n^2 residues
long r_count(long delta, long n, const FieldSpec& f);
// same count via multiplicativity and a square-count table per prime power
long r_count_fast(long delta, long n, const FieldSpec& f);

enum class LocalCase { Unramified, OddRamified, Dyadic2Mod8, Dyadic6Mod8, Dyadic3Or7Mod8 };
std::string local_case_name(LocalCase c);

struct LocalFactor {
    long p;
    Rational value;
    LocalCase case_tag;
    std::vector<BigInt> poly;  // R_p(-delta, X) as a polynomial in X
};

// R_p(-delta, X) at X = p^(-1-s)
LocalFactor local_factor(long p, long delta, int s, const FieldSpec& f);
// R_p evaluated with the table's own argument (already negated by the caller)
std::vector<BigInt> local_factor_poly(long p, long table_delta, const FieldSpec& f, LocalCase* which = nullptr);
Rational theta(long delta, int s, const FieldSpec& f);
std::vector<long> prime_divisors(long n);

double zseries_partial(long delta, int s, long n_max, const FieldSpec& f);

Rational bernoulli(int n);  // B_1 = -1/2
Rational generalized_bernoulli(int n, const FieldSpec& f);
// L(chi_{d_K}, s) for s <= 0
Rational l_negative_exact(const FieldSpec& f, int s);

Real hurwitz_zeta(int s, const Rational& a, int bits);
// L(chi_{d_K}, s) = |d_K|^-s sum chi(a) zeta(s, a/|d_K|), s >= 2
Real l_positive_numeric(const FieldSpec& f, int s, int bits);
// L(chi, 1-s) from L(chi, s)
Real functional_equation(const FieldSpec& f, int s, const Real& l_s, int bits);

// value = coefficient * sqrt(radicand) * pi^pi_power
struct LValue {
    int d = 0;
    int s = 0;
    long delta = 0;
    std::optional<Rational> exact;  // negative s
    Rational coefficient;
    long sqrt_radicand = 1;
    int pi_power = 0;
    std::string numeric;
    int precision_bits = 128;

    std::string display() const;
    bool operator==(const LValue& o) const;
};

bool cohen_zagier_in_scope(int d, int s);
LValue cohen_zagier(const FieldSpec& f, int s, std::optional<long> delta = std::nullopt, int bits = 128);
Real lvalue_numeric(const LValue& v, int bits);

// average of H_{k,delta} over a fundamental parallelogram predicted from theta, zeta and L
double average_formula(int k, long delta, const FieldSpec& f);

struct BenchRow {
    std::string method;
    int d;
    int s;
    long delta;
    double micros;
    std::string value;
};

std::vector<BenchRow> bench(const FieldSpec& f, int s, const std::vector<long>& deltas, int bits, int repeats = 20);

}  // namespace hermitia
