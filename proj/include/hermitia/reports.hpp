#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hermitia/cfrac.hpp"
#include "hermitia/hsum.hpp"
#include "hermitia/lfun.hpp"
#include "hermitia/polyspace.hpp"

namespace hermitia {

using Json = nlohmann::json;

struct AlphaReport {
    int d = 0, k = 0;
    BigInt delta, alpha;
    bool operator==(const AlphaReport&) const = default;
};

struct ThetaReport {
    int d = 0, s = 0;
    long delta = 0;
    Rational theta;
    std::vector<LocalFactor> factors;
    bool operator==(const ThetaReport& o) const;
};

struct RCountReport {
    int d = 0;
    long delta = 0, n = 0, r = 0;
    bool operator==(const RCountReport&) const = default;
};

struct HconstPoint {
    QuadElem z;
    Rational value;
    bool operator==(const HconstPoint&) const = default;
};

struct HconstReport {
    int d = 0, k = 0;
    long delta = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    bool in_scope = false;  // covered by the constancy theorem
    BigInt alpha;
    int equal = 0;                      // points where H equals alpha
    std::vector<HconstPoint> distinct;  // one point per distinct value
    bool pass() const { return equal == trials; }
    bool operator==(const HconstReport&) const = default;
};

struct AverageReport {
    int d = 0, k = 0;
    long delta = 0;
    int grid = 0;
    long a_max = 0;
    double quadrature = 0, formula = 0;
    double rel_error() const { return std::abs(quadrature - formula) / std::abs(formula); }
    bool operator==(const AverageReport&) const = default;
};

struct CFReport {
    int d = 0;
    std::string z;
    bool exact = true;
    std::vector<QuadInt> alphas, p, q;
    std::vector<double> abs_deltas;  // |delta_1| ..
    bool terminated = false;
    bool operator==(const CFReport&) const = default;
};

struct SelftestItem {
    std::string name;
    bool pass = false;
    std::string detail;
    bool operator==(const SelftestItem&) const = default;
};

struct SelftestReport {
    std::vector<SelftestItem> items;
    bool pass() const;
    bool operator==(const SelftestReport&) const = default;
};

struct ExpandPReport {
    int d = 0, k = 0;
    BigInt delta;
    BiPoly poly;
    Membership membership;
    TransferIdentities identities;
};

AlphaReport run_alpha(int d, int k, const BigInt& delta);
ThetaReport run_theta(int d, long delta, int s);
RCountReport run_rcount(int d, long delta, long n);
// z = p/q + (r/s) sqrt(-d), q, s <= 12, drawn from the seed
HconstReport run_hconst(int d, int k, long delta, int trials, std::uint64_t seed);
AverageReport run_average(int d, int k, long delta, int grid, long a_max);
// exact expansion of re + im sqrt(-d); float=true runs the MPFR path on the nearest doubles
CFReport run_cfrac(int d, const std::string& re, const std::string& im, int steps, bool float_path, int bits);
ExpandPReport run_expandp(int d, int k, const BigInt& delta);
SelftestReport run_selftest();
bool hconst_in_scope(int d, int k);

// JSON: exact rationals as "p/q" strings, big integers as decimal strings
Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);
Json to_json(const QuadInt& a);
QuadInt quad_int_from_json(const Json& j, const FieldSpec& f);
Json to_json(const QuadElem& a);
QuadElem quad_elem_from_json(const Json& j, const FieldSpec& f);
Json to_json(const BiPoly& p);
BiPoly bipoly_from_json(const Json& j, const FieldSpec& f);

Json to_json(const LValue& v);
Json to_json(const HEvalReport& r);
Json to_json(const BenchRow& r);
Json to_json(const SubspaceReport& r);
Json to_json(const TableRow& r);
Json to_json(const Membership& m);
Json to_json(const TransferIdentities& t);
Json to_json(const LocalFactor& lf);
Json to_json(const AlphaReport& r);
Json to_json(const ThetaReport& r);
Json to_json(const RCountReport& r);
Json to_json(const HconstReport& r);
Json to_json(const AverageReport& r);
Json to_json(const CFReport& r);
Json to_json(const SelftestReport& r);
Json to_json(const ExpandPReport& r);

template <class T>
T from_json(const Json& j);

bool operator==(const HEvalReport& a, const HEvalReport& b);
bool operator==(const BenchRow& a, const BenchRow& b);
bool operator==(const SubspaceReport& a, const SubspaceReport& b);
bool operator==(const TableRow& a, const TableRow& b);
bool operator==(const Membership& a, const Membership& b);
bool operator==(const TransferIdentities& a, const TransferIdentities& b);
bool operator==(const LocalFactor& a, const LocalFactor& b);
bool operator==(const ExpandPReport& a, const ExpandPReport& b);

}  // namespace hermitia
