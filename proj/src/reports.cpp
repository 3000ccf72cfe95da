#include "hermitia/reports.hpp"

#include <random>
#include <set>

namespace hermitia {

bool ThetaReport::operator==(const ThetaReport& o) const {
    return d == o.d && s == o.s && delta == o.delta && theta == o.theta && factors == o.factors;
}

bool SelftestReport::pass() const {
    return std::all_of(items.begin(), items.end(), [](const SelftestItem& i) { return i.pass; });
}

bool hconst_in_scope(int d, int k) { return k == 1 || (k == 3 && (d == 1 || d == 3 || d == 7)) || (k == 5 && d == 3); }

AlphaReport run_alpha(int d, int k, const BigInt& delta) {
    const auto& f = FieldSpec::get(d);
    return {d, k, delta, alpha(k, delta, f)};
}

ThetaReport run_theta(int d, long delta, int s) {
    const auto& f = FieldSpec::get(d);
    require_non_norm(delta, f);
    ThetaReport r{d, s, delta, theta(delta, s, f), {}};
    for (long p : prime_divisors(std::labs(f.disc) * delta)) r.factors.push_back(local_factor(p, delta, s, f));
    return r;
}

RCountReport run_rcount(int d, long delta, long n) {
    require(n >= 1, "n must be positive");
    return {d, delta, n, r_count(delta, n, FieldSpec::get(d))};
}

HconstReport run_hconst(int d, int k, long delta, int trials, std::uint64_t seed) {
    const auto& f = FieldSpec::get(d);
    require(trials >= 1, "trials must be positive");
    HconstReport r;
    r.d = d;
    r.k = k;
    r.delta = delta;
    r.trials = trials;
    r.seed = seed;
    r.in_scope = hconst_in_scope(d, k);
    r.alpha = alpha(k, delta, f);
    std::mt19937_64 gen(seed);
    auto uni = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen); };
    std::set<Rational> seen;
    for (int t = 0; t < trials; ++t) {
        long q = uni(1, 12), s = uni(1, 12);
        Rational re(uni(-3 * q, 3 * q), q), im(uni(-3 * s, 3 * s), s);
        re.canonicalize();
        im.canonicalize();
        QuadElem z = QuadElem::from_display(f, re, im);
        Rational h = eval_exact(k, delta, z);
        if (h == Rational(r.alpha)) ++r.equal;
        if (seen.insert(h).second) r.distinct.push_back({z, h});
    }
    return r;
}

AverageReport run_average(int d, int k, long delta, int grid, long a_max) {
    const auto& f = FieldSpec::get(d);
    require(grid >= 1 && a_max >= 1, "grid and a_max must be positive");
    return {d, k, delta, grid, a_max, average_quadrature(k, delta, f, grid, a_max), average_formula(k, delta, f)};
}

CFReport run_cfrac(int d, const std::string& re, const std::string& im, int steps, bool float_path, int bits) {
    const auto& f = FieldSpec::get(d);
    QuadElem z = QuadElem::from_display(f, parse_rational(re), parse_rational(im));
    CFReport r;
    r.d = d;
    r.z = z.str();
    r.exact = !float_path;
    CFExpansion cf;
    if (float_path) {
        Complex zc = z.to_complex();
        cf = hurwitz_cf(zc, steps, f, bits);
        r.z = z.str() + " (as double)";
    } else {
        cf = hurwitz_cf(z, steps);
    }
    r.alphas = cf.alphas;
    r.p = cf.p;
    r.q = cf.q;
    for (size_t i = 1; i < cf.deltas.size(); ++i) r.abs_deltas.push_back(std::abs(cf.deltas[i]));
    r.terminated = cf.terminated;
    return r;
}

ExpandPReport run_expandp(int d, int k, const BigInt& delta) {
    const auto& f = FieldSpec::get(d);
    BiPoly p = expand_P(k, delta, f);
    return {d, k, delta, p, membership(p, d), transfer_identities(p, d)};
}

SelftestReport run_selftest() {
    SelftestReport r;
    auto item = [&](const std::string& name, auto&& fn) {
        try {
            auto [ok, detail] = fn();
            r.items.push_back({name, ok, detail});
        } catch (const std::exception& e) {
            r.items.push_back({name, false, e.what()});
        }
    };
    const auto& f1 = FieldSpec::get(1);
    item("alpha_{1,3} = 20, alpha_{3,3} = 68 (d=1)", [&] {
        BigInt a1 = alpha(1, 3, f1), a3 = alpha(3, 3, f1);
        return std::pair{a1 == 20 && a3 == 68, a1.get_str() + ", " + a3.get_str()};
    });
    item("theta(3,2) = 5/6, theta(3,4) = 425/432 (d=1)", [&] {
        Rational t2 = theta(3, 2, f1), t4 = theta(3, 4, f1);
        return std::pair{t2 == Rational(5, 6) && t4 == Rational(425, 432), rational_str(t2) + ", " + rational_str(t4)};
    });
    item("L(chi_-4, -2) = -1/2, L(chi_-4, -4) = 5/2", [&] {
        Rational a = l_negative_exact(f1, -2), b = l_negative_exact(f1, -4);
        Rational c = *cohen_zagier(f1, -2).exact, e = *cohen_zagier(f1, -4).exact;
        return std::pair{a == Rational(-1, 2) && b == Rational(5, 2) && c == a && e == b,
                         rational_str(c) + ", " + rational_str(e)};
    });
    item("H_{1,3}(1/2) = 20 (d=1)", [&] {
        Rational h = eval_exact(1, 3, QuadElem(f1, Rational(1, 2)));
        return std::pair{h == 20, rational_str(h)};
    });
    item("Hurwitz expansion of 1/2 is [0; 2]", [&] {
        auto cf = hurwitz_cf(QuadElem(f1, Rational(1, 2)), 10);
        bool ok = cf.size() == 2 && cf.alphas[0].is_zero() && cf.alphas[1] == QuadInt(f1, 2) && cf.terminated;
        return std::pair{ok, std::to_string(cf.size()) + " partial quotients"};
    });
    item("presentation relations", [&] {
        bool ok = true;
        for (int d : FieldSpec::all_d()) ok = ok && relation_check(d);
        return std::pair{ok, std::string(ok ? "all hold" : "a relation fails")};
    });
    item("dim W_{7,7} (d=1) = 2 + 1", [&] {
        auto w = wkk(1, 7, false);
        bool ok = w.dim_W == 3 && w.dim_by_eigenvalue.at("1") == 2 && w.dim_by_eigenvalue.at("-1") == 1;
        return std::pair{ok, "dim W = " + std::to_string(w.dim_W)};
    });
    item("P_{1,3} in W^1 (d=1)", [&] {
        auto m = membership(expand_P(1, 3, f1), 1);
        return std::pair{m.member && m.tag == std::optional<std::string>("1"), std::string(m.member ? "member" : "not a member")};
    });
    return r;
}

// ---- JSON ----

Json to_json(const Rational& q) { return rational_str(q); }

Rational rational_from_json(const Json& j) { return parse_rational(j.get<std::string>()); }

namespace {

Json big(const BigInt& x) { return x.get_str(); }
BigInt big_from(const Json& j) { return BigInt(j.get<std::string>()); }

template <class T>
std::optional<T> opt(const Json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<T>();
}

}  // namespace

Json to_json(const QuadInt& a) { return {{"re", to_json(a.real())}, {"im", to_json(a.imag_coeff())}, {"str", a.str()}}; }

QuadInt quad_int_from_json(const Json& j, const FieldSpec& f) {
    return QuadElem::from_display(f, rational_from_json(j.at("re")), rational_from_json(j.at("im"))).as_integral();
}

Json to_json(const QuadElem& a) { return {{"re", to_json(a.real())}, {"im", to_json(a.imag_coeff())}, {"str", a.str()}}; }

QuadElem quad_elem_from_json(const Json& j, const FieldSpec& f) {
    return QuadElem::from_display(f, rational_from_json(j.at("re")), rational_from_json(j.at("im")));
}

Json to_json(const BiPoly& p) {
    Json terms = Json::array();
    for (int i = 0; i <= p.k(); ++i)
        for (int j = 0; j <= p.k(); ++j)
            if (!p.coeff(i, j).is_zero()) terms.push_back({{"i", i}, {"j", j}, {"c", to_json(p.coeff(i, j))}});
    return {{"k", p.k()}, {"terms", terms}, {"str", p.str()}};
}

BiPoly bipoly_from_json(const Json& j, const FieldSpec& f) {
    BiPoly p(f, j.at("k").get<int>());
    for (const auto& t : j.at("terms")) {
        int i = t.at("i").get<int>(), jj = t.at("j").get<int>();
        require(i >= 0 && i <= p.k() && jj >= 0 && jj <= p.k(), "monomial exponent out of range");
        p.coeff(i, jj) = quad_elem_from_json(t.at("c"), f);
    }
    return p;
}

Json to_json(const LValue& v) {
    Json j = {{"d", v.d},
              {"s", v.s},
              {"delta", v.delta},
              {"coefficient", to_json(v.coefficient)},
              {"sqrt_radicand", v.sqrt_radicand},
              {"pi_power", v.pi_power},
              {"numeric", v.numeric},
              {"precision_bits", v.precision_bits},
              {"display", v.display()},
              {"exact", nullptr}};
    if (v.exact) j["exact"] = to_json(*v.exact);
    return j;
}

template <>
LValue from_json<LValue>(const Json& j) {
    LValue v;
    v.d = j.at("d");
    v.s = j.at("s");
    v.delta = j.at("delta");
    v.coefficient = rational_from_json(j.at("coefficient"));
    v.sqrt_radicand = j.at("sqrt_radicand");
    v.pi_power = j.at("pi_power");
    v.numeric = j.at("numeric");
    v.precision_bits = j.at("precision_bits");
    if (!j.at("exact").is_null()) v.exact = rational_from_json(j.at("exact"));
    return v;
}

Json to_json(const HEvalReport& r) {
    Json j = {{"method", method_name(r.method)}, {"value", r.value}, {"terms_used", r.terms_used},
              {"exact", nullptr}, {"truncation_bound", nullptr}};
    if (r.exact) j["exact"] = to_json(*r.exact);
    if (r.truncation_bound) j["truncation_bound"] = *r.truncation_bound;
    return j;
}

template <>
HEvalReport from_json<HEvalReport>(const Json& j) {
    HEvalReport r;
    std::string m = j.at("method");
    bool found = false;
    for (auto e : {EvalMethod::ExactEnumeration, EvalMethod::Truncated, EvalMethod::CfAccelerated})
        if (method_name(e) == m) r.method = e, found = true;
    require(found, "unknown evaluation method " + m);
    r.value = j.at("value");
    r.terms_used = j.at("terms_used");
    if (!j.at("exact").is_null()) r.exact = rational_from_json(j.at("exact"));
    r.truncation_bound = opt<double>(j, "truncation_bound");
    return r;
}

Json to_json(const BenchRow& r) {
    return {{"method", r.method}, {"d", r.d}, {"s", r.s}, {"delta", r.delta}, {"micros", r.micros}, {"value", r.value}};
}

template <>
BenchRow from_json<BenchRow>(const Json& j) {
    return {j.at("method"), j.at("d"), j.at("s"), j.at("delta"), j.at("micros"), j.at("value")};
}

Json to_json(const SubspaceReport& r) {
    Json basis = Json::array();
    for (const auto& b : r.basis) basis.push_back(to_json(b));
    return {{"d", r.d},
            {"k", r.k},
            {"dim_W", r.dim_W},
            {"dim_by_eigenvalue", r.dim_by_eigenvalue},
            {"basis", basis},
            {"basis_labels", r.basis_labels},
            {"unsplit_upper_bound", r.unsplit_upper_bound},
            {"primes_used", r.primes_used},
            {"seconds", r.seconds}};
}

template <>
SubspaceReport from_json<SubspaceReport>(const Json& j) {
    SubspaceReport r;
    r.d = j.at("d");
    r.k = j.at("k");
    r.dim_W = j.at("dim_W");
    r.dim_by_eigenvalue = j.at("dim_by_eigenvalue").get<std::map<std::string, int>>();
    const auto& f = FieldSpec::get(r.d);
    for (const auto& b : j.at("basis")) r.basis.push_back(bipoly_from_json(b, f));
    r.basis_labels = j.at("basis_labels").get<std::vector<std::string>>();
    r.unsplit_upper_bound = j.at("unsplit_upper_bound");
    r.primes_used = j.at("primes_used");
    r.seconds = j.at("seconds");
    return r;
}

Json to_json(const TableRow& r) {
    Json j = {{"k", r.k}, {"report", to_json(r.report)}, {"table_match", nullptr}, {"conjecture_match", nullptr}};
    if (r.table_match) j["table_match"] = *r.table_match;
    if (r.conjecture_match) j["conjecture_match"] = *r.conjecture_match;
    return j;
}

template <>
TableRow from_json<TableRow>(const Json& j) {
    return {j.at("k"), from_json<SubspaceReport>(j.at("report")), opt<bool>(j, "table_match"),
            opt<bool>(j, "conjecture_match")};
}

Json to_json(const Membership& m) {
    Json j = {{"member", m.member}, {"tag", nullptr}};
    if (m.tag) j["tag"] = *m.tag;
    return j;
}

template <>
Membership from_json<Membership>(const Json& j) {
    return {j.at("member").get<bool>(), opt<std::string>(j, "tag")};
}

Json to_json(const TransferIdentities& t) {
    Json j = {{"swap_symmetric", t.swap_symmetric}, {"unit_invariant", t.unit_invariant}, {"s_kernel", t.s_kernel},
              {"tse_identity", t.tse_identity}, {"d7_identity", nullptr}};
    if (t.d7_identity) j["d7_identity"] = *t.d7_identity;
    return j;
}

template <>
TransferIdentities from_json<TransferIdentities>(const Json& j) {
    TransferIdentities t;
    t.swap_symmetric = j.at("swap_symmetric");
    t.unit_invariant = j.at("unit_invariant");
    t.s_kernel = j.at("s_kernel");
    t.tse_identity = j.at("tse_identity");
    t.d7_identity = opt<bool>(j, "d7_identity");
    return t;
}

Json to_json(const LocalFactor& lf) {
    Json poly = Json::array();
    for (const auto& c : lf.poly) poly.push_back(big(c));
    return {{"p", lf.p}, {"value", to_json(lf.value)}, {"case", local_case_name(lf.case_tag)}, {"poly", poly}};
}

template <>
LocalFactor from_json<LocalFactor>(const Json& j) {
    LocalFactor lf;
    lf.p = j.at("p");
    lf.value = rational_from_json(j.at("value"));
    std::string c = j.at("case");
    bool found = false;
    for (auto e : {LocalCase::Unramified, LocalCase::OddRamified, LocalCase::Dyadic2Mod8, LocalCase::Dyadic6Mod8,
                   LocalCase::Dyadic3Or7Mod8})
        if (local_case_name(e) == c) lf.case_tag = e, found = true;
    require(found, "unknown local case " + c);
    for (const auto& x : j.at("poly")) lf.poly.push_back(big_from(x));
    return lf;
}

Json to_json(const AlphaReport& r) {
    return {{"d", r.d}, {"k", r.k}, {"delta", big(r.delta)}, {"alpha", big(r.alpha)}};
}

template <>
AlphaReport from_json<AlphaReport>(const Json& j) {
    return {j.at("d"), j.at("k"), big_from(j.at("delta")), big_from(j.at("alpha"))};
}

Json to_json(const ThetaReport& r) {
    Json fs = Json::array();
    for (const auto& lf : r.factors) fs.push_back(to_json(lf));
    return {{"d", r.d}, {"s", r.s}, {"delta", r.delta}, {"theta", to_json(r.theta)}, {"factors", fs}};
}

template <>
ThetaReport from_json<ThetaReport>(const Json& j) {
    ThetaReport r{j.at("d"), j.at("s"), j.at("delta"), rational_from_json(j.at("theta")), {}};
    for (const auto& x : j.at("factors")) r.factors.push_back(from_json<LocalFactor>(x));
    return r;
}

Json to_json(const RCountReport& r) { return {{"d", r.d}, {"delta", r.delta}, {"n", r.n}, {"r", r.r}}; }

template <>
RCountReport from_json<RCountReport>(const Json& j) {
    return {j.at("d"), j.at("delta"), j.at("n"), j.at("r")};
}

Json to_json(const HconstReport& r) {
    Json pts = Json::array();
    for (const auto& p : r.distinct) pts.push_back({{"z", to_json(p.z)}, {"value", to_json(p.value)}});
    return {{"d", r.d}, {"k", r.k}, {"delta", r.delta}, {"trials", r.trials}, {"seed", r.seed},
            {"in_scope", r.in_scope}, {"alpha", big(r.alpha)}, {"equal", r.equal}, {"distinct", pts},
            {"pass", r.pass()}};
}

template <>
HconstReport from_json<HconstReport>(const Json& j) {
    HconstReport r;
    r.d = j.at("d");
    r.k = j.at("k");
    r.delta = j.at("delta");
    r.trials = j.at("trials");
    r.seed = j.at("seed");
    r.in_scope = j.at("in_scope");
    r.alpha = big_from(j.at("alpha"));
    r.equal = j.at("equal");
    const auto& f = FieldSpec::get(r.d);
    for (const auto& p : j.at("distinct"))
        r.distinct.push_back({quad_elem_from_json(p.at("z"), f), rational_from_json(p.at("value"))});
    return r;
}

Json to_json(const AverageReport& r) {
    return {{"d", r.d}, {"k", r.k}, {"delta", r.delta}, {"grid", r.grid}, {"a_max", r.a_max},
            {"quadrature", r.quadrature}, {"formula", r.formula}, {"rel_error", r.rel_error()}};
}

template <>
AverageReport from_json<AverageReport>(const Json& j) {
    return {j.at("d"), j.at("k"), j.at("delta"), j.at("grid"), j.at("a_max"), j.at("quadrature"), j.at("formula")};
}

Json to_json(const CFReport& r) {
    auto list = [](const std::vector<QuadInt>& v) {
        Json a = Json::array();
        for (const auto& x : v) a.push_back(to_json(x));
        return a;
    };
    return {{"d", r.d}, {"z", r.z}, {"exact", r.exact}, {"alphas", list(r.alphas)}, {"p", list(r.p)},
            {"q", list(r.q)}, {"abs_deltas", r.abs_deltas}, {"terminated", r.terminated}};
}

template <>
CFReport from_json<CFReport>(const Json& j) {
    CFReport r;
    r.d = j.at("d");
    r.z = j.at("z");
    r.exact = j.at("exact");
    const auto& f = FieldSpec::get(r.d);
    for (const auto& x : j.at("alphas")) r.alphas.push_back(quad_int_from_json(x, f));
    for (const auto& x : j.at("p")) r.p.push_back(quad_int_from_json(x, f));
    for (const auto& x : j.at("q")) r.q.push_back(quad_int_from_json(x, f));
    r.abs_deltas = j.at("abs_deltas").get<std::vector<double>>();
    r.terminated = j.at("terminated");
    return r;
}

Json to_json(const SelftestReport& r) {
    Json items = Json::array();
    for (const auto& i : r.items) items.push_back({{"name", i.name}, {"pass", i.pass}, {"detail", i.detail}});
    return {{"items", items}, {"pass", r.pass()}};
}

template <>
SelftestReport from_json<SelftestReport>(const Json& j) {
    SelftestReport r;
    for (const auto& i : j.at("items")) r.items.push_back({i.at("name"), i.at("pass"), i.at("detail")});
    return r;
}

Json to_json(const ExpandPReport& r) {
    return {{"d", r.d}, {"k", r.k}, {"delta", big(r.delta)}, {"poly", to_json(r.poly)},
            {"membership", to_json(r.membership)}, {"identities", to_json(r.identities)}};
}

template <>
ExpandPReport from_json<ExpandPReport>(const Json& j) {
    int d = j.at("d");
    const auto& f = FieldSpec::get(d);
    return {d, j.at("k"), big_from(j.at("delta")), bipoly_from_json(j.at("poly"), f),
            from_json<Membership>(j.at("membership")), from_json<TransferIdentities>(j.at("identities"))};
}

bool operator==(const HEvalReport& a, const HEvalReport& b) {
    return a.method == b.method && a.exact == b.exact && a.value == b.value && a.terms_used == b.terms_used &&
           a.truncation_bound == b.truncation_bound;
}

bool operator==(const BenchRow& a, const BenchRow& b) {
    return a.method == b.method && a.d == b.d && a.s == b.s && a.delta == b.delta && a.micros == b.micros &&
           a.value == b.value;
}

bool operator==(const SubspaceReport& a, const SubspaceReport& b) {
    return a.d == b.d && a.k == b.k && a.dim_W == b.dim_W && a.dim_by_eigenvalue == b.dim_by_eigenvalue &&
           a.basis == b.basis && a.basis_labels == b.basis_labels && a.unsplit_upper_bound == b.unsplit_upper_bound &&
           a.primes_used == b.primes_used && a.seconds == b.seconds;
}

bool operator==(const TableRow& a, const TableRow& b) {
    return a.k == b.k && a.report == b.report && a.table_match == b.table_match &&
           a.conjecture_match == b.conjecture_match;
}

bool operator==(const Membership& a, const Membership& b) { return a.member == b.member && a.tag == b.tag; }

bool operator==(const TransferIdentities& a, const TransferIdentities& b) {
    return a.swap_symmetric == b.swap_symmetric && a.unit_invariant == b.unit_invariant && a.s_kernel == b.s_kernel &&
           a.tse_identity == b.tse_identity && a.d7_identity == b.d7_identity;
}

bool operator==(const LocalFactor& a, const LocalFactor& b) {
    return a.p == b.p && a.value == b.value && a.case_tag == b.case_tag && a.poly == b.poly;
}

bool operator==(const ExpandPReport& a, const ExpandPReport& b) {
    return a.d == b.d && a.k == b.k && a.delta == b.delta && a.poly == b.poly && a.membership == b.membership &&
           a.identities == b.identities;
}

}  // namespace hermitia
