#include "hermitia/lfun.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <mutex>

#include <boost/math/constants/constants.hpp>

#include "hermitia/forms.hpp"

namespace hermitia {

namespace {

unsigned digits10_for(int bits) { return (unsigned)std::ceil(bits * 0.30103) + 1; }

Real to_real(const Rational& q) {
    Real r(q.get_mpq_t());
    return r;
}

Real to_real(const BigInt& z) { return Real(z.get_mpz_t()); }

BigInt ipow(long b, unsigned e) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), (unsigned long)std::labs(b), e);
    if (b < 0 && (e & 1)) r = -r;
    return r;
}

long mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

int valuation(long n, long p) {
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

// kronecker(top, m) where only m mod 8 and the sign of m matter
int kron_dyadic(long top, const BigInt& m) {
    BigInt r = abs(m) % 8;
    long red = r.get_si();
    if (m < 0) red = -red;
    return kronecker(top, red);
}

}  // namespace

PrecisionScope::PrecisionScope(int bits) : saved_(Real::default_precision()) {
    require(bits >= 16, "precision too small");
    Real::default_precision(digits10_for(bits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

Real real_pi() { return boost::math::constants::pi<Real>(); }

std::string real_str(const Real& x, int digits) { return x.str(digits, std::ios_base::fmtflags(0)); }

// ---- representation counts

long r_count(long delta, long n, const FieldSpec& f) {
    require(n >= 1, "n must be positive");
    long count = 0;
    for (long y = 0; y < n; ++y) {
        long cy = mod(mod(f.n * mod(y * y, n), n) + delta, n);
        long ty = mod(f.t * y, n);
        for (long x = 0; x < n; ++x)
            if ((x * x + ty * x + cy) % n == 0) ++count;
    }
    return count;
}

namespace {

long r_prime_power(long delta, long p, int e, const FieldSpec& f) {
    long q = 1;
    for (int i = 0; i < e; ++i) q *= p;
    if (p != 2 && e == 1 && f.disc % p != 0 && delta % p != 0) return p - kronecker(f.disc, p);
    if (p != 2) {
        // (2x + ty)^2 = -4 delta - |t| y^2 mod q, and x -> 2x + ty is a bijection
        std::vector<long> sq(q, 0);
        for (long u = 0; u < q; ++u) sq[(size_t)((__int128)u * u % q)]++;
        long count = 0;
        long at = -f.t;
        for (long y = 0; y < q; ++y) {
            long rhs = mod(-4 * mod(delta, q) - at * (long)((__int128)y * y % q), q);
            count += sq[rhs];
        }
        return count;
    }
    // lift solutions mod 2^j to 2^(j+1)
    std::vector<std::pair<long, long>> sols;
    for (long x = 0; x < 2; ++x)
        for (long y = 0; y < 2; ++y)
            if (mod(x * x + f.t * x * y + f.n * y * y + delta, 2) == 0) sols.emplace_back(x, y);
    long m = 2;
    for (int j = 1; j < e; ++j) {
        long m2 = 2 * m;
        std::vector<std::pair<long, long>> next;
        for (auto [x, y] : sols)
            for (long i = 0; i < 2; ++i)
                for (long k = 0; k < 2; ++k) {
                    __int128 X = x + i * m, Y = y + k * m;
                    __int128 v = X * X + (__int128)f.t * X * Y + (__int128)f.n * Y * Y + delta;
                    v %= m2;
                    if (v == 0) next.emplace_back((long)X, (long)Y);
                }
        sols.swap(next);
        m = m2;
    }
    return (long)sols.size();
}

}  // namespace

std::vector<long> prime_divisors(long n) {
    std::vector<long> ps;
    n = std::labs(n);
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

long r_count_fast(long delta, long n, const FieldSpec& f) {
    require(n >= 1, "n must be positive");
    long r = 1;
    for (long p : prime_divisors(n)) r *= r_prime_power(delta, p, valuation(n, p), f);
    return r;
}

double zseries_partial(long delta, int s, long n_max, const FieldSpec& f) {
    require(s >= 1, "s must be >= 1");
    std::vector<long> spf(n_max + 1, 0);
    for (long i = 2; i <= n_max; ++i)
        if (!spf[i])
            for (long j = i; j <= n_max; j += i)
                if (!spf[j]) spf[j] = i;
    std::map<long, long> cache;  // prime power -> r
    double sum = 0;
    for (long n = 1; n <= n_max; ++n) {
        long r = 1, m = n;
        while (m > 1 && r) {
            long p = spf[m], q = 1;
            int e = 0;
            while (m % p == 0) {
                m /= p;
                q *= p;
                ++e;
            }
            auto it = cache.find(q);
            if (it == cache.end()) it = cache.emplace(q, r_prime_power(delta, p, e, f)).first;
            r *= it->second;
        }
        if (r) sum += r / std::pow((double)n, s + 1);
    }
    return sum;
}

// ---- local factors

std::string local_case_name(LocalCase c) {
    switch (c) {
        case LocalCase::Unramified: return "p !| d_K";
        case LocalCase::OddRamified: return "p | d_K, p odd";
        case LocalCase::Dyadic2Mod8: return "p = 2, D1 = 2 mod 8";
        case LocalCase::Dyadic6Mod8: return "p = 2, D1 = 6 mod 8";
        case LocalCase::Dyadic3Or7Mod8: return "p = 2, D1 = 3 or 7 mod 8";
    }
    return "?";
}

std::vector<BigInt> local_factor_poly(long p, long table_delta, const FieldSpec& f, LocalCase* which) {
    require(table_delta != 0, "delta = 0 is not supported");
    int t = valuation(table_delta, p);
    long delta0 = table_delta;
    for (int i = 0; i < t; ++i) delta0 /= p;
    const long dk = f.disc;
    std::vector<BigInt> poly;
    LocalCase tag;
    if (dk % p != 0) {
        tag = LocalCase::Unramified;
        long chi = kronecker(dk, p);
        for (int j = 0; j <= t; ++j) poly.push_back(ipow(chi * p, j));
    } else if (p != 2) {
        tag = LocalCase::OddRamified;
        long d0 = std::labs(dk / p);
        BigInt top = -(ipow(d0, t) % p) * mod(delta0, p);
        long sym = kronecker(mod(top.get_si(), p), p);
        poly.assign(t + 2, 0);
        poly[0] = 1;
        poly[t + 1] = sym * ipow(p, t + 1);
    } else {
        long d1 = dk / 4;
        long d2 = mod(d1, 4) == 2 ? -d1 / 2 : (1 - d1) / 2;
        BigInt m = BigInt(delta0) * ipow(d2, t);
        long r8 = mod(d1, 8);
        int sign, shift;
        if (r8 == 2) {
            tag = LocalCase::Dyadic2Mod8;
            sign = kron_dyadic(8, m);
            shift = 3;
        } else if (r8 == 6) {
            tag = LocalCase::Dyadic6Mod8;
            sign = -kron_dyadic(-8, m);
            shift = 3;
        } else {
            require(r8 == 3 || r8 == 7, "unexpected D1 residue");
            tag = LocalCase::Dyadic3Or7Mod8;
            sign = -kron_dyadic(-4, m);
            shift = 2;
        }
        poly.assign(t + shift + 1, 0);
        poly[0] = 1;
        poly[t + shift] = sign * ipow(2, t + shift);
    }
    if (which) *which = tag;
    return poly;
}

LocalFactor local_factor(long p, long delta, int s, const FieldSpec& f) {
    require(s >= 1, "s must be >= 1");
    require(p >= 2 && prime_divisors(p).size() == 1 && prime_divisors(p)[0] == p, "p must be prime");
    require((std::labs(f.disc) * delta) % p == 0, "p must divide d_K * delta");
    LocalFactor lf;
    lf.p = p;
    lf.poly = local_factor_poly(p, -delta, f, &lf.case_tag);
    // X = p^(-1-s)
    Rational value = 0;
    for (size_t j = 0; j < lf.poly.size(); ++j) {
        if (lf.poly[j] == 0) continue;
        value += Rational(lf.poly[j], ipow(p, (unsigned)(j * (s + 1))));
    }
    value.canonicalize();
    lf.value = value;
    return lf;
}

Rational theta(long delta, int s, const FieldSpec& f) {
    require(delta >= 1, "delta must be positive");
    require_non_norm(delta, f);
    Rational th = 1;
    for (long p : prime_divisors(std::labs(f.disc) * delta)) th *= local_factor(p, delta, s, f).value;
    return th;
}

// ---- Bernoulli numbers and exact negative values

namespace {

std::mutex bern_mutex;
std::vector<Rational>& bern_table() {
    static std::vector<Rational> t = {Rational(1)};
    return t;
}

}  // namespace

Rational bernoulli(int n) {
    require(n >= 0, "negative Bernoulli index");
    std::lock_guard<std::mutex> lock(bern_mutex);
    auto& B = bern_table();
    while ((int)B.size() <= n) {
        int m = (int)B.size();
        // sum_{j<=m} C(m+1, j) B_j = 0
        Rational acc = 0;
        BigInt c = 1;
        for (int j = 0; j < m; ++j) {
            acc += Rational(c) * B[j];
            c = c * (m + 1 - j) / (j + 1);
        }
        Rational bm = -acc / Rational(m + 1);
        bm.canonicalize();
        B.push_back(bm);
    }
    return B[n];
}

Rational generalized_bernoulli(int n, const FieldSpec& f) {
    require(n >= 1, "n must be >= 1");
    const long cond = std::labs(f.disc);
    std::vector<Rational> b(n + 1);
    for (int j = 0; j <= n; ++j) b[j] = bernoulli(j);
    Rational sum = 0;
    for (long a = 1; a <= cond; ++a) {
        int chi = kronecker(f.disc, a);
        if (!chi) continue;
        // B_n(a/cond)
        Rational x(a, cond), val = 0, xp = 1;
        x.canonicalize();
        BigInt c = 1;
        std::vector<Rational> xpow(n + 1);
        xpow[0] = 1;
        for (int j = 1; j <= n; ++j) xpow[j] = xpow[j - 1] * x;
        for (int j = 0; j <= n; ++j) {
            val += Rational(c) * b[j] * xpow[n - j];
            c = c * (n - j) / (j + 1);
        }
        sum += chi * val;
    }
    Rational r = sum * Rational(ipow(cond, n - 1));
    r.canonicalize();
    return r;
}

Rational l_negative_exact(const FieldSpec& f, int s) {
    require(s <= 0, "s must be <= 0");
    int n = 1 - s;
    Rational r = -generalized_bernoulli(n, f) / Rational(n);
    r.canonicalize();
    return r;
}

// ---- numeric values

namespace {

// B_{2m} / (2m)!
Rational bern_over_fact(int m) {
    static std::mutex mu;
    static std::vector<Rational> cache;
    std::lock_guard<std::mutex> lock(mu);
    while ((int)cache.size() <= m) {
        int j = (int)cache.size();
        BigInt fact;
        mpz_fac_ui(fact.get_mpz_t(), 2 * j);
        Rational v = bernoulli(2 * j) / Rational(fact);
        v.canonicalize();
        cache.push_back(v);
    }
    return cache[m];
}

}  // namespace

Real hurwitz_zeta(int s, const Rational& a, int bits) {
    require(s >= 2, "hurwitz_zeta needs s >= 2");
    require(a > 0, "hurwitz_zeta needs a > 0");
    PrecisionScope scope(bits + 16);
    const Real av = to_real(a);
    const Real eps = pow(Real(2), -(bits + 8));
    for (long N = bits / 2 + 10;; N *= 2) {
        Real sum = 0;
        for (long j = 0; j < N; ++j) sum += 1 / pow(av + j, s);
        Real x = av + N;
        Real xs = pow(x, s);
        sum += x / (xs * (s - 1)) + 1 / (2 * xs);
        Real rising = s;       // s (s+1) ... (s+2m-2)
        Real xp = 1 / (xs * x);  // x^(-s-2m+1)
        Real prev = -1;
        bool converged = false;
        for (int m = 1; m < 4 * N + 50; ++m) {
            Real term = to_real(bern_over_fact(m)) * rising * xp;
            Real mag = abs(term);
            if (prev >= 0 && mag > prev) break;
            sum += term;
            if (mag < eps * abs(sum)) {
                converged = true;
                break;
            }
            prev = mag;
            rising *= Real(s + 2 * m - 1) * (s + 2 * m);
            xp /= x * x;
        }
        if (converged) return sum;
    }
}

Real l_positive_numeric(const FieldSpec& f, int s, int bits) {
    require(s >= 2, "s must be >= 2");
    PrecisionScope scope(bits + 16);
    const long cond = std::labs(f.disc);
    Real sum = 0;
    for (long a = 1; a <= cond; ++a) {
        int chi = kronecker(f.disc, a);
        if (!chi) continue;
        Rational x(a, cond);
        x.canonicalize();
        Real z = hurwitz_zeta(s, x, bits + 8);
        sum += chi > 0 ? z : Real(-z);
    }
    return sum / pow(Real(cond), s);
}

Real functional_equation(const FieldSpec& f, int s, const Real& l_s, int bits) {
    require(s >= 2, "s must be >= 2");
    PrecisionScope scope(bits + 16);
    static const int sine[4] = {0, 1, 0, -1};
    int sn = sine[s % 4];
    if (sn == 0) return Real(0);
    const long cond = std::labs(f.disc);
    BigInt gamma;
    mpz_fac_ui(gamma.get_mpz_t(), s - 1);
    Real two_pi = 2 * real_pi();
    Real v = 2 * pow(Real(cond), s) / sqrt(Real(cond)) / pow(two_pi, s) * to_real(gamma) * l_s;
    return sn > 0 ? v : Real(-v);
}

// ---- Cohen-Zagier formulas

bool cohen_zagier_in_scope(int d, int s) {
    if (s == 3 || s == -2) return true;
    if (s == 5 || s == -4) return d == 1 || d == 3 || d == 7;
    if (s == 7 || s == -6) return d == 3;
    return false;
}

std::string LValue::display() const {
    if (exact) return rational_str(*exact);
    std::string out = "(" + rational_str(coefficient) + ")";
    if (sqrt_radicand != 1) out += "·√" + std::to_string(sqrt_radicand);
    if (pi_power) out += "·π^" + std::to_string(pi_power);
    return out;
}

bool LValue::operator==(const LValue& o) const {
    return d == o.d && s == o.s && delta == o.delta && exact == o.exact && coefficient == o.coefficient &&
           sqrt_radicand == o.sqrt_radicand && pi_power == o.pi_power && numeric == o.numeric &&
           precision_bits == o.precision_bits;
}

Real lvalue_numeric(const LValue& v, int bits) {
    PrecisionScope scope(bits + 16);
    Real x = to_real(v.coefficient);
    if (v.sqrt_radicand != 1) x *= sqrt(Real(v.sqrt_radicand));
    if (v.pi_power) x *= pow(real_pi(), v.pi_power);
    return x;
}

LValue cohen_zagier(const FieldSpec& f, int s, std::optional<long> delta_opt, int bits) {
    if (!cohen_zagier_in_scope(f.d, s)) {
        std::string allowed = (s == 3 || s == -2) ? "{1,2,3,7,11}"
                              : (s == 5 || s == -4) ? "{1,3,7}"
                              : (s == 7 || s == -6) ? "{3}"
                                                    : "{}";
        throw PreconditionError("out of theorem scope (d=" + std::to_string(f.d) + " not in " + allowed +
                                " for s=" + std::to_string(s) + ")");
    }
    require(bits >= 64, "precision must be at least 64 bits");
    long delta = delta_opt ? *delta_opt : smallest_non_norms(f, 1)[0].get_si();
    require_non_norm(delta, f);
    const int k = s > 0 ? s - 2 : -s - 1;  // alpha index
    const long dk = std::labs(f.disc);
    Rational th = theta(delta, k + 1, f);
    Rational al(alpha(k, delta, f));
    LValue v;
    v.d = f.d;
    v.s = s;
    v.delta = delta;
    v.precision_bits = bits;
    Rational dpow(ipow(delta, k + 1));
    if (s < 0) {
        Rational r;
        if (s == -2)
            r = -Rational(ipow(dk, 2)) * dpow * th / (12 * al);
        else if (s == -4)
            r = Rational(ipow(dk, 4)) * dpow * th / (120 * al);
        else
            r = -81 * dpow * th / (28 * al);
        r.canonicalize();
        v.exact = r;
        v.coefficient = r;
    } else {
        static const std::map<int, long> denom = {{3, 6}, {5, 180}, {7, 2835}};
        // 1/sqrt(dk) = sqrt(r) / (c r) with dk = c^2 r
        long c = 1;
        for (long q = 2; q * q <= dk; ++q)
            while (dk % (c * c * q * q) == 0) c *= q;
        long rad = dk / (c * c);
        Rational coef = dpow * th / (denom.at(s) * al) / Rational(c * rad);
        coef.canonicalize();
        v.coefficient = coef;
        v.sqrt_radicand = rad;
        v.pi_power = s;
    }
    v.numeric = real_str(lvalue_numeric(v, bits), (int)digits10_for(bits) - 1);
    return v;
}

double average_formula(int k, long delta, const FieldSpec& f) {
    require_odd_k(k);
    const int bits = 96;
    PrecisionScope scope(bits);
    Real th = to_real(theta(delta, k + 1, f));
    Real zeta = hurwitz_zeta(k + 1, Rational(1), bits);
    Real L = l_positive_numeric(f, k + 2, bits);
    Real v = 2 * real_pi() * pow(Real(delta), k + 1) / ((k + 1) * sqrt(Real(std::labs(f.disc)))) * th * zeta / L;
    return v.convert_to<double>();
}

// ---- benchmark

std::vector<BenchRow> bench(const FieldSpec& f, int s, const std::vector<long>& deltas, int bits, int repeats) {
    require(repeats >= 1, "repeats must be positive");
    require(cohen_zagier_in_scope(f.d, s), "out of theorem scope (s=" + std::to_string(s) + ", d=" +
                                               std::to_string(f.d) + ")");
    using clock = std::chrono::steady_clock;
    const int digits = (int)digits10_for(bits) - 1;
    auto baseline = [&]() {
        if (s > 0) return l_positive_numeric(f, s, bits);
        return functional_equation(f, 1 - s, l_positive_numeric(f, 1 - s, bits), bits);
    };
    std::vector<BenchRow> rows;
    for (long delta : deltas) {
        LValue cz;
        auto t0 = clock::now();
        for (int i = 0; i < repeats; ++i) cz = cohen_zagier(f, s, delta, bits);
        auto t1 = clock::now();
        Real base;
        std::string base_str;
        for (int i = 0; i < repeats; ++i) {
            base = baseline();
            base_str = real_str(base, digits);
        }
        auto t2 = clock::now();
        PrecisionScope scope(bits + 16);
        Real czv = lvalue_numeric(cz, bits);
        Real tol = pow(Real(2), -(bits - 8)) * (1 + abs(czv));
        ensure(abs(czv - base) <= tol, "benchmark paths disagree for delta = " + std::to_string(delta) + ": " +
                                           cz.numeric + " vs " + base_str);
        double us_cz = std::chrono::duration<double, std::micro>(t1 - t0).count() / repeats;
        double us_base = std::chrono::duration<double, std::micro>(t2 - t1).count() / repeats;
        rows.push_back({"cohen-zagier", f.d, s, delta, us_cz, cz.numeric});
        rows.push_back({"character-sum", f.d, s, delta, us_base, base_str});
    }
    return rows;
}

}  // namespace hermitia
