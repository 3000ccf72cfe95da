#include "hermitia/modular.hpp"

#include <algorithm>
#include <numeric>

namespace hermitia::modp {

u64 pow(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mul(r, a, p);
        a = mul(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 inv(u64 a, u64 p) {
    require(a % p != 0, "inverse of zero mod p");
    return pow(a, p - 2, p);
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
        if (n % q == 0) return n == q;
    u64 d = n - 1;
    int s = 0;
    while (d % 2 == 0) d /= 2, ++s;
    // deterministic for n < 2^32 (bases 2, 7, 61)
    for (u64 a : {2, 7, 61}) {
        u64 x = pow(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int r = 1; r < s && comp; ++r) {
            x = mul(x, x, n);
            if (x == n - 1) comp = false;
        }
        if (comp) return false;
    }
    return true;
}

std::optional<u64> sqrt_mod(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    if (pow(a, (p - 1) / 2, p) != 1) return std::nullopt;
    // Tonelli-Shanks
    u64 q = p - 1;
    int s = 0;
    while (q % 2 == 0) q /= 2, ++s;
    u64 z = 2;
    while (pow(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 c = pow(z, q, p), x = pow(a, (q + 1) / 2, p), t = pow(a, q, p);
    int m = s;
    while (t != 1) {
        int i = 0;
        u64 tt = t;
        while (tt != 1) tt = mul(tt, tt, p), ++i;
        u64 b = c;
        for (int j = 0; j < m - i - 1; ++j) b = mul(b, b, p);
        x = mul(x, b, p);
        c = mul(b, b, p);
        t = mul(t, c, p);
        m = i;
    }
    return x;
}

u64 reduce(const BigInt& x, u64 p) {
    BigInt r = x % BigInt((unsigned long)p);
    if (r < 0) r += (unsigned long)p;
    return r.get_ui();
}

SplitPrimes::SplitPrimes(const FieldSpec& f) : f_(&f), cur_((1ULL << 31) - 1) {}

SplitPrime SplitPrimes::next() {
    for (;;) {
        u64 p = cur_;
        cur_ -= 2;
        if (!is_prime(p)) continue;
        u64 disc = reduce(BigInt(f_->disc), p);
        auto s = sqrt_mod(disc, p);
        if (!s || *s == 0) continue;
        // roots of X^2 - tX + n are (t +- sqrt(d_K))/2
        u64 t = reduce(BigInt(f_->t), p), half = inv(2, p);
        return {p, {mul(add(t, *s, p), half, p), mul(sub(t, *s, p), half, p)}};
    }
}

u64 embed(const QuadInt& a, const SplitPrime& sp, int e) {
    return add(reduce(a.x(), sp.p), mul(reduce(a.y(), sp.p), sp.root[e], sp.p), sp.p);
}

std::optional<u64> embed(const QuadElem& a, const SplitPrime& sp, int e) {
    u64 den = reduce(a.den(), sp.p);
    if (den == 0) return std::nullopt;
    return mul(embed(a.num(), sp, e), inv(den, sp.p), sp.p);
}

EchelonBuilder::EchelonBuilder(size_t cols, u64 p) : p_(p) { e_.cols = cols; }

bool EchelonBuilder::add(std::vector<u64> row, size_t source) {
    const u64 p = p_;
    const size_t n = e_.cols;
    // rows are kept fully reduced, so one pass clears every pivot column
    for (size_t r = 0; r < e_.rows.size(); ++r) {
        u64 f = row[e_.pivots[r]];
        if (!f) continue;
        f = p - f;
        const u64* src = e_.rows[r].data();
        for (size_t j = e_.pivots[r]; j < n; ++j)
            if (src[j]) row[j] = (row[j] + f * src[j]) % p;
    }
    size_t piv = 0;
    while (piv < n && row[piv] == 0) ++piv;
    if (piv == n) return false;
    u64 s = inv(row[piv], p);
    for (size_t j = piv; j < n; ++j) row[j] = mul(row[j], s, p);
    for (auto& other : e_.rows) {
        u64 f = other[piv];
        if (!f) continue;
        f = p - f;
        for (size_t j = piv; j < n; ++j)
            if (row[j]) other[j] = (other[j] + f * row[j]) % p;
    }
    e_.rows.push_back(std::move(row));
    e_.pivots.push_back(piv);
    e_.source_rows.push_back(source);
    return true;
}

Echelon EchelonBuilder::finish() {
    std::vector<size_t> order(e_.rows.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return e_.pivots[a] < e_.pivots[b]; });
    Echelon out;
    out.cols = e_.cols;
    for (size_t i : order) {
        out.rows.push_back(std::move(e_.rows[i]));
        out.pivots.push_back(e_.pivots[i]);
        out.source_rows.push_back(e_.source_rows[i]);
    }
    return out;
}

std::vector<size_t> free_columns(const Echelon& e) {
    std::vector<bool> is_piv(e.cols, false);
    for (size_t c : e.pivots) is_piv[c] = true;
    std::vector<size_t> out;
    for (size_t c = 0; c < e.cols; ++c)
        if (!is_piv[c]) out.push_back(c);
    return out;
}

std::vector<std::vector<u64>> kernel(const Echelon& e, u64 p) {
    std::vector<std::vector<u64>> out;
    for (size_t fc : free_columns(e)) {
        std::vector<u64> v(e.cols, 0);
        v[fc] = 1;
        for (size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = (p - e.rows[r][fc]) % p;
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<Rational> rational_reconstruct(const BigInt& a, const BigInt& m) {
    BigInt bound;
    mpz_sqrt(bound.get_mpz_t(), BigInt(m / 2).get_mpz_t());
    BigInt r0 = m, r1 = a % m, t0 = 0, t1 = 1;
    if (r1 < 0) r1 += m;
    while (r1 > bound) {
        BigInt q = r0 / r1;
        BigInt r2 = r0 - q * r1, t2 = t0 - q * t1;
        r0 = r1, r1 = r2, t0 = t1, t1 = t2;
    }
    if (t1 == 0 || abs(t1) > bound) return std::nullopt;
    BigInt g;
    mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
    if (g != 1) return std::nullopt;
    Rational out(r1, t1);
    out.canonicalize();
    return out;
}

void Crt::add(u64 r, u64 p) {
    BigInt bp((unsigned long)p);
    u64 cur = reduce(value, p);
    u64 minv = inv(reduce(modulus, p), p);
    u64 h = mul(sub(r, cur, p), minv, p);
    value += modulus * BigInt((unsigned long)h);
    modulus *= bp;
}

}  // namespace hermitia::modp
