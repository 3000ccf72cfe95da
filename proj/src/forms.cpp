#include "hermitia/forms.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace hermitia {

namespace {

using i128 = __int128;

long to_long(const BigInt& v, const char* what) {
    require(v.fits_slong_p(), std::string(what) + " is too large for the enumeration");
    return v.get_si();
}

// floor(sqrt(v)) for v >= 0
i128 isqrt(i128 v) {
    if (v <= 0) return 0;
    i128 r = (i128)std::sqrt((long double)v);
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

i128 floor_div(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

BigInt big(i128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? (unsigned __int128)(-v) : (unsigned __int128)v;
    BigInt r((unsigned long)(u >> 64));
    r <<= 64;
    r += (unsigned long)(u & ~0UL);
    return neg ? BigInt(-r) : r;
}

// visits (x, y) with N(D*(x + y w) + a*(wx + wy w)) < bound, where 4N = (2X + tY)^2 + |t| Y^2
template <class Visit>
void lattice_disk(const FieldSpec& f, i128 D, i128 a, i128 wx, i128 wy, i128 bound, Visit&& visit) {
    const i128 t = f.t, at = -f.t;
    const i128 B4 = 4 * bound;
    // |t| Y^2 < B4
    i128 ymax = isqrt((B4 - 1) / at);
    i128 y0 = ceil_div(-ymax - a * wy, D), y1 = floor_div(ymax - a * wy, D);
    for (i128 y = y0; y <= y1; ++y) {
        i128 Y = D * y + a * wy;
        i128 rem = B4 - at * Y * Y;
        if (rem <= 0) continue;
        i128 s = isqrt(rem - 1);  // (2X + tY)^2 <= rem - 1
        // 2X in [-s - tY, s - tY]
        i128 xlo = ceil_div(-s - t * Y, 2), xhi = floor_div(s - t * Y, 2);
        // X = D x + a wx
        i128 x0 = ceil_div(xlo - a * wx, D), x1 = floor_div(xhi - a * wx, D);
        for (i128 x = x0; x <= x1; ++x) visit(x, y);
    }
}

BigInt ipow(const BigInt& b, unsigned e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

BigInt sigma_k(long m, int k) {
    BigInt s = 0;
    for (long d = 1; d * d <= m; ++d) {
        if (m % d) continue;
        s += ipow(BigInt(d), k);
        if (d * d != m) s += ipow(BigInt(m / d), k);
    }
    return s;
}

// cnt[m] = #{b : N(b) = m} for m < delta
std::vector<long> norm_counts(long delta, const FieldSpec& f) {
    std::vector<long> cnt(delta, 0);
    lattice_disk(f, 1, 0, 0, 0, delta, [&](i128 x, i128 y) {
        i128 nb = x * x + (i128)f.t * x * y + (i128)f.n * y * y;
        cnt[(size_t)nb]++;
    });
    return cnt;
}

}  // namespace

bool HermitianForm::operator<(const HermitianForm& o) const {
    return std::make_tuple(a, b.real(), b.imag_coeff(), c) < std::make_tuple(o.a, o.b.real(), o.b.imag_coeff(), o.c);
}

std::string HermitianForm::str() const { return "(" + a.get_str() + ", " + b.str() + ", " + c.get_str() + ")"; }

Rational eval(const HermitianForm& h, const QuadElem& z) {
    QuadElem bz = QuadElem(h.b) * z;
    return Rational(h.a) * z.norm() + bz.trace() + Rational(h.c);
}

double eval(const HermitianForm& h, Complex z) {
    Complex bz = h.b.to_complex() * z;
    return h.a.get_d() * std::norm(z) + 2 * bz.real() + h.c.get_d();
}

HermitianForm act(const GroupElement& g, const HermitianForm& h) {
    const QuadInt &r = g.a, &s = g.b, &t = g.c, &v = g.e;
    BigInt a = h.a * r.norm() + (r * t.conj() * h.b).trace() + h.c * t.norm();
    QuadInt b = r * s.conj() * h.a + r * v.conj() * h.b + t * s.conj() * h.b.conj() + t * v.conj() * h.c;
    BigInt c = h.a * s.norm() + (s * v.conj() * h.b).trace() + h.c * v.norm();
    return {a, b, c};
}

HermitianForm act_hermitian(const GroupElement& g, const HermitianForm& h) { return act(g.conj(), h); }

void require_non_norm(const BigInt& delta, const FieldSpec& f) {
    require(delta >= 1, "delta must be a positive integer");
    auto w = norm_witness(delta, f);
    if (w) throw PreconditionError(delta.get_str() + " = N(" + w->str() + ") is a norm in O_" + std::to_string(f.d));
}

void require_odd_k(int k) { require(k >= 1 && k % 2 == 1, "k must be an odd integer >= 1"); }

BigInt alpha(int k, const BigInt& delta, const FieldSpec& f) {
    require_odd_k(k);
    require_non_norm(delta, f);
    long D = to_long(delta, "delta");
    auto cnt = norm_counts(D, f);
    BigInt s = 0;
    for (long m = 0; m < D; ++m)
        if (cnt[m]) s += cnt[m] * sigma_k(D - m, k);
    return s;
}

BigInt alpha_by_forms(int k, const BigInt& delta, const FieldSpec& f) {
    require_odd_k(k);
    require_non_norm(delta, f);
    BigInt s = 0;
    for (const auto& h : enumerate_window(QuadElem(f), delta)) s += ipow(h.c, k);
    return s;
}

std::vector<HermitianForm> transfer_forms(const BigInt& delta, const FieldSpec& f) {
    require_non_norm(delta, f);
    long D = to_long(delta, "delta");
    std::vector<HermitianForm> out;
    lattice_disk(f, 1, 0, 0, 0, D, [&](i128 x, i128 y) {
        QuadInt b(f, big(x), big(y));
        long m = D - b.norm().get_si();
        for (long a = 1; a <= m; ++a)
            if (m % a == 0) out.push_back({BigInt(a), b, BigInt(-m / a)});
    });
    std::sort(out.begin(), out.end());
    return out;
}

BiPoly expand_P(int k, const BigInt& delta, const FieldSpec& f) {
    require_odd_k(k);
    auto forms = transfer_forms(delta, f);
    std::vector<std::vector<BigInt>> binom(k + 1, std::vector<BigInt>(k + 1, 0));
    for (int n = 0; n <= k; ++n) {
        binom[n][0] = 1;
        for (int r = 1; r <= n; ++r) binom[n][r] = binom[n - 1][r - 1] + (r <= n - 1 ? binom[n - 1][r] : BigInt(0));
    }
    std::vector<QuadInt> acc((k + 1) * (k + 1), QuadInt(f));
    for (const auto& h : forms) {
        std::vector<BigInt> ap(k + 1), cp(k + 1);
        std::vector<QuadInt> bp(k + 1, QuadInt(f, 1)), bbp(k + 1, QuadInt(f, 1));
        ap[0] = cp[0] = 1;
        QuadInt bb = h.b.conj();
        for (int i = 1; i <= k; ++i) {
            ap[i] = ap[i - 1] * h.a;
            cp[i] = cp[i - 1] * h.c;
            bp[i] = bp[i - 1] * h.b;
            bbp[i] = bbp[i - 1] * bb;
        }
        // (a z zb + b z + conj(b) zb + c)^k
        for (int i = 0; i <= k; ++i)
            for (int j = 0; i + j <= k; ++j)
                for (int l = 0; i + j + l <= k; ++l) {
                    int m = k - i - j - l;
                    BigInt mult = binom[k][i] * binom[k - i][j] * binom[k - i - j][l] * ap[i] * cp[m];
                    acc[(i + j) * (k + 1) + (i + l)] += bp[j] * bbp[l] * mult;
                }
    }
    BiPoly p(f, k);
    for (int i = 0; i <= k; ++i)
        for (int j = 0; j <= k; ++j) p.coeff(i, j) = QuadElem(acc[i * (k + 1) + j]);
    return p;
}

BigInt lattice_denominator(const QuadElem& z) { return z.den(); }

std::vector<HermitianForm> enumerate_window(const QuadElem& z, const BigInt& delta) {
    const auto& f = z.field();
    require(delta >= 1, "delta must be a positive integer");
    long D = to_long(z.den(), "denominator");
    long wx = to_long(z.num().x(), "numerator"), wy = to_long(z.num().y(), "numerator");
    long dl = to_long(delta, "delta");
    BigInt bound_big = delta * z.den() * z.den();
    require(bound_big < BigInt("1000000000000"), "enumeration bound delta*den^2 too large");
    const i128 A = (i128)dl * D * D;
    std::vector<HermitianForm> out;
    for (i128 a = -1; a >= -A; --a) {
        // beta = conj(b) with N(D beta + a w) < delta D^2
        lattice_disk(f, D, a, wx, wy, A, [&](i128 x, i128 y) {
            i128 nb = x * x + (i128)f.t * x * y + (i128)f.n * y * y;
            i128 num = nb - dl;
            if (num % a != 0) return;
            QuadInt beta(f, big(x), big(y));
            out.push_back({big(a), beta.conj(), big(num / a)});
        });
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace hermitia
