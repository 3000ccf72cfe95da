#include "hermitia/hsum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace hermitia {

std::string method_name(EvalMethod m) {
    switch (m) {
        case EvalMethod::ExactEnumeration: return "exact-enumeration";
        case EvalMethod::Truncated: return "truncated";
        case EvalMethod::CfAccelerated: return "cf-accelerated";
    }
    return "?";
}

HEvalReport eval_exact_report(int k, const BigInt& delta, const QuadElem& z) {
    HEvalReport r;
    r.method = EvalMethod::ExactEnumeration;
    require_odd_k(k);
    require_non_norm(delta, z.field());
    auto forms = enumerate_window(z, delta);
    Rational sum = 0;
    for (const auto& h : forms) {
        Rational v = eval(h, z), p = 1;
        for (int i = 0; i < k; ++i) p *= v;
        sum += p;
    }
    sum.canonicalize();
    r.exact = sum;
    r.value = sum.get_d();
    r.terms_used = (long)forms.size();
    return r;
}

Rational eval_exact(int k, const BigInt& delta, const QuadElem& z) { return *eval_exact_report(k, delta, z).exact; }

double partial_sum(int k, long delta, Complex z, long a_max, const FieldSpec& f, long* terms) {
    const double h = f.lattice_height(), half_t = f.t / 2.0;
    const double R = std::sqrt((double)delta);
    double sum = 0;
    long count = 0;
    for (long m = 1; m <= a_max; ++m) {
        // conj(b) = x + y w near m z
        Complex c = double(m) * z;
        long y0 = (long)std::ceil((c.imag() - R) / h), y1 = (long)std::floor((c.imag() + R) / h);
        for (long y = y0; y <= y1; ++y) {
            double dy = y * h - c.imag();
            double rem = delta - dy * dy;
            if (rem <= 0) continue;
            double w = std::sqrt(rem), cx = c.real() - y * half_t;
            long x0 = (long)std::ceil(cx - w), x1 = (long)std::floor(cx + w);
            for (long x = x0; x <= x1; ++x) {
                long nb = x * x + f.t * x * y + f.n * y * y;
                if ((nb - delta) % m != 0) continue;
                double dx = x - cx;
                double v = (delta - dx * dx - dy * dy) / m;
                if (v <= 0) continue;
                sum += std::pow(v, k);
                ++count;
            }
        }
    }
    if (terms) *terms = count;
    return sum;
}

double tail_bound(int k, long delta, long a_max, const FieldSpec& f) {
    if (k <= 1) return std::numeric_limits<double>::infinity();
    // covering radius < 1 for all five lattices
    double per_a = M_PI * std::pow(std::sqrt((double)delta) + 1, 2) / f.covolume();
    return per_a * std::pow((double)delta, k) * std::pow((double)std::max(a_max, 1L), 1 - k) / (k - 1);
}

HEvalReport eval_truncated(int k, long delta, Complex z, long a_max, const FieldSpec& f) {
    require_odd_k(k);
    require(k >= 3, "truncated evaluation needs k >= 3");
    require(a_max >= 1, "a_max must be positive");
    require_non_norm(delta, f);
    HEvalReport r;
    r.method = EvalMethod::Truncated;
    r.value = partial_sum(k, delta, z, a_max, f, &r.terms_used);
    r.truncation_bound = tail_bound(k, delta, a_max, f);
    return r;
}

bool reduction_identity_check(int k, const BigInt& delta, const QuadElem& z) {
    require(!z.is_zero(), "z must be nonzero");
    Rational n = z.norm(), nk = 1;
    for (int i = 0; i < k; ++i) nk *= n;
    Rational lhs = nk * eval_exact(k, delta, z.inverse()) - eval_exact(k, delta, z);
    QuadElem rhs = expand_P(k, delta, z.field()).eval(z);
    return rhs.is_rational() && rhs.as_rational() == lhs;
}

double average_quadrature(int k, long delta, const FieldSpec& f, int grid_n, long a_max, int threads) {
    require_odd_k(k);
    require(grid_n >= 1, "grid_n must be positive");
    require_non_norm(delta, f);
    Complex w = f.reduced_omega().to_complex();
    std::vector<double> rows(grid_n, 0.0);
    auto work = [&](int first, int stride) {
        for (int i = first; i < grid_n; i += stride) {
            double row = 0;
            for (int j = 0; j < grid_n; ++j) {
                Complex z = (i + 0.5) / grid_n + (j + 0.5) / grid_n * w;
                row += partial_sum(k, delta, z, a_max, f);
            }
            rows[i] = row;
        }
    };
    int nt = threads > 0 ? threads : (int)std::max(1u, std::thread::hardware_concurrency());
    nt = std::min(nt, grid_n);
    std::vector<std::thread> pool;
    for (int t = 1; t < nt; ++t) pool.emplace_back(work, t, nt);
    work(0, nt);
    for (auto& th : pool) th.join();
    double total = 0;
    for (double r : rows) total += r;
    return total / (double(grid_n) * grid_n);
}

}  // namespace hermitia
