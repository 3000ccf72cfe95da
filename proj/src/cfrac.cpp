#include "hermitia/cfrac.hpp"

#include <map>

#include "hermitia/lfun.hpp"

namespace hermitia {

namespace {

struct ExactOps {
    using V = QuadElem;
    const FieldSpec& f;
    QuadInt round(const V& z) const { return nearest_int(z); }
    V sub(const V& z, const QuadInt& a) const { return z - QuadElem(a); }
    V mul(const V& x, const V& y) const { return x * y; }
    V one() const { return QuadElem(f, Rational(1)); }
    bool is_zero(const V& z) const { return z.is_zero(); }
    V inv(const V& z) const { return z.inverse(); }
    Complex view(const V& z) const { return z.to_complex(); }
    void record(CFExpansion& cf, const V& d) const { cf.deltas_exact.push_back(d); }
    void record_zero(CFExpansion& cf) const { cf.deltas_exact.push_back(QuadElem(f)); }
};

struct Cx {
    Real re, im;
};

struct FloatOps {
    using V = Cx;
    const FieldSpec& f;
    Real height;  // Im(w)
    Real eps;     // remainders below this count as zero
    QuadInt round(const V& z) const { return nearest_int(view(z), f); }
    V sub(const V& z, const QuadInt& a) const {
        Real y(a.y().get_mpz_t()), x(a.x().get_mpz_t());
        return {z.re - x - y * f.t / 2, z.im - y * height};
    }
    V mul(const V& a, const V& b) const { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
    V one() const { return {Real(1), Real(0)}; }
    bool is_zero(const V& z) const { return abs(z.re) + abs(z.im) < eps; }
    V inv(const V& z) const {
        Real n = z.re * z.re + z.im * z.im;
        return {z.re / n, -z.im / n};
    }
    Complex view(const V& z) const { return {z.re.convert_to<double>(), z.im.convert_to<double>()}; }
    void record(CFExpansion&, const V&) const {}
    void record_zero(CFExpansion&) const {}
};

template <class Ops>
void drive(CFExpansion& cf, typename Ops::V z, int max_steps, const Ops& ops) {
    require(max_steps >= 1, "max_steps must be >= 1");
    auto delta = ops.one();
    cf.deltas.push_back(ops.view(delta));
    ops.record(cf, delta);
    for (int n = 0; n < max_steps; ++n) {
        QuadInt a = ops.round(z);
        cf.alphas.push_back(a);
        cf.p.push_back(a * cf.p_at(n - 1) + cf.p_at(n - 2));
        cf.q.push_back(a * cf.q_at(n - 1) + cf.q_at(n - 2));
        auto r = ops.sub(z, a);
        // delta_{n+1} = delta_n (z_n - a_n)
        delta = ops.mul(delta, r);
        if (ops.is_zero(r)) {
            cf.terminated = true;
            cf.deltas.push_back(Complex(0, 0));
            ops.record_zero(cf);
            return;
        }
        cf.deltas.push_back(ops.view(delta));
        ops.record(cf, delta);
        z = ops.inv(r);
    }
}

}  // namespace

QuadInt CFExpansion::p_at(long n) const {
    require(n >= -2 && n < (long)p.size(), "convergent index out of range");
    if (n == -2) return QuadInt(*field);
    if (n == -1) return QuadInt(*field, 1);
    return p[n];
}

QuadInt CFExpansion::q_at(long n) const {
    require(n >= -2 && n < (long)q.size(), "convergent index out of range");
    if (n == -2) return QuadInt(*field, 1);
    if (n == -1) return QuadInt(*field);
    return q[n];
}

CFExpansion hurwitz_cf(const QuadElem& z, int max_steps) {
    CFExpansion cf;
    cf.field = &z.field();
    cf.z_exact = z;
    cf.z = z.to_complex();
    drive(cf, z, max_steps, ExactOps{z.field()});
    return cf;
}

CFExpansion hurwitz_cf(Complex z, int max_steps, const FieldSpec& f, int bits) {
    // the double input is taken as the exact dyadic rational it holds; its expansion
    // can reach |q| ~ 2^30, so z_n needs well over 2 * 60 bits
    int work = std::max(bits, 256);
    PrecisionScope scope(work);
    CFExpansion cf;
    cf.field = &f;
    cf.z = z;
    FloatOps ops{f, sqrt(Real(-f.t)) / 2, ldexp(Real(1), -work / 2)};
    drive(cf, Cx{Real(z.real()), Real(z.imag())}, max_steps, ops);
    return cf;
}

GroupElement gamma_matrix(const CFExpansion& cf, long n) {
    require(n >= 0 && n <= (long)cf.size(), "gamma index out of range");
    return {cf.q_at(n - 2), -cf.p_at(n - 2), -cf.q_at(n - 1), cf.p_at(n - 1)};
}

DecayReport delta_decay(Complex z, int n, const FieldSpec& f) {
    require(n >= 1, "n must be >= 1");
    CFExpansion cf = hurwitz_cf(z, n, f);
    DecayReport r;
    r.rational_detected = cf.terminated;
    for (size_t i = 1; i < cf.deltas.size(); ++i) r.abs_deltas.push_back(std::abs(cf.deltas[i]));
    for (size_t i = 1; i < r.abs_deltas.size(); ++i)
        if (r.abs_deltas[i - 1] > 0) r.max_ratio = std::max(r.max_ratio, r.abs_deltas[i] / r.abs_deltas[i - 1]);
    return r;
}

namespace {

// h(z, w) at complex arguments
double eval2(const HermitianForm& g, Complex z, Complex w) {
    Complex bzw = g.b.to_complex() * z * std::conj(w);
    return g.a.get_d() * std::norm(z) + 2 * bzw.real() + g.c.get_d() * std::norm(w);
}

// forms act(gamma_n, g) with a < 0 < h(z,1), paired with h(z,1)
std::map<HermitianForm, double> phi_values(const CFExpansion& cf, const BigInt& delta) {
    auto base = transfer_forms(delta, *cf.field);
    std::map<HermitianForm, double> out;
    for (long n = 0; n <= (long)cf.size(); ++n) {
        GroupElement g = gamma_matrix(cf, n);
        // act(gamma_n, g)(z, 1) = g(delta_{n-1}, delta_n), delta_{-1} = z
        Complex prev = n == 0 ? cf.z : cf.deltas[n - 1], cur = cf.deltas[n];
        for (const auto& b : base) {
            HermitianForm h = act(g, b);
            if (h.a >= 0) continue;
            double v;
            if (cf.z_exact) {
                Rational e = eval(h, *cf.z_exact);
                if (e <= 0) continue;
                v = e.get_d();
            } else {
                v = eval2(b, prev, cur);
                if (v <= 0) continue;
            }
            out.emplace(h, v);
        }
    }
    return out;
}

}  // namespace

std::vector<HermitianForm> phi_image(const CFExpansion& cf, const BigInt& delta) {
    std::vector<HermitianForm> out;
    for (const auto& [h, v] : phi_values(cf, delta)) out.push_back(h);
    return out;
}

HEvalReport eval_cf_accelerated(int k, long delta, Complex z, int steps, const FieldSpec& f) {
    require_odd_k(k);
    require(steps >= 2, "steps must be >= 2");
    require_non_norm(delta, f);
    auto sum_of = [&](const std::map<HermitianForm, double>& forms) {
        double s = 0;
        for (const auto& [h, v] : forms) s += std::pow(v, k);
        return s;
    };
    CFExpansion cf = hurwitz_cf(z, steps, f);
    auto forms = phi_values(cf, delta);
    HEvalReport r;
    r.method = EvalMethod::CfAccelerated;
    r.value = sum_of(forms);
    r.terms_used = (long)forms.size();
    if (cf.terminated) {
        r.truncation_bound = 0.0;
    } else {
        CFExpansion shorter = hurwitz_cf(z, steps - 1, f);
        r.truncation_bound = std::abs(r.value - sum_of(phi_values(shorter, delta)));
    }
    return r;
}

}  // namespace hermitia
