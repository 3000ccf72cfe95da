#include <doctest.h>

#include "hermitia/cfrac.hpp"
#include "hermitia/lfun.hpp"
#include "support.hpp"

using namespace hermitia;

namespace {

// circumradius of the triangle 0, 1, reduced omega
double covering_radius(const FieldSpec& f) {
    Complex w = f.reduced_omega().to_complex();
    double a = 1, b = std::abs(w), c = std::abs(w - 1.0);
    return a * b * c / (4 * (f.lattice_height() / 2));
}

struct RC {
    Real re, im;
};

RC to_rc(const QuadInt& v, const FieldSpec& f) {
    Real x(v.x().get_mpz_t()), y(v.y().get_mpz_t());
    return {x + y * f.t / 2, y * sqrt(Real(-f.t)) / 2};
}

Real rc_abs(const RC& v) { return sqrt(v.re * v.re + v.im * v.im); }

}  // namespace

TEST_CASE("expansion examples") {
    const auto& f1 = FieldSpec::get(1);
    auto half = hurwitz_cf(QuadElem(f1, Rational(1, 2)), 10);
    REQUIRE(half.size() == 2);
    CHECK(half.alphas[0] == QuadInt(f1));
    CHECK(half.alphas[1] == QuadInt(f1, 2));
    CHECK(half.terminated);
    CHECK(QuadElem(half.p.back()) / QuadElem(half.q.back()) == QuadElem(f1, Rational(1, 2)));

    QuadInt i = f1.reduced_omega();
    auto ci = hurwitz_cf(QuadElem(i), 10);
    REQUIRE(ci.size() == 1);
    CHECK(ci.alphas[0] == i);
    CHECK(ci.alphas[0].str() == "i");
    CHECK(ci.terminated);

    auto c0 = hurwitz_cf(QuadElem(f1), 10);
    REQUIRE(c0.size() == 1);
    CHECK(c0.alphas[0] == QuadInt(f1));
    CHECK(c0.terminated);
    CHECK_THROWS_AS(hurwitz_cf(QuadElem(f1), 0), PreconditionError);
}

TEST_CASE("determinant and delta identities on K") {
    for (int d : FieldSpec::all_d()) {
        const auto& f = FieldSpec::get(d);
        for (int it = 0; it < 200; ++it) {
            QuadElem z = testgen::quad_elem(f);
            auto cf = hurwitz_cf(z, 200);
            REQUIRE(cf.terminated);
            for (long n = -1; n + 1 < (long)cf.size(); ++n) {
                QuadInt det = cf.p_at(n + 1) * cf.q_at(n) - cf.p_at(n) * cf.q_at(n + 1);
                CHECK(det == QuadInt(f, (n % 2 == 0) ? 1 : -1));
            }
            for (long n = 0; n < (long)cf.deltas_exact.size(); ++n) {
                QuadElem rhs = QuadElem(cf.q_at(n - 1)) * z - QuadElem(cf.p_at(n - 1));
                if (n % 2 == 0) rhs = -rhs;
                CHECK(cf.deltas_exact[n] == rhs);
            }
            // recurrence delta_{n+1} = delta_{n-1} - a_n delta_n
            for (size_t n = 1; n + 1 < cf.deltas_exact.size(); ++n)
                CHECK(cf.deltas_exact[n + 1] == cf.deltas_exact[n - 1] - QuadElem(cf.alphas[n]) * cf.deltas_exact[n]);
            CHECK(cf.deltas_exact.back().is_zero());
            CHECK(QuadElem(cf.p.back()) / QuadElem(cf.q.back()) == z);
        }
    }
}

TEST_CASE("gamma matrices carry z to z_n") {
    for (int d : FieldSpec::all_d()) {
        const auto& f = FieldSpec::get(d);
        for (int it = 0; it < 30; ++it) {
            QuadElem z = testgen::quad_elem(f);
            auto cf = hurwitz_cf(z, 200);
            QuadElem zn = z;
            for (long n = 0; n < (long)cf.size(); ++n) {
                GroupElement g = gamma_matrix(cf, n);
                QuadInt det = g.det();
                CHECK((det == QuadInt(f, 1) || det == QuadInt(f, -1)));
                QuadElem img = (QuadElem(g.a) * z + QuadElem(g.b)) / (QuadElem(g.c) * z + QuadElem(g.e));
                CHECK(img == zn);
                QuadElem r = zn - QuadElem(cf.alphas[n]);
                if (r.is_zero()) break;
                zn = r.inverse();
            }
        }
    }
}

TEST_CASE("float path agrees with the exact path on exactly representable points") {
    auto dyadic = [](long span) {
        long e = testgen::uniform(0, 6);
        Rational r(testgen::uniform(-span << e, span << e), 1L << e);
        r.canonicalize();
        return r;
    };
    const auto& f1 = FieldSpec::get(1);
    for (int it = 0; it < 200; ++it) {
        QuadElem z = QuadElem::from_display(f1, dyadic(3), dyadic(3));
        auto ex = hurwitz_cf(z, 200);
        auto fl = hurwitz_cf(z.to_complex(), 200, f1);
        CHECK(fl.terminated);
        CHECK(fl.alphas == ex.alphas);
    }
    for (int d : FieldSpec::all_d()) {
        const auto& f = FieldSpec::get(d);
        for (int it = 0; it < 50; ++it) {
            QuadElem z(f, dyadic(5));
            auto ex = hurwitz_cf(z, 200);
            auto fl = hurwitz_cf(z.to_complex(), 200, f);
            CHECK(fl.terminated);
            CHECK(fl.alphas == ex.alphas);
        }
    }
}

TEST_CASE("float expansions: identities and convergence") {
    PrecisionScope scope(256);
    for (int d : FieldSpec::all_d()) {
        const auto& f = FieldSpec::get(d);
        for (int it = 0; it < 100; ++it) {
            Complex z(testgen::uniform_real(-2, 2), testgen::uniform_real(-2, 2));
            // a double is itself a point of K when d = 1, so the expansion may end early
            auto cf = hurwitz_cf(z, 30, f);
            RC zr{Real(z.real()), Real(z.imag())};
            for (long n = -1; n + 1 < (long)cf.size(); ++n) {
                QuadInt det = cf.p_at(n + 1) * cf.q_at(n) - cf.p_at(n) * cf.q_at(n + 1);
                CHECK(det == QuadInt(f, (n % 2 == 0) ? 1 : -1));
            }
            for (long n = 1; n < (long)cf.deltas.size(); ++n) {
                RC p = to_rc(cf.p_at(n - 1), f), q = to_rc(cf.q_at(n - 1), f);
                Real re = q.re * zr.re - q.im * zr.im - p.re, im = q.re * zr.im + q.im * zr.re - p.im;
                double sign = (n % 2 == 0) ? -1 : 1;
                Complex expect(sign * re.convert_to<double>(), sign * im.convert_to<double>());
                CHECK(std::abs(cf.deltas[n] - expect) <= 1e-9 * std::abs(expect));
            }
            Real prev = -1;
            for (size_t n = 0; n < cf.size(); ++n) {
                RC p = to_rc(cf.p[n], f), q = to_rc(cf.q[n], f);
                Real qn = q.re * q.re + q.im * q.im;
                // p/q = p conj(q) / |q|^2
                Real re = (p.re * q.re + p.im * q.im) / qn, im = (p.im * q.re - p.re * q.im) / qn;
                Real err = rc_abs({zr.re - re, zr.im - im});
                if (prev >= 0) CHECK(err < prev);
                prev = err;
            }
            CHECK(prev < 1e-8);
            if (cf.terminated) CHECK(prev == 0);
        }
    }
}

TEST_CASE("delta decay") {
    const auto& f1 = FieldSpec::get(1);
    auto r = delta_decay(Complex(M_E, 0), 20, f1);
    CHECK(!r.rational_detected);
    REQUIRE(r.abs_deltas.size() == 20);
    for (size_t i = 1; i < r.abs_deltas.size(); ++i) CHECK(r.abs_deltas[i] < r.abs_deltas[i - 1]);
    CHECK(r.max_ratio < 1);
    CHECK(covering_radius(f1) == doctest::Approx(std::sqrt(2.0) / 2));
    for (int d : FieldSpec::all_d()) {
        const auto& f = FieldSpec::get(d);
        for (int it = 0; it < 200; ++it) {
            Complex z(testgen::uniform_real(-5, 5), testgen::uniform_real(-5, 5));
            CHECK(delta_decay(z, 1, f).abs_deltas[0] <= covering_radius(f) + 1e-12);
        }
    }
    auto q = delta_decay(Complex(0.5, 0.25), 20, f1);
    CHECK(q.rational_detected);
    CHECK(q.abs_deltas.back() == 0);
    CHECK(q.abs_deltas.size() < 20);
}

TEST_CASE("continued-fraction images of the transfer forms give the window") {
    for (int d : FieldSpec::all_d()) {
        const auto& f = FieldSpec::get(d);
        BigInt delta = smallest_non_norms(f, 1)[0];
        for (int it = 0; it < (d == 1 ? 12 : 6); ++it) {
            QuadElem z = testgen::quad_elem(f, 5, 1);
            auto cf = hurwitz_cf(z, 200);
            CHECK_MESSAGE(phi_image(cf, delta) == enumerate_window(z, delta), "d=" << d << " z=" << z.str());
        }
    }
    const auto& f1 = FieldSpec::get(1);
    for (const char* s : {"1/2", "1/3", "2/5"}) {
        QuadElem z = QuadElem::from_display(f1, parse_rational(s), Rational(1, 3));
        CHECK(phi_image(hurwitz_cf(z, 200), 3) == enumerate_window(z, 3));
    }
}

TEST_CASE("cf-accelerated evaluation for k = 1") {
    const auto& f1 = FieldSpec::get(1);
    auto r = eval_cf_accelerated(1, 3, Complex(0.3, 0.4), 30, f1);
    CHECK(r.method == EvalMethod::CfAccelerated);
    CHECK(method_name(r.method) == "cf-accelerated");
    CHECK(r.value == doctest::Approx(20).epsilon(1e-9));
    REQUIRE(r.truncation_bound);
    CHECK(*r.truncation_bound < 1e-6);
    for (int d : FieldSpec::all_d()) {
        const auto& f = FieldSpec::get(d);
        long delta = smallest_non_norms(f, 1)[0].get_si();
        double a = alpha(1, delta, f).get_d();
        for (int it = 0; it < 10; ++it) {
            Complex z(testgen::uniform_real(-1, 1), testgen::uniform_real(-1, 1));
            CHECK(eval_cf_accelerated(1, delta, z, 30, f).value == doctest::Approx(a).epsilon(1e-8));
        }
    }
}
