#include <doctest.h>

#include "hermitia/hsum.hpp"
#include "hermitia/lfun.hpp"
#include "support.hpp"

using namespace hermitia;

namespace {

std::vector<BigInt> deltas(const FieldSpec& f, int n = 3) { return smallest_non_norms(f, n); }

}  // namespace

TEST_CASE("eval_exact examples") {
    const auto& f1 = FieldSpec::get(1);
    CHECK(eval_exact(1, 3, QuadElem(f1)) == 20);
    CHECK(eval_exact(1, 3, QuadElem(f1, Rational(1, 2))) == 20);
    auto rep = eval_exact_report(3, 3, QuadElem(f1, Rational(1, 2)));
    CHECK(rep.method == EvalMethod::ExactEnumeration);
    CHECK(!rep.truncation_bound);
    CHECK(*rep.exact == 68);
    CHECK_THROWS_AS(eval_exact(1, 4, QuadElem(f1)), PreconditionError);
    CHECK_THROWS_AS(eval_exact(2, 3, QuadElem(f1)), PreconditionError);

    // d=2 is outside the constancy theorem; values are recorded, not compared
    const auto& f2 = FieldSpec::get(2);
    Rational h0 = eval_exact(3, 5, QuadElem(f2)), h3 = eval_exact(3, 5, QuadElem(f2, Rational(1, 3)));
    MESSAGE("d=2 delta=5 k=3: H(0) = " << h0.get_str() << ", H(1/3) = " << h3.get_str());
    CHECK(h0 == alpha(3, 5, f2));
    CHECK(h3 > 0);
}

TEST_CASE("constancy for k = 1, all fields") {
    for (int d : FieldSpec::all_d()) {
        const auto& f = FieldSpec::get(d);
        for (const auto& delta : deltas(f)) {
            BigInt a = alpha(1, delta, f);
            for (int it = 0; it < 100; ++it) CHECK(eval_exact(1, delta, testgen::quad_elem(f)) == a);
        }
    }
}

TEST_CASE("constancy for k = 3 (d = 1, 3, 7) and k = 5 (d = 3)") {
    for (int d : {1, 3, 7}) {
        const auto& f = FieldSpec::get(d);
        for (const auto& delta : deltas(f)) {
            BigInt a = alpha(3, delta, f);
            for (int it = 0; it < 100; ++it) CHECK(eval_exact(3, delta, testgen::quad_elem(f)) == a);
        }
    }
    const auto& f3 = FieldSpec::get(3);
    for (const auto& delta : deltas(f3)) {
        BigInt a = alpha(5, delta, f3);
        for (int it = 0; it < 100; ++it) CHECK(eval_exact(5, delta, testgen::quad_elem(f3)) == a);
    }
}

TEST_CASE("conjugation, translation and unit invariance") {
    for (int d : FieldSpec::all_d()) {
        const auto& f = FieldSpec::get(d);
        BigInt delta = deltas(f, 1)[0];
        for (int it = 0; it < 50; ++it) {
            QuadElem z = testgen::quad_elem(f, 8);
            Rational h = eval_exact(3, delta, z);
            CHECK(eval_exact(3, delta, z.conj()) == h);
            QuadElem lam(testgen::quad_int(f, 4));
            CHECK(eval_exact(3, delta, z + lam) == h);
            for (const auto& u : f.units()) CHECK(eval_exact(3, delta, QuadElem(u) * z) == h);
        }
    }
}

TEST_CASE("reduction identity") {
    const auto& f1 = FieldSpec::get(1);
    CHECK(reduction_identity_check(1, 3, QuadElem(f1, Rational(1, 2))));
    CHECK(Rational(1, 4) * eval_exact(1, 3, QuadElem(f1, Rational(2))) - eval_exact(1, 3, QuadElem(f1, Rational(1, 2))) == -15);
    CHECK_THROWS_AS(reduction_identity_check(1, 3, QuadElem(f1)), PreconditionError);
    for (int d : FieldSpec::all_d()) {
        const auto& f = FieldSpec::get(d);
        BigInt delta = deltas(f, 1)[0];
        for (int k : {1, 3})
            for (int it = 0; it < 100; ++it) CHECK(reduction_identity_check(k, delta, testgen::quad_ratio(f)));
    }
}

TEST_CASE("truncated evaluation") {
    const auto& f1 = FieldSpec::get(1);
    auto r = eval_truncated(3, 3, Complex(0.3, 0.4), 200, f1);
    CHECK(r.method == EvalMethod::Truncated);
    REQUIRE(r.truncation_bound);
    CHECK(std::abs(r.value - 68) <= *r.truncation_bound);
    CHECK_THROWS_AS(eval_truncated(1, 3, Complex(0.3, 0.4), 200, f1), PreconditionError);

    double prev = tail_bound(3, 3, 1, f1);
    for (long a = 2; a < 1000; a += 7) {
        double b = tail_bound(3, 3, a, f1);
        CHECK(b < prev);
        prev = b;
    }

    // same index set as the exact window
    for (int d : FieldSpec::all_d()) {
        const auto& f = FieldSpec::get(d);
        long delta = deltas(f, 1)[0].get_si();
        for (int it = 0; it < 20; ++it) {
            QuadElem z = testgen::quad_elem(f, 6);
            long den = z.den().get_si();
            for (int k : {3, 5}) {
                auto ex = eval_exact_report(k, delta, z);
                auto tr = eval_truncated(k, delta, z.to_complex(), delta * den * den, f);
                CHECK(tr.value == doctest::Approx(ex.value).epsilon(1e-9));
                CHECK(tr.terms_used == ex.terms_used);
            }
        }
    }
}

TEST_CASE("truncated evaluation stabilizes within the tail bound") {
    for (int d : FieldSpec::all_d()) {
        const auto& f = FieldSpec::get(d);
        long delta = deltas(f, 1)[0].get_si();
        for (int it = 0; it < 10; ++it) {
            Complex z(testgen::uniform_real(-1, 1), testgen::uniform_real(-1, 1));
            for (long a = 25; a <= 400; a *= 2) {
                auto lo = eval_truncated(3, delta, z, a, f), hi = eval_truncated(3, delta, z, 2 * a, f);
                CHECK(hi.value >= lo.value);
                CHECK(hi.value - lo.value <= *lo.truncation_bound);
            }
        }
    }
}

TEST_CASE("average value") {
    const auto& f1 = FieldSpec::get(1);
    // (9 pi / 2) (5/6) zeta(2) / L(chi_-4, 3)
    double rhs = (9 * M_PI / 2) * (5.0 / 6.0) * (M_PI * M_PI / 6) / (std::pow(M_PI, 3) / 32);
    CHECK(rhs == doctest::Approx(20).epsilon(1e-12));
    CHECK(average_formula(1, 3, f1) == doctest::Approx(20).epsilon(1e-12));
    CHECK(average_quadrature(1, 3, f1, 16, 400) == doctest::Approx(20).epsilon(0.03));

    const auto& f2 = FieldSpec::get(2);
    double q = average_quadrature(3, 5, f2, 64, 300);
    CHECK(q == doctest::Approx(average_formula(3, 5, f2)).epsilon(0.02));
    // fixed summation order
    CHECK(average_quadrature(3, 5, f2, 8, 50, 1) == average_quadrature(3, 5, f2, 8, 50, 4));
}
