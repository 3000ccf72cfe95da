#include <doctest.h>

#include "hermitia/reports.hpp"
#include "support.hpp"

using namespace hermitia;

namespace {

template <class T>
void round_trip(const T& x) {
    Json j = to_json(x);
    T back = from_json<T>(Json::parse(j.dump()));
    CHECK(back == x);
    CHECK(to_json(back) == j);
}

BiPoly random_poly(const FieldSpec& f, int k) {
    BiPoly p(f, k);
    for (int i = 0; i <= k; ++i)
        for (int j = 0; j <= k; ++j)
            if (testgen::uniform(0, 2) == 0) p.coeff(i, j) = testgen::quad_elem(f, 9, 5);
    return p;
}

}  // namespace

TEST_CASE("json scalars round-trip") {
    for (int d : FieldSpec::all_d()) {
        const auto& f = FieldSpec::get(d);
        for (int t = 0; t < 50; ++t) {
            QuadElem z = testgen::quad_elem(f, 12, 20);
            CHECK(quad_elem_from_json(Json::parse(to_json(z).dump()), f) == z);
            QuadInt a = testgen::quad_int(f, 1000);
            CHECK(quad_int_from_json(to_json(a), f) == a);
            BiPoly p = random_poly(f, (int)testgen::uniform(0, 5));
            CHECK(bipoly_from_json(Json::parse(to_json(p).dump()), f) == p);
        }
    }
    CHECK(rational_from_json(to_json(Rational(-7, 12))) == Rational(-7, 12));
    CHECK(to_json(Rational(4)) == "4");
}

TEST_CASE("non-integral json element is rejected as an integer") {
    const auto& f = FieldSpec::get(1);
    CHECK_THROWS(quad_int_from_json(to_json(QuadElem(f, Rational(1, 2))), f));
}

TEST_CASE("report types round-trip") {
    for (int d : FieldSpec::all_d()) {
        const auto& f = FieldSpec::get(d);
        long delta = smallest_non_norms(f, 1)[0].get_si();
        round_trip(run_alpha(d, 3, delta));
        round_trip(run_theta(d, delta, 4));
        round_trip(run_rcount(d, delta, 12));
        round_trip(run_hconst(d, 1, delta, 8, 99));
        round_trip(run_expandp(d, 3, delta));
        round_trip(run_cfrac(d, "5/11", "-2/7", 30, false, 128));
        round_trip(run_cfrac(d, "5/11", "-2/7", 30, true, 128));
        round_trip(wkk(d, 5));
        for (const auto& row : dimension_table(d, 1, 5)) round_trip(row);
        round_trip(eval_exact_report(1, delta, testgen::quad_elem(f)));
        round_trip(eval_truncated(3, delta, {0.3, 0.4}, 20, f));
        if (cohen_zagier_in_scope(d, 3)) round_trip(cohen_zagier(f, 3));
        if (cohen_zagier_in_scope(d, -2)) round_trip(cohen_zagier(f, -2));
    }
    round_trip(run_average(2, 3, 5, 8, 20));
    round_trip(run_selftest());
    for (const auto& r : bench(FieldSpec::get(1), -2, {3, 6}, 128, 1)) round_trip(r);
}

TEST_CASE("hconst is deterministic in the seed") {
    auto a = run_hconst(2, 3, 5, 20, 11), b = run_hconst(2, 3, 5, 20, 11);
    CHECK(a == b);
    CHECK_FALSE(a.in_scope);
    CHECK(a.distinct.size() > 1);
    auto c = run_hconst(1, 1, 3, 100, 0);
    CHECK(c.in_scope);
    CHECK(c.pass());
    CHECK(c.alpha == 20);
    CHECK(c.distinct.size() == 1);
}

TEST_CASE("hconst scope") {
    for (int d : FieldSpec::all_d()) CHECK(hconst_in_scope(d, 1));
    CHECK(hconst_in_scope(7, 3));
    CHECK_FALSE(hconst_in_scope(2, 3));
    CHECK(hconst_in_scope(3, 5));
    CHECK_FALSE(hconst_in_scope(1, 5));
}

TEST_CASE("selftest passes") {
    auto r = run_selftest();
    CHECK(r.pass());
    CHECK(r.items.size() >= 5);
}
