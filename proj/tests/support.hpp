#pragma once

#include <random>

#include "hermitia/field.hpp"

namespace testgen {

using namespace hermitia;

inline std::mt19937_64& rng() {
    static std::mt19937_64 g(20240611);
    return g;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }
inline double uniform_real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline QuadInt quad_int(const FieldSpec& f, long r = 50) { return QuadInt(f, uniform(-r, r), uniform(-r, r)); }

// z = p/q + (r/s) sqrt(-d) with q, s <= max_den
inline QuadElem quad_elem(const FieldSpec& f, long max_den = 12, long span = 3) {
    long q = uniform(1, max_den), s = uniform(1, max_den);
    Rational re(uniform(-span * q, span * q), q), im(uniform(-span * s, span * s), s);
    re.canonicalize();
    im.canonicalize();
    return QuadElem::from_display(f, re, im);
}

inline QuadElem nonzero_quad_elem(const FieldSpec& f, long max_den = 12) {
    for (;;) {
        QuadElem z = quad_elem(f, max_den);
        if (!z.is_zero()) return z;
    }
}

// u / v with small u, v in the reduced basis, so z and 1/z both have small denominators
inline QuadElem quad_ratio(const FieldSpec& f, long r = 3) {
    auto small = [&] { return QuadInt(f, uniform(-r, r)) + f.reduced_omega() * BigInt(uniform(-r, r)); };
    for (;;) {
        QuadInt u = small(), v = small();
        if (!u.is_zero() && !v.is_zero()) return QuadElem(u) / QuadElem(v);
    }
}

}  // namespace testgen
