#pragma once

#include <vector>

#include "hermitia/bipoly.hpp"
#include "hermitia/field.hpp"

namespace hermitia {

// [[a, b], [conj(b), c]],  h(z, w) = a|z|^2 + b z conj(w) + conj(b) conj(z) w + c|w|^2
struct HermitianForm {
    BigInt a;
    QuadInt b;
    BigInt c;

    BigInt det() const { return a * c - b.norm(); }
    BigInt delta() const { return b.norm() - a * c; }  // forms of discriminant -delta

    bool operator==(const HermitianForm& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator!=(const HermitianForm& o) const { return !(*this == o); }
    bool operator<(const HermitianForm& o) const;  // (a, Re b, Im b, c)
    std::string str() const;
};

Rational eval(const HermitianForm& h, const QuadElem& z);
double eval(const HermitianForm& h, Complex z);

// sigma^T h conj(sigma): the action matching P|sigma on h(z,1).
// a' = |r|^2 a + r conj(t) b + conj(r) t conj(b) + |t|^2 c for sigma = [[r, s], [t, v]]
HermitianForm act(const GroupElement& sigma, const HermitianForm& h);
// conj(sigma)^T h sigma, the literal matrix formula
HermitianForm act_hermitian(const GroupElement& sigma, const HermitianForm& h);

// sum over N(b) < delta of sigma_k(delta - N(b))
BigInt alpha(int k, const BigInt& delta, const FieldSpec& f);
// sum of c^k over forms with a < 0 < c, N(b) - ac = delta
BigInt alpha_by_forms(int k, const BigInt& delta, const FieldSpec& f);

void require_non_norm(const BigInt& delta, const FieldSpec& f);
void require_odd_k(int k);

// forms with c < 0 < a and N(b) - ac = delta
std::vector<HermitianForm> transfer_forms(const BigInt& delta, const FieldSpec& f);
BiPoly expand_P(int k, const BigInt& delta, const FieldSpec& f);

// the minimal den > 0 with den*z in O_d
BigInt lattice_denominator(const QuadElem& z);
// forms with a < 0 < h(z,1) and N(b) - ac = delta, sorted by (a, Re b, Im b)
std::vector<HermitianForm> enumerate_window(const QuadElem& z, const BigInt& delta);

}  // namespace hermitia
