#pragma once

#include <string>
#include <vector>

#include "hermitia/field.hpp"

namespace hermitia {

// [[a, b], [c, e]]
template <class R>
struct Mat2 {
    R a, b, c, e;

    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.e, c * o.a + e * o.c, c * o.b + e * o.e};
    }
    bool operator==(const Mat2& o) const { return a == o.a && b == o.b && c == o.c && e == o.e; }
    bool operator!=(const Mat2& o) const { return !(*this == o); }
    Mat2 operator-() const { return {-a, -b, -c, -e}; }
    Mat2 conj() const { return {a.conj(), b.conj(), c.conj(), e.conj()}; }
    Mat2 transpose() const { return {a, c, b, e}; }
    R det() const { return a * e - b * c; }
    const FieldSpec& field() const { return a.field(); }
};

using GroupElement = Mat2<QuadInt>;
using KMatrix = Mat2<QuadElem>;

GroupElement identity_element(const FieldSpec& f);
// inverse of a matrix whose determinant is a unit
GroupElement inverse(const GroupElement& g);
KMatrix to_k(const GroupElement& g);
bool equal_up_to_sign(const GroupElement& g, const GroupElement& h);

// element of V_{k,k}: sum of c_ij z^i zb^j, 0 <= i, j <= k
class BiPoly {
public:
    BiPoly(const FieldSpec& f, int k);

    static BiPoly monomial(const FieldSpec& f, int k, int i, int j, const QuadElem& c);

    int k() const { return k_; }
    const FieldSpec& field() const { return *f_; }
    const QuadElem& coeff(int i, int j) const { return c_[idx(i, j)]; }
    QuadElem& coeff(int i, int j) { return c_[idx(i, j)]; }
    const std::vector<QuadElem>& coeffs() const { return c_; }
    std::vector<QuadElem>& coeffs() { return c_; }

    BiPoly operator+(const BiPoly& o) const;
    BiPoly operator-(const BiPoly& o) const;
    BiPoly operator-() const;
    BiPoly operator*(const QuadElem& s) const;
    BiPoly operator*(const BiPoly& o) const;  // bidegrees add
    BiPoly& operator+=(const BiPoly& o);
    bool operator==(const BiPoly& o) const;
    bool operator!=(const BiPoly& o) const { return !(*this == o); }
    bool is_zero() const;

    // P(z, zb)
    QuadElem eval(const QuadElem& z) const;
    Complex eval(Complex z) const;

    BiPoly swapped() const;      // c_ij -> c_ji
    BiPoly conj_coeffs() const;  // c_ij -> conj(c_ij)
    BiPoly raised(int k) const;  // same polynomial in V_{k,k}, k >= k()

    // lambda with P = lambda * Q, if any
    std::optional<QuadElem> ratio_to(const BiPoly& q) const;

    std::string str() const;

private:
    int idx(int i, int j) const { return i * (k_ + 1) + j; }
    const FieldSpec* f_;
    int k_;
    std::vector<QuadElem> c_;
};

// (cz+e)^k conj(cz+e)^k P((az+b)/(cz+e), conj(...))
BiPoly act_poly(const BiPoly& p, const KMatrix& g);
BiPoly act_poly(const BiPoly& p, const GroupElement& g);

// column i holds the coefficients of (az+b)^i (cz+e)^(k-i)
template <class R>
std::vector<std::vector<R>> substitution_matrix(const Mat2<R>& g, int k);

}  // namespace hermitia
