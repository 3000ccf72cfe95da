#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hermitia/errors.hpp"

namespace hermitia {

using BigInt = mpz_class;
using Rational = mpq_class;
using Complex = std::complex<double>;

class QuadInt;

// O_d in the basis {1, w}, w = (d_K + sqrt(d_K))/2, w^2 = t*w - n.
struct FieldSpec {
    int d;
    long disc;    // d_K
    long t;       // = d_K
    long n;       // = (d_K^2 - d_K)/4
    long reduced_shift;  // w + shift is i, sqrt(-2), (-1+sqrt(-3))/2, (1+sqrt(-7))/2, (1+sqrt(-11))/2
    int sqrt_scale;      // sqrt(d_K) = sqrt_scale * sqrt(-d)

    static const FieldSpec& get(int d);
    static const std::vector<int>& all_d();

    std::vector<QuadInt> units() const;
    QuadInt omega() const;
    QuadInt reduced_omega() const;
    double lattice_height() const;  // Im(w)
    double covolume() const;        // sqrt(|d_K|)/2
};

bool operator==(const FieldSpec& a, const FieldSpec& b);

class QuadInt {
public:
    explicit QuadInt(const FieldSpec& f, BigInt x = 0, BigInt y = 0);

    const BigInt& x() const { return x_; }
    const BigInt& y() const { return y_; }
    const FieldSpec& field() const { return *f_; }

    QuadInt operator+(const QuadInt& o) const;
    QuadInt operator-(const QuadInt& o) const;
    QuadInt operator-() const;
    QuadInt operator*(const QuadInt& o) const;
    QuadInt operator*(const BigInt& s) const;
    QuadInt& operator+=(const QuadInt& o);
    QuadInt& operator-=(const QuadInt& o);
    QuadInt& operator*=(const QuadInt& o);
    bool operator==(const QuadInt& o) const;
    bool operator!=(const QuadInt& o) const { return !(*this == o); }

    QuadInt conj() const;
    BigInt norm() const;
    BigInt trace() const;
    bool is_zero() const { return x_ == 0 && y_ == 0; }
    bool is_rational() const { return y_ == 0; }
    QuadInt pow(unsigned e) const;

    Rational real() const;
    Rational imag_coeff() const;  // coefficient of sqrt(-d)
    Complex to_complex() const;
    std::string str() const;

private:
    const FieldSpec* f_;
    BigInt x_, y_;
};

BigInt norm(const QuadInt& a);

// exact element of K as num/den with den > 0 and gcd(content(num), den) = 1
class QuadElem {
public:
    explicit QuadElem(const FieldSpec& f);
    QuadElem(const QuadInt& num, BigInt den = 1);
    QuadElem(const FieldSpec& f, const Rational& r);

    static QuadElem from_display(const FieldSpec& f, const Rational& re, const Rational& im_coeff);

    const QuadInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    const FieldSpec& field() const { return num_.field(); }

    QuadElem operator+(const QuadElem& o) const;
    QuadElem operator-(const QuadElem& o) const;
    QuadElem operator-() const;
    QuadElem operator*(const QuadElem& o) const;
    QuadElem operator/(const QuadElem& o) const;
    QuadElem& operator+=(const QuadElem& o);
    QuadElem& operator-=(const QuadElem& o);
    QuadElem& operator*=(const QuadElem& o);
    bool operator==(const QuadElem& o) const;
    bool operator!=(const QuadElem& o) const { return !(*this == o); }

    QuadElem conj() const;
    QuadElem inverse() const;
    Rational norm() const;
    Rational trace() const;
    bool is_zero() const { return num_.is_zero(); }
    bool is_integral() const { return den_ == 1; }
    bool is_rational() const { return num_.is_rational(); }
    Rational as_rational() const;  // requires is_rational()
    QuadInt as_integral() const;   // requires is_integral()
    QuadElem pow(unsigned e) const;

    // coordinates in the basis {1, w}
    Rational coord_x() const;
    Rational coord_y() const;
    Rational real() const;
    Rational imag_coeff() const;
    Complex to_complex() const;
    std::string str() const;

private:
    void normalize();
    QuadInt num_;
    BigInt den_;
};

int kronecker(long long top, long long bottom);

QuadInt nearest_int(const QuadElem& z);
QuadInt nearest_int(Complex z, const FieldSpec& f);

bool is_norm(const BigInt& delta, const FieldSpec& f);
std::optional<QuadInt> norm_witness(const BigInt& delta, const FieldSpec& f);
std::vector<BigInt> smallest_non_norms(const FieldSpec& f, int count);

// superset of the lattice points within distance `radius` of `center`; callers filter exactly
void for_each_lattice_point_near(const FieldSpec& f, Complex center, double radius,
                                 const std::function<void(const BigInt&, const BigInt&)>& visit);

// "3/4", "-2", "0.375", "1e-2"
Rational parse_rational(const std::string& text);
std::string rational_str(const Rational& q);
BigInt floor_rational(const Rational& q);

}  // namespace hermitia
