#include "hermitia/field.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace hermitia {

namespace {

const std::array<FieldSpec, 5> kFields = {{
    {1, -4, -4, 5, 2, 2},
    {2, -8, -8, 18, 4, 2},
    {3, -3, -3, 3, 1, 1},
    {7, -7, -7, 14, 4, 1},
    {11, -11, -11, 33, 6, 1},
}};

}  // namespace

const FieldSpec& FieldSpec::get(int d) {
    for (const auto& f : kFields)
        if (f.d == d) return f;
    throw PreconditionError("d must be one of 1, 2, 3, 7, 11 (got " + std::to_string(d) + ")");
}

const std::vector<int>& FieldSpec::all_d() {
    static const std::vector<int> ds = {1, 2, 3, 7, 11};
    return ds;
}

bool operator==(const FieldSpec& a, const FieldSpec& b) { return a.d == b.d; }

std::vector<QuadInt> FieldSpec::units() const {
    std::vector<QuadInt> u = {QuadInt(*this, 1), QuadInt(*this, -1)};
    if (d == 1) {
        u.emplace_back(*this, 2, 1);
        u.emplace_back(*this, -2, -1);
    } else if (d == 3) {
        u.emplace_back(*this, 1, 1);
        u.emplace_back(*this, -1, -1);
        u.emplace_back(*this, -2, -1);
        u.emplace_back(*this, 2, 1);
    }
    return u;
}

QuadInt FieldSpec::omega() const { return QuadInt(*this, 0, 1); }
QuadInt FieldSpec::reduced_omega() const { return QuadInt(*this, reduced_shift, 1); }
double FieldSpec::lattice_height() const { return std::sqrt(double(-disc)) / 2.0; }
double FieldSpec::covolume() const { return std::sqrt(double(-disc)) / 2.0; }

// ---- QuadInt

QuadInt::QuadInt(const FieldSpec& f, BigInt x, BigInt y) : f_(&f), x_(std::move(x)), y_(std::move(y)) {}

QuadInt QuadInt::operator+(const QuadInt& o) const { return QuadInt(*f_, x_ + o.x_, y_ + o.y_); }
QuadInt QuadInt::operator-(const QuadInt& o) const { return QuadInt(*f_, x_ - o.x_, y_ - o.y_); }
QuadInt QuadInt::operator-() const { return QuadInt(*f_, -x_, -y_); }

QuadInt QuadInt::operator*(const QuadInt& o) const {
    BigInt yy = y_ * o.y_;
    return QuadInt(*f_, x_ * o.x_ - f_->n * yy, x_ * o.y_ + y_ * o.x_ + f_->t * yy);
}

QuadInt QuadInt::operator*(const BigInt& s) const { return QuadInt(*f_, x_ * s, y_ * s); }

QuadInt& QuadInt::operator+=(const QuadInt& o) {
    x_ += o.x_;
    y_ += o.y_;
    return *this;
}
QuadInt& QuadInt::operator-=(const QuadInt& o) {
    x_ -= o.x_;
    y_ -= o.y_;
    return *this;
}
QuadInt& QuadInt::operator*=(const QuadInt& o) { return *this = *this * o; }

bool QuadInt::operator==(const QuadInt& o) const { return f_->d == o.f_->d && x_ == o.x_ && y_ == o.y_; }

QuadInt QuadInt::conj() const { return QuadInt(*f_, x_ + f_->t * y_, -y_); }
BigInt QuadInt::norm() const { return x_ * x_ + f_->t * x_ * y_ + f_->n * y_ * y_; }
BigInt QuadInt::trace() const { return 2 * x_ + f_->t * y_; }

QuadInt QuadInt::pow(unsigned e) const {
    QuadInt r(*f_, 1), b = *this;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

Rational QuadInt::real() const {
    Rational r(2 * x_ + f_->t * y_, 2);
    r.canonicalize();
    return r;
}
Rational QuadInt::imag_coeff() const {
    Rational r(y_ * f_->sqrt_scale, 2);
    r.canonicalize();
    return r;
}
Complex QuadInt::to_complex() const { return QuadElem(*this).to_complex(); }
std::string QuadInt::str() const { return QuadElem(*this).str(); }

BigInt norm(const QuadInt& a) { return a.norm(); }

// ---- QuadElem

QuadElem::QuadElem(const FieldSpec& f) : num_(f), den_(1) {}

QuadElem::QuadElem(const QuadInt& num, BigInt den) : num_(num), den_(std::move(den)) {
    require(den_ != 0, "zero denominator");
    normalize();
}

QuadElem::QuadElem(const FieldSpec& f, const Rational& r) : num_(f, r.get_num()), den_(r.get_den()) {}

QuadElem QuadElem::from_display(const FieldSpec& f, const Rational& re, const Rational& im_coeff) {
    // im_coeff*sqrt(-d) = (2*im_coeff/scale) * (w - t/2)
    Rational y = 2 * im_coeff / f.sqrt_scale;
    Rational x = re - y * f.t / 2;
    BigInt den = lcm(BigInt(x.get_den()), BigInt(y.get_den()));
    Rational xs = x * den, ys = y * den;
    return QuadElem(QuadInt(f, xs.get_num(), ys.get_num()), den);
}

void QuadElem::normalize() {
    if (den_ < 0) {
        den_ = -den_;
        num_ = -num_;
    }
    BigInt g = gcd(gcd(num_.x(), num_.y()), den_);
    if (g != 1) {
        num_ = QuadInt(num_.field(), num_.x() / g, num_.y() / g);
        den_ /= g;
    }
}

QuadElem QuadElem::operator+(const QuadElem& o) const {
    return QuadElem(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
QuadElem QuadElem::operator-(const QuadElem& o) const {
    return QuadElem(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}
QuadElem QuadElem::operator-() const { return QuadElem(-num_, den_); }
QuadElem QuadElem::operator*(const QuadElem& o) const { return QuadElem(num_ * o.num_, den_ * o.den_); }
QuadElem QuadElem::operator/(const QuadElem& o) const { return *this * o.inverse(); }
QuadElem& QuadElem::operator+=(const QuadElem& o) { return *this = *this + o; }
QuadElem& QuadElem::operator-=(const QuadElem& o) { return *this = *this - o; }
QuadElem& QuadElem::operator*=(const QuadElem& o) { return *this = *this * o; }

bool QuadElem::operator==(const QuadElem& o) const { return num_ == o.num_ && den_ == o.den_; }

QuadElem QuadElem::conj() const { return QuadElem(num_.conj(), den_); }

QuadElem QuadElem::inverse() const {
    require(!is_zero(), "division by zero in K");
    BigInt nn = num_.norm();
    return QuadElem(num_.conj() * den_, nn);
}

Rational QuadElem::norm() const {
    Rational r(num_.norm(), den_ * den_);
    r.canonicalize();
    return r;
}

Rational QuadElem::trace() const {
    Rational r(num_.trace(), den_);
    r.canonicalize();
    return r;
}

Rational QuadElem::as_rational() const {
    require(is_rational(), "element is not rational");
    Rational r(num_.x(), den_);
    r.canonicalize();
    return r;
}

QuadInt QuadElem::as_integral() const {
    require(is_integral(), "element is not integral");
    return num_;
}

QuadElem QuadElem::pow(unsigned e) const {
    BigInt d;
    mpz_pow_ui(d.get_mpz_t(), den_.get_mpz_t(), e);
    return QuadElem(num_.pow(e), d);
}

Rational QuadElem::coord_x() const {
    Rational r(num_.x(), den_);
    r.canonicalize();
    return r;
}
Rational QuadElem::coord_y() const {
    Rational r(num_.y(), den_);
    r.canonicalize();
    return r;
}
Rational QuadElem::real() const {
    Rational r = num_.real() / den_;
    r.canonicalize();
    return r;
}
Rational QuadElem::imag_coeff() const {
    Rational r = num_.imag_coeff() / den_;
    r.canonicalize();
    return r;
}

Complex QuadElem::to_complex() const {
    const auto& f = field();
    return {real().get_d(), imag_coeff().get_d() * std::sqrt(double(f.d))};
}

std::string rational_str(const Rational& q) { return q.get_str(); }

std::string QuadElem::str() const {
    Rational re = real(), im = imag_coeff();
    std::string unit = field().d == 1 ? "i" : "sqrt(-" + std::to_string(field().d) + ")";
    if (im == 0) return rational_str(re);
    std::string out;
    if (re != 0) out = rational_str(re);
    if (im < 0)
        out += "-";
    else if (!out.empty())
        out += "+";
    Rational a = abs(im);
    if (a != 1) out += rational_str(a) + "*";
    return out + unit;
}

BigInt floor_rational(const Rational& q) {
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

// ---- Kronecker

int kronecker(long long a, long long b) {
    require(!(a == 0 && b == 0), "kronecker(0, 0) is undefined");
    if (b == 0) return (a == 1 || a == -1) ? 1 : 0;
    if (a % 2 == 0 && b % 2 == 0) return 0;
    int r = 1;
    if (b < 0) {
        b = -b;
        if (a < 0) r = -r;
    }
    int v = 0;
    while (b % 2 == 0) {
        b /= 2;
        ++v;
    }
    if (v & 1) {
        long long m = ((a % 8) + 8) % 8;
        if (m == 3 || m == 5) r = -r;
    }
    long long x = ((a % b) + b) % b, y = b;
    while (x != 0) {
        while (x % 2 == 0) {
            x /= 2;
            long long m = y % 8;
            if (m == 3 || m == 5) r = -r;
        }
        std::swap(x, y);
        if (x % 4 == 3 && y % 4 == 3) r = -r;
        x %= y;
    }
    return y == 1 ? r : 0;
}

// ---- lattice geometry

void for_each_lattice_point_near(const FieldSpec& f, Complex center, double radius,
                                 const std::function<void(const BigInt&, const BigInt&)>& visit) {
    // point x + y w has Re = x + y t/2, Im = y h
    const double h = f.lattice_height();
    const double r = radius + 1e-9 * (1.0 + std::abs(center)) + 1e-9;
    long y0 = (long)std::floor((center.imag() - r) / h) - 1;
    long y1 = (long)std::ceil((center.imag() + r) / h) + 1;
    for (long y = y0; y <= y1; ++y) {
        double dy = y * h - center.imag();
        double rem = r * r - dy * dy;
        if (rem < -1e-9 * (1 + r * r)) continue;
        double half = std::sqrt(std::max(0.0, rem));
        double xc = center.real() - y * (f.t / 2.0);
        long x0 = (long)std::floor(xc - half) - 1;
        long x1 = (long)std::ceil(xc + half) + 1;
        BigInt by(y);
        for (long x = x0; x <= x1; ++x) visit(BigInt(x), by);
    }
}

namespace {

struct Candidate {
    Rational dist, re, im;
};

bool better(const Candidate& a, const Candidate& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
}

}  // namespace

QuadInt nearest_int(const QuadElem& z) {
    const auto& f = z.field();
    // coordinates in the reduced basis {1, w + shift}
    Rational Y = z.coord_y();
    Rational X = z.coord_x() - f.reduced_shift * Y;
    BigInt u0 = floor_rational(X), v0 = floor_rational(Y);
    std::optional<QuadInt> best;
    Candidate bc;
    for (int du = -1; du <= 2; ++du)
        for (int dv = -1; dv <= 2; ++dv) {
            BigInt u = u0 + du, v = v0 + dv;
            QuadInt c(f, u + v * f.reduced_shift, v);
            Candidate cand{(z - QuadElem(c)).norm(), c.real(), c.imag_coeff()};
            if (!best || better(cand, bc)) {
                best = c;
                bc = cand;
            }
        }
    return *best;
}

QuadInt nearest_int(Complex z, const FieldSpec& f) {
    const double h = f.lattice_height();
    const double wre = f.t / 2.0 + f.reduced_shift;
    double v = z.imag() / h;
    double u = z.real() - v * wre;
    long u0 = (long)std::floor(u), v0 = (long)std::floor(v);
    long bu = 0, bv = 0;
    double bd = INFINITY, bre = 0, bim = 0;
    for (int du = -1; du <= 2; ++du)
        for (int dv = -1; dv <= 2; ++dv) {
            long cu = u0 + du, cv = v0 + dv;
            double re = cu + cv * wre, im = cv * h;
            double dist = (re - z.real()) * (re - z.real()) + (im - z.imag()) * (im - z.imag());
            double tol = 1e-12 * (1.0 + bd);
            bool take;
            if (std::isinf(bd) || dist < bd - tol)
                take = true;
            else if (dist > bd + tol)
                take = false;
            else if (std::abs(re - bre) > 1e-12)
                take = re < bre;
            else
                take = im < bim;
            if (take) {
                bd = dist;
                bre = re;
                bim = im;
                bu = cu;
                bv = cv;
            }
        }
    return QuadInt(f, BigInt(bu) + BigInt(bv) * f.reduced_shift, BigInt(bv));
}

// ---- norms

namespace {

// 4 N(x + y w) = (2x + t y)^2 + |d_K| y^2
bool small_is_norm(long delta, const FieldSpec& f) {
    const long dk = std::labs(f.disc);
    const long four = 4 * delta;
    for (long y = 0; dk * y * y <= four; ++y) {
        long r = four - dk * y * y;
        long u = std::lround(std::sqrt((double)r));
        while (u * u > r) --u;
        while ((u + 1) * (u + 1) <= r) ++u;
        if (u * u == r && (u - f.t * y) % 2 == 0) return true;
    }
    return false;
}

}  // namespace

std::optional<QuadInt> norm_witness(const BigInt& delta, const FieldSpec& f) {
    require(delta >= 1, "delta must be positive");
    if (delta < BigInt(1L << 40) && !small_is_norm(delta.get_si(), f)) return std::nullopt;
    std::optional<QuadInt> best;
    for_each_lattice_point_near(f, {0, 0}, std::sqrt(delta.get_d()), [&](const BigInt& x, const BigInt& y) {
        QuadInt b(f, x, y);
        if (b.norm() != delta) return;
        if (!best) {
            best = b;
            return;
        }
        // prefer real witnesses, then positive real part, then positive imaginary part
        auto key = [](const QuadInt& q) {
            return std::make_tuple(Rational(abs(q.imag_coeff())), Rational(-q.real()), Rational(-q.imag_coeff()));
        };
        if (key(b) < key(*best)) best = b;
    });
    return best;
}

bool is_norm(const BigInt& delta, const FieldSpec& f) { return norm_witness(delta, f).has_value(); }

std::vector<BigInt> smallest_non_norms(const FieldSpec& f, int count) {
    std::vector<BigInt> out;
    for (BigInt n = 1; (int)out.size() < count; ++n)
        if (!is_norm(n, f)) out.push_back(n);
    return out;
}

// ---- parsing

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace((unsigned char)c)) s += c;
    require(!s.empty(), "empty number");
    if (s.find('/') != std::string::npos) {
        Rational q;
        if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw PreconditionError("not a rational: " + text);
        q.canonicalize();
        return q;
    }
    long exp10 = 0;
    auto epos = s.find_first_of("eE");
    if (epos != std::string::npos) {
        char* end = nullptr;
        std::string e = s.substr(epos + 1);
        exp10 = std::strtol(e.c_str(), &end, 10);
        require(!e.empty() && *end == '\0', "bad exponent in " + text);
        s = s.substr(0, epos);
    }
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        s = s.substr(1);
    }
    std::string digits;
    bool seen_dot = false;
    for (char c : s) {
        if (c == '.') {
            require(!seen_dot, "not a number: " + text);
            seen_dot = true;
        } else if (std::isdigit((unsigned char)c)) {
            digits += c;
            if (seen_dot) --exp10;
        } else {
            throw PreconditionError("not a number: " + text);
        }
    }
    require(!digits.empty(), "not a number: " + text);
    Rational q{BigInt(digits, 10)};
    BigInt p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, (unsigned long)std::labs(exp10));
    if (exp10 >= 0)
        q *= p10;
    else
        q /= p10;
    q.canonicalize();
    return neg ? Rational(-q) : q;
}

}  // namespace hermitia
