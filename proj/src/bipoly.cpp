#include "hermitia/bipoly.hpp"

#include <algorithm>

namespace hermitia {

GroupElement identity_element(const FieldSpec& f) { return {QuadInt(f, 1), QuadInt(f), QuadInt(f), QuadInt(f, 1)}; }

GroupElement inverse(const GroupElement& g) {
    QuadInt det = g.det();
    require(det.norm() == 1, "matrix determinant is not a unit");
    QuadInt u = det.conj();
    return {g.e * u, -g.b * u, -g.c * u, g.a * u};
}

KMatrix to_k(const GroupElement& g) { return {QuadElem(g.a), QuadElem(g.b), QuadElem(g.c), QuadElem(g.e)}; }

bool equal_up_to_sign(const GroupElement& g, const GroupElement& h) { return g == h || g == -h; }

BiPoly::BiPoly(const FieldSpec& f, int k) : f_(&f), k_(k) {
    require(k >= 0, "bidegree must be non-negative");
    c_.assign((k + 1) * (k + 1), QuadElem(f));
}

BiPoly BiPoly::monomial(const FieldSpec& f, int k, int i, int j, const QuadElem& c) {
    BiPoly p(f, k);
    p.coeff(i, j) = c;
    return p;
}

BiPoly BiPoly::operator+(const BiPoly& o) const {
    BiPoly r = *this;
    return r += o;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
    require(k_ == o.k_, "bidegree mismatch");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

BiPoly BiPoly::operator-(const BiPoly& o) const { return *this + (-o); }

BiPoly BiPoly::operator-() const {
    BiPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

BiPoly BiPoly::operator*(const QuadElem& s) const {
    BiPoly r = *this;
    for (auto& c : r.c_) c *= s;
    return r;
}

BiPoly BiPoly::operator*(const BiPoly& o) const {
    BiPoly r(*f_, k_ + o.k_);
    for (int i = 0; i <= k_; ++i)
        for (int j = 0; j <= k_; ++j) {
            const auto& a = coeff(i, j);
            if (a.is_zero()) continue;
            for (int u = 0; u <= o.k_; ++u)
                for (int v = 0; v <= o.k_; ++v)
                    if (!o.coeff(u, v).is_zero()) r.coeff(i + u, j + v) += a * o.coeff(u, v);
        }
    return r;
}

bool BiPoly::operator==(const BiPoly& o) const { return k_ == o.k_ && f_->d == o.f_->d && c_ == o.c_; }

bool BiPoly::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const QuadElem& c) { return c.is_zero(); });
}

QuadElem BiPoly::eval(const QuadElem& z) const {
    QuadElem zb = z.conj(), r(*f_);
    // Horner in z, then in zb
    for (int i = k_; i >= 0; --i) {
        QuadElem row(*f_);
        for (int j = k_; j >= 0; --j) row = row * zb + coeff(i, j);
        r = r * z + row;
    }
    return r;
}

Complex BiPoly::eval(Complex z) const {
    Complex zb = std::conj(z), r = 0;
    for (int i = k_; i >= 0; --i) {
        Complex row = 0;
        for (int j = k_; j >= 0; --j) row = row * zb + coeff(i, j).to_complex();
        r = r * z + row;
    }
    return r;
}

BiPoly BiPoly::swapped() const {
    BiPoly r(*f_, k_);
    for (int i = 0; i <= k_; ++i)
        for (int j = 0; j <= k_; ++j) r.coeff(j, i) = coeff(i, j);
    return r;
}

BiPoly BiPoly::conj_coeffs() const {
    BiPoly r = *this;
    for (auto& c : r.c_) c = c.conj();
    return r;
}

BiPoly BiPoly::raised(int k) const {
    require(k >= k_, "cannot lower bidegree");
    BiPoly r(*f_, k);
    for (int i = 0; i <= k_; ++i)
        for (int j = 0; j <= k_; ++j) r.coeff(i, j) = coeff(i, j);
    return r;
}

std::optional<QuadElem> BiPoly::ratio_to(const BiPoly& q) const {
    if (k_ != q.k_) return std::nullopt;
    std::optional<QuadElem> lambda;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (q.c_[i].is_zero()) {
            if (!c_[i].is_zero()) return std::nullopt;
            continue;
        }
        QuadElem r = c_[i] / q.c_[i];
        if (lambda && *lambda != r) return std::nullopt;
        lambda = r;
    }
    if (!lambda) return is_zero() ? std::optional<QuadElem>(QuadElem(*f_)) : std::nullopt;
    return lambda;
}

std::string BiPoly::str() const {
    std::vector<std::pair<int, int>> order;
    for (int i = 0; i <= k_; ++i)
        for (int j = 0; j <= k_; ++j)
            if (!coeff(i, j).is_zero()) order.emplace_back(i, j);
    if (order.empty()) return "0";
    std::sort(order.begin(), order.end(), [](auto x, auto y) {
        if (x.first + x.second != y.first + y.second) return x.first + x.second > y.first + y.second;
        return x.first > y.first;
    });
    auto power = [](const char* v, int e) -> std::string {
        if (e == 0) return "";
        return e == 1 ? std::string(v) : std::string(v) + "^" + std::to_string(e);
    };
    std::string out;
    for (auto [i, j] : order) {
        const QuadElem& c = coeff(i, j);
        std::string mono = power("z", i);
        std::string mz = power("zb", j);
        if (!mz.empty()) mono = mono.empty() ? mz : mono + "*" + mz;
        std::string cs;
        bool negative = false;
        if (c.is_rational()) {
            Rational q = c.as_rational();
            negative = q < 0;
            Rational a = abs(q);
            cs = (a == 1 && !mono.empty()) ? "" : rational_str(a);
        } else {
            cs = "(" + c.str() + ")";
        }
        std::string term = cs.empty() ? mono : (mono.empty() ? cs : cs + "*" + mono);
        if (out.empty())
            out = negative ? "-" + term : term;
        else
            out += negative ? " - " + term : " + " + term;
    }
    return out;
}

namespace {

template <class R>
std::vector<R> poly_mul(const std::vector<R>& x, const std::vector<R>& y, const R& zero) {
    std::vector<R> r(x.size() + y.size() - 1, zero);
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
    return r;
}

template <class R>
R zero_like(const R& x) {
    return R(x.field());
}

template <class R>
R conj_of(const R& x) {
    return x.conj();
}

}  // namespace

template <class R>
std::vector<std::vector<R>> substitution_matrix(const Mat2<R>& g, int k) {
    const R zero = zero_like(g.a);
    R one = zero;
    one += R(QuadInt(g.field(), 1));
    // powers of (b + a z) and (e + c z), low degree first
    std::vector<std::vector<R>> num(k + 1), den(k + 1);
    num[0] = den[0] = {one};
    for (int i = 1; i <= k; ++i) {
        num[i] = poly_mul(num[i - 1], std::vector<R>{g.b, g.a}, zero);
        den[i] = poly_mul(den[i - 1], std::vector<R>{g.e, g.c}, zero);
    }
    std::vector<std::vector<R>> A(k + 1, std::vector<R>(k + 1, zero));
    for (int i = 0; i <= k; ++i) {
        auto col = poly_mul(num[i], den[k - i], zero);
        for (int r = 0; r <= k; ++r) A[r][i] = col[r];
    }
    return A;
}

template std::vector<std::vector<QuadInt>> substitution_matrix(const Mat2<QuadInt>&, int);
template std::vector<std::vector<QuadElem>> substitution_matrix(const Mat2<QuadElem>&, int);

BiPoly act_poly(const BiPoly& p, const KMatrix& g) {
    require(!g.det().is_zero(), "matrix is singular");
    const int k = p.k();
    const auto& f = p.field();
    auto A = substitution_matrix(g, k);
    // R = A C conj(A)^T
    std::vector<QuadElem> M((k + 1) * (k + 1), QuadElem(f));
    for (int r = 0; r <= k; ++r)
        for (int i = 0; i <= k; ++i) {
            if (A[r][i].is_zero()) continue;
            for (int j = 0; j <= k; ++j)
                if (!p.coeff(i, j).is_zero()) M[r * (k + 1) + j] += A[r][i] * p.coeff(i, j);
        }
    BiPoly out(f, k);
    for (int s = 0; s <= k; ++s)
        for (int j = 0; j <= k; ++j) {
            if (A[s][j].is_zero()) continue;
            QuadElem a = A[s][j].conj();
            for (int r = 0; r <= k; ++r)
                if (!M[r * (k + 1) + j].is_zero()) out.coeff(r, s) += M[r * (k + 1) + j] * a;
        }
    return out;
}

BiPoly act_poly(const BiPoly& p, const GroupElement& g) { return act_poly(p, to_k(g)); }

}  // namespace hermitia
