#include "hermitia/polyspace.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <deque>
#include <mutex>

#include "hermitia/modular.hpp"

namespace hermitia {

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    std::vector<GroupWord::Term> word() {
        std::vector<GroupWord::Term> out;
        skip();
        bool first = true;
        while (pos_ < s_.size()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = get() == '-' ? -1 : 1;
            } else {
                require(first, "expected + or - in word at " + std::to_string(pos_));
            }
            first = false;
            out.push_back(term(sign));
        }
        require(!out.empty(), "empty word");
        return out;
    }

private:
    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    char get() {
        char c = peek();
        ++pos_;
        return c;
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
    }
    BigInt number() {
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
        require(pos_ > start, "expected a number at " + std::to_string(start));
        return BigInt(s_.substr(start, pos_ - start));
    }

    GroupWord::Term term(int sign) {
        GroupWord::Term t;
        t.coef = sign;
        if (std::isdigit((unsigned char)peek())) {
            t.coef *= number();
            if (peek() != '*') return t;
            get();
        }
        t.product = product();
        return t;
    }

    std::vector<GroupWord::Factor> product() {
        std::vector<GroupWord::Factor> out;
        out.push_back(factor());
        while (peek() == '*') {
            get();
            out.push_back(factor());
        }
        return out;
    }

    GroupWord::Factor factor() {
        GroupWord::Factor f;
        char c = peek();
        if (c == '(') {
            get();
            f.group = product();
            require(get() == ')', "expected ) in word");
        } else {
            require(std::isalpha((unsigned char)c), "expected a generator symbol at " + std::to_string(pos_));
            size_t start = pos_;
            while (pos_ < s_.size() && std::isalnum((unsigned char)s_[pos_])) ++pos_;
            f.symbol = s_.substr(start, pos_ - start);
        }
        if (peek() == '^') {
            get();
            int sign = 1;
            if (peek() == '-') get(), sign = -1;
            f.power = sign * (int)number().get_si();
        }
        return f;
    }

    const std::string& s_;
    size_t pos_ = 0;
};

GroupElement power(const GroupElement& g, int e) {
    GroupElement base = e < 0 ? inverse(g) : g;
    GroupElement out = identity_element(g.field());
    for (int i = 0; i < std::abs(e); ++i) out = out * base;
    return out;
}

GroupElement eval_product(const std::vector<GroupWord::Factor>& prod, const Presentation& pr) {
    GroupElement out = identity_element(pr.field());
    for (const auto& f : prod) {
        GroupElement g = f.symbol.empty() ? eval_product(f.group, pr) : pr.symbol(f.symbol);
        out = out * power(g, f.power);
    }
    return out;
}

Presentation make_presentation(int d) {
    const auto& f = FieldSpec::get(d);
    QuadInt zero(f), one(f, 1), w = f.reduced_omega();
    Presentation p;
    p.d = d;
    auto& m = p.symbols;
    m.insert_or_assign("S", GroupElement{zero, -one, one, zero});
    m.insert_or_assign("T", GroupElement{one, one, zero, one});
    m.insert_or_assign("Tw", GroupElement{one, w, zero, one});
    m.insert_or_assign("U", m.at("T") * m.at("S"));
    m.insert_or_assign("neg", GroupElement{-one, zero, zero, one});
    const std::string comm = "T*Tw*T^-1*Tw^-1";
    switch (d) {
        case 1:
            m.insert_or_assign("L", GroupElement{w, zero, zero, -w});
            m.insert_or_assign("eps", GroupElement{w, zero, zero, one});
            m.insert_or_assign("E", m.at("Tw") * m.at("S") * m.at("L"));
            p.relations = {"S^2", "L^2", "(S*L)^2", "(T*L)^2", "(Tw*L)^2", "(S*T)^3", "(Tw*S*L)^3", comm};
            p.kernels = {"1+S", "1-L", "1+U+U^2", "1+E+E^2"};
            p.eps_order = 4;
            p.eigen_labels = {"1", "i", "-1", "-i"};
            break;
        case 3:
            // w is a primitive cube root of unity, w + 1 = e^(i pi/3)
            m.insert_or_assign("L", GroupElement{w * w, zero, zero, w});
            m.insert_or_assign("eps", GroupElement{w + one, zero, zero, one});
            m.insert_or_assign("E", m.at("Tw") * m.at("S") * m.at("L"));
            p.relations = {"S^2", "L^3", "(S*L)^2", "(S*T)^3", "(Tw*S*L)^3", comm, "L^-1*Tw*L*T^-1", "L^-1*T*L*Tw*T"};
            p.kernels = {"1+S", "1-L", "1+U+U^2", "1+E+E^2"};
            p.eps_order = 6;
            p.eigen_labels = {"1", "zeta", "zeta^2", "-1", "zeta^4", "zeta^5"};
            break;
        case 2:
            m.insert_or_assign("eps", m.at("neg"));
            p.relations = {"S^2", "(S*T)^3", "(Tw^-1*S*Tw*S)^2", comm};
            p.kernels = {"1+S", "1+U+U^2", "1+S*Tw+Tw*S+Tw^-1*S*Tw*S"};
            p.eps_order = 2;
            p.eigen_labels = {"1", "-1"};
            break;
        case 7:
            m.insert_or_assign("eps", m.at("neg"));
            p.relations = {"S^2", "(S*T)^3", "(Tw^-1*S*Tw*S*T)^2", comm};
            p.kernels = {"1+S", "1+U+U^2", "T+S*Tw+Tw*S*T+S*Tw^-1*S*Tw"};
            p.eps_order = 2;
            p.eigen_labels = {"1", "-1"};
            break;
        case 11:
            m.insert_or_assign("eps", m.at("neg"));
            m.insert_or_assign("E", inverse(m.at("Tw")) * m.at("S") * m.at("Tw") * m.at("S") * m.at("T"));
            p.relations = {"S^2", "(S*T)^3", "(Tw^-1*S*Tw*S*T)^3", comm};
            p.kernels = {"1+S", "1+U+U^2", "T+S*Tw+T*E+S*Tw*E^-1+Tw*S*T+S*Tw^-1*S*Tw"};
            p.eps_order = 2;
            p.eigen_labels = {"1", "-1"};
            break;
        default:
            require(false, "unsupported d");
    }
    return p;
}

using IntMatrix = std::vector<std::vector<QuadInt>>;

// out(r,s) = sum A[r][i] c(i,j) conj(A[s][j]), integral coefficients
std::vector<QuadInt> act_int(const std::vector<QuadInt>& c, const IntMatrix& A, const IntMatrix& Ac, int k) {
    const int n = k + 1;
    const auto& f = A[0][0].field();
    std::vector<QuadInt> M(n * n, QuadInt(f)), out(n * n, QuadInt(f));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i < n; ++i) {
            if (A[r][i].is_zero()) continue;
            for (int j = 0; j < n; ++j)
                if (!c[i * n + j].is_zero()) M[r * n + j] += A[r][i] * c[i * n + j];
        }
    for (int s = 0; s < n; ++s)
        for (int j = 0; j < n; ++j) {
            if (Ac[s][j].is_zero()) continue;
            for (int r = 0; r < n; ++r)
                if (!M[r * n + j].is_zero()) out[r * n + s] += M[r * n + j] * Ac[s][j];
        }
    return out;
}

struct RealizedTerm {
    BigInt coef;
    GroupElement g;
    IntMatrix A, Ac;  // substitution matrix and its conjugate
};

struct RealizedWord {
    std::string text;
    std::vector<RealizedTerm> terms;
};

RealizedWord realize_word(const std::string& text, const Presentation& pr, int k) {
    RealizedWord out;
    out.text = text;
    for (auto& [c, g] : realize(GroupWord::parse(text), pr)) {
        RealizedTerm t{c, g, substitution_matrix(g, k), {}};
        t.Ac = t.A;
        for (auto& row : t.Ac)
            for (auto& x : row) x = x.conj();
        out.terms.push_back(std::move(t));
    }
    return out;
}

bool kills(const RealizedWord& w, const std::vector<QuadInt>& c, int k) {
    const auto& f = c[0].field();
    std::vector<QuadInt> sum(c.size(), QuadInt(f));
    for (const auto& t : w.terms) {
        auto part = act_int(c, t.A, t.Ac, k);
        QuadInt coef(f, t.coef);
        for (size_t i = 0; i < c.size(); ++i)
            if (!part[i].is_zero()) sum[i] += part[i] * coef;
    }
    return std::all_of(sum.begin(), sum.end(), [](const QuadInt& x) { return x.is_zero(); });
}

// scalar matrices act trivially on V_{k,k}
bool acts_as_identity(const GroupElement& g) { return g.b.is_zero() && g.c.is_zero() && g.a == g.e; }

// c_{perm[m]} = ratio[m] c_m
struct MonomialConstraint {
    std::vector<int> perm;
    std::vector<QuadElem> ratio;
};

std::optional<MonomialConstraint> as_monomial(const RealizedWord& w, int k) {
    if (w.terms.size() != 2) return std::nullopt;
    int id = acts_as_identity(w.terms[0].g) ? 0 : acts_as_identity(w.terms[1].g) ? 1 : -1;
    if (id < 0) return std::nullopt;
    const auto& other = w.terms[1 - id];
    const int n = k + 1;
    std::vector<int> col_target(n, -1);
    for (int i = 0; i < n; ++i)
        for (int r = 0; r < n; ++r)
            if (!other.A[r][i].is_zero()) {
                if (col_target[i] >= 0) return std::nullopt;
                col_target[i] = r;
            }
    const auto& f = w.terms[0].g.field();
    // a c_{pi(m)} + b lambda_m c_m = 0
    QuadElem a(f, Rational(w.terms[id].coef)), b(f, Rational(other.coef));
    MonomialConstraint mc;
    mc.perm.resize(n * n);
    mc.ratio.assign(n * n, QuadElem(f));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int r = col_target[i], s = col_target[j];
            QuadElem lambda(other.A[r][i] * other.Ac[s][j]);
            mc.perm[i * n + j] = r * n + s;
            mc.ratio[i * n + j] = -(b * lambda) / a;
        }
    return mc;
}

// free coordinate after the monomial constraints: c_m = ratio * x for m in members
struct Rep {
    std::vector<std::pair<int, QuadElem>> members;
};

std::vector<Rep> reduce_monomials(const FieldSpec& f, const std::vector<MonomialConstraint>& cons,
                                  const std::vector<bool>& in_set) {
    const int N = (int)in_set.size();
    std::vector<std::vector<std::pair<int, const QuadElem*>>> fwd(N);
    std::vector<std::vector<std::pair<int, const QuadElem*>>> back(N);
    for (const auto& mc : cons)
        for (int m = 0; m < N; ++m) {
            fwd[m].push_back({mc.perm[m], &mc.ratio[m]});
            back[mc.perm[m]].push_back({m, &mc.ratio[m]});
        }
    std::vector<std::optional<QuadElem>> val(N);
    std::vector<Rep> reps;
    for (int root = 0; root < N; ++root) {
        if (val[root]) continue;
        std::vector<int> comp{root};
        val[root] = QuadElem(f, Rational(1));
        std::deque<int> queue{root};
        bool ok = true;
        while (!queue.empty()) {
            int m = queue.front();
            queue.pop_front();
            if (!in_set[m]) ok = false;
            for (auto [n, r] : fwd[m]) {
                QuadElem v = *r * *val[m];
                if (!val[n]) {
                    val[n] = v;
                    comp.push_back(n);
                    queue.push_back(n);
                } else if (*val[n] != v) {
                    ok = false;
                }
            }
            for (auto [n, r] : back[m]) {
                if (val[n]) continue;
                val[n] = *val[m] / *r;
                comp.push_back(n);
                queue.push_back(n);
            }
        }
        if (!ok) continue;
        Rep rep;
        std::sort(comp.begin(), comp.end());
        for (int m : comp) rep.members.push_back({m, *val[m]});
        reps.push_back(std::move(rep));
    }
    return reps;
}

struct Problem {
    const Presentation* pr;
    int k;
    std::vector<RealizedWord> words;
    std::vector<MonomialConstraint> monomial;
    std::vector<const RealizedWord*> dense;
};

Problem make_problem(int d, int k) {
    Problem pb;
    pb.pr = &presentation(d);
    pb.k = k;
    for (const auto& w : pb.pr->kernels) pb.words.push_back(realize_word(w, *pb.pr, k));
    for (const auto& w : pb.words) {
        if (auto mc = as_monomial(w, k))
            pb.monomial.push_back(std::move(*mc));
        else
            pb.dense.push_back(&w);
    }
    return pb;
}

// rows of the dense operators restricted to the reps, under embedding e
std::vector<std::vector<modp::u64>> dense_rows(const Problem& pb, const std::vector<Rep>& reps,
                                               const modp::SplitPrime& sp, int e, bool& ok) {
    const int n = pb.k + 1, N = n * n;
    const modp::u64 p = sp.p;
    std::vector<std::vector<modp::u64>> rows;
    ok = true;
    std::vector<std::vector<modp::u64>> ratio(reps.size());
    for (size_t c = 0; c < reps.size(); ++c)
        for (const auto& [m, r] : reps[c].members) {
            auto v = modp::embed(r, sp, e);
            if (!v) {
                ok = false;
                return rows;
            }
            ratio[c].push_back(*v);
        }
    for (const auto* w : pb.dense) {
        std::vector<std::vector<modp::u64>> cols(reps.size(), std::vector<modp::u64>(N, 0));
        for (const auto& t : w->terms) {
            // conj acts as the other embedding
            std::vector<modp::u64> A(N), B(N);
            for (int r = 0; r < n; ++r)
                for (int i = 0; i < n; ++i) {
                    A[r * n + i] = modp::embed(t.A[r][i], sp, e);
                    B[r * n + i] = modp::embed(t.A[r][i], sp, 1 - e);
                }
            modp::u64 coef = modp::reduce(t.coef, p);
            for (size_t c = 0; c < reps.size(); ++c) {
                auto& col = cols[c];
                for (size_t q = 0; q < reps[c].members.size(); ++q) {
                    int m = reps[c].members[q].first, i = m / n, j = m % n;
                    modp::u64 s = modp::mul(coef, ratio[c][q], p);
                    for (int r = 0; r < n; ++r) {
                        modp::u64 a = A[r * n + i];
                        if (!a) continue;
                        a = modp::mul(a, s, p);
                        for (int s2 = 0; s2 < n; ++s2) {
                            modp::u64 b = B[s2 * n + j];
                            if (b) col[r * n + s2] = (col[r * n + s2] + a * b) % p;
                        }
                    }
                }
            }
        }
        for (int r = 0; r < N; ++r) {
            // zero rows are kept so indices line up across primes
            std::vector<modp::u64> row(reps.size());
            for (size_t c = 0; c < reps.size(); ++c) row[c] = cols[c][r];
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

modp::Echelon eliminate(const std::vector<std::vector<modp::u64>>& rows, size_t cols, modp::u64 p,
                        const std::vector<size_t>* only = nullptr) {
    modp::EchelonBuilder eb(cols, p);
    if (only) {
        for (size_t r : *only) eb.add(rows[r], r);
    } else {
        for (size_t r = 0; r < rows.size() && eb.rank() < cols; ++r)
            if (std::any_of(rows[r].begin(), rows[r].end(), [](modp::u64 x) { return x != 0; })) eb.add(rows[r], r);
    }
    return eb.finish();
}

struct ClassResult {
    int upper = 0;
    std::vector<BiPoly> basis;
    int primes = 0;
};

std::vector<bool> class_set(int k, int order, int cls) {
    const int n = k + 1;
    std::vector<bool> in(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) in[i * n + j] = cls < 0 || eigen_class(i, j, order) == cls;
    return in;
}

bool verify_exact(const Problem& pb, const BiPoly& P) {
    BigInt l = 1;
    for (const auto& c : P.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
    std::vector<QuadInt> c;
    QuadElem scale(P.field(), Rational(l));
    for (const auto& x : P.coeffs()) c.push_back((x * scale).as_integral());
    for (const auto& w : pb.words)
        if (!kills(w, c, pb.k)) return false;
    return true;
}

// cls < 0: whole space, nullity only
ClassResult solve_class(const Problem& pb, int cls, bool nullity_only) {
    const auto& f = pb.pr->field();
    const int n = pb.k + 1;
    ClassResult res;
    auto reps = reduce_monomials(f, pb.monomial, class_set(pb.k, pb.pr->eps_order, cls));
    const size_t cols = reps.size();
    if (cols == 0) return res;

    modp::SplitPrimes primes(f);
    // reference structure from the first prime where both embeddings agree
    modp::Echelon ref;
    for (int attempt = 0;; ++attempt) {
        ensure(attempt < 20, "no good prime found");
        auto sp = primes.next();
        ++res.primes;
        bool ok0, ok1;
        auto r0 = dense_rows(pb, reps, sp, 0, ok0);
        auto r1 = dense_rows(pb, reps, sp, 1, ok1);
        if (!ok0 || !ok1) continue;
        auto e0 = eliminate(r0, cols, sp.p), e1 = eliminate(r1, cols, sp.p);
        if (e0.pivots != e1.pivots) continue;
        ref = std::move(e0);
        break;
    }
    res.upper = (int)(cols - ref.rank());
    if (nullity_only || res.upper == 0) return res;

    auto frees = modp::free_columns(ref);
    const size_t dim = frees.size();
    // CRT state per (vector, column, coordinate)
    std::vector<modp::Crt> crt(dim * cols * 2);
    int used = 0, next_try = 1;
    for (int guard = 0;; ++guard) {
        ensure(guard < 4000, "rational reconstruction did not converge");
        auto sp = primes.next();
        ++res.primes;
        bool ok0, ok1;
        auto r0 = dense_rows(pb, reps, sp, 0, ok0);
        auto r1 = dense_rows(pb, reps, sp, 1, ok1);
        if (!ok0 || !ok1) continue;
        auto e0 = eliminate(r0, cols, sp.p, &ref.source_rows), e1 = eliminate(r1, cols, sp.p, &ref.source_rows);
        if (e0.pivots != ref.pivots || e1.pivots != ref.pivots) continue;
        auto k0 = modp::kernel(e0, sp.p), k1 = modp::kernel(e1, sp.p);
        modp::u64 dr = modp::inv(modp::sub(sp.root[0], sp.root[1], sp.p), sp.p);
        for (size_t v = 0; v < dim; ++v)
            for (size_t c = 0; c < cols; ++c) {
                // v0 = x + y r0, v1 = x + y r1
                modp::u64 y = modp::mul(modp::sub(k0[v][c], k1[v][c], sp.p), dr, sp.p);
                modp::u64 x = modp::sub(k0[v][c], modp::mul(y, sp.root[0], sp.p), sp.p);
                crt[(v * cols + c) * 2].add(x, sp.p);
                crt[(v * cols + c) * 2 + 1].add(y, sp.p);
            }
        if (++used < next_try) continue;
        next_try = used + std::max(1, used / 2);

        std::vector<BiPoly> basis;
        bool good = true;
        for (size_t v = 0; v < dim && good; ++v) {
            BigInt common = 1;
            std::vector<QuadElem> coord(cols, QuadElem(f));
            for (size_t c = 0; c < cols && good; ++c) {
                Rational xy[2];
                for (int t = 0; t < 2 && good; ++t) {
                    const auto& st = crt[(v * cols + c) * 2 + t];
                    BigInt a = st.value * common % st.modulus;
                    auto q = modp::rational_reconstruct(a, st.modulus);
                    if (!q) {
                        good = false;
                        break;
                    }
                    xy[t] = *q / Rational(common);
                    common *= q->get_den();
                }
                if (good) coord[c] = QuadElem(QuadInt(f, xy[0].get_num() * xy[1].get_den(), xy[1].get_num() * xy[0].get_den()),
                                              xy[0].get_den() * xy[1].get_den());
            }
            if (!good) break;
            BiPoly P(f, pb.k);
            for (size_t c = 0; c < cols; ++c) {
                if (coord[c].is_zero()) continue;
                for (const auto& [m, r] : reps[c].members) P.coeff(m / n, m % n) = r * coord[c];
            }
            basis.push_back(std::move(P));
        }
        if (!good) continue;
        if (std::all_of(basis.begin(), basis.end(), [&](const BiPoly& P) { return verify_exact(pb, P); })) {
            res.basis = std::move(basis);
            return res;
        }
    }
}

std::string label_of(const Presentation& pr, int cls) { return pr.eigen_labels[cls]; }

}  // namespace

GroupWord GroupWord::parse(const std::string& text) {
    GroupWord w;
    w.text_ = text;
    w.terms_ = Parser(text).word();
    return w;
}

const GroupElement& Presentation::symbol(const std::string& name) const {
    auto it = symbols.find(name);
    require(it != symbols.end(), "generator " + name + " is not defined for d=" + std::to_string(d));
    return it->second;
}

const Presentation& presentation(int d) {
    static std::map<int, Presentation> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(d);
    if (it == cache.end()) it = cache.emplace(d, make_presentation(d)).first;
    return it->second;
}

std::vector<std::pair<BigInt, GroupElement>> realize(const GroupWord& w, const Presentation& pr) {
    std::vector<std::pair<BigInt, GroupElement>> out;
    for (const auto& t : w.terms()) out.emplace_back(t.coef, eval_product(t.product, pr));
    return out;
}

GroupElement realize_product(const GroupWord& w, const Presentation& pr) {
    require(w.terms().size() == 1 && w.terms()[0].coef == 1, "word is not a single product");
    return eval_product(w.terms()[0].product, pr);
}

BiPoly act_word(const BiPoly& p, const GroupWord& w, const Presentation& pr) {
    BiPoly out(p.field(), p.k());
    for (const auto& [c, g] : realize(w, pr)) out += act_poly(p, g) * QuadElem(p.field(), Rational(c));
    return out;
}

std::vector<std::vector<QuadElem>> operator_matrix(const GroupWord& w, int k, const Presentation& pr) {
    const auto& f = pr.field();
    const int n = k + 1, N = n * n;
    std::vector<std::vector<QuadElem>> M(N, std::vector<QuadElem>(N, QuadElem(f)));
    for (const auto& [coef, g] : realize(w, pr)) {
        auto A = substitution_matrix(to_k(g), k);
        QuadElem c(f, Rational(coef));
        for (int r = 0; r < n; ++r)
            for (int i = 0; i < n; ++i) {
                if (A[r][i].is_zero()) continue;
                QuadElem a = A[r][i] * c;
                for (int s = 0; s < n; ++s)
                    for (int j = 0; j < n; ++j)
                        if (!A[s][j].is_zero()) M[r * n + s][i * n + j] += a * A[s][j].conj();
            }
    }
    return M;
}

int eigen_class(int i, int j, int order) { return (((i - j) % order) + order) % order; }

std::vector<RelationResult> relation_report(int d) {
    const auto& pr = presentation(d);
    std::vector<RelationResult> out;
    for (const auto& r : pr.relations) {
        GroupElement g = realize_product(GroupWord::parse(r), pr);
        out.push_back({r, equal_up_to_sign(g, identity_element(pr.field()))});
    }
    return out;
}

bool relation_check(int d) {
    auto rep = relation_report(d);
    return std::all_of(rep.begin(), rep.end(), [](const RelationResult& r) { return r.holds; });
}

SubspaceReport wkk(int d, int k, bool with_basis) {
    require(k >= 1, "k must be >= 1");
    auto t0 = std::chrono::steady_clock::now();
    Problem pb = make_problem(d, k);
    SubspaceReport rep;
    rep.d = d;
    rep.k = k;
    int sum = 0;
    for (int c = 0; c < pb.pr->eps_order; ++c) {
        ClassResult cr = solve_class(pb, c, false);
        ensure((int)cr.basis.size() == cr.upper, "certified kernel smaller than the modular bound");
        rep.dim_by_eigenvalue[label_of(*pb.pr, c)] = cr.upper;
        rep.primes_used += cr.primes;
        sum += cr.upper;
        for (auto& b : cr.basis) {
            if (with_basis) {
                rep.basis.push_back(std::move(b));
                rep.basis_labels.push_back(label_of(*pb.pr, c));
            }
        }
    }
    ClassResult whole = solve_class(pb, -1, true);
    rep.primes_used += whole.primes;
    rep.unsplit_upper_bound = whole.upper;
    ensure(whole.upper == sum, "W is not the sum of its eps-eigenspaces (modular bound " +
                                   std::to_string(whole.upper) + ", eigenspaces " + std::to_string(sum) + ")");
    rep.dim_W = sum;
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::map<std::string, std::vector<BiPoly>> wkk_dense(int d, int k) {
    const auto& pr = presentation(d);
    const auto& f = pr.field();
    const int n = k + 1, N = n * n;
    std::vector<std::vector<std::vector<QuadElem>>> mats;
    for (const auto& w : pr.kernels) mats.push_back(operator_matrix(GroupWord::parse(w), k, pr));
    std::map<std::string, std::vector<BiPoly>> out;
    for (int cls = 0; cls < pr.eps_order; ++cls) {
        std::vector<int> cols;
        for (int m = 0; m < N; ++m)
            if (eigen_class(m / n, m % n, pr.eps_order) == cls) cols.push_back(m);
        std::vector<std::vector<QuadElem>> rows;
        for (const auto& M : mats)
            for (int r = 0; r < N; ++r) {
                std::vector<QuadElem> row;
                bool any = false;
                for (int m : cols) {
                    row.push_back(M[r][m]);
                    any |= !M[r][m].is_zero();
                }
                if (any) rows.push_back(std::move(row));
            }
        // Gauss-Jordan
        std::vector<int> pivots;
        size_t rank = 0;
        for (size_t c = 0; c < cols.size() && rank < rows.size(); ++c) {
            size_t piv = rank;
            while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
            if (piv == rows.size()) continue;
            std::swap(rows[piv], rows[rank]);
            QuadElem s = rows[rank][c].inverse();
            for (auto& x : rows[rank]) x *= s;
            for (size_t r = 0; r < rows.size(); ++r) {
                if (r == rank || rows[r][c].is_zero()) continue;
                QuadElem fct = rows[r][c];
                for (size_t j = c; j < cols.size(); ++j)
                    if (!rows[rank][j].is_zero()) rows[r][j] -= fct * rows[rank][j];
            }
            pivots.push_back((int)c);
            ++rank;
        }
        auto& basis = out[pr.eigen_labels[cls]];
        std::vector<bool> is_piv(cols.size(), false);
        for (int c : pivots) is_piv[c] = true;
        for (size_t fc = 0; fc < cols.size(); ++fc) {
            if (is_piv[fc]) continue;
            BiPoly P(f, k);
            int m = cols[fc];
            P.coeff(m / n, m % n) = QuadElem(f, Rational(1));
            for (size_t r = 0; r < pivots.size(); ++r) {
                int pm = cols[pivots[r]];
                P.coeff(pm / n, pm % n) = -rows[r][fc];
            }
            basis.push_back(std::move(P));
        }
    }
    return out;
}

Membership membership(const BiPoly& p, int d) {
    const auto& pr = presentation(d);
    require(p.field() == pr.field(), "polynomial and presentation belong to different fields");
    Membership m;
    m.member = true;
    for (const auto& w : pr.kernels)
        if (!act_word(p, GroupWord::parse(w), pr).is_zero()) {
            m.member = false;
            break;
        }
    if (p.is_zero()) return m;
    const int n = p.k() + 1;
    std::optional<int> cls;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (p.coeff(i, j).is_zero()) continue;
            int c = eigen_class(i, j, pr.eps_order);
            if (cls && *cls != c) return m;
            cls = c;
        }
    m.tag = pr.eigen_labels[*cls];
    return m;
}

std::map<std::string, int> table_dims(int d, int k) {
    std::map<std::string, int> out;
    if (k < 1 || k % 2 == 0) return out;
    const int idx = (k - 1) / 2;
    switch (d) {
        case 1:
            if (k <= 31) {
                static const int w1[] = {1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 6, 6, 7, 7, 8, 8};
                static const int wm[] = {0, 0, 0, 1, 0, 1, 1, 1, 1, 2, 1, 2, 2, 2, 2, 3};
                static const int wt[] = {1, 1, 2, 3, 3, 4, 5, 5, 6, 7, 7, 8, 9, 9, 10, 11};
                out = {{"1", w1[idx]}, {"-1", wm[idx]}, {"i", 0}, {"-i", 0}, {"total", wt[idx]}};
            }
            break;
        case 3:
            if (k <= 31) {
                static const int w1[] = {1, 1, 1, 2, 2, 2, 3, 3, 3, 4, 4, 4, 5, 5, 5, 6};
                out = {{"1", w1[idx]}, {"total", w1[idx]}};
                for (const char* l : {"zeta", "zeta^2", "-1", "zeta^4", "zeta^5"}) out[l] = 0;
            }
            break;
        case 2:
            if (k <= 31) out = {{"1", (k + 1) / 2}, {"-1", 0}, {"total", (k + 1) / 2}};
            break;
        case 7:
            if (k <= 27) {
                static const int w1[] = {1, 1, 2, 3, 3, 4, 5, 5, 6, 7, 7, 8, 9, 9};
                out = {{"1", w1[idx]}};
                if (k <= 19) out["-1"] = 0, out["total"] = w1[idx];
            }
            break;
        case 11:
            if (k <= 21) out = {{"1", (k + 1) / 2}, {"-1", 0}, {"total", (k + 1) / 2}};
            break;
    }
    return out;
}

std::map<std::string, int> conjecture_dims(int d, int k) {
    if (k < 1 || k % 2 == 0) return {};
    switch (d) {
        case 1: return {{"1", (k - 1) / 4 + 1}, {"total", (k - 1) / 3 + 1}};
        case 3: return {{"1", k / 6 + 1}};
        case 2:
        case 11: return {{"1", (k + 1) / 2}};
        case 7: return {{"1", (k - 1) / 3 + 1}};
    }
    return {};
}

namespace {

std::optional<bool> compare(const SubspaceReport& r, const std::map<std::string, int>& want) {
    if (want.empty()) return std::nullopt;
    for (const auto& [label, v] : want) {
        int got = label == "total" ? r.dim_W : r.dim_by_eigenvalue.at(label);
        if (got != v) return false;
    }
    return true;
}

}  // namespace

std::vector<TableRow> dimension_table(int d, int kmin, int kmax, bool odd_only) {
    std::vector<TableRow> out;
    for (int k = std::max(kmin, 1); k <= kmax; ++k) {
        if (odd_only && k % 2 == 0) continue;
        TableRow row{k, wkk(d, k, false), std::nullopt, std::nullopt};
        row.table_match = compare(row.report, table_dims(d, k));
        row.conjecture_match = compare(row.report, conjecture_dims(d, k));
        out.push_back(std::move(row));
    }
    return out;
}

TransferIdentities transfer_identities(const BiPoly& p, int d) {
    const auto& pr = presentation(d);
    const auto& f = pr.field();
    TransferIdentities out;
    out.swap_symmetric = p.swapped() == p;
    out.unit_invariant = true;
    for (const auto& u : f.units()) {
        GroupElement g{u, QuadInt(f), QuadInt(f), QuadInt(f, 1)};
        if (act_poly(p, g) != p) out.unit_invariant = false;
    }
    out.s_kernel = act_word(p, GroupWord::parse("1+S"), pr).is_zero();
    out.tse_identity = act_word(p, GroupWord::parse("1+T*S*neg-T"), pr).is_zero();
    if (d == 7) out.d7_identity = act_word(p, GroupWord::parse("1-Tw-S*T^-1*Tw*S-T*Tw^-1*S*Tw"), pr).is_zero();
    return out;
}

}  // namespace hermitia
