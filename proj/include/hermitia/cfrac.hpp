#pragma once

#include <optional>
#include <vector>

#include "hermitia/bipoly.hpp"
#include "hermitia/forms.hpp"
#include "hermitia/hsum.hpp"

namespace hermitia {

// z_{n+1} = 1/(z_n - a_n), a_n = nearest_int(z_n)
struct CFExpansion {
    const FieldSpec* field = nullptr;
    std::optional<QuadElem> z_exact;
    Complex z;
    std::vector<QuadInt> alphas;
    std::vector<QuadInt> p, q;             // p_0, q_0, ...
    std::vector<QuadElem> deltas_exact;    // delta_0 .. delta_N, exact path only
    std::vector<Complex> deltas;           // delta_0 .. delta_N
    bool terminated = false;

    size_t size() const { return alphas.size(); }
    // n >= -2
    QuadInt p_at(long n) const;
    QuadInt q_at(long n) const;
};

CFExpansion hurwitz_cf(const QuadElem& z, int max_steps);
// float path, carried in MPFR at the given precision
CFExpansion hurwitz_cf(Complex z, int max_steps, const FieldSpec& f, int bits = 128);

// [[q_{n-2}, -p_{n-2}], [-q_{n-1}, p_{n-1}]] for 0 <= n <= size(); maps z to z_n
GroupElement gamma_matrix(const CFExpansion& cf, long n);

struct DecayReport {
    std::vector<double> abs_deltas;  // |delta_1| .. |delta_n|
    double max_ratio = 0;
    bool rational_detected = false;
};
DecayReport delta_decay(Complex z, int n, const FieldSpec& f);

// act(gamma_n, g) for transfer forms g, keeping a < 0 < h(z,1); deduplicated and sorted
std::vector<HermitianForm> phi_image(const CFExpansion& cf, const BigInt& delta);

// sum over phi_image; the reported bound is the last step's contribution, an empirical estimate
HEvalReport eval_cf_accelerated(int k, long delta, Complex z, int steps, const FieldSpec& f);

}  // namespace hermitia
