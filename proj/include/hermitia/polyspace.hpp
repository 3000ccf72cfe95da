#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hermitia/bipoly.hpp"

namespace hermitia {

// integer combination of products of generator symbols, e.g. "1+S*Tw+Tw^-1*S*Tw*S", "(S*T)^3"
class GroupWord {
public:
    struct Factor {
        std::string symbol;           // empty for a parenthesised product
        std::vector<Factor> group;
        int power = 1;
    };
    struct Term {
        BigInt coef;
        std::vector<Factor> product;  // empty product = identity
    };

    static GroupWord parse(const std::string& text);
    const std::string& str() const { return text_; }
    const std::vector<Term>& terms() const { return terms_; }

private:
    std::string text_;
    std::vector<Term> terms_;
};

struct Presentation {
    int d;
    std::map<std::string, GroupElement> symbols;  // S, T, Tw, U, eps, neg, and L, E where defined
    std::vector<std::string> relations;           // each evaluates to +-1
    std::vector<std::string> kernels;             // W = intersection of ker(word)
    int eps_order;                                // eps = diag(u, 1), u of this order
    std::vector<std::string> eigen_labels;        // label of u^c, c = 0 .. eps_order-1

    const FieldSpec& field() const { return FieldSpec::get(d); }
    const GroupElement& symbol(const std::string& name) const;
};

const Presentation& presentation(int d);

// (coefficient, matrix) per term
std::vector<std::pair<BigInt, GroupElement>> realize(const GroupWord& w, const Presentation& pr);
GroupElement realize_product(const GroupWord& w, const Presentation& pr);  // single-term words

// P|w
BiPoly act_word(const BiPoly& p, const GroupWord& w, const Presentation& pr);

// matrix of P -> P|w on monomials z^i zb^j, index i*(k+1)+j; entry [target][source]
std::vector<std::vector<QuadElem>> operator_matrix(const GroupWord& w, int k, const Presentation& pr);

// eps-eigenvalue class of z^i zb^j is (i - j) mod eps_order
int eigen_class(int i, int j, int order);

struct RelationResult {
    std::string word;
    bool holds;
};
std::vector<RelationResult> relation_report(int d);
bool relation_check(int d);

struct SubspaceReport {
    int d = 0, k = 0;
    int dim_W = 0;
    std::map<std::string, int> dim_by_eigenvalue;
    std::vector<BiPoly> basis;
    std::vector<std::string> basis_labels;  // eigenvalue of each basis vector
    int unsplit_upper_bound = 0;            // modular nullity of the full system
    int primes_used = 0;
    double seconds = 0;
};

// certified: modular upper bounds matched by exactly verified kernel vectors
SubspaceReport wkk(int d, int k, bool with_basis = true);

// independent check: dense Gauss-Jordan over Q(w) on the full operator matrices
std::map<std::string, std::vector<BiPoly>> wkk_dense(int d, int k);

struct Membership {
    bool member = false;
    std::optional<std::string> tag;
};
Membership membership(const BiPoly& p, int d);

// published tables; absent entries are not tabulated
std::map<std::string, int> table_dims(int d, int k);
// conjectured formulas, keyed by eigenvalue label or "total"
std::map<std::string, int> conjecture_dims(int d, int k);

struct TableRow {
    int k;
    SubspaceReport report;
    std::optional<bool> table_match;
    std::optional<bool> conjecture_match;
};
std::vector<TableRow> dimension_table(int d, int kmin, int kmax, bool odd_only = true);

// identities satisfied by expand_P(k, delta)
struct TransferIdentities {
    bool swap_symmetric = false;   // P(zb, z) = P
    bool unit_invariant = false;   // P(uz, ub zb) = P
    bool s_kernel = false;         // P|(1+S) = 0
    bool tse_identity = false;     // P|(1 + T S neg - T) = 0
    std::optional<bool> d7_identity;
    bool all() const { return swap_symmetric && unit_invariant && s_kernel && tse_identity && d7_identity.value_or(true); }
};
TransferIdentities transfer_identities(const BiPoly& p, int d);

}  // namespace hermitia
