#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hermitia/field.hpp"

namespace hermitia::modp {

using u64 = std::uint64_t;

// primes stay below 2^31 so products fit in 64 bits
inline u64 mul(u64 a, u64 b, u64 p) { return a * b % p; }
inline u64 add(u64 a, u64 b, u64 p) { return (a + b) % p; }
inline u64 sub(u64 a, u64 b, u64 p) { return (a + p - b) % p; }
u64 pow(u64 a, u64 e, u64 p);
u64 inv(u64 a, u64 p);
bool is_prime(u64 n);
std::optional<u64> sqrt_mod(u64 a, u64 p);
u64 reduce(const BigInt& x, u64 p);

// p splits in O_d; root[e] is the image of the internal w under embedding e
struct SplitPrime {
    u64 p;
    u64 root[2];
};

// descending from 2^31
class SplitPrimes {
public:
    explicit SplitPrimes(const FieldSpec& f);
    SplitPrime next();

private:
    const FieldSpec* f_;
    u64 cur_;
};

u64 embed(const QuadInt& a, const SplitPrime& sp, int e);
// nullopt when p divides the denominator
std::optional<u64> embed(const QuadElem& a, const SplitPrime& sp, int e);

// reduced row echelon form
struct Echelon {
    size_t cols = 0;
    std::vector<std::vector<u64>> rows;
    std::vector<size_t> pivots;
    std::vector<size_t> source_rows;  // input row that created each pivot
    size_t rank() const { return pivots.size(); }
};

class EchelonBuilder {
public:
    EchelonBuilder(size_t cols, u64 p);
    // returns true if the row was independent of the rows so far
    bool add(std::vector<u64> row, size_t source = 0);
    Echelon finish();  // sorts rows by pivot column
    size_t rank() const { return e_.pivots.size(); }

private:
    u64 p_;
    Echelon e_;
};

// one vector per free column, 1 in that column
std::vector<std::vector<u64>> kernel(const Echelon& e, u64 p);
std::vector<size_t> free_columns(const Echelon& e);

// |n|, d <= sqrt(m/2)
std::optional<Rational> rational_reconstruct(const BigInt& a, const BigInt& m);

// residues of one integer across several primes
struct Crt {
    BigInt value = 0, modulus = 1;
    void add(u64 r, u64 p);
};

}  // namespace hermitia::modp
