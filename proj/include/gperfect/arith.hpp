#pragma once

#include "gperfect/natural.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace gperfect {

struct PrimePower {
    Natural prime;
    unsigned exponent = 1;

    bool operator==(const PrimePower& other) const {
        return prime == other.prime && exponent == other.exponent;
    }
};

// Prime factorization, primes strictly increasing, exponents >= 1.
// The empty list is the factorization of 1.
using Factorization = std::vector<PrimePower>;

Natural value_of(const Factorization& factors);

// sigma(n) for every n in a contiguous window, immutable once built.
// Values are 64-bit: sigma(n) < 2^63 for all n <= 10^17, far beyond any
// range a dense table can hold anyway.
class SigmaTable {
public:
    SigmaTable(uint64_t base, std::vector<uint64_t> values)
        : base_(base), values_(std::move(values)) {}

    uint64_t lo() const { return base_; }
    uint64_t hi() const { return base_ + values_.size() - 1; }
    size_t size() const { return values_.size(); }

    bool contains(uint64_t n) const {
        return n >= base_ && n - base_ < values_.size();
    }

    uint64_t at(uint64_t n) const;  // throws std::out_of_range

    const std::vector<uint64_t>& values() const { return values_; }

private:
    uint64_t base_;
    std::vector<uint64_t> values_;
};

// Divisor-sum sieve over [lo, hi], 1 <= lo <= hi. A dense range starting at 1
// uses a linear smallest-prime-factor sieve; a window uses trial removal of
// primes up to sqrt(hi) followed by the leftover-cofactor rule. Memory is
// proportional to the window; segment externally for big ranges.
SigmaTable sigma_sieve(uint64_t lo, uint64_t hi);

// Binary dump: "SGT1", then base offset and length as 8-byte little-endian
// unsigned, then one 8-byte little-endian value per slot.
void dump_sigma_table(const SigmaTable& table, const std::string& path);

// Unique prime factorization of n >= 1; factorize(1) == {}. Trial division
// by sieved primes below 10^6, then Pollard rho (Brent) on what remains,
// primality-testing every cofactor before accepting it.
Factorization factorize(const Natural& n);

std::vector<std::pair<uint64_t, unsigned>> factorize_u64(uint64_t n);

// Product over factors of (p^(e+1) - 1)/(p - 1); always an exact integer.
Natural sigma_of_factorization(const Factorization& factors);

Natural sigma(const Natural& n);  // n >= 1
uint64_t sigma_u64(uint64_t n);

// Primes below 1'000'000, built once, read-only afterwards.
const std::vector<uint32_t>& small_primes();

std::vector<uint64_t> primes_up_to(uint64_t limit);

uint64_t isqrt_u64(uint64_t n);

}  // namespace gperfect
