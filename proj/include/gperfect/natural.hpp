#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace gperfect {

// Arbitrary-precision non-negative integer. Everything of interest (n,
// sigma(n), 3^k - 2, ...) lives here; machine-word fast paths are internal.
using Natural = mpz_class;

// Parses a plain decimal string (digits only). Throws std::invalid_argument
// on anything else, including empty input and signs.
Natural parse_natural(std::string_view text);

std::string to_decimal(const Natural& value);

// Exact power; pow_nat(x, 0) == 1 for every x, including 0.
Natural pow_nat(const Natural& base, uint64_t exponent);

inline Natural nat_from_u64(uint64_t value) {
    return Natural(static_cast<unsigned long>(value));
}

inline bool fits_u64(const Natural& value) {
    return value >= 0 && mpz_fits_ulong_p(value.get_mpz_t()) != 0;
}

inline uint64_t to_u64(const Natural& value) {
    return static_cast<uint64_t>(mpz_get_ui(value.get_mpz_t()));
}

}  // namespace gperfect
