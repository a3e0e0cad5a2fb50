#pragma once

#include "gperfect/natural.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace gperfect {

enum class Verdict { Prime, Composite, ProbablePrime };

enum class Method { TrialDivision, DeterministicMR, Bpsw, LucasLehmer };

// Record of how a verdict was reached. For composites of any size >= 2,
// detail carries either a nontrivial factor or the witness that failed
// (Miller-Rabin base, Lucas discriminant, or Lucas-Lehmer residue).
struct PrimalityCertificate {
    Natural subject;
    Verdict verdict = Verdict::Composite;
    Method method = Method::TrialDivision;
    std::optional<Natural> detail;

    bool prime_or_probable() const { return verdict != Verdict::Composite; }
};

std::string verdict_name(Verdict v);
std::string method_name(Method m);
std::string certificate_json(const PrimalityCertificate& cert);

// Three tiers: trial division below 10^6, the fixed 7-base Miller-Rabin set
// (exhaustive for 64-bit inputs) up to 2^64, BPSW above that. Verdicts below
// 2^64 are deterministic; above, a pass is reported as probable-prime.
// 0 and 1 are non-prime by convention.
PrimalityCertificate is_prime(const Natural& n);

inline bool is_prime_quick(const Natural& n) {
    return is_prime(n).prime_or_probable();
}

// Deterministic for every 64-bit n.
bool miller_rabin_u64(uint64_t n);

// BPSW halves, exposed so each can be checked on its own. Both expect odd
// n >= 3 with no tiny factor; strong_lucas_selfridge additionally expects a
// non-square (squares never admit jacobi(D, n) == -1).
bool strong_probable_prime_base2(const Natural& n);
bool strong_lucas_selfridge(const Natural& n);

// s <- s^2 - 2 mod 2^p - 1 from s = 4; deterministic Mersenne test.
// p itself must be prime or std::invalid_argument is thrown.
PrimalityCertificate lucas_lehmer(uint64_t p);

// Exact decimal length (no floating point); digit_count(0) == 1.
uint64_t digit_count(const Natural& n);

}  // namespace gperfect
