#pragma once

#include "gperfect/natural.hpp"
#include "gperfect/primality.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gperfect {

// Structural families with a closed construction:
//   Euclid       2^(p-1) * (2^p - 1), 2^p - 1 prime        -> perfect
//   Prop1        3^(k-1) * (3^k - 2), 3^k - 2 prime        -> 2-hyperperfect
//   Prop2        3^(p-1), p and (3^p - 1)/2 prime          -> 2*sigma(sigma(n)) = 3n + 1
//   McCraineP2Q  p^2 q with p = (3k+1)/2, q = 3k+4 prime   -> k-hyperperfect (k odd > 1)
//   PQ           p*q, distinct odd primes, k(p+q) = pq - 1 -> k-hyperperfect
//   TeRieleNash  p^(i-1) q, p = k+1, q = p^i - p + 1 prime -> k-hyperperfect
//   OddPerfectForm  the 12m+1 / 36m+9 residue filter (predicate only)
enum class FormKind { Euclid, Prop1, Prop2, McCraineP2Q, PQ, TeRieleNash, OddPerfectForm };

std::string form_name(FormKind kind);

struct FormInstance {
    FormKind form = FormKind::Euclid;
    std::vector<std::pair<std::string, Natural>> parameters;
    Natural n;
    std::vector<PrimalityCertificate> certificates;
};

// {form, parameters, n, digits, certificates}
std::string form_instance_json(const FormInstance& inst);

// Candidate value of a parametric form, with no primality requirement.
// Supports Euclid(p), Prop1(k), Prop2(p).
Natural form_value(FormKind kind, uint64_t parameter);

// p must be prime (throws std::invalid_argument otherwise); yields the
// perfect number 2^(p-1)(2^p - 1) when the Lucas-Lehmer test accepts M_p.
std::optional<FormInstance> gen_euclid(uint64_t p);

// k >= 1; yields 3^(k-1)(3^k - 2) when 3^k - 2 is prime.
std::optional<FormInstance> gen_prop1(uint64_t k);

// p must be prime; yields 3^(p-1) when (3^p - 1)/2 is prime.
std::optional<FormInstance> gen_prop2(uint64_t p);

// k odd and > 1 (throws otherwise); yields p^2 q when both p = (3k+1)/2 and
// q = 3k+4 are prime.
std::optional<FormInstance> gen_mccraine(uint64_t k);

// All pairs of distinct odd primes p < q <= p_max with k(p+q) = pq - 1,
// each yielding n = pq.
std::vector<FormInstance> find_pq(uint64_t k, uint64_t p_max);

// k >= 1, i > 1 (throws otherwise); yields p^(i-1) q for p = k+1,
// q = p^i - p + 1 when both are prime.
std::optional<FormInstance> gen_terielenash(uint64_t k, uint64_t i);

// n must be odd (throws otherwise): true iff n = 1 (mod 12) or n = 9 (mod 36).
bool odd_perfect_form_ok(const Natural& n);

// Scan k <= k_max for prime 3^k - 2; one Prop1 instance per hit, ascending.
std::vector<FormInstance> scan_3k_minus_2(uint64_t k_max);

// Scan primes p <= p_max for prime (3^p - 1)/2; one Prop2 instance per hit.
std::vector<FormInstance> scan_prop2_exponents(uint64_t p_max);

// Scan primes p <= p_max through Lucas-Lehmer; one Euclid instance per hit.
std::vector<FormInstance> scan_euclid(uint64_t p_max);

}  // namespace gperfect
