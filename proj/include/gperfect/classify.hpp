#pragma once

#include "gperfect/arith.hpp"
#include "gperfect/natural.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gperfect {

// The seven equation families, all evaluated in cross-multiplied exact
// integer form:
//   Perfect          sigma(n) = 2n                    (= KHyper with k = 1)
//   Superperfect     sigma(sigma(n)) = 2n             (= SuperKHyper, k = 1)
//   KHyper(k)        k*sigma(n) = (k+1)*n + (k-1)
//   SuperKHyper(k)   k*sigma(sigma(n)) = (k+1)*n + (k-1)
//   V2(k)            k*sigma(n) = (2k-1)*n + 1
//   V3(k)            k*sigma(sigma(n)) = (2k-1)*n + 1
//   V4               2*sigma(n) = 3*(n+1)
//   V5               2*sigma(sigma(n)) = 3*(n+1)
enum class Family { Perfect, Superperfect, KHyper, SuperKHyper, V2, V3, V4, V5 };

bool family_has_k(Family f);
bool family_uses_outer_sigma(Family f);

std::string family_name(Family f);
std::optional<Family> family_from_name(std::string_view name);

struct PerfectionClass {
    Family family = Family::Perfect;
    Natural k = 1;  // meaningful only when family_has_k

    bool operator==(const PerfectionClass& other) const {
        return family == other.family && (!family_has_k(family) || k == other.k);
    }
};

// Stable text tags: "perfect", "superperfect", "hyper(k)", "superhyper(k)",
// "v2(k)", "v3(k)", "v4", "v5".
std::string class_tag(const PerfectionClass& cls);

// Equation checks on precomputed sigma values. sigma_sigma_n is consulted
// only by the families that use the outer sigma.
bool class_equation_holds(Family f, const Natural& k, const Natural& n,
                          const Natural& sigma_n, const Natural& sigma_sigma_n);
bool class_equation_holds_u64(Family f, uint64_t k, uint64_t n,
                              uint64_t sigma_n, uint64_t sigma_sigma_n);

bool is_perfect(const Natural& n);
bool is_superperfect(const Natural& n);
bool is_k_hyperperfect(const Natural& n, const Natural& k);
bool is_super_k_hyperperfect(const Natural& n, const Natural& k);
bool is_v2(const Natural& n, const Natural& k);
bool is_v3(const Natural& n, const Natural& k);
bool is_v4(const Natural& n);
bool is_v5(const Natural& n);

// k = (n-1)/(sigma(n)-n-1) when the denominator is positive and divides
// exactly; primes and 1 are degenerate and return nothing. n >= 2.
std::optional<Natural> hyper_k_of(const Natural& n);

// A certified solution: the class equation holds exactly for the stored
// values, and sigma_sigma_n is present iff the class uses the outer sigma.
struct Finding {
    Natural n;
    PerfectionClass cls;
    Natural sigma_n;
    std::optional<Natural> sigma_sigma_n;
    Factorization factorization;
};

std::string finding_json(const Finding& f);
Finding finding_from_json(const std::string& text);

// Every class n satisfies. Candidate k for the parameterized families comes
// from exact division; k_max bounds only the degenerate-denominator fallback
// for V2/V3. n = 1 satisfies nothing.
std::vector<PerfectionClass> classify_all(const Natural& n, const Natural& k_max);

}  // namespace gperfect
