#include "gperfect/primality.hpp"

#include "gperfect/arith.hpp"

#include <json.hpp>

#include <array>
#include <stdexcept>

namespace gperfect {

namespace {

using u128 = unsigned __int128;

constexpr uint64_t kTrialBound = 1'000'000;

// Exhaustive for all n < 2^64 (Sinclair base set).
constexpr std::array<uint64_t, 7> kMrBases = {2,      325,     9375,      28178,
                                              450775, 9780504, 1795265022};

uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t mod) {
    u128 result = 1;
    u128 b = base % mod;
    while (exp) {
        if (exp & 1) result = result * b % mod;
        b = b * b % mod;
        exp >>= 1;
    }
    return static_cast<uint64_t>(result);
}

// Returns a witness (base or factor) proving n composite, or nothing.
std::optional<uint64_t> mr_u64_witness(uint64_t n) {
    if (n < 2) return n;  // non-prime by convention; subject is its own "witness"
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return std::nullopt;
        if (n % p == 0) return p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (uint64_t base : kMrBases) {
        uint64_t a = base % n;
        if (a == 0) continue;
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = static_cast<uint64_t>(u128(x) * x % n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return base;
    }
    return std::nullopt;
}

}  // namespace

bool miller_rabin_u64(uint64_t n) {
    return !mr_u64_witness(n).has_value();
}

bool strong_probable_prime_base2(const Natural& n) {
    Natural d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    Natural two = 2;
    Natural x;
    mpz_powm(x.get_mpz_t(), two.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    Natural nm1 = n - 1;
    if (x == 1 || x == nm1) return true;
    for (unsigned long r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == nm1) return true;
    }
    return false;
}

bool strong_lucas_selfridge(const Natural& n) {
    // Selfridge parameter search: D = 5, -7, 9, -11, ... with jacobi(D,n) = -1
    long d_abs = 5;
    int sign = 1;
    Natural d_mpz;
    while (true) {
        mpz_set_si(d_mpz.get_mpz_t(), sign * d_abs);
        int j = mpz_jacobi(d_mpz.get_mpz_t(), n.get_mpz_t());
        if (j == -1) break;
        if (j == 0 && n != d_abs)
            return false;  // proper shared factor with |D|
        d_abs += 2;
        sign = -sign;
    }
    const long d_signed = sign * d_abs;
    const long q_signed = (1 - d_signed) / 4;  // P = 1

    Natural D = d_mpz % n;
    if (D < 0) D += n;
    Natural Q;
    mpz_set_si(Q.get_mpz_t(), q_signed);
    Q %= n;
    if (Q < 0) Q += n;

    Natural idx = n + 1;
    unsigned long s = mpz_scan1(idx.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(idx.get_mpz_t(), idx.get_mpz_t(), s);  // idx now odd

    auto halve = [&](Natural& x) {
        if (mpz_odd_p(x.get_mpz_t())) x += n;
        mpz_fdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), 1);
    };

    // Left-to-right ladder for (U_idx, V_idx, Q^idx) with P = 1.
    Natural U = 1, V = 1, Qk = Q;
    size_t bits = mpz_sizeinbase(idx.get_mpz_t(), 2);
    for (size_t i = bits - 1; i-- > 0;) {
        U = U * V % n;
        V = (V * V - 2 * Qk) % n;
        if (V < 0) V += n;
        Qk = Qk * Qk % n;
        if (mpz_tstbit(idx.get_mpz_t(), static_cast<unsigned long>(i))) {
            Natural u_next = U + V;
            Natural v_next = D * U + V;
            halve(u_next);
            halve(v_next);
            U = u_next % n;
            V = v_next % n;
            Qk = Qk * Q % n;
        }
    }

    if (U == 0 || V == 0) return true;
    for (unsigned long r = 1; r < s; ++r) {
        V = (V * V - 2 * Qk) % n;
        if (V < 0) V += n;
        if (V == 0) return true;
        Qk = Qk * Qk % n;
    }
    return false;
}

namespace {

PrimalityCertificate trial_division_cert(uint64_t n) {
    PrimalityCertificate cert;
    cert.subject = nat_from_u64(n);
    cert.method = Method::TrialDivision;
    if (n < 2) {
        cert.verdict = Verdict::Composite;  // 0 and 1: non-prime by convention
        return cert;
    }
    for (uint32_t p : small_primes()) {
        if (uint64_t(p) * p > n) break;
        if (n % p == 0) {
            cert.verdict = Verdict::Composite;
            cert.detail = nat_from_u64(p);
            return cert;
        }
    }
    cert.verdict = Verdict::Prime;
    return cert;
}

}  // namespace

PrimalityCertificate is_prime(const Natural& n) {
    PrimalityCertificate cert;
    cert.subject = n;

    if (n < 2) {
        cert.verdict = Verdict::Composite;
        cert.method = Method::TrialDivision;
        return cert;
    }

    if (fits_u64(n)) {
        uint64_t v = to_u64(n);
        if (v < kTrialBound)
            return trial_division_cert(v);
        cert.method = Method::DeterministicMR;
        if (auto witness = mr_u64_witness(v)) {
            cert.verdict = Verdict::Composite;
            cert.detail = nat_from_u64(*witness);
        } else {
            cert.verdict = Verdict::Prime;
        }
        return cert;
    }

    // Above 2^64: BPSW (strong base-2 Miller-Rabin + strong Lucas, Selfridge
    // parameters). No pseudoprime for the combination is known.
    cert.method = Method::Bpsw;
    for (uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u, 43u, 47u}) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            cert.verdict = Verdict::Composite;
            cert.detail = Natural(p);
            return cert;
        }
    }
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        Natural root;
        mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
        cert.verdict = Verdict::Composite;
        cert.detail = root;
        return cert;
    }
    if (!strong_probable_prime_base2(n)) {
        cert.verdict = Verdict::Composite;
        cert.detail = Natural(2);
        return cert;
    }
    if (!strong_lucas_selfridge(n)) {
        cert.verdict = Verdict::Composite;
        cert.detail = Natural(0);  // failed the Lucas half; no single witness value
        return cert;
    }
    cert.verdict = Verdict::ProbablePrime;
    return cert;
}

PrimalityCertificate lucas_lehmer(uint64_t p) {
    if (!is_prime(nat_from_u64(p)).prime_or_probable())
        throw std::invalid_argument("lucas_lehmer: exponent must be prime");

    PrimalityCertificate cert;
    cert.method = Method::LucasLehmer;
    Natural m = pow_nat(2, p) - 1;
    cert.subject = m;
    if (p == 2) {
        cert.verdict = Verdict::Prime;  // M_2 = 3; the recurrence starts at p >= 3
        return cert;
    }

    Natural s = 4;
    for (uint64_t i = 0; i + 2 < p; ++i) {
        s = s * s;
        // reduce mod 2^p - 1: fold the high bits down
        Natural high;
        mpz_fdiv_q_2exp(high.get_mpz_t(), s.get_mpz_t(), p);
        Natural low;
        mpz_fdiv_r_2exp(low.get_mpz_t(), s.get_mpz_t(), p);
        s = high + low;
        if (s >= m) s -= m;
        s -= 2;
        if (s < 0) s += m;
    }

    if (s == 0) {
        cert.verdict = Verdict::Prime;
    } else {
        cert.verdict = Verdict::Composite;
        cert.detail = s;  // nonzero final residue
    }
    return cert;
}

uint64_t digit_count(const Natural& n) {
    if (n == 0) return 1;
    return n.get_str().size();
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Prime: return "prime";
        case Verdict::Composite: return "composite";
        case Verdict::ProbablePrime: return "probable-prime";
    }
    return "?";
}

std::string method_name(Method m) {
    switch (m) {
        case Method::TrialDivision: return "trial-division";
        case Method::DeterministicMR: return "deterministic-MR";
        case Method::Bpsw: return "BPSW";
        case Method::LucasLehmer: return "Lucas-Lehmer";
    }
    return "?";
}

std::string certificate_json(const PrimalityCertificate& cert) {
    nlohmann::json j;
    j["subject"] = to_decimal(cert.subject);
    j["verdict"] = verdict_name(cert.verdict);
    j["method"] = method_name(cert.method);
    if (cert.detail)
        j["detail"] = to_decimal(*cert.detail);
    return j.dump();
}

}  // namespace gperfect
