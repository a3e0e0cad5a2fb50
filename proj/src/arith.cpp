#include "gperfect/arith.hpp"

#include "gperfect/errors.hpp"
#include "gperfect/primality.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace gperfect {

namespace {

using u128 = unsigned __int128;

constexpr uint64_t kSmallPrimeBound = 1'000'000;

}  // namespace

Natural parse_natural(std::string_view text) {
    if (text.empty())
        throw std::invalid_argument("empty decimal string");
    for (char c : text) {
        if (c < '0' || c > '9')
            throw std::invalid_argument("not a decimal natural: '" + std::string(text) + "'");
    }
    Natural out;
    mpz_set_str(out.get_mpz_t(), std::string(text).c_str(), 10);
    return out;
}

std::string to_decimal(const Natural& value) {
    return value.get_str();
}

Natural pow_nat(const Natural& base, uint64_t exponent) {
    Natural out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exponent));
    return out;
}

Natural value_of(const Factorization& factors) {
    Natural out = 1;
    for (const auto& pp : factors)
        out *= pow_nat(pp.prime, pp.exponent);
    return out;
}

uint64_t SigmaTable::at(uint64_t n) const {
    if (!contains(n))
        throw std::out_of_range("n outside sigma table range");
    return values_[n - base_];
}

uint64_t isqrt_u64(uint64_t n) {
    if (n == 0) return 0;
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

const std::vector<uint32_t>& small_primes() {
    static const std::vector<uint32_t> primes = [] {
        std::vector<bool> composite(kSmallPrimeBound, false);
        std::vector<uint32_t> out;
        for (uint32_t i = 2; i < kSmallPrimeBound; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (uint64_t j = uint64_t(i) * i; j < kSmallPrimeBound; j += i)
                composite[j] = true;
        }
        return out;
    }();
    return primes;
}

std::vector<uint64_t> primes_up_to(uint64_t limit) {
    std::vector<uint64_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (uint64_t j = i * i; j <= limit; j += i)
            composite[j] = true;
    }
    return out;
}

namespace {

// Linear smallest-prime-factor sieve for a dense range [1, hi]. Each
// composite is crossed exactly once; low[] tracks the full power of the
// smallest prime factor so sigma composes multiplicatively.
std::vector<uint64_t> sieve_dense(uint64_t hi) {
    std::vector<uint64_t> sig(hi + 1, 0);
    std::vector<uint64_t> low(hi + 1, 0);
    std::vector<uint32_t> primes;
    sig[1] = 1;
    low[1] = 1;
    for (uint64_t i = 2; i <= hi; ++i) {
        if (sig[i] == 0) {
            sig[i] = i + 1;
            low[i] = i;
            primes.push_back(static_cast<uint32_t>(i));
        }
        for (uint32_t p : primes) {
            if (p > hi / i) break;
            uint64_t m = i * p;
            if (i % p == 0) {
                low[m] = low[i] * p;
                // sigma(p^(e+1)) = sigma(p^e) + p^(e+1)
                sig[m] = (low[m] == m) ? sig[i] + m : sig[m / low[m]] * sig[low[m]];
                break;
            }
            low[m] = p;
            sig[m] = sig[i] * (uint64_t(p) + 1);
        }
    }
    std::vector<uint64_t> values(sig.begin() + 1, sig.end());
    return values;
}

// Windowed sieve: strip every prime p <= sqrt(hi) out of each multiple,
// multiplying in sigma(p^e) as it goes; whatever remains above 1 is a single
// prime factor larger than sqrt(hi).
std::vector<uint64_t> sieve_window(uint64_t lo, uint64_t hi) {
    const size_t len = static_cast<size_t>(hi - lo + 1);
    std::vector<uint64_t> rem(len);
    std::vector<uint64_t> sig(len, 1);
    for (size_t i = 0; i < len; ++i)
        rem[i] = lo + i;

    const uint64_t root = isqrt_u64(hi);
    auto apply_prime = [&](uint64_t p) {
        uint64_t first = ((lo + p - 1) / p) * p;
        for (uint64_t m = first; m <= hi; m += p) {
            size_t i = static_cast<size_t>(m - lo);
            uint64_t power = 1;
            uint64_t s = 1;
            while (rem[i] % p == 0) {
                rem[i] /= p;
                power *= p;
                s += power;
            }
            sig[i] *= s;
            if (m > hi - p) break;  // m += p would wrap at extreme hi
        }
    };

    if (root < kSmallPrimeBound) {
        for (uint32_t p : small_primes()) {
            if (p > root) break;
            apply_prime(p);
        }
    } else {
        for (uint64_t p : primes_up_to(root))
            apply_prime(p);
    }

    for (size_t i = 0; i < len; ++i)
        if (rem[i] > 1)
            sig[i] *= rem[i] + 1;
    return sig;
}

}  // namespace

SigmaTable sigma_sieve(uint64_t lo, uint64_t hi) {
    if (lo < 1 || lo > hi)
        throw std::invalid_argument("sigma_sieve: need 1 <= lo <= hi");
    if (lo == 1)
        return SigmaTable(1, sieve_dense(hi));
    return SigmaTable(lo, sieve_window(lo, hi));
}

namespace {

void put_u64_le(std::ofstream& out, uint64_t v) {
    char bytes[8];
    for (int i = 0; i < 8; ++i)
        bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(bytes, 8);
}

}  // namespace

void dump_sigma_table(const SigmaTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    out.write("SGT1", 4);
    put_u64_le(out, table.lo());
    put_u64_le(out, table.size());
    for (uint64_t v : table.values())
        put_u64_le(out, v);
    out.flush();
    if (!out)
        throw IoError("short write to '" + path + "'");
}

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>(u128(a) * b % m);
}

uint64_t addmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    a %= m;
    b %= m;
    uint64_t s = a + b;
    if (s < a || s >= m) s -= m;
    return s;
}

uint64_t gcd_u64(uint64_t a, uint64_t b) {
    while (b) {
        uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Brent-cycle Pollard rho; n must be composite, odd, and free of tiny factors.
uint64_t rho_brent_u64(uint64_t n) {
    for (uint64_t c = 1;; ++c) {
        uint64_t y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
        const uint64_t m = 128;
        while (g == 1) {
            x = y;
            for (uint64_t i = 0; i < r; ++i)
                y = addmod_u64(mulmod_u64(y, y, n), c, n);
            for (uint64_t k = 0; k < r && g == 1; k += m) {
                ys = y;
                uint64_t lim = std::min(m, r - k);
                for (uint64_t i = 0; i < lim; ++i) {
                    y = addmod_u64(mulmod_u64(y, y, n), c, n);
                    q = mulmod_u64(q, x > y ? x - y : y - x, n);
                }
                g = gcd_u64(q, n);
            }
            r *= 2;
        }
        if (g == n) {
            // backtrack one step at a time
            g = 1;
            while (g == 1) {
                ys = addmod_u64(mulmod_u64(ys, ys, n), c, n);
                g = gcd_u64(x > ys ? x - ys : ys - x, n);
            }
        }
        if (g != n) return g;
    }
}

void factor_u64_into(uint64_t n, std::vector<uint64_t>& primes_out) {
    if (n == 1) return;
    if (miller_rabin_u64(n)) {
        primes_out.push_back(n);
        return;
    }
    uint64_t d = rho_brent_u64(n);
    factor_u64_into(d, primes_out);
    factor_u64_into(n / d, primes_out);
}

}  // namespace

std::vector<std::pair<uint64_t, unsigned>> factorize_u64(uint64_t n) {
    if (n == 0)
        throw std::domain_error("factorize: n must be >= 1");
    std::vector<std::pair<uint64_t, unsigned>> out;
    for (uint32_t p : small_primes()) {
        if (uint64_t(p) * p > n) break;
        if (n % p == 0) {
            unsigned e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) {
        if (n < kSmallPrimeBound * kSmallPrimeBound) {
            // no factor below 10^6 survived, so the cofactor is prime
            out.emplace_back(n, 1);
        } else {
            std::vector<uint64_t> rest;
            factor_u64_into(n, rest);
            std::sort(rest.begin(), rest.end());
            for (size_t i = 0; i < rest.size();) {
                size_t j = i;
                while (j < rest.size() && rest[j] == rest[i]) ++j;
                out.emplace_back(rest[i], static_cast<unsigned>(j - i));
                i = j;
            }
            std::sort(out.begin(), out.end());
        }
    }
    return out;
}

namespace {

// Brent rho over mpz for cofactors above 2^64.
Natural rho_brent_mpz(const Natural& n) {
    for (unsigned long c = 1;; ++c) {
        Natural y = 2, x, ys, q = 1, g = 1;
        uint64_t r = 1;
        const uint64_t m = 64;
        auto step = [&](Natural& v) {
            v = (v * v + c) % n;
        };
        while (g == 1) {
            x = y;
            for (uint64_t i = 0; i < r; ++i) step(y);
            for (uint64_t k = 0; k < r && g == 1; k += m) {
                ys = y;
                uint64_t lim = std::min(m, r - k);
                for (uint64_t i = 0; i < lim; ++i) {
                    step(y);
                    q = q * abs(x - y) % n;
                }
                g = gcd(q, n);
            }
            r *= 2;
        }
        if (g == n) {
            g = 1;
            while (g == 1) {
                step(ys);
                g = gcd(Natural(abs(x - ys)), n);
            }
        }
        if (g != n) return g;
    }
}

void factor_mpz_into(const Natural& n, std::vector<Natural>& primes_out) {
    if (n == 1) return;
    if (is_prime(n).verdict != Verdict::Composite) {
        primes_out.push_back(n);
        return;
    }
    Natural d = rho_brent_mpz(n);
    factor_mpz_into(d, primes_out);
    factor_mpz_into(Natural(n / d), primes_out);
}

}  // namespace

Factorization factorize(const Natural& n) {
    if (n == 0)
        throw std::domain_error("factorize: n must be >= 1");
    if (fits_u64(n)) {
        Factorization out;
        for (auto [p, e] : factorize_u64(to_u64(n)))
            out.push_back({nat_from_u64(p), e});
        return out;
    }

    Factorization out;
    Natural rest = n;
    for (uint32_t p : small_primes()) {
        if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            unsigned e = 0;
            do {
                mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
                ++e;
            } while (mpz_divisible_ui_p(rest.get_mpz_t(), p));
            out.push_back({Natural(p), e});
        }
        if (fits_u64(rest)) break;
    }
    if (rest > 1) {
        if (fits_u64(rest)) {
            for (auto [p, e] : factorize_u64(to_u64(rest)))
                out.push_back({nat_from_u64(p), e});
        } else {
            std::vector<Natural> big;
            factor_mpz_into(rest, big);
            std::sort(big.begin(), big.end());
            for (size_t i = 0; i < big.size();) {
                size_t j = i;
                while (j < big.size() && big[j] == big[i]) ++j;
                out.push_back({big[i], static_cast<unsigned>(j - i)});
                i = j;
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const PrimePower& a, const PrimePower& b) {
        return a.prime < b.prime;
    });
    return out;
}

Natural sigma_of_factorization(const Factorization& factors) {
    Natural out = 1;
    for (const auto& pp : factors) {
        Natural num = pow_nat(pp.prime, pp.exponent + 1) - 1;
        Natural den = pp.prime - 1;
        Natural term;
        mpz_divexact(term.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        out *= term;
    }
    return out;
}

Natural sigma(const Natural& n) {
    if (n == 0)
        throw std::domain_error("sigma: n must be >= 1");
    if (fits_u64(n) && to_u64(n) < (uint64_t(1) << 58))
        return nat_from_u64(sigma_u64(to_u64(n)));
    return sigma_of_factorization(factorize(n));
}

uint64_t sigma_u64(uint64_t n) {
    if (n == 0)
        throw std::domain_error("sigma: n must be >= 1");
    uint64_t out = 1;
    for (auto [p, e] : factorize_u64(n)) {
        uint64_t power = 1;
        uint64_t s = 1;
        for (unsigned i = 0; i < e; ++i) {
            power *= p;
            s += power;
        }
        out *= s;
    }
    return out;
}

}  // namespace gperfect
