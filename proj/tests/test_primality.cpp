#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gperfect/arith.hpp"
#include "gperfect/primality.hpp"
#include "oracle.hpp"

#include <json.hpp>

#include <random>

using namespace gperfect;

TEST_CASE("verdicts agree with trial division up to 2*10^5") {
    for (uint64_t n = 0; n <= 200000; ++n) {
        bool expected = oracle::is_prime(n);
        REQUIRE(is_prime(nat_from_u64(n)).prime_or_probable() == expected);
        REQUIRE(miller_rabin_u64(n) == expected);
    }
}

TEST_CASE("point certificates") {
    auto c241 = is_prime(241);
    CHECK(c241.verdict == Verdict::Prime);
    CHECK(c241.method == Method::TrialDivision);

    auto c2047 = is_prime(2047);  // 23 * 89
    CHECK(c2047.verdict == Verdict::Composite);
    REQUIRE(c2047.detail.has_value());
    CHECK(*c2047.detail == 23);

    CHECK(is_prime(1).verdict == Verdict::Composite);
    CHECK(is_prime(0).verdict == Verdict::Composite);
    CHECK(is_prime(2).verdict == Verdict::Prime);
}

TEST_CASE("strong base-2 pseudoprimes are caught by the full base set") {
    // classic strong pseudoprimes to base 2 alone
    for (uint64_t n : {2047ull, 3277ull, 4033ull, 4681ull, 8321ull, 15841ull}) {
        CHECK(!oracle::is_prime(n));
        CHECK(!miller_rabin_u64(n));
    }
}

TEST_CASE("deterministic MR handles large 64-bit values") {
    CHECK(miller_rabin_u64(2147483647ull));            // 2^31 - 1
    CHECK(miller_rabin_u64(18446744073709551557ull));  // largest 64-bit prime
    CHECK(!miller_rabin_u64(18446744073709551555ull));
    CHECK(miller_rabin_u64(2305843009213693951ull));   // 2^61 - 1
}

TEST_CASE("BPSW path above 2^64") {
    auto m89 = is_prime(pow_nat(2, 89) - 1);
    CHECK(m89.verdict == Verdict::ProbablePrime);
    CHECK(m89.method == Method::Bpsw);

    auto m67 = is_prime(pow_nat(2, 67) - 1);
    CHECK(m67.verdict == Verdict::Composite);

    CHECK(is_prime(pow_nat(2, 107) - 1).prime_or_probable());
    CHECK(is_prime(pow_nat(2, 127) - 1).prime_or_probable());
    CHECK(!is_prime(pow_nat(2, 97) - 1).prime_or_probable());

    // 3^90 - 2 is one of the scan hits; its verdict must be probable-prime
    CHECK(is_prime(pow_nat(3, 90) - 2).verdict == Verdict::ProbablePrime);

    // even and square inputs above 2^64
    CHECK(is_prime(pow_nat(2, 70)).verdict == Verdict::Composite);
    Natural sq = (pow_nat(10, 11) + 3) * (pow_nat(10, 11) + 3);
    CHECK(is_prime(sq).verdict == Verdict::Composite);
}

TEST_CASE("BPSW halves behave structurally below 10^5") {
    // every odd prime passes both halves; the composites that slip through
    // one half are caught by the other
    int lucas_only = 0, mr2_only = 0;
    for (uint64_t n = 3; n <= 100000; n += 2) {
        Natural nn = nat_from_u64(n);
        if (mpz_perfect_square_p(nn.get_mpz_t())) continue;
        bool mr2 = strong_probable_prime_base2(nn);
        bool lucas = strong_lucas_selfridge(nn);
        bool prime = oracle::is_prime(n);
        if (prime) {
            REQUIRE(mr2);
            REQUIRE(lucas);
        } else {
            REQUIRE(!(mr2 && lucas));
            if (lucas) ++lucas_only;
            if (mr2) ++mr2_only;
        }
    }
    // both halves must actually be doing the work (pseudoprimes exist)
    CHECK(lucas_only > 0);
    CHECK(mr2_only > 0);
}

TEST_CASE("lucas_lehmer on small exponents") {
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 13ull, 17ull, 19ull, 31ull}) {
        auto cert = lucas_lehmer(p);
        CHECK(cert.verdict == Verdict::Prime);
        CHECK(cert.method == Method::LucasLehmer);
        CHECK(cert.subject == pow_nat(2, p) - 1);
        CHECK(is_prime(pow_nat(2, p) - 1).prime_or_probable());
    }
    for (uint64_t p : {11ull, 23ull, 29ull, 37ull}) {
        auto cert = lucas_lehmer(p);
        CHECK(cert.verdict == Verdict::Composite);
        CHECK(cert.detail.has_value());  // nonzero residue
        CHECK(!is_prime(pow_nat(2, p) - 1).prime_or_probable());
    }
    CHECK_THROWS_AS(lucas_lehmer(12), std::invalid_argument);
    CHECK_THROWS_AS(lucas_lehmer(1), std::invalid_argument);
}

TEST_CASE("digit_count") {
    CHECK(digit_count(8128) == 4);
    CHECK(digit_count(0) == 1);
    CHECK(digit_count(9) == 1);
    CHECK(digit_count(10) == 2);
    for (uint64_t k = 0; k <= 30; ++k)
        CHECK(digit_count(pow_nat(10, k)) == k + 1);

    std::mt19937_64 rng(23);
    for (int i = 0; i < 100; ++i) {
        Natural n = nat_from_u64(rng() % 1000000 + 1) * pow_nat(7, rng() % 50);
        CHECK(digit_count(n * 10) == digit_count(n) + 1);
    }

    CHECK(digit_count(pow_nat(3, 9550)) == 4557);
}

TEST_CASE("certificate json shape") {
    auto j = nlohmann::json::parse(certificate_json(is_prime(2047)));
    CHECK(j["subject"] == "2047");
    CHECK(j["verdict"] == "composite");
    CHECK(j["method"] == "trial-division");
    CHECK(j["detail"] == "23");

    auto jp = nlohmann::json::parse(certificate_json(is_prime(pow_nat(2, 89) - 1)));
    CHECK(jp["verdict"] == "probable-prime");
    CHECK(jp["method"] == "BPSW");
    CHECK(!jp.contains("detail"));
}
