// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. Searches and scans run through the shared-library C API;
// property checks and cross-verification use the core directly plus
// independent trial-division oracles.

#include "gperfect.h"

#include "gperfect/arith.hpp"
#include "gperfect/classify.hpp"
#include "gperfect/errors.hpp"
#include "gperfect/forms.hpp"
#include "gperfect/primality.hpp"
#include "gperfect/search.hpp"
#include "oracle.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using gperfect::nat_from_u64;
using gperfect::Natural;

namespace {

int g_failed = 0;

struct Criterion {
    bool pass = true;
    double seconds = 0;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back("failed: " + what);
        }
    }
    void note(const std::string& text) { notes.push_back(text); }
};

void report(int index, const std::string& title, double budget_seconds, Criterion c) {
    if (c.seconds > budget_seconds) {
        c.pass = false;
        c.notes.push_back("over time budget of " + std::to_string(budget_seconds) + " s");
    }
    std::printf("%2d. %s  %s (%.1f s)\n", index, c.pass ? "PASS" : "FAIL", title.c_str(),
                c.seconds);
    for (const auto& n : c.notes)
        std::printf("        %s\n", n.c_str());
    std::fflush(stdout);
    if (!c.pass) ++g_failed;
}

std::string join(const std::set<uint64_t>& values) {
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (uint64_t v : values) {
        if (!first) out << ", ";
        out << v;
        first = false;
    }
    out << "}";
    return out.str();
}

void collect_n_cb(const char* finding_json, void* user) {
    auto* out = static_cast<std::set<uint64_t>*>(user);
    auto j = nlohmann::json::parse(finding_json);
    out->insert(std::stoull(j.at("n").get<std::string>()));
}

// Search through the C API; returns the set of found n.
std::set<uint64_t> capi_search(const std::string& spec, uint64_t lo, uint64_t hi,
                               unsigned workers = 2) {
    gp_search* s = nullptr;
    gp_status st = gp_search_new(spec.c_str(), std::to_string(lo).c_str(),
                                 std::to_string(hi).c_str(), &s);
    if (st != GP_OK) {
        std::fprintf(stderr, "gp_search_new(%s): %s\n", spec.c_str(), gp_last_error());
        std::exit(2);
    }
    gp_search_set_workers(s, workers);
    std::set<uint64_t> ns;
    st = gp_search_run(s, collect_n_cb, &ns);
    gp_search_free(s);
    if (st != GP_OK) {
        std::fprintf(stderr, "gp_search_run(%s): %s\n", spec.c_str(), gp_last_error());
        std::exit(2);
    }
    return ns;
}

std::set<uint64_t> capi_scan_params(const std::string& form, uint64_t max_param,
                                    const std::string& param_name) {
    char* jsonl = nullptr;
    gp_status st = gp_scan(form.c_str(), max_param, nullptr, nullptr, &jsonl);
    if (st != GP_OK) {
        std::fprintf(stderr, "gp_scan(%s): %s\n", form.c_str(), gp_last_error());
        std::exit(2);
    }
    std::set<uint64_t> params;
    std::istringstream lines(jsonl);
    gp_string_free(jsonl);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        auto j = nlohmann::json::parse(line);
        params.insert(std::stoull(j.at("parameters").at(param_name).get<std::string>()));
    }
    return params;
}

// When a search result diverges from a reference set, re-derive the verdict
// for each differing n by plain trial division so the line itself proves
// which side is right.
void explain_divergence(Criterion& c, const std::set<uint64_t>& got,
                        const std::set<uint64_t>& expected, const char* equation,
                        bool (*oracle_eq)(uint64_t)) {
    for (uint64_t n : got)
        if (!expected.count(n))
            c.note("  extra " + std::to_string(n) + ": trial-division check of " + equation +
                   (oracle_eq(n) ? " CONFIRMS it is a solution (reference list is incomplete)"
                                 : " rejects it (search defect)"));
    for (uint64_t n : expected)
        if (!got.count(n))
            c.note("  missing " + std::to_string(n) + ": trial division says " +
                   (oracle_eq(n) ? "it IS a solution (search defect)"
                                 : "it is NOT a solution (reference list is wrong)"));
}

template <typename Fn>
Criterion timed(Fn&& fn) {
    Criterion c;
    auto t0 = std::chrono::steady_clock::now();
    fn(c);
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return c;
}

}  // namespace

int main() {
    std::printf("gperfect acceptance suite\n");

    // 1. perfect numbers to 10^7 and 4*10^7
    report(1, "perfect: 1..10^7 = {6,28,496,8128}; 1..4*10^7 adds 33550336; <= 60 s", 60,
           timed([](Criterion& c) {
               auto small = capi_search("perfect", 1, 10000000);
               c.check(small == std::set<uint64_t>{6, 28, 496, 8128},
                       "1..10^7 gave " + join(small));
               auto large = capi_search("perfect", 1, 40000000);
               c.check(large == std::set<uint64_t>{6, 28, 496, 8128, 33550336},
                       "1..4*10^7 gave " + join(large));
           }));

    // 2. 2-hyperperfect to 2*10^5
    report(2, "hyper:2 over 1..2*10^5 = {21, 2133, 19521, 176661}; <= 5 s", 5,
           timed([](Criterion& c) {
               auto got = capi_search("hyper:2", 1, 200000);
               c.check(got == std::set<uint64_t>{21, 2133, 19521, 176661}, join(got));
           }));

    // 3. k-hyperperfect example-table rows over 2*10^6
    report(3, "hyper k in {3,6,10,12} and k=4 over 1..2*10^6 match the example table; <= 120 s",
           120, timed([](Criterion& c) {
               const struct {
                   const char* spec;
                   std::set<uint64_t> expected;
               } rows[] = {
                   {"hyper:3", {325}},
                   {"hyper:6", {301, 16513}},
                   {"hyper:10", {159841}},
                   {"hyper:12", {697, 2041, 1570153}},
                   {"hyper:4", {1950625}},
               };
               for (const auto& row : rows) {
                   auto got = capi_search(row.spec, 1, 2000000);
                   c.check(got == row.expected,
                           std::string(row.spec) + " gave " + join(got) + ", expected " +
                               join(row.expected));
               }
           }));

    // 4. super-hyperperfect tables over 10^6
    report(4, "superhyper k=1/2/4 over 1..10^6 match the reference table; <= 120 s", 120,
           timed([](Criterion& c) {
               auto k1 = capi_search("superhyper:1", 1, 1000000);
               c.check(k1 == std::set<uint64_t>{2, 4, 16, 64, 4096, 65536, 262144},
                       "k=1 gave " + join(k1));
               auto k2 = capi_search("superhyper:2", 1, 1000000);
               c.check(k2 == std::set<uint64_t>{9, 729, 531441}, "k=2 gave " + join(k2));
               std::set<uint64_t> k4_reference = {25};
               auto k4 = capi_search("superhyper:4", 1, 1000000);
               c.check(k4 == k4_reference,
                       "k=4 gave " + join(k4) + ", reference table says {25}");
               if (k4 != k4_reference)
                   explain_divergence(c, k4, k4_reference,
                                      "4*sigma(sigma(n)) = 5n + 3",
                                      [](uint64_t n) { return oracle::super_k_hyperperfect(n, 4); });
           }));

    // 5. v4 table over 6*10^6
    report(5, "v4 over 1..6*10^6 = the 8 published values; <= 60 s", 60, timed([](Criterion& c) {
               auto got = capi_search("v4", 1, 6000000);
               c.check(got == std::set<uint64_t>{15, 207, 1023, 2975, 19359, 147455, 1207359,
                                                 5017599},
                       join(got));
           }));

    // 6. empty-result claims for v2/v3 at k = 3, 5
    report(6, "v2:3, v2:5, v3:3, v3:5 over 1..10^6 reported solution-free; <= 120 s", 120,
           timed([](Criterion& c) {
               const struct {
                   const char* spec;
                   uint64_t k;
                   bool outer;
               } rows[] = {
                   {"v2:3", 3, false}, {"v2:5", 5, false}, {"v3:3", 3, true}, {"v3:5", 5, true}};
               for (const auto& row : rows) {
                   auto got = capi_search(row.spec, 1, 1000000);
                   c.check(got.empty(), std::string(row.spec) + " gave " + join(got) +
                                            ", claim says none exist");
                   if (!got.empty()) {
                       for (uint64_t n : got) {
                           bool confirmed = row.outer ? oracle::v3(n, row.k) : oracle::v2(n, row.k);
                           c.note("  " + std::to_string(n) +
                                  ": trial-division check of the defining equation " +
                                  (confirmed ? "CONFIRMS it (the published claim missed it)"
                                             : "rejects it (search defect)"));
                       }
                   }
               }
           }));

    // 7. conjecture-1 scan to k = 600
    report(7, "scan 3k-2 to 600: 15 known exponents; <= 60 s", 60, timed([](Criterion& c) {
               auto ks = capi_scan_params("3k-2", 600, "k");
               std::set<uint64_t> expected = {2,   4,   5,   6,   9,   22,  37, 41,
                                              90,  102, 105, 317, 520, 541, 561};
               c.check(ks == expected, "scan gave " + join(ks));
           }));

    // 8. conjecture-2 scan to p = 1100
    report(8, "scan prop2 to 1100 against the published exponent list; <= 120 s", 120,
           timed([](Criterion& c) {
               auto ps = capi_scan_params("prop2", 1100, "p");
               std::set<uint64_t> reference = {3, 7, 13, 541, 1091};
               c.check(ps == reference,
                       "scan gave " + join(ps) + ", published list is " + join(reference));
               for (uint64_t p : ps)
                   if (!reference.count(p)) {
                       // cross-check with GMP's independent probabilistic test
                       Natural m = (gperfect::pow_nat(3, p) - 1) / 2;
                       int gmp_verdict = mpz_probab_prime_p(m.get_mpz_t(), 40);
                       c.note("  extra p=" + std::to_string(p) + ": (3^p-1)/2 is " +
                              (gmp_verdict ? "prime per GMP's own Miller-Rabin as well "
                                             "(published list is incomplete)"
                                           : "composite per GMP (scan defect)"));
                   }
           }));

    // 9. falsification harnesses for the two conjectures
    report(9, "conjecture harnesses: search results equal construction sets; <= 120 s", 120,
           timed([](Criterion& c) {
               auto searched = capi_search("hyper:2", 1, 200000);
               std::set<uint64_t> constructed;
               for (uint64_t k = 1; k <= 8; ++k)
                   if (auto inst = gperfect::gen_prop1(k))
                       if (gperfect::fits_u64(inst->n) && gperfect::to_u64(inst->n) <= 200000)
                           constructed.insert(gperfect::to_u64(inst->n));
               c.check(searched == constructed,
                       "2-hyperperfect search " + join(searched) + " vs construction " +
                           join(constructed) + " (a counterexample would falsify the claim)");

               auto searched2 = capi_search("superhyper:2", 1, 1000000);
               std::set<uint64_t> constructed2;
               for (const auto& inst : gperfect::scan_prop2_exponents(37))
                   if (gperfect::fits_u64(inst.n) && gperfect::to_u64(inst.n) <= 1000000)
                       constructed2.insert(gperfect::to_u64(inst.n));
               c.check(searched2 == constructed2,
                       "super-hyperperfect search " + join(searched2) + " vs construction " +
                           join(constructed2));
           }));

    // 10. property suites
    report(10, "property suites: multiplicativity, sieve-vs-oracle, MR-vs-trial, "
               "Lucas-Lehmer, worker determinism, kill-and-resume; <= 120 s",
           120, timed([](Criterion& c) {
               using namespace gperfect;

               // sigma multiplicativity on 10^4 random coprime pairs
               std::mt19937_64 rng(41);
               int pairs = 0;
               while (pairs < 10000) {
                   uint64_t a = rng() % 10000 + 1;
                   uint64_t b = rng() % 10000 + 1;
                   if (std::gcd(a, b) != 1) continue;
                   ++pairs;
                   if (sigma_u64(a * b) != sigma_u64(a) * sigma_u64(b)) {
                       c.check(false, "multiplicativity broke at a=" + std::to_string(a) +
                                          " b=" + std::to_string(b));
                       break;
                   }
               }

               // sieve vs trial-division oracle to 10^5
               SigmaTable table = sigma_sieve(1, 100000);
               for (uint64_t n = 1; n <= 100000; ++n)
                   if (table.at(n) != oracle::sigma(n)) {
                       c.check(false, "sieve disagrees with oracle at n=" + std::to_string(n));
                       break;
                   }

               // deterministic MR vs an independent Eratosthenes sieve to 10^6
               std::vector<bool> composite(1000001, false);
               for (uint64_t i = 2; i <= 1000000; ++i) {
                   if (composite[i]) continue;
                   for (uint64_t j = i * i; j <= 1000000; j += i) composite[j] = true;
               }
               for (uint64_t n = 0; n <= 1000000; ++n) {
                   bool prime = n >= 2 && !composite[n];
                   if (miller_rabin_u64(n) != prime) {
                       c.check(false, "MR disagrees with sieve at n=" + std::to_string(n));
                       break;
                   }
               }

               // Lucas-Lehmer through p = 31, against is_prime on 2^p - 1
               for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                                  29ull, 31ull}) {
                   bool mersenne_prime = lucas_lehmer(p).verdict == Verdict::Prime;
                   bool expected = p != 11 && p != 23 && p != 29;
                   c.check(mersenne_prime == expected,
                           "Lucas-Lehmer verdict for p=" + std::to_string(p));
                   c.check(is_prime(pow_nat(2, p) - 1).prime_or_probable() == mersenne_prime,
                           "is_prime(M_p) agreement for p=" + std::to_string(p));
               }

               // byte-identical output for 1, 2 and 8 workers
               SearchJob job;
               job.targets = parse_class_spec("hyper:2");
               job.lo = 1;
               job.hi = 200000;
               job.segment_length = 16384;
               std::string reference;
               for (unsigned workers : {1u, 2u, 8u}) {
                   job.workers = workers;
                   std::string rendered;
                   for (const auto& f : run_search(job))
                       rendered += finding_json(f) + "\n";
                   if (reference.empty())
                       reference = rendered;
                   else
                       c.check(rendered == reference,
                               "output changed at workers=" + std::to_string(workers));
               }

               // kill-and-resume: cancel after each possible segment count,
               // resume, and require the uninterrupted result
               fs::path cp = fs::temp_directory_path() / "gperfect_acceptance_cp.json";
               job.workers = 2;
               job.segment_length = 25000;  // 8 segments
               job.checkpoint_path = cp.string();
               std::vector<uint64_t> uninterrupted = {21, 2133, 19521, 176661};
               for (uint64_t cut = 1; cut <= 7; ++cut) {
                   fs::remove(cp);
                   SearchHooks hooks;
                   hooks.after_segment = [&](uint64_t done) { return done < cut; };
                   try {
                       run_search(job, &hooks);
                       c.check(false, "cancel hook did not stop the run");
                   } catch (const SearchCancelled&) {
                   }
                   std::vector<uint64_t> resumed;
                   for (const auto& f : resume(job))
                       resumed.push_back(to_u64(f.n));
                   c.check(resumed == uninterrupted,
                           "kill-and-resume mismatch at cut=" + std::to_string(cut));
               }
               fs::remove(cp);
           }));

    // 11. exact digit counts for the record-scale form values
    report(11, "digit counts: 3^9550 has 4557 digits, 3^20745*(3^20746-2) has 19797",
           60, timed([](Criterion& c) {
               using namespace gperfect;
               uint64_t d1 = digit_count(pow_nat(3, 9550));
               c.check(d1 == 4557, "digit_count(3^9550) = " + std::to_string(d1));
               uint64_t d2 = digit_count(form_value(FormKind::Prop1, 20746));
               c.check(d2 == 19797,
                       "digit_count(3^20745*(3^20746-2)) = " + std::to_string(d2));
               c.note("note: these values are widely quoted as 4556 and 19796; the quoted "
                      "figures are floor(log10 n) and miss the +1 (primality of 3^20746-2 "
                      "itself is record-scale and is not re-verified here)");
           }));

    std::printf("%d of 11 criteria failed\n", g_failed);
    return g_failed;
}
