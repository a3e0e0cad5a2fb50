#include "gperfect/classify.hpp"

#include <json.hpp>

#include <stdexcept>

namespace gperfect {

bool family_has_k(Family f) {
    switch (f) {
        case Family::KHyper:
        case Family::SuperKHyper:
        case Family::V2:
        case Family::V3:
            return true;
        default:
            return false;
    }
}

bool family_uses_outer_sigma(Family f) {
    switch (f) {
        case Family::Superperfect:
        case Family::SuperKHyper:
        case Family::V3:
        case Family::V5:
            return true;
        default:
            return false;
    }
}

std::string family_name(Family f) {
    switch (f) {
        case Family::Perfect: return "perfect";
        case Family::Superperfect: return "superperfect";
        case Family::KHyper: return "hyper";
        case Family::SuperKHyper: return "superhyper";
        case Family::V2: return "v2";
        case Family::V3: return "v3";
        case Family::V4: return "v4";
        case Family::V5: return "v5";
    }
    return "?";
}

std::optional<Family> family_from_name(std::string_view name) {
    if (name == "perfect") return Family::Perfect;
    if (name == "superperfect") return Family::Superperfect;
    if (name == "hyper") return Family::KHyper;
    if (name == "superhyper") return Family::SuperKHyper;
    if (name == "v2") return Family::V2;
    if (name == "v3") return Family::V3;
    if (name == "v4") return Family::V4;
    if (name == "v5") return Family::V5;
    return std::nullopt;
}

std::string class_tag(const PerfectionClass& cls) {
    std::string tag = family_name(cls.family);
    if (family_has_k(cls.family))
        tag += "(" + to_decimal(cls.k) + ")";
    return tag;
}

bool class_equation_holds(Family f, const Natural& k, const Natural& n,
                          const Natural& sigma_n, const Natural& sigma_sigma_n) {
    switch (f) {
        case Family::Perfect:
            return sigma_n == 2 * n;
        case Family::Superperfect:
            return sigma_sigma_n == 2 * n;
        case Family::KHyper:
            return k * sigma_n == (k + 1) * n + (k - 1);
        case Family::SuperKHyper:
            return k * sigma_sigma_n == (k + 1) * n + (k - 1);
        case Family::V2:
            return k * sigma_n == (2 * k - 1) * n + 1;
        case Family::V3:
            return k * sigma_sigma_n == (2 * k - 1) * n + 1;
        case Family::V4:
            return 2 * sigma_n == 3 * (n + 1);
        case Family::V5:
            return 2 * sigma_sigma_n == 3 * (n + 1);
    }
    return false;
}

bool class_equation_holds_u64(Family f, uint64_t k, uint64_t n,
                              uint64_t sigma_n, uint64_t sigma_sigma_n) {
    using u128 = unsigned __int128;
    const u128 kk = k, nn = n, s = sigma_n, ss = sigma_sigma_n;
    switch (f) {
        case Family::Perfect:
            return s == 2 * nn;
        case Family::Superperfect:
            return ss == 2 * nn;
        case Family::KHyper:
            return kk * s == (kk + 1) * nn + (kk - 1);
        case Family::SuperKHyper:
            return kk * ss == (kk + 1) * nn + (kk - 1);
        case Family::V2:
            return kk * s == (2 * kk - 1) * nn + 1;
        case Family::V3:
            return kk * ss == (2 * kk - 1) * nn + 1;
        case Family::V4:
            return 2 * s == 3 * (nn + 1);
        case Family::V5:
            return 2 * ss == 3 * (nn + 1);
    }
    return false;
}

namespace {

void require_positive(const Natural& n) {
    if (n < 1)
        throw std::domain_error("n must be >= 1");
}

void require_k(const Natural& k) {
    if (k < 1)
        throw std::invalid_argument("k must be >= 1");
}

Natural sigma_sigma(const Natural& n) {
    return sigma(sigma(n));
}

}  // namespace

bool is_perfect(const Natural& n) {
    require_positive(n);
    return sigma(n) == 2 * n;
}

bool is_superperfect(const Natural& n) {
    require_positive(n);
    return sigma_sigma(n) == 2 * n;
}

bool is_k_hyperperfect(const Natural& n, const Natural& k) {
    require_positive(n);
    require_k(k);
    return class_equation_holds(Family::KHyper, k, n, sigma(n), 0);
}

bool is_super_k_hyperperfect(const Natural& n, const Natural& k) {
    require_positive(n);
    require_k(k);
    return class_equation_holds(Family::SuperKHyper, k, n, 0, sigma_sigma(n));
}

bool is_v2(const Natural& n, const Natural& k) {
    require_positive(n);
    require_k(k);
    return class_equation_holds(Family::V2, k, n, sigma(n), 0);
}

bool is_v3(const Natural& n, const Natural& k) {
    require_positive(n);
    require_k(k);
    return class_equation_holds(Family::V3, k, n, 0, sigma_sigma(n));
}

bool is_v4(const Natural& n) {
    require_positive(n);
    return class_equation_holds(Family::V4, 1, n, sigma(n), 0);
}

bool is_v5(const Natural& n) {
    require_positive(n);
    return class_equation_holds(Family::V5, 1, n, 0, sigma_sigma(n));
}

namespace {

// k = (n-1)/den when den > 0, the division is exact, and k >= 1.
std::optional<Natural> derive_k(const Natural& n, const Natural& den) {
    if (den <= 0) return std::nullopt;
    Natural q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), Natural(n - 1).get_mpz_t(), den.get_mpz_t());
    if (r != 0 || q < 1) return std::nullopt;
    return q;
}

}  // namespace

std::optional<Natural> hyper_k_of(const Natural& n) {
    if (n < 2)
        throw std::domain_error("hyper_k_of: n must be >= 2");
    return derive_k(n, sigma(n) - n - 1);
}

std::vector<PerfectionClass> classify_all(const Natural& n, const Natural& k_max) {
    require_positive(n);
    std::vector<PerfectionClass> out;
    if (n == 1) return out;  // satisfies nothing: sigma(1) = 1

    const Natural s = sigma(n);
    const Natural ss = sigma(s);

    if (s == 2 * n) out.push_back({Family::Perfect, 1});
    if (ss == 2 * n) out.push_back({Family::Superperfect, 1});

    if (auto k = derive_k(n, s - n - 1)) out.push_back({Family::KHyper, *k});
    if (auto k = derive_k(n, ss - n - 1)) out.push_back({Family::SuperKHyper, *k});

    // V2/V3: k*(2n - sigma) = n - 1 isolates k unless the denominator
    // vanishes. A zero denominator forces n = 1 after substitution, which is
    // excluded above, so the k <= k_max fallback scan has nothing to find
    // and is skipped. (k_max stays in the signature for that contract.)
    (void)k_max;
    if (auto k = derive_k(n, 2 * n - s)) out.push_back({Family::V2, *k});
    if (auto k = derive_k(n, 2 * n - ss)) out.push_back({Family::V3, *k});

    if (class_equation_holds(Family::V4, 1, n, s, 0)) out.push_back({Family::V4, 1});
    if (class_equation_holds(Family::V5, 1, n, 0, ss)) out.push_back({Family::V5, 1});
    return out;
}

std::string finding_json(const Finding& f) {
    nlohmann::json j;
    j["n"] = to_decimal(f.n);
    j["class"] = class_tag(f.cls);
    if (family_has_k(f.cls.family))
        j["k"] = to_decimal(f.cls.k);
    j["sigma_n"] = to_decimal(f.sigma_n);
    if (f.sigma_sigma_n)
        j["sigma_sigma_n"] = to_decimal(*f.sigma_sigma_n);
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& pp : f.factorization)
        factors.push_back({to_decimal(pp.prime), std::to_string(pp.exponent)});
    j["factorization"] = factors;
    return j.dump();
}

Finding finding_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Finding f;
    f.n = parse_natural(j.at("n").get<std::string>());
    std::string tag = j.at("class").get<std::string>();
    auto paren = tag.find('(');
    auto fam = family_from_name(tag.substr(0, paren));
    if (!fam)
        throw std::invalid_argument("unknown class tag: " + tag);
    f.cls.family = *fam;
    if (j.contains("k"))
        f.cls.k = parse_natural(j.at("k").get<std::string>());
    f.sigma_n = parse_natural(j.at("sigma_n").get<std::string>());
    if (j.contains("sigma_sigma_n"))
        f.sigma_sigma_n = parse_natural(j.at("sigma_sigma_n").get<std::string>());
    for (const auto& pair : j.at("factorization")) {
        PrimePower pp;
        pp.prime = parse_natural(pair.at(0).get<std::string>());
        pp.exponent = static_cast<unsigned>(std::stoul(pair.at(1).get<std::string>()));
        f.factorization.push_back(pp);
    }
    return f;
}

}  // namespace gperfect
