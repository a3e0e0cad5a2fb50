#include "gperfect/forms.hpp"

#include "gperfect/arith.hpp"

#include <json.hpp>

#include <stdexcept>

namespace gperfect {

std::string form_name(FormKind kind) {
    switch (kind) {
        case FormKind::Euclid: return "euclid";
        case FormKind::Prop1: return "prop1";
        case FormKind::Prop2: return "prop2";
        case FormKind::McCraineP2Q: return "mccraine-p2q";
        case FormKind::PQ: return "pq";
        case FormKind::TeRieleNash: return "teriele-nash";
        case FormKind::OddPerfectForm: return "odd-perfect-form";
    }
    return "?";
}

std::string form_instance_json(const FormInstance& inst) {
    nlohmann::json j;
    j["form"] = form_name(inst.form);
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [name, value] : inst.parameters)
        params[name] = to_decimal(value);
    j["parameters"] = params;
    j["n"] = to_decimal(inst.n);
    j["digits"] = digit_count(inst.n);
    nlohmann::json certs = nlohmann::json::array();
    for (const auto& cert : inst.certificates)
        certs.push_back(nlohmann::json::parse(certificate_json(cert)));
    j["certificates"] = certs;
    return j.dump();
}

Natural form_value(FormKind kind, uint64_t parameter) {
    switch (kind) {
        case FormKind::Euclid:
            return pow_nat(2, parameter - 1) * (pow_nat(2, parameter) - 1);
        case FormKind::Prop1:
            return pow_nat(3, parameter - 1) * (pow_nat(3, parameter) - 2);
        case FormKind::Prop2:
            return pow_nat(3, parameter - 1);
        default:
            throw std::invalid_argument("form_value: form has no single-parameter value");
    }
}

namespace {

void require_prime_exponent(uint64_t p, const char* what) {
    if (!is_prime(nat_from_u64(p)).prime_or_probable())
        throw std::invalid_argument(std::string(what) + ": exponent must be prime");
}

}  // namespace

std::optional<FormInstance> gen_euclid(uint64_t p) {
    require_prime_exponent(p, "gen_euclid");
    PrimalityCertificate cert = lucas_lehmer(p);
    if (cert.verdict != Verdict::Prime)
        return std::nullopt;
    FormInstance inst;
    inst.form = FormKind::Euclid;
    inst.parameters = {{"p", nat_from_u64(p)}};
    inst.n = form_value(FormKind::Euclid, p);
    inst.certificates = {std::move(cert)};
    return inst;
}

std::optional<FormInstance> gen_prop1(uint64_t k) {
    if (k < 1)
        throw std::invalid_argument("gen_prop1: k must be >= 1");
    Natural q = pow_nat(3, k) - 2;
    PrimalityCertificate cert = is_prime(q);
    if (!cert.prime_or_probable())
        return std::nullopt;
    FormInstance inst;
    inst.form = FormKind::Prop1;
    inst.parameters = {{"k", nat_from_u64(k)}, {"q", q}};
    inst.n = pow_nat(3, k - 1) * q;
    inst.certificates = {std::move(cert)};
    return inst;
}

std::optional<FormInstance> gen_prop2(uint64_t p) {
    require_prime_exponent(p, "gen_prop2");
    Natural m = (pow_nat(3, p) - 1) / 2;
    PrimalityCertificate cert_m = is_prime(m);
    if (!cert_m.prime_or_probable())
        return std::nullopt;
    FormInstance inst;
    inst.form = FormKind::Prop2;
    inst.parameters = {{"p", nat_from_u64(p)}};
    inst.n = form_value(FormKind::Prop2, p);
    inst.certificates = {is_prime(nat_from_u64(p)), std::move(cert_m)};
    return inst;
}

std::optional<FormInstance> gen_mccraine(uint64_t k) {
    if (k <= 1 || k % 2 == 0)
        throw std::invalid_argument("gen_mccraine: k must be odd and > 1");
    uint64_t p = (3 * k + 1) / 2;
    uint64_t q = 3 * k + 4;
    PrimalityCertificate cert_p = is_prime(nat_from_u64(p));
    if (!cert_p.prime_or_probable())
        return std::nullopt;
    PrimalityCertificate cert_q = is_prime(nat_from_u64(q));
    if (!cert_q.prime_or_probable())
        return std::nullopt;
    FormInstance inst;
    inst.form = FormKind::McCraineP2Q;
    inst.parameters = {{"k", nat_from_u64(k)}, {"p", nat_from_u64(p)}, {"q", nat_from_u64(q)}};
    inst.n = nat_from_u64(p) * nat_from_u64(p) * nat_from_u64(q);
    inst.certificates = {std::move(cert_p), std::move(cert_q)};
    return inst;
}

std::vector<FormInstance> find_pq(uint64_t k, uint64_t p_max) {
    if (k < 1)
        throw std::invalid_argument("find_pq: k must be >= 1");
    std::vector<FormInstance> out;
    // k(p+q) = pq - 1 solved for q: q = (kp + 1)/(p - k), so p ranges over the
    // odd primes in (k, ~2k]; the prime test on q does the rest.
    auto consider = [&](uint64_t p) {
        if (p <= k || p == 2) return;
        unsigned __int128 num = (unsigned __int128)k * p + 1;
        uint64_t den = p - k;
        if (num % den != 0) return;
        unsigned __int128 q128 = num / den;
        if (q128 <= p || q128 > p_max) return;
        uint64_t q = static_cast<uint64_t>(q128);
        if (!is_prime(nat_from_u64(q)).prime_or_probable()) return;
        FormInstance inst;
        inst.form = FormKind::PQ;
        inst.parameters = {{"k", nat_from_u64(k)}, {"p", nat_from_u64(p)}, {"q", nat_from_u64(q)}};
        inst.n = nat_from_u64(p) * nat_from_u64(q);
        inst.certificates = {is_prime(nat_from_u64(p)), is_prime(nat_from_u64(q))};
        out.push_back(std::move(inst));
    };
    if (p_max < 1'000'000) {
        for (uint32_t p : small_primes()) {
            if (p > p_max) break;
            consider(p);
        }
    } else {
        for (uint64_t p : primes_up_to(p_max))
            consider(p);
    }
    return out;
}

std::optional<FormInstance> gen_terielenash(uint64_t k, uint64_t i) {
    if (k < 1)
        throw std::invalid_argument("gen_terielenash: k must be >= 1");
    if (i <= 1)
        throw std::invalid_argument("gen_terielenash: i must be > 1");
    uint64_t p = k + 1;
    PrimalityCertificate cert_p = is_prime(nat_from_u64(p));
    if (!cert_p.prime_or_probable())
        return std::nullopt;
    Natural q = pow_nat(p, i) - p + 1;
    PrimalityCertificate cert_q = is_prime(q);
    if (!cert_q.prime_or_probable())
        return std::nullopt;
    FormInstance inst;
    inst.form = FormKind::TeRieleNash;
    inst.parameters = {{"k", nat_from_u64(k)}, {"p", nat_from_u64(p)},
                       {"i", nat_from_u64(i)}, {"q", q}};
    inst.n = pow_nat(p, i - 1) * q;
    inst.certificates = {std::move(cert_p), std::move(cert_q)};
    return inst;
}

bool odd_perfect_form_ok(const Natural& n) {
    if (mpz_even_p(n.get_mpz_t()))
        throw std::domain_error("odd_perfect_form_ok: n must be odd");
    return n % 12 == 1 || n % 36 == 9;
}

std::vector<FormInstance> scan_3k_minus_2(uint64_t k_max) {
    if (k_max < 1)
        throw std::invalid_argument("scan_3k_minus_2: k_max must be >= 1");
    std::vector<FormInstance> out;
    for (uint64_t k = 1; k <= k_max; ++k)
        if (auto inst = gen_prop1(k))
            out.push_back(std::move(*inst));
    return out;
}

namespace {

std::vector<uint64_t> primes_through(uint64_t p_max) {
    if (p_max < 1'000'000) {
        std::vector<uint64_t> out;
        for (uint32_t p : small_primes()) {
            if (p > p_max) break;
            out.push_back(p);
        }
        return out;
    }
    return primes_up_to(p_max);
}

}  // namespace

std::vector<FormInstance> scan_prop2_exponents(uint64_t p_max) {
    if (p_max < 2)
        throw std::invalid_argument("scan_prop2_exponents: p_max must be >= 2");
    std::vector<FormInstance> out;
    for (uint64_t p : primes_through(p_max))
        if (auto inst = gen_prop2(p))
            out.push_back(std::move(*inst));
    return out;
}

std::vector<FormInstance> scan_euclid(uint64_t p_max) {
    if (p_max < 2)
        throw std::invalid_argument("scan_euclid: p_max must be >= 2");
    std::vector<FormInstance> out;
    for (uint64_t p : primes_through(p_max))
        if (auto inst = gen_euclid(p))
            out.push_back(std::move(*inst));
    return out;
}

}  // namespace gperfect
