#include "gperfect.h"

#include "gperfect/arith.hpp"
#include "gperfect/classify.hpp"
#include "gperfect/errors.hpp"
#include "gperfect/forms.hpp"
#include "gperfect/primality.hpp"
#include "gperfect/search.hpp"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

using namespace gperfect;

namespace {

thread_local std::string t_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr)
        throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void require_handle(const void* handle) {
    if (handle == nullptr)
        throw std::invalid_argument("null handle");
}

template <typename Fn>
gp_status guarded(Fn&& fn) {
    try {
        fn();
        t_last_error.clear();
        return GP_OK;
    } catch (const CheckpointStale& e) {
        t_last_error = e.what();
        return GP_ERR_CHECKPOINT_STALE;
    } catch (const CheckpointUnrecoverable& e) {
        t_last_error = e.what();
        return GP_ERR_CHECKPOINT_BAD;
    } catch (const SearchCancelled& e) {
        t_last_error = e.what();
        return GP_ERR_CANCELLED;
    } catch (const IoError& e) {
        t_last_error = e.what();
        return GP_ERR_IO;
    } catch (const std::invalid_argument& e) {
        t_last_error = e.what();
        return GP_ERR_USAGE;
    } catch (const std::domain_error& e) {
        t_last_error = e.what();
        return GP_ERR_DOMAIN;
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return GP_ERR_INTERNAL;
    } catch (...) {
        t_last_error = "unknown error";
        return GP_ERR_INTERNAL;
    }
}

Natural require_arg(const char* text, const char* what) {
    if (text == nullptr)
        throw std::invalid_argument(std::string(what) + " is null");
    return parse_natural(text);
}

uint64_t require_u64(const char* text, const char* what) {
    Natural n = require_arg(text, what);
    if (!fits_u64(n))
        throw std::invalid_argument(std::string(what) + " exceeds 64 bits");
    return to_u64(n);
}

FormKind parse_form(const char* form) {
    if (form == nullptr)
        throw std::invalid_argument("form is null");
    std::string name = form;
    if (name == "3k-2" || name == "prop1") return FormKind::Prop1;
    if (name == "prop2") return FormKind::Prop2;
    if (name == "euclid") return FormKind::Euclid;
    throw std::invalid_argument("unknown form: '" + name + "'");
}

}  // namespace

struct gp_search {
    SearchJob job;
    std::vector<Finding> findings;
};

namespace {

gp_status run_search_capi(gp_search* s, gp_finding_fn cb, void* user, bool must_resume) {
    return guarded([&] {
        require_handle(s);
        SearchHooks hooks;
        if (cb) {
            hooks.on_finding = [&](const Finding& f) {
                std::string line = finding_json(f);
                cb(line.c_str(), user);
            };
        }
        const SearchHooks* hooks_ptr = cb ? &hooks : nullptr;
        s->findings = must_resume ? resume(s->job, hooks_ptr)
                                  : run_search(s->job, hooks_ptr);
    });
}

}  // namespace

extern "C" {

const char* gp_version(void) {
    return "1.0.0";
}

const char* gp_status_message(gp_status status) {
    switch (status) {
        case GP_OK: return "ok";
        case GP_ERR_USAGE: return "bad argument";
        case GP_ERR_DOMAIN: return "precondition violated";
        case GP_ERR_IO: return "i/o error";
        case GP_ERR_CHECKPOINT_STALE: return "stale checkpoint";
        case GP_ERR_CHECKPOINT_BAD: return "unrecoverable checkpoint";
        case GP_ERR_CANCELLED: return "cancelled";
        case GP_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* gp_last_error(void) {
    return t_last_error.c_str();
}

void gp_string_free(char* s) {
    std::free(s);
}

gp_status gp_sigma(const char* n_dec, char** out_dec) {
    return guarded([&] {
        Natural n = require_arg(n_dec, "n");
        *out_dec = dup_string(to_decimal(sigma(n)));
    });
}

gp_status gp_factorize(const char* n_dec, char** out_json) {
    return guarded([&] {
        Natural n = require_arg(n_dec, "n");
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& pp : factorize(n))
            arr.push_back({to_decimal(pp.prime), std::to_string(pp.exponent)});
        *out_json = dup_string(arr.dump());
    });
}

gp_status gp_pow(const char* base_dec, uint64_t exponent, char** out_dec) {
    return guarded([&] {
        Natural base = require_arg(base_dec, "base");
        *out_dec = dup_string(to_decimal(pow_nat(base, exponent)));
    });
}

gp_status gp_digit_count(const char* n_dec, uint64_t* out) {
    return guarded([&] {
        Natural n = require_arg(n_dec, "n");
        *out = digit_count(n);
    });
}

gp_status gp_is_prime(const char* n_dec, char** out_cert_json) {
    return guarded([&] {
        Natural n = require_arg(n_dec, "n");
        *out_cert_json = dup_string(certificate_json(is_prime(n)));
    });
}

gp_status gp_lucas_lehmer(uint64_t p, char** out_cert_json) {
    return guarded([&] {
        *out_cert_json = dup_string(certificate_json(lucas_lehmer(p)));
    });
}

gp_status gp_classify(const char* n_dec, uint64_t k_max, char** out_json) {
    return guarded([&] {
        Natural n = require_arg(n_dec, "n");
        if (n < 1)
            throw std::domain_error("classify: n must be >= 1");
        nlohmann::json j;
        j["n"] = to_decimal(n);
        nlohmann::json classes = nlohmann::json::array();
        for (const auto& cls : classify_all(n, nat_from_u64(k_max)))
            classes.push_back(class_tag(cls));
        j["classes"] = classes;
        Natural s = sigma(n);
        j["sigma_n"] = to_decimal(s);
        j["sigma_sigma_n"] = to_decimal(sigma(s));
        nlohmann::json factors = nlohmann::json::array();
        for (const auto& pp : factorize(n))
            factors.push_back({to_decimal(pp.prime), std::to_string(pp.exponent)});
        j["factorization"] = factors;
        *out_json = dup_string(j.dump());
    });
}

gp_status gp_search_new(const char* class_spec, const char* lo_dec,
                        const char* hi_dec, gp_search** out) {
    return guarded([&] {
        if (class_spec == nullptr)
            throw std::invalid_argument("class spec is null");
        auto search = std::make_unique<gp_search>();
        search->job.targets = parse_class_spec(class_spec);
        search->job.lo = require_u64(lo_dec, "lo");
        search->job.hi = require_u64(hi_dec, "hi");
        if (search->job.lo < 1 || search->job.lo > search->job.hi)
            throw std::invalid_argument("need 1 <= lo <= hi");
        *out = search.release();
    });
}

gp_status gp_search_set_workers(gp_search* s, unsigned workers) {
    return guarded([&] {
        require_handle(s);
        if (workers < 1)
            throw std::invalid_argument("workers must be >= 1");
        s->job.workers = workers;
    });
}

gp_status gp_search_set_segment_length(gp_search* s, uint64_t length) {
    return guarded([&] {
        require_handle(s);
        if (length < 1)
            throw std::invalid_argument("segment length must be >= 1");
        s->job.segment_length = length;
    });
}

gp_status gp_search_set_checkpoint(gp_search* s, const char* path) {
    return guarded([&] {
        require_handle(s);
        if (path == nullptr || *path == '\0')
            throw std::invalid_argument("checkpoint path is empty");
        s->job.checkpoint_path = path;
    });
}

gp_status gp_search_run(gp_search* s, gp_finding_fn cb, void* user) {
    return run_search_capi(s, cb, user, false);
}

gp_status gp_search_resume(gp_search* s, gp_finding_fn cb, void* user) {
    return run_search_capi(s, cb, user, true);
}

size_t gp_search_finding_count(const gp_search* s) {
    return s ? s->findings.size() : 0;
}

gp_status gp_search_finding_json(const gp_search* s, size_t index, char** out_json) {
    return guarded([&] {
        require_handle(s);
        if (index >= s->findings.size())
            throw std::invalid_argument("finding index out of range");
        *out_json = dup_string(finding_json(s->findings[index]));
    });
}

void gp_search_free(gp_search* s) {
    delete s;
}

gp_status gp_scan(const char* form, uint64_t max_parameter,
                  gp_scan_fn cb, void* user, char** out_jsonl) {
    return guarded([&] {
        FormKind kind = parse_form(form);
        std::vector<FormInstance> hits;
        switch (kind) {
            case FormKind::Prop1: hits = scan_3k_minus_2(max_parameter); break;
            case FormKind::Prop2: hits = scan_prop2_exponents(max_parameter); break;
            case FormKind::Euclid: hits = scan_euclid(max_parameter); break;
            default: throw std::invalid_argument("form is not scannable");
        }
        std::string all;
        for (const auto& hit : hits) {
            std::string line = form_instance_json(hit);
            if (cb) cb(line.c_str(), user);
            all += line;
            all += '\n';
        }
        if (out_jsonl)
            *out_jsonl = dup_string(all);
    });
}

gp_status gp_form_value(const char* form, uint64_t parameter, char** out_dec) {
    return guarded([&] {
        if (parameter < 1)
            throw std::invalid_argument("parameter must be >= 1");
        *out_dec = dup_string(to_decimal(form_value(parse_form(form), parameter)));
    });
}

gp_status gp_sieve_dump(uint64_t lo, uint64_t hi, const char* path) {
    return guarded([&] {
        if (path == nullptr || *path == '\0')
            throw std::invalid_argument("dump path is empty");
        dump_sigma_table(sigma_sieve(lo, hi), path);
    });
}

}  // extern "C"
