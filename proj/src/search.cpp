#include "gperfect/search.hpp"

#include "gperfect/errors.hpp"

#include <json.hpp>

#include <atomic>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace gperfect {

std::vector<ClassTarget> parse_class_spec(std::string_view spec) {
    std::vector<ClassTarget> targets;
    size_t pos = 0;
    while (pos <= spec.size()) {
        size_t comma = spec.find(',', pos);
        std::string_view entry = spec.substr(pos, comma == std::string_view::npos ? spec.npos : comma - pos);
        if (entry.empty())
            throw std::invalid_argument("empty class spec entry");
        ClassTarget target;
        size_t colon = entry.find(':');
        std::string_view name = entry.substr(0, colon);
        auto family = family_from_name(name);
        if (!family)
            throw std::invalid_argument("unknown class family: '" + std::string(name) + "'");
        target.family = *family;
        if (colon != std::string_view::npos) {
            if (!family_has_k(*family))
                throw std::invalid_argument("family '" + std::string(name) + "' takes no k");
            Natural k = parse_natural(entry.substr(colon + 1));
            if (k < 1 || !fits_u64(k))
                throw std::invalid_argument("k out of range in class spec");
            target.k = to_u64(k);
        }
        targets.push_back(target);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    if (targets.empty())
        throw std::invalid_argument("empty class spec");
    return targets;
}

std::string class_spec_string(const std::vector<ClassTarget>& targets) {
    std::string out;
    for (const auto& t : targets) {
        if (!out.empty()) out += ',';
        out += family_name(t.family);
        if (family_has_k(t.family)) {
            out += ':';
            out += std::to_string(t.k);
        }
    }
    return out;
}

std::string job_fingerprint(const SearchJob& job) {
    std::ostringstream canon;
    canon << "gp1|" << class_spec_string(job.targets) << '|' << job.lo << ".." << job.hi
          << "|seg=" << job.segment_length;
    uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
    for (char c : canon.str()) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Natural superperfect_outer_sigma(uint64_t n, const SigmaTable& table) {
    uint64_t inner = table.at(n);
    return nat_from_u64(sigma_u64(inner));
}

namespace {

void validate(const SearchJob& job) {
    if (job.targets.empty())
        throw std::invalid_argument("search: no target classes");
    for (const auto& t : job.targets)
        if (t.k < 1)
            throw std::invalid_argument("search: k must be >= 1");
    if (job.lo < 1 || job.lo > job.hi)
        throw std::invalid_argument("search: need 1 <= lo <= hi");
    if (job.hi == UINT64_MAX)
        throw std::invalid_argument("search: hi too large");
    if (job.segment_length < 1)
        throw std::invalid_argument("search: segment_length must be >= 1");
    if (job.workers < 1)
        throw std::invalid_argument("search: workers must be >= 1");
}

Finding make_finding(uint64_t n, const ClassTarget& target, uint64_t s, uint64_t ss) {
    Finding f;
    f.n = nat_from_u64(n);
    f.cls.family = target.family;
    f.cls.k = nat_from_u64(target.k);
    f.sigma_n = nat_from_u64(s);
    if (family_uses_outer_sigma(target.family))
        f.sigma_sigma_n = nat_from_u64(ss);
    for (auto [p, e] : factorize_u64(n))
        f.factorization.push_back({nat_from_u64(p), e});
    return f;
}

std::vector<Finding> process_segment(const SearchJob& job, uint64_t seg_lo, uint64_t seg_hi) {
    SigmaTable table = sigma_sieve(seg_lo, seg_hi);
    std::vector<Finding> out;
    const auto& values = table.values();
    for (uint64_t n = seg_lo; n <= seg_hi; ++n) {
        uint64_t s = values[n - seg_lo];
        uint64_t ss = 0;
        bool have_outer = false;
        for (const auto& t : job.targets) {
            uint64_t outer = 0;
            if (family_uses_outer_sigma(t.family)) {
                if (!have_outer) {
                    ss = sigma_u64(s);
                    have_outer = true;
                }
                outer = ss;
            }
            if (class_equation_holds_u64(t.family, t.k, n, s, outer))
                out.push_back(make_finding(n, t, s, ss));
        }
    }
    return out;
}

nlohmann::json checkpoint_to_json(const std::string& fingerprint, uint64_t next_n,
                                  const std::vector<Finding>& findings) {
    nlohmann::json j;
    j["fingerprint"] = fingerprint;
    j["next_n"] = std::to_string(next_n);
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& f : findings)
        arr.push_back(nlohmann::json::parse(finding_json(f)));
    j["findings"] = arr;
    return j;
}

void write_checkpoint_atomic(const std::string& path, const nlohmann::json& j) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out)
            throw IoError("cannot write checkpoint temp file '" + tmp + "'");
        out << j.dump() << '\n';
        out.flush();
        if (!out)
            throw IoError("short write to checkpoint temp file '" + tmp + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw IoError("cannot rename checkpoint into place: " + ec.message());
}

}  // namespace

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw CheckpointUnrecoverable("checkpoint missing or unreadable: '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
        Checkpoint cp;
        cp.fingerprint = j.at("fingerprint").get<std::string>();
        Natural next = parse_natural(j.at("next_n").get<std::string>());
        if (!fits_u64(next))
            throw std::invalid_argument("next_n out of range");
        cp.next_n = to_u64(next);
        for (const auto& item : j.at("findings"))
            cp.findings.push_back(finding_from_json(item.dump()));
        return cp;
    } catch (const CheckpointUnrecoverable&) {
        throw;
    } catch (const std::exception& e) {
        throw CheckpointUnrecoverable("corrupt checkpoint '" + path + "': " + e.what());
    }
}

namespace {

std::vector<Finding> run_impl(const SearchJob& job, const SearchHooks* hooks, bool must_resume) {
    validate(job);
    small_primes();  // build the shared table before spawning workers

    const std::string fingerprint = job_fingerprint(job);
    uint64_t start_n = job.lo;
    std::vector<Finding> committed;

    bool have_checkpoint = job.checkpoint_path &&
                           std::filesystem::exists(*job.checkpoint_path);
    if (must_resume && !have_checkpoint)
        throw CheckpointUnrecoverable("resume requested but no checkpoint at '" +
                                      job.checkpoint_path.value_or("<unset>") + "'");
    if (have_checkpoint) {
        Checkpoint cp = load_checkpoint(*job.checkpoint_path);
        if (cp.fingerprint != fingerprint)
            throw CheckpointStale("checkpoint belongs to a different job (fingerprint " +
                                  cp.fingerprint + ", expected " + fingerprint + ")");
        if (cp.next_n < job.lo || cp.next_n > job.hi + 1 ||
            (cp.next_n <= job.hi && (cp.next_n - job.lo) % job.segment_length != 0))
            throw CheckpointUnrecoverable("checkpoint position not on a segment boundary");
        start_n = cp.next_n;
        committed = std::move(cp.findings);
    }

    if (hooks && hooks->on_finding)
        for (const auto& f : committed)
            hooks->on_finding(f);

    if (start_n > job.hi)
        return committed;  // already complete; idempotent

    const uint64_t L = job.segment_length;
    const uint64_t first_seg = (start_n - job.lo) / L;
    const uint64_t total_seg = (job.hi - job.lo) / L + 1;
    auto seg_bounds = [&](uint64_t i) {
        uint64_t s_lo = job.lo + i * L;
        uint64_t s_hi = std::min(job.hi, s_lo + (L - 1));
        return std::pair{s_lo, s_hi};
    };

    std::mutex mtx;
    std::condition_variable cv;
    std::vector<std::optional<std::vector<Finding>>> results(total_seg);
    std::atomic<uint64_t> next_claim{first_seg};
    std::atomic<bool> stop{false};
    std::exception_ptr worker_error;

    auto work = [&] {
        try {
            while (!stop.load(std::memory_order_relaxed)) {
                uint64_t i = next_claim.fetch_add(1);
                if (i >= total_seg) break;
                auto [s_lo, s_hi] = seg_bounds(i);
                auto findings = process_segment(job, s_lo, s_hi);
                {
                    std::lock_guard lock(mtx);
                    results[i] = std::move(findings);
                }
                cv.notify_all();
            }
        } catch (...) {
            {
                std::lock_guard lock(mtx);
                if (!worker_error) worker_error = std::current_exception();
            }
            stop = true;
            cv.notify_all();
        }
    };

    unsigned thread_count = static_cast<unsigned>(
        std::min<uint64_t>(job.workers, total_seg - first_seg));
    std::vector<std::thread> pool;
    pool.reserve(thread_count);
    for (unsigned t = 0; t < thread_count; ++t)
        pool.emplace_back(work);

    auto join_all = [&] {
        for (auto& th : pool)
            if (th.joinable()) th.join();
    };

    bool cancelled = false;
    try {
        for (uint64_t commit = first_seg; commit < total_seg && !cancelled; ++commit) {
            std::vector<Finding> batch;
            {
                std::unique_lock lock(mtx);
                cv.wait(lock, [&] { return results[commit].has_value() || worker_error; });
                if (worker_error) {
                    stop = true;
                    lock.unlock();
                    join_all();
                    std::rethrow_exception(worker_error);
                }
                batch = std::move(*results[commit]);
                results[commit].reset();
            }
            for (auto& f : batch) {
                if (hooks && hooks->on_finding) hooks->on_finding(f);
                committed.push_back(std::move(f));
            }
            uint64_t seg_end = seg_bounds(commit).second;
            if (job.checkpoint_path)
                write_checkpoint_atomic(*job.checkpoint_path,
                                        checkpoint_to_json(fingerprint, seg_end + 1, committed));
            if (hooks && hooks->after_segment &&
                !hooks->after_segment(commit - first_seg + 1)) {
                stop = true;
                cancelled = true;
            }
        }
    } catch (...) {
        stop = true;
        join_all();
        throw;
    }
    join_all();

    if (cancelled)
        throw SearchCancelled("search stopped after a committed segment");
    return committed;
}

}  // namespace

std::vector<Finding> run_search(const SearchJob& job, const SearchHooks* hooks) {
    return run_impl(job, hooks, false);
}

std::vector<Finding> resume(const SearchJob& job, const SearchHooks* hooks) {
    if (!job.checkpoint_path)
        throw std::invalid_argument("resume: job has no checkpoint path");
    return run_impl(job, hooks, true);
}

}  // namespace gperfect
