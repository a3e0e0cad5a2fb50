#pragma once

#include "gperfect/arith.hpp"
#include "gperfect/classify.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gperfect {

struct ClassTarget {
    Family family = Family::Perfect;
    uint64_t k = 1;  // >= 1; ignored by unparameterized families
};

// "hyper:2,v4" -> targets; family[:k] per entry. Throws std::invalid_argument.
std::vector<ClassTarget> parse_class_spec(std::string_view spec);
std::string class_spec_string(const std::vector<ClassTarget>& targets);

struct SearchJob {
    std::vector<ClassTarget> targets;
    uint64_t lo = 1;
    uint64_t hi = 1;
    uint64_t segment_length = uint64_t(1) << 22;
    unsigned workers = 1;
    std::optional<std::string> checkpoint_path;
};

// Identifies what a checkpoint belongs to: targets, range and segmentation,
// but not the worker count (results are independent of it).
std::string job_fingerprint(const SearchJob& job);

struct SearchHooks {
    // Fired once per finding, in committed (ascending) order; resumed
    // findings replay first so the stream is identical to an unbroken run.
    std::function<void(const Finding&)> on_finding;
    // Fired after each segment is committed (and checkpointed, if a path is
    // set). Returning false stops the run with SearchCancelled; everything
    // committed so far is on disk.
    std::function<bool(uint64_t segments_done)> after_segment;
};

// Streams every n in [lo, hi] through the target classes, one sieve segment
// at a time. Workers sieve and classify segments independently; commits
// happen strictly in segment order, so output is deterministic for any
// worker count. If a checkpoint exists at job.checkpoint_path the run
// resumes from it (CheckpointStale if it belongs to a different job).
std::vector<Finding> run_search(const SearchJob& job, const SearchHooks* hooks = nullptr);

// Same as run_search but the checkpoint must already exist and parse
// (CheckpointUnrecoverable otherwise).
std::vector<Finding> resume(const SearchJob& job, const SearchHooks* hooks = nullptr);

// sigma(sigma(n)) with the inner sigma read from the table and the outer
// computed by factorization (sigma(n) may exceed the table's range).
Natural superperfect_outer_sigma(uint64_t n, const SigmaTable& table);

struct Checkpoint {
    std::string fingerprint;
    uint64_t next_n = 0;
    std::vector<Finding> findings;
};

Checkpoint load_checkpoint(const std::string& path);  // CheckpointUnrecoverable on failure

}  // namespace gperfect
