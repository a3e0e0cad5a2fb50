#pragma once

#include <stdexcept>

namespace gperfect {

// Checkpoint exists but was written by a different job description.
struct CheckpointStale : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Checkpoint is required (resume) but missing, truncated or unparseable.
struct CheckpointUnrecoverable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A search hook asked the run to stop; partial state is on disk.
struct SearchCancelled : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace gperfect
