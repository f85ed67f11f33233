#pragma once

#include <stdexcept>
#include <string>

namespace stpipe {

// Error taxonomy mirrors the CLI exit codes: config=1, data=2, pipeline=3.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data (stream files, alignments, corpora).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A stage failed at run time (oracle contract violation, undefined metric,
// infeasible constraints).
struct PipelineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace stpipe
