#pragma once

#include <stdexcept>
#include <string>

namespace jll {

struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// root not bracketed / bracket could not be widened to a sign change
struct bracket_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// residual map not monotone across the bracket
struct monotonicity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// requested tolerance cannot be met within the evaluation budget
struct tolerance_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// feature scan (sign change, chord crossing) found nothing at the
// configured resolution
struct resolution_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace jll
