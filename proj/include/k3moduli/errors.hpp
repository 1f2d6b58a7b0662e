#pragma once

#include <stdexcept>
#include <string>

namespace k3moduli {

// A documented precondition on user-supplied data failed.
struct bad_input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A theorem-backed postcondition failed on valid input.  This signals a bug
// in the library, never a problem with the input.
struct invariant_violation_error : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace k3moduli
