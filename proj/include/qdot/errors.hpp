#pragma once

#include <stdexcept>
#include <string>

namespace qdot {

/// A requested asymmetric equilibrium does not exist at the given parameters.
struct out_of_family_error : std::domain_error {
    enum class Reason {
        no_deficit,          // 1 + u^2 - v^2 <= 0, family absent for any p_phi
        momentum_at_boundary // |p_phi| >= p_max(u, v, M)
    };

    out_of_family_error(Reason r, const std::string& msg)
        : std::domain_error(msg), reason(r) {}

    Reason reason;
};

/// Raised when quantizing a saddle or a zero mode (no harmonic minimum).
struct unstable_state_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Truncated series evaluated outside its validated region.
struct series_domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// A valid input for which no closed form is shipped.
struct not_implemented_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Config-file parse failure; line is 1-based, 0 when not tied to a line.
struct config_error : std::runtime_error {
    config_error(int line_, const std::string& msg)
        : std::runtime_error(msg), line(line_) {}

    int line;
};

} // namespace qdot
