#pragma once

#include <stdexcept>
#include <string>

namespace transonic {

// Construction of a model/grid/region failed a structural precondition.
struct construction_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A run configuration is ill-formed or violates a physical constraint.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An iterative method stopped without reaching its tolerance.
struct iteration_error : std::runtime_error {
    iteration_error(const std::string& what, double residual)
        : std::runtime_error(what), final_residual(residual) {}
    double final_residual;
};

// A field left the physically admissible set (NaN, overflow, q >= q_cav, ...).
struct invalid_state_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The discrete elliptic system has no Dirichlet anchoring and is singular.
struct singular_system_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace transonic
