// coherence.cpp

#include "cohtrap/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cohtrap/errors.hpp"
#include "cohtrap/math/special.hpp"

namespace cohtrap {

namespace {

constexpr double kStateTolerance = 1e-12;

void check_state(const QubitState& s) {
    if (!(s.rho_ee >= -kStateTolerance && s.rho_gg >= -kStateTolerance) ||
        !(std::abs(s.rho_ee + s.rho_gg - 1.0) <= kStateTolerance)) {
        throw domain_error("qubit state: populations must be non-negative and sum to 1");
    }
    if (!(std::norm(s.rho_eg) <= s.rho_ee * s.rho_gg + kStateTolerance)) {
        throw domain_error("qubit state: |rho_eg|^2 = " + std::to_string(std::norm(s.rho_eg)) +
                           " exceeds rho_ee * rho_gg (not positive semidefinite)");
    }
}

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

} // namespace

double rel_entropy_coherence(const QubitState& state) {
    check_state(state);
    const double split = state.rho_ee - state.rho_gg;
    const double radius = std::sqrt(split * split + 4.0 * std::norm(state.rho_eg));
    const double upper = clamp_probability(0.5 * (1.0 + radius));
    const double s_diag = math::binary_entropy(clamp_probability(state.rho_ee));
    const double s_rho = math::binary_entropy(upper);
    return std::max(0.0, s_diag - s_rho);
}

double l1_coherence(const QubitState& state) { return 2.0 * std::abs(state.rho_eg); }

CoherenceValue coherence(const QubitState& state) {
    return {rel_entropy_coherence(state), l1_coherence(state)};
}

CoherenceValue stationary_coherence(const ModelParams& params) {
    return coherence(DephasingModel(params).stationary_state());
}

double initial_coherence(const ModelParams& params) {
    return rel_entropy_coherence(reduced_state(0.0, params));
}

} // namespace cohtrap
