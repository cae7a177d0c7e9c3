// coherence.hpp: relative-entropy and l1 coherence of the reduced qubit state

#pragma once

#include "cohtrap/dephasing.hpp"

namespace cohtrap {

struct CoherenceValue {
    double rel_entropy = 0.0;  // bits
    double l1 = 0.0;
};

/// S(rho_diag) - S(rho) in bits, using the closed-form 2x2 eigenvalues.
/// Throws domain_error if the state is not a valid density matrix.
double rel_entropy_coherence(const QubitState& state);

/// Sum of off-diagonal magnitudes, 2 |rho_eg|.
double l1_coherence(const QubitState& state);

CoherenceValue coherence(const QubitState& state);

/// Both measures on the t -> inf state.
CoherenceValue stationary_coherence(const ModelParams& params);

/// Relative entropy of coherence of the t = 0 reduced state. With equal
/// weights this is 1 - H2((1 + Y(0)) / 2).
double initial_coherence(const ModelParams& params);

} // namespace cohtrap
