// dephasing.hpp: exact pure-dephasing factor of a qubit initially correlated
// with a zero-temperature Ohmic-like bath
//
// The bath couples through |g_w|^2 = alpha w^(mu+1) exp(-w/wc). The initial
// state is ce|e>|0> + cg|g>|xi_lambda>, where |xi_lambda> mixes the bath
// vacuum with a coherent state whose profile is |f_w|^2 = w^(upsilon+1)
// exp(-w/wc). Every observable of the qubit follows from the complex
// dephasing factor
//
//   Y(t) = [1 - lambda + lambda exp(k(t) - 2i phi(t))] exp(-2i w0 t - r(t)) / C_lambda
//
// with closed-form r, k, phi below. Times are in units of 1/wc when wc = 1.

#pragma once

#include <complex>
#include <numbers>

namespace cohtrap {

using complex = std::complex<double>;

struct BathSpec {
    double alpha = 0.2;    // dimensionless coupling, > 0
    double mu = 1.46;      // Ohmicity exponent, > -1
    double omega_c = 1.0;  // cutoff frequency, > 0

    bool operator==(const BathSpec&) const = default;
};

struct CorrelationSpec {
    double lambda = 0.0;   // correlation weight in [0, 1]
    double upsilon = 1.5;  // coherent-state exponent, > 0

    bool operator==(const CorrelationSpec&) const = default;
};

struct QubitSpec {
    double omega0 = 0.0;
    complex ce{std::numbers::sqrt2 / 2.0, 0.0};
    complex cg{std::numbers::sqrt2 / 2.0, 0.0};

    bool operator==(const QubitSpec&) const = default;
};

struct ModelParams {
    BathSpec bath;
    CorrelationSpec corr;
    QubitSpec qubit;

    // (mu + upsilon) / 2; must be positive whenever lambda > 0
    double theta() const { return 0.5 * (bath.mu + corr.upsilon); }

    bool operator==(const ModelParams&) const = default;
};


// Each throws cohtrap::domain_error naming the first violated invariant.
void validate(const BathSpec& bath);
void validate(const CorrelationSpec& corr);
void validate(const QubitSpec& qubit);
void validate(const ModelParams& params);

struct InitConstants {
    double overlap_s = 0.0;  // Re<xi_0|xi_f> = exp(-Gamma(upsilon) wc^upsilon / 2)
    double norm_C = 1.0;     // normalization of |xi_lambda>
    double ups0 = 1.0;       // Y(0), real
};

struct CorrTerms {
    double k = 0.0;
    double phi = 0.0;
};

struct DephasingSample {
    double t = 0.0;
    complex ups;
    complex dups;
};

struct QubitState {
    double rho_ee = 0.5;
    double rho_gg = 0.5;
    complex rho_eg;  // rho_ge is the conjugate
};

/// |mu| below this uses the Ohmic limit r(t) = 2 alpha ln(1 + wc^2 t^2).
inline constexpr double kOhmicThreshold = 1e-4;

/// r(t) = 4 alpha Gamma(mu) wc^mu {1 - cos[mu atan(wc t)] / (1 + wc^2 t^2)^(mu/2)}.
double decay_exponent(double t, const BathSpec& bath);

/// dr/dt.
double decay_exponent_rate(double t, const BathSpec& bath);

/// k(t) and phi(t); requires (mu + upsilon) / 2 > 0.
CorrTerms corr_terms(double t, const BathSpec& bath, const CorrelationSpec& corr);

/// dk/dt and dphi/dt, returned in the same layout.
CorrTerms corr_terms_rate(double t, const BathSpec& bath, const CorrelationSpec& corr);

InitConstants init_constants(const ModelParams& params);

complex dephasing_factor(double t, const ModelParams& params);
complex dephasing_derivative(double t, const ModelParams& params);

/// |Y(t -> inf)|; zero for Ohmic and sub-Ohmic baths.
double stationary_magnitude(const ModelParams& params);

QubitState reduced_state(double t, const ModelParams& params);

namespace detail {

// amplitude * Gamma(s) wc^s {1 - cos(s u) / (1 + x^2)^(s/2)} and its sine
// companion amplitude * Gamma(s) wc^s sin(s u) / (1 + x^2)^(s/2), with
// u = atan(x), x = wc t. r(t) uses amplitude 4 alpha and s = mu; k(t) and
// 2 phi(t) use amplitude 2 sqrt(alpha) and s = (mu + upsilon) / 2.
struct PowerLawKernel {
    double amplitude = 0.0;
    double s = 0.0;
    double omega_c = 1.0;
    double gamma_s = 0.0;   // amplitude * Gamma(s) wc^s
    double gamma_s1 = 0.0;  // amplitude * Gamma(s + 1) wc^(s + 1)
    bool ohmic_limit = false;

    PowerLawKernel() = default;
    PowerLawKernel(double amplitude, double s, double omega_c, bool allow_ohmic_limit);
    double cosine_part(double t) const;
    double sine_part(double t) const;
    double cosine_rate(double t) const;
    double sine_rate(double t) const;
    double saturation() const { return gamma_s; }  // cosine_part(inf) for s > 0
};

} // namespace detail

/// Precomputed evaluator for one parameter set. The free functions above
/// build one per call; hot loops (trapping search, quadrature, sweeps)
/// should hold on to one instead. Immutable after construction.
class DephasingModel {
public:
    explicit DephasingModel(const ModelParams& params);

    const ModelParams& params() const { return params_; }
    const InitConstants& init() const { return init_; }

    complex factor(double t) const;
    complex derivative(double t) const;
    DephasingSample sample(double t) const;
    double stationary_magnitude() const { return stationary_; }
    QubitState state(double t) const;
    QubitState stationary_state() const;

private:
    double r(double t) const;
    void check_time(double t) const;

    ModelParams params_;
    InitConstants init_;
    detail::PowerLawKernel decay_;
    detail::PowerLawKernel corr_;  // empty when lambda == 0
    double k_offset_ = 0.0;
    complex weight_;       // ce * conj(cg)
    double stationary_ = 0.0;
};

} // namespace cohtrap
