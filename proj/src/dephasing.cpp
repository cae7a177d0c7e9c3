// dephasing.cpp

#include "cohtrap/dephasing.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cohtrap/errors.hpp"
#include "cohtrap/math/special.hpp"

namespace cohtrap {

namespace {

constexpr double kNormTolerance = 1e-12;

std::string fmt(double v) { return std::to_string(v); }

} // namespace

void validate(const BathSpec& bath) {
    if (!(bath.alpha > 0.0) || !std::isfinite(bath.alpha))
        throw domain_error("bath: alpha must be positive, got " + fmt(bath.alpha));
    if (!(bath.mu > -1.0) || !std::isfinite(bath.mu))
        throw domain_error("bath: mu must exceed -1, got " + fmt(bath.mu));
    if (!(bath.omega_c > 0.0) || !std::isfinite(bath.omega_c))
        throw domain_error("bath: omega_c must be positive, got " + fmt(bath.omega_c));
}

void validate(const CorrelationSpec& corr) {
    if (!(corr.lambda >= 0.0 && corr.lambda <= 1.0))
        throw domain_error("correlation: lambda must lie in [0, 1], got " + fmt(corr.lambda));
    if (!(corr.upsilon > 0.0) || !std::isfinite(corr.upsilon))
        throw domain_error("correlation: upsilon must be positive, got " + fmt(corr.upsilon));
}

void validate(const QubitSpec& qubit) {
    if (!(qubit.omega0 >= 0.0) || !std::isfinite(qubit.omega0))
        throw domain_error("qubit: omega0 must be non-negative, got " + fmt(qubit.omega0));
    const double norm = std::norm(qubit.ce) + std::norm(qubit.cg);
    if (!(std::abs(norm - 1.0) <= kNormTolerance))
        throw domain_error("qubit: |ce|^2 + |cg|^2 must equal 1, got " + fmt(norm));
}

void validate(const ModelParams& params) {
    validate(params.bath);
    validate(params.corr);
    validate(params.qubit);
    if (params.corr.lambda > 0.0 && !(params.theta() > 0.0))
        throw domain_error("model: (mu + upsilon) / 2 must be positive when lambda > 0, got " +
                           fmt(params.theta()));
}

// ---------------------------------------------------------------------------

detail::PowerLawKernel::PowerLawKernel(double amplitude_, double s_, double omega_c_,
                                       bool allow_ohmic_limit)
    : amplitude(amplitude_), s(s_), omega_c(omega_c_) {
    ohmic_limit = allow_ohmic_limit && std::abs(s) < kOhmicThreshold;
    if (s != 0.0) {
        gamma_s = amplitude * math::gamma(s) * std::pow(omega_c, s);
    }
    gamma_s1 = amplitude * math::gamma(s + 1.0) * std::pow(omega_c, s + 1.0);
}

double detail::PowerLawKernel::cosine_part(double t) const {
    const double x = omega_c * t;
    if (ohmic_limit) return 0.5 * amplitude * std::log1p(x * x);
    const double u = std::atan(x);
    return gamma_s * (1.0 - std::cos(s * u) * std::pow(1.0 + x * x, -0.5 * s));
}

double detail::PowerLawKernel::sine_part(double t) const {
    const double x = omega_c * t;
    const double u = std::atan(x);
    return gamma_s * std::sin(s * u) * std::pow(1.0 + x * x, -0.5 * s);
}

double detail::PowerLawKernel::cosine_rate(double t) const {
    const double x = omega_c * t;
    if (ohmic_limit) return amplitude * omega_c * x / (1.0 + x * x);
    const double u = std::atan(x);
    return gamma_s1 * std::pow(1.0 + x * x, -(0.5 * s + 1.0)) *
           (std::sin(s * u) + x * std::cos(s * u));
}

double detail::PowerLawKernel::sine_rate(double t) const {
    const double x = omega_c * t;
    const double u = std::atan(x);
    return gamma_s1 * std::pow(1.0 + x * x, -(0.5 * s + 1.0)) *
           (std::cos(s * u) - x * std::sin(s * u));
}

// ---------------------------------------------------------------------------

DephasingModel::DephasingModel(const ModelParams& params) : params_(params) {
    validate(params_);
    const auto& bath = params_.bath;
    const auto& corr = params_.corr;
    const double lambda = corr.lambda;

    decay_ = detail::PowerLawKernel(4.0 * bath.alpha, bath.mu, bath.omega_c, true);

    k_offset_ = 0.5 * math::gamma(corr.upsilon) * std::pow(bath.omega_c, corr.upsilon);
    init_.overlap_s = std::exp(-k_offset_);
    init_.norm_C = std::sqrt((1.0 - lambda) * (1.0 - lambda) + lambda * lambda +
                             2.0 * lambda * (1.0 - lambda) * init_.overlap_s);
    init_.ups0 = (1.0 - lambda + lambda * init_.overlap_s) / init_.norm_C;

    if (lambda > 0.0) {
        corr_ = detail::PowerLawKernel(2.0 * std::sqrt(bath.alpha), params_.theta(),
                                       bath.omega_c, false);
    }
    weight_ = params_.qubit.ce * std::conj(params_.qubit.cg);

    if (bath.mu <= 0.0) {
        stationary_ = 0.0;
    } else {
        const double r_inf = decay_.saturation();
        double bracket = 1.0;
        if (lambda > 0.0) {
            const double k_inf = corr_.saturation() - k_offset_;
            bracket = 1.0 - lambda + lambda * std::exp(k_inf);
        }
        stationary_ = bracket * std::exp(-r_inf) / init_.norm_C;
    }
}

void DephasingModel::check_time(double t) const {
    if (!(t >= 0.0) || !std::isfinite(t))
        throw domain_error("time must be finite and non-negative, got " + fmt(t));
}

double DephasingModel::r(double t) const {
    const double value = decay_.cosine_part(t);
    if (value < -1e-12) {
        throw std::logic_error("decay exponent went negative (" + fmt(value) + ") at t = " +
                               fmt(t));
    }
    return value;
}

complex DephasingModel::factor(double t) const {
    check_time(t);
    const double rt = r(t);
    const double phase = -2.0 * params_.qubit.omega0 * t;
    const double lambda = params_.corr.lambda;
    if (lambda == 0.0) return std::exp(complex(-rt, phase));

    const double k = corr_.cosine_part(t) - k_offset_;
    const double phi = 0.5 * corr_.sine_part(t);
    const complex bracket = (1.0 - lambda) + lambda * std::exp(complex(k, -2.0 * phi));
    return bracket * std::exp(complex(-rt, phase)) / init_.norm_C;
}

complex DephasingModel::derivative(double t) const {
    check_time(t);
    const double rt = r(t);
    const double r_rate = decay_.cosine_rate(t);
    const double omega0 = params_.qubit.omega0;
    const double lambda = params_.corr.lambda;
    const complex carrier = std::exp(complex(-rt, -2.0 * omega0 * t)) / init_.norm_C;
    const complex drift(-r_rate, -2.0 * omega0);
    if (lambda == 0.0) return drift * carrier;

    const double k = corr_.cosine_part(t) - k_offset_;
    const double phi = 0.5 * corr_.sine_part(t);
    const double k_rate = corr_.cosine_rate(t);
    const double phi_rate = 0.5 * corr_.sine_rate(t);
    const complex coherent = std::exp(complex(k, -2.0 * phi));
    const complex bracket = (1.0 - lambda) + lambda * coherent;
    return carrier * (drift * bracket + lambda * complex(k_rate, -2.0 * phi_rate) * coherent);
}

DephasingSample DephasingModel::sample(double t) const {
    return {t, factor(t), derivative(t)};
}

QubitState DephasingModel::state(double t) const {
    return {std::norm(params_.qubit.ce), std::norm(params_.qubit.cg), weight_ * factor(t)};
}

QubitState DephasingModel::stationary_state() const {
    return {std::norm(params_.qubit.ce), std::norm(params_.qubit.cg), weight_ * stationary_};
}

// ---------------------------------------------------------------------------

namespace {

void check_time(double t, const char* what) {
    if (!(t >= 0.0) || !std::isfinite(t))
        throw domain_error(std::string(what) + ": time must be finite and non-negative, got " +
                           fmt(t));
}

detail::PowerLawKernel decay_kernel(const BathSpec& bath) {
    validate(bath);
    return {4.0 * bath.alpha, bath.mu, bath.omega_c, true};
}

detail::PowerLawKernel corr_kernel(const BathSpec& bath, const CorrelationSpec& corr) {
    validate(bath);
    validate(corr);
    const double theta = 0.5 * (bath.mu + corr.upsilon);
    if (!(theta > 0.0))
        throw domain_error("corr_terms: (mu + upsilon) / 2 must be positive, got " + fmt(theta));
    return {2.0 * std::sqrt(bath.alpha), theta, bath.omega_c, false};
}

} // namespace

double decay_exponent(double t, const BathSpec& bath) {
    check_time(t, "decay_exponent");
    return decay_kernel(bath).cosine_part(t);
}

double decay_exponent_rate(double t, const BathSpec& bath) {
    check_time(t, "decay_exponent_rate");
    return decay_kernel(bath).cosine_rate(t);
}

CorrTerms corr_terms(double t, const BathSpec& bath, const CorrelationSpec& corr) {
    check_time(t, "corr_terms");
    const auto kernel = corr_kernel(bath, corr);
    const double offset = 0.5 * math::gamma(corr.upsilon) * std::pow(bath.omega_c, corr.upsilon);
    return {kernel.cosine_part(t) - offset, 0.5 * kernel.sine_part(t)};
}

CorrTerms corr_terms_rate(double t, const BathSpec& bath, const CorrelationSpec& corr) {
    check_time(t, "corr_terms_rate");
    const auto kernel = corr_kernel(bath, corr);
    return {kernel.cosine_rate(t), 0.5 * kernel.sine_rate(t)};
}

InitConstants init_constants(const ModelParams& params) {
    return DephasingModel(params).init();
}

complex dephasing_factor(double t, const ModelParams& params) {
    return DephasingModel(params).factor(t);
}

complex dephasing_derivative(double t, const ModelParams& params) {
    return DephasingModel(params).derivative(t);
}

double stationary_magnitude(const ModelParams& params) {
    return DephasingModel(params).stationary_magnitude();
}

QubitState reduced_state(double t, const ModelParams& params) {
    return DephasingModel(params).state(t);
}

} // namespace cohtrap
