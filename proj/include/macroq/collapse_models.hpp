#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "macroq/constants.hpp"
#include "macroq/errors.hpp"
#include "macroq/scenario.hpp"

// Localization rates predicted by macrorealistic collapse models: continuous
// spontaneous localization (CSL), quantum-gravity induced decoherence (QG),
// the Karolyhazy (K) model and the Diosi-Penrose (DP) model.

namespace macroq {

enum class ModelId { CSL, QG, K, DP };

inline std::string_view to_string(ModelId id) {
    switch (id) {
    case ModelId::CSL: return "CSL";
    case ModelId::QG: return "QG";
    case ModelId::K: return "K";
    case ModelId::DP: return "DP";
    }
    return "?";
}

struct CslParams {
    double lambda0 = 1e-16; // 1/s
    double alpha = 1e14;    // 1/m^2, r_c = 100 nm

    static CslParams standard() { return {}; }
    static CslParams adler() { return {1e-8, 1e14}; }
};

inline void validate(const CslParams& p) {
    detail::require(p.lambda0 > 0.0 && p.alpha > 0.0, "CSL lambda0 and alpha must be > 0");
}

/// Geometry factor of a homogeneous sphere, x = sqrt(alpha) r:
/// f(x) = 6/x^4 [1 - 2/x^2 + (1 + 2/x^2) e^{-x^2}], f(0) = 1.
inline double csl_shape(double x) {
    detail::require(x >= 0.0, "csl_shape: x must be >= 0");
    const double x2 = x * x;
    if (x < 1.0) {
        // f = 6 sum_{j>=2} (-1)^j (j-1)/(j+1)! x^{2(j-2)}; avoids cancellation near 0.
        double sum = 0.0;
        double power = 1.0;
        double factorial = 6.0; // (j+1)! at j = 2
        for (int j = 2; j < 30; ++j) {
            const double term = (j - 1) / factorial * power;
            sum += (j % 2 == 0) ? term : -term;
            power *= x2;
            factorial *= j + 2;
        }
        return 6.0 * sum;
    }
    const double inv2 = 1.0 / x2;
    return 6.0 * inv2 * inv2 * (1.0 - 2.0 * inv2 + (1.0 + 2.0 * inv2) * std::exp(-x2));
}

inline double csl_lambda(const Particle& particle, const CslParams& params) {
    validate(params);
    const double m = particle_mass(particle);
    const double m0 = constants.m_nucleon;
    return m * m * params.lambda0 * params.alpha * csl_shape(std::sqrt(params.alpha) * particle.radius)
           / (4.0 * m0 * m0);
}

/// Lambda_QG = N * c^4 m0^6 / (hbar^3 m_P^3) with N = m / m0.
inline double qg_lambda(double mass) {
    detail::require(mass >= 0.0, "qg_lambda: mass must be >= 0");
    const double m0 = constants.m_nucleon;
    const double mp = constants.m_Planck;
    const double hb = constants.hbar;
    const double c2 = constants.c * constants.c;
    return mass * c2 * c2 * std::pow(m0, 5) / (hb * hb * hb * mp * mp * mp);
}

struct CoherenceCell {
    double a_c = 0.0;           // m
    bool extended_body = false; // true when r >= (r/Lp)^{2/3} L
};

/// K-model coherence cell. The extended-body candidate is used when the
/// sphere is larger than it; otherwise the point-particle form applies.
inline CoherenceCell k_coherence_cell(const Particle& particle) {
    const double m = particle_mass(particle);
    detail::require(m > 0.0, "k_coherence_cell: particle mass must be > 0");
    const double compton = constants.hbar / (m * constants.c);
    const double lp = constants.planck_length;
    const double extended = std::pow(particle.radius / lp, 2.0 / 3.0) * compton;
    if (particle.radius >= extended) {
        return {extended, true};
    }
    const double ratio = compton / lp;
    return {ratio * ratio * compton, false};
}

/// Lambda_K = hbar / (8 m a_c^4).
inline double k_lambda(const Particle& particle) {
    const double m = particle_mass(particle);
    const double a = k_coherence_cell(particle).a_c;
    return constants.hbar / (8.0 * m * a * a * a * a);
}

/// Small-separation coefficient 20 G rho^2 r^3 / hbar.
inline double dp_lambda(const Particle& particle) {
    validate(particle);
    const double r = particle.radius;
    return 20.0 * constants.G * particle.density * particle.density * r * r * r / constants.hbar;
}

/// Quadratic below the radius, saturated above; continuous at delta_x = r.
inline double dp_rate(const Particle& particle, double delta_x) {
    detail::require(delta_x >= 0.0, "dp_rate: delta_x must be >= 0");
    const double dx = std::min(delta_x, particle.radius);
    return dp_lambda(particle) * dx * dx;
}

using RateFunction = std::function<double(double)>;

/// Optional per-model parameters. CSL requires `csl`; `k_saturate` caps the
/// K-model separation at a_c.
struct ModelParams {
    std::optional<CslParams> csl;
    bool k_saturate = false;
};

/// A model's collapse law as a pure rate function F(delta_x) in 1/s.
inline RateFunction model_rate_fn(ModelId model, const Particle& particle, const ModelParams& params = {}) {
    switch (model) {
    case ModelId::CSL: {
        if (!params.csl) {
            throw InputError("model_rate_fn: CSL requires lambda0/alpha parameters");
        }
        const double lambda = csl_lambda(particle, *params.csl);
        return [lambda](double dx) { return lambda * dx * dx; };
    }
    case ModelId::QG: {
        const double lambda = qg_lambda(particle_mass(particle));
        return [lambda](double dx) { return lambda * dx * dx; };
    }
    case ModelId::K: {
        const double lambda = k_lambda(particle);
        if (params.k_saturate) {
            const double a = k_coherence_cell(particle).a_c;
            return [lambda, a](double dx) {
                const double d = std::min(dx, a);
                return lambda * d * d;
            };
        }
        return [lambda](double dx) { return lambda * dx * dx; };
    }
    case ModelId::DP: {
        const double lambda = dp_lambda(particle);
        const double r = particle.radius;
        return [lambda, r](double dx) {
            const double d = std::min(dx, r);
            return lambda * d * d;
        };
    }
    }
    throw InputError("model_rate_fn: unknown model");
}

} // namespace macroq
