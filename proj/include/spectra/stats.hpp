#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <vector>

#include "spectra/errors.hpp"
#include "spectra/measures.hpp"

namespace spectra {

// Reference CDFs the verification checks compare against.
struct CdfTarget {
    enum class Kind { QuarterCircle, CircularRadial, RayleighTransformed, Uniform01 };
    Kind kind = Kind::Uniform01;
    double param = 0.0; // R for the first two, N for Rayleigh

    static CdfTarget quarter_circle(double r) {
        if (r <= 0.0) throw BadR("quarter circle radius must be positive");
        return {Kind::QuarterCircle, r};
    }
    static CdfTarget circular_radial(double r) {
        if (r <= 0.0) throw BadR("disc radius must be positive");
        return {Kind::CircularRadial, r};
    }
    static CdfTarget rayleigh_transformed(double n) { return {Kind::RayleighTransformed, n}; }
    static CdfTarget uniform01() { return {Kind::Uniform01, 0.0}; }

    double operator()(double x) const {
        switch (kind) {
            case Kind::QuarterCircle: return quarter_circle_cdf_eval(x, param);
            case Kind::CircularRadial: return circular_radial_cdf_eval(x, param);
            case Kind::RayleighTransformed:
                if (x <= 0.0) return 0.0;
                return 1.0 - std::exp(-param * x * x / 2.0);
            case Kind::Uniform01: return std::clamp(x, 0.0, 1.0);
        }
        return 0.0;
    }

    static double quarter_circle_cdf_eval(double x, double r) {
        if (r <= 0.0) throw BadR("quarter circle radius must be positive");
        if (x <= 0.0) return 0.0;
        if (x >= r) return 1.0;
        const double u = x / r;
        return (2.0 / M_PI) * (std::asin(u) + u * std::sqrt(1.0 - u * u));
    }

    static double circular_radial_cdf_eval(double x, double r) {
        if (r <= 0.0) throw BadR("disc radius must be positive");
        if (x <= 0.0) return 0.0;
        return std::clamp(x * x / (r * r), 0.0, 1.0);
    }
};

inline double quarter_circle_cdf(double x, double r) {
    return CdfTarget::quarter_circle_cdf_eval(x, r);
}

inline double circular_radial_cdf(double x, double r) {
    return CdfTarget::circular_radial_cdf_eval(x, r);
}

// Two-sided Kolmogorov-Smirnov distance against an arbitrary CDF.
template <typename Cdf>
double ks_distance(std::span<const double> samples, const Cdf& cdf) {
    if (samples.empty()) throw Empty("ks_distance: no samples");
    std::vector<double> x(samples.begin(), samples.end());
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double f = cdf(x[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
    }
    return d;
}

inline double ks_distance(std::span<const double> samples, const CdfTarget& target) {
    return ks_distance<CdfTarget>(samples, target);
}

// u = exp(-N sigma^2 / 2): uniform on [0,1] when sigma follows the Rayleigh
// least-singular-value law.
inline std::vector<double> rayleigh_transform(std::span<const double> samples, int n) {
    std::vector<double> u;
    u.reserve(samples.size());
    for (double s : samples) u.push_back(std::exp(-0.5 * n * s * s));
    return u;
}

struct BlipMatchResult {
    double max_distance = 0.0;
    int count_deficit = 0;
    std::size_t bulk_count = 0; // atoms of the full measure inside the N^{-1/2+delta} ball
};

// Match the atoms of the renormalized eigenvalue measure outside the eps-ball
// against the nonzero eigenvalues of the pattern matrix (greedy nearest
// pair first). eps must stay below the smallest target modulus.
inline BlipMatchResult blip_match(const WeightedPointMeasure& measure,
                                  std::span<const std::complex<double>> targets, double eps,
                                  int big_n, double delta = 0.1) {
    for (const auto& t : targets)
        if (std::abs(t) <= eps)
            throw OmegaTooLarge("blip_match: eps not below the smallest target modulus");
    const WeightedPointMeasure blip = restrict_measure(measure, eps);

    std::vector<std::complex<double>> atoms = blip.locations;
    std::vector<std::complex<double>> left(targets.begin(), targets.end());
    BlipMatchResult res;
    res.count_deficit = static_cast<int>(
        std::abs(static_cast<long>(atoms.size()) - static_cast<long>(left.size())));
    while (!atoms.empty() && !left.empty()) {
        size_t bi = 0, ti = 0;
        double best = std::numeric_limits<double>::infinity();
        for (size_t a = 0; a < atoms.size(); ++a)
            for (size_t t = 0; t < left.size(); ++t) {
                const double d = std::abs(atoms[a] - left[t]);
                if (d < best) {
                    best = d;
                    bi = a;
                    ti = t;
                }
            }
        res.max_distance = std::max(res.max_distance, best);
        atoms.erase(atoms.begin() + static_cast<long>(bi));
        left.erase(left.begin() + static_cast<long>(ti));
    }
    const double ball = std::pow(static_cast<double>(big_n), -0.5 + delta);
    for (const auto& loc : measure.locations)
        if (std::abs(loc) <= ball) ++res.bulk_count;
    return res;
}

// |Delta(x_1^2,...,x_N^2)| * prod |x_j| * prod exp(-x_j^2/2), unnormalized.
inline double joint_density_unnormalized(std::span<const double> x) {
    double v = 1.0;
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = i + 1; j < x.size(); ++j) v *= std::abs(x[i] * x[i] - x[j] * x[j]);
    for (double xi : x) v *= std::abs(xi) * std::exp(-xi * xi / 2.0);
    return v;
}

} // namespace spectra
