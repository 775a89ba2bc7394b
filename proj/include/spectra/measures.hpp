#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "spectra/errors.hpp"

namespace spectra {

// One trial's spectra plus provenance.
struct SpectralSample {
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    std::vector<std::complex<double>> eigenvalues;
    std::vector<double> singular_values; // ascending
};

enum class Domain { RealLine, ComplexPlane };

// Finite list of weighted atoms on R or C.
struct WeightedPointMeasure {
    Domain domain = Domain::RealLine;
    std::vector<std::complex<double>> locations;
    std::vector<double> weights;

    size_t size() const { return locations.size(); }

    double total_mass() const {
        double m = 0.0;
        for (double w : weights) m += w;
        return m;
    }

    void push(std::complex<double> loc, double w) {
        locations.push_back(loc);
        weights.push_back(w);
    }
};

// Polynomial weight exponent for the blip-localizing measure. The growth
// condition is enforced as 4^n <= N (n = 1 is always admissible as the
// minimum meaningful exponent).
struct BlipWeightParams {
    int n = 1;
    int k = 1;
    int big_n = 0;

    BlipWeightParams(int n_, int k_, int big_n_) : n(n_), k(k_), big_n(big_n_) {
        if (n < 1) throw BadWeightExponent("weight exponent must be >= 1");
        if (k < 1 || big_n < 1) throw BadWeightExponent("bad k or N");
        if (n > 1 && std::pow(4.0, n) > static_cast<double>(big_n))
            throw BadWeightExponent("weight exponent too large: 4^n must not exceed N");
    }

    static int default_exponent(int big_n) {
        const int n = static_cast<int>(std::log2(std::max(1, big_n)) / 2.0);
        return std::max(1, n);
    }
};

// x^{2n} (x-2)^{2n}, evaluated in log space; vanishes at x in {0, 2} and is
// nonnegative everywhere (even exponents).
inline double weight_fn(double x, int n) {
    if (x == 0.0 || x == 2.0) return 0.0;
    return std::exp(2.0 * n * (std::log(std::abs(x)) + std::log(std::abs(x - 2.0))));
}

// Atoms at sigma^2/N with weight 1/N each; total mass 1.
inline WeightedPointMeasure bulk_sq_singular_measure(const SpectralSample& sample, int n) {
    if (static_cast<int>(sample.singular_values.size()) != n)
        throw CountMismatch("bulk measure: need exactly N singular values");
    WeightedPointMeasure m;
    m.domain = Domain::RealLine;
    const double w = 1.0 / n;
    for (double sv : sample.singular_values) m.push(sv * sv / n, w);
    return m;
}

// Empirical blip square singular spectral measure: for each eigenvalue
// sigma^2 of A^H A, an atom at (sigma^2 - N^2/k^2)/N with weight
// f_n(k^2 sigma^2 / N^2) / k.
inline WeightedPointMeasure ebsssm(const SpectralSample& sample, const BlipWeightParams& params) {
    const int n = params.big_n, k = params.k;
    if (static_cast<int>(sample.singular_values.size()) != n)
        throw CountMismatch("ebsssm: need exactly N singular values");
    if (n % k != 0) throw CountMismatch("ebsssm: k must divide N");
    WeightedPointMeasure m;
    m.domain = Domain::RealLine;
    const double center = static_cast<double>(n) * n / (static_cast<double>(k) * k);
    for (double sv : sample.singular_values) {
        const double sq = sv * sv;
        m.push((sq - center) / n, weight_fn(k * static_cast<double>(k) * sq / (static_cast<double>(n) * n), params.n) / k);
    }
    return m;
}

// Renormalized eigenvalue measure: atoms at (k/N) lambda_j with weight 1/k;
// total mass N/k exactly.
inline WeightedPointMeasure renormalized_spectral_measure(const SpectralSample& sample, int k,
                                                          int n) {
    if (static_cast<int>(sample.eigenvalues.size()) != n)
        throw CountMismatch("renormalized measure: need exactly N eigenvalues");
    WeightedPointMeasure m;
    m.domain = Domain::ComplexPlane;
    const double scale = static_cast<double>(k) / n;
    const double w = 1.0 / k;
    for (const auto& lam : sample.eigenvalues) m.push(scale * lam, w);
    return m;
}

// Drop atoms with |location| <= eps (restriction to the complement of the
// closed eps-ball at the origin).
inline WeightedPointMeasure restrict_measure(const WeightedPointMeasure& m, double eps) {
    WeightedPointMeasure out;
    out.domain = m.domain;
    for (size_t i = 0; i < m.size(); ++i)
        if (std::abs(m.locations[i]) > eps) out.push(m.locations[i], m.weights[i]);
    return out;
}

// JSON-lines: one atom per line, {"loc": x | [re, im], "w": f}
inline void write_measure_jsonl(const WeightedPointMeasure& m, std::ostream& os) {
    for (size_t i = 0; i < m.size(); ++i) {
        nlohmann::json j;
        if (m.domain == Domain::RealLine)
            j["loc"] = m.locations[i].real();
        else
            j["loc"] = {m.locations[i].real(), m.locations[i].imag()};
        j["w"] = m.weights[i];
        os << j.dump() << '\n';
    }
}

} // namespace spectra
