#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "spectra/complex_matrix.hpp"
#include "spectra/eig.hpp"
#include "spectra/errors.hpp"
#include "spectra/measures.hpp"

namespace spectra {

using bigint = boost::multiprecision::cpp_int;

struct MomentReport {
    int r = 0;
    double estimate = 0.0;
    double target = 0.0;
    double abs_error = 0.0;
    double rel_error = 0.0;
    double tolerance = 0.0;
    bool pass = false;

    static MomentReport make(int r, double estimate, double target, double tolerance,
                             bool absolute = false) {
        MomentReport m;
        m.r = r;
        m.estimate = estimate;
        m.target = target;
        m.abs_error = std::abs(estimate - target);
        m.rel_error = target != 0.0 ? m.abs_error / std::abs(target) : m.abs_error;
        m.tolerance = tolerance;
        m.pass = absolute ? m.abs_error <= tolerance : m.rel_error <= tolerance;
        return m;
    }
};

// ---- basic empirical moments ----

// Weighted moment sum; `normalized` divides by total mass, `centered`
// subtracts the weighted mean first.
inline std::complex<double> empirical_moment(const WeightedPointMeasure& m, int r, bool centered,
                                             bool normalized = false) {
    if (m.size() == 0) throw EmptyMeasure("empirical_moment on empty measure");
    if (r < 0) throw BadParams("moment order must be >= 0");
    const double mass = m.total_mass();
    std::complex<double> shift = 0.0;
    if (centered) {
        if (mass == 0.0) throw EmptyMeasure("empirical_moment: zero total mass");
        std::complex<double> s = 0.0;
        for (size_t i = 0; i < m.size(); ++i) s += m.weights[i] * m.locations[i];
        shift = s / mass;
    }
    std::complex<double> acc = 0.0;
    for (size_t i = 0; i < m.size(); ++i) {
        std::complex<double> p = 1.0;
        const std::complex<double> x = m.locations[i] - shift;
        for (int q = 0; q < r; ++q) p *= x;
        acc += m.weights[i] * p;
    }
    if (normalized) {
        if (mass == 0.0) throw EmptyMeasure("empirical_moment: zero total mass");
        acc /= mass;
    }
    return acc;
}

// ---- exact combinatorial oracles ----

inline bigint binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    bigint r = 1;
    for (int i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

inline bigint catalan(int r) {
    if (r < 0) throw BadParams("catalan: r must be >= 0");
    return binomial(2 * r, r) / (r + 1);
}

// C_r (1 - m/k)^r: limiting bulk moment of the squared singular values of an
// m-regular ensemble.
inline double quarter_circle_target(int r, int k, int m) {
    if (m < 1 || m >= k) throw BadParams("quarter_circle_target: need 1 <= m < k");
    if (r < 0) throw BadParams("quarter_circle_target: r must be >= 0");
    return static_cast<double>(catalan(r)) * std::pow(1.0 - static_cast<double>(m) / k, r);
}

// Limiting bulk moments (orders 1..4) for the non-regular 2x2 pattern with a
// single pinned cell; hollow form used for estimation.
inline std::vector<double> nonregular_bulk_targets() {
    return {3.0 / 4.0, 10.0 / 8.0, 42.0 / 16.0, 198.0 / 32.0};
}

// E[Tr B^r] over the k x k hollow GOE, exactly: expand the trace into cyclic
// index products, drop any with a diagonal factor, and evaluate Gaussian
// expectations by parity (E[x^{2m}] = (2m-1)!!).
inline bigint hollow_goe_trace_moment(int k, int r) {
    if (k < 1 || r < 0) throw BadParams("hollow_goe_trace_moment: bad k or r");
    if (k > 5 || r > 8) throw TooLarge("hollow_goe_trace_moment: enumeration capped at k<=5, r<=8");
    if (r == 0) return k;
    bigint total = 0;
    std::vector<int> idx(r, 0);
    std::map<std::pair<int, int>, int> edge_count;
    for (;;) {
        bool skip = false;
        for (int j = 0; j < r; ++j)
            if (idx[j] == idx[(j + 1) % r]) { skip = true; break; }
        if (!skip) {
            edge_count.clear();
            for (int j = 0; j < r; ++j) {
                int a = idx[j], b = idx[(j + 1) % r];
                if (a > b) std::swap(a, b);
                ++edge_count[{a, b}];
            }
            bigint term = 1;
            bool zero = false;
            for (const auto& [edge, cnt] : edge_count) {
                if (cnt % 2 != 0) { zero = true; break; }
                for (int m = cnt - 1; m >= 3; m -= 2) term *= m; // (cnt-1)!!
            }
            if (!zero) total += term;
        }
        int pos = r - 1;
        while (pos >= 0 && idx[pos] == k - 1) idx[pos--] = 0;
        if (pos < 0) break;
        ++idx[pos];
    }
    return total;
}

// (sqrt(2)/k)^r * (1/k) * E[Tr B^r]: the limiting centered blip moments of
// the squared singular values.
inline double blip_centered_target(int k, int r) {
    return std::pow(std::sqrt(2.0) / k, r) * static_cast<double>(hollow_goe_trace_moment(k, r)) / k;
}

// Limiting first (uncentered) blip moment: 2(k-1)/k.
inline double blip_first_moment_target(int k) {
    if (k < 1) throw BadParams("blip_first_moment_target: k must be >= 1");
    return 2.0 * (k - 1) / k;
}

// sum_{j=0}^m (-1)^{m-j} binom(m,j) j^p, exactly; 0 for p < m and m! at p = m.
inline bigint alternating_identity(int m, int p) {
    if (m < 0 || p < 0 || p > m || m > 64) throw BadParams("alternating_identity: need 0 <= p <= m <= 64");
    bigint total = 0;
    for (int j = 0; j <= m; ++j) {
        bigint term = binomial(m, j);
        bigint pw = 1;
        for (int q = 0; q < p; ++q) pw *= j; // 0^0 = 1
        term *= pw;
        if ((m - j) % 2 != 0) total -= term;
        else total += term;
    }
    return total;
}

// ---- Hermitized moment coefficients ----

struct HermitizedPolynomial {
    int r = 0;
    std::vector<bigint> c; // c[j] multiplies |z|^{2j}, j = 0..r
};

namespace detail {

// Count closed walks on trees that traverse each edge exactly twice, once in
// each direction, where the prescribed step signs must disagree on the two
// traversals of every edge. Walk shapes are enumerated as balanced
// parenthesis sequences (the bijection with ordered trees); a step away from
// the root opens, the matching return closes.
inline bigint signed_tree_walk_count(const std::vector<int>& signs) {
    const int len = static_cast<int>(signs.size());
    if (len == 0) return 1;
    if (len % 2 != 0) return 0;
    const int half = len / 2;
    bigint count = 0;
    std::vector<int> open_stack;
    auto rec = [&](auto&& self, int pos, int opens) -> void {
        if (pos == len) {
            count += 1; // opens == closes == half here, so the walk is closed
            return;
        }
        if (opens < half) {
            open_stack.push_back(pos);
            self(self, pos + 1, opens + 1);
            open_stack.pop_back();
        }
        if (!open_stack.empty() && signs[open_stack.back()] != signs[pos]) {
            const int op = open_stack.back();
            open_stack.pop_back();
            self(self, pos + 1, opens);
            open_stack.push_back(op);
        }
    };
    rec(rec, 0, 0);
    return count;
}

} // namespace detail

// Exact coefficients c_j of the common limiting Hermitized moments
// M^{(r)}(z) = sum_j c_j |z|^{2j}: enumerate the 4^r factor maps of the
// cyclic product (two-factor, single-entry, conjugate single-entry, and
// Kronecker steps), keep those with matching conjugation counts, and count
// the admissible signed tree walks for each; the |z| power is the number of
// single-entry pairs plus Kronecker steps.
inline HermitizedPolynomial cjr_coefficients(int r) {
    if (r < 0) throw BadParams("cjr_coefficients: r must be >= 0");
    if (r > 6) throw TooLarge("cjr_coefficients: enumeration capped at r <= 6");
    HermitizedPolynomial poly;
    poly.r = r;
    poly.c.assign(r + 1, 0);
    std::vector<int> psi(r, 0); // 0 = two-factor, 1 = entry, 2 = conjugate entry, 3 = kronecker
    std::vector<int> signs;
    for (;;) {
        int b = 0, g = 0, d = 0;
        for (int v : psi) {
            b += v == 1;
            g += v == 2;
            d += v == 3;
        }
        if (b == g) {
            signs.clear();
            for (int v : psi) {
                if (v == 0) { signs.push_back(-1); signs.push_back(+1); }
                else if (v == 1) signs.push_back(+1);
                else if (v == 2) signs.push_back(-1);
            }
            poly.c[b + d] += detail::signed_tree_walk_count(signs);
        }
        if (r == 0) break;
        int pos = r - 1;
        while (pos >= 0 && psi[pos] == 3) psi[pos--] = 0;
        if (pos < 0) break;
        ++psi[pos];
    }
    return poly;
}

inline double hermitized_moment_eval(const HermitizedPolynomial& poly, std::complex<double> z) {
    const double u = std::norm(z);
    double acc = 0.0, up = 1.0;
    for (int j = 0; j <= poly.r; ++j) {
        acc += static_cast<double>(poly.c[j]) * up;
        up *= u;
    }
    return acc;
}

// ---- per-matrix blip-measure trace identity ----

// Relative residual between the directly computed r-th moment of the blip
// measure and its binomial-expansion form in traces of (A^H A)^{2n+i}.
inline double ebsssm_identity_check(const ComplexMatrix& a, const BlipWeightParams& params,
                                    int r) {
    const int n = a.size();
    if (r < 0 || r > 4 || n > 256) throw TooLarge("ebsssm_identity_check: capped at r <= 4, N <= 256");
    const int k = params.k;
    const int wexp = params.n;

    HermitianSpectrum sq = hermitian_eigenvalues(a.adjoint_times_self());
    const double center = static_cast<double>(n) * n / (static_cast<double>(k) * k);
    long double direct = 0.0L;
    for (double s : sq.values) {
        const double x = (s - center) / n;
        long double p = 1.0L;
        for (int q = 0; q < r; ++q) p *= x;
        direct += static_cast<long double>(
                      weight_fn(k * static_cast<double>(k) * s / (static_cast<double>(n) * n),
                                wexp) / k) *
                  p;
    }

    // traces of powers 2n .. 2n + (r + 2n)
    const int max_i = r + 2 * wexp;
    std::vector<long double> tr(static_cast<size_t>(max_i) + 1, 0.0L);
    for (int i = 0; i <= max_i; ++i) {
        long double t = 0.0L;
        for (double s : sq.values) {
            long double p = 1.0L;
            for (int q = 0; q < 2 * wexp + i; ++q) p *= s;
            t += p;
        }
        tr[i] = t;
    }

    const long double kn = static_cast<long double>(k) / n;
    long double formula = 0.0L;
    for (int j = 0; j <= 2 * wexp; ++j) {
        const long double bj = static_cast<long double>(static_cast<double>(binomial(2 * wexp, j)));
        for (int i = 0; i <= r + j; ++i) {
            long double term = bj * static_cast<long double>(static_cast<double>(binomial(r + j, i)));
            term *= powl(kn, 4 * wexp + 2 * i - r);
            term *= tr[i];
            if ((r - i) % 2 != 0) formula -= term;
            else formula += term;
        }
    }
    for (int q = 0; q < r + 1; ++q) formula /= k;

    const long double scale = std::max<long double>(fabsl(direct), 1e-300L);
    return static_cast<double>(fabsl(direct - formula) / scale);
}

} // namespace spectra
