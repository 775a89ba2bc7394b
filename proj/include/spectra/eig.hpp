#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "spectra/complex_matrix.hpp"
#include "spectra/errors.hpp"

namespace spectra {

struct HermitianSpectrum {
    std::vector<double> values; // ascending
    double trace_residual = 0.0;
    double trace_sq_residual = 0.0;
};

struct ComplexSpectrum {
    std::vector<cd> values;
    double trace_residual = 0.0;
    double trace_sq_residual = 0.0;
};

namespace detail {

inline double abs1(cd z) { return std::abs(z.real()) + std::abs(z.imag()); }

inline double sign_like(double a, double b) { return b >= 0.0 ? std::abs(a) : -std::abs(a); }

// Unitary reduction of a Hermitian matrix to real symmetric tridiagonal form
// (Householder, Martin-Reinsch-Wilkinson). Eigenvalue-only: phases of the
// subdiagonal are dropped, which is a diagonal unitary similarity.
inline void hermitian_to_tridiagonal(ComplexMatrix& a, std::vector<double>& d,
                                     std::vector<double>& e) {
    const int n = a.size();
    d.assign(n, 0.0);
    e.assign(n, 0.0);
    std::vector<cd> u(n), p(n);
    for (int i = n - 1; i >= 1; --i) {
        const int l = i - 1;
        double scale = 0.0;
        for (int k = 0; k <= l; ++k) scale += abs1(a(i, k));
        if (scale == 0.0) {
            e[i] = 0.0;
            continue;
        }
        double h = 0.0;
        for (int k = 0; k <= l; ++k) {
            u[k] = std::conj(a(i, k)) / scale; // column form of row i
            h += std::norm(u[k]);
        }
        const double g = std::sqrt(h);
        const double f = std::abs(u[l]);
        e[i] = scale * g;
        if (f != 0.0) {
            u[l] *= 1.0 + g / f;
            h += f * g;
        } else {
            u[l] = g;
        }
        // p = A u / h over the leading block, using the lower triangle
        for (int j = 0; j <= l; ++j) {
            cd s = 0.0;
            const cd* aj = a.row(j);
            for (int k = 0; k <= j; ++k) s += aj[k] * u[k];
            for (int k = j + 1; k <= l; ++k) s += std::conj(a(k, j)) * u[k];
            p[j] = s / h;
        }
        double kk = 0.0; // (u^H p) / (2h), real for Hermitian blocks
        for (int j = 0; j <= l; ++j) kk += (std::conj(u[j]) * p[j]).real();
        kk /= 2.0 * h;
        for (int j = 0; j <= l; ++j) p[j] -= kk * u[j]; // q
        for (int j = 0; j <= l; ++j) {
            const cd uj = u[j], qj = p[j];
            cd* aj = a.row(j);
            for (int k = 0; k <= j; ++k) aj[k] -= uj * std::conj(p[k]) + qj * std::conj(u[k]);
        }
    }
    for (int i = 0; i < n; ++i) d[i] = a(i, i).real();
}

// Implicit-shift QL on a real symmetric tridiagonal matrix (tql1 lineage).
// d holds the diagonal, e the subdiagonals in e[1..n-1].
inline void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e) {
    const int n = static_cast<int>(d.size());
    if (n <= 1) return;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    double f = 0.0, tst1 = 0.0;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
        int m = l;
        for (;;) {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd || std::abs(e[m]) <= eps * tst1) break;
            }
            if (m == l) break;
            if (iter++ == 30) throw NoConvergence("tridiagonal QL: more than 30 sweeps");
            // Wilkinson shift
            double g = d[l];
            double pp = (d[l + 1] - g) / (2.0 * e[l]);
            double r = std::hypot(pp, 1.0);
            d[l] = e[l] / (pp + sign_like(r, pp));
            d[l + 1] = e[l] * (pp + sign_like(r, pp));
            const double dl1 = d[l + 1];
            double h = g - d[l];
            for (int i = l + 2; i < n; ++i) d[i] -= h;
            f += h;
            // QL sweep
            pp = d[m];
            double c = 1.0, c2 = c, c3 = c;
            const double el1 = e[l + 1];
            double s = 0.0, s2 = 0.0;
            for (int i = m - 1; i >= l; --i) {
                c3 = c2;
                c2 = c;
                s2 = s;
                g = c * e[i];
                h = c * pp;
                r = std::hypot(pp, e[i]);
                e[i + 1] = s * r;
                s = e[i] / r;
                c = pp / r;
                pp = c * d[i] - s * g;
                d[i + 1] = h + s * (c * g + s * d[i]);
            }
            pp = -s * s2 * c3 * el1 * e[l] / dl1;
            e[l] = s * pp;
            d[l] = c * pp;
        }
        d[l] += f;
    }
    std::sort(d.begin(), d.end());
}

// Unitary similarity reduction of a general complex matrix to upper
// Hessenberg form (corth lineage, whole-matrix case).
inline void to_upper_hessenberg(ComplexMatrix& a) {
    const int n = a.size();
    std::vector<cd> ort(n);
    for (int m = 1; m <= n - 2; ++m) {
        double h = 0.0, scale = 0.0;
        ort[m] = 0.0;
        for (int i = m; i < n; ++i) scale += abs1(a(i, m - 1));
        if (scale == 0.0) continue;
        for (int i = n - 1; i >= m; --i) {
            ort[i] = a(i, m - 1) / scale;
            h += std::norm(ort[i]);
        }
        double g = std::sqrt(h);
        const double f = std::abs(ort[m]);
        if (f != 0.0) {
            h += f * g;
            g /= f;
            ort[m] *= g + 1.0;
        } else {
            ort[m] = g;
            a(m, m - 1) = scale;
        }
        // (I - u u^H / h) * A
        for (int j = m; j < n; ++j) {
            cd s = 0.0;
            for (int i = n - 1; i >= m; --i) s += std::conj(ort[i]) * a(i, j);
            s /= h;
            for (int i = m; i < n; ++i) a(i, j) -= s * ort[i];
        }
        // ... * (I - u u^H / h)
        for (int i = 0; i < n; ++i) {
            cd s = 0.0;
            for (int j = n - 1; j >= m; --j) s += ort[j] * a(i, j);
            s /= h;
            for (int j = m; j < n; ++j) a(i, j) -= s * std::conj(ort[j]);
        }
        a(m, m - 1) *= -g;
        for (int i = m + 1; i < n; ++i) a(i, m - 1) = 0.0;
    }
}

// Shifted QR on a complex upper Hessenberg matrix, eigenvalues only
// (the unitary analogue of Martin-Wilkinson COMLR; comqr lineage).
// hr/hi layout matches the classical routine: the imaginary slots of the
// subdiagonal double as rotation scratch between passes, and the
// subdiagonal proper stays real after the initial phase similarity.
inline std::vector<cd> hessenberg_qr_eigenvalues(const ComplexMatrix& hess) {
    const int n = hess.size();
    constexpr double eps = std::numeric_limits<double>::epsilon();
    std::vector<double> hr(static_cast<size_t>(n) * n), hi(static_cast<size_t>(n) * n);
    auto HR = [&](int i, int j) -> double& { return hr[static_cast<size_t>(i) * n + j]; };
    auto HI = [&](int i, int j) -> double& { return hi[static_cast<size_t>(i) * n + j]; };
    double hscale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(0, i - 1); j < n; ++j) {
            HR(i, j) = hess(i, j).real();
            HI(i, j) = hess(i, j).imag();
            hscale = std::max(hscale, abs1(hess(i, j)));
        }
    std::vector<double> wr(n), wi(n);

    // create real subdiagonal elements
    for (int i = 1; i < n; ++i) {
        const int ll = std::min(i + 1, n - 1);
        if (HI(i, i - 1) == 0.0) continue;
        const double norm = std::hypot(HR(i, i - 1), HI(i, i - 1));
        const double yr = HR(i, i - 1) / norm;
        const double yi = HI(i, i - 1) / norm;
        HR(i, i - 1) = norm;
        HI(i, i - 1) = 0.0;
        for (int j = i; j < n; ++j) {
            const double si = yr * HI(i, j) - yi * HR(i, j);
            HR(i, j) = yr * HR(i, j) + yi * HI(i, j);
            HI(i, j) = si;
        }
        for (int j = 0; j <= ll; ++j) {
            const double si = yr * HI(j, i) + yi * HR(j, i);
            HR(j, i) = yr * HR(j, i) - yi * HI(j, i);
            HI(j, i) = si;
        }
    }

    int en = n - 1;
    double tr = 0.0, ti = 0.0;
    long itn = 30L * n;
    while (en >= 0) {
        int its = 0;
        for (;;) {
            // look for a single small subdiagonal element
            int l = en;
            while (l > 0) {
                const double local = abs1({HR(l - 1, l - 1), HI(l - 1, l - 1)}) +
                                     abs1({HR(l, l), HI(l, l)});
                const double thresh = eps * std::max(local, hscale);
                if (std::abs(HR(l, l - 1)) <= thresh) break;
                --l;
            }
            if (l == en) { // root found
                wr[en] = HR(en, en) + tr;
                wi[en] = HI(en, en) + ti;
                --en;
                break;
            }
            if (itn == 0) throw NoConvergence("Hessenberg QR: 30*N iterations exhausted");
            const int enm1 = en - 1;
            double sr, si;
            if (its == 10 || its == 20) {
                // exceptional shift
                sr = std::abs(HR(en, enm1));
                if (en >= 2) sr += std::abs(HR(enm1, en - 2));
                si = 0.0;
            } else {
                sr = HR(en, en);
                si = HI(en, en);
                const double xr = HR(enm1, en) * HR(en, enm1);
                const double xi = HI(enm1, en) * HR(en, enm1);
                if (xr != 0.0 || xi != 0.0) {
                    const double yr = (HR(enm1, enm1) - sr) / 2.0;
                    const double yi = (HI(enm1, enm1) - si) / 2.0;
                    cd zz = std::sqrt(cd(yr * yr - yi * yi + xr, 2.0 * yr * yi + xi));
                    if (yr * zz.real() + yi * zz.imag() < 0.0) zz = -zz;
                    const cd q = cd(xr, xi) / (cd(yr, yi) + zz);
                    sr -= q.real();
                    si -= q.imag();
                }
            }
            for (int i = 0; i <= en; ++i) {
                HR(i, i) -= sr;
                HI(i, i) -= si;
            }
            tr += sr;
            ti += si;
            ++its;
            --itn;
            // reduce to triangle (rows)
            for (int i = l + 1; i <= en; ++i) {
                const double sr1 = HR(i, i - 1);
                HR(i, i - 1) = 0.0;
                const double norm = std::hypot(std::hypot(HR(i - 1, i - 1), HI(i - 1, i - 1)), sr1);
                const double xr = HR(i - 1, i - 1) / norm;
                const double xi = HI(i - 1, i - 1) / norm;
                wr[i - 1] = xr;
                wi[i - 1] = xi;
                HR(i - 1, i - 1) = norm;
                HI(i - 1, i - 1) = 0.0;
                HI(i, i - 1) = sr1 / norm;
                for (int j = i; j <= en; ++j) {
                    const double yr = HR(i - 1, j), yi = HI(i - 1, j);
                    const double zzr = HR(i, j), zzi = HI(i, j);
                    HR(i - 1, j) = xr * yr + xi * yi + HI(i, i - 1) * zzr;
                    HI(i - 1, j) = xr * yi - xi * yr + HI(i, i - 1) * zzi;
                    HR(i, j) = xr * zzr - xi * zzi - HI(i, i - 1) * yr;
                    HI(i, j) = xr * zzi + xi * zzr - HI(i, i - 1) * yi;
                }
            }
            double fsi = HI(en, en), fsr = 0.0;
            if (fsi != 0.0) {
                const double norm = std::hypot(HR(en, en), fsi);
                fsr = HR(en, en) / norm;
                fsi /= norm;
                HR(en, en) = norm;
                HI(en, en) = 0.0;
            }
            // inverse operation (columns)
            for (int j = l + 1; j <= en; ++j) {
                const double xr = wr[j - 1], xi = wi[j - 1];
                for (int i = l; i <= j; ++i) {
                    const double yr = HR(i, j - 1);
                    double yi = 0.0;
                    const double zzr = HR(i, j), zzi = HI(i, j);
                    if (i != j) {
                        yi = HI(i, j - 1);
                        HI(i, j - 1) = xr * yi + xi * yr + HI(j, j - 1) * zzi;
                    }
                    HR(i, j - 1) = xr * yr - xi * yi + HI(j, j - 1) * zzr;
                    HR(i, j) = xr * zzr + xi * zzi - HI(j, j - 1) * yr;
                    HI(i, j) = xr * zzi - xi * zzr - HI(j, j - 1) * yi;
                }
            }
            if (fsi != 0.0) {
                for (int i = l; i <= en; ++i) {
                    const double yr = HR(i, en), yi = HI(i, en);
                    HR(i, en) = fsr * yr - fsi * yi;
                    HI(i, en) = fsr * yi + fsi * yr;
                }
            }
        }
    }
    std::vector<cd> out(n);
    for (int i = 0; i < n; ++i) out[i] = {wr[i], wi[i]};
    return out;
}

} // namespace detail

// Eigenvalues of a Hermitian matrix, ascending. The input is symmetrized
// before use; Householder tridiagonalization + implicit Wilkinson-shift QL.
inline HermitianSpectrum hermitian_eigenvalues(const ComplexMatrix& h) {
    const int n = h.size();
    ComplexMatrix a(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
    const double tr = a.trace().real();
    const double fro_sq = a.frobenius_norm_sq();

    HermitianSpectrum s;
    std::vector<double> e;
    detail::hermitian_to_tridiagonal(a, s.values, e);
    detail::tridiagonal_ql(s.values, e);

    double sum = 0.0, sum_sq = 0.0;
    for (double v : s.values) {
        sum += v;
        sum_sq += v * v;
    }
    s.trace_residual = std::abs(sum - tr);
    s.trace_sq_residual = std::abs(sum_sq - fro_sq);
    if (s.trace_residual > 1e-8 * std::max(1.0, std::abs(tr)))
        throw NumericalFailure("hermitian eigenvalues: trace identity violated");
    if (s.trace_sq_residual > 1e-8 * std::max(1.0, fro_sq))
        throw NumericalFailure("hermitian eigenvalues: Frobenius identity violated");
    return s;
}

// Eigenvalues of a general square complex matrix: Householder reduction to
// upper Hessenberg, then shifted QR with deflation.
inline ComplexSpectrum complex_eigenvalues(const ComplexMatrix& m) {
    const int n = m.size();
    cd tr = 0.0, tr_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        tr += m(i, i);
        for (int j = 0; j < n; ++j) tr_sq += m(i, j) * m(j, i);
    }
    const double fro = m.frobenius_norm();

    ComplexMatrix a = m;
    detail::to_upper_hessenberg(a);
    ComplexSpectrum s;
    s.values = detail::hessenberg_qr_eigenvalues(a);

    cd sum = 0.0, sum_sq = 0.0;
    for (cd v : s.values) {
        sum += v;
        sum_sq += v * v;
    }
    s.trace_residual = std::abs(sum - tr);
    s.trace_sq_residual = std::abs(sum_sq - tr_sq);
    if (s.trace_residual > 1e-6 * (1.0 + fro))
        throw NumericalFailure("complex eigenvalues: trace identity violated");
    if (s.trace_sq_residual > 1e-6 * (1.0 + fro * fro))
        throw NumericalFailure("complex eigenvalues: squared-trace identity violated");
    return s;
}

// Nonnegative ascending singular values via the eigenvalues of A^H A.
// Accuracy is limited by the squared condition number, which is acceptable
// here because every consumer tolerance is statistical.
inline HermitianSpectrum singular_values(const ComplexMatrix& a) {
    const double fro_sq = a.frobenius_norm_sq();
    HermitianSpectrum s = hermitian_eigenvalues(a.adjoint_times_self());
    const double clamp_floor = -1e-8 * std::max(1.0, fro_sq);
    for (double& v : s.values) {
        if (v < clamp_floor)
            throw NumericalFailure("singular values: eigenvalue of A^H A below clamp threshold");
        v = v <= 0.0 ? 0.0 : std::sqrt(v);
    }
    double sum_sq = 0.0;
    for (double v : s.values) sum_sq += v * v;
    if (std::abs(sum_sq - fro_sq) > 1e-8 * std::max(1.0, fro_sq))
        throw NumericalFailure("singular values: Frobenius identity violated");
    return s;
}

inline double least_singular_value(const ComplexMatrix& a) {
    return singular_values(a).values.front();
}

} // namespace spectra
