#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "spectra/errors.hpp"

namespace spectra {

using cd = std::complex<double>;

// Dense square complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n) {}

    static ComplexMatrix identity(int n) {
        ComplexMatrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int size() const { return n_; }

    cd& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const cd& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

    cd* row(int i) { return a_.data() + static_cast<size_t>(i) * n_; }
    const cd* row(int i) const { return a_.data() + static_cast<size_t>(i) * n_; }

    cd trace() const {
        cd t = 0.0;
        for (int i = 0; i < n_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm_sq() const {
        double s = 0.0;
        for (const cd& v : a_) s += std::norm(v);
        return s;
    }
    double frobenius_norm() const { return std::sqrt(frobenius_norm_sq()); }

    bool all_finite() const {
        for (const cd& v : a_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        return true;
    }

    void require_finite() const {
        if (!all_finite()) throw NumericalFailure("matrix contains non-finite entries");
    }

    // B = A^H A; B is Hermitian, built from rank-1 row updates for locality.
    ComplexMatrix adjoint_times_self() const {
        const int n = n_;
        ComplexMatrix b(n);
        for (int m = 0; m < n; ++m) {
            const cd* r = row(m);
            for (int i = 0; i < n; ++i) {
                const cd c = std::conj(r[i]);
                if (c == cd(0.0)) continue;
                cd* bi = b.row(i);
                for (int j = i; j < n; ++j) bi[j] += c * r[j];
            }
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j) b(i, j) = std::conj(b(j, i));
        return b;
    }

    friend ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y) {
        const int n = x.n_;
        ComplexMatrix z(n);
        for (int i = 0; i < n; ++i) {
            const cd* xi = x.row(i);
            cd* zi = z.row(i);
            for (int m = 0; m < n; ++m) {
                const cd v = xi[m];
                if (v == cd(0.0)) continue;
                const cd* ym = y.row(m);
                for (int j = 0; j < n; ++j) zi[j] += v * ym[j];
            }
        }
        return z;
    }

    friend ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y) {
        ComplexMatrix z(x.n_);
        for (size_t i = 0; i < x.a_.size(); ++i) z.a_[i] = x.a_[i] + y.a_[i];
        return z;
    }

    friend ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y) {
        ComplexMatrix z(x.n_);
        for (size_t i = 0; i < x.a_.size(); ++i) z.a_[i] = x.a_[i] - y.a_[i];
        return z;
    }

    bool operator==(const ComplexMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }

private:
    int n_ = 0;
    std::vector<cd> a_;
};

} // namespace spectra
