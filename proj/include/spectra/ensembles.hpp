#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spectra/complex_matrix.hpp"
#include "spectra/errors.hpp"
#include "spectra/seed_stream.hpp"

namespace spectra {

inline constexpr int kMaxMatrixSize = 4096; // desk scale
inline constexpr double kSlotComponentSd = 0.70710678118654752440; // 1/sqrt(2)

// One cell of a k x k pattern: a pinned complex value or an independent
// complex Gaussian slot.
struct Cell {
    bool deterministic = false;
    cd value{0.0, 0.0};

    static Cell det(cd v) { return {true, v}; }
    static Cell rand() { return {false, {0.0, 0.0}}; }

    bool operator==(const Cell& o) const {
        return deterministic == o.deterministic && (!deterministic || value == o.value);
    }
};

struct PatternMatrix {
    int k = 0;
    std::vector<Cell> cells; // row-major k*k

    PatternMatrix() = default;
    explicit PatternMatrix(int k_) : k(k_), cells(static_cast<size_t>(k_) * k_) {}

    Cell& at(int r, int c) { return cells[static_cast<size_t>(r) * k + c]; }
    const Cell& at(int r, int c) const { return cells[static_cast<size_t>(r) * k + c]; }

    // the associated numeric matrix B: random slots replaced by 0
    ComplexMatrix numeric() const {
        ComplexMatrix b(k);
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c)
                if (at(r, c).deterministic) b(r, c) = at(r, c).value;
        return b;
    }

    bool transpose_symmetric() const {
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c)
                if (!(at(r, c) == at(c, r))) return false;
        return true;
    }
};

enum class EnsembleKind {
    Checkerboard,
    HollowCheckerboard,
    Generalized,
    GaussianComplexSymmetric,
    GaussianComplexAsymmetric,
    HollowGoe,
};

inline std::string to_string(EnsembleKind k) {
    switch (k) {
        case EnsembleKind::Checkerboard: return "checkerboard";
        case EnsembleKind::HollowCheckerboard: return "hollow-checkerboard";
        case EnsembleKind::Generalized: return "generalized";
        case EnsembleKind::GaussianComplexSymmetric: return "gaussian-complex-symmetric";
        case EnsembleKind::GaussianComplexAsymmetric: return "gaussian-complex-asymmetric";
        case EnsembleKind::HollowGoe: return "hollow-goe";
    }
    throw BadSpec("unknown ensemble kind");
}

inline EnsembleKind kind_from_string(const std::string& s) {
    if (s == "checkerboard") return EnsembleKind::Checkerboard;
    if (s == "hollow-checkerboard") return EnsembleKind::HollowCheckerboard;
    if (s == "generalized") return EnsembleKind::Generalized;
    if (s == "gaussian-complex-symmetric") return EnsembleKind::GaussianComplexSymmetric;
    if (s == "gaussian-complex-asymmetric") return EnsembleKind::GaussianComplexAsymmetric;
    if (s == "hollow-goe") return EnsembleKind::HollowGoe;
    throw BadSpec("unknown ensemble kind: " + s);
}

// Full recipe for drawing one matrix.
struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::Checkerboard;
    int k = 1;
    cd w{1.0, 0.0}; // checkerboard only; defaults to 1
    std::optional<PatternMatrix> pattern; // generalized only
    bool symmetric = false;
    int n = 0;

    void validate() const {
        if (n < 1 || n > kMaxMatrixSize)
            throw BadSpec("N must be in [1, " + std::to_string(kMaxMatrixSize) + "]");
        if (k < 1) throw BadSpec("k must be positive");
        switch (kind) {
            case EnsembleKind::Checkerboard:
            case EnsembleKind::HollowCheckerboard:
                if (n % k != 0) throw NonDivisible("k must divide N");
                break;
            case EnsembleKind::Generalized: {
                if (n % k != 0) throw NonDivisible("k must divide N");
                if (!pattern || pattern->k != k)
                    throw BadSpec("generalized ensemble needs a k x k pattern");
                if (symmetric && !pattern->transpose_symmetric())
                    throw AsymmetricPattern("symmetric spec with non-symmetric pattern");
                break;
            }
            case EnsembleKind::GaussianComplexSymmetric:
            case EnsembleKind::GaussianComplexAsymmetric:
                break;
            case EnsembleKind::HollowGoe:
                if (n != k) throw BadSpec("hollow GOE is k x k");
                break;
        }
    }
};

// k x k pattern of the block structure; BadSpec for the Gaussian kinds.
inline PatternMatrix pattern_of(const EnsembleSpec& spec) {
    switch (spec.kind) {
        case EnsembleKind::Checkerboard:
        case EnsembleKind::HollowCheckerboard: {
            PatternMatrix p(spec.k);
            const cd v = spec.kind == EnsembleKind::Checkerboard ? spec.w : cd(0.0);
            for (int r = 0; r < spec.k; ++r)
                for (int c = 0; c < spec.k; ++c)
                    p.at(r, c) = (r == c) ? Cell::det(v) : Cell::rand();
            return p;
        }
        case EnsembleKind::Generalized:
            if (!spec.pattern) throw BadSpec("generalized spec without pattern");
            return *spec.pattern;
        default:
            throw BadSpec("pattern_of: ensemble has no pattern");
    }
}

// m if every pattern row has exactly m deterministic cells, absent otherwise
inline std::optional<int> regularity_of(const PatternMatrix& pattern) {
    std::optional<int> m;
    for (int r = 0; r < pattern.k; ++r) {
        int count = 0;
        for (int c = 0; c < pattern.k; ++c)
            if (pattern.at(r, c).deterministic) ++count;
        if (!m) m = count;
        else if (*m != count) return std::nullopt;
    }
    return m;
}

namespace detail {

// Shared builder for the pattern-tiled kinds. Draw order is part of the
// contract: asymmetric draws row-major over all non-deterministic positions,
// symmetric draws row-major over the upper triangle (i <= j) and mirrors.
// Hollow and non-hollow variants of the same pattern therefore consume
// identical draw sequences, so A = M + P holds bit-exactly.
inline ComplexMatrix build_from_pattern(const PatternMatrix& pattern, int n, bool symmetric,
                                        SeedStream& stream) {
    const int k = pattern.k;
    ComplexMatrix a(n);
    if (symmetric) {
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                const Cell& cell = pattern.at(i % k, j % k);
                const cd v = cell.deterministic ? cell.value
                                                : stream.next_complex_gaussian(kSlotComponentSd);
                a(i, j) = v;
                a(j, i) = v;
            }
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const Cell& cell = pattern.at(i % k, j % k);
                a(i, j) = cell.deterministic ? cell.value
                                             : stream.next_complex_gaussian(kSlotComponentSd);
            }
    }
    return a;
}

// Gaussian ensembles with matrix density ~ exp(-Tr(A^H A)/2).  Symmetric:
// off-diagonal components N(0,1/2) mirrored, diagonal components N(0,1);
// asymmetric: all components N(0,1).
inline ComplexMatrix build_gaussian(int n, bool symmetric, SeedStream& stream) {
    ComplexMatrix a(n);
    if (symmetric) {
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                const cd v = stream.next_complex_gaussian(i == j ? 1.0 : kSlotComponentSd);
                a(i, j) = v;
                a(j, i) = v;
            }
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = stream.next_complex_gaussian(1.0);
    }
    return a;
}

} // namespace detail

inline ComplexMatrix build_checkerboard(const EnsembleSpec& spec, SeedStream& stream) {
    if (spec.kind != EnsembleKind::Checkerboard && spec.kind != EnsembleKind::HollowCheckerboard)
        throw BadSpec("build_checkerboard: wrong kind");
    spec.validate();
    return detail::build_from_pattern(pattern_of(spec), spec.n, spec.symmetric, stream);
}

inline ComplexMatrix build_generalized(const EnsembleSpec& spec, SeedStream& stream) {
    if (spec.kind != EnsembleKind::Generalized) throw BadSpec("build_generalized: wrong kind");
    spec.validate();
    return detail::build_from_pattern(*spec.pattern, spec.n, spec.symmetric, stream);
}

// k x k real symmetric, zero diagonal, off-diagonal N(0,1), mirrored
inline ComplexMatrix build_hollow_goe(int k, SeedStream& stream) {
    if (k < 1) throw BadSpec("hollow GOE needs k >= 1");
    ComplexMatrix a(k);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            const double v = stream.next_gaussian();
            a(i, j) = v;
            a(j, i) = v;
        }
    return a;
}

inline ComplexMatrix build_matrix(const EnsembleSpec& spec, SeedStream& stream) {
    spec.validate();
    ComplexMatrix a;
    switch (spec.kind) {
        case EnsembleKind::Checkerboard:
        case EnsembleKind::HollowCheckerboard: a = build_checkerboard(spec, stream); break;
        case EnsembleKind::Generalized: a = build_generalized(spec, stream); break;
        case EnsembleKind::GaussianComplexSymmetric:
            a = detail::build_gaussian(spec.n, true, stream);
            break;
        case EnsembleKind::GaussianComplexAsymmetric:
            a = detail::build_gaussian(spec.n, false, stream);
            break;
        case EnsembleKind::HollowGoe: a = build_hollow_goe(spec.k, stream); break;
    }
    a.require_finite();
    return a;
}

// ---- JSON configuration object ----
// {"kind": "...", "k": int, "w": {"re": f, "im": f},
//  "pattern": [[{"det": {"re": f, "im": f}} | "rand", ...]],
//  "symmetric": bool, "N": int}

inline nlohmann::json to_json(const EnsembleSpec& spec) {
    nlohmann::json j;
    j["kind"] = to_string(spec.kind);
    j["k"] = spec.k;
    j["w"] = {{"re", spec.w.real()}, {"im", spec.w.imag()}};
    j["symmetric"] = spec.symmetric;
    j["N"] = spec.n;
    if (spec.pattern) {
        nlohmann::json rows = nlohmann::json::array();
        for (int r = 0; r < spec.pattern->k; ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (int c = 0; c < spec.pattern->k; ++c) {
                const Cell& cell = spec.pattern->at(r, c);
                if (cell.deterministic)
                    row.push_back({{"det", {{"re", cell.value.real()}, {"im", cell.value.imag()}}}});
                else
                    row.push_back("rand");
            }
            rows.push_back(row);
        }
        j["pattern"] = rows;
    }
    return j;
}

inline EnsembleSpec ensemble_from_json(const nlohmann::json& j) {
    EnsembleSpec spec;
    spec.kind = kind_from_string(j.at("kind").get<std::string>());
    spec.k = j.at("k").get<int>();
    if (j.contains("w")) spec.w = {j["w"].at("re").get<double>(), j["w"].at("im").get<double>()};
    spec.symmetric = j.value("symmetric", false);
    spec.n = j.at("N").get<int>();
    if (j.contains("pattern")) {
        const auto& rows = j["pattern"];
        PatternMatrix p(static_cast<int>(rows.size()));
        for (int r = 0; r < p.k; ++r) {
            const auto& row = rows.at(r);
            if (static_cast<int>(row.size()) != p.k) throw BadSpec("pattern is not square");
            for (int c = 0; c < p.k; ++c) {
                const auto& cell = row.at(c);
                if (cell.is_string() && cell.get<std::string>() == "rand")
                    p.at(r, c) = Cell::rand();
                else
                    p.at(r, c) = Cell::det({cell.at("det").at("re").get<double>(),
                                            cell.at("det").at("im").get<double>()});
            }
        }
        spec.pattern = std::move(p);
    }
    spec.validate();
    return spec;
}

} // namespace spectra
