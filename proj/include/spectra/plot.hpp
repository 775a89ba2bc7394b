#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "spectra/errors.hpp"
#include "spectra/measures.hpp"
#include "spectra/run.hpp"

namespace spectra {

enum class PlotKind { ScatterEig, HistSV, HistBlip };

inline PlotKind plot_kind_from_string(const std::string& s) {
    if (s == "scatter-eig") return PlotKind::ScatterEig;
    if (s == "hist-sv") return PlotKind::HistSV;
    if (s == "hist-blip") return PlotKind::HistBlip;
    throw BadSpec("unknown plot kind: " + s);
}

namespace detail {

class SvgCanvas {
public:
    SvgCanvas(int w, int h) : w_(w), h_(h) {
        os_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
            << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
        os_ << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
    }

    void circle(double cx, double cy, double r, const std::string& stroke,
                const std::string& fill) {
        os_ << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << r << "\" stroke=\""
            << stroke << "\" fill=\"" << fill << "\" stroke-width=\"1\"/>\n";
    }

    void dot(double cx, double cy, double r, const std::string& fill) {
        os_ << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << r << "\" fill=\"" << fill
            << "\" fill-opacity=\"0.55\"/>\n";
    }

    void line(double x1, double y1, double x2, double y2, const std::string& stroke) {
        os_ << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
            << "\" stroke=\"" << stroke << "\" stroke-width=\"1\"/>\n";
    }

    void rect(double x, double y, double w, double h, const std::string& fill) {
        os_ << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\"" << h
            << "\" fill=\"" << fill << "\"/>\n";
    }

    void text(double x, double y, const std::string& s) {
        os_ << "<text x=\"" << x << "\" y=\"" << y << "\" font-family=\"sans-serif\" font-size=\"12\">"
            << s << "</text>\n";
    }

    void save(const std::filesystem::path& path) {
        os_ << "</svg>\n";
        std::ofstream out(path);
        if (!out) throw IoError("cannot write " + path.string());
        out << os_.str();
    }

private:
    int w_, h_;
    std::ostringstream os_;
};

inline void histogram_svg(const std::vector<double>& xs, const std::vector<double>& ws, double lo,
                          double hi, int bins, const std::string& title,
                          const std::filesystem::path& path) {
    std::vector<double> mass(bins, 0.0);
    for (size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] < lo || xs[i] >= hi) continue;
        mass[static_cast<size_t>((xs[i] - lo) / (hi - lo) * bins)] += ws.empty() ? 1.0 : ws[i];
    }
    const double peak = *std::max_element(mass.begin(), mass.end());
    const int w = 640, h = 420, ml = 40, mb = 30, mt = 30;
    SvgCanvas svg(w, h);
    svg.text(ml, 18, title);
    svg.line(ml, h - mb, w - 10, h - mb, "black");
    svg.line(ml, h - mb, ml, mt, "black");
    const double bw = static_cast<double>(w - ml - 10) / bins;
    for (int b = 0; b < bins; ++b) {
        if (mass[b] <= 0.0 || peak <= 0.0) continue;
        const double bh = (h - mb - mt) * mass[b] / peak;
        svg.rect(ml + b * bw, h - mb - bh, std::max(bw - 0.5, 0.5), bh, "steelblue");
    }
    std::ostringstream lo_s, hi_s;
    lo_s.precision(3);
    hi_s.precision(3);
    lo_s << lo;
    hi_s << hi;
    svg.text(ml - 5, h - mb + 18, lo_s.str());
    svg.text(w - 40, h - mb + 18, hi_s.str());
    svg.save(path);
}

} // namespace detail

// Standalone SVG figures from trial records: eigenvalue scatter (rescaled by
// 1/sqrt(N), bulk circle overlaid), singular-value histogram, or the blip
// measure's weighted atom histogram.
inline void emit_plot(const RunConfig& config, const std::vector<TrialRecord>& records,
                      PlotKind kind, const std::filesystem::path& path) {
    if (records.empty()) throw IoError("emit_plot: no records");
    const int n = config.ensemble.n;
    const int k = config.ensemble.k;
    switch (kind) {
        case PlotKind::ScatterEig: {
            double radius = 1.0;
            if (config.ensemble.kind != EnsembleKind::GaussianComplexSymmetric &&
                config.ensemble.kind != EnsembleKind::GaussianComplexAsymmetric &&
                config.ensemble.kind != EnsembleKind::HollowGoe) {
                const auto m = regularity_of(pattern_of(config.ensemble));
                if (m && *m < k) radius = std::sqrt(1.0 - static_cast<double>(*m) / k);
            }
            const int w = 640;
            const double span = 1.8; // axes cover [-span, span]
            detail::SvgCanvas svg(w, w);
            auto px = [&](double v) { return (v / span + 1.0) * w / 2.0; };
            svg.line(px(-span), px(0.0), px(span), px(0.0), "#cccccc");
            svg.line(px(0.0), px(-span), px(0.0), px(span), "#cccccc");
            svg.circle(px(0.0), px(0.0), radius / span * w / 2.0, "crimson", "none");
            const double rt = std::sqrt(static_cast<double>(n));
            for (const auto& rec : records) {
                if (rec.eigenvalues.empty()) throw IoError("emit_plot: records lack eigenvalues");
                for (const auto& lam : rec.eigenvalues)
                    svg.dot(px(lam.real() / rt), px(-lam.imag() / rt), 1.4, "steelblue");
            }
            svg.text(10, 18, "eigenvalues / sqrt(N)");
            svg.save(path);
            break;
        }
        case PlotKind::HistSV: {
            std::vector<double> xs;
            const double rt = std::sqrt(static_cast<double>(n));
            for (const auto& rec : records) {
                if (rec.singular_values.empty()) throw IoError("emit_plot: records lack singular values");
                for (double s : rec.singular_values) xs.push_back(s / rt);
            }
            const double hi = *std::max_element(xs.begin(), xs.end()) * 1.02;
            detail::histogram_svg(xs, {}, 0.0, hi, 80, "singular values / sqrt(N)", path);
            break;
        }
        case PlotKind::HistBlip: {
            const BlipWeightParams bw(BlipWeightParams::default_exponent(n), k, n);
            std::vector<double> xs, ws;
            for (const auto& rec : records) {
                if (rec.singular_values.empty()) throw IoError("emit_plot: records lack singular values");
                const auto m = ebsssm(rec.sample(), bw);
                for (size_t i = 0; i < m.size(); ++i) {
                    xs.push_back(m.locations[i].real());
                    ws.push_back(m.weights[i]);
                }
            }
            detail::histogram_svg(xs, ws, -4.0, 4.0, 80, "blip measure atoms", path);
            break;
        }
    }
}

} // namespace spectra
