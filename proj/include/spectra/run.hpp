#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "spectra/eig.hpp"
#include "spectra/ensembles.hpp"
#include "spectra/errors.hpp"
#include "spectra/measures.hpp"
#include "spectra/moments.hpp"
#include "spectra/seed_stream.hpp"
#include "spectra/stats.hpp"

namespace spectra {

enum class Observables { SingularValues, Eigenvalues, Both };

inline std::string to_string(Observables o) {
    switch (o) {
        case Observables::SingularValues: return "singular-values";
        case Observables::Eigenvalues: return "eigenvalues";
        case Observables::Both: return "both";
    }
    return "both";
}

inline Observables observables_from_string(const std::string& s) {
    if (s == "singular-values") return Observables::SingularValues;
    if (s == "eigenvalues") return Observables::Eigenvalues;
    if (s == "both") return Observables::Both;
    throw BadSpec("unknown observables: " + s);
}

struct CheckSpec {
    std::string name;
    nlohmann::json params;
};

struct RunConfig {
    EnsembleSpec ensemble;
    int trials = 1;
    std::uint64_t seed = 0;
    Observables observables = Observables::Both;
    std::filesystem::path out_dir;
    std::vector<CheckSpec> checks;
};

struct TrialRecord {
    std::uint64_t trial = 0;
    std::uint64_t master_seed = 0;
    std::vector<cd> eigenvalues;
    std::vector<double> singular_values;
    double wall_ms = 0.0;

    // canonical serialization; wall time is the only nondeterministic field
    nlohmann::json to_json(bool with_wall_time = true) const {
        nlohmann::json j;
        j["trial"] = trial;
        j["master_seed"] = master_seed;
        nlohmann::json eig = nlohmann::json::array();
        for (const auto& v : eigenvalues) eig.push_back({v.real(), v.imag()});
        j["eigenvalues"] = eig;
        j["singular_values"] = singular_values;
        if (with_wall_time) j["wall_ms"] = wall_ms;
        return j;
    }

    static TrialRecord from_json(const nlohmann::json& j) {
        TrialRecord r;
        r.trial = j.at("trial").get<std::uint64_t>();
        r.master_seed = j.at("master_seed").get<std::uint64_t>();
        for (const auto& v : j.at("eigenvalues")) r.eigenvalues.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
        r.singular_values = j.at("singular_values").get<std::vector<double>>();
        r.wall_ms = j.value("wall_ms", 0.0);
        return r;
    }

    SpectralSample sample() const {
        SpectralSample s;
        s.seed = master_seed;
        s.trial = trial;
        s.eigenvalues = eigenvalues;
        s.singular_values = singular_values;
        return s;
    }
};

inline nlohmann::json to_json(const RunConfig& c) {
    nlohmann::json j;
    j["ensemble"] = to_json(c.ensemble);
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["observables"] = to_string(c.observables);
    if (!c.out_dir.empty()) j["out"] = c.out_dir.string();
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& ch : c.checks) {
        nlohmann::json cj = ch.params;
        cj["name"] = ch.name;
        checks.push_back(cj);
    }
    j["checks"] = checks;
    return j;
}

inline RunConfig config_from_json(const nlohmann::json& j) {
    RunConfig c;
    c.ensemble = ensemble_from_json(j.at("ensemble"));
    c.trials = j.value("trials", 1);
    if (c.trials < 1) throw BadSpec("trials must be >= 1");
    c.seed = j.value("seed", std::uint64_t{0});
    c.observables = observables_from_string(j.value("observables", std::string("both")));
    if (j.contains("out")) c.out_dir = j["out"].get<std::string>();
    for (const auto& cj : j.value("checks", nlohmann::json::array())) {
        CheckSpec ch;
        ch.name = cj.at("name").get<std::string>();
        ch.params = cj;
        ch.params.erase("name");
        c.checks.push_back(std::move(ch));
    }
    return c;
}

inline RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config: " + path.string());
    nlohmann::json j;
    in >> j;
    return config_from_json(j);
}

// SPECTRA_SEED in the environment overrides the config seed.
inline void apply_env_seed(RunConfig& config) {
    if (const char* env = std::getenv("SPECTRA_SEED")) {
        config.seed = std::strtoull(env, nullptr, 10);
    }
}

namespace detail {

inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace detail

// Key identifying the trial-record content: ensemble + seed + trials + observables.
inline std::string records_content_key(const RunConfig& c) {
    nlohmann::json j;
    j["ensemble"] = to_json(c.ensemble);
    j["seed"] = c.seed;
    j["trials"] = c.trials;
    j["observables"] = to_string(c.observables);
    std::ostringstream os;
    os << std::hex << detail::fnv1a64(j.dump());
    return os.str();
}

inline TrialRecord run_trial(const EnsembleSpec& ensemble, std::uint64_t seed, std::uint64_t trial,
                             Observables obs) {
    const auto t0 = std::chrono::steady_clock::now();
    SeedStream stream(seed, trial);
    const ComplexMatrix a = build_matrix(ensemble, stream);
    TrialRecord rec;
    rec.trial = trial;
    rec.master_seed = seed;
    if (obs == Observables::SingularValues || obs == Observables::Both)
        rec.singular_values = singular_values(a).values;
    if (obs == Observables::Eigenvalues || obs == Observables::Both)
        rec.eigenvalues = complex_eigenvalues(a).values;
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

// Execute all trials (parallel across workers, deterministic output: each
// trial's stream is keyed by its index, records are ordered by index).
inline std::vector<TrialRecord> run_trials(const RunConfig& config, int workers = 0) {
    config.ensemble.validate();
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
    workers = std::min(workers, config.trials);
    std::vector<TrialRecord> records(config.trials);
    std::atomic<int> next{0};
    std::vector<std::string> failures(workers);
    auto body = [&](int w) {
        try {
            for (;;) {
                const int t = next.fetch_add(1);
                if (t >= config.trials) return;
                records[t] = run_trial(config.ensemble, config.seed, t, config.observables);
            }
        } catch (const std::exception& e) {
            failures[w] = std::string("trial worker: ") + e.what();
        }
    };
    if (workers == 1) {
        body(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(body, w);
        for (auto& th : pool) th.join();
    }
    for (const auto& f : failures)
        if (!f.empty()) throw NumericalFailure(f);
    return records;
}

inline void write_records(const std::vector<TrialRecord>& records,
                          const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / "records.jsonl");
    if (!out) throw IoError("cannot write records to " + dir.string());
    for (const auto& r : records) out << r.to_json().dump() << '\n';
}

inline std::vector<TrialRecord> load_records(const std::filesystem::path& dir) {
    std::ifstream in(dir / "records.jsonl");
    if (!in) throw MissingRecords("no records.jsonl under " + dir.string());
    std::vector<TrialRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        records.push_back(TrialRecord::from_json(nlohmann::json::parse(line)));
    }
    if (records.empty()) throw MissingRecords("records.jsonl is empty under " + dir.string());
    return records;
}

// Simulate into config.out_dir (or `out_dir` if nonempty). Records are
// content-addressed by ensemble+seed+trials+observables; a matching manifest
// short-circuits the run so re-verification with different tolerances reuses
// the cached records.
inline std::vector<TrialRecord> run_simulation(const RunConfig& config,
                                               const std::filesystem::path& out_dir = {},
                                               int workers = 0, bool* cached = nullptr) {
    const std::filesystem::path dir = out_dir.empty() ? config.out_dir : out_dir;
    if (dir.empty()) throw IoError("run_simulation: no output directory");
    const std::string key = records_content_key(config);
    const auto manifest_path = dir / "manifest.json";
    if (std::filesystem::exists(manifest_path) && std::filesystem::exists(dir / "records.jsonl")) {
        std::ifstream in(manifest_path);
        nlohmann::json m;
        in >> m;
        if (m.value("content_key", std::string()) == key) {
            if (cached) *cached = true;
            return load_records(dir);
        }
    }
    if (cached) *cached = false;
    auto records = run_trials(config, workers);
    write_records(records, dir);
    nlohmann::json manifest;
    manifest["config"] = to_json(config);
    manifest["content_key"] = key;
    manifest["config_hash"] = [&] {
        std::ostringstream os;
        os << std::hex << detail::fnv1a64(to_json(config).dump());
        return os.str();
    }();
    std::ofstream mo(manifest_path);
    if (!mo) throw IoError("cannot write manifest to " + dir.string());
    mo << manifest.dump(2) << '\n';
    return records;
}

// ---- verification checks ----

struct Verdict {
    std::string check;
    double statistic = 0.0;
    double target = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

inline std::string verdict_csv(const std::vector<Verdict>& verdicts) {
    std::ostringstream os;
    os << "check,statistic,target,tolerance,pass\n";
    os.precision(10);
    for (const auto& v : verdicts)
        os << v.check << ',' << v.statistic << ',' << v.target << ',' << v.tolerance << ','
           << (v.pass ? "pass" : "fail") << '\n';
    return os.str();
}

namespace checks {

// Trimmed, renormalized moments of the squared-singular bulk measure against
// quarter-circle (or explicitly given) targets. Atoms with sigma^2/N beyond
// the trim cut are the blip; they are excised before moments are taken.
inline std::vector<Verdict> bulk_sv_moments(const RunConfig& config,
                                            const std::vector<TrialRecord>& records,
                                            const nlohmann::json& params) {
    const int n = config.ensemble.n;
    const double tol = params.value("tolerance", 0.05);
    const double trim = params.value("trim", 4.0);
    std::vector<int> orders = params.value("orders", std::vector<int>{1, 2, 3});
    std::vector<double> targets;
    if (params.contains("targets")) {
        targets = params["targets"].get<std::vector<double>>();
    } else {
        const auto m = regularity_of(pattern_of(config.ensemble));
        if (!m || *m < 1 || *m >= config.ensemble.k)
            throw BadParams("bulk-sv-moments: pattern not m-regular, give explicit targets");
        for (int r : orders) targets.push_back(quarter_circle_target(r, config.ensemble.k, *m));
    }
    WeightedPointMeasure pooled;
    pooled.domain = Domain::RealLine;
    for (const auto& rec : records) {
        if (rec.singular_values.empty()) throw MissingRecords("bulk-sv-moments: no singular values");
        const auto m = bulk_sq_singular_measure(rec.sample(), n);
        for (size_t i = 0; i < m.size(); ++i)
            if (m.locations[i].real() <= trim) pooled.push(m.locations[i], m.weights[i]);
    }
    std::vector<Verdict> out;
    for (size_t i = 0; i < orders.size(); ++i) {
        const double est = empirical_moment(pooled, orders[i], false, true).real();
        const auto rep = MomentReport::make(orders[i], est, targets[i], tol);
        out.push_back({"bulk-sv-moments.r" + std::to_string(orders[i]), est, rep.target, tol, rep.pass});
    }
    return out;
}

// Blip measure moments (first raw, centered second and third) plus the
// coarse location window for the k largest squared singular values.
inline std::vector<Verdict> blip_sv_moments(const RunConfig& config,
                                            const std::vector<TrialRecord>& records,
                                            const nlohmann::json& params) {
    const int n = config.ensemble.n;
    const int k = config.ensemble.k;
    const double tol1 = params.value("tolerance_first", 0.10);
    const double tol2 = params.value("tolerance_second", 0.10);
    const double tol3 = params.value("tolerance_third_abs", 0.10);
    const double window_mult = params.value("window_mult", 8.0);
    const int wexp = params.value("weight_exponent", BlipWeightParams::default_exponent(n));
    const BlipWeightParams bw(wexp, k, n);

    WeightedPointMeasure pooled;
    pooled.domain = Domain::RealLine;
    const double per_trial = 1.0 / static_cast<double>(records.size());
    int window_ok = 0;
    const double center = static_cast<double>(n) * n / (static_cast<double>(k) * k);
    const double window = window_mult * std::pow(static_cast<double>(n), 1.5);
    for (const auto& rec : records) {
        if (rec.singular_values.empty()) throw MissingRecords("blip-sv-moments: no singular values");
        const auto m = ebsssm(rec.sample(), bw);
        for (size_t i = 0; i < m.size(); ++i) pooled.push(m.locations[i], m.weights[i] * per_trial);
        bool ok = true;
        for (int i = 0; i < k; ++i) {
            const double sv = rec.singular_values[rec.singular_values.size() - 1 - i];
            if (std::abs(sv * sv - center) > window) ok = false;
        }
        window_ok += ok;
    }
    const double m1 = empirical_moment(pooled, 1, false).real();
    const double mc2 = empirical_moment(pooled, 2, true).real();
    const double mc3 = empirical_moment(pooled, 3, true).real();
    std::vector<Verdict> out;
    const auto r1 = MomentReport::make(1, m1, blip_first_moment_target(k), tol1);
    out.push_back({"blip-sv-moments.m1", m1, r1.target, tol1, r1.pass});
    const auto r2 = MomentReport::make(2, mc2, blip_centered_target(k, 2), tol2);
    out.push_back({"blip-sv-moments.mc2", mc2, r2.target, tol2, r2.pass});
    const auto r3 = MomentReport::make(3, mc3, blip_centered_target(k, 3), tol3, true);
    out.push_back({"blip-sv-moments.mc3", mc3, r3.target, tol3, r3.pass});
    out.push_back({"blip-sv-moments.window", static_cast<double>(window_ok),
                   static_cast<double>(records.size()), 0.0,
                   window_ok == static_cast<int>(records.size())});
    return out;
}

// Circular-law bulk: drop the k' largest-modulus eigenvalues per trial,
// rescale by 1/sqrt(N), then test the radial CDF r^2/R^2 and the angular
// uniform law, pooled across trials.
inline std::vector<Verdict> eig_bulk_circular(const RunConfig& config,
                                              const std::vector<TrialRecord>& records,
                                              const nlohmann::json& params) {
    const int n = config.ensemble.n;
    const double ks_tol = params.value("ks_tolerance", 0.05);
    const double outside_tol = params.value("outside_tolerance", 0.01);
    const double margin = params.value("radius_margin", 0.1);
    const auto mreg = regularity_of(pattern_of(config.ensemble));
    const double r2 = params.contains("radius")
                          ? params["radius"].get<double>() * params["radius"].get<double>()
                          : 1.0 - static_cast<double>(mreg.value_or(1)) / config.ensemble.k;
    const double radius = std::sqrt(r2);
    int kprime = params.value("kprime", -1);
    if (kprime < 0) {
        const auto b = pattern_of(config.ensemble).numeric();
        kprime = 0;
        for (const auto& lam : complex_eigenvalues(b).values)
            if (std::abs(lam) > 1e-9) ++kprime;
    }
    std::vector<double> radial, angular;
    int outside = 0;
    long total = 0;
    for (const auto& rec : records) {
        if (rec.eigenvalues.empty()) throw MissingRecords("eig-bulk-circular: no eigenvalues");
        auto lams = rec.eigenvalues;
        std::sort(lams.begin(), lams.end(),
                  [](cd a, cd b) { return std::abs(a) > std::abs(b); });
        for (size_t i = kprime; i < lams.size(); ++i) {
            const cd z = lams[i] / std::sqrt(static_cast<double>(n));
            radial.push_back(std::abs(z));
            angular.push_back(std::arg(z)); // [-pi, pi]
            outside += std::abs(z) > radius + margin;
            ++total;
        }
    }
    const double ks_rad = ks_distance(radial, CdfTarget::circular_radial(radius));
    const double ks_ang = ks_distance(angular, [](double x) { return (x + M_PI) / (2.0 * M_PI); });
    const double frac_out = static_cast<double>(outside) / static_cast<double>(total);
    return {
        {"eig-bulk-circular.ks-radial", ks_rad, 0.0, ks_tol, ks_rad <= ks_tol},
        {"eig-bulk-circular.ks-angular", ks_ang, 0.0, ks_tol, ks_ang <= ks_tol},
        {"eig-bulk-circular.outside", frac_out, 0.0, outside_tol, frac_out <= outside_tol},
    };
}

// Eigenvalue blip: per trial, match the renormalized measure outside the
// eps-ball against the nonzero spectrum of the pattern matrix and count the
// bulk atoms inside the N^{-1/2+delta} ball.
inline std::vector<Verdict> blip_eig(const RunConfig& config,
                                     const std::vector<TrialRecord>& records,
                                     const nlohmann::json& params) {
    const int n = config.ensemble.n;
    const int k = config.ensemble.k;
    const double eps = params.value("epsilon", 0.5);
    const double max_dist = params.value("max_distance", 0.1);
    const double delta = params.value("delta", 0.1);
    const int min_pass = params.value("min_pass", static_cast<int>(records.size()) * 9 / 10);

    const auto b = pattern_of(config.ensemble).numeric();
    std::vector<cd> targets;
    for (const auto& lam : complex_eigenvalues(b).values)
        if (std::abs(lam) > 1e-9) targets.push_back(lam);
    const int kprime = static_cast<int>(targets.size());
    const std::vector<std::string> clauses =
        params.value("clauses", std::vector<std::string>{"distance", "deficit", "bulkcount"});
    const auto wants = [&](const char* c) {
        return std::find(clauses.begin(), clauses.end(), c) != clauses.end();
    };

    int dist_ok = 0, deficit_ok = 0, bulk_ok = 0, good = 0;
    for (const auto& rec : records) {
        if (rec.eigenvalues.empty()) throw MissingRecords("blip-eig: no eigenvalues");
        const auto mu = renormalized_spectral_measure(rec.sample(), k, n);
        const auto res = blip_match(mu, targets, eps, n, delta);
        const bool d_ok = res.max_distance <= max_dist;
        const bool c_ok = res.count_deficit == 0;
        const bool b_ok = res.bulk_count == static_cast<size_t>(n - kprime);
        dist_ok += d_ok;
        deficit_ok += c_ok;
        bulk_ok += b_ok;
        good += (d_ok || !wants("distance")) && (c_ok || !wants("deficit")) &&
                (b_ok || !wants("bulkcount"));
    }
    const double trials = static_cast<double>(records.size());
    std::vector<Verdict> out;
    if (wants("distance"))
        out.push_back({"blip-eig.distance-trials", static_cast<double>(dist_ok), trials,
                       static_cast<double>(min_pass), dist_ok >= min_pass});
    if (wants("deficit"))
        out.push_back({"blip-eig.deficit-trials", static_cast<double>(deficit_ok), trials,
                       static_cast<double>(min_pass), deficit_ok >= min_pass});
    if (wants("bulkcount"))
        out.push_back({"blip-eig.bulkcount-trials", static_cast<double>(bulk_ok), trials,
                       static_cast<double>(min_pass), bulk_ok >= min_pass});
    out.push_back({"blip-eig.good-trials", static_cast<double>(good), trials,
                   static_cast<double>(min_pass), good >= min_pass});
    return out;
}

// Hermitized shifted moments: rebuild each trial matrix, form
// B_z = (A/(R sqrt N) - z)^H (A/(R sqrt N) - z) and compare (1/N) Tr B_z^r
// against the exact limiting polynomials in |z|^2.
inline std::vector<Verdict> hermitized_moments(const RunConfig& config,
                                               const std::vector<TrialRecord>& records,
                                               const nlohmann::json& params) {
    const int n = config.ensemble.n;
    const double tol = params.value("tolerance", 0.07);
    std::vector<int> orders = params.value("orders", std::vector<int>{1, 2, 3});
    std::vector<cd> zs;
    for (const auto& z : params.value("zs", nlohmann::json::array({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}})))
        zs.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
    const auto mreg = regularity_of(pattern_of(config.ensemble));
    const double r2 = 1.0 - static_cast<double>(mreg.value_or(1)) / config.ensemble.k;

    const int rmax = *std::max_element(orders.begin(), orders.end());
    const int trials = static_cast<int>(records.size());
    std::vector<std::vector<double>> acc(zs.size(), std::vector<double>(rmax, 0.0));
    const double scale = 1.0 / std::sqrt(r2 * n);
    for (int t = 0; t < trials; ++t) {
        SeedStream stream(config.seed, t);
        ComplexMatrix a = build_matrix(config.ensemble, stream);
        for (int zi = 0; zi < static_cast<int>(zs.size()); ++zi) {
            ComplexMatrix g(n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) g(i, j) = scale * a(i, j) - (i == j ? zs[zi] : cd(0.0));
            const ComplexMatrix b = g.adjoint_times_self();
            ComplexMatrix p = b;
            for (int r = 1; r <= rmax; ++r) {
                acc[zi][r - 1] += p.trace().real() / n;
                if (r < rmax) p = p * b;
            }
        }
    }
    std::vector<Verdict> out;
    for (int zi = 0; zi < static_cast<int>(zs.size()); ++zi)
        for (int r : orders) {
            const double est = acc[zi][r - 1] / trials;
            const double target = hermitized_moment_eval(cjr_coefficients(r), zs[zi]);
            const bool pass = std::abs(est - target) <= tol * std::abs(target);
            std::ostringstream name;
            name << "hermitized-moments.z" << zi << ".r" << r;
            out.push_back({name.str(), est, target, tol, pass});
        }
    return out;
}

// Least singular value against the Rayleigh law via the uniform transform.
inline std::vector<Verdict> least_sv_rayleigh(const RunConfig& config,
                                              const std::vector<TrialRecord>& records,
                                              const nlohmann::json& params) {
    const double tol = params.value("tolerance", 0.05);
    std::vector<double> smin;
    for (const auto& rec : records) {
        if (rec.singular_values.empty()) throw MissingRecords("least-sv-rayleigh: no singular values");
        smin.push_back(rec.singular_values.front());
    }
    const auto u = rayleigh_transform(smin, config.ensemble.n);
    const double ks = ks_distance(u, CdfTarget::uniform01());
    return {{"least-sv-rayleigh.ks", ks, 0.0, tol, ks <= tol}};
}

// N=2 joint singular value density: symmetrized 2-d histogram against the
// cell-averaged closed-form density, relative L1 discrepancy.
inline std::vector<Verdict> joint_density(const RunConfig& config,
                                          const std::vector<TrialRecord>& records,
                                          const nlohmann::json& params) {
    if (config.ensemble.n != 2) throw BadParams("joint-density: needs a 2x2 ensemble");
    const double tol = params.value("tolerance", 0.10);
    const int grid = params.value("grid", 50);
    const double hi = params.value("range", 4.0);
    const int sub = params.value("subcells", 3);
    std::vector<double> h(static_cast<size_t>(grid) * grid, 0.0);
    double total = 0.0;
    for (const auto& rec : records) {
        if (rec.singular_values.size() != 2) throw MissingRecords("joint-density: need 2 singular values");
        const double s0 = rec.singular_values[0], s1 = rec.singular_values[1];
        const int i = std::min(grid - 1, static_cast<int>(s0 / hi * grid));
        const int j = std::min(grid - 1, static_cast<int>(s1 / hi * grid));
        h[static_cast<size_t>(i) * grid + j] += 0.5;
        h[static_cast<size_t>(j) * grid + i] += 0.5;
        total += 1.0;
    }
    for (double& v : h) v /= total;

    std::vector<double> d(static_cast<size_t>(grid) * grid, 0.0);
    double dsum = 0.0;
    const double cell = hi / grid;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            double v = 0.0;
            for (int a = 0; a < sub; ++a)
                for (int b = 0; b < sub; ++b) {
                    const double x[2] = {(i + (a + 0.5) / sub) * cell, (j + (b + 0.5) / sub) * cell};
                    v += joint_density_unnormalized(x);
                }
            d[static_cast<size_t>(i) * grid + j] = v;
            dsum += v;
        }
    for (double& v : d) v /= dsum;

    double l1 = 0.0;
    for (size_t i = 0; i < h.size(); ++i) l1 += std::abs(h[i] - d[i]);
    return {{"joint-density.l1", l1, 0.0, tol, l1 <= tol}};
}

} // namespace checks

// Run every named check in the config; exit-code policy (nonzero iff any
// fail) is the caller's.
inline std::vector<Verdict> run_verification(const RunConfig& config,
                                             const std::vector<TrialRecord>& records) {
    if (records.empty() && !config.checks.empty())
        throw MissingRecords("run_verification: no records");
    std::vector<Verdict> out;
    for (const auto& check : config.checks) {
        std::vector<Verdict> v;
        if (check.name == "bulk-sv-moments") v = checks::bulk_sv_moments(config, records, check.params);
        else if (check.name == "blip-sv-moments") v = checks::blip_sv_moments(config, records, check.params);
        else if (check.name == "eig-bulk-circular") v = checks::eig_bulk_circular(config, records, check.params);
        else if (check.name == "blip-eig") v = checks::blip_eig(config, records, check.params);
        else if (check.name == "hermitized-moments") v = checks::hermitized_moments(config, records, check.params);
        else if (check.name == "least-sv-rayleigh") v = checks::least_sv_rayleigh(config, records, check.params);
        else if (check.name == "joint-density") v = checks::joint_density(config, records, check.params);
        else throw BadSpec("unknown check: " + check.name);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

} // namespace spectra
