#include <complex>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spectra/moments.hpp"
#include "spectra/plot.hpp"
#include "spectra/run.hpp"

namespace {

int cmd_simulate(const std::string& config_path, const std::string& out_dir, int workers) {
    spectra::RunConfig config = spectra::load_config(config_path);
    spectra::apply_env_seed(config);
    bool cached = false;
    const auto records = spectra::run_simulation(config, out_dir, workers, &cached);
    std::cout << (cached ? "reused " : "wrote ") << records.size() << " trial records in "
              << out_dir << "\n";
    return 0;
}

int cmd_verify(const std::string& config_path, const std::string& records_dir,
               const std::string& out_csv) {
    spectra::RunConfig config = spectra::load_config(config_path);
    spectra::apply_env_seed(config);
    std::vector<spectra::TrialRecord> records;
    if (!config.checks.empty()) records = spectra::load_records(records_dir);
    const auto verdicts = spectra::run_verification(config, records);
    const std::string csv = spectra::verdict_csv(verdicts);
    if (out_csv.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(out_csv);
        if (!out) throw spectra::IoError("cannot write " + out_csv);
        out << csv;
    }
    for (const auto& v : verdicts)
        if (!v.pass) return 1;
    return 0;
}

int cmd_plot(const std::string& records_dir, const std::string& kind, const std::string& out_svg) {
    const auto records = spectra::load_records(records_dir);
    std::ifstream in(std::filesystem::path(records_dir) / "manifest.json");
    if (!in) throw spectra::IoError("no manifest.json under " + records_dir);
    nlohmann::json manifest;
    in >> manifest;
    const spectra::RunConfig config = spectra::config_from_json(manifest.at("config"));
    spectra::emit_plot(config, records, spectra::plot_kind_from_string(kind), out_svg);
    std::cout << "wrote " << out_svg << "\n";
    return 0;
}

int cmd_oracle(const std::string& table, int r, int k, int m) {
    using spectra::bigint;
    std::cout << "r,value,provenance\n";
    if (table == "catalan") {
        for (int i = 0; i <= r; ++i)
            std::cout << i << ',' << spectra::catalan(i) << ",catalan-number\n";
    } else if (table == "cjr") {
        for (int i = 1; i <= r; ++i) {
            const auto poly = spectra::cjr_coefficients(i);
            std::cout << i << ",\"";
            for (int j = 0; j <= poly.r; ++j) std::cout << (j ? " " : "") << poly.c[j];
            std::cout << "\",hermitized-moment-coefficients\n";
        }
    } else if (table == "hollow-goe") {
        for (int i = 0; i <= r; ++i)
            std::cout << i << ',' << spectra::hollow_goe_trace_moment(k, i)
                      << ",hollow-goe-trace-moment(k=" << k << ")\n";
    } else if (table == "identity") {
        for (int p = 0; p <= m; ++p)
            std::cout << p << ',' << spectra::alternating_identity(m, p)
                      << ",alternating-binomial-sum(m=" << m << ")\n";
    } else if (table == "targets") {
        for (int i = 1; i <= r; ++i)
            std::cout << i << ',' << spectra::quarter_circle_target(i, k, m)
                      << ",quarter-circle-bulk(k=" << k << " m=" << m << ")\n";
        for (int i = 1; i <= std::min(r, 4); ++i)
            std::cout << i << ',' << spectra::blip_centered_target(k, i)
                      << ",blip-centered(k=" << k << ")\n";
        const auto nr = spectra::nonregular_bulk_targets();
        for (size_t i = 0; i < nr.size(); ++i)
            std::cout << (i + 1) << ',' << nr[i] << ",nonregular-2x2-bulk\n";
    } else {
        std::cerr << "unknown oracle table: " << table << "\n";
        return 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"structured non-Hermitian random matrix simulator"};
    app.require_subcommand(1);

    std::string config_path, out_dir, records_dir, out_csv, out_svg, kind, table;
    int workers = 0, r = 8, k = 2, m = 1;

    auto* sim = app.add_subcommand("simulate", "draw matrices and record spectra");
    sim->add_option("--config", config_path, "run configuration JSON")->required();
    sim->add_option("--out", out_dir, "output directory")->required();
    sim->add_option("--workers", workers, "worker threads (default: cores)");

    auto* ver = app.add_subcommand("verify", "run the configured checks against records");
    ver->add_option("--config", config_path, "run configuration JSON")->required();
    ver->add_option("--records", records_dir, "directory with records.jsonl")->required();
    ver->add_option("--out", out_csv, "write the verdict CSV here instead of stdout");

    auto* plt = app.add_subcommand("plot", "render an SVG figure from records");
    plt->add_option("--records", records_dir, "directory with records.jsonl")->required();
    plt->add_option("--kind", kind, "scatter-eig | hist-sv | hist-blip")->required();
    plt->add_option("--out", out_svg, "output SVG path")->required();

    auto* orc = app.add_subcommand("oracle", "print exact oracle tables as CSV");
    orc->add_option("table", table, "catalan | cjr | hollow-goe | identity | targets")->required();
    orc->add_option("--r", r, "max order");
    orc->add_option("--k", k, "block size");
    orc->add_option("--m", m, "regularity / identity row");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(config_path, out_dir, workers);
        if (ver->parsed()) return cmd_verify(config_path, records_dir, out_csv);
        if (plt->parsed()) return cmd_plot(records_dir, kind, out_svg);
        if (orc->parsed()) return cmd_oracle(table, r, k, m);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
