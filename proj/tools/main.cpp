// mildtf command-line front end: verification suites, the four-panel
// periodization/sampling spectrogram demo, and file exports.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "mildtf/demo.hpp"
#include "mildtf/errors.hpp"
#include "mildtf/gabor.hpp"
#include "mildtf/gsp.hpp"
#include "mildtf/io.hpp"
#include "mildtf/mild.hpp"
#include "mildtf/transforms.hpp"
#include "mildtf/verify.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfigError = 2;

void emit(const json& report, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << report.dump(2) << '\n';
        return;
    }
    std::ofstream f(out);
    if (!f) {
        throw std::runtime_error("cannot open --out path: " + out);
    }
    f << report.dump(2) << '\n';
}

mildtf::FiniteSignal load_window(const std::string& spec, const mildtf::GridModel& grid) {
    if (spec == "gaussian") {
        return mildtf::gaussian(grid);
    }
    mildtf::FiniteSignal w = mildtf::io::read_signal_csv(spec);
    if (!(w.grid == grid)) {
        throw std::invalid_argument("window file grid does not match the signal grid");
    }
    return w;
}

int cmd_verify(const std::string& suite, std::optional<std::int64_t> L,
               std::uint64_t seed, const std::string& out) {
    mildtf::VerifyConfig cfg;
    cfg.seed = seed;
    if (L) {
        cfg.L_values = {*L};
    }
    std::vector<mildtf::CheckResult> results;
    try {
        results = mildtf::run_checks(suite, cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\nknown suites: all";
        for (const auto& s : mildtf::suite_names()) std::cerr << ' ' << s;
        std::cerr << '\n';
        return kExitConfigError;
    }
    json checks = json::array();
    int failures = 0;
    for (const auto& r : results) {
        json c{{"suite", r.suite},       {"name", r.name}, {"deviation", r.deviation},
               {"tolerance", r.tolerance}, {"pass", r.pass}, {"seconds", r.seconds}};
        if (!r.detail.empty()) c["detail"] = r.detail;
        checks.push_back(std::move(c));
        if (!r.pass) ++failures;
    }
    emit(json{{"suite", suite}, {"checks", checks}, {"failures", failures}}, out);
    return failures == 0 ? kExitOk : kExitCheckFailed;
}

int cmd_figure1(mildtf::DemoConfig cfg) {
    const mildtf::Figure1Result res = mildtf::figure1_panels(cfg);
    fs::create_directories(cfg.out_dir);
    json files = json::array();
    for (std::size_t i = 0; i < res.panels.size(); ++i) {
        const std::string stem = "figure1_" + res.panel_names[i];
        fs::path path = cfg.out_dir / stem;
        if (cfg.format == mildtf::DemoConfig::Format::pgm) {
            path.replace_extension(".pgm");
            mildtf::io::write_stft_pgm(path, res.panels[i]);
        } else {
            path.replace_extension(".csv");
            mildtf::io::write_stft_csv(path, res.panels[i]);
        }
        files.push_back(path.string());
    }
    json meta{{"L", cfg.L},
              {"periodize_stride", cfg.periodize_stride > 0 ? cfg.periodize_stride
                                                            : mildtf::make_grid(cfg.L).N / 4},
              {"sample_stride", cfg.sample_stride > 0 ? cfg.sample_stride : 4},
              {"signal", "gaussian tf-shifted to (beta/8, beta/8)"},
              {"signal_shift", {{"t_idx", res.signal_shift.t_idx},
                                {"s_idx", res.signal_shift.s_idx}}},
              {"sampling_normalization", "riemann (point masses carry the physical step)"},
              {"central_radius", res.central_radius},
              {"central_agreement", res.central_agreement},
              {"periodized_replica_peak", res.periodized_replica_peak},
              {"sampled_replica_peak", res.sampled_replica_peak},
              {"predicted_time_offset", res.predicted_time_offset},
              {"predicted_freq_offset", res.predicted_freq_offset},
              {"files", files}};
    std::ofstream mf(cfg.out_dir / "figure1_meta.json");
    mf << meta.dump(2) << '\n';
    std::cout << meta.dump(2) << '\n';
    return kExitOk;
}

int cmd_stft(const std::string& input, const std::string& window,
             const std::string& out, const std::string& format) {
    const mildtf::FiniteSignal f = mildtf::io::read_signal_csv(input);
    const mildtf::FiniteSignal w = load_window(window, f.grid);
    const mildtf::STFTMap map = mildtf::stft(f, w);
    if (format == "pgm") {
        mildtf::io::write_stft_pgm(out, map);
    } else {
        mildtf::io::write_stft_csv(out, map);
    }
    return kExitOk;
}

int cmd_gabor_dual(std::int64_t L, const std::string& window, std::int64_t a,
                   std::int64_t b, const std::string& out,
                   const std::string& report_out) {
    const mildtf::GridModel grid = mildtf::make_grid(L);
    if (a <= 0 || b <= 0) {
        if (L % 2 != 0) {
            throw std::invalid_argument(
                "default strides need even L; pass --time-stride/--freq-stride");
        }
        a = L / 2;
        b = L;
    }
    mildtf::GaborSystem sys = mildtf::make_gabor_system(load_window(window, grid), a, b);
    json report{{"L", L}, {"a", a}, {"b", b}, {"redundancy", sys.redundancy()}};
    try {
        const mildtf::FiniteSignal dual = mildtf::dual_window(sys);
        const double residual =
            mildtf::norm_l2(mildtf::frame_operator(sys, dual) - sys.window) /
            mildtf::norm_l2(sys.window);
        report["residual"] = residual;
        report["is_frame"] = true;
        if (!out.empty()) {
            mildtf::io::write_signal_csv(out, dual);
            report["dual_window_file"] = out;
        }
    } catch (const mildtf::NotAFrameError& e) {
        report["is_frame"] = false;
        report["residual"] = e.residual;
        report["iterations"] = e.iterations;
        emit(report, report_out);
        return kExitCheckFailed;
    }
    emit(report, report_out);
    return kExitOk;
}

int cmd_poisson(std::int64_t L, const std::string& input, const std::string& out) {
    mildtf::FiniteSignal f = input.empty()
                                 ? mildtf::gaussian(mildtf::make_grid(L))
                                 : mildtf::io::read_signal_csv(input);
    const mildtf::PoissonCheck pc = mildtf::poisson_check(f);
    json report = mildtf::io::to_json(pc);
    report["L"] = f.grid.L;
    report["signal"] = input.empty() ? "gaussian" : input;
    emit(report, out);
    return kExitOk;
}

int cmd_gsp_demo(std::int64_t L, std::int64_t M, std::uint64_t seed,
                 const std::string& out_dir, const std::string& out) {
    const mildtf::GridModel grid = mildtf::make_grid(L);
    const auto spec = mildtf::CovarianceSpec::white(grid, 1.0);
    const mildtf::GspEnsemble e = mildtf::simulate(spec, M, seed);

    const double identity_dev = mildtf::spectral_autocorr_identity(e);
    const mildtf::WssDeviation wss = mildtf::wss_deviation(mildtf::autocorrelation(e));

    mildtf::FiniteSignal symbol = mildtf::zeros(grid);
    for (std::int64_t n = 0; n < grid.N; ++n) {
        const double s = grid.coord(n);
        symbol[n] = mildtf::cplx(1.0 + std::exp(-s * s), 0.0);
    }
    const auto stationary = mildtf::CovarianceSpec::stationary(symbol);
    const mildtf::WssDeviation exact =
        mildtf::wss_deviation(mildtf::exact_covariance(stationary));

    json report{{"L", L},
                {"M", M},
                {"seed", seed},
                {"generator", e.generator},
                {"spectral_identity_deviation", identity_dev},
                {"white_monte_carlo", mildtf::io::to_json(wss)},
                {"stationary_exact", mildtf::io::to_json(exact)}};
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        const fs::path epath = fs::path(out_dir) / "ensemble.bin";
        mildtf::io::write_ensemble(epath, e);
        const fs::path apath = fs::path(out_dir) / "autocorrelation.csv";
        mildtf::io::write_autocorr_csv(apath, mildtf::autocorrelation(e));
        report["ensemble_file"] = epath.string();
        report["autocorrelation_file"] = apath.string();
    }
    emit(report, out);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-model time-frequency calculus: verification and demos"};
    app.require_subcommand(1);

    // verify
    std::string v_suite = "all";
    std::optional<std::int64_t> v_L;
    std::uint64_t v_seed = 20260809;
    std::string v_out;
    auto* verify = app.add_subcommand("verify", "run the invariant check suites");
    verify->add_option("--suite", v_suite, "suite name or 'all'");
    verify->add_option("--L", v_L, "grid parameter for the L-parametric suites");
    verify->add_option("--seed", v_seed, "seed for randomized checks");
    verify->add_option("--out", v_out, "write the JSON report here instead of stdout");

    // figure1
    mildtf::DemoConfig f_cfg;
    std::string f_format = "pgm";
    std::string f_window = "gaussian";
    std::string f_out = "figure1_out";
    auto* figure1 = app.add_subcommand("figure1", "four-panel periodization/sampling demo");
    figure1->add_option("--L", f_cfg.L, "grid parameter (N = L^2)");
    figure1->add_option("--window", f_window, "'gaussian' or a signal CSV path");
    figure1->add_option("--periodize-stride", f_cfg.periodize_stride, "default N/4");
    figure1->add_option("--sample-stride", f_cfg.sample_stride, "default 4");
    figure1->add_option("--out", f_out, "output directory");
    figure1->add_option("--format", f_format, "pgm or csv")
        ->check(CLI::IsMember({"pgm", "csv"}));

    // stft
    std::string s_input, s_window = "gaussian", s_out = "stft.pgm", s_format = "pgm";
    auto* stft_cmd = app.add_subcommand("stft", "export the STFT of a signal CSV");
    stft_cmd->add_option("input", s_input, "signal CSV (with JSON sidecar)")->required();
    stft_cmd->add_option("--window", s_window, "'gaussian' or a signal CSV path");
    stft_cmd->add_option("--out", s_out, "output file");
    stft_cmd->add_option("--format", s_format, "pgm or csv")
        ->check(CLI::IsMember({"pgm", "csv"}));

    // gabor-dual
    std::int64_t g_L = 16, g_a = 0, g_b = 0;
    std::string g_window = "gaussian", g_out, g_report;
    auto* gabor = app.add_subcommand("gabor-dual", "compute a canonical dual window");
    gabor->add_option("--L", g_L, "grid parameter");
    gabor->add_option("--window", g_window, "'gaussian' or a signal CSV path");
    gabor->add_option("--time-stride", g_a, "lattice time stride a (default L/2)");
    gabor->add_option("--freq-stride", g_b, "lattice frequency stride b (default L)");
    gabor->add_option("--out", g_out, "write the dual window CSV here");
    gabor->add_option("--report", g_report, "write the JSON report here");

    // poisson
    std::int64_t p_L = 16;
    std::string p_input, p_out;
    auto* poisson = app.add_subcommand("poisson", "Poisson summation check");
    poisson->add_option("--L", p_L, "grid parameter (gaussian signal)");
    poisson->add_option("input", p_input, "optional signal CSV");
    poisson->add_option("--out", p_out, "write the JSON record here");

    // gsp-demo
    std::int64_t d_L = 8, d_M = 256;
    std::uint64_t d_seed = 20260809;
    std::string d_dir, d_out;
    auto* gsp = app.add_subcommand("gsp-demo", "stochastic process diagnostics");
    gsp->add_option("--L", d_L, "grid parameter");
    gsp->add_option("--M", d_M, "number of realizations");
    gsp->add_option("--seed", d_seed, "rng seed");
    gsp->add_option("--export-dir", d_dir, "also export ensemble + autocorrelation");
    gsp->add_option("--out", d_out, "write the JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (verify->parsed()) return cmd_verify(v_suite, v_L, v_seed, v_out);
        if (figure1->parsed()) {
            f_cfg.window = f_window;
            f_cfg.out_dir = f_out;
            f_cfg.format = f_format == "pgm" ? mildtf::DemoConfig::Format::pgm
                                             : mildtf::DemoConfig::Format::csv;
            return cmd_figure1(f_cfg);
        }
        if (stft_cmd->parsed()) return cmd_stft(s_input, s_window, s_out, s_format);
        if (gabor->parsed()) return cmd_gabor_dual(g_L, g_window, g_a, g_b, g_out, g_report);
        if (poisson->parsed()) return cmd_poisson(p_L, p_input, p_out);
        if (gsp->parsed()) return cmd_gsp_demo(d_L, d_M, d_seed, d_dir, d_out);
    } catch (const mildtf::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    }
    return kExitConfigError;
}
