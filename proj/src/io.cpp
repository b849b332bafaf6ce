#include "mildtf/io.hpp"

#include <nlohmann/json.hpp>

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "mildtf/errors.hpp"

namespace mildtf::io {

namespace {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t fnv1a(const void* data, std::size_t n) {
    std::uint64_t h = 1469598103934665603ull;
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = {}) {
    std::ofstream out(path, mode);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path.string());
    }
    return out;
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path.string(), 0, "cannot open file");
    }
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) {
        throw ParseError(path.string(), 0, "invalid JSON");
    }
    return j;
}

GridModel grid_from_json(const json& j, const std::filesystem::path& origin) {
    if (!j.contains("L")) {
        throw ParseError(origin.string(), 0, "sidecar missing grid parameter L");
    }
    GridModel grid = make_grid(j.at("L").get<std::int64_t>());
    if (j.contains("N") && j.at("N").get<std::int64_t>() != grid.N) {
        throw ParseError(origin.string(), 0, "sidecar N inconsistent with L^2");
    }
    return grid;
}

}  // namespace

std::filesystem::path sidecar_path(const std::filesystem::path& data_path) {
    std::filesystem::path p = data_path;
    p.replace_extension(".json");
    return p;
}

json grid_json(const GridModel& grid) {
    return json{{"L", grid.L}, {"N", grid.N}, {"alpha", grid.alpha}, {"beta", grid.beta}};
}

void write_signal_csv(const std::filesystem::path& path, const FiniteSignal& f) {
    std::ofstream out = open_out(path);
    out << "index,re,im\n";
    for (std::int64_t n = 0; n < f.grid.N; ++n) {
        out << n << ',' << format_double(f[n].real()) << ','
            << format_double(f[n].imag()) << '\n';
    }
    std::ofstream side = open_out(sidecar_path(path));
    side << grid_json(f.grid).dump(2) << '\n';
}

FiniteSignal read_signal_csv(const std::filesystem::path& path) {
    const GridModel grid = grid_from_json(read_json_file(sidecar_path(path)), path);
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path.string(), 0, "cannot open file");
    }
    std::string line;
    std::int64_t lineno = 0;
    if (!std::getline(in, line)) {
        throw ParseError(path.string(), 1, "missing header");
    }
    ++lineno;
    if (line != "index,re,im" && line != "index,re,im\r") {
        throw ParseError(path.string(), lineno, "expected header 'index,re,im'");
    }
    FiniteSignal f = zeros(grid);
    std::int64_t expected = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::int64_t idx = 0;
        double re = 0.0, im = 0.0;
        if (std::sscanf(line.c_str(), "%" SCNd64 ",%lf,%lf", &idx, &re, &im) != 3) {
            throw ParseError(path.string(), lineno, "malformed row");
        }
        if (idx != expected) {
            throw ParseError(path.string(), lineno, "row index out of sequence");
        }
        if (idx >= grid.N) {
            throw ParseError(path.string(), lineno, "more rows than grid points");
        }
        f[idx] = cplx(re, im);
        ++expected;
    }
    if (expected != grid.N) {
        throw ParseError(path.string(), lineno, "fewer rows than grid points");
    }
    if (!all_finite(f)) {
        throw ParseError(path.string(), 0, "non-finite entries");
    }
    return f;
}

void write_stft_pgm(const std::filesystem::path& path, const STFTMap& map) {
    const std::int64_t N = map.grid.N;
    const double scale = map.magnitude_max();
    std::ofstream out = open_out(path, std::ios::binary);
    out << "P5\n" << N << ' ' << N << "\n65535\n";
    std::vector<unsigned char> row(static_cast<std::size_t>(2 * N));
    for (std::int64_t s = N - 1; s >= 0; --s) {
        for (std::int64_t t = 0; t < N; ++t) {
            const double v = scale > 0.0 ? std::abs(map.at(t, s)) / scale : 0.0;
            const auto pix = static_cast<std::uint16_t>(v * 65535.0 + 0.5);
            row[static_cast<std::size_t>(2 * t)] = static_cast<unsigned char>(pix >> 8);
            row[static_cast<std::size_t>(2 * t + 1)] = static_cast<unsigned char>(pix & 0xff);
        }
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row.size()));
    }
    std::ofstream side = open_out(sidecar_path(path));
    json meta{{"grid", grid_json(map.grid)},
              {"window_id", map.window_id},
              {"scale", scale},
              {"rows", "s_idx descending"},
              {"cols", "t_idx ascending"}};
    side << meta.dump(2) << '\n';
}

void write_stft_csv(const std::filesystem::path& path, const STFTMap& map) {
    std::ofstream out = open_out(path);
    out << "t_idx,s_idx,re,im\n";
    const std::int64_t N = map.grid.N;
    for (std::int64_t t = 0; t < N; ++t) {
        for (std::int64_t s = 0; s < N; ++s) {
            const cplx v = map.at(t, s);
            out << t << ',' << s << ',' << format_double(v.real()) << ','
                << format_double(v.imag()) << '\n';
        }
    }
}

void write_ensemble(const std::filesystem::path& path, const GspEnsemble& e) {
    json spec;
    if (const auto* white = std::get_if<WhiteCovariance>(&e.spec.kind)) {
        spec = json{{"kind", "white"}, {"variance", white->variance}};
    } else if (const auto* st = std::get_if<StationaryCovariance>(&e.spec.kind)) {
        std::vector<double> symbol(static_cast<std::size_t>(e.grid.N));
        for (std::int64_t n = 0; n < e.grid.N; ++n) {
            symbol[static_cast<std::size_t>(n)] = st->symbol[n].real();
        }
        spec = json{{"kind", "stationary"}, {"symbol", symbol}};
    } else {
        const auto& gen = std::get<GeneralCovariance>(e.spec.kind);
        char buf[24];
        std::snprintf(buf, sizeof(buf), "%016llx",
                      static_cast<unsigned long long>(fnv1a(
                          gen.matrix.data(),
                          static_cast<std::size_t>(gen.matrix.size()) * sizeof(cplx))));
        spec = json{{"kind", "general"}, {"matrix_fnv", buf}};
    }
    json header{{"format", "mildtf-ensemble-v1"},
                {"grid", grid_json(e.grid)},
                {"M", e.M},
                {"seed", e.seed},
                {"generator", e.generator},
                {"spec", spec},
                {"payload", "complex64 row-major"}};
    std::ofstream out = open_out(path, std::ios::binary);
    out << header.dump() << '\n';
    std::vector<float> payload(2 * e.rows.size());
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
        payload[2 * i] = static_cast<float>(e.rows[i].real());
        payload[2 * i + 1] = static_cast<float>(e.rows[i].imag());
    }
    out.write(reinterpret_cast<const char*>(payload.data()),
              static_cast<std::streamsize>(payload.size() * sizeof(float)));
}

GspEnsemble read_ensemble(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError(path.string(), 0, "cannot open file");
    }
    std::string header_line;
    if (!std::getline(in, header_line)) {
        throw ParseError(path.string(), 1, "missing header line");
    }
    json header = json::parse(header_line, nullptr, false);
    if (header.is_discarded() || header.value("format", "") != "mildtf-ensemble-v1") {
        throw ParseError(path.string(), 1, "not a mildtf ensemble file");
    }
    const GridModel grid = grid_from_json(header.at("grid"), path);
    const auto M = header.at("M").get<std::int64_t>();
    const json& spec_json = header.at("spec");
    const std::string kind = spec_json.at("kind").get<std::string>();
    CovarianceSpec spec = CovarianceSpec::white(grid, 1.0);
    if (kind == "white") {
        spec = CovarianceSpec::white(grid, spec_json.at("variance").get<double>());
    } else if (kind == "stationary") {
        FiniteSignal symbol = zeros(grid);
        const auto& arr = spec_json.at("symbol");
        if (static_cast<std::int64_t>(arr.size()) != grid.N) {
            throw ParseError(path.string(), 1, "symbol length mismatch");
        }
        for (std::int64_t n = 0; n < grid.N; ++n) {
            symbol[n] = cplx(arr[static_cast<std::size_t>(n)].get<double>(), 0.0);
        }
        spec = CovarianceSpec::stationary(std::move(symbol));
    } else {
        throw ParseError(path.string(), 1,
                         "general-covariance ensembles carry only a matrix hash and "
                         "cannot be reloaded");
    }
    GspEnsemble e{grid, M,
                  std::vector<cplx>(static_cast<std::size_t>(M) *
                                    static_cast<std::size_t>(grid.N)),
                  std::move(spec), header.value("seed", std::uint64_t{0}),
                  header.value("generator", std::string{})};
    std::vector<float> payload(2 * e.rows.size());
    in.read(reinterpret_cast<char*>(payload.data()),
            static_cast<std::streamsize>(payload.size() * sizeof(float)));
    if (static_cast<std::size_t>(in.gcount()) != payload.size() * sizeof(float)) {
        throw ParseError(path.string(), 2, "truncated payload");
    }
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
        e.rows[i] = cplx(payload[2 * i], payload[2 * i + 1]);
    }
    return e;
}

void write_autocorr_csv(const std::filesystem::path& path, const Autocorrelation& a) {
    std::ofstream out = open_out(path);
    const std::int64_t N = a.grid.N;
    for (std::int64_t i = 0; i < N; ++i) {
        for (std::int64_t j = 0; j < N; ++j) {
            if (j > 0) out << ',';
            out << format_double(a.matrix(i, j).real()) << ','
                << format_double(a.matrix(i, j).imag());
        }
        out << '\n';
    }
}

json to_json(const PoissonCheck& pc) {
    return json{{"time_sum", {{"re", pc.time_sum.real()}, {"im", pc.time_sum.imag()}}},
                {"freq_sum", {{"re", pc.freq_sum.real()}, {"im", pc.freq_sum.imag()}}},
                {"deviation", pc.deviation}};
}

json to_json(const MildReport& report) {
    return json{{"radius_schedule", report.radius_schedule},
                {"deviations", report.deviations},
                {"converged", report.converged},
                {"aggregated", report.aggregated}};
}

json to_json(const WssDeviation& dev) {
    return json{{"diag_invariance", dev.diag_invariance},
                {"offdiag_mass", dev.offdiag_mass}};
}

}  // namespace mildtf::io
