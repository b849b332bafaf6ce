#include <doctest.h>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <random>

#include "mildtf/errors.hpp"
#include "mildtf/gsp.hpp"
#include "mildtf/io.hpp"
#include "mildtf/mild.hpp"

using namespace mildtf;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("mildtf_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

FiniteSignal random_signal(const GridModel& grid, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    FiniteSignal f = zeros(grid);
    for (std::int64_t n = 0; n < grid.N; ++n) {
        f[n] = cplx(u(rng), u(rng));
    }
    return f;
}

}  // namespace

TEST_CASE("signal csv round trip is bit exact") {
    TempDir dir;
    const GridModel g = make_grid(6);  // non-dyadic alpha exercises the printer
    const FiniteSignal f = random_signal(g, 211);
    const fs::path path = dir.path / "signal.csv";
    io::write_signal_csv(path, f);
    CHECK(fs::exists(io::sidecar_path(path)));
    const FiniteSignal back = io::read_signal_csv(path);
    CHECK(back.grid == g);
    CHECK(max_abs_diff(back, f) == 0.0);
}

TEST_CASE("signal csv parse errors carry line numbers") {
    TempDir dir;
    const fs::path path = dir.path / "bad.csv";

    {
        std::ofstream side(io::sidecar_path(path));
        side << "{\"L\": 4, \"N\": 16, \"alpha\": 0.25, \"beta\": 4.0}\n";
        std::ofstream out(path);
        out << "index,re,im\n0,1.0,0.0\n1,garbage\n";
    }
    try {
        io::read_signal_csv(path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
    }

    {
        std::ofstream out(path, std::ios::trunc);
        out << "wrong,header\n";
    }
    try {
        io::read_signal_csv(path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
    }

    {
        std::ofstream out(path, std::ios::trunc);
        out << "index,re,im\n0,1.0,0.0\n";  // too few rows
    }
    CHECK_THROWS_AS(io::read_signal_csv(path), ParseError);

    CHECK_THROWS_AS(io::read_signal_csv(dir.path / "missing.csv"), ParseError);
}

TEST_CASE("stft pgm export has the promised header and sidecar") {
    TempDir dir;
    const GridModel g = make_grid(4);
    const STFTMap map = stft(gaussian(g), gaussian(g));
    const fs::path path = dir.path / "map.pgm";
    io::write_stft_pgm(path, map);

    std::ifstream in(path, std::ios::binary);
    std::string magic;
    std::int64_t w = 0, h = 0, maxval = 0;
    in >> magic >> w >> h >> maxval;
    CHECK(magic == "P5");
    CHECK(w == g.N);
    CHECK(h == g.N);
    CHECK(maxval == 65535);
    in.get();  // single whitespace after maxval
    std::vector<unsigned char> data(static_cast<std::size_t>(2 * w * h));
    in.read(reinterpret_cast<char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
    CHECK(in.gcount() == static_cast<std::streamsize>(data.size()));

    // peak pixel must be the full 16-bit value; locate the map maximum
    std::uint16_t peak = 0;
    for (std::size_t i = 0; i < data.size(); i += 2) {
        peak = std::max(peak, static_cast<std::uint16_t>((data[i] << 8) | data[i + 1]));
    }
    CHECK(peak == 65535);

    CHECK(fs::exists(io::sidecar_path(path)));
}

TEST_CASE("ensemble export round trip") {
    TempDir dir;
    const GridModel g = make_grid(4);
    const GspEnsemble e = simulate(CovarianceSpec::white(g, 1.0), 8, 99);
    const fs::path path = dir.path / "ensemble.bin";
    io::write_ensemble(path, e);
    const GspEnsemble back = io::read_ensemble(path);
    CHECK(back.M == e.M);
    CHECK(back.seed == e.seed);
    CHECK(back.generator == e.generator);
    double worst = 0.0;
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
        worst = std::max(worst, std::abs(back.rows[i] - e.rows[i]));
    }
    CHECK(worst < 1e-6);  // payload is complex64

    // stationary spec symbol survives the round trip
    FiniteSignal symbol = constant(g, cplx(2.0, 0.0));
    const GspEnsemble es = simulate(CovarianceSpec::stationary(symbol), 4, 7);
    io::write_ensemble(path, es);
    const GspEnsemble back2 = io::read_ensemble(path);
    CHECK(std::get<StationaryCovariance>(back2.spec.kind).symbol[0] == cplx(2.0, 0.0));
}

TEST_CASE("json records use the documented field names") {
    const GridModel g = make_grid(4);
    const auto pj = io::to_json(poisson_check(gaussian(g)));
    CHECK(pj.contains("time_sum"));
    CHECK(pj.contains("freq_sum"));
    CHECK(pj.contains("deviation"));

    const MildReport rep =
        mild_report(gaussian(g), gaussian(g), gaussian(g), 1e-6);
    const auto mj = io::to_json(rep);
    CHECK(mj.contains("radius_schedule"));
    CHECK(mj.contains("deviations"));
    CHECK(mj.contains("converged"));
}
