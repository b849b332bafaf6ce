#include "mildtf/gsp.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "mildtf/transforms.hpp"

namespace mildtf {

namespace {

// Box-Muller on top of mt19937_64 so the realization stream is identical
// across standard libraries.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

    // Standard complex normal: E z conj(z) = 1.
    cplx next_complex() {
        const double u1 = unit();
        const double u2 = unit();
        const double r = std::sqrt(-std::log(u1));  // radius for E|z|^2 = 1
        const double phi = 2.0 * std::numbers::pi * u2;
        return cplx(r * std::cos(phi), r * std::sin(phi));
    }

private:
    double unit() {
        // uniform in (0, 1]; avoids log(0)
        const std::uint64_t x = rng_();
        return (static_cast<double>(x >> 11) + 1.0) * 0x1.0p-53;
    }

    std::mt19937_64 rng_;
};

constexpr const char* kGeneratorId = "mt19937_64+box-muller";

}  // namespace

CovarianceSpec CovarianceSpec::white(const GridModel& grid, double variance) {
    if (!(variance > 0.0)) {
        throw std::invalid_argument("CovarianceSpec::white: variance must be positive");
    }
    return CovarianceSpec{grid, WhiteCovariance{variance}};
}

CovarianceSpec CovarianceSpec::stationary(FiniteSignal symbol) {
    for (std::int64_t n = 0; n < symbol.grid.N; ++n) {
        if (symbol[n].imag() != 0.0 || symbol[n].real() < 0.0) {
            throw std::invalid_argument(
                "CovarianceSpec::stationary: symbol must be real and nonnegative");
        }
    }
    GridModel grid = symbol.grid;
    return CovarianceSpec{grid, StationaryCovariance{std::move(symbol)}};
}

CovarianceSpec CovarianceSpec::general(const GridModel& grid, Eigen::MatrixXcd matrix) {
    if (matrix.rows() != grid.N || matrix.cols() != grid.N) {
        throw std::invalid_argument("CovarianceSpec::general: matrix size mismatch");
    }
    const double asym = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * std::max(1.0, matrix.cwiseAbs().maxCoeff())) {
        throw std::invalid_argument("CovarianceSpec::general: matrix not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10) {
        throw std::invalid_argument(
            "CovarianceSpec::general: matrix not positive semidefinite");
    }
    return CovarianceSpec{grid, GeneralCovariance{std::move(matrix)}};
}

const char* CovarianceSpec::kind_name() const {
    switch (kind.index()) {
        case 0: return "white";
        case 1: return "stationary";
        default: return "general";
    }
}

FiniteSignal GspEnsemble::row_signal(std::int64_t m) const {
    FiniteSignal f = zeros(grid);
    const cplx* r = row(m);
    for (std::int64_t n = 0; n < grid.N; ++n) f[n] = r[n];
    return f;
}

GspEnsemble simulate(const CovarianceSpec& spec, std::int64_t M, std::uint64_t seed) {
    if (M < 2) {
        throw std::invalid_argument("simulate: need M >= 2 realizations");
    }
    const GridModel& grid = spec.grid;
    const std::int64_t N = grid.N;
    GspEnsemble e{grid, M,
                  std::vector<cplx>(static_cast<std::size_t>(M) * static_cast<std::size_t>(N)),
                  spec, seed, kGeneratorId};
    GaussianStream gs(seed);

    if (const auto* white = std::get_if<WhiteCovariance>(&spec.kind)) {
        const double scale = std::sqrt(white->variance / grid.alpha);
        for (std::int64_t m = 0; m < M; ++m) {
            cplx* r = e.row(m);
            for (std::int64_t n = 0; n < N; ++n) {
                r[n] = scale * gs.next_complex();
            }
        }
    } else if (const auto* st = std::get_if<StationaryCovariance>(&spec.kind)) {
        FiniteSignal w = zeros(grid);
        for (std::int64_t m = 0; m < M; ++m) {
            for (std::int64_t n = 0; n < N; ++n) {
                w[n] = std::sqrt(st->symbol[n].real() / grid.alpha) * gs.next_complex();
            }
            const FiniteSignal r = inverse_fourier(w);
            cplx* out = e.row(m);
            for (std::int64_t n = 0; n < N; ++n) out[n] = r[n];
        }
    } else {
        const auto& gen = std::get<GeneralCovariance>(spec.kind);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gen.matrix);
        Eigen::VectorXd eig = es.eigenvalues().cwiseMax(0.0);
        Eigen::MatrixXcd factor =
            es.eigenvectors() * eig.cwiseSqrt().asDiagonal();
        Eigen::VectorXcd z(N);
        for (std::int64_t m = 0; m < M; ++m) {
            for (std::int64_t n = 0; n < N; ++n) z(n) = gs.next_complex();
            Eigen::VectorXcd r = factor * z;
            cplx* out = e.row(m);
            for (std::int64_t n = 0; n < N; ++n) out[n] = r(n);
        }
    }
    return e;
}

Autocorrelation autocorrelation(const GspEnsemble& e) {
    const std::int64_t N = e.grid.N;
    const std::int64_t M = e.M;
    Eigen::MatrixXcd A(N, N);
    // Upper triangle, fixed order over realizations per entry; mirrored so
    // Hermitian symmetry is exact.
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < N; ++i) {
        for (std::int64_t j = i; j < N; ++j) {
            cplx acc(0.0, 0.0);
            for (std::int64_t m = 0; m < M; ++m) {
                const cplx* r = e.row(m);
                acc += r[i] * std::conj(r[j]);
            }
            acc /= static_cast<double>(M);
            A(i, j) = acc;
            if (i != j) {
                A(j, i) = std::conj(acc);
            }
        }
    }
    return Autocorrelation{e.grid, std::move(A)};
}

Autocorrelation exact_covariance(const CovarianceSpec& spec) {
    const GridModel& grid = spec.grid;
    const std::int64_t N = grid.N;
    if (const auto* white = std::get_if<WhiteCovariance>(&spec.kind)) {
        Eigen::MatrixXcd A = (white->variance / grid.alpha) *
                             Eigen::MatrixXcd::Identity(N, N);
        return Autocorrelation{grid, std::move(A)};
    }
    if (const auto* st = std::get_if<StationaryCovariance>(&spec.kind)) {
        // C[i][j] = alpha * sum_m symbol[m] e^{2 pi i (i-j)(m-c)/N}: circulant.
        Eigen::MatrixXcd A(N, N);
        std::vector<cplx> profile(static_cast<std::size_t>(N));
        for (std::int64_t d = 0; d < N; ++d) {
            cplx acc(0.0, 0.0);
            for (std::int64_t m = 0; m < N; ++m) {
                const double ang = 2.0 * std::numbers::pi *
                                   static_cast<double>(((d * (m - grid.center)) % N + N) % N) /
                                   static_cast<double>(N);
                acc += st->symbol[m].real() * std::polar(1.0, ang);
            }
            profile[static_cast<std::size_t>(d)] = grid.alpha * acc;
        }
        for (std::int64_t i = 0; i < N; ++i) {
            for (std::int64_t j = 0; j < N; ++j) {
                A(i, j) = profile[static_cast<std::size_t>(grid.wrap(i - j))];
            }
        }
        return Autocorrelation{grid, std::move(A)};
    }
    return Autocorrelation{grid, std::get<GeneralCovariance>(spec.kind).matrix};
}

GspEnsemble spectral_process(const GspEnsemble& e) {
    GspEnsemble out = e;
    for (std::int64_t m = 0; m < e.M; ++m) {
        const FiniteSignal r = fourier(e.row_signal(m));
        cplx* dst = out.row(m);
        for (std::int64_t n = 0; n < e.grid.N; ++n) dst[n] = r[n];
    }
    return out;
}

Eigen::MatrixXcd two_dim_fourier(const Autocorrelation& a) {
    const GridModel& grid = a.grid;
    const std::int64_t N = grid.N;
    // F A F^H: forward transform down the first index, conjugate transform
    // along the second.
    Eigen::MatrixXcd B(N, N);
    FiniteSignal buf = zeros(grid);
    for (std::int64_t j = 0; j < N; ++j) {
        for (std::int64_t i = 0; i < N; ++i) buf[i] = a.matrix(i, j);
        const FiniteSignal col = fourier(buf);
        for (std::int64_t i = 0; i < N; ++i) B(i, j) = col[i];
    }
    Eigen::MatrixXcd C(N, N);
    for (std::int64_t i = 0; i < N; ++i) {
        for (std::int64_t j = 0; j < N; ++j) buf[j] = B(i, j);
        const FiniteSignal row = inverse_fourier(buf);
        for (std::int64_t j = 0; j < N; ++j) C(i, j) = row[j];
    }
    return C;
}

double spectral_autocorr_identity(const GspEnsemble& e) {
    const Autocorrelation direct = autocorrelation(spectral_process(e));
    const Eigen::MatrixXcd transformed = two_dim_fourier(autocorrelation(e));
    return (direct.matrix - transformed).cwiseAbs().maxCoeff();
}

WssDeviation wss_deviation(const Autocorrelation& a) {
    const GridModel& grid = a.grid;
    const std::int64_t N = grid.N;
    double diag_inv = 0.0;
    for (std::int64_t x = 1; x < N; ++x) {
        double worst = 0.0;
        for (std::int64_t i = 0; i < N; ++i) {
            const std::int64_t ix = grid.wrap(i + x);
            for (std::int64_t j = 0; j < N; ++j) {
                worst = std::max(worst,
                                 std::abs(a.matrix(ix, grid.wrap(j + x)) - a.matrix(i, j)));
            }
        }
        diag_inv = std::max(diag_inv, worst);
    }

    const Eigen::MatrixXcd C = two_dim_fourier(a);
    double total = 0.0;
    double off = 0.0;
    for (std::int64_t i = 0; i < N; ++i) {
        for (std::int64_t j = 0; j < N; ++j) {
            const double m = std::norm(C(i, j));
            total += m;
            if (i != j) off += m;
        }
    }
    return WssDeviation{diag_inv, total > 0.0 ? off / total : 0.0};
}

}  // namespace mildtf
