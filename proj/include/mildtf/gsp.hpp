#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <variant>

#include "mildtf/grid.hpp"

namespace mildtf {

/// Process models: white noise with a given variance, a stationary process
/// described by a nonnegative spectral symbol on the centered frequency
/// grid, or an arbitrary Hermitian PSD covariance matrix.
struct WhiteCovariance {
    double variance = 1.0;
};

struct StationaryCovariance {
    FiniteSignal symbol;
};

struct GeneralCovariance {
    Eigen::MatrixXcd matrix;
};

struct CovarianceSpec {
    GridModel grid;
    std::variant<WhiteCovariance, StationaryCovariance, GeneralCovariance> kind;

    static CovarianceSpec white(const GridModel& grid, double variance);
    static CovarianceSpec stationary(FiniteSignal symbol);
    /// Validates Hermitian symmetry and the eigenvalue floor >= -1e-10.
    static CovarianceSpec general(const GridModel& grid, Eigen::MatrixXcd matrix);

    const char* kind_name() const;
};

/// Monte Carlo realizations of the process, M x N row-major. Entries are
/// scaled so the alpha-weighted pairing against a test function has the
/// variance dictated by the spec (white(1) pairs with unit variance per
/// squared L2 norm).
struct GspEnsemble {
    GridModel grid;
    std::int64_t M = 0;
    std::vector<cplx> rows;  // row m at rows[m*N .. m*N+N)
    CovarianceSpec spec;
    std::uint64_t seed = 0;
    std::string generator;

    cplx* row(std::int64_t m) { return rows.data() + m * grid.N; }
    const cplx* row(std::int64_t m) const { return rows.data() + m * grid.N; }
    FiniteSignal row_signal(std::int64_t m) const;
};

/// Draws M realizations; deterministic for a given seed.
GspEnsemble simulate(const CovarianceSpec& spec, std::int64_t M, std::uint64_t seed);

/// Empirical autocorrelation (1/M) sum_m row_m (row_m)^H; Hermitian with
/// real diagonal by construction.
struct Autocorrelation {
    GridModel grid;
    Eigen::MatrixXcd matrix;
};

Autocorrelation autocorrelation(const GspEnsemble& e);

/// The exact covariance matrix of a spec (no Monte Carlo): white -> (v/alpha) I,
/// stationary -> circulant F^-1 diag(symbol/alpha) F, general -> the matrix.
Autocorrelation exact_covariance(const CovarianceSpec& spec);

/// Fourier transform of every realization; the spectral process.
GspEnsemble spectral_process(const GspEnsemble& e);

/// The two-dimensional transform F A F^H realizing the autocorrelation of
/// the spectral process.
Eigen::MatrixXcd two_dim_fourier(const Autocorrelation& a);

/// Max abs difference between autocorrelation(spectral_process(e)).matrix
/// and F * autocorrelation(e).matrix * F^H. Holds realization-wise, so the
/// deviation is floating-point small for any M.
double spectral_autocorr_identity(const GspEnsemble& e);

/// Wide-sense stationarity diagnostics: worst-case change of the matrix
/// under diagonal (cyclic) shifts, and the fraction of squared Frobenius
/// mass of F A F^H lying off the main diagonal.
struct WssDeviation {
    double diag_invariance = 0.0;
    double offdiag_mass = 0.0;
};

WssDeviation wss_deviation(const Autocorrelation& a);

}  // namespace mildtf
