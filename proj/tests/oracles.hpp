#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library's numerical paths.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace apvq::test {

/// Dense Gauss-Jordan inverse with partial pivoting.
inline std::vector<std::vector<double>> invert(std::vector<std::vector<double>> a) {
    const std::size_t n = a.size();
    std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        if (a[pivot][col] == 0.0) throw std::runtime_error("singular");
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        const double d = a[col][col];
        for (std::size_t k = 0; k < n; ++k) {
            a[col][k] /= d;
            inv[col][k] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            for (std::size_t k = 0; k < n; ++k) {
                a[r][k] -= f * a[col][k];
                inv[r][k] -= f * inv[col][k];
            }
        }
    }
    return inv;
}

/// Marginal theta uncertainty by explicit Fisher-matrix inversion.
inline double fisher_fit_by_inversion(const std::vector<double>& q, const std::vector<double>& h,
                                      const std::vector<double>& sigma, double omega) {
    std::vector<std::vector<double>> f(2, std::vector<double>(2, 0.0));
    for (std::size_t i = 0; i < q.size(); ++i) {
        const double w = 1.0 / (sigma[i] * sigma[i]);
        const double d[2] = {q[i], omega * h[i]};
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) f[a][b] += w * d[a] * d[b];
    }
    return std::sqrt(invert(f)[1][1]);
}

/// Contrast by literal repeated multiplication in long double.
inline double contrast_by_product(double c0, double f1, std::int64_t n1, double f2,
                                  std::int64_t n2, double p_surv, std::int64_t n,
                                  double dephasing_exponent) {
    long double c = c0;
    for (std::int64_t k = 0; k < n1; ++k) c *= f1;
    for (std::int64_t k = 0; k < n2; ++k) c *= f2;
    for (std::int64_t k = 0; k < n; ++k) c *= p_surv;
    return static_cast<double>(c * std::exp(static_cast<long double>(dephasing_exponent)));
}

/// Eigenvalue of sum_j g_j Z_j on basis state b, with bit 1 meaning Z = -1.
inline double enumerate_eigenvalue(const std::vector<double>& g, std::size_t b) {
    double v = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) v += ((b >> j) & 1U) ? -g[j] : g[j];
    return v;
}

/// Variance of a two-point distribution with equal weights.
inline double two_point_variance(double a, double b) { return 0.25 * (a - b) * (a - b); }

inline std::vector<std::complex<double>> random_state(std::mt19937_64& rng, std::size_t dim) {
    std::normal_distribution<double> n01;
    std::vector<std::complex<double>> v(dim);
    double norm = 0.0;
    for (auto& a : v) {
        a = {n01(rng), n01(rng)};
        norm += std::norm(a);
    }
    for (auto& a : v) a /= std::sqrt(norm);
    return v;
}

}  // namespace apvq::test
