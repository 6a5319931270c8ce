#pragma once

// Random generators and brute-force references shared by the unit tests.
// Nothing in here calls into the optimizer.

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "gme/tensor.hpp"

namespace gme::testing {

inline Complex gaussian(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    const double re = n(rng);
    return {re, n(rng)};
}

inline ComplexVector random_vector(std::size_t n, std::mt19937_64& rng, bool unit = true) {
    ComplexVector v(n);
    double norm = 0.0;
    for (auto& z : v) {
        z = gaussian(rng);
        norm += std::norm(z);
    }
    if (unit) {
        for (auto& z : v) z /= std::sqrt(norm);
    }
    return v;
}

inline std::vector<ComplexVector> random_unit_factors(const std::vector<std::size_t>& dims, std::mt19937_64& rng) {
    std::vector<ComplexVector> f;
    for (std::size_t d : dims) f.push_back(random_vector(d, rng));
    return f;
}

inline ComplexTensor random_tensor(const std::vector<std::size_t>& dims, std::mt19937_64& rng, bool real = false) {
    std::size_t n = 1;
    for (std::size_t d : dims) n *= d;
    ComplexVector data(n);
    double norm = 0.0;
    for (auto& z : data) {
        z = gaussian(rng);
        if (real) z = z.real();
        norm += std::norm(z);
    }
    for (auto& z : data) z /= std::sqrt(norm);
    return {dims, std::move(data)};
}

inline std::vector<std::size_t> random_dims(std::size_t order, std::size_t lo, std::size_t hi, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> pick(lo, hi);
    std::vector<std::size_t> dims(order);
    for (auto& d : dims) d = pick(rng);
    return dims;
}

// Haar-ish unitary: Gram-Schmidt on Gaussian columns, stored row-major.
inline ComplexVector random_unitary(std::size_t n, std::mt19937_64& rng) {
    std::vector<ComplexVector> cols;
    while (cols.size() < n) {
        ComplexVector c = random_vector(n, rng, false);
        for (const auto& q : cols) {
            Complex dot{};
            for (std::size_t i = 0; i < n; ++i) dot += std::conj(q[i]) * c[i];
            for (std::size_t i = 0; i < n; ++i) c[i] -= dot * q[i];
        }
        double norm = 0.0;
        for (const auto& z : c) norm += std::norm(z);
        norm = std::sqrt(norm);
        if (norm < 1e-8) continue;
        for (auto& z : c) z /= norm;
        cols.push_back(std::move(c));
    }
    ComplexVector u(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) u[r * n + c] = cols[c][r];
    }
    return u;
}

// <T | a ⊗ b ⊗ ...> by explicit loop over every entry.
inline Complex naive_overlap(const ComplexTensor& t, const std::vector<ComplexVector>& factors) {
    Complex sum{};
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
        const auto idx = t.multi_index(flat);
        Complex p{1.0, 0.0};
        for (std::size_t k = 0; k < idx.size(); ++k) p *= std::conj(factors[k][idx[k]]);
        sum += p * t[flat];
    }
    return sum;
}

// Largest singular value of a 2x2 complex matrix [[a,b],[c,d]] in closed form.
inline double sigma_max_2x2(Complex a, Complex b, Complex c, Complex d) {
    const double f = std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d);
    const double det = std::norm(a * d - b * c);
    return std::sqrt((f + std::sqrt(std::max(0.0, f * f - 4.0 * det))) / 2.0);
}

// Golden-section refinement around the best point of a dense grid.
inline double grid_max(const std::function<double(double)>& f, double lo, double hi, std::size_t points = 20001) {
    double best_x = lo, best = f(lo);
    const double step = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t i = 1; i < points; ++i) {
        const double x = lo + step * static_cast<double>(i);
        const double v = f(x);
        if (v > best) {
            best = v;
            best_x = x;
        }
    }
    double a = std::max(lo, best_x - step), b = std::min(hi, best_x + step);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 200; ++it) {
        const double x1 = b - g * (b - a), x2 = a + g * (b - a);
        if (f(x1) > f(x2)) b = x2;
        else a = x1;
    }
    return std::max(best, f((a + b) / 2.0));
}

inline double binomial(std::size_t n, std::size_t k) {
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

} // namespace gme::testing
