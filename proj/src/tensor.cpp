#include "gme/tensor.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "gme/error.hpp"
#include "gme/partition.hpp"

namespace gme {

namespace {

// Hot-loop complex multiply without the NaN/Inf recovery path of operator*.
inline void mul_acc(double& re, double& im, const Complex& a, const Complex& b) {
    re += a.real() * b.real() - a.imag() * b.imag();
    im += a.real() * b.imag() + a.imag() * b.real();
}

std::size_t product(std::span<const std::size_t> dims, std::size_t first, std::size_t last) {
    std::size_t p = 1;
    for (std::size_t l = first; l < last; ++l) p *= dims[l];
    return p;
}

// Kronecker product of conj(factors[first..last)), first factor slowest.
ComplexVector conj_kron(std::span<const ComplexVector> factors, std::size_t first, std::size_t last) {
    ComplexVector out{Complex{1.0, 0.0}};
    for (std::size_t l = first; l < last; ++l) {
        const auto& f = factors[l];
        ComplexVector next(out.size() * f.size());
        std::size_t pos = 0;
        for (const auto& o : out) {
            for (const auto& x : f) next[pos++] = o * std::conj(x);
        }
        out = std::move(next);
    }
    return out;
}

void check_factors(const ComplexTensor& t, std::span<const ComplexVector> factors) {
    if (factors.size() != t.order()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "expected " + std::to_string(t.order()) + " factors, got " +
                        std::to_string(factors.size()));
    }
    for (std::size_t l = 0; l < factors.size(); ++l) {
        if (factors[l].size() != t.dims()[l]) {
            throw Error(ErrorCode::DimensionMismatch,
                        "factor " + std::to_string(l) + " has length " +
                            std::to_string(factors[l].size()) + ", party dimension is " +
                            std::to_string(t.dims()[l]));
        }
    }
}

// Visits every multi-index of `dims` in row-major order, maintaining
// sum_l index[l] * weights[l] incrementally.
template <typename Fn>
void for_each_weighted(std::span<const std::size_t> dims, std::span<const std::size_t> weights, Fn&& fn) {
    const std::size_t m = dims.size();
    const std::size_t total = product(dims, 0, m);
    std::vector<std::size_t> index(m, 0);
    std::size_t target = 0;
    for (std::size_t flat = 0; flat < total; ++flat) {
        fn(flat, target);
        for (std::size_t l = m; l-- > 0;) {
            if (++index[l] < dims[l]) {
                target += weights[l];
                break;
            }
            target -= (dims[l] - 1) * weights[l];
            index[l] = 0;
        }
    }
}

std::vector<std::size_t> row_major_strides(std::span<const std::size_t> dims) {
    std::vector<std::size_t> strides(dims.size(), 1);
    for (std::size_t l = dims.size(); l-- > 1;) strides[l - 1] = strides[l] * dims[l];
    return strides;
}

} // namespace

std::size_t element_count(std::span<const std::size_t> dims) {
    std::size_t p = 1;
    for (auto d : dims) {
        if (d != 0 && p > std::numeric_limits<std::size_t>::max() / d) {
            throw Error(ErrorCode::CapacityExceeded, "tensor element count overflows");
        }
        p *= d;
    }
    return p;
}

ComplexTensor::ComplexTensor(std::vector<std::size_t> dims, ComplexVector data)
    : dims_(std::move(dims)), data_(std::move(data)) {
    if (dims_.empty()) throw Error(ErrorCode::InvalidTensor, "tensor needs at least one party");
    for (auto d : dims_) {
        if (d == 0) throw Error(ErrorCode::InvalidTensor, "party dimension must be >= 1");
    }
    if (element_count(dims_) != data_.size()) {
        throw Error(ErrorCode::InvalidTensor, "data length " + std::to_string(data_.size()) +
                                                  " does not match product of dims");
    }
    for (const auto& z : data_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw Error(ErrorCode::InvalidTensor, "amplitudes must be finite");
        }
    }
}

ComplexTensor ComplexTensor::zeros(std::vector<std::size_t> dims) {
    const auto n = element_count(dims);
    return ComplexTensor(std::move(dims), ComplexVector(n));
}

std::size_t ComplexTensor::flat_index(std::span<const std::size_t> index) const {
    if (index.size() != dims_.size()) {
        throw Error(ErrorCode::DimensionMismatch, "index arity does not match tensor order");
    }
    std::size_t flat = 0;
    for (std::size_t l = 0; l < dims_.size(); ++l) {
        if (index[l] >= dims_[l]) throw Error(ErrorCode::DimensionMismatch, "index out of range");
        flat = flat * dims_[l] + index[l];
    }
    return flat;
}

std::vector<std::size_t> ComplexTensor::multi_index(std::size_t flat) const {
    std::vector<std::size_t> index(dims_.size());
    for (std::size_t l = dims_.size(); l-- > 0;) {
        index[l] = flat % dims_[l];
        flat /= dims_[l];
    }
    return index;
}

double frobenius_norm(const ComplexTensor& t) {
    // Scaled accumulation keeps tiny and huge amplitudes from under/overflowing.
    double scale = 0.0;
    double ssq = 1.0;
    for (const auto& z : t.data()) {
        for (double x : {z.real(), z.imag()}) {
            if (x == 0.0) continue;
            const double ax = std::abs(x);
            if (scale < ax) {
                ssq = 1.0 + ssq * (scale / ax) * (scale / ax);
                scale = ax;
            } else {
                ssq += (ax / scale) * (ax / scale);
            }
        }
    }
    return scale * std::sqrt(ssq);
}

ComplexTensor normalize(const ComplexTensor& t) {
    const double norm = frobenius_norm(t);
    if (norm == 0.0) throw Error(ErrorCode::ZeroTensor, "cannot normalize a zero tensor");
    ComplexVector data(t.data().begin(), t.data().end());
    for (auto& z : data) z /= norm;
    return ComplexTensor(t.dims(), std::move(data));
}

ComplexTensor mode_contract(const ComplexTensor& t, std::size_t mode, std::span<const Complex> v) {
    const auto& dims = t.dims();
    if (mode >= dims.size()) throw Error(ErrorCode::DimensionMismatch, "mode out of range");
    if (v.size() != dims[mode]) {
        throw Error(ErrorCode::DimensionMismatch, "vector length does not match party dimension");
    }
    const std::size_t prefix = product(dims, 0, mode);
    const std::size_t n = dims[mode];
    const std::size_t suffix = product(dims, mode + 1, dims.size());

    ComplexVector out(prefix * suffix);
    const auto data = t.data();
    for (std::size_t p = 0; p < prefix; ++p) {
        for (std::size_t i = 0; i < n; ++i) {
            const Complex w = std::conj(v[i]);
            const Complex* src = data.data() + (p * n + i) * suffix;
            Complex* dst = out.data() + p * suffix;
            for (std::size_t c = 0; c < suffix; ++c) {
                double re = dst[c].real();
                double im = dst[c].imag();
                mul_acc(re, im, w, src[c]);
                dst[c] = {re, im};
            }
        }
    }
    std::vector<std::size_t> out_dims;
    for (std::size_t l = 0; l < dims.size(); ++l) {
        if (l != mode) out_dims.push_back(dims[l]);
    }
    if (out_dims.empty()) out_dims.push_back(1);
    return ComplexTensor(std::move(out_dims), std::move(out));
}

ComplexVector contract_all_but(const ComplexTensor& t, std::span<const ComplexVector> factors,
                               std::size_t mode) {
    check_factors(t, factors);
    const auto& dims = t.dims();
    if (mode >= dims.size()) throw Error(ErrorCode::DimensionMismatch, "mode out of range");

    const std::size_t n = dims[mode];
    const ComplexVector before = conj_kron(factors, 0, mode);
    const ComplexVector after = conj_kron(factors, mode + 1, dims.size());
    const std::size_t suffix = after.size();
    const Complex* data = t.data().data();

    ComplexVector g(n);
    for (std::size_t p = 0; p < before.size(); ++p) {
        const Complex pw = before[p];
        for (std::size_t i = 0; i < n; ++i) {
            const Complex* row = data + (p * n + i) * suffix;
            double re = 0.0;
            double im = 0.0;
            for (std::size_t c = 0; c < suffix; ++c) mul_acc(re, im, row[c], after[c]);
            double gre = g[i].real();
            double gim = g[i].imag();
            mul_acc(gre, gim, pw, Complex{re, im});
            g[i] = {gre, gim};
        }
    }
    return g;
}

Complex full_overlap(const ComplexTensor& t, std::span<const ComplexVector> factors) {
    const std::size_t last = t.order() - 1;
    const ComplexVector g = contract_all_but(t, factors, last);
    Complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < g.size(); ++i) sum += std::conj(factors[last][i]) * g[i];
    return sum;
}

Complex full_overlap(const ComplexTensor& t, const RankOneState& product) {
    return full_overlap(t, std::span<const ComplexVector>(product.factors));
}

ComplexTensor merge_indices(const ComplexTensor& t, const Partition& p) {
    const auto& dims = t.dims();
    if (p.party_count() != dims.size()) {
        throw Error(ErrorCode::InvalidPartition, "partition covers " + std::to_string(p.party_count()) +
                                                     " parties, tensor has " + std::to_string(dims.size()));
    }
    const auto& blocks = p.blocks();
    std::vector<std::size_t> merged_dims;
    for (const auto& block : blocks) {
        std::size_t d = 1;
        for (auto party : block) d *= dims[party];
        merged_dims.push_back(d);
    }
    const auto block_strides = row_major_strides(merged_dims);

    // weight[l] = contribution of party l's index to the merged flat position.
    std::vector<std::size_t> weights(dims.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        std::size_t inner = 1;
        for (auto it = blocks[b].rbegin(); it != blocks[b].rend(); ++it) {
            weights[*it] = inner * block_strides[b];
            inner *= dims[*it];
        }
    }

    ComplexVector out(t.size());
    const auto data = t.data();
    for_each_weighted(dims, weights, [&](std::size_t src, std::size_t dst) { out[dst] = data[src]; });
    return ComplexTensor(std::move(merged_dims), std::move(out));
}

ComplexTensor apply_local_operators(const ComplexTensor& t, std::span<const ComplexVector> operators) {
    const auto& dims = t.dims();
    if (operators.size() != dims.size()) {
        throw Error(ErrorCode::DimensionMismatch, "need one operator per party");
    }
    ComplexVector cur(t.data().begin(), t.data().end());
    for (std::size_t mode = 0; mode < dims.size(); ++mode) {
        const std::size_t n = dims[mode];
        const auto& u = operators[mode];
        if (u.size() != n * n) throw Error(ErrorCode::DimensionMismatch, "operator must be n x n");
        const std::size_t prefix = product(dims, 0, mode);
        const std::size_t suffix = product(dims, mode + 1, dims.size());
        ComplexVector next(cur.size());
        for (std::size_t p = 0; p < prefix; ++p) {
            for (std::size_t i = 0; i < n; ++i) {
                Complex* dst = next.data() + (p * n + i) * suffix;
                for (std::size_t j = 0; j < n; ++j) {
                    const Complex w = u[i * n + j];
                    const Complex* src = cur.data() + (p * n + j) * suffix;
                    for (std::size_t c = 0; c < suffix; ++c) dst[c] += w * src[c];
                }
            }
        }
        cur = std::move(next);
    }
    return ComplexTensor(dims, std::move(cur));
}

ComplexTensor permute_parties(const ComplexTensor& t, std::span<const std::size_t> order) {
    const auto& dims = t.dims();
    if (order.size() != dims.size()) throw Error(ErrorCode::DimensionMismatch, "order must list every party");
    std::vector<bool> seen(dims.size(), false);
    for (auto o : order) {
        if (o >= dims.size() || seen[o]) throw Error(ErrorCode::InvalidParams, "order is not a permutation");
        seen[o] = true;
    }
    const auto src_strides = row_major_strides(dims);
    std::vector<std::size_t> out_dims(dims.size());
    std::vector<std::size_t> weights(dims.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        out_dims[k] = dims[order[k]];
        weights[k] = src_strides[order[k]];
    }
    ComplexVector out(t.size());
    const auto data = t.data();
    for_each_weighted(out_dims, weights, [&](std::size_t dst, std::size_t src) { out[dst] = data[src]; });
    return ComplexTensor(std::move(out_dims), std::move(out));
}

ComplexTensor product_tensor(std::span<const ComplexVector> factors) {
    if (factors.empty()) throw Error(ErrorCode::InvalidTensor, "need at least one factor");
    std::vector<std::size_t> dims;
    ComplexVector data{Complex{1.0, 0.0}};
    for (const auto& f : factors) {
        dims.push_back(f.size());
        ComplexVector next(data.size() * f.size());
        std::size_t pos = 0;
        for (const auto& a : data) {
            for (const auto& b : f) next[pos++] = a * b;
        }
        data = std::move(next);
    }
    return ComplexTensor(std::move(dims), std::move(data));
}

} // namespace gme
