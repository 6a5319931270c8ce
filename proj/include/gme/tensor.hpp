#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace gme {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

class Partition;

/// Dense m-way array of complex amplitudes, one index per party.
///
/// Storage is row-major: the last party's index varies fastest, so the flat
/// position of (i_1, ..., i_m) is the mixed-radix number i_1 i_2 ... i_m with
/// radices dims[0..m-1]. For qubits this makes flat index == the ket's binary
/// label read left to right.
///
/// Instances are immutable once constructed.
class ComplexTensor {
public:
    /// Throws InvalidTensor on empty dims, a zero dimension, a length
    /// mismatch, or non-finite amplitudes.
    ComplexTensor(std::vector<std::size_t> dims, ComplexVector data);

    static ComplexTensor zeros(std::vector<std::size_t> dims);

    const std::vector<std::size_t>& dims() const noexcept { return dims_; }
    std::size_t order() const noexcept { return dims_.size(); }
    std::size_t size() const noexcept { return data_.size(); }
    std::span<const Complex> data() const noexcept { return data_; }

    std::size_t flat_index(std::span<const std::size_t> index) const;
    std::vector<std::size_t> multi_index(std::size_t flat) const;

    Complex at(std::span<const std::size_t> index) const { return data_[flat_index(index)]; }
    Complex operator[](std::size_t flat) const { return data_[flat]; }

    bool operator==(const ComplexTensor&) const = default;

private:
    std::vector<std::size_t> dims_;
    ComplexVector data_;
};

/// Product state a^1 (x) ... (x) a^m together with its overlap against a
/// target state.
struct RankOneState {
    std::vector<ComplexVector> factors;
    Complex overlap{0.0, 0.0};
};

/// Product of dims, with overflow detection (throws CapacityExceeded).
std::size_t element_count(std::span<const std::size_t> dims);

double frobenius_norm(const ComplexTensor& t);

/// Scales by 1/||t||. Throws ZeroTensor when the norm is zero.
ComplexTensor normalize(const ComplexTensor& t);

/// Contracts one party against conj(v): result(.., ^i_k, ..) = sum_i conj(v_i) t(.., i, ..).
/// Contracting the only mode of an order-1 tensor gives a dims {1} tensor.
ComplexTensor mode_contract(const ComplexTensor& t, std::size_t mode, std::span<const Complex> v);

/// <phi|psi> for phi = a^1 (x) ... (x) a^m and psi = t.
Complex full_overlap(const ComplexTensor& t, const RankOneState& product);
Complex full_overlap(const ComplexTensor& t, std::span<const ComplexVector> factors);

/// Vector g with g_i = sum over all indices except `mode` of
/// t(.., i, ..) * prod_{l != mode} conj(factors[l][i_l]).
/// Runs in O(size) regardless of mode.
ComplexVector contract_all_but(const ComplexTensor& t, std::span<const ComplexVector> factors,
                               std::size_t mode);

/// Regroups parties into the blocks of `p`. Each block becomes a single index
/// whose value is the mixed-radix composite of its members in ascending party
/// order. Entries are only relocated, never recomputed.
ComplexTensor merge_indices(const ComplexTensor& t, const Partition& p);

/// Applies an independent square matrix to each party's index:
/// result = (U_1 (x) ... (x) U_m) t. Matrices are row-major n_l x n_l.
ComplexTensor apply_local_operators(const ComplexTensor& t, std::span<const ComplexVector> operators);

/// Reorders parties: party k of the result is party order[k] of t.
ComplexTensor permute_parties(const ComplexTensor& t, std::span<const std::size_t> order);

/// Outer product of the given vectors as an m-way tensor.
ComplexTensor product_tensor(std::span<const ComplexVector> factors);

} // namespace gme
