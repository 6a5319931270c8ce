#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gme/partition.hpp"
#include "gme/tensor.hpp"

namespace gme {

/// Default ceiling on dense amplitudes a constructor may allocate (2^28).
inline constexpr std::size_t default_max_entries = std::size_t{1} << 28;

// ---------------------------------------------------------------------------
// Symmetric qubit states and their closed-form overlaps
// ---------------------------------------------------------------------------

/// S(n,k): equal superposition of all n-qubit basis states with exactly k
/// zeros, amplitude 1/sqrt(C(n,k)). k = n-1 is the W state, k = 0 is |1..1>.
ComplexTensor dicke_state(std::size_t n, std::size_t k, std::size_t max_entries = default_max_entries);

/// Closed-form maximal product overlap of S(n,k), with 0^0 = 1.
double dicke_overlap_oracle(std::size_t n, std::size_t k);

/// sqrt(s) |S(3,2)> + sqrt(1-s) e^{i phi} |S(3,1)>.
ComplexTensor w_superposition_state(double s, double phi);

struct WOverlapContext {
    double s = 0.0;
    double t = 0.0;      // tan(theta), root of the stationarity cubic
    double theta = 0.0;
    double lambda = 0.0; // maximal overlap
};

/// Coefficients (t^3, t^2, t, 1) of the stationarity condition for the
/// symmetric product ansatz (cos th, sin th)^{(x)3} against the W
/// superposition: sqrt(1-s) t^3 + 2 sqrt(s) t^2 - 2 sqrt(1-s) t - sqrt(s).
std::array<double, 4> w_superposition_cubic(double s);

/// Solves the cubic through its companion matrix and returns the real root
/// maximizing lambda = (sqrt3/2)(sqrt(s) cos th + sqrt(1-s) sin th) sin 2th.
WOverlapContext w_superposition_overlap_oracle(double s);

// ---------------------------------------------------------------------------
// Qudits
// ---------------------------------------------------------------------------

/// n parties of dimension d; equal superposition of the n basis states with
/// one party at level d-1 and the rest at 0. Throws CapacityExceeded when
/// d^n > max_entries.
ComplexTensor qudit_symmetric_state(std::size_t n, std::size_t d, std::size_t max_entries = default_max_entries);

/// Maximal overlap of qudit_symmetric_state(n, d); independent of d.
double qudit_overlap_oracle(std::size_t n);

// ---------------------------------------------------------------------------
// Weighted W states
// ---------------------------------------------------------------------------

/// N * sum_i gamma_i |0..1_i..0>: gammas[i] is the amplitude of the basis
/// state in which party i (0-based, leftmost ket digit = party 0) is excited.
ComplexTensor weighted_w_state(const std::vector<double>& gammas);

/// Squared overlap for the bipartition A|B of a weighted W state:
/// max(sum_A gamma^2, sum_B gamma^2) / sum gamma^2. Returns Lambda^2.
double weighted_w_overlap_oracle(const std::vector<double>& gammas, const Partition& bipartition);

// ---------------------------------------------------------------------------
// Named four- to seven-qubit states
// ---------------------------------------------------------------------------

/// Builds a qubit state from ket labels and coefficients, then normalizes.
/// Labels shorter than `qubits` are left-padded with zeros.
ComplexTensor state_from_kets(std::size_t qubits, const std::vector<std::pair<std::string, Complex>>& terms);

ComplexTensor ghz_state(std::size_t n);
/// Higuchi-Sudbery family with w = e^{it}; t = 2pi/3 is the HS state.
ComplexTensor hs_state(double t);
/// L family with w = e^{it}.
ComplexTensor l_state(double t);
/// BSSB4 family with w = e^{it}, normalized; t = pi/2 is bssb4_state().
ComplexTensor bssb4_family_state(double t);
ComplexTensor bssb4_state();
ComplexTensor bssb5_state();

/// Highly entangled 0/1-coefficient states phi_{qubits,index} found by
/// support sampling: (4,1..7), (5,1..2), (6,1..2), (7,1..2).
/// Throws UnknownCatalogIndex for anything else.
///
/// phi_{6,2} is printed in the source tables with a five-digit first ket
/// "11000"; it is stored here as |110000>, the reading that reproduces the
/// published overlap 0.3954 (|011000> gives 0.4168).
ComplexTensor phi_state(std::size_t qubits, std::size_t index);

/// (qubits, index) pairs accepted by phi_state, in catalog order.
std::vector<std::pair<std::size_t, std::size_t>> phi_catalog();

// ---------------------------------------------------------------------------
// Parametric families addressable by name
// ---------------------------------------------------------------------------

enum class FamilyKind {
    Dicke,
    WSuperposition,
    QuditSymmetric,
    WeightedW3,
    WeightedW4,
    W5,
    HS,
    L,
    BSSB4Family,
    BSSB4,
    BSSB5,
    PhiCatalog,
    GHZ,
};

/// A family name plus its parameters. Parameter names per family:
///   dicke: n, k          wsup: s, phi          qudit: n, d
///   weighted-w3: g1..g3  weighted-w4: g1..g4   w5: (none)
///   hs, l, bssb4-family: t                     bssb4, bssb5: (none)
///   phi: n, i            ghz: n
struct StateFamily {
    FamilyKind kind = FamilyKind::Dicke;
    std::map<std::string, double> params;

    /// Throws InvalidParams for an unknown family name.
    static StateFamily parse(std::string_view name);

    StateFamily with(const std::string& name, double value) const;
    std::string name() const;
    /// Throws InvalidParams if a parameter is unknown, missing, or out of domain.
    void validate() const;
};

std::string_view family_name(FamilyKind kind);

/// Constructs the family member described by f (unit norm).
ComplexTensor family_state(const StateFamily& f, std::size_t max_entries = default_max_entries);

} // namespace gme
