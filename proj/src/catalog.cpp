#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gme/error.hpp"
#include "gme/states.hpp"

namespace gme {

namespace {

using Terms = std::vector<std::pair<std::string, Complex>>;

Terms ones(const std::vector<std::string>& kets) {
    Terms terms;
    for (const auto& k : kets) terms.emplace_back(k, Complex{1.0, 0.0});
    return terms;
}

const std::map<std::pair<std::size_t, std::size_t>, std::vector<std::string>>& phi_table() {
    static const std::map<std::pair<std::size_t, std::size_t>, std::vector<std::string>> table = {
        {{4, 1}, {"0000", "1110", "0101", "1011"}},
        {{4, 2}, {"1100", "0010", "0101", "1011"}},
        {{4, 3}, {"1000", "0110", "0001", "1111"}},
        {{4, 4}, {"0100", "0010", "1001", "1111"}},
        {{4, 5}, {"0110", "1010", "0001", "1101"}},
        {{4, 6}, {"0010", "1110", "0101", "1001"}},
        {{4, 7}, {"0000", "1100", "0011", "1111"}},
        {{5, 1}, {"00000", "01100", "10010", "11001", "00111", "11111"}},
        {{5, 2}, {"11000", "01100", "10010", "10110", "00001", "01001", "00111", "11111"}},
        {{6, 1}, {"100000", "011000", "011110", "101110", "101001", "110101", "000011"}},
        // First ket is printed with five digits; see phi_state().
        {{6, 2}, {"110000", "001100", "010110", "100110", "001001", "100101", "111101", "101011"}},
        {{7, 1},
         {"0110000", "0011000", "1100100", "0001100", "1110010", "1001010", "1101001", "1010101", "0000011",
          "1111111"}},
        {{7, 2},
         {"0110000", "0000100", "1100100", "1011100", "1001010", "0011110", "0101101", "1110011", "0000011",
          "0011011", "1010111"}},
    };
    return table;
}

} // namespace

ComplexTensor state_from_kets(std::size_t qubits, const std::vector<std::pair<std::string, Complex>>& terms) {
    if (qubits == 0 || qubits >= 63) throw Error(ErrorCode::InvalidParams, "qubit count out of range");
    ComplexVector data(std::size_t{1} << qubits);
    for (const auto& [label, coeff] : terms) {
        if (label.empty() || label.size() > qubits) {
            throw Error(ErrorCode::InvalidParams, "ket '" + label + "' does not fit " + std::to_string(qubits) +
                                                      " qubits");
        }
        std::size_t flat = 0;
        for (char c : label) {
            if (c != '0' && c != '1') throw Error(ErrorCode::InvalidParams, "ket '" + label + "' is not binary");
            flat = flat * 2 + static_cast<std::size_t>(c - '0');
        }
        data[flat] += coeff;
    }
    return normalize(ComplexTensor(std::vector<std::size_t>(qubits, 2), std::move(data)));
}

ComplexTensor ghz_state(std::size_t n) {
    if (n == 0 || n >= 63) throw Error(ErrorCode::InvalidParams, "ghz needs 1 <= n < 63");
    return state_from_kets(n, {{std::string(n, '0'), 1.0}, {std::string(n, '1'), 1.0}});
}

ComplexTensor hs_state(double t) {
    const Complex w = std::polar(1.0, t);
    return state_from_kets(4, {{"0011", 1.0},
                               {"1100", 1.0},
                               {"1010", w},
                               {"0101", w},
                               {"1001", w * w},
                               {"0110", w * w}});
}

ComplexTensor l_state(double t) {
    const Complex w = std::polar(1.0, t);
    const Complex one{1.0, 0.0};
    return state_from_kets(4, {{"0000", one + w},
                               {"1111", one + w},
                               {"0011", one - w},
                               {"1100", one - w},
                               {"0101", w * w},
                               {"0110", w * w},
                               {"1001", w * w},
                               {"1010", w * w}});
}

ComplexTensor bssb4_family_state(double t) {
    const Complex w = std::polar(1.0, t);
    const Complex one{1.0, 0.0};
    return state_from_kets(4, {{"0110", one},
                               {"1011", one},
                               {"0010", w},
                               {"1111", w},
                               {"0101", one + w},
                               {"1000", one + w}});
}

ComplexTensor bssb4_state() {
    const Complex i{0.0, 1.0};
    const Complex one{1.0, 0.0};
    return state_from_kets(4, {{"0110", one},
                               {"1011", one},
                               {"0010", i},
                               {"1111", i},
                               {"0101", one + i},
                               {"1000", one + i}});
}

ComplexTensor bssb5_state() {
    return state_from_kets(5, {{"00001", 1.0},
                               {"00010", -1.0},
                               {"01000", 1.0},
                               {"01011", -1.0},
                               {"10001", 1.0},
                               {"10010", 1.0},
                               {"11100", 1.0},
                               {"11111", 1.0}});
}

ComplexTensor phi_state(std::size_t qubits, std::size_t index) {
    const auto& table = phi_table();
    const auto it = table.find({qubits, index});
    if (it == table.end()) {
        throw Error(ErrorCode::UnknownCatalogIndex,
                    "no catalog state phi_{" + std::to_string(qubits) + "," + std::to_string(index) + "}");
    }
    return state_from_kets(qubits, ones(it->second));
}

std::vector<std::pair<std::size_t, std::size_t>> phi_catalog() {
    std::vector<std::pair<std::size_t, std::size_t>> keys;
    for (const auto& [key, kets] : phi_table()) keys.push_back(key);
    return keys;
}

} // namespace gme
