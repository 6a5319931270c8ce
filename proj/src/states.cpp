#include "gme/states.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "gme/error.hpp"

namespace gme {

namespace {

void check_capacity(const std::vector<std::size_t>& dims, std::size_t max_entries) {
    const std::size_t n = element_count(dims);
    if (n > max_entries) {
        throw Error(ErrorCode::CapacityExceeded, std::to_string(n) + " amplitudes exceeds the cap of " +
                                                     std::to_string(max_entries));
    }
}

double binomial(std::size_t n, std::size_t k) {
    double c = 1.0;
    for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
    return c;
}

// x^(p/2) with 0^0 := 1.
double half_power(double x, double p) {
    if (p == 0.0) return 1.0;
    return std::pow(x, p / 2.0);
}

double w_lambda(double s, double theta) {
    return std::sqrt(3.0) / 2.0 * (std::sqrt(s) * std::cos(theta) + std::sqrt(1.0 - s) * std::sin(theta)) *
           std::sin(2.0 * theta);
}

double eval_cubic(const std::array<double, 4>& c, double t) {
    return ((c[0] * t + c[1]) * t + c[2]) * t + c[3];
}

double polish_root(const std::array<double, 4>& c, double t) {
    for (int i = 0; i < 4; ++i) {
        const double f = eval_cubic(c, t);
        const double df = (3.0 * c[0] * t + 2.0 * c[1]) * t + c[2];
        if (df == 0.0) break;
        const double next = t - f / df;
        if (!std::isfinite(next)) break;
        t = next;
    }
    return t;
}

std::vector<double> real_roots(const std::array<double, 4>& c) {
    std::vector<double> roots;
    if (std::abs(c[0]) < 1e-14) {
        // Degenerate at s = 1: 2 t^2 - 1 = 0 (plus a root at infinity, where lambda = 0).
        const double a = c[1], b = c[2], k = c[3];
        if (a == 0.0) {
            if (b != 0.0) roots.push_back(-k / b);
            return roots;
        }
        const double disc = b * b - 4.0 * a * k;
        if (disc < 0.0) return roots;
        const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
        roots.push_back(q / a);
        if (q != 0.0) roots.push_back(k / q);
        return roots;
    }
    Eigen::Matrix3d companion = Eigen::Matrix3d::Zero();
    companion(0, 0) = -c[1] / c[0];
    companion(0, 1) = -c[2] / c[0];
    companion(0, 2) = -c[3] / c[0];
    companion(1, 0) = 1.0;
    companion(2, 1) = 1.0;
    const Eigen::EigenSolver<Eigen::Matrix3d> solver(companion, false);
    for (const auto& z : solver.eigenvalues()) {
        if (std::abs(z.imag()) <= 1e-8 * (1.0 + std::abs(z.real()))) roots.push_back(z.real());
    }
    return roots;
}

std::size_t to_count(double v, const char* name) {
    if (!(v >= 0.0) || std::floor(v) != v || v > 1e9) {
        throw Error(ErrorCode::InvalidParams, std::string(name) + " must be a non-negative integer");
    }
    return static_cast<std::size_t>(v);
}

} // namespace

ComplexTensor dicke_state(std::size_t n, std::size_t k, std::size_t max_entries) {
    if (n == 0 || k > n) throw Error(ErrorCode::InvalidParams, "dicke state needs n >= 1 and 0 <= k <= n");
    if (n >= 63) throw Error(ErrorCode::CapacityExceeded, "too many qubits");
    std::vector<std::size_t> dims(n, 2);
    check_capacity(dims, max_entries);
    const double amp = 1.0 / std::sqrt(binomial(n, k));
    ComplexVector data(std::size_t{1} << n);
    for (std::size_t flat = 0; flat < data.size(); ++flat) {
        const auto ones = static_cast<std::size_t>(std::popcount(flat));
        if (n - ones == k) data[flat] = amp;
    }
    return ComplexTensor(std::move(dims), std::move(data));
}

double dicke_overlap_oracle(std::size_t n, std::size_t k) {
    if (n == 0 || k > n) throw Error(ErrorCode::InvalidParams, "dicke overlap needs n >= 1 and 0 <= k <= n");
    k = std::min(k, n - k);  // evaluate both mirror rows identically
    const double nn = static_cast<double>(n);
    const double kk = static_cast<double>(k);
    return std::sqrt(binomial(n, k)) * half_power(kk / nn, kk) * half_power((nn - kk) / nn, nn - kk);
}

ComplexTensor w_superposition_state(double s, double phi) {
    if (!(s >= 0.0 && s <= 1.0)) throw Error(ErrorCode::InvalidParams, "s must lie in [0, 1]");
    if (!std::isfinite(phi)) throw Error(ErrorCode::InvalidParams, "phi must be finite");
    const Complex w_amp = std::sqrt(s / 3.0);
    const Complex wt_amp = std::sqrt((1.0 - s) / 3.0) * std::polar(1.0, phi);
    ComplexVector data(8);
    for (std::size_t flat = 0; flat < 8; ++flat) {
        switch (std::popcount(flat)) {
        case 1: data[flat] = w_amp; break;
        case 2: data[flat] = wt_amp; break;
        default: break;
        }
    }
    return normalize(ComplexTensor({2, 2, 2}, std::move(data)));
}

std::array<double, 4> w_superposition_cubic(double s) {
    const double a = std::sqrt(1.0 - s);
    const double b = std::sqrt(s);
    return {a, 2.0 * b, -2.0 * a, -b};
}

WOverlapContext w_superposition_overlap_oracle(double s) {
    if (!(s >= 0.0 && s <= 1.0)) throw Error(ErrorCode::InvalidParams, "s must lie in [0, 1]");
    const auto cubic = w_superposition_cubic(s);
    WOverlapContext best;
    best.s = s;
    best.lambda = -1.0;
    for (double root : real_roots(cubic)) {
        const double t = std::abs(cubic[0]) < 1e-14 ? root : polish_root(cubic, root);
        const double theta = std::atan(t);
        const double lambda = std::abs(w_lambda(s, theta));
        if (lambda > best.lambda) {
            best.t = t;
            best.theta = theta;
            best.lambda = lambda;
        }
    }
    return best;
}

ComplexTensor qudit_symmetric_state(std::size_t n, std::size_t d, std::size_t max_entries) {
    if (n < 2 || d < 2) throw Error(ErrorCode::InvalidParams, "qudit state needs n >= 2 and d >= 2");
    std::vector<std::size_t> dims(n, d);
    check_capacity(dims, max_entries);
    ComplexVector data(element_count(dims));
    const double amp = 1.0 / std::sqrt(static_cast<double>(n));
    std::size_t stride = 1;
    for (std::size_t party = n; party-- > 0;) {
        data[(d - 1) * stride] = amp;
        stride *= d;
    }
    return ComplexTensor(std::move(dims), std::move(data));
}

double qudit_overlap_oracle(std::size_t n) {
    if (n < 2) throw Error(ErrorCode::InvalidParams, "qudit overlap needs n >= 2");
    const double nn = static_cast<double>(n);
    return std::sqrt(nn) * std::sqrt(1.0 / nn) * std::pow((nn - 1.0) / nn, (nn - 1.0) / 2.0);
}

ComplexTensor weighted_w_state(const std::vector<double>& gammas) {
    const std::size_t m = gammas.size();
    if (m < 2 || m > 20) throw Error(ErrorCode::InvalidParams, "weighted W state needs 2..20 parties");
    for (double g : gammas) {
        if (!(g > 0.0) || !std::isfinite(g)) throw Error(ErrorCode::InvalidParams, "gammas must be positive");
    }
    ComplexVector data(std::size_t{1} << m);
    for (std::size_t i = 0; i < m; ++i) data[std::size_t{1} << (m - 1 - i)] = gammas[i];
    return normalize(ComplexTensor(std::vector<std::size_t>(m, 2), std::move(data)));
}

double weighted_w_overlap_oracle(const std::vector<double>& gammas, const Partition& bipartition) {
    if (gammas.size() != 3 && gammas.size() != 4) {
        throw Error(ErrorCode::InvalidParams, "weighted W overlap is defined for 3 or 4 parties");
    }
    for (double g : gammas) {
        if (!(g > 0.0) || !std::isfinite(g)) throw Error(ErrorCode::InvalidParams, "gammas must be positive");
    }
    if (bipartition.party_count() != gammas.size() || bipartition.block_count() != 2) {
        throw Error(ErrorCode::InvalidParams, "expected a bipartition of " + std::to_string(gammas.size()) +
                                                  " parties");
    }
    double total = 0.0;
    for (double g : gammas) total += g * g;
    double heavier = 0.0;
    for (const auto& block : bipartition.blocks()) {
        double w = 0.0;
        for (auto party : block) w += gammas[party] * gammas[party];
        heavier = std::max(heavier, w);
    }
    return heavier / total;
}

// ---------------------------------------------------------------------------

std::string_view family_name(FamilyKind kind) {
    switch (kind) {
    case FamilyKind::Dicke: return "dicke";
    case FamilyKind::WSuperposition: return "wsup";
    case FamilyKind::QuditSymmetric: return "qudit";
    case FamilyKind::WeightedW3: return "weighted-w3";
    case FamilyKind::WeightedW4: return "weighted-w4";
    case FamilyKind::W5: return "w5";
    case FamilyKind::HS: return "hs";
    case FamilyKind::L: return "l";
    case FamilyKind::BSSB4Family: return "bssb4-family";
    case FamilyKind::BSSB4: return "bssb4";
    case FamilyKind::BSSB5: return "bssb5";
    case FamilyKind::PhiCatalog: return "phi";
    case FamilyKind::GHZ: return "ghz";
    }
    return "unknown";
}

namespace {

struct ParamSpec {
    std::string name;
    bool required;
    double fallback;
};

std::vector<ParamSpec> param_specs(FamilyKind kind) {
    switch (kind) {
    case FamilyKind::Dicke: return {{"n", true, 0}, {"k", true, 0}};
    case FamilyKind::WSuperposition: return {{"s", true, 0}, {"phi", false, 0.0}};
    case FamilyKind::QuditSymmetric: return {{"n", true, 0}, {"d", true, 0}};
    case FamilyKind::WeightedW3: return {{"g1", true, 0}, {"g2", true, 0}, {"g3", true, 0}};
    case FamilyKind::WeightedW4: return {{"g1", true, 0}, {"g2", true, 0}, {"g3", true, 0}, {"g4", true, 0}};
    case FamilyKind::HS: return {{"t", false, 2.0 * std::numbers::pi / 3.0}};
    case FamilyKind::L: return {{"t", false, 0.0}};
    case FamilyKind::BSSB4Family: return {{"t", false, std::numbers::pi / 2.0}};
    case FamilyKind::PhiCatalog: return {{"n", true, 0}, {"i", true, 0}};
    case FamilyKind::GHZ: return {{"n", true, 0}};
    case FamilyKind::W5:
    case FamilyKind::BSSB4:
    case FamilyKind::BSSB5: return {};
    }
    return {};
}

double param(const StateFamily& f, const std::string& name) {
    if (auto it = f.params.find(name); it != f.params.end()) return it->second;
    for (const auto& spec : param_specs(f.kind)) {
        if (spec.name == name) return spec.fallback;
    }
    throw Error(ErrorCode::InvalidParams, "family " + f.name() + " has no parameter " + name);
}

} // namespace

StateFamily StateFamily::parse(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    for (auto kind : {FamilyKind::Dicke, FamilyKind::WSuperposition, FamilyKind::QuditSymmetric,
                      FamilyKind::WeightedW3, FamilyKind::WeightedW4, FamilyKind::W5, FamilyKind::HS,
                      FamilyKind::L, FamilyKind::BSSB4Family, FamilyKind::BSSB4, FamilyKind::BSSB5,
                      FamilyKind::PhiCatalog, FamilyKind::GHZ}) {
        if (family_name(kind) == lower) return StateFamily{kind, {}};
    }
    throw Error(ErrorCode::InvalidParams, "unknown family '" + std::string(name) + "'");
}

StateFamily StateFamily::with(const std::string& name, double value) const {
    StateFamily copy = *this;
    copy.params[name] = value;
    return copy;
}

std::string StateFamily::name() const { return std::string(family_name(kind)); }

void StateFamily::validate() const {
    const auto specs = param_specs(kind);
    for (const auto& [key, value] : params) {
        const bool known = std::any_of(specs.begin(), specs.end(), [&](const auto& s) { return s.name == key; });
        if (!known) throw Error(ErrorCode::InvalidParams, "family " + name() + " has no parameter " + key);
        if (!std::isfinite(value)) throw Error(ErrorCode::InvalidParams, "parameter " + key + " must be finite");
    }
    for (const auto& spec : specs) {
        if (spec.required && !params.contains(spec.name)) {
            throw Error(ErrorCode::InvalidParams, "family " + name() + " requires parameter " + spec.name);
        }
    }
    switch (kind) {
    case FamilyKind::Dicke: {
        const auto n = to_count(param(*this, "n"), "n");
        const auto k = to_count(param(*this, "k"), "k");
        if (n == 0 || k > n) throw Error(ErrorCode::InvalidParams, "dicke needs n >= 1 and 0 <= k <= n");
        break;
    }
    case FamilyKind::WSuperposition: {
        const double s = param(*this, "s");
        if (!(s >= 0.0 && s <= 1.0)) throw Error(ErrorCode::InvalidParams, "s must lie in [0, 1]");
        break;
    }
    case FamilyKind::QuditSymmetric:
        if (to_count(param(*this, "n"), "n") < 2 || to_count(param(*this, "d"), "d") < 2) {
            throw Error(ErrorCode::InvalidParams, "qudit needs n >= 2 and d >= 2");
        }
        break;
    case FamilyKind::WeightedW3:
    case FamilyKind::WeightedW4:
        for (const auto& spec : specs) {
            if (!(param(*this, spec.name) > 0.0)) throw Error(ErrorCode::InvalidParams, "gammas must be positive");
        }
        break;
    case FamilyKind::PhiCatalog:
        to_count(param(*this, "n"), "n");
        to_count(param(*this, "i"), "i");
        break;
    case FamilyKind::GHZ:
        if (to_count(param(*this, "n"), "n") < 1) throw Error(ErrorCode::InvalidParams, "ghz needs n >= 1");
        break;
    default: break;
    }
}

ComplexTensor family_state(const StateFamily& f, std::size_t max_entries) {
    f.validate();
    auto count = [&](const char* name) { return to_count(param(f, name), name); };
    auto gammas = [&](std::size_t m) {
        std::vector<double> g;
        for (std::size_t i = 1; i <= m; ++i) g.push_back(param(f, "g" + std::to_string(i)));
        return g;
    };
    switch (f.kind) {
    case FamilyKind::Dicke: return dicke_state(count("n"), count("k"), max_entries);
    case FamilyKind::WSuperposition: return w_superposition_state(param(f, "s"), param(f, "phi"));
    case FamilyKind::QuditSymmetric: return qudit_symmetric_state(count("n"), count("d"), max_entries);
    case FamilyKind::WeightedW3: return weighted_w_state(gammas(3));
    case FamilyKind::WeightedW4: return weighted_w_state(gammas(4));
    case FamilyKind::W5: return dicke_state(5, 4, max_entries);
    case FamilyKind::HS: return hs_state(param(f, "t"));
    case FamilyKind::L: return l_state(param(f, "t"));
    case FamilyKind::BSSB4Family: return bssb4_family_state(param(f, "t"));
    case FamilyKind::BSSB4: return bssb4_state();
    case FamilyKind::BSSB5: return bssb5_state();
    case FamilyKind::PhiCatalog: return phi_state(count("n"), count("i"));
    case FamilyKind::GHZ: return ghz_state(count("n"));
    }
    throw Error(ErrorCode::InvalidParams, "unhandled family");
}

} // namespace gme
