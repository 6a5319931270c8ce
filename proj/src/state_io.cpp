#include "gme/state_io.hpp"

#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "gme/error.hpp"

namespace gme {

using nlohmann::json;

ComplexTensor parse_state_json(std::string_view text, bool normalize_state) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::MalformedInput, std::string("state file is not valid JSON: ") + e.what());
    }
    try {
        if (!doc.is_object()) throw Error(ErrorCode::MalformedInput, "state file must be a JSON object");
        if (!doc.contains("dims") || !doc.at("dims").is_array()) {
            throw Error(ErrorCode::MalformedInput, "state file needs a \"dims\" array");
        }
        std::vector<std::size_t> dims;
        for (const auto& d : doc.at("dims")) {
            if (!d.is_number_integer() || d.get<long long>() < 1) {
                throw Error(ErrorCode::MalformedInput, "dims must be positive integers");
            }
            dims.push_back(d.get<std::size_t>());
        }
        if (dims.empty()) throw Error(ErrorCode::MalformedInput, "dims must not be empty");
        const std::size_t size = element_count(dims);
        ComplexVector data(size);
        std::vector<bool> assigned(size, false);

        const auto amps = doc.value("amplitudes", json::array());
        if (!amps.is_array()) throw Error(ErrorCode::MalformedInput, "\"amplitudes\" must be an array");
        for (const auto& entry : amps) {
            if (!entry.is_object() || !entry.contains("idx") || !entry.at("idx").is_array()) {
                throw Error(ErrorCode::MalformedInput, "each amplitude needs an \"idx\" array");
            }
            std::vector<std::size_t> idx;
            for (const auto& i : entry.at("idx")) {
                if (!i.is_number_integer() || i.get<long long>() < 0) {
                    throw Error(ErrorCode::MalformedInput, "idx entries must be non-negative integers");
                }
                idx.push_back(i.get<std::size_t>());
            }
            if (idx.size() != dims.size()) {
                throw Error(ErrorCode::MalformedInput, "idx " + entry.at("idx").dump() + " does not fit dims");
            }
            std::size_t flat = 0;
            for (std::size_t l = 0; l < dims.size(); ++l) {
                if (idx[l] >= dims[l]) {
                    throw Error(ErrorCode::MalformedInput, "idx " + entry.at("idx").dump() + " does not fit dims");
                }
                flat = flat * dims[l] + idx[l];
            }
            if (assigned[flat]) {
                throw Error(ErrorCode::MalformedInput, "idx " + entry.at("idx").dump() + " listed twice");
            }
            assigned[flat] = true;
            const double re = entry.value("re", 0.0);
            const double im = entry.value("im", 0.0);
            data[flat] = {re, im};
        }
        ComplexTensor t(std::move(dims), std::move(data));
        return normalize_state ? normalize(t) : t;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedInput, std::string("state file has the wrong shape: ") + e.what());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidTensor || e.code() == ErrorCode::CapacityExceeded) {
            throw Error(ErrorCode::MalformedInput, e.what());
        }
        throw;
    }
}

ComplexTensor load_state_file(const std::filesystem::path& path, bool normalize_state) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::MalformedInput, "cannot open state file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_state_json(buffer.str(), normalize_state);
}

std::string state_to_json(const ComplexTensor& t) {
    json amps = json::array();
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
        const Complex z = t[flat];
        if (z == Complex{}) continue;
        amps.push_back({{"idx", t.multi_index(flat)}, {"re", z.real()}, {"im", z.imag()}});
    }
    json doc{{"dims", t.dims()}, {"amplitudes", std::move(amps)}};
    return doc.dump();
}

void save_state_file(const std::filesystem::path& path, const ComplexTensor& t) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::MalformedInput, "cannot write state file " + path.string());
    out << state_to_json(t) << '\n';
}

std::uint64_t tensor_digest(const ComplexTensor& t) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&](const void* p, std::size_t n) {
        const auto* bytes = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= bytes[i];
            h *= 0x100000001b3ULL;
        }
    };
    for (auto d : t.dims()) {
        const auto v = static_cast<std::uint64_t>(d);
        mix(&v, sizeof v);
    }
    for (const auto& z : t.data()) {
        const double parts[2] = {z.real(), z.imag()};
        mix(parts, sizeof parts);
    }
    return h;
}

} // namespace gme
