#pragma once

// State file format:
//   {"kind": "pure"|"density", "n_qubits": n, "data": [[re, im], ...]}
// with row-major data for density matrices. The loader enforces every state
// invariant and reports which one failed.

#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "qcr/serialize.hpp"
#include "qcr/states.hpp"

namespace qcr {

using LoadedState = std::variant<PureState, DensityMatrix>;

inline LoadedState load_state_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw StateValidationError("format", std::string("not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("kind") || !doc.contains("n_qubits") || !doc.contains("data"))
        throw StateValidationError("format", "expected object with keys kind, n_qubits, data");
    const std::string kind = doc["kind"].get<std::string>();
    if (kind != "pure" && kind != "density")
        throw StateValidationError("format", "kind must be 'pure' or 'density', got '" + kind + "'");
    if (!doc["n_qubits"].is_number_unsigned() || doc["n_qubits"].get<std::uint64_t>() < 1)
        throw StateValidationError("format", "n_qubits must be a positive integer");
    const std::size_t n = doc["n_qubits"].get<std::size_t>();
    if (n > 5) throw StateValidationError("format", "n_qubits must be <= 5");

    std::vector<cplx> data;
    for (const auto& item : doc["data"]) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number())
            throw StateValidationError("format", "data entries must be [re, im] number pairs");
        data.emplace_back(item[0].get<double>(), item[1].get<double>());
    }

    if (kind == "pure") return PureState::validated(n, std::move(data));

    const std::size_t dim = std::size_t(1) << n;
    if (data.size() != dim * dim)
        throw StateValidationError("shape", "expected " + std::to_string(dim * dim) + " matrix entries, got " +
                                                std::to_string(data.size()));
    return DensityMatrix::validated(n, ComplexMatrix(dim, std::move(data)));
}

inline LoadedState load_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw StateValidationError("format", "cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_state_from_json(buf.str());
}

inline std::string state_to_json(const PureState& psi) {
    std::string out = "{\"kind\": \"pure\", \"n_qubits\": " + std::to_string(psi.n_qubits) + ", \"data\": [";
    for (std::size_t i = 0; i < psi.amplitudes.size(); ++i) {
        if (i) out += ", ";
        out += "[" + fmt_double(psi.amplitudes[i].real()) + ", " + fmt_double(psi.amplitudes[i].imag()) + "]";
    }
    out += "]}";
    return out;
}

inline std::string state_to_json(const DensityMatrix& rho) {
    std::string out = "{\"kind\": \"density\", \"n_qubits\": " + std::to_string(rho.n_qubits) + ", \"data\": [";
    const auto& entries = rho.matrix.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i) out += ", ";
        out += "[" + fmt_double(entries[i].real()) + ", " + fmt_double(entries[i].imag()) + "]";
    }
    out += "]}";
    return out;
}

}  // namespace qcr
