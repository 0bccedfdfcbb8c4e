#pragma once

// Deterministic text emission. All numbers print as 15 significant digits in
// lowercase scientific notation so that repeated runs (and CSV vs JSON
// renderings of the same run) are byte-identical. nlohmann/json is used only
// for parsing inputs; output documents are assembled here.

#include <cstdio>
#include <string>
#include <vector>

#include "qcr/measures.hpp"
#include "qcr/relations.hpp"

namespace qcr {

inline std::string fmt_double(double v) {
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.14e", v);
    return buf;
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

// Minimal ordered JSON assembly: values are pre-rendered strings.
class JsonObject {
  public:
    void add_raw(const std::string& key, const std::string& rendered) { fields_.emplace_back(key, rendered); }
    void add_string(const std::string& key, const std::string& value) {
        add_raw(key, "\"" + json_escape(value) + "\"");
    }
    void add_number(const std::string& key, double value) { add_raw(key, fmt_double(value)); }
    void add_integer(const std::string& key, long long value) { add_raw(key, std::to_string(value)); }
    void add_bool(const std::string& key, bool value) { add_raw(key, value ? "true" : "false"); }
    void add_null(const std::string& key) { add_raw(key, "null"); }

    std::string render() const {
        std::string out = "{";
        for (std::size_t i = 0; i < fields_.size(); ++i) {
            if (i) out += ", ";
            out += "\"" + json_escape(fields_[i].first) + "\": " + fields_[i].second;
        }
        out += "}";
        return out;
    }

  private:
    std::vector<std::pair<std::string, std::string>> fields_;
};

inline std::string json_array(const std::vector<std::string>& rendered) {
    std::string out = "[";
    for (std::size_t i = 0; i < rendered.size(); ++i) {
        if (i) out += ", ";
        out += rendered[i];
    }
    out += "]";
    return out;
}

inline std::string to_json(const RelationReport& r) {
    JsonObject obj;
    obj.add_string("relation", r.relation_id);
    obj.add_string("kind", r.kind == RelationKind::Identity ? "identity" : "lower_bound");
    JsonObject terms;
    for (const auto& [name, value] : r.terms) terms.add_number(name, value);
    obj.add_raw("terms", terms.render());
    obj.add_number("lhs", r.lhs);
    obj.add_number("rhs", r.rhs);
    obj.add_number("residual", r.residual);
    obj.add_number("tolerance", r.tolerance);
    obj.add_bool("pass", r.pass);
    return obj.render();
}

inline std::string to_json(const BatchSummary& s) {
    JsonObject obj;
    obj.add_integer("total", (long long)s.total);
    obj.add_integer("passed", (long long)s.passed);
    obj.add_number("max_abs_residual", s.max_abs_residual);
    return obj.render();
}

inline std::string to_json(const MeasureSet& m) {
    JsonObject obj;
    obj.add_integer("n_qubits", (long long)m.n_qubits);
    obj.add_number("mixedness", m.mixedness);
    obj.add_number("purity", m.purity);
    obj.add_number("tr_rho_rhotilde", m.tr_rho_rhotilde);
    obj.add_number("hs_to_spinflip", m.hs_to_spinflip);
    obj.add_number("indistinguishability", m.indistinguishability);
    if (m.tangle) obj.add_number("tangle", *m.tangle);
    if (m.separable_uncertainty) {
        obj.add_number("separable_uncertainty", *m.separable_uncertainty);
        obj.add_bool("eta_noise_clipped", m.eta_noise_clipped);
    }
    std::vector<std::string> per_qubit;
    for (const SingleQubitProperties& q : m.per_qubit) {
        JsonObject qo;
        qo.add_number("coherence", q.coherence);
        qo.add_number("predictability", q.predictability);
        qo.add_number("s2bar", q.s2bar);
        per_qubit.push_back(qo.render());
    }
    obj.add_raw("per_qubit", json_array(per_qubit));
    return obj.render();
}

// CSV: header row, comma separated, '\n' endings, numeric payloads only.
inline std::string csv_row(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ",";
        out += cells[i];
    }
    out += "\n";
    return out;
}

}  // namespace qcr
