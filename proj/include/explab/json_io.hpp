// json_io.hpp — JSON and CSV surfaces: the matrix format
// {"dim": d, "re": [[...]], "im": [[...]]}, classical weight vectors,
// hypothesis sets, counterexample reports, and curve emission. Extended reals
// serialize +inf as the string "inf", never as a large float.

#pragma once

#include <fstream>
#include <json.hpp>
#include <string>
#include <vector>

#include "explab/classical.hpp"
#include "explab/composite.hpp"
#include "explab/errors.hpp"
#include "explab/extreal.hpp"
#include "explab/gallery.hpp"
#include "explab/hermitian.hpp"

namespace explab::io {

using json = nlohmann::ordered_json;

inline json extreal_to_json(ExtReal x) {
    if (x.is_pos_inf()) return json("inf");
    if (x.is_neg_inf()) return json("-inf");
    return json(x.value());
}

inline ExtReal extreal_from_json(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return ExtReal::infinity();
        if (j.get<std::string>() == "-inf") return ExtReal(-kInf);
        throw ParseError("extreal_from_json: expected a number, \"inf\" or \"-inf\"");
    }
    return ExtReal(j.get<double>());
}

// --------------------------------------------------------------------------
// matrices and states
// --------------------------------------------------------------------------

inline json matrix_to_json(const herm::Matrix& m) {
    json re = json::array(), im = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row_re = json::array(), row_im = json::array();
        for (int j = 0; j < m.cols(); ++j) {
            row_re.push_back(m(i, j).real());
            row_im.push_back(m(i, j).imag());
        }
        re.push_back(std::move(row_re));
        im.push_back(std::move(row_im));
    }
    return json{{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline herm::Matrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("re"))
        throw ParseError("matrix_from_json: expected {\"dim\", \"re\", [\"im\"]}");
    const int dim = j.at("dim").get<int>();
    if (dim < 1) throw ParseError("matrix_from_json: dim must be positive");
    herm::Matrix m(dim, dim);
    const json& re = j.at("re");
    const json* im = j.contains("im") ? &j.at("im") : nullptr;
    if (static_cast<int>(re.size()) != dim)
        throw ParseError("matrix_from_json: re has wrong row count");
    for (int r = 0; r < dim; ++r) {
        if (static_cast<int>(re.at(r).size()) != dim)
            throw ParseError("matrix_from_json: re row " + std::to_string(r) + " has wrong length");
        for (int c = 0; c < dim; ++c) {
            double x = re.at(r).at(c).get<double>();
            double y = im ? im->at(r).at(c).get<double>() : 0.0;
            m(r, c) = std::complex<double>(x, y);
        }
    }
    return m;
}

inline json weights_to_json(const ClassicalWeight& w) {
    json a = json::array();
    for (std::size_t i = 0; i < w.size(); ++i) a.push_back(w[i]);
    return a;
}

inline ClassicalWeight weights_from_json(const json& j) {
    const json& arr = (j.is_object() && j.contains("weights")) ? j.at("weights") : j;
    if (!arr.is_array() || arr.empty())
        throw ParseError("weights_from_json: expected a nonempty array of weights");
    std::vector<double> w;
    w.reserve(arr.size());
    for (const auto& x : arr) w.push_back(x.get<double>());
    return ClassicalWeight(std::move(w));
}

/// A state file is either a weight array (classical) or a matrix object.
inline bool json_is_quantum_state(const json& j) { return j.is_object() && j.contains("dim"); }

// --------------------------------------------------------------------------
// hypothesis sets: {"kind": "classical"|"quantum", "label":..., "states":[...]}
// --------------------------------------------------------------------------

inline json hypothesis_set_to_json(const composite::HypothesisSet& h) {
    json states = json::array();
    if (h.is_classical())
        for (const auto& w : h.classical) states.push_back(weights_to_json(w));
    else
        for (const auto& q : h.quantum) states.push_back(matrix_to_json(q.matrix()));
    return json{{"kind", h.is_classical() ? "classical" : "quantum"},
                {"label", h.label},
                {"states", std::move(states)}};
}

inline composite::HypothesisSet hypothesis_set_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("states"))
        throw ParseError("hypothesis_set_from_json: expected {\"kind\", \"label\", \"states\"}");
    composite::HypothesisSet h;
    h.label = j.value("label", "");
    const std::string kind = j.at("kind").get<std::string>();
    for (const auto& s : j.at("states")) {
        if (kind == "classical")
            h.classical.push_back(weights_from_json(s));
        else if (kind == "quantum")
            h.quantum.emplace_back(matrix_from_json(s));
        else
            throw ParseError("hypothesis_set_from_json: kind must be classical or quantum");
    }
    h.validate();
    return h;
}

// --------------------------------------------------------------------------
// reports and curves
// --------------------------------------------------------------------------

inline json report_to_json(const gallery::CounterexampleReport& rep) {
    json params = json::object(), values = json::object();
    for (const auto& kv : rep.params) params[kv.first] = kv.second;
    for (const auto& kv : rep.values) values[kv.first] = extreal_to_json(kv.second);
    json rows = json::array();
    for (const auto& row : rep.inequalities)
        rows.push_back(json{{"name", row.name},
                            {"lhs", row.lhs},
                            {"relation", row.relation},
                            {"rhs", row.rhs},
                            {"slack", row.slack},
                            {"tol", row.tol},
                            {"pass", row.pass}});
    return json{{"name", rep.name},
                {"params", std::move(params)},
                {"values", std::move(values)},
                {"inequalities", std::move(rows)},
                {"all_pass", rep.all_pass()}};
}

/// CSV with stable (x, value) column order and "inf" sentinels.
inline std::string curve_to_csv(const std::vector<std::pair<double, ExtReal>>& points,
                                const std::string& x_name = "x",
                                const std::string& value_name = "value") {
    std::string out = x_name + "," + value_name + "\n";
    char buf[64];
    for (const auto& [x, v] : points) {
        std::snprintf(buf, sizeof(buf), "%.17g", x);
        out += buf;
        out += ",";
        if (v.is_pos_inf())
            out += "inf";
        else if (v.is_neg_inf())
            out += "-inf";
        else {
            std::snprintf(buf, sizeof(buf), "%.17g", v.value());
            out += buf;
        }
        out += "\n";
    }
    return out;
}

inline json curve_to_json(const std::vector<std::pair<double, ExtReal>>& points,
                          const std::string& x_name = "x",
                          const std::string& value_name = "value") {
    json arr = json::array();
    for (const auto& [x, v] : points) arr.push_back(json{{x_name, x}, {value_name, extreal_to_json(v)}});
    return arr;
}

// --------------------------------------------------------------------------
// file helpers
// --------------------------------------------------------------------------

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("load_json: cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError("load_json: " + path + ": " + e.what());
    }
    return j;
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ParseError("write_text: cannot open " + path);
    out << text;
}

} // namespace explab::io
