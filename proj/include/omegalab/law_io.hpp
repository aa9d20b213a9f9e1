#pragma once
// JSON law, quantization and length specifications.
//
//   {"atoms":    [{"w": 1, "p": 0.5}, ...],
//    "segments": [{"kind": "const",  "a": 2, "b": 3, "value": 0.5},
//                 {"kind": "linear", "a": 3, "b": 4, "ya": 0.1, "yb": 0.3},
//                 {"kind": "grid",   "a": 4, "b": 5, "values": [...]}],
//    "encode_atoms": [1, ...],                      optional quantization
//    "cells":    [{"a": 2, "b": 2.5}, ...],
//    "lengths":  {"kind": "implied", "shift": 0.0, "allow_negative": false}}

#include <json.hpp>

#include <string>
#include <vector>

#include "errors.hpp"
#include "mixedlaw.hpp"
#include "quantizer.hpp"

namespace omegalab {

namespace detail {

inline const nlohmann::json& require(const nlohmann::json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) throw InvalidInput(path, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) throw InvalidInput(path + "." + key, "missing");
    return *it;
}

inline double number(const nlohmann::json& v, const std::string& path) {
    if (!v.is_number()) throw InvalidInput(path, "expected a number");
    return v.get<double>();
}

inline double number_field(const nlohmann::json& obj, const std::string& key, const std::string& path) {
    return number(require(obj, key, path), path + "." + key);
}

inline void reject_unknown(const nlohmann::json& obj, std::initializer_list<const char*> known,
                           const std::string& path) {
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw InvalidInput(path.empty() ? key : path + "." + key, "unknown field");
    }
}

}  // namespace detail

inline MixedLaw parse_law(const nlohmann::json& doc) {
    if (!doc.is_object()) throw InvalidInput("$", "law must be a JSON object");
    detail::reject_unknown(doc, {"atoms", "segments", "encode_atoms", "cells", "lengths"}, "");
    std::vector<Atom> atoms;
    if (const auto it = doc.find("atoms"); it != doc.end()) {
        if (!it->is_array()) throw InvalidInput("atoms", "expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string path = "atoms[" + std::to_string(i) + "]";
            const auto& a = (*it)[i];
            if (!a.is_object()) throw InvalidInput(path, "expected an object");
            detail::reject_unknown(a, {"w", "p"}, path);
            atoms.push_back({detail::number_field(a, "w", path), detail::number_field(a, "p", path)});
        }
    }
    std::vector<Segment> segments;
    if (const auto it = doc.find("segments"); it != doc.end()) {
        if (!it->is_array()) throw InvalidInput("segments", "expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string path = "segments[" + std::to_string(i) + "]";
            const auto& s = (*it)[i];
            const auto& kind = detail::require(s, "kind", path);
            if (!kind.is_string()) throw InvalidInput(path + ".kind", "expected a string");
            const double a = detail::number_field(s, "a", path);
            const double b = detail::number_field(s, "b", path);
            const auto k = kind.get<std::string>();
            if (k == "const") {
                detail::reject_unknown(s, {"kind", "a", "b", "value"}, path);
                segments.push_back(Segment::constant(a, b, detail::number_field(s, "value", path)));
            } else if (k == "linear") {
                detail::reject_unknown(s, {"kind", "a", "b", "ya", "yb"}, path);
                segments.push_back(Segment::linear(a, b, detail::number_field(s, "ya", path),
                                                   detail::number_field(s, "yb", path)));
            } else if (k == "grid") {
                detail::reject_unknown(s, {"kind", "a", "b", "values"}, path);
                const auto& vals = detail::require(s, "values", path);
                if (!vals.is_array()) throw InvalidInput(path + ".values", "expected an array");
                std::vector<double> samples;
                for (std::size_t j = 0; j < vals.size(); ++j) {
                    samples.push_back(detail::number(vals[j], path + ".values[" + std::to_string(j) + "]"));
                }
                segments.push_back(Segment::grid(a, b, std::move(samples)));
            } else {
                throw InvalidInput(path + ".kind", "expected const, linear or grid");
            }
        }
    }
    return MixedLaw::make(std::move(atoms), std::move(segments));
}

inline bool has_quantization(const nlohmann::json& doc) {
    return doc.is_object() && (doc.contains("encode_atoms") || doc.contains("cells"));
}

inline Quantization parse_quantization(const nlohmann::json& doc) {
    if (!doc.is_object()) throw InvalidInput("$", "quantization must be a JSON object");
    Quantization q;
    if (const auto it = doc.find("encode_atoms"); it != doc.end()) {
        if (!it->is_array()) throw InvalidInput("encode_atoms", "expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            q.encode_atoms.push_back(detail::number((*it)[i], "encode_atoms[" + std::to_string(i) + "]"));
        }
    }
    if (const auto it = doc.find("cells"); it != doc.end()) {
        if (!it->is_array()) throw InvalidInput("cells", "expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string path = "cells[" + std::to_string(i) + "]";
            const auto& c = (*it)[i];
            if (!c.is_object()) throw InvalidInput(path, "expected an object");
            detail::reject_unknown(c, {"a", "b"}, path);
            q.cells.push_back({detail::number_field(c, "a", path), detail::number_field(c, "b", path)});
        }
    }
    return q;
}

/// Lengths from an optional "lengths" object; implied lengths when absent.
inline LengthAssignment parse_lengths(const nlohmann::json& doc, const MixedLaw& law) {
    ImpliedOptions options;
    double shift = 0;
    if (doc.is_object()) {
        if (const auto it = doc.find("lengths"); it != doc.end()) {
            const std::string path = "lengths";
            if (!it->is_object()) throw InvalidInput(path, "expected an object");
            detail::reject_unknown(*it, {"kind", "shift", "allow_negative"}, path);
            const auto& kind = detail::require(*it, "kind", path);
            if (!kind.is_string() || kind.get<std::string>() != "implied") {
                throw InvalidInput(path + ".kind", "only \"implied\" is supported");
            }
            if (const auto s = it->find("shift"); s != it->end()) shift = detail::number(*s, path + ".shift");
            if (const auto n = it->find("allow_negative"); n != it->end()) {
                if (!n->is_boolean()) throw InvalidInput(path + ".allow_negative", "expected a boolean");
                options.allow_negative = n->get<bool>();
            }
        }
    }
    auto lens = implied_lengths(law, options);
    return shift == 0 ? lens : shifted(std::move(lens), shift);
}

}  // namespace omegalab
