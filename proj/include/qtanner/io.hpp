#ifndef QTANNER_IO_HPP
#define QTANNER_IO_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"
#include "qtanner/error.hpp"
#include "qtanner/gf2.hpp"
#include "qtanner/graph.hpp"

namespace qtanner {

using Json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void field_error(const std::string& field, const std::string& what)
{
    throw Error(ErrorKind::parse, "field '" + field + "': " + what);
}

inline long long integer_field(const Json& j, const std::string& field)
{
    if (!j.is_number_integer()) field_error(field, "expected an integer");
    return j.get<long long>();
}

inline const Json& member(const Json& obj, const char* key)
{
    if (!obj.contains(key)) field_error(key, "missing");
    return obj.at(key);
}

} // namespace detail

/// Graph spec: {"n", "delta", "perms": [[...]] (0-based images), "pairing": [...]
/// (1-based labels), "partition": [0|1, ...] optional}.
inline SchreierSpec schreier_spec_from_json(const Json& j)
{
    if (!j.is_object()) throw Error(ErrorKind::parse, "graph spec must be a JSON object");
    for (const auto& [key, unused] : j.items()) {
        (void)unused;
        if (key != "n" && key != "delta" && key != "perms" && key != "pairing" && key != "partition")
            detail::field_error(key, "unknown field");
    }
    const long long n = detail::integer_field(detail::member(j, "n"), "n");
    const long long delta = detail::integer_field(detail::member(j, "delta"), "delta");
    if (n < 0) detail::field_error("n", "must be nonnegative");
    if (delta < 0) detail::field_error("delta", "must be nonnegative");

    const Json& perms = detail::member(j, "perms");
    if (!perms.is_array()) detail::field_error("perms", "expected an array");
    if (static_cast<long long>(perms.size()) != delta)
        detail::field_error("perms", "has " + std::to_string(perms.size()) + " entries, delta is " + std::to_string(delta));
    SchreierSpec spec;
    spec.n_vertices = static_cast<std::size_t>(n);
    for (std::size_t a = 0; a < perms.size(); ++a) {
        const std::string field = "perms[" + std::to_string(a) + "]";
        if (!perms[a].is_array() || static_cast<long long>(perms[a].size()) != n)
            detail::field_error(field, "expected an array of n = " + std::to_string(n) + " integers");
        std::vector<Vertex> image;
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        for (std::size_t v = 0; v < perms[a].size(); ++v) {
            const std::string f = field + "[" + std::to_string(v) + "]";
            const long long x = detail::integer_field(perms[a][v], f);
            if (x < 0 || x >= n) detail::field_error(f, "vertex " + std::to_string(x) + " out of range");
            if (seen[static_cast<std::size_t>(x)]) detail::field_error(field, "is not a permutation (repeats " + std::to_string(x) + ")");
            seen[static_cast<std::size_t>(x)] = true;
            image.push_back(static_cast<Vertex>(x));
        }
        spec.perms.emplace_back(std::move(image));
    }
    const Json& pairing = detail::member(j, "pairing");
    if (!pairing.is_array() || static_cast<long long>(pairing.size()) != delta)
        detail::field_error("pairing", "expected an array of delta = " + std::to_string(delta) + " labels");
    for (std::size_t a = 0; a < pairing.size(); ++a) {
        const std::string f = "pairing[" + std::to_string(a) + "]";
        const long long x = detail::integer_field(pairing[a], f);
        if (x < 1 || x > delta) detail::field_error(f, "label " + std::to_string(x) + " out of range 1.." + std::to_string(delta));
        spec.pairing.push_back(static_cast<Label>(x - 1));
    }
    if (j.contains("partition")) {
        const Json& p = j.at("partition");
        if (!p.is_array() || static_cast<long long>(p.size()) != n) detail::field_error("partition", "expected an array of n sides");
        Partition part;
        for (std::size_t v = 0; v < p.size(); ++v) {
            const std::string f = "partition[" + std::to_string(v) + "]";
            const long long s = detail::integer_field(p[v], f);
            if (s != 0 && s != 1) detail::field_error(f, "side must be 0 or 1");
            part.push_back(static_cast<std::uint8_t>(s));
        }
        spec.partition = std::move(part);
    }
    try {
        spec.validate();
    } catch (const Error& e) {
        throw Error(ErrorKind::invalid_spec, e.what());
    }
    return spec;
}

inline SchreierSpec schreier_spec_from_json_text(const std::string& text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::parse, std::string("malformed JSON: ") + e.what());
    }
    return schreier_spec_from_json(j);
}

inline Json to_json(const SchreierSpec& spec)
{
    Json j;
    j["n"] = spec.n_vertices;
    j["delta"] = spec.degree();
    j["perms"] = Json::array();
    for (const auto& p : spec.perms) j["perms"].push_back(p.image());
    j["pairing"] = Json::array();
    for (Label b : spec.pairing) j["pairing"].push_back(b + 1);
    if (spec.partition) j["partition"] = *spec.partition;
    return j;
}

/// Local code by name (repN, spcN, fullN) or as inline parity rows of 0/1 strings.
inline BitMatrix parity_rows_from_json(const Json& j, std::size_t length)
{
    if (!j.is_array()) throw Error(ErrorKind::parse, "local code rows must be an array of bit strings");
    std::vector<std::string> rows;
    for (const auto& r : j) {
        if (!r.is_string()) throw Error(ErrorKind::parse, "local code rows must be strings of 0/1");
        rows.push_back(r.get<std::string>());
    }
    BitMatrix h = BitMatrix::from_strings(rows, length);
    if (h.cols() != length) throw Error(ErrorKind::label_mismatch, "local code rows do not have length " + std::to_string(length));
    return h;
}

} // namespace qtanner

#endif // QTANNER_IO_HPP
