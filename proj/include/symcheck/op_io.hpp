#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "symcheck/diff_op.hpp"

namespace symcheck {

/// Error in an operator file; the message names the offending field.
class OperatorFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::size_t line_of(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

inline std::int64_t require_int(const nlohmann::json& j, const char* field, std::int64_t lo) {
    if (!j.contains(field)) throw OperatorFormatError(std::string("missing field \"") + field + "\"");
    const auto& v = j.at(field);
    if (!v.is_number_integer()) throw OperatorFormatError(std::string("field \"") + field + "\": expected an integer");
    const auto x = v.get<std::int64_t>();
    if (x < lo) throw OperatorFormatError(std::string("field \"") + field + "\": must be >= " + std::to_string(lo));
    return x;
}

inline Rational field_rational(const nlohmann::json& v, const std::string& where) {
    if (!v.is_string()) throw OperatorFormatError(where + ": rational entries must be strings \"p/q\"");
    try {
        return parse_rational(v.get<std::string>());
    } catch (const ParseError& e) {
        throw OperatorFormatError(where + ": " + e.what());
    }
}

}  // namespace detail

inline nlohmann::json to_json(const DiffOp& op) {
    nlohmann::json j;
    j["name"] = op.name;
    j["N"] = op.N;
    j["d"] = op.d;
    j["l"] = op.l;
    j["k"] = op.k;
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [alpha, m] : op.terms) {
        nlohmann::json t;
        t["alpha"] = alpha.to_vector();
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(i, c)));
            rows.push_back(std::move(row));
        }
        t["matrix"] = std::move(rows);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    if (!op.weights.empty()) {
        nlohmann::json w = nlohmann::json::array();
        for (const auto& x : op.weights) w.push_back(to_string(x));
        j["weights"] = std::move(w);
    }
    return j;
}

inline std::string serialize_op(const DiffOp& op) { return to_json(op).dump(2) + "\n"; }

inline DiffOp from_json(const nlohmann::json& j) {
    using detail::require_int;
    if (!j.is_object()) throw OperatorFormatError("operator file must contain a JSON object");
    DiffOp op;
    if (!j.contains("name") || !j.at("name").is_string()) throw OperatorFormatError("field \"name\": expected a string");
    op.name = j.at("name").get<std::string>();
    op.N = static_cast<std::size_t>(require_int(j, "N", 1));
    op.d = static_cast<std::size_t>(require_int(j, "d", 1));
    op.l = static_cast<std::size_t>(require_int(j, "l", 1));
    op.k = static_cast<int>(require_int(j, "k", 0));
    if (op.N > kMaxVars) throw OperatorFormatError("field \"N\": at most " + std::to_string(kMaxVars) + " variables supported");
    if (!j.contains("terms") || !j.at("terms").is_array()) throw OperatorFormatError("field \"terms\": expected an array");
    const auto& terms = j.at("terms");
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const std::string where = "terms[" + std::to_string(t) + "]";
        const auto& term = terms[t];
        if (!term.is_object() || !term.contains("alpha") || !term.contains("matrix"))
            throw OperatorFormatError(where + ": expected {\"alpha\": [...], \"matrix\": [[...]]}");
        const auto& a = term.at("alpha");
        if (!a.is_array()) throw OperatorFormatError(where + ".alpha: expected an array of integers");
        if (a.size() != op.N)
            throw OperatorFormatError(where + ".alpha: dimension mismatch (length " + std::to_string(a.size()) +
                                      ", N = " + std::to_string(op.N) + ")");
        std::vector<int> exps;
        for (const auto& e : a) {
            if (!e.is_number_integer() || e.get<std::int64_t>() < 0)
                throw OperatorFormatError(where + ".alpha: entries must be nonnegative integers");
            exps.push_back(e.get<int>());
        }
        const MultiIndex alpha = MultiIndex::from(exps);
        if (alpha.degree() != op.k)
            throw OperatorFormatError(where + ".alpha: multi-index order mismatch (|alpha| = " +
                                      std::to_string(alpha.degree()) + ", k = " + std::to_string(op.k) + ")");
        const auto& rows = term.at("matrix");
        if (!rows.is_array() || rows.size() != op.l)
            throw OperatorFormatError(where + ".matrix: dimension mismatch (expected " + std::to_string(op.l) + " rows)");
        Matrix<Rational> m(op.l, op.d);
        for (std::size_t i = 0; i < op.l; ++i) {
            if (!rows[i].is_array() || rows[i].size() != op.d)
                throw OperatorFormatError(where + ".matrix[" + std::to_string(i) + "]: dimension mismatch (expected " +
                                          std::to_string(op.d) + " columns)");
            for (std::size_t c = 0; c < op.d; ++c)
                m(i, c) = detail::field_rational(rows[i][c], where + ".matrix[" + std::to_string(i) + "][" +
                                                                 std::to_string(c) + "]");
        }
        if (op.terms.count(alpha)) throw OperatorFormatError(where + ".alpha: duplicate multi-index");
        if (!m.is_zero()) op.terms.emplace(alpha, std::move(m));
    }
    if (op.is_zero()) throw OperatorFormatError("operator has no nonzero coefficient matrix");
    if (j.contains("weights")) {
        const auto& w = j.at("weights");
        if (!w.is_array() || w.size() != op.l)
            throw OperatorFormatError("field \"weights\": dimension mismatch (expected " + std::to_string(op.l) + " entries)");
        for (std::size_t i = 0; i < w.size(); ++i) {
            op.weights.push_back(detail::field_rational(w[i], "weights[" + std::to_string(i) + "]"));
            if (sgn(op.weights.back()) <= 0) throw OperatorFormatError("weights[" + std::to_string(i) + "]: must be positive");
        }
    }
    op.validate();
    return op;
}

inline DiffOp parse_op(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw OperatorFormatError("malformed JSON at line " + std::to_string(detail::line_of(text, e.byte)) + ": " +
                                  e.what());
    }
    return from_json(j);
}

inline DiffOp load_op(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw OperatorFormatError("cannot open operator file \"" + path + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_op(ss.str());
    } catch (const OperatorFormatError& e) {
        throw OperatorFormatError(path + ": " + e.what());
    }
}

inline void save_op(const DiffOp& op, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write \"" + path + "\"");
    out << serialize_op(op);
}

/// 64-bit FNV-1a of a byte string, as 16 lowercase hex digits.
inline std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Content hash of the canonical serialized form.
inline std::string content_hash(const DiffOp& op) { return fnv1a_hex(serialize_op(op)); }

}  // namespace symcheck
