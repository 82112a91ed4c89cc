#pragma once

// Series mini-language:
//   expr    := family "(" [ arg ("," arg)* ] ")"
//   arg     := name "=" complex
//   complex := real | real ("+"|"-") real "i"
// Whitespace is allowed between tokens. Offsets in errors are 1-based bytes.

#include <cctype>
#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lapsum/error.hpp"
#include "lapsum/transform_catalog.hpp"
#include "lapsum/types.hpp"

namespace lapsum::cli {

namespace detail {

inline std::string join_expected(const std::vector<std::string>& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) s += (i + 1 == e.size()) ? " or " : ", ";
        s += e[i];
    }
    return s;
}

inline std::string printable(char c) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isprint(u)) return std::string("'") + c + "'";
    static const char* hex = "0123456789abcdef";
    return std::string("byte 0x") + hex[u >> 4] + hex[u & 15];
}

class Cursor {
public:
    explicit Cursor(std::string_view src) : src_(src) {}

    bool done() const { return pos_ >= src_.size(); }
    char peek() const { return done() ? '\0' : src_[pos_]; }
    std::size_t pos() const { return pos_; }
    void advance(std::size_t n = 1) { pos_ += n; }

    void skip_space() {
        while (!done() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    [[noreturn]] void fail(std::vector<std::string> expected, std::size_t at) const {
        const std::string found = at >= src_.size() ? "end of input" : printable(src_[at]);
        const std::string msg = "at offset " + std::to_string(at + 1) + ": expected " + join_expected(expected) +
                                ", found " + found;
        throw SyntaxError(at + 1, std::move(expected), msg);
    }
    [[noreturn]] void fail(std::vector<std::string> expected) const { fail(std::move(expected), pos_); }

    void expect(char c) {
        skip_space();
        if (peek() != c) fail({std::string("\"") + c + "\""});
        ++pos_;
    }

    std::string_view identifier() {
        skip_space();
        const std::size_t start = pos_;
        while (!done() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
        return src_.substr(start, pos_ - start);
    }

    // [+-]? digits [. digits*] [(e|E) [+-]? digits]  or  [+-]? . digits ...
    double real() {
        skip_space();
        const std::size_t start = pos_;
        std::size_t p = pos_;
        auto digit = [&](std::size_t i) { return i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i])); };
        if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
        std::size_t mant = 0;
        while (digit(p)) ++p, ++mant;
        if (p < src_.size() && src_[p] == '.') {
            ++p;
            while (digit(p)) ++p, ++mant;
        }
        if (mant == 0) fail({"number"}, start);
        if (p < src_.size() && (src_[p] == 'e' || src_[p] == 'E')) {
            std::size_t q = p + 1;
            if (q < src_.size() && (src_[q] == '+' || src_[q] == '-')) ++q;
            if (!digit(q)) fail({"exponent digits"}, q);
            while (digit(q)) ++q;
            p = q;
        }
        std::string_view tok = src_.substr(start, p - start);
        if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
        double v = 0.0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) fail({"number in double range"}, start);
        pos_ = p;
        return v;
    }

    cplx complex() {
        const double re = real();
        skip_space();
        if (peek() != '+' && peek() != '-') return re;
        const double sgn = peek() == '-' ? -1.0 : 1.0;
        ++pos_;
        skip_space();
        if (peek() == '+' || peek() == '-') fail({"number"});
        const double im = real();
        skip_space();
        if (peek() != 'i') fail({"\"i\""});
        ++pos_;
        return {re, sgn * im};
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;
};

inline std::vector<std::string> family_names() {
    std::vector<std::string> v;
    for (Family f : all_families) v.emplace_back(family_name(f));
    return v;
}

} // namespace detail

/// Parses a complex literal such as "2", "-0.5", "2+1i" or "1e-3-4i"; the whole text must be consumed.
inline cplx parse_complex(std::string_view src) {
    detail::Cursor c(src);
    const cplx v = c.complex();
    c.skip_space();
    if (!c.done()) c.fail({"end of input"});
    return v;
}

inline SummandSpec parse_series_expr(std::string_view src) {
    detail::Cursor c(src);
    c.skip_space();
    if (c.done()) c.fail({"family name"});
    const std::size_t fam_at = c.pos();
    const std::string_view fam = c.identifier();
    if (fam.empty()) c.fail({"family name"}, fam_at);
    const auto family = family_from_name(fam);
    if (!family) {
        auto names = detail::family_names();
        throw SyntaxError(fam_at + 1, names,
                          "at offset " + std::to_string(fam_at + 1) + ": unknown family \"" + std::string(fam) +
                              "\", expected " + detail::join_expected(names));
    }
    c.expect('(');
    SummandParams params;
    c.skip_space();
    if (c.peek() != ')') {
        while (true) {
            c.skip_space();
            const std::size_t name_at = c.pos();
            const std::string_view name = c.identifier();
            std::optional<cplx>* slot = nullptr;
            if (name == "z") slot = &params.z;
            else if (name == "a") slot = &params.a;
            else if (name == "b") slot = &params.b;
            else if (name == "beta") slot = &params.beta;
            else if (name == "c") slot = &params.c;
            if (!slot) {
                const std::vector<std::string> exp{"z", "a", "b", "beta", "c"};
                if (name.empty()) c.fail(exp, name_at);
                throw SyntaxError(name_at + 1, exp,
                                  "at offset " + std::to_string(name_at + 1) + ": unknown parameter \"" +
                                      std::string(name) + "\"");
            }
            if (slot->has_value())
                throw SyntaxError(name_at + 1, {},
                                  "at offset " + std::to_string(name_at + 1) + ": duplicate parameter \"" +
                                      std::string(name) + "\"");
            c.expect('=');
            *slot = c.complex();
            c.skip_space();
            if (c.peek() == ',') {
                c.advance();
                continue;
            }
            if (c.peek() != ')') c.fail({"\",\"", "\")\""});
            break;
        }
    }
    c.expect(')');
    c.skip_space();
    if (!c.done()) c.fail({"end of input"});
    return make_summand(*family, params);
}

namespace detail {

inline std::string format_number(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string format_complex(cplx v) {
    std::string s = format_number(v.real());
    if (v.imag() != 0.0) {
        s += v.imag() < 0.0 ? "-" : "+";
        s += format_number(std::abs(v.imag()));
        s += "i";
    }
    return s;
}

} // namespace detail

/// Canonical text for a spec; parse_series_expr(format_series_expr(s)) gives s back.
inline std::string format_series_expr(const SummandSpec& s) {
    std::string out(family_name(s.family));
    out += "(";
    bool first = true;
    auto add = [&](const char* n, const std::optional<cplx>& v) {
        if (!v) return;
        if (!first) out += ",";
        first = false;
        out += n;
        out += "=";
        out += detail::format_complex(*v);
    };
    add("z", s.params.z);
    add("a", s.params.a);
    add("b", s.params.b);
    add("beta", s.params.beta);
    add("c", s.params.c);
    return out + ")";
}

} // namespace lapsum::cli
