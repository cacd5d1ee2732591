#pragma once

#include "shiftprop/matrix.hpp"

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace shiftprop {

/// Raised on malformed matrix documents, with 1-based position info.
struct DocParseError : std::runtime_error {
    DocParseError(std::size_t line, std::size_t column, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                             message),
          line(line),
          column(column) {}
    std::size_t line, column;
};

namespace detail {

/// Compact polynomial entry syntax used inside matrix documents: a signed
/// sum of terms `c`, `t`, `c t^k` written without spaces or '*', e.g.
/// `2t^2+t`, `1-2t`, `-3`. (Reports use the spaced canonical rendering; this
/// one has to survive whitespace tokenization.)
inline IntPoly parse_poly_entry(std::string_view tok, std::size_t line, std::size_t column) {
    std::vector<Int> coeffs;
    std::size_t pos = 0;
    auto fail = [&](const std::string& msg) -> void { throw DocParseError(line, column + pos, msg); };
    if (tok.empty()) fail("empty entry");
    bool first = true;
    while (pos < tok.size()) {
        int sign = 1;
        if (tok[pos] == '+' || tok[pos] == '-') {
            sign = tok[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (!first) {
            fail("expected '+' or '-' between terms");
        }
        first = false;
        if (pos >= tok.size()) fail("dangling sign");
        bool have_digits = false;
        Int coeff(0);
        while (pos < tok.size() && std::isdigit(static_cast<unsigned char>(tok[pos]))) {
            coeff = coeff * 10 + (tok[pos] - '0');
            have_digits = true;
            ++pos;
        }
        std::size_t power = 0;
        if (pos < tok.size() && tok[pos] == 't') {
            ++pos;
            power = 1;
            if (pos < tok.size() && tok[pos] == '^') {
                ++pos;
                if (pos >= tok.size() || !std::isdigit(static_cast<unsigned char>(tok[pos])))
                    fail("expected exponent digits after '^'");
                power = 0;
                while (pos < tok.size() && std::isdigit(static_cast<unsigned char>(tok[pos])))
                    power = power * 10 + static_cast<std::size_t>(tok[pos++] - '0');
            }
            if (!have_digits) coeff = 1;
        } else if (!have_digits) {
            fail("expected a coefficient or 't'");
        }
        if (coeffs.size() <= power) coeffs.resize(power + 1, Int(0));
        coeffs[power] += sign * coeff;
    }
    return IntPoly(std::move(coeffs));
}

inline std::string render_poly_entry(const IntPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (std::size_t i = p.coeffs().size(); i-- > 0;) {
        const Int& c = p.coeff(i);
        if (c == 0) continue;
        Int mag = abs(c);
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? "-" : "+";
        }
        if (i == 0) out += mag.str();
        else {
            if (mag != 1) out += mag.str();
            out += i == 1 ? "t" : "t^" + std::to_string(i);
        }
    }
    return out;
}

inline Int parse_int_entry(std::string_view tok, std::size_t line, std::size_t column) {
    if (tok.empty()) throw DocParseError(line, column, "empty entry");
    std::size_t pos = 0;
    bool neg = false;
    if (tok[pos] == '+' || tok[pos] == '-') neg = tok[pos++] == '-';
    if (pos >= tok.size()) throw DocParseError(line, column, "dangling sign");
    Int v(0);
    for (; pos < tok.size(); ++pos) {
        if (!std::isdigit(static_cast<unsigned char>(tok[pos])))
            throw DocParseError(line, column + pos, "expected a digit");
        v = v * 10 + (tok[pos] - '0');
    }
    return neg ? Int(-v) : v;
}

template <Semiring R>
typename R::value_type parse_entry(const R& ring, std::string_view tok, std::size_t line, std::size_t column) {
    typename R::value_type v;
    if constexpr (std::same_as<typename R::value_type, IntPoly>) {
        v = parse_poly_entry(tok, line, column);
    } else {
        v = parse_int_entry(tok, line, column);
    }
    if (!ring.valid(v))
        throw DocParseError(line, column, "entry '" + std::string(tok) + "' is not valid in ring " + ring.name());
    return v;
}

template <Semiring R>
std::string render_entry(const R&, const typename R::value_type& v) {
    if constexpr (std::same_as<typename R::value_type, IntPoly>) {
        return render_poly_entry(v);
    } else {
        return v.str();
    }
}

}  // namespace detail

/// Parses a whitespace-separated matrix document: one row per nonblank line,
/// rectangular, entries valid in the ring. Rejects empty documents.
template <Semiring R>
Matrix<R> parse_matrix(std::string_view text, R ring = R()) {
    std::vector<std::vector<typename R::value_type>> rows;
    std::size_t line_no = 0, pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        ++line_no;
        std::vector<typename R::value_type> row;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            if (i >= line.size()) break;
            std::size_t start = i;
            while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            row.push_back(detail::parse_entry(ring, line.substr(start, i - start), line_no, start + 1));
        }
        if (!row.empty()) {
            if (!rows.empty() && row.size() != rows.front().size())
                throw DocParseError(line_no, 1, "row has " + std::to_string(row.size()) +
                                                    " entries, expected " + std::to_string(rows.front().size()));
            rows.push_back(std::move(row));
        }
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    if (rows.empty()) throw DocParseError(line_no, 1, "empty matrix document");
    Matrix<R> m(rows.size(), rows.front().size(), ring);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.front().size(); ++j) m.at(i, j) = std::move(rows[i][j]);
    return m;
}

template <Semiring R>
std::string render_matrix(const Matrix<R>& m) {
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += " ";
            out += detail::render_entry(m.ring(), m.at(i, j));
        }
        out += "\n";
    }
    return out;
}

}  // namespace shiftprop
