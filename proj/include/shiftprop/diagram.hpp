#pragma once

#include <cctype>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace shiftprop {

/// Syntax tree of a string diagram over the bialgebra signature, with wire
/// counts (inputs, outputs) validated on construction.
///
/// Generator arities: mu 2->1, eta 0->1, delta 1->2, eps 1->0, h 1->1,
/// id 1->1, empty 0->0, sigma 2->2.
class Term {
public:
    enum class Kind { Mu, Eta, Delta, Eps, H, Id, Empty, Sym, Compose, Tensor, Trace };
    using Ptr = std::shared_ptr<const Term>;

    Kind kind() const { return kind_; }
    std::size_t inputs() const { return inputs_; }
    std::size_t outputs() const { return outputs_; }
    const Ptr& left() const { return left_; }
    const Ptr& right() const { return right_; }

    static Ptr gen(Kind k) {
        switch (k) {
            case Kind::Mu: return make(k, 2, 1);
            case Kind::Eta: return make(k, 0, 1);
            case Kind::Delta: return make(k, 1, 2);
            case Kind::Eps: return make(k, 1, 0);
            case Kind::H: return make(k, 1, 1);
            case Kind::Id: return make(k, 1, 1);
            case Kind::Empty: return make(k, 0, 0);
            case Kind::Sym: return make(k, 2, 2);
            default: throw std::invalid_argument("not a generator kind");
        }
    }
    static Ptr mu() { return gen(Kind::Mu); }
    static Ptr eta() { return gen(Kind::Eta); }
    static Ptr delta() { return gen(Kind::Delta); }
    static Ptr eps() { return gen(Kind::Eps); }
    static Ptr h() { return gen(Kind::H); }
    static Ptr id() { return gen(Kind::Id); }
    static Ptr empty() { return gen(Kind::Empty); }
    static Ptr sym() { return gen(Kind::Sym); }

    /// f after g: feeds g's outputs into f's inputs.
    static Ptr compose(Ptr f, Ptr g) {
        if (f->inputs() != g->outputs())
            throw std::invalid_argument("arity mismatch in compose: left expects " +
                                        std::to_string(f->inputs()) + " inputs, right produces " +
                                        std::to_string(g->outputs()));
        auto t = make(Kind::Compose, g->inputs(), f->outputs());
        t->left_ = std::move(f);
        t->right_ = std::move(g);
        return t;
    }

    static Ptr tensor(Ptr top, Ptr bottom) {
        auto t = make(Kind::Tensor, top->inputs() + bottom->inputs(), top->outputs() + bottom->outputs());
        t->left_ = std::move(top);
        t->right_ = std::move(bottom);
        return t;
    }

    static Ptr trace(Ptr inner) {
        if (inner->inputs() == 0 || inner->outputs() == 0)
            throw std::invalid_argument("trace needs at least one input and one output");
        auto t = make(Kind::Trace, inner->inputs() - 1, inner->outputs() - 1);
        t->left_ = std::move(inner);
        return t;
    }

    /// n parallel identity wires (empty diagram for n = 0).
    static Ptr id_wires(std::size_t n) {
        if (n == 0) return empty();
        Ptr t = id();
        for (std::size_t i = 1; i < n; ++i) t = tensor(t, id());
        return t;
    }

    std::string str() const {
        switch (kind_) {
            case Kind::Mu: return "mu";
            case Kind::Eta: return "eta";
            case Kind::Delta: return "delta";
            case Kind::Eps: return "eps";
            case Kind::H: return "h";
            case Kind::Id: return "id";
            case Kind::Empty: return "empty";
            case Kind::Sym: return "sigma";
            case Kind::Compose: return "(c " + left_->str() + " " + right_->str() + ")";
            case Kind::Tensor: return "(t " + left_->str() + " " + right_->str() + ")";
            case Kind::Trace: return "(tr " + left_->str() + ")";
        }
        return "?";
    }

    bool contains_trace() const {
        if (kind_ == Kind::Trace) return true;
        if (left_ && left_->contains_trace()) return true;
        return right_ && right_->contains_trace();
    }

private:
    static std::shared_ptr<Term> make(Kind k, std::size_t in, std::size_t out) {
        auto t = std::shared_ptr<Term>(new Term());
        t->kind_ = k;
        t->inputs_ = in;
        t->outputs_ = out;
        return t;
    }

    Term() = default;
    Kind kind_ = Kind::Empty;
    std::size_t inputs_ = 0, outputs_ = 0;
    Ptr left_, right_;
};

/// Raised on malformed or arity-invalid term text; `path` locates the
/// offending subterm as a /-separated child index trail from the root.
struct TermParseError : std::runtime_error {
    TermParseError(const std::string& message, const std::string& at_path)
        : std::runtime_error(message + " (at term path " + (at_path.empty() ? "/" : at_path) + ")"),
          path(at_path) {}
    std::string path;
};

namespace detail {

class TermParser {
public:
    explicit TermParser(std::string_view text) : text_(text) {}

    Term::Ptr parse() {
        Term::Ptr t = parse_term("");
        skip_ws();
        if (pos_ != text_.size()) throw TermParseError("trailing input after term", "");
        return t;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    std::string next_word() {
        std::string w;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')') break;
            w += c;
            ++pos_;
        }
        return w;
    }

    Term::Ptr parse_term(const std::string& path) {
        skip_ws();
        if (pos_ >= text_.size()) throw TermParseError("unexpected end of input", path);
        if (text_[pos_] == '(') {
            ++pos_;
            skip_ws();
            std::string op = next_word();
            try {
                if (op == "c" || op == "t") {
                    Term::Ptr a = parse_term(path + "/0");
                    Term::Ptr b = parse_term(path + "/1");
                    expect_close(path);
                    return op == "c" ? Term::compose(a, b) : Term::tensor(a, b);
                }
                if (op == "tr") {
                    Term::Ptr a = parse_term(path + "/0");
                    expect_close(path);
                    return Term::trace(a);
                }
            } catch (const std::invalid_argument& e) {
                throw TermParseError(e.what(), path);
            }
            throw TermParseError("unknown operator '" + op + "'", path);
        }
        std::string atom = next_word();
        if (atom == "mu") return Term::mu();
        if (atom == "eta") return Term::eta();
        if (atom == "delta") return Term::delta();
        if (atom == "eps") return Term::eps();
        if (atom == "h") return Term::h();
        if (atom == "id") return Term::id();
        if (atom == "empty") return Term::empty();
        if (atom == "sigma") return Term::sym();
        throw TermParseError("unknown atom '" + atom + "'", path);
    }

    void expect_close(const std::string& path) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != ')') throw TermParseError("expected ')'", path);
        ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Term::Ptr parse_term(std::string_view text) { return detail::TermParser(text).parse(); }

}  // namespace shiftprop
