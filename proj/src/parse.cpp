#include "pbwk/parse.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace pbwk {

namespace {

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

/// Recursive-descent parser over any value type with +, -, * and unary -.
///   sum     := term (('+' | '-') term)*
///   term    := power (('*' power) | ('/' integer))*
///   power   := unary ('^' integer)?
///   unary   := ('-' | '+') unary | primary
///   primary := integer | '(' sum ')' | atom
template <class V>
class ExprParser {
public:
    using Atom = std::function<std::optional<V>(ExprParser&)>;
    using Constant = std::function<V(const Scalar&)>;

    ExprParser(std::string_view text, RingSpec ring, Constant constant, Atom atom)
        : text_(text), ring_(ring), constant_(std::move(constant)), atom_(std::move(atom)) {}

    V parse_all() {
        V v = sum();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return v;
    }

    V sum() {
        V v = term();
        for (;;) {
            skip_ws();
            if (consume("+")) v = v + term();
            else if (consume("-")) v = v - term();
            else return v;
        }
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool consume(std::string_view token) {
        skip_ws();
        if (text_.substr(pos_).starts_with(token)) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    /// Consumes `word` only when it is not the prefix of a longer identifier.
    bool consume_word(std::string_view word) {
        skip_ws();
        if (!text_.substr(pos_).starts_with(word)) return false;
        const std::size_t end = pos_ + word.size();
        if (is_word_char(word.back()) && end < text_.size() && is_word_char(text_[end])) return false;
        pos_ = end;
        return true;
    }

    void expect(std::string_view token) {
        if (!consume(token)) fail("expected '" + std::string(token) + "'");
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw InputError("parse error at column " + std::to_string(pos_ + 1) + ": " + message + " in \"" +
                         std::string(text_) + "\"");
    }

    const RingSpec& ring() const noexcept { return ring_; }

private:
    V term() {
        V v = power();
        for (;;) {
            skip_ws();
            if (consume("*")) {
                v = v * power();
            } else if (consume("/")) {
                const mpz_class d = integer();
                if (d == 0) fail("division by zero");
                v = v * constant_(Scalar(ring_, mpq_class(1, d)));
            } else {
                return v;
            }
        }
    }

    V power() {
        V base = unary();
        if (!consume("^")) return base;
        const mpz_class k = integer();
        if (!k.fits_slong_p() || k > 64) fail("exponent too large");
        V r = constant_(Scalar::one(ring_));
        for (long i = 0; i < k.get_si(); ++i) r = r * base;
        return r;
    }

    V unary() {
        if (consume("-")) return -unary();
        if (consume("+")) return unary();
        return primary();
    }

    V primary() {
        skip_ws();
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            return constant_(Scalar(ring_, mpq_class(integer())));
        if (consume("(")) {
            V v = sum();
            expect(")");
            return v;
        }
        if (auto v = atom_(*this)) return std::move(*v);
        if (pos_ >= text_.size()) fail("unexpected end of input");
        fail("unknown symbol");
    }

    mpz_class integer() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        return mpz_class(std::string(text_.substr(start, pos_ - start)));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    RingSpec ring_;
    Constant constant_;
    Atom atom_;
};

/// Labels sorted longest first so that a label is never shadowed by its prefix.
std::vector<std::size_t> labels_by_length(const SuperLieAlgebra& alg) {
    std::vector<std::size_t> order(alg.dim());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return alg.label(a).size() > alg.label(b).size(); });
    return order;
}

template <class V>
std::optional<std::size_t> match_label(ExprParser<V>& p, const SuperLieAlgebra& alg,
                                       const std::vector<std::size_t>& order) {
    for (auto i : order)
        if (p.consume_word(alg.label(i))) return i;
    return std::nullopt;
}

Scalar constant_term(ExprParser<TruncSeries>& p, const TruncSeries& s) {
    for (int k = 1; k <= s.cap(); ++k)
        if (!s[k].is_zero()) p.fail("parameter must be a constant");
    return s[0];
}

}  // namespace

TruncSeries parse_series(std::string_view text, const RingSpec& ring, int cap) {
    if (cap < 0) throw InputError("series cap must be nonnegative");
    auto constant = [cap](const Scalar& c) { return TruncSeries::constant(c, cap); };
    auto atom = [&](ExprParser<TruncSeries>& p) -> std::optional<TruncSeries> {
        if (p.consume_word("t")) return TruncSeries::variable(ring, cap);
        if (p.consume_word("phi0")) return phi_0(ring, cap);
        if (p.consume_word("phi")) {
            p.expect("(");
            const Scalar c = constant_term(p, p.sum());
            p.expect(")");
            return phi_c(c, cap);
        }
        if (p.consume_word("theta")) {
            p.expect("(");
            const Scalar c = constant_term(p, p.sum());
            p.expect(")");
            return theta_c(c, cap);
        }
        return std::nullopt;
    };
    ExprParser<TruncSeries> parser(text, ring, constant, atom);
    return parser.parse_all();
}

SymElement parse_sym(const AlgebraPtr& algebra, std::string_view text) {
    const auto order = labels_by_length(*algebra);
    auto constant = [&](const Scalar& c) { return SymElement::constant(algebra, c); };
    auto atom = [&](ExprParser<SymElement>& p) -> std::optional<SymElement> {
        if (auto i = match_label(p, *algebra, order))
            return SymElement::from_lie(algebra->element(*i));
        return std::nullopt;
    };
    ExprParser<SymElement> parser(text, algebra->ring(), constant, atom);
    return parser.parse_all();
}

EnvElement parse_env(const AlgebraPtr& algebra, std::string_view text) {
    const auto order = labels_by_length(*algebra);
    auto constant = [&](const Scalar& c) { return EnvElement::constant(algebra, c); };
    auto atom = [&](ExprParser<EnvElement>& p) -> std::optional<EnvElement> {
        if (!p.consume_word("j")) return std::nullopt;
        p.expect("(");
        auto i = match_label(p, *algebra, order);
        if (!i) p.fail("expected a basis label");
        p.expect(")");
        return EnvElement::from_lie(algebra->element(*i));
    };
    ExprParser<EnvElement> parser(text, algebra->ring(), constant, atom);
    return parser.parse_all();
}

LieElement parse_lie(const AlgebraPtr& algebra, std::string_view text) {
    const SymElement w = parse_sym(algebra, text);
    for (const auto& [m, c] : w.terms())
        if (m.degree() != 1) throw InputError("not a linear combination of basis elements: \"" + std::string(text) + "\"");
    return w.linear_part();
}

}  // namespace pbwk
