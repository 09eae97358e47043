#pragma once

// The universal enveloping algebra U(g) in PBW normal form, the symbol map
// sigma : U(g) -> S(g) and its inverse, the symmetrization beta.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "pbwk/report.hpp"
#include "pbwk/series.hpp"
#include "pbwk/superlie.hpp"
#include "pbwk/symcoalg.hpp"

namespace pbwk {

/// Nondecreasing word of basis indices with no repeated odd index.
/// Ordered by length, then lexicographically.
class EnvWord {
public:
    EnvWord() = default;
    /// The word must already be in normal form.
    explicit EnvWord(std::vector<std::uint32_t> letters);

    const std::vector<std::uint32_t>& letters() const noexcept { return letters_; }
    int length() const noexcept { return static_cast<int>(letters_.size()); }
    int parity(const SuperLieAlgebra& algebra) const;
    std::string to_string(const SuperLieAlgebra& algebra) const;

    friend std::strong_ordering operator<=>(const EnvWord& a, const EnvWord& b) {
        if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
        return a.letters_ <=> b.letters_;
    }
    friend bool operator==(const EnvWord&, const EnvWord&) = default;

private:
    std::vector<std::uint32_t> letters_;
};

class EnvElement {
public:
    explicit EnvElement(AlgebraPtr algebra);
    static EnvElement one(AlgebraPtr algebra);
    static EnvElement constant(AlgebraPtr algebra, const Scalar& c);
    /// j(a).
    static EnvElement from_lie(const LieElement& a);
    /// Straightens an arbitrary product of basis elements.
    static EnvElement from_letters(AlgebraPtr algebra, const std::vector<std::uint32_t>& letters);
    static EnvElement word(AlgebraPtr algebra, const EnvWord& w, const Scalar& c);

    const AlgebraPtr& algebra() const noexcept { return algebra_; }
    const std::map<EnvWord, Scalar>& terms() const noexcept { return terms_; }
    Scalar coeff(const EnvWord& w) const;
    void add_term(const EnvWord& w, const Scalar& c);

    bool is_zero() const noexcept { return terms_.empty(); }
    /// Filtration degree; -1 for zero.
    int degree() const;
    EnvElement degree_part(int n) const;
    EnvElement even_part() const;
    EnvElement odd_part() const;

    EnvElement& operator+=(const EnvElement& other);
    EnvElement& operator-=(const EnvElement& other);
    EnvElement& operator*=(const Scalar& s);
    friend EnvElement operator+(EnvElement a, const EnvElement& b) { return a += b; }
    friend EnvElement operator-(EnvElement a, const EnvElement& b) { return a -= b; }
    friend EnvElement operator*(const Scalar& s, EnvElement a) { return a *= s; }
    friend EnvElement operator*(EnvElement a, const Scalar& s) { return a *= s; }
    EnvElement operator-() const;
    friend bool operator==(const EnvElement& a, const EnvElement& b) {
        return a.algebra_ == b.algebra_ && a.terms_ == b.terms_;
    }

    std::string to_string() const;

private:
    AlgebraPtr algebra_;
    std::map<EnvWord, Scalar> terms_;
};

/// Product in U(g), straightened with x_j x_i -> (-1)^{p_i p_j} x_i x_j + [x_j, x_i]
/// (j > i) and e e -> 1/2 [e, e] for odd e. The latter throws NotInvertible(2)
/// when 2 is not a unit.
EnvElement env_mul(const EnvElement& u, const EnvElement& v);
inline EnvElement operator*(const EnvElement& u, const EnvElement& v) { return env_mul(u, v); }

class EnvTensor {
public:
    using Key = std::pair<EnvWord, EnvWord>;

    explicit EnvTensor(AlgebraPtr algebra) : algebra_(std::move(algebra)) {}

    const AlgebraPtr& algebra() const noexcept { return algebra_; }
    const std::map<Key, Scalar>& terms() const noexcept { return terms_; }
    void add_term(const EnvWord& left, const EnvWord& right, const Scalar& c);
    bool is_zero() const noexcept { return terms_.empty(); }
    EnvTensor& operator+=(const EnvTensor& other);
    friend bool operator==(const EnvTensor& a, const EnvTensor& b) {
        return a.algebra_ == b.algebra_ && a.terms_ == b.terms_;
    }
    std::string to_string() const;

private:
    AlgebraPtr algebra_;
    std::map<Key, Scalar> terms_;
};

/// Delta'(u), the algebra morphism with j(a) primitive.
EnvTensor env_coproduct(const EnvElement& u);

/// Regular actions: j(a)^L, j(a)^R(u) = (-1)^{p(a)p(u)} u j(a), and ad j(a) = L - R.
EnvElement left_mul(const LieElement& a, const EnvElement& u);
EnvElement right_mul(const LieElement& a, const EnvElement& u);
EnvElement adjoint(const LieElement& a, const EnvElement& u);

/// Cap of the phi_1 truncation that sigma needs on words of length <= degree:
/// degree - 1, lowered to N - 1 on an N-nilpotent algebra.
int symbol_series_cap(const SuperLieAlgebra& algebra, int degree);

/// Throws NotInvertible naming the first of 2 .. symbol_series_cap + 1 that
/// is not a unit.
void require_symbol_hypothesis(const SuperLieAlgebra& algebra, int degree);

/// sigma(u) = Phi(u)(1) for the representation induced by `phi`, together
/// with its inverse beta. Memoized; safe for concurrent use.
class SymbolMap {
public:
    SymbolMap(AlgebraPtr algebra, TruncSeries phi);
    /// phi_1 truncated at symbol_series_cap(algebra, degree).
    static SymbolMap standard(AlgebraPtr algebra, int degree);

    const AlgebraPtr& algebra() const noexcept { return algebra_; }
    const TruncSeries& series() const noexcept { return phi_; }

    SymElement symbol(const EnvWord& w) const;
    SymElement symbol(const EnvElement& u) const;
    EnvElement symmetrize(const SymMonomial& m) const;
    EnvElement symmetrize(const SymElement& w) const;

private:
    struct Memo;
    AlgebraPtr algebra_;
    TruncSeries phi_;
    std::vector<Coderivation> basis_coderivations_;
    std::shared_ptr<Memo> memo_;
};

/// One-shot forms.
SymElement symbol(const EnvElement& u, const TruncSeries& phi);
EnvElement symmetrize(const SymElement& w, const TruncSeries& phi);

/// The normal word with the same letters as a sorted monomial.
EnvWord lift(const SymMonomial& m);

enum class ActionKind { adjoint, left, right };

/// beta^{-1} o A o beta against Phi_0, Phi_1 and -Phi_{-1} respectively,
/// on all monomials of degree <= max_degree. `beta` must reach words of
/// length max_degree + 1.
CheckReport conjugation_check(const SymbolMap& beta, ActionKind kind, const LieElement& a, int max_degree);

/// Delta' o beta = (beta (x) beta) o Delta on monomials of degree <= max_degree.
CheckReport compatibility_check(const SymbolMap& beta, int max_degree);

/// sigma o beta = id on S^{<=D} and beta o sigma = id on U_{<=D}.
CheckReport inversion_check(const SymbolMap& beta, int max_degree);

/// beta(S^n) in U_n, beta(m) - lift(m) in U_{n-1}, and beta commuting with
/// every inner derivation plus the given derivations and automorphisms.
CheckReport strong_pbw_check(const SymbolMap& beta, const std::vector<LieDerivation>& derivations,
                             const std::vector<LieMorphism>& automorphisms, int max_degree);

/// Derivation extensions to S(g) and U(g).
SymElement sym_derivation(const LieDerivation& d, const SymElement& w);
EnvElement env_derivation(const LieDerivation& d, const EnvElement& u);

/// The algebra morphism U(f).
EnvElement env_apply(const LieMorphism& f, const EnvElement& u);

}  // namespace pbwk
