#pragma once

// The symmetric coalgebra S(g) of a Lie superalgebra, formal vector fields
// S(g) -> g and the coderivations they generate.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pbwk/report.hpp"
#include "pbwk/series.hpp"
#include "pbwk/superlie.hpp"

namespace pbwk {

/// Sorted multiset of basis indices. Odd indices occur at most once.
/// Ordered by degree, then lexicographically.
class SymMonomial {
public:
    SymMonomial() = default;
    /// Takes factors in any order; callers wanting the sign use sym_mul.
    explicit SymMonomial(std::vector<std::uint32_t> factors);

    const std::vector<std::uint32_t>& factors() const noexcept { return factors_; }
    int degree() const noexcept { return static_cast<int>(factors_.size()); }
    int parity(const SuperLieAlgebra& algebra) const;
    std::string to_string(const SuperLieAlgebra& algebra) const;

    friend std::strong_ordering operator<=>(const SymMonomial& a, const SymMonomial& b) {
        if (auto c = a.factors_.size() <=> b.factors_.size(); c != 0) return c;
        return a.factors_ <=> b.factors_;
    }
    friend bool operator==(const SymMonomial&, const SymMonomial&) = default;

private:
    std::vector<std::uint32_t> factors_;
};

class SymElement {
public:
    explicit SymElement(AlgebraPtr algebra);
    static SymElement one(AlgebraPtr algebra);
    static SymElement constant(AlgebraPtr algebra, const Scalar& c);
    static SymElement monomial(AlgebraPtr algebra, const SymMonomial& m, const Scalar& c);
    /// The degree-one image of a Lie element.
    static SymElement from_lie(const LieElement& a);

    const AlgebraPtr& algebra() const noexcept { return algebra_; }
    const std::map<SymMonomial, Scalar>& terms() const noexcept { return terms_; }
    Scalar coeff(const SymMonomial& m) const;
    void add_term(const SymMonomial& m, const Scalar& c);

    bool is_zero() const noexcept { return terms_.empty(); }
    int max_degree() const;  // -1 for zero
    SymElement degree_part(int n) const;
    /// Degree-one part read back as a Lie element.
    LieElement linear_part() const;

    SymElement& operator+=(const SymElement& other);
    SymElement& operator-=(const SymElement& other);
    SymElement& operator*=(const Scalar& s);
    friend SymElement operator+(SymElement a, const SymElement& b) { return a += b; }
    friend SymElement operator-(SymElement a, const SymElement& b) { return a -= b; }
    friend SymElement operator*(const Scalar& s, SymElement a) { return a *= s; }
    friend SymElement operator*(SymElement a, const Scalar& s) { return a *= s; }
    SymElement operator-() const;
    friend bool operator==(const SymElement& a, const SymElement& b) {
        return a.algebra_ == b.algebra_ && a.terms_ == b.terms_;
    }

    std::string to_string() const;

private:
    AlgebraPtr algebra_;
    std::map<SymMonomial, Scalar> terms_;
};

/// Supercommutative product of monomials: sign * result, or nullopt when an
/// odd factor repeats.
std::optional<std::pair<int, SymMonomial>> multiply_monomials(const SuperLieAlgebra& algebra,
                                                              const SymMonomial& a, const SymMonomial& b);
SymElement sym_mul(const SymElement& a, const SymElement& b);
inline SymElement operator*(const SymElement& a, const SymElement& b) { return sym_mul(a, b); }

/// All basis monomials of degree n.
std::vector<SymMonomial> monomials_of_degree(const SuperLieAlgebra& algebra, int n);

class SymTensor {
public:
    using Key = std::pair<SymMonomial, SymMonomial>;

    explicit SymTensor(AlgebraPtr algebra) : algebra_(std::move(algebra)) {}

    const AlgebraPtr& algebra() const noexcept { return algebra_; }
    const std::map<Key, Scalar>& terms() const noexcept { return terms_; }
    void add_term(const SymMonomial& left, const SymMonomial& right, const Scalar& c);
    bool is_zero() const noexcept { return terms_.empty(); }

    SymTensor& operator+=(const SymTensor& other);
    SymTensor& operator-=(const SymTensor& other);
    friend SymTensor operator+(SymTensor a, const SymTensor& b) { return a += b; }
    friend SymTensor operator-(SymTensor a, const SymTensor& b) { return a -= b; }
    friend bool operator==(const SymTensor& a, const SymTensor& b) {
        return a.algebra_ == b.algebra_ && a.terms_ == b.terms_;
    }

    std::string to_string() const;

private:
    AlgebraPtr algebra_;
    std::map<Key, Scalar> terms_;
};

/// Shuffle coproduct with Koszul signs.
SymTensor coproduct(const SuperLieAlgebra& algebra, const SymMonomial& m);
SymTensor coproduct(const SymElement& w);
Scalar counit(const SymElement& w);
/// X_1...X_n -> (-1)^n X_1...X_n.
SymElement antipode(const SymElement& w);
/// W' (x) W'' -> W' W''.
SymElement multiply(const SymTensor& w);
/// (-1)^{W (x) Z} exchange.
SymTensor flip(const SymTensor& w);

/// Homogeneous linear map S(g) -> S(g) given on basis monomials.
class SymMap {
public:
    using Fn = std::function<SymElement(const SymMonomial&)>;

    SymMap(AlgebraPtr algebra, int parity, Fn on_monomial)
        : algebra_(std::move(algebra)), parity_(parity), fn_(std::move(on_monomial)) {}

    static SymMap identity(AlgebraPtr algebra);
    static SymMap counit_map(AlgebraPtr algebra);
    static SymMap antipode_map(AlgebraPtr algebra);

    const AlgebraPtr& algebra() const noexcept { return algebra_; }
    int parity() const noexcept { return parity_; }
    SymElement operator()(const SymMonomial& m) const { return fn_(m); }
    SymElement operator()(const SymElement& w) const;

private:
    AlgebraPtr algebra_;
    int parity_;
    Fn fn_;
};

/// (F (x) G)(W' (x) W'') = (-1)^{p(G)p(W')} F(W') (x) G(W'').
SymTensor tensor_apply(const SymMap& f, const SymMap& g, const SymTensor& w);
/// F * G = Mult o (F (x) G) o Delta.
SymMap convolution(const SymMap& f, const SymMap& g);
SymMap compose(const SymMap& f, const SymMap& g);

/// A linear map S(g) -> g given on monomials; evaluations are memoized and
/// safe to request from several threads.
class VectorField {
public:
    using Fn = std::function<LieElement(const SymMonomial&)>;

    VectorField(AlgebraPtr algebra, int parity, Fn on_monomial);

    const AlgebraPtr& algebra() const noexcept { return algebra_; }
    int parity() const noexcept { return parity_; }
    LieElement operator()(const SymMonomial& m) const;
    LieElement operator()(const SymElement& w) const;
    /// The field viewed as a map into S^1(g).
    SymMap as_map() const;

private:
    struct Memo;
    AlgebraPtr algebra_;
    int parity_;
    Fn fn_;
    std::shared_ptr<Memo> memo_;
};

/// Sum over orderings s of X_1..X_n of alpha(X_s) ad X_s(1) o ... o ad X_s(n) (y).
LieElement ordered_ad_sum(const LieElement& y, const SymMonomial& m);

/// phi(ad x)(a): W = X_1...X_n maps to (-1)^{p(a)p(W)} c_n ordered_ad_sum(a, W).
/// Degrees above the cap of phi are zero when ad^n vanishes identically and
/// an error otherwise. `a` must be homogeneous.
VectorField generic_field(const TruncSeries& phi, const LieElement& a);

/// (rho(t,u) : [a, b])_x, t acting on a and u acting on b.
VectorField pairing_field(const BiTruncSeries& rho, const LieElement& a, const LieElement& b);

/// The generic point: identity on S^1, zero elsewhere.
VectorField generic_point(AlgebraPtr algebra);

/// id * field, memoized per monomial.
class Coderivation {
public:
    explicit Coderivation(VectorField field);

    const VectorField& field() const noexcept { return field_; }
    const AlgebraPtr& algebra() const noexcept { return field_.algebra(); }
    int parity() const noexcept { return field_.parity(); }
    SymElement operator()(const SymMonomial& m) const;
    SymElement operator()(const SymElement& w) const;
    SymMap as_map() const;

private:
    struct Memo;
    VectorField field_;
    std::shared_ptr<Memo> memo_;
};

Coderivation coderivation(const TruncSeries& phi, const LieElement& a);

/// [Phi^a, Psi^b] - Lambda^{[a,b]} on all monomials of degree <= max_degree.
CheckReport commutator_defect(const TruncSeries& phi, const TruncSeries& psi, const TruncSeries& lambda,
                              const LieElement& a, const LieElement& b, int max_degree);

/// commutator_defect over all pairs of basis elements.
CheckReport representation_check(const TruncSeries& phi, const TruncSeries& psi, const TruncSeries& lambda,
                                 const AlgebraPtr& algebra, int max_degree);

/// f o Phi^a = Phi^{f(a)} o f on monomials of degree <= max_degree, every basis a.
CheckReport functoriality_check(const LieMorphism& f, const TruncSeries& phi, int max_degree);

/// The algebra morphism S(f).
SymElement sym_apply(const LieMorphism& f, const SymElement& w);

/// d(Y)(q(ad x)(Z)) = ((q(t+u) - q(u))/t : [Y, Z])_x on monomials of degree
/// <= max_degree. q is read as a polynomial.
CheckReport derivative_formula_check(const TruncSeries& q, const LieElement& y, const LieElement& z,
                                     int max_degree);

/// Coassociativity, cocommutativity, counit and antipode laws.
CheckReport coalgebra_axioms_check(const AlgebraPtr& algebra, int max_degree);

/// Delta o Phi = (Phi (x) id + id (x) Phi) o Delta and delta * Phi = field.
CheckReport coderivation_law_check(const Coderivation& cd, int max_degree);

}  // namespace pbwk
