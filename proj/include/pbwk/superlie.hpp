#pragma once

// Finite-rank Lie superalgebras given by an ordered basis, parities and
// structure constants.

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pbwk/coeff.hpp"

namespace pbwk {

struct BasisElement {
    std::string label;
    int parity = 0;  // 0 even, 1 odd
};

/// Sparse coordinate vector: (basis index, coefficient), indices increasing.
using SparseVector = std::vector<std::pair<std::size_t, Scalar>>;

/// [left, right] = value, by basis index.
struct BracketEntry {
    std::size_t left = 0;
    std::size_t right = 0;
    SparseVector value;
};

class SuperLieAlgebra;
using AlgebraPtr = std::shared_ptr<const SuperLieAlgebra>;

class LieElement {
public:
    explicit LieElement(AlgebraPtr algebra);
    static LieElement basis(AlgebraPtr algebra, std::size_t index);

    const AlgebraPtr& algebra() const noexcept { return algebra_; }
    std::size_t dim() const noexcept { return coords_.size(); }
    const Scalar& operator[](std::size_t i) const { return coords_.at(i); }
    void set(std::size_t i, const Scalar& value);
    void add_to(std::size_t i, const Scalar& value);
    const std::vector<Scalar>& coords() const noexcept { return coords_; }

    bool is_zero() const;
    /// Parity of a nonzero homogeneous element; nullopt for zero or mixed support.
    std::optional<int> parity() const;
    LieElement even_part() const;
    LieElement odd_part() const;

    LieElement& operator+=(const LieElement& other);
    LieElement& operator-=(const LieElement& other);
    LieElement& operator*=(const Scalar& s);
    friend LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
    friend LieElement operator-(LieElement a, const LieElement& b) { return a -= b; }
    friend LieElement operator*(const Scalar& s, LieElement a) { return a *= s; }
    friend LieElement operator*(LieElement a, const Scalar& s) { return a *= s; }
    LieElement operator-() const;

    friend bool operator==(const LieElement& a, const LieElement& b);

    std::string to_string() const;

private:
    void check_same(const LieElement& other) const;

    AlgebraPtr algebra_;
    std::vector<Scalar> coords_;
};

class SuperLieAlgebra : public std::enable_shared_from_this<SuperLieAlgebra> {
public:
    /// Every ordered pair that is nonzero must be listed; nothing is inferred.
    static std::shared_ptr<SuperLieAlgebra> from_full_table(const RingSpec& ring,
                                                            std::vector<BasisElement> basis,
                                                            const std::vector<BracketEntry>& table);
    /// Only pairs with left <= right may be listed; the rest follow from
    /// [Y, X] = -(-1)^{p(X)p(Y)} [X, Y].
    static std::shared_ptr<SuperLieAlgebra> from_upper_table(const RingSpec& ring,
                                                             std::vector<BasisElement> basis,
                                                             const std::vector<BracketEntry>& table);

    const RingSpec& ring() const noexcept { return ring_; }
    std::size_t dim() const noexcept { return basis_.size(); }
    const std::vector<BasisElement>& basis() const noexcept { return basis_; }
    int parity(std::size_t i) const { return basis_.at(i).parity; }
    const std::string& label(std::size_t i) const { return basis_.at(i).label; }
    std::optional<std::size_t> index_of(const std::string& label) const;
    bool has_odd() const;

    const SparseVector& bracket_basis(std::size_t i, std::size_t j) const {
        return table_[i * dim() + j];
    }

    LieElement element(std::size_t i) const { return LieElement::basis(shared_from_this(), i); }
    LieElement zero() const { return LieElement(shared_from_this()); }
    LieElement element(const std::string& label) const;

    /// ad(e_i)(v) = [e_i, v].
    LieElement ad_basis(std::size_t i, const LieElement& v) const;

    /// Smallest N >= 1 with every N-fold ad composition zero; nullopt if none.
    /// Computed once and cached.
    std::optional<int> nilpotency_class() const;

    /// Upper-triangular listing of the nonzero brackets (left <= right).
    std::vector<BracketEntry> upper_entries() const;

private:
    SuperLieAlgebra(const RingSpec& ring, std::vector<BasisElement> basis);

    RingSpec ring_;
    std::vector<BasisElement> basis_;
    std::vector<SparseVector> table_;

    mutable std::once_flag nilpotency_once_;
    mutable std::optional<int> nilpotency_class_;
};

LieElement bracket(const LieElement& a, const LieElement& b);

/// ad X_1 o ... o ad X_r (a); the last operator is applied first.
LieElement ad_power(std::span<const LieElement> xs, const LieElement& a);

/// The sign alpha with alpha * X_{s(1)}...X_{s(n)} = X_1...X_n in the
/// supercommutative symmetric algebra: -1 per inversion between odd factors.
/// `parities[i]` is the parity of X_{i+1}; `permutation[k]` is s(k+1) - 1.
int koszul_sign(std::span<const int> parities, std::span<const std::size_t> permutation);

struct Violation {
    std::string axiom;
    std::vector<std::string> witness;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool valid() const { return violations.empty(); }
};

/// Checks graded antisymmetry, [X,X] = 0 for even X, the graded Jacobi
/// identity, [Y,[Y,Y]] = 0 for odd Y and parity homogeneity of the table.
/// The two square axioms are additionally sampled on random combinations
/// when 2 (resp. 3) is not a unit.
ValidationReport validate(const SuperLieAlgebra& algebra, std::uint64_t seed = 0x5eed);

bool is_nilpotent(const SuperLieAlgebra& algebra, int n);

/// Free N-nilpotent Lie algebra on even generators, basis = standard
/// bracketings of Lyndon words of length <= N ordered by (length, word).
/// Generators are ordered by label.
AlgebraPtr free_nilpotent(std::vector<BasisElement> generators, int n, const RingSpec& ring);

// Built-in test algebras.
AlgebraPtr abelian(const RingSpec& ring, std::size_t n);
/// x < y < z with [x, y] = z.
AlgebraPtr heisenberg(const RingSpec& ring);
/// e < f < h with [e, f] = h, [h, e] = 2e, [h, f] = -2f.
AlgebraPtr sl2(const RingSpec& ring);
/// Even h, odd e < f, [e, f] = h, everything else zero.
AlgebraPtr super_example(const RingSpec& ring);
/// Even h, odd e, [e, e] = h.
AlgebraPtr odd_square_example(const RingSpec& ring);
/// One odd e with [e, e] = 0.
AlgebraPtr odd_line(const RingSpec& ring);

class LieMorphism {
public:
    /// images[i] is the image of source basis element i.
    LieMorphism(AlgebraPtr source, AlgebraPtr target, std::vector<LieElement> images);
    static LieMorphism identity(AlgebraPtr algebra);

    const AlgebraPtr& source() const noexcept { return source_; }
    const AlgebraPtr& target() const noexcept { return target_; }
    const LieElement& image(std::size_t i) const { return images_.at(i); }

    LieElement apply(const LieElement& a) const;

    /// Parity preservation and f([e_i, e_j]) = [f(e_i), f(e_j)] on all basis pairs.
    ValidationReport check() const;

private:
    AlgebraPtr source_;
    AlgebraPtr target_;
    std::vector<LieElement> images_;
};

/// A homogeneous linear map D with D[X,Y] = [DX,Y] + (-1)^{p(D)p(X)} [X,DY].
class LieDerivation {
public:
    LieDerivation(AlgebraPtr algebra, int parity, std::vector<LieElement> images);
    /// ad a.
    static LieDerivation inner(const LieElement& a);
    /// e_i -> weights[i] e_i.
    static LieDerivation diagonal(AlgebraPtr algebra, const std::vector<long>& weights);

    const AlgebraPtr& algebra() const noexcept { return algebra_; }
    int parity() const noexcept { return parity_; }
    const LieElement& image(std::size_t i) const { return images_.at(i); }
    LieElement apply(const LieElement& a) const;

    /// Parity and the Leibniz rule on all basis pairs.
    ValidationReport check() const;

private:
    AlgebraPtr algebra_;
    int parity_;
    std::vector<LieElement> images_;
};

/// Rank of a family of vectors over a field (Q or Z/p).
std::size_t rank(std::span<const std::vector<Scalar>> vectors);

}  // namespace pbwk
