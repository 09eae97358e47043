#include "pbwk/superlie.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pbwk {

// ------------------------------------------------------------------ LieElement

LieElement::LieElement(AlgebraPtr algebra) : algebra_(std::move(algebra)) {
    if (!algebra_) throw std::invalid_argument("LieElement needs an algebra");
    coords_.assign(algebra_->dim(), Scalar::zero(algebra_->ring()));
}

LieElement LieElement::basis(AlgebraPtr algebra, std::size_t index) {
    LieElement e(std::move(algebra));
    e.coords_.at(index) = Scalar::one(e.algebra_->ring());
    return e;
}

void LieElement::set(std::size_t i, const Scalar& value) { coords_.at(i) = value; }
void LieElement::add_to(std::size_t i, const Scalar& value) { coords_.at(i) += value; }

bool LieElement::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Scalar& s) { return s.is_zero(); });
}

std::optional<int> LieElement::parity() const {
    std::optional<int> p;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i].is_zero()) continue;
        const int q = algebra_->parity(i);
        if (p && *p != q) return std::nullopt;
        p = q;
    }
    return p;
}

LieElement LieElement::even_part() const {
    LieElement r(algebra_);
    for (std::size_t i = 0; i < coords_.size(); ++i)
        if (algebra_->parity(i) == 0) r.coords_[i] = coords_[i];
    return r;
}

LieElement LieElement::odd_part() const {
    LieElement r(algebra_);
    for (std::size_t i = 0; i < coords_.size(); ++i)
        if (algebra_->parity(i) == 1) r.coords_[i] = coords_[i];
    return r;
}

void LieElement::check_same(const LieElement& other) const {
    if (algebra_ != other.algebra_) throw std::invalid_argument("elements of different algebras");
}

LieElement& LieElement::operator+=(const LieElement& other) {
    check_same(other);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
    return *this;
}

LieElement& LieElement::operator-=(const LieElement& other) {
    check_same(other);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
    return *this;
}

LieElement& LieElement::operator*=(const Scalar& s) {
    for (auto& c : coords_) c *= s;
    return *this;
}

LieElement LieElement::operator-() const {
    LieElement r = *this;
    for (auto& c : r.coords_) c = -c;
    return r;
}

bool operator==(const LieElement& a, const LieElement& b) {
    return a.algebra_ == b.algebra_ && a.coords_ == b.coords_;
}

std::string LieElement::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coords_.size(); ++i)
        if (!coords_[i].is_zero()) append_term(os, first, coords_[i], algebra_->label(i));
    if (first) os << "0";
    return os.str();
}

// ------------------------------------------------------------ SuperLieAlgebra

SuperLieAlgebra::SuperLieAlgebra(const RingSpec& ring, std::vector<BasisElement> basis)
    : ring_(ring), basis_(std::move(basis)) {
    std::set<std::string> seen;
    for (const auto& b : basis_) {
        if (b.parity != 0 && b.parity != 1) throw InputError("parity must be 0 or 1");
        if (b.label.empty()) throw InputError("empty basis label");
        if (!seen.insert(b.label).second) throw InputError("duplicate basis label '" + b.label + "'");
    }
    table_.resize(basis_.size() * basis_.size());
}

namespace {

SparseVector normalized(const SparseVector& v, std::size_t dim, const RingSpec& ring) {
    std::map<std::size_t, Scalar> acc;
    for (const auto& [k, c] : v) {
        if (k >= dim) throw InputError("bracket value refers to an unknown basis index");
        if (!(c.ring() == ring)) throw RingMismatch("structure constant from another ring");
        auto [it, inserted] = acc.emplace(k, c);
        if (!inserted) it->second += c;
    }
    SparseVector out;
    for (auto& [k, c] : acc)
        if (!c.is_zero()) out.emplace_back(k, c);
    return out;
}

}  // namespace

std::shared_ptr<SuperLieAlgebra> SuperLieAlgebra::from_full_table(const RingSpec& ring,
                                                                  std::vector<BasisElement> basis,
                                                                  const std::vector<BracketEntry>& table) {
    std::shared_ptr<SuperLieAlgebra> alg(new SuperLieAlgebra(ring, std::move(basis)));
    const std::size_t n = alg->dim();
    std::vector<bool> filled(n * n, false);
    for (const auto& e : table) {
        if (e.left >= n || e.right >= n) throw InputError("bracket entry refers to an unknown basis index");
        if (filled[e.left * n + e.right]) throw InputError("bracket pair listed twice");
        filled[e.left * n + e.right] = true;
        alg->table_[e.left * n + e.right] = normalized(e.value, n, ring);
    }
    return alg;
}

std::shared_ptr<SuperLieAlgebra> SuperLieAlgebra::from_upper_table(const RingSpec& ring,
                                                                   std::vector<BasisElement> basis,
                                                                   const std::vector<BracketEntry>& table) {
    std::shared_ptr<SuperLieAlgebra> alg(new SuperLieAlgebra(ring, std::move(basis)));
    const std::size_t n = alg->dim();
    std::vector<bool> filled(n * n, false);
    for (const auto& e : table) {
        if (e.left >= n || e.right >= n) throw InputError("bracket entry refers to an unknown basis index");
        if (e.left > e.right)
            throw InputError("bracket '" + alg->label(e.left) + "," + alg->label(e.right) +
                             "' must be listed with left <= right");
        if (filled[e.left * n + e.right]) throw InputError("bracket pair listed twice");
        filled[e.left * n + e.right] = true;
        SparseVector v = normalized(e.value, n, ring);
        alg->table_[e.left * n + e.right] = v;
        if (e.left != e.right) {
            const bool both_odd = alg->parity(e.left) == 1 && alg->parity(e.right) == 1;
            SparseVector w = v;
            if (!both_odd)
                for (auto& [k, c] : w) c = -c;
            alg->table_[e.right * n + e.left] = std::move(w);
        }
    }
    return alg;
}

std::optional<std::size_t> SuperLieAlgebra::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i].label == label) return i;
    return std::nullopt;
}

bool SuperLieAlgebra::has_odd() const {
    return std::any_of(basis_.begin(), basis_.end(), [](const BasisElement& b) { return b.parity == 1; });
}

LieElement SuperLieAlgebra::element(const std::string& label) const {
    auto i = index_of(label);
    if (!i) throw InputError("unknown basis label '" + label + "'");
    return element(*i);
}

LieElement SuperLieAlgebra::ad_basis(std::size_t i, const LieElement& v) const {
    LieElement r = zero();
    for (std::size_t j = 0; j < dim(); ++j) {
        if (v[j].is_zero()) continue;
        for (const auto& [k, c] : bracket_basis(i, j)) r.add_to(k, c * v[j]);
    }
    return r;
}

std::vector<BracketEntry> SuperLieAlgebra::upper_entries() const {
    std::vector<BracketEntry> out;
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = i; j < dim(); ++j)
            if (!bracket_basis(i, j).empty()) out.push_back({i, j, bracket_basis(i, j)});
    return out;
}

namespace {

using Vec = std::vector<Scalar>;

/// Adds v to an echelon basis over a field; returns false if v was dependent.
bool insert_reduced(std::vector<std::pair<std::size_t, Vec>>& echelon, Vec v) {
    for (const auto& [pivot, row] : echelon) {
        if (v[pivot].is_zero()) continue;
        const Scalar f = v[pivot];
        for (std::size_t k = 0; k < v.size(); ++k) v[k] -= f * row[k];
    }
    auto it = std::find_if(v.begin(), v.end(), [](const Scalar& s) { return !s.is_zero(); });
    if (it == v.end()) return false;
    const std::size_t pivot = static_cast<std::size_t>(it - v.begin());
    const Scalar inv = v[pivot].inv();
    for (auto& c : v) c *= inv;
    for (auto& [p, row] : echelon) {
        if (row[pivot].is_zero()) continue;
        const Scalar f = row[pivot];
        for (std::size_t k = 0; k < row.size(); ++k) row[k] -= f * v[k];
    }
    echelon.emplace_back(pivot, std::move(v));
    return true;
}

Vec to_field(const Vec& v) {
    if (v.empty() || v.front().ring().kind != RingSpec::Kind::integers) return v;
    Vec out;
    out.reserve(v.size());
    for (const auto& c : v) out.emplace_back(RingSpec::rationals(), c.value());
    return out;
}

/// Generators of ad(g)^k(g), k = 0, 1, ..., as reduced spanning sets.
class AdSpanner {
public:
    explicit AdSpanner(const SuperLieAlgebra& alg)
        : alg_(alg), reduce_(alg.ring().kind != RingSpec::Kind::modular || alg.ring().is_field()) {
        for (std::size_t i = 0; i < alg.dim(); ++i) {
            Vec e(alg.dim(), Scalar::zero(alg.ring()));
            e[i] = Scalar::one(alg.ring());
            add(current_, e);
        }
    }

    const std::vector<Vec>& current() const { return current_; }

    void step() {
        std::vector<Vec> next;
        echelon_.clear();
        seen_.clear();
        for (const auto& v : current_)
            for (std::size_t i = 0; i < alg_.dim(); ++i) {
                Vec w(alg_.dim(), Scalar::zero(alg_.ring()));
                for (std::size_t j = 0; j < alg_.dim(); ++j) {
                    if (v[j].is_zero()) continue;
                    for (const auto& [k, c] : alg_.bracket_basis(i, j)) w[k] += c * v[j];
                }
                add(next, w);
            }
        current_ = std::move(next);
    }

private:
    void add(std::vector<Vec>& into, const Vec& v) {
        if (std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); })) return;
        if (reduce_) {
            if (insert_reduced(echelon_, to_field(v))) into.push_back(v);
        } else {
            std::vector<std::string> key;
            for (const auto& c : v) key.push_back(c.to_string());
            if (seen_.insert(key).second) into.push_back(v);
        }
    }

    const SuperLieAlgebra& alg_;
    bool reduce_;
    std::vector<Vec> current_;
    std::vector<std::pair<std::size_t, Vec>> echelon_;
    std::set<std::vector<std::string>> seen_;
};

}  // namespace

std::optional<int> SuperLieAlgebra::nilpotency_class() const {
    std::call_once(nilpotency_once_, [this] {
        AdSpanner spanner(*this);
        std::size_t previous = spanner.current().size() + 1;
        for (int n = 1;; ++n) {
            spanner.step();
            const std::size_t size = spanner.current().size();
            if (size == 0) {
                nilpotency_class_ = n;
                return;
            }
            // Over a field the spans form a decreasing chain; once it stalls it never reaches 0.
            if (n > static_cast<int>(dim()) + 1 || (size >= previous && ring_.is_field())) return;
            previous = size;
        }
    });
    return nilpotency_class_;
}

bool is_nilpotent(const SuperLieAlgebra& algebra, int n) {
    if (n < 1) throw std::invalid_argument("nilpotency order must be >= 1");
    auto cls = algebra.nilpotency_class();
    return cls && *cls <= n;
}

// ------------------------------------------------------------- bracket & signs

LieElement bracket(const LieElement& a, const LieElement& b) {
    if (a.algebra() != b.algebra()) throw std::invalid_argument("bracket: elements of different algebras");
    const SuperLieAlgebra& alg = *a.algebra();
    LieElement r = alg.zero();
    for (std::size_t i = 0; i < alg.dim(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < alg.dim(); ++j) {
            if (b[j].is_zero()) continue;
            const Scalar ab = a[i] * b[j];
            for (const auto& [k, c] : alg.bracket_basis(i, j)) r.add_to(k, c * ab);
        }
    }
    return r;
}

LieElement ad_power(std::span<const LieElement> xs, const LieElement& a) {
    LieElement r = a;
    for (auto it = xs.rbegin(); it != xs.rend(); ++it) r = bracket(*it, r);
    return r;
}

int koszul_sign(std::span<const int> parities, std::span<const std::size_t> permutation) {
    const std::size_t n = permutation.size();
    if (parities.size() != n) throw std::invalid_argument("koszul_sign: size mismatch");
    std::vector<bool> used(n, false);
    for (auto s : permutation) {
        if (s >= n || used[s]) throw std::invalid_argument("koszul_sign: not a permutation");
        used[s] = true;
    }
    int sign = 1;
    for (std::size_t a = 0; a < n; ++a) {
        if (parities[permutation[a]] == 0) continue;
        for (std::size_t b = a + 1; b < n; ++b)
            if (parities[permutation[b]] == 1 && permutation[a] > permutation[b]) sign = -sign;
    }
    return sign;
}

// ------------------------------------------------------------------ validation

namespace {

LieElement random_homogeneous(const AlgebraPtr& alg, int parity, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> dist(-3, 3);
    LieElement r = alg->zero();
    for (std::size_t i = 0; i < alg->dim(); ++i)
        if (alg->parity(i) == parity) r.set(i, Scalar(alg->ring(), dist(rng)));
    return r;
}

}  // namespace

ValidationReport validate(const SuperLieAlgebra& algebra, std::uint64_t seed) {
    ValidationReport report;
    const std::size_t n = algebra.dim();
    const AlgebraPtr alg = algebra.shared_from_this();
    auto sign = [&](std::size_t i, std::size_t j) {
        return (algebra.parity(i) == 1 && algebra.parity(j) == 1) ? Scalar::one(algebra.ring())
                                                       : -Scalar::one(algebra.ring());
    };
    auto e = [&](std::size_t i) { return algebra.element(i); };

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const LieElement v = bracket(e(i), e(j));
            const int expected = (algebra.parity(i) + algebra.parity(j)) % 2;
            for (std::size_t k = 0; k < n; ++k)
                if (!v[k].is_zero() && algebra.parity(k) != expected) {
                    report.violations.push_back({"parity", {algebra.label(i), algebra.label(j)},
                                                 "[" + algebra.label(i) + "," + algebra.label(j) +
                                                     "] has a component of the wrong parity"});
                    break;
                }
            if (j < i) continue;
            // [X,Y] = -(-1)^{p(X)p(Y)} [Y,X]
            if (!(v == sign(i, j) * bracket(e(j), e(i))))
                report.violations.push_back({"antisymmetry", {algebra.label(i), algebra.label(j)},
                                             "[" + algebra.label(i) + "," + algebra.label(j) +
                                                 "] = " + v.to_string()});
        }

    for (std::size_t i = 0; i < n; ++i) {
        if (algebra.parity(i) == 0 && !bracket(e(i), e(i)).is_zero())
            report.violations.push_back({"even-square", {algebra.label(i)},
                                         "[X,X] = " + bracket(e(i), e(i)).to_string()});
        if (algebra.parity(i) == 1 && !bracket(e(i), bracket(e(i), e(i))).is_zero())
            report.violations.push_back({"odd-cube", {algebra.label(i)}, "[Y,[Y,Y]] != 0"});
    }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                // [[X,Y],Z] = [X,[Y,Z]] - (-1)^{p(X)p(Y)} [Y,[X,Z]]
                const LieElement lhs = bracket(bracket(e(i), e(j)), e(k));
                LieElement rhs = bracket(e(i), bracket(e(j), e(k)));
                const LieElement other = bracket(e(j), bracket(e(i), e(k)));
                if (algebra.parity(i) == 1 && algebra.parity(j) == 1) rhs += other;
                else rhs -= other;
                if (!(lhs == rhs))
                    report.violations.push_back(
                        {"jacobi", {algebra.label(i), algebra.label(j), algebra.label(k)},
                         "[[X,Y],Z] - [X,[Y,Z]] + (-1)^{p(X)p(Y)}[Y,[X,Z]] = " + (lhs - rhs).to_string()});
            }

    std::mt19937_64 rng(seed);
    constexpr int kSamples = 100;
    if (!algebra.ring().invertible(2))
        for (int s = 0; s < kSamples; ++s) {
            const LieElement x = random_homogeneous(alg, 0, rng);
            if (!bracket(x, x).is_zero()) {
                report.violations.push_back({"even-square", {x.to_string()}, "[X,X] != 0"});
                break;
            }
        }
    if (!algebra.ring().invertible(3))
        for (int s = 0; s < kSamples; ++s) {
            const LieElement y = random_homogeneous(alg, 1, rng);
            if (!bracket(y, bracket(y, y)).is_zero()) {
                report.violations.push_back({"odd-cube", {y.to_string()}, "[Y,[Y,Y]] != 0"});
                break;
            }
        }
    return report;
}

// ---------------------------------------------------------- free nilpotent

namespace {

using Word = std::vector<int>;
using AssocPoly = std::map<Word, mpz_class>;

std::vector<Word> lyndon_words(int alphabet, int max_length) {
    // Duval's generation in lexicographic order.
    std::vector<Word> out;
    if (alphabet <= 0 || max_length <= 0) return out;
    Word w{0};
    while (!w.empty()) {
        out.push_back(w);
        const std::size_t m = w.size();
        while (w.size() < static_cast<std::size_t>(max_length)) w.push_back(w[w.size() - m]);
        while (!w.empty() && w.back() == alphabet - 1) w.pop_back();
        if (!w.empty()) ++w.back();
    }
    return out;
}

AssocPoly poly_bracket(const AssocPoly& a, const AssocPoly& b) {
    AssocPoly r;
    for (const auto& [wa, ca] : a)
        for (const auto& [wb, cb] : b) {
            Word ab = wa;
            ab.insert(ab.end(), wb.begin(), wb.end());
            Word ba = wb;
            ba.insert(ba.end(), wa.begin(), wa.end());
            r[ab] += ca * cb;
            r[ba] -= ca * cb;
        }
    std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
    return r;
}

}  // namespace

AlgebraPtr free_nilpotent(std::vector<BasisElement> generators, int n, const RingSpec& ring) {
    if (n < 1) throw std::invalid_argument("free_nilpotent: class must be >= 1");
    if (generators.empty()) throw std::invalid_argument("free_nilpotent: need at least one generator");
    for (const auto& g : generators)
        if (g.parity != 0) throw Unsupported("free_nilpotent: odd generators are not supported");
    std::sort(generators.begin(), generators.end(),
              [](const BasisElement& a, const BasisElement& b) { return a.label < b.label; });
    const int alphabet = static_cast<int>(generators.size());

    std::vector<Word> words = lyndon_words(alphabet, n);
    std::stable_sort(words.begin(), words.end(), [](const Word& a, const Word& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    std::map<Word, std::size_t> index;
    for (std::size_t i = 0; i < words.size(); ++i) index[words[i]] = i;

    // Standard factorization w = uv, v the longest proper Lyndon suffix.
    std::vector<AssocPoly> expansion(words.size());
    std::vector<std::string> labels(words.size());
    for (std::size_t i = 0; i < words.size(); ++i) {
        const Word& w = words[i];
        if (w.size() == 1) {
            expansion[i][w] = 1;
            labels[i] = generators[static_cast<std::size_t>(w[0])].label;
            continue;
        }
        for (std::size_t cut = 1; cut < w.size(); ++cut) {
            Word v(w.begin() + static_cast<std::ptrdiff_t>(cut), w.end());
            if (!index.count(v)) continue;
            Word u(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(cut));
            const std::size_t iu = index.at(u), iv = index.at(v);
            expansion[i] = poly_bracket(expansion[iu], expansion[iv]);
            labels[i] = "[" + labels[iu] + "," + labels[iv] + "]";
            break;
        }
    }

    std::vector<BasisElement> basis;
    for (const auto& l : labels) basis.push_back({l, 0});
    std::vector<BracketEntry> table;
    for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t j = i + 1; j < words.size(); ++j) {
            if (words[i].size() + words[j].size() > static_cast<std::size_t>(n)) continue;
            AssocPoly f = poly_bracket(expansion[i], expansion[j]);
            SparseVector value;
            // The smallest word of a Lie polynomial is Lyndon and carries its coordinate.
            while (!f.empty()) {
                const auto [w, c] = *f.begin();
                const std::size_t k = index.at(w);
                value.emplace_back(k, Scalar(ring, mpq_class(c)));
                for (const auto& [word, coeff] : expansion[k]) f[word] -= c * coeff;
                std::erase_if(f, [](const auto& kv) { return kv.second == 0; });
            }
            std::sort(value.begin(), value.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            std::erase_if(value, [](const auto& kv) { return kv.second.is_zero(); });
            if (!value.empty()) table.push_back({i, j, std::move(value)});
        }
    return SuperLieAlgebra::from_upper_table(ring, std::move(basis), table);
}

// ------------------------------------------------------------------- built-ins

AlgebraPtr abelian(const RingSpec& ring, std::size_t n) {
    std::vector<BasisElement> basis;
    for (std::size_t i = 0; i < n; ++i) basis.push_back({"x" + std::to_string(i + 1), 0});
    return SuperLieAlgebra::from_upper_table(ring, std::move(basis), {});
}

AlgebraPtr heisenberg(const RingSpec& ring) {
    return SuperLieAlgebra::from_upper_table(ring, {{"x", 0}, {"y", 0}, {"z", 0}},
                                             {{0, 1, {{2, Scalar::one(ring)}}}});
}

AlgebraPtr sl2(const RingSpec& ring) {
    return SuperLieAlgebra::from_upper_table(ring, {{"e", 0}, {"f", 0}, {"h", 0}},
                                             {{0, 1, {{2, Scalar::one(ring)}}},
                                              {0, 2, {{0, Scalar(ring, -2L)}}},
                                              {1, 2, {{1, Scalar(ring, 2L)}}}});
}

AlgebraPtr super_example(const RingSpec& ring) {
    return SuperLieAlgebra::from_upper_table(ring, {{"h", 0}, {"e", 1}, {"f", 1}},
                                             {{1, 2, {{0, Scalar::one(ring)}}}});
}

AlgebraPtr odd_square_example(const RingSpec& ring) {
    return SuperLieAlgebra::from_upper_table(ring, {{"h", 0}, {"e", 1}},
                                             {{1, 1, {{0, Scalar::one(ring)}}}});
}

AlgebraPtr odd_line(const RingSpec& ring) {
    return SuperLieAlgebra::from_upper_table(ring, {{"e", 1}}, {});
}

// ------------------------------------------------------------------ morphisms

LieMorphism::LieMorphism(AlgebraPtr source, AlgebraPtr target, std::vector<LieElement> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != source_->dim()) throw std::invalid_argument("morphism needs one image per basis element");
    for (const auto& im : images_)
        if (im.algebra() != target_) throw std::invalid_argument("morphism image outside the target");
    if (!(source_->ring() == target_->ring())) throw RingMismatch("morphism between different rings");
}

LieMorphism LieMorphism::identity(AlgebraPtr algebra) {
    std::vector<LieElement> images;
    for (std::size_t i = 0; i < algebra->dim(); ++i) images.push_back(algebra->element(i));
    return LieMorphism(algebra, algebra, std::move(images));
}

LieElement LieMorphism::apply(const LieElement& a) const {
    if (a.algebra() != source_) throw std::invalid_argument("morphism applied outside its source");
    LieElement r = target_->zero();
    for (std::size_t i = 0; i < source_->dim(); ++i)
        if (!a[i].is_zero()) r += a[i] * images_[i];
    return r;
}

ValidationReport LieMorphism::check() const {
    ValidationReport report;
    for (std::size_t i = 0; i < source_->dim(); ++i) {
        auto p = images_[i].parity();
        if (p && *p != source_->parity(i))
            report.violations.push_back({"parity", {source_->label(i)}, "image has the wrong parity"});
        if (!p && !images_[i].is_zero())
            report.violations.push_back({"parity", {source_->label(i)}, "image is not homogeneous"});
    }
    for (std::size_t i = 0; i < source_->dim(); ++i)
        for (std::size_t j = 0; j < source_->dim(); ++j) {
            const LieElement lhs = apply(bracket(source_->element(i), source_->element(j)));
            const LieElement rhs = bracket(images_[i], images_[j]);
            if (!(lhs == rhs))
                report.violations.push_back({"bracket", {source_->label(i), source_->label(j)},
                                             "f([a,b]) = " + lhs.to_string() + " but [f(a),f(b)] = " +
                                                 rhs.to_string()});
        }
    return report;
}

LieDerivation::LieDerivation(AlgebraPtr algebra, int parity, std::vector<LieElement> images)
    : algebra_(std::move(algebra)), parity_(parity), images_(std::move(images)) {
    if (parity_ != 0 && parity_ != 1) throw std::invalid_argument("derivation parity must be 0 or 1");
    if (images_.size() != algebra_->dim()) throw std::invalid_argument("derivation needs one image per basis element");
    for (const auto& im : images_)
        if (im.algebra() != algebra_) throw std::invalid_argument("derivation image outside the algebra");
}

LieDerivation LieDerivation::inner(const LieElement& a) {
    const AlgebraPtr& alg = a.algebra();
    std::vector<LieElement> images;
    for (std::size_t i = 0; i < alg->dim(); ++i) images.push_back(bracket(a, alg->element(i)));
    auto p = a.parity();
    if (!p && !a.is_zero()) throw InputError("inner derivation needs a homogeneous element");
    return LieDerivation(alg, p.value_or(0), std::move(images));
}

LieDerivation LieDerivation::diagonal(AlgebraPtr algebra, const std::vector<long>& weights) {
    if (weights.size() != algebra->dim()) throw std::invalid_argument("one weight per basis element");
    std::vector<LieElement> images;
    for (std::size_t i = 0; i < algebra->dim(); ++i)
        images.push_back(Scalar(algebra->ring(), weights[i]) * algebra->element(i));
    return LieDerivation(algebra, 0, std::move(images));
}

LieElement LieDerivation::apply(const LieElement& a) const {
    if (a.algebra() != algebra_) throw std::invalid_argument("derivation applied outside its algebra");
    LieElement r = algebra_->zero();
    for (std::size_t i = 0; i < algebra_->dim(); ++i)
        if (!a[i].is_zero()) r += a[i] * images_[i];
    return r;
}

ValidationReport LieDerivation::check() const {
    ValidationReport report;
    for (std::size_t i = 0; i < algebra_->dim(); ++i) {
        auto p = images_[i].parity();
        if (p && *p != (algebra_->parity(i) ^ parity_))
            report.violations.push_back({"parity", {algebra_->label(i)}, "image has the wrong parity"});
    }
    for (std::size_t i = 0; i < algebra_->dim(); ++i)
        for (std::size_t j = 0; j < algebra_->dim(); ++j) {
            const LieElement x = algebra_->element(i), y = algebra_->element(j);
            const LieElement lhs = apply(bracket(x, y));
            LieElement rhs = bracket(images_[i], y);
            const LieElement other = bracket(x, images_[j]);
            if (parity_ & algebra_->parity(i)) rhs -= other;
            else rhs += other;
            if (!(lhs == rhs))
                report.violations.push_back({"leibniz", {algebra_->label(i), algebra_->label(j)},
                                             "D[x,y] = " + lhs.to_string() + " but [Dx,y] +- [x,Dy] = " +
                                                 rhs.to_string()});
        }
    return report;
}

std::size_t rank(std::span<const std::vector<Scalar>> vectors) {
    std::vector<std::pair<std::size_t, Vec>> echelon;
    std::size_t r = 0;
    for (const auto& v : vectors) {
        if (!v.empty() && !v.front().ring().is_field() && v.front().ring().kind != RingSpec::Kind::integers)
            throw Unsupported("rank needs a field or Z");
        if (insert_reduced(echelon, to_field(v))) ++r;
    }
    return r;
}

}  // namespace pbwk
