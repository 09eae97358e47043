#include "pbwk/envelope.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace pbwk {

// ----------------------------------------------------------------------- words

EnvWord::EnvWord(std::vector<std::uint32_t> letters) : letters_(std::move(letters)) {
    if (!std::is_sorted(letters_.begin(), letters_.end())) throw std::invalid_argument("EnvWord must be nondecreasing");
}

int EnvWord::parity(const SuperLieAlgebra& algebra) const {
    int p = 0;
    for (auto l : letters_) p ^= algebra.parity(l);
    return p;
}

std::string EnvWord::to_string(const SuperLieAlgebra& algebra) const {
    if (letters_.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) out += "*";
        out += "j(" + algebra.label(letters_[i]) + ")";
    }
    return out;
}

EnvWord lift(const SymMonomial& m) { return EnvWord(m.factors()); }

// -------------------------------------------------------------- straightening

namespace {

using Letters = std::vector<std::uint32_t>;
using StraightenMemo = std::map<Letters, EnvElement>;

EnvElement straighten(const AlgebraPtr& alg, const Letters& w, StraightenMemo& memo) {
    if (auto it = memo.find(w); it != memo.end()) return it->second;
    EnvElement result(alg);
    std::size_t i = 0;
    while (i + 1 < w.size() && (w[i] < w[i + 1] || (w[i] == w[i + 1] && alg->parity(w[i]) == 0))) ++i;
    if (i + 1 >= w.size()) {
        result.add_term(EnvWord(w), Scalar::one(alg->ring()));
        memo.emplace(w, result);
        return result;
    }
    auto replaced = [&](std::size_t k) {
        Letters v(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
        v.push_back(static_cast<std::uint32_t>(k));
        v.insert(v.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 2, w.end());
        return v;
    };
    const std::uint32_t hi = w[i], lo = w[i + 1];
    if (hi == lo) {
        // e e = 1/2 [e, e] for odd e.
        const Scalar half = Scalar(alg->ring(), 2L).inv();
        for (const auto& [k, c] : alg->bracket_basis(hi, hi)) result += (half * c) * straighten(alg, replaced(k), memo);
    } else {
        Letters swapped = w;
        std::swap(swapped[i], swapped[i + 1]);
        EnvElement moved = straighten(alg, swapped, memo);
        if (alg->parity(hi) == 1 && alg->parity(lo) == 1) moved = -moved;
        result += moved;
        for (const auto& [k, c] : alg->bracket_basis(hi, lo)) result += c * straighten(alg, replaced(k), memo);
    }
    memo.emplace(w, result);
    return result;
}

}  // namespace

// ------------------------------------------------------------------- elements

EnvElement::EnvElement(AlgebraPtr algebra) : algebra_(std::move(algebra)) {
    if (!algebra_) throw std::invalid_argument("EnvElement needs an algebra");
}

EnvElement EnvElement::one(AlgebraPtr algebra) {
    const RingSpec ring = algebra->ring();
    return constant(std::move(algebra), Scalar::one(ring));
}

EnvElement EnvElement::constant(AlgebraPtr algebra, const Scalar& c) {
    return word(std::move(algebra), EnvWord(), c);
}

EnvElement EnvElement::word(AlgebraPtr algebra, const EnvWord& w, const Scalar& c) {
    EnvElement r(std::move(algebra));
    r.add_term(w, c);
    return r;
}

EnvElement EnvElement::from_lie(const LieElement& a) {
    EnvElement r(a.algebra());
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (!a[i].is_zero()) r.add_term(EnvWord({static_cast<std::uint32_t>(i)}), a[i]);
    return r;
}

EnvElement EnvElement::from_letters(AlgebraPtr algebra, const std::vector<std::uint32_t>& letters) {
    for (auto l : letters)
        if (l >= algebra->dim()) throw std::out_of_range("letter outside the basis");
    StraightenMemo memo;
    return straighten(algebra, letters, memo);
}

Scalar EnvElement::coeff(const EnvWord& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Scalar::zero(algebra_->ring()) : it->second;
}

void EnvElement::add_term(const EnvWord& w, const Scalar& c) {
    if (!(c.ring() == algebra_->ring())) throw RingMismatch("coefficient from another ring");
    if (c.is_zero()) return;
    const auto& l = w.letters();
    for (std::size_t i = 1; i < l.size(); ++i)
        if (l[i] == l[i - 1] && algebra_->parity(l[i]) == 1)
            throw std::invalid_argument("EnvWord with a repeated odd letter is not in normal form");
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

int EnvElement::degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.length(); }

EnvElement EnvElement::degree_part(int n) const {
    EnvElement r(algebra_);
    for (const auto& [w, c] : terms_)
        if (w.length() == n) r.terms_.emplace(w, c);
    return r;
}

EnvElement EnvElement::even_part() const {
    EnvElement r(algebra_);
    for (const auto& [w, c] : terms_)
        if (w.parity(*algebra_) == 0) r.terms_.emplace(w, c);
    return r;
}

EnvElement EnvElement::odd_part() const {
    EnvElement r(algebra_);
    for (const auto& [w, c] : terms_)
        if (w.parity(*algebra_) == 1) r.terms_.emplace(w, c);
    return r;
}

EnvElement& EnvElement::operator+=(const EnvElement& other) {
    if (algebra_ != other.algebra_) throw std::invalid_argument("elements of different algebras");
    for (const auto& [w, c] : other.terms_) add_term(w, c);
    return *this;
}

EnvElement& EnvElement::operator-=(const EnvElement& other) {
    if (algebra_ != other.algebra_) throw std::invalid_argument("elements of different algebras");
    for (const auto& [w, c] : other.terms_) add_term(w, -c);
    return *this;
}

EnvElement& EnvElement::operator*=(const Scalar& s) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second *= s;
        it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
    }
    return *this;
}

EnvElement EnvElement::operator-() const {
    EnvElement r = *this;
    for (auto& [w, c] : r.terms_) c = -c;
    return r;
}

std::string EnvElement::to_string() const {
    std::ostringstream os;
    bool first = true;
    // Highest filtration degree first, lexicographic within a degree.
    std::vector<const std::pair<const EnvWord, Scalar>*> order;
    for (const auto& term : terms_) order.push_back(&term);
    std::stable_sort(order.begin(), order.end(), [](auto* a, auto* b) { return a->first.length() > b->first.length(); });
    for (const auto* term : order)
        append_term(os, first, term->second, term->first.length() ? term->first.to_string(*algebra_) : "");
    if (first) os << "0";
    return os.str();
}

EnvElement env_mul(const EnvElement& u, const EnvElement& v) {
    if (u.algebra() != v.algebra()) throw std::invalid_argument("env_mul: elements of different algebras");
    const AlgebraPtr& alg = u.algebra();
    StraightenMemo memo;
    EnvElement r(alg);
    for (const auto& [wu, cu] : u.terms())
        for (const auto& [wv, cv] : v.terms()) {
            Letters w = wu.letters();
            w.insert(w.end(), wv.letters().begin(), wv.letters().end());
            r += (cu * cv) * straighten(alg, w, memo);
        }
    return r;
}

// -------------------------------------------------------------------- tensors

void EnvTensor::add_term(const EnvWord& left, const EnvWord& right, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(Key{left, right}, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

EnvTensor& EnvTensor::operator+=(const EnvTensor& other) {
    if (algebra_ != other.algebra_) throw std::invalid_argument("tensors over different algebras");
    for (const auto& [k, c] : other.terms_) add_term(k.first, k.second, c);
    return *this;
}

std::string EnvTensor::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_)
        append_term(os, first, c, k.first.to_string(*algebra_) + " (x) " + k.second.to_string(*algebra_));
    if (first) os << "0";
    return os.str();
}

EnvTensor env_coproduct(const EnvElement& u) {
    const AlgebraPtr& alg = u.algebra();
    EnvTensor r(alg);
    for (const auto& [w, c] : u.terms()) {
        const auto& l = w.letters();
        if (l.size() >= 31) throw Unsupported("word too long for subset enumeration");
        // Product of the primitives j(x_i) (x) 1 + 1 (x) j(x_i); subwords of a normal word stay normal.
        for (unsigned mask = 0; mask < (1U << l.size()); ++mask) {
            Letters left, right;
            int sign = 1;
            int odd_right = 0;
            for (std::size_t i = 0; i < l.size(); ++i) {
                const bool odd = alg->parity(l[i]) == 1;
                if (mask >> i & 1U) {
                    left.push_back(l[i]);
                    if (odd && (odd_right & 1)) sign = -sign;
                } else {
                    right.push_back(l[i]);
                    odd_right += odd;
                }
            }
            r.add_term(EnvWord(left), EnvWord(right), sign > 0 ? c : -c);
        }
    }
    return r;
}

// ------------------------------------------------------------------- actions

EnvElement left_mul(const LieElement& a, const EnvElement& u) { return env_mul(EnvElement::from_lie(a), u); }

EnvElement right_mul(const LieElement& a, const EnvElement& u) {
    const EnvElement ja = EnvElement::from_lie(a);
    auto pa = a.parity();
    if (!pa && !a.is_zero()) throw InputError("right_mul needs a homogeneous element");
    EnvElement r = env_mul(u.even_part(), ja);
    const EnvElement odd = env_mul(u.odd_part(), ja);
    if (pa.value_or(0) == 1) r -= odd;
    else r += odd;
    return r;
}

EnvElement adjoint(const LieElement& a, const EnvElement& u) { return left_mul(a, u) - right_mul(a, u); }

EnvElement env_apply(const LieMorphism& f, const EnvElement& u) {
    if (u.algebra() != f.source()) throw std::invalid_argument("env_apply: element outside the source");
    EnvElement r(f.target());
    for (const auto& [w, c] : u.terms()) {
        EnvElement image = EnvElement::constant(f.target(), c);
        for (auto l : w.letters()) image = env_mul(image, EnvElement::from_lie(f.image(l)));
        r += image;
    }
    return r;
}

SymElement sym_derivation(const LieDerivation& d, const SymElement& w) {
    const AlgebraPtr& alg = w.algebra();
    SymElement r(alg);
    for (const auto& [m, c] : w.terms()) {
        const auto& f = m.factors();
        int odd_before = 0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            SymElement term = SymElement::constant(alg, (d.parity() & odd_before & 1) ? -c : c);
            for (std::size_t k = 0; k < f.size(); ++k)
                term = sym_mul(term, k == i ? SymElement::from_lie(d.image(f[k]))
                                            : SymElement::monomial(alg, SymMonomial({f[k]}), Scalar::one(alg->ring())));
            r += term;
            odd_before += alg->parity(f[i]);
        }
    }
    return r;
}

EnvElement env_derivation(const LieDerivation& d, const EnvElement& u) {
    const AlgebraPtr& alg = u.algebra();
    EnvElement r(alg);
    for (const auto& [w, c] : u.terms()) {
        const auto& l = w.letters();
        int odd_before = 0;
        for (std::size_t i = 0; i < l.size(); ++i) {
            EnvElement term = EnvElement::constant(alg, (d.parity() & odd_before & 1) ? -c : c);
            for (std::size_t k = 0; k < l.size(); ++k)
                term = env_mul(term, k == i ? EnvElement::from_lie(d.image(l[k]))
                                            : EnvElement::word(alg, EnvWord({l[k]}), Scalar::one(alg->ring())));
            r += term;
            odd_before += alg->parity(l[i]);
        }
    }
    return r;
}

// ---------------------------------------------------------------- symbol map

int symbol_series_cap(const SuperLieAlgebra& algebra, int degree) {
    int cap = std::max(degree - 1, 0);
    if (auto cls = algebra.nilpotency_class()) cap = std::min(cap, *cls - 1);
    return std::max(cap, 0);
}

void require_symbol_hypothesis(const SuperLieAlgebra& algebra, int degree) {
    algebra.ring().require_invertible(2, symbol_series_cap(algebra, degree) + 1);
}

struct SymbolMap::Memo {
    std::mutex mutex;
    std::map<EnvWord, SymElement> symbols;
    std::map<SymMonomial, EnvElement> symmetrized;
};

SymbolMap::SymbolMap(AlgebraPtr algebra, TruncSeries phi)
    : algebra_(std::move(algebra)), phi_(std::move(phi)), memo_(std::make_shared<Memo>()) {
    if (!(phi_.ring() == algebra_->ring())) throw RingMismatch("series and algebra over different rings");
    if (!phi_[0].is_one()) throw InputError("the symbol map needs phi(0) = 1");
    for (std::size_t i = 0; i < algebra_->dim(); ++i)
        basis_coderivations_.push_back(coderivation(phi_, algebra_->element(i)));
}

SymbolMap SymbolMap::standard(AlgebraPtr algebra, int degree) {
    require_symbol_hypothesis(*algebra, degree);
    const int cap = symbol_series_cap(*algebra, degree);
    TruncSeries phi = phi_c(Scalar::one(algebra->ring()), cap);
    return SymbolMap(std::move(algebra), std::move(phi));
}

SymElement SymbolMap::symbol(const EnvWord& w) const {
    {
        std::lock_guard lock(memo_->mutex);
        if (auto it = memo_->symbols.find(w); it != memo_->symbols.end()) return it->second;
    }
    SymElement value = SymElement::one(algebra_);
    if (w.length() > 0) {
        // sigma(j(a_1) ... j(a_n)) = Phi^{a_1}(sigma(j(a_2) ... j(a_n))).
        const auto& l = w.letters();
        const SymElement tail = symbol(EnvWord(Letters(l.begin() + 1, l.end())));
        value = basis_coderivations_[l.front()](tail);
    }
    std::lock_guard lock(memo_->mutex);
    return memo_->symbols.emplace(w, std::move(value)).first->second;
}

SymElement SymbolMap::symbol(const EnvElement& u) const {
    if (u.algebra() != algebra_) throw std::invalid_argument("symbol: element of another algebra");
    SymElement r(algebra_);
    for (const auto& [w, c] : u.terms()) r += c * symbol(w);
    return r;
}

EnvElement SymbolMap::symmetrize(const SymMonomial& m) const {
    {
        std::lock_guard lock(memo_->mutex);
        if (auto it = memo_->symmetrized.find(m); it != memo_->symmetrized.end()) return it->second;
    }
    // sigma is unitriangular: sigma(lift(m)) = m + lower degree.
    const EnvWord top = lift(m);
    EnvElement value = EnvElement::word(algebra_, top, Scalar::one(algebra_->ring()));
    SymElement lower = symbol(top);
    lower -= SymElement::monomial(algebra_, m, Scalar::one(algebra_->ring()));
    if (lower.max_degree() >= m.degree()) throw std::logic_error("symbol map is not unitriangular");
    value -= symmetrize(lower);
    std::lock_guard lock(memo_->mutex);
    return memo_->symmetrized.emplace(m, std::move(value)).first->second;
}

EnvElement SymbolMap::symmetrize(const SymElement& w) const {
    if (w.algebra() != algebra_) throw std::invalid_argument("symmetrize: element of another algebra");
    EnvElement r(algebra_);
    for (const auto& [m, c] : w.terms()) r += c * symmetrize(m);
    return r;
}

SymElement symbol(const EnvElement& u, const TruncSeries& phi) { return SymbolMap(u.algebra(), phi).symbol(u); }

EnvElement symmetrize(const SymElement& w, const TruncSeries& phi) {
    return SymbolMap(w.algebra(), phi).symmetrize(w);
}

// --------------------------------------------------------------------- checks

namespace {

SymElement unit_monomial(const AlgebraPtr& alg, const SymMonomial& m) {
    return SymElement::monomial(alg, m, Scalar::one(alg->ring()));
}

}  // namespace

CheckReport conjugation_check(const SymbolMap& beta, ActionKind kind, const LieElement& a, int max_degree) {
    const AlgebraPtr& alg = beta.algebra();
    const RingSpec& ring = alg->ring();
    int cap = std::max(max_degree, 1);
    if (auto cls = alg->nilpotency_class()) cap = std::min(cap, std::max(*cls - 1, 1));
    TruncSeries series = phi_0(ring, cap);
    std::string name = "adjoint vs Phi_0";
    if (kind == ActionKind::left) {
        series = phi_c(Scalar::one(ring), cap);
        name = "left vs Phi_1";
    } else if (kind == ActionKind::right) {
        series = -phi_c(-Scalar::one(ring), cap);
        name = "right vs -Phi_-1";
    }
    CheckReport report(name);
    const Coderivation expected = coderivation(series, a);
    for (int n = 0; n <= max_degree; ++n)
        for (const auto& m : monomials_of_degree(*alg, n)) {
            report.count(n);
            const EnvElement u = beta.symmetrize(m);
            EnvElement acted(alg);
            switch (kind) {
                case ActionKind::adjoint: acted = adjoint(a, u); break;
                case ActionKind::left: acted = left_mul(a, u); break;
                case ActionKind::right: acted = right_mul(a, u); break;
            }
            const SymElement lhs = beta.symbol(acted);
            const SymElement rhs = expected(m);
            if (!(lhs == rhs))
                report.fail(n, "a=" + a.to_string() + ", W=" + m.to_string(*alg),
                            "conjugated action gives " + lhs.to_string() + ", coderivation gives " + rhs.to_string());
        }
    return report;
}

CheckReport compatibility_check(const SymbolMap& beta, int max_degree) {
    CheckReport report("coproduct compatibility");
    const AlgebraPtr& alg = beta.algebra();
    for (int n = 0; n <= max_degree; ++n)
        for (const auto& m : monomials_of_degree(*alg, n)) {
            report.count(n);
            const EnvTensor lhs = env_coproduct(beta.symmetrize(m));
            EnvTensor rhs(alg);
            const SymTensor delta = coproduct(*alg, m);
            for (const auto& [k, c] : delta.terms()) {
                const EnvElement left = beta.symmetrize(k.first);
                const EnvElement right = beta.symmetrize(k.second);
                for (const auto& [wl, cl] : left.terms())
                    for (const auto& [wr, cr] : right.terms()) rhs.add_term(wl, wr, c * cl * cr);
            }
            if (!(lhs == rhs))
                report.fail(n, "W=" + m.to_string(*alg), "Delta'(beta(W)) = " + lhs.to_string() + " vs " + rhs.to_string());
        }
    return report;
}

CheckReport inversion_check(const SymbolMap& beta, int max_degree) {
    CheckReport report("sigma/beta inversion");
    const AlgebraPtr& alg = beta.algebra();
    for (int n = 0; n <= max_degree; ++n)
        for (const auto& m : monomials_of_degree(*alg, n)) {
            report.count(n);
            const SymElement w = unit_monomial(alg, m);
            const SymElement back = beta.symbol(beta.symmetrize(m));
            if (!(back == w)) report.fail(n, "W=" + m.to_string(*alg), "sigma(beta(W)) = " + back.to_string());
            const EnvElement u = EnvElement::word(alg, lift(m), Scalar::one(alg->ring()));
            const EnvElement round = beta.symmetrize(beta.symbol(u));
            if (!(round == u)) report.fail(n, "u=" + u.to_string(), "beta(sigma(u)) = " + round.to_string());
        }
    return report;
}

CheckReport strong_pbw_check(const SymbolMap& beta, const std::vector<LieDerivation>& derivations,
                             const std::vector<LieMorphism>& automorphisms, int max_degree) {
    CheckReport report("strong PBW");
    const AlgebraPtr& alg = beta.algebra();
    std::vector<LieDerivation> all;
    for (std::size_t i = 0; i < alg->dim(); ++i) all.push_back(LieDerivation::inner(alg->element(i)));
    all.insert(all.end(), derivations.begin(), derivations.end());
    for (const auto& d : all)
        if (d.algebra() != alg) throw std::invalid_argument("derivation of another algebra");
    for (const auto& f : automorphisms)
        if (f.source() != alg || f.target() != alg) throw std::invalid_argument("automorphism of another algebra");

    for (int n = 0; n <= max_degree; ++n)
        for (const auto& m : monomials_of_degree(*alg, n)) {
            report.count(n);
            const std::string where = "W=" + m.to_string(*alg);
            const SymElement w = unit_monomial(alg, m);
            const EnvElement b = beta.symmetrize(m);
            if (b.degree() > n) report.fail(n, where, "beta(W) leaves U_n: " + b.to_string());
            if (!(b.degree_part(n) == EnvElement::word(alg, lift(m), Scalar::one(alg->ring()))))
                report.fail(n, where, "top part of beta(W) is " + b.degree_part(n).to_string());
            for (std::size_t k = 0; k < all.size(); ++k) {
                const EnvElement lhs = beta.symmetrize(sym_derivation(all[k], w));
                const EnvElement rhs = env_derivation(all[k], b);
                if (!(lhs == rhs))
                    report.fail(n, where + ", derivation " + std::to_string(k),
                                "beta(D W) = " + lhs.to_string() + " but D beta(W) = " + rhs.to_string());
            }
            for (std::size_t k = 0; k < automorphisms.size(); ++k) {
                const EnvElement lhs = beta.symmetrize(sym_apply(automorphisms[k], w));
                const EnvElement rhs = env_apply(automorphisms[k], b);
                if (!(lhs == rhs))
                    report.fail(n, where + ", automorphism " + std::to_string(k),
                                "beta(f W) = " + lhs.to_string() + " but f beta(W) = " + rhs.to_string());
            }
        }
    return report;
}

}  // namespace pbwk
