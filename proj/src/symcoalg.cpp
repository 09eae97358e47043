#include "pbwk/symcoalg.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace pbwk {

namespace {

int parity_of(const SuperLieAlgebra& alg, const std::vector<std::uint32_t>& factors) {
    int p = 0;
    for (auto f : factors) p ^= alg.parity(f);
    return p;
}

int homogeneous_parity(const LieElement& a, const char* what) {
    if (a.is_zero()) return 0;
    auto p = a.parity();
    if (!p) throw InputError(std::string(what) + " must be homogeneous");
    return *p;
}

Scalar signed_one(const RingSpec& ring, int sign) {
    return sign > 0 ? Scalar::one(ring) : -Scalar::one(ring);
}

/// Sorts a word of factors into a monomial: word = sign * monomial.
std::optional<std::pair<int, SymMonomial>> sort_word(const SuperLieAlgebra& alg, std::vector<std::uint32_t> word) {
    int sign = 1;
    // Insertion sort; each swap of two odd factors costs a sign.
    for (std::size_t i = 1; i < word.size(); ++i)
        for (std::size_t j = i; j > 0 && word[j - 1] >= word[j]; --j) {
            if (word[j - 1] == word[j]) {
                if (alg.parity(word[j]) == 1) return std::nullopt;
                break;
            }
            if (alg.parity(word[j - 1]) == 1 && alg.parity(word[j]) == 1) sign = -sign;
            std::swap(word[j - 1], word[j]);
        }
    return std::make_pair(sign, SymMonomial(std::move(word)));
}

/// Sign alpha with X_P X_rest = alpha X_1...X_n, P given by a bit mask.
int shuffle_sign(const SuperLieAlgebra& alg, const std::vector<std::uint32_t>& factors, unsigned mask) {
    int sign = 1;
    int odd_rest_before = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const bool odd = alg.parity(factors[i]) == 1;
        if (mask >> i & 1U) {
            if (odd && (odd_rest_before & 1)) sign = -sign;
        } else if (odd) {
            ++odd_rest_before;
        }
    }
    return sign;
}

void split(const std::vector<std::uint32_t>& factors, unsigned mask, std::vector<std::uint32_t>& chosen,
           std::vector<std::uint32_t>& rest) {
    chosen.clear();
    rest.clear();
    for (std::size_t i = 0; i < factors.size(); ++i) (mask >> i & 1U ? chosen : rest).push_back(factors[i]);
}

void check_degree_mask(const SymMonomial& m) {
    if (m.degree() >= 31) throw Unsupported("monomial degree too large for subset enumeration");
}

}  // namespace

// ----------------------------------------------------------------- monomials

SymMonomial::SymMonomial(std::vector<std::uint32_t> factors) : factors_(std::move(factors)) {
    std::sort(factors_.begin(), factors_.end());
}

int SymMonomial::parity(const SuperLieAlgebra& algebra) const { return parity_of(algebra, factors_); }

std::string SymMonomial::to_string(const SuperLieAlgebra& algebra) const {
    if (factors_.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) out += "*";
        out += algebra.label(factors_[i]);
    }
    return out;
}

std::optional<std::pair<int, SymMonomial>> multiply_monomials(const SuperLieAlgebra& algebra, const SymMonomial& a,
                                                              const SymMonomial& b) {
    std::vector<std::uint32_t> word = a.factors();
    word.insert(word.end(), b.factors().begin(), b.factors().end());
    return sort_word(algebra, std::move(word));
}

std::vector<SymMonomial> monomials_of_degree(const SuperLieAlgebra& algebra, int n) {
    std::vector<SymMonomial> out;
    if (n < 0) return out;
    std::vector<std::uint32_t> current;
    const auto dim = static_cast<std::uint32_t>(algebra.dim());
    auto recurse = [&](auto&& self, std::uint32_t start) -> void {
        if (current.size() == static_cast<std::size_t>(n)) {
            out.emplace_back(current);
            return;
        }
        for (std::uint32_t i = start; i < dim; ++i) {
            current.push_back(i);
            // Odd generators may not repeat.
            self(self, algebra.parity(i) == 1 ? i + 1 : i);
            current.pop_back();
        }
    };
    recurse(recurse, 0);
    return out;
}

// ------------------------------------------------------------------ elements

SymElement::SymElement(AlgebraPtr algebra) : algebra_(std::move(algebra)) {
    if (!algebra_) throw std::invalid_argument("SymElement needs an algebra");
}

SymElement SymElement::one(AlgebraPtr algebra) {
    const RingSpec ring = algebra->ring();
    return constant(std::move(algebra), Scalar::one(ring));
}

SymElement SymElement::constant(AlgebraPtr algebra, const Scalar& c) {
    return monomial(std::move(algebra), SymMonomial(), c);
}

SymElement SymElement::monomial(AlgebraPtr algebra, const SymMonomial& m, const Scalar& c) {
    SymElement r(std::move(algebra));
    r.add_term(m, c);
    return r;
}

SymElement SymElement::from_lie(const LieElement& a) {
    SymElement r(a.algebra());
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (!a[i].is_zero()) r.add_term(SymMonomial({static_cast<std::uint32_t>(i)}), a[i]);
    return r;
}

Scalar SymElement::coeff(const SymMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar::zero(algebra_->ring()) : it->second;
}

void SymElement::add_term(const SymMonomial& m, const Scalar& c) {
    if (!(c.ring() == algebra_->ring())) throw RingMismatch("coefficient from another ring");
    if (c.is_zero()) return;
    for (std::size_t i = 1; i < m.factors().size(); ++i)
        if (m.factors()[i] == m.factors()[i - 1] && algebra_->parity(m.factors()[i]) == 1) return;
    for (auto f : m.factors())
        if (f >= algebra_->dim()) throw std::out_of_range("monomial factor outside the basis");
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

int SymElement::max_degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }

SymElement SymElement::degree_part(int n) const {
    SymElement r(algebra_);
    for (const auto& [m, c] : terms_)
        if (m.degree() == n) r.terms_.emplace(m, c);
    return r;
}

LieElement SymElement::linear_part() const {
    LieElement r = algebra_->zero();
    for (const auto& [m, c] : terms_)
        if (m.degree() == 1) r.add_to(m.factors()[0], c);
    return r;
}

SymElement& SymElement::operator+=(const SymElement& other) {
    if (algebra_ != other.algebra_) throw std::invalid_argument("elements of different algebras");
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

SymElement& SymElement::operator-=(const SymElement& other) {
    if (algebra_ != other.algebra_) throw std::invalid_argument("elements of different algebras");
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
}

SymElement& SymElement::operator*=(const Scalar& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second *= s;
        it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
    }
    return *this;
}

SymElement SymElement::operator-() const {
    SymElement r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

std::string SymElement::to_string() const {
    std::ostringstream os;
    bool first = true;
    // Highest degree first, lexicographic within a degree.
    std::vector<const std::pair<const SymMonomial, Scalar>*> order;
    for (const auto& term : terms_) order.push_back(&term);
    std::stable_sort(order.begin(), order.end(), [](auto* a, auto* b) { return a->first.degree() > b->first.degree(); });
    for (const auto* term : order)
        append_term(os, first, term->second, term->first.degree() ? term->first.to_string(*algebra_) : "");
    if (first) os << "0";
    return os.str();
}

SymElement sym_mul(const SymElement& a, const SymElement& b) {
    if (a.algebra() != b.algebra()) throw std::invalid_argument("sym_mul: elements of different algebras");
    SymElement r(a.algebra());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            auto prod = multiply_monomials(*a.algebra(), ma, mb);
            if (!prod) continue;
            Scalar c = ca * cb;
            if (prod->first < 0) c = -c;
            r.add_term(prod->second, c);
        }
    return r;
}

// ------------------------------------------------------------------- tensors

void SymTensor::add_term(const SymMonomial& left, const SymMonomial& right, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(Key{left, right}, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

SymTensor& SymTensor::operator+=(const SymTensor& other) {
    if (algebra_ != other.algebra_) throw std::invalid_argument("tensors over different algebras");
    for (const auto& [k, c] : other.terms_) add_term(k.first, k.second, c);
    return *this;
}

SymTensor& SymTensor::operator-=(const SymTensor& other) {
    if (algebra_ != other.algebra_) throw std::invalid_argument("tensors over different algebras");
    for (const auto& [k, c] : other.terms_) add_term(k.first, k.second, -c);
    return *this;
}

std::string SymTensor::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_)
        append_term(os, first, c, k.first.to_string(*algebra_) + " (x) " + k.second.to_string(*algebra_));
    if (first) os << "0";
    return os.str();
}

SymTensor coproduct(const SuperLieAlgebra& algebra, const SymMonomial& m) {
    check_degree_mask(m);
    SymTensor r(algebra.shared_from_this());
    const auto& f = m.factors();
    std::vector<std::uint32_t> chosen, rest;
    for (unsigned mask = 0; mask < (1U << f.size()); ++mask) {
        split(f, mask, chosen, rest);
        r.add_term(SymMonomial(chosen), SymMonomial(rest),
                   signed_one(algebra.ring(), shuffle_sign(algebra, f, mask)));
    }
    return r;
}

SymTensor coproduct(const SymElement& w) {
    SymTensor r(w.algebra());
    for (const auto& [m, c] : w.terms()) {
        const SymTensor delta = coproduct(*w.algebra(), m);
        for (const auto& [k, d] : delta.terms()) r.add_term(k.first, k.second, c * d);
    }
    return r;
}

Scalar counit(const SymElement& w) { return w.coeff(SymMonomial()); }

SymElement antipode(const SymElement& w) {
    SymElement r(w.algebra());
    for (const auto& [m, c] : w.terms()) r.add_term(m, m.degree() % 2 ? -c : c);
    return r;
}

SymElement multiply(const SymTensor& w) {
    SymElement r(w.algebra());
    for (const auto& [k, c] : w.terms()) {
        auto prod = multiply_monomials(*w.algebra(), k.first, k.second);
        if (prod) r.add_term(prod->second, prod->first > 0 ? c : -c);
    }
    return r;
}

SymTensor flip(const SymTensor& w) {
    SymTensor r(w.algebra());
    const SuperLieAlgebra& alg = *w.algebra();
    for (const auto& [k, c] : w.terms())
        r.add_term(k.second, k.first, (k.first.parity(alg) & k.second.parity(alg)) ? -c : c);
    return r;
}

// ------------------------------------------------------------------ maps

SymElement SymMap::operator()(const SymElement& w) const {
    SymElement r(algebra_);
    for (const auto& [m, c] : w.terms()) r += c * fn_(m);
    return r;
}

SymMap SymMap::identity(AlgebraPtr algebra) {
    AlgebraPtr alg = algebra;
    return SymMap(std::move(algebra), 0, [alg](const SymMonomial& m) {
        return SymElement::monomial(alg, m, Scalar::one(alg->ring()));
    });
}

SymMap SymMap::counit_map(AlgebraPtr algebra) {
    AlgebraPtr alg = algebra;
    return SymMap(std::move(algebra), 0, [alg](const SymMonomial& m) {
        return m.degree() == 0 ? SymElement::one(alg) : SymElement(alg);
    });
}

SymMap SymMap::antipode_map(AlgebraPtr algebra) {
    AlgebraPtr alg = algebra;
    return SymMap(std::move(algebra), 0, [alg](const SymMonomial& m) {
        const Scalar one = Scalar::one(alg->ring());
        return SymElement::monomial(alg, m, m.degree() % 2 ? -one : one);
    });
}

SymTensor tensor_apply(const SymMap& f, const SymMap& g, const SymTensor& w) {
    SymTensor r(w.algebra());
    const SuperLieAlgebra& alg = *w.algebra();
    for (const auto& [k, c] : w.terms()) {
        const SymElement fl = f(k.first);
        if (fl.is_zero()) continue;
        const SymElement gr = g(k.second);
        const Scalar coeff = (g.parity() & k.first.parity(alg)) ? -c : c;
        for (const auto& [ml, cl] : fl.terms())
            for (const auto& [mr, cr] : gr.terms()) r.add_term(ml, mr, coeff * cl * cr);
    }
    return r;
}

SymMap convolution(const SymMap& f, const SymMap& g) {
    return SymMap(f.algebra(), f.parity() ^ g.parity(), [f, g](const SymMonomial& m) {
        return multiply(tensor_apply(f, g, coproduct(*f.algebra(), m)));
    });
}

SymMap compose(const SymMap& f, const SymMap& g) {
    return SymMap(f.algebra(), f.parity() ^ g.parity(), [f, g](const SymMonomial& m) { return f(g(m)); });
}

// ------------------------------------------------------------ vector fields

struct VectorField::Memo {
    std::mutex mutex;
    std::map<SymMonomial, LieElement> values;
};

VectorField::VectorField(AlgebraPtr algebra, int parity, Fn on_monomial)
    : algebra_(std::move(algebra)), parity_(parity), fn_(std::move(on_monomial)), memo_(std::make_shared<Memo>()) {}

LieElement VectorField::operator()(const SymMonomial& m) const {
    {
        std::lock_guard lock(memo_->mutex);
        auto it = memo_->values.find(m);
        if (it != memo_->values.end()) return it->second;
    }
    LieElement value = fn_(m);
    std::lock_guard lock(memo_->mutex);
    return memo_->values.emplace(m, std::move(value)).first->second;
}

LieElement VectorField::operator()(const SymElement& w) const {
    LieElement r = algebra_->zero();
    for (const auto& [m, c] : w.terms()) r += c * (*this)(m);
    return r;
}

SymMap VectorField::as_map() const {
    VectorField self = *this;
    return SymMap(algebra_, parity_, [self](const SymMonomial& m) { return SymElement::from_lie(self(m)); });
}

LieElement ordered_ad_sum(const LieElement& y, const SymMonomial& m) {
    const SuperLieAlgebra& alg = *y.algebra();
    std::map<std::vector<std::uint32_t>, LieElement> memo;
    // T(W) = sum_i eps_i [X_i, T(W \ X_i)], eps_i the sign of moving X_i to the front.
    auto rec = [&](auto&& self, const std::vector<std::uint32_t>& w) -> LieElement {
        if (w.empty()) return y;
        if (auto it = memo.find(w); it != memo.end()) return it->second;
        LieElement total = alg.zero();
        int odd_before = 0;
        for (std::size_t i = 0; i < w.size();) {
            std::size_t j = i;
            while (j < w.size() && w[j] == w[i]) ++j;
            const bool odd = alg.parity(w[i]) == 1;
            std::vector<std::uint32_t> rest = w;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
            LieElement term = alg.ad_basis(w[i], self(self, rest));
            Scalar factor(alg.ring(), static_cast<long>(j - i));
            if (odd && (odd_before & 1)) factor = -factor;
            total += factor * term;
            if (odd) odd_before += static_cast<int>(j - i);
            i = j;
        }
        memo.emplace(w, total);
        return total;
    };
    return rec(rec, m.factors());
}

namespace {

/// ad^n vanishes on the whole algebra.
bool ad_power_vanishes(const SuperLieAlgebra& alg, int n) {
    auto cls = alg.nilpotency_class();
    return cls && *cls <= n;
}

}  // namespace

VectorField generic_field(const TruncSeries& phi, const LieElement& a) {
    if (!(phi.ring() == a.algebra()->ring())) throw RingMismatch("series and algebra over different rings");
    const int pa = homogeneous_parity(a, "generic_field: the element");
    return VectorField(a.algebra(), pa, [phi, a, pa](const SymMonomial& m) {
        const SuperLieAlgebra& alg = *a.algebra();
        const int n = m.degree();
        if (n > phi.cap()) {
            if (ad_power_vanishes(alg, n)) return alg.zero();
            throw InputError("degree " + std::to_string(n) + " exceeds the series cap " + std::to_string(phi.cap()));
        }
        if (phi[n].is_zero()) return alg.zero();
        Scalar c = phi[n];
        if (pa & m.parity(alg)) c = -c;
        return c * ordered_ad_sum(a, m);
    });
}

VectorField pairing_field(const BiTruncSeries& rho, const LieElement& a, const LieElement& b) {
    if (a.algebra() != b.algebra()) throw std::invalid_argument("pairing_field: elements of different algebras");
    if (!(rho.ring() == a.algebra()->ring())) throw RingMismatch("series and algebra over different rings");
    const int pa = homogeneous_parity(a, "pairing_field: the left element");
    const int pb = homogeneous_parity(b, "pairing_field: the right element");
    return VectorField(a.algebra(), pa ^ pb, [rho, a, b, pa, pb](const SymMonomial& m) {
        const SuperLieAlgebra& alg = *a.algebra();
        const int n = m.degree();
        if (n > rho.cap()) {
            // n + 2 elements are bracketed together.
            if (ad_power_vanishes(alg, n + 1)) return alg.zero();
            throw InputError("degree " + std::to_string(n) + " exceeds the series cap " + std::to_string(rho.cap()));
        }
        check_degree_mask(m);
        const auto& f = m.factors();
        const int pw = m.parity(alg);
        LieElement total = alg.zero();
        std::vector<std::uint32_t> chosen, rest;
        for (unsigned mask = 0; mask < (1U << f.size()); ++mask) {
            split(f, mask, chosen, rest);
            const Scalar& coeff = rho.coeff(static_cast<int>(chosen.size()), static_cast<int>(rest.size()));
            if (coeff.is_zero()) continue;
            const SymMonomial mp(chosen), mr(rest);
            int sign = shuffle_sign(alg, f, mask);
            if ((pw & pb) ^ (pa & mp.parity(alg))) sign = -sign;
            const LieElement left = ordered_ad_sum(a, mp);
            const LieElement right = ordered_ad_sum(b, mr);
            total += (sign > 0 ? coeff : -coeff) * bracket(left, right);
        }
        return total;
    });
}

VectorField generic_point(AlgebraPtr algebra) {
    AlgebraPtr alg = algebra;
    return VectorField(std::move(algebra), 0, [alg](const SymMonomial& m) {
        return m.degree() == 1 ? alg->element(m.factors()[0]) : alg->zero();
    });
}

// --------------------------------------------------------------- coderivations

struct Coderivation::Memo {
    std::mutex mutex;
    std::map<SymMonomial, SymElement> values;
};

Coderivation::Coderivation(VectorField field) : field_(std::move(field)), memo_(std::make_shared<Memo>()) {}

SymElement Coderivation::operator()(const SymMonomial& m) const {
    {
        std::lock_guard lock(memo_->mutex);
        auto it = memo_->values.find(m);
        if (it != memo_->values.end()) return it->second;
    }
    check_degree_mask(m);
    const SuperLieAlgebra& alg = *algebra();
    const auto& f = m.factors();
    SymElement value(algebra());
    std::vector<std::uint32_t> chosen, rest;
    // Phi(W) = sum over W' (x) W'' of (-1)^{p(field)p(W')} W' . field(W'').
    for (unsigned mask = 0; mask < (1U << f.size()); ++mask) {
        split(f, mask, chosen, rest);
        const SymMonomial mp(chosen);
        const LieElement v = field_(SymMonomial(rest));
        if (v.is_zero()) continue;
        int sign = shuffle_sign(alg, f, mask);
        if (parity() & mp.parity(alg)) sign = -sign;
        for (std::size_t k = 0; k < v.dim(); ++k) {
            if (v[k].is_zero()) continue;
            auto prod = multiply_monomials(alg, mp, SymMonomial({static_cast<std::uint32_t>(k)}));
            if (!prod) continue;
            value.add_term(prod->second, (sign * prod->first) > 0 ? v[k] : -v[k]);
        }
    }
    std::lock_guard lock(memo_->mutex);
    return memo_->values.emplace(m, std::move(value)).first->second;
}

SymElement Coderivation::operator()(const SymElement& w) const {
    SymElement r(algebra());
    for (const auto& [m, c] : w.terms()) r += c * (*this)(m);
    return r;
}

SymMap Coderivation::as_map() const {
    Coderivation self = *this;
    return SymMap(algebra(), parity(), [self](const SymMonomial& m) { return self(m); });
}

Coderivation coderivation(const TruncSeries& phi, const LieElement& a) { return Coderivation(generic_field(phi, a)); }

// -------------------------------------------------------------------- checks

namespace {

std::string pair_witness(const SuperLieAlgebra& alg, const std::string& a, const std::string& b, const SymMonomial& m) {
    return "a=" + a + ", b=" + b + ", W=" + m.to_string(alg);
}

/// Lambda^c(W) for c = sum c_k e_k, using per-basis coderivations.
SymElement linear_combination(const std::vector<Coderivation>& basis_cds, const LieElement& c, const SymMonomial& m) {
    SymElement r(c.algebra());
    for (std::size_t k = 0; k < c.dim(); ++k)
        if (!c[k].is_zero()) r += c[k] * basis_cds[k](m);
    return r;
}

}  // namespace

CheckReport commutator_defect(const TruncSeries& phi, const TruncSeries& psi, const TruncSeries& lambda,
                              const LieElement& a, const LieElement& b, int max_degree) {
    CheckReport report("commutator");
    const AlgebraPtr& alg = a.algebra();
    const int pa = homogeneous_parity(a, "commutator_defect: a");
    const int pb = homogeneous_parity(b, "commutator_defect: b");
    const Coderivation phi_a = coderivation(phi, a);
    const Coderivation psi_b = coderivation(psi, b);
    const LieElement ab = bracket(a, b);
    const Coderivation lambda_ab = coderivation(lambda, ab);
    for (int n = 0; n <= max_degree; ++n)
        for (const auto& m : monomials_of_degree(*alg, n)) {
            report.count(n);
            SymElement d = phi_a(psi_b(m));
            const SymElement swapped = psi_b(phi_a(m));
            if (pa & pb) d += swapped;
            else d -= swapped;
            d -= lambda_ab(m);
            if (!d.is_zero()) report.fail(n, pair_witness(*alg, a.to_string(), b.to_string(), m), d.to_string());
        }
    return report;
}

CheckReport representation_check(const TruncSeries& phi, const TruncSeries& psi, const TruncSeries& lambda,
                                 const AlgebraPtr& algebra, int max_degree) {
    CheckReport report("representation");
    std::vector<Coderivation> phis, psis, lambdas;
    for (std::size_t i = 0; i < algebra->dim(); ++i) {
        phis.push_back(coderivation(phi, algebra->element(i)));
        psis.push_back(coderivation(psi, algebra->element(i)));
        lambdas.push_back(coderivation(lambda, algebra->element(i)));
    }
    for (int n = 0; n <= max_degree; ++n) {
        const auto monomials = monomials_of_degree(*algebra, n);
        for (std::size_t i = 0; i < algebra->dim(); ++i)
            for (std::size_t j = 0; j < algebra->dim(); ++j) {
                const bool both_odd = algebra->parity(i) == 1 && algebra->parity(j) == 1;
                const LieElement ij = bracket(algebra->element(i), algebra->element(j));
                for (const auto& m : monomials) {
                    report.count(n);
                    SymElement d = phis[i](psis[j](m));
                    const SymElement swapped = psis[j](phis[i](m));
                    if (both_odd) d += swapped;
                    else d -= swapped;
                    d -= linear_combination(lambdas, ij, m);
                    if (!d.is_zero())
                        report.fail(n, pair_witness(*algebra, algebra->label(i), algebra->label(j), m), d.to_string());
                }
            }
    }
    return report;
}

SymElement sym_apply(const LieMorphism& f, const SymElement& w) {
    if (w.algebra() != f.source()) throw std::invalid_argument("sym_apply: element outside the source");
    SymElement r(f.target());
    for (const auto& [m, c] : w.terms()) {
        SymElement image = SymElement::constant(f.target(), c);
        for (auto k : m.factors()) image = sym_mul(image, SymElement::from_lie(f.image(k)));
        r += image;
    }
    return r;
}

CheckReport functoriality_check(const LieMorphism& f, const TruncSeries& phi, int max_degree) {
    CheckReport report("functoriality");
    const AlgebraPtr& src = f.source();
    for (std::size_t i = 0; i < src->dim(); ++i) {
        const Coderivation source_cd = coderivation(phi, src->element(i));
        const Coderivation target_cd = coderivation(phi, f.image(i));
        for (int n = 0; n <= max_degree; ++n)
            for (const auto& m : monomials_of_degree(*src, n)) {
                report.count(n);
                const SymElement w = SymElement::monomial(src, m, Scalar::one(src->ring()));
                const SymElement lhs = sym_apply(f, source_cd(w));
                const SymElement rhs = target_cd(sym_apply(f, w));
                if (!(lhs == rhs))
                    report.fail(n, "a=" + src->label(i) + ", W=" + m.to_string(*src),
                                "f(Phi^a(W)) = " + lhs.to_string() + " but Phi^{f(a)}(f(W)) = " + rhs.to_string());
            }
    }
    return report;
}

CheckReport derivative_formula_check(const TruncSeries& q, const LieElement& y, const LieElement& z, int max_degree) {
    CheckReport report("derivative formula");
    const AlgebraPtr& alg = y.algebra();
    const int py = homogeneous_parity(y, "derivative_formula_check: Y");
    const int pz = homogeneous_parity(z, "derivative_formula_check: Z");
    TruncSeries poly(q.ring(), std::max(q.cap(), max_degree + 1));
    for (int k = 0; k <= q.cap(); ++k) poly.set(k, q[k]);
    const VectorField field = generic_field(poly, z);
    const VectorField pairing = pairing_field(divided_difference(poly, Variable::t), y, z);
    const SymElement y_sym = SymElement::from_lie(y);
    for (int n = 0; n <= max_degree; ++n)
        for (const auto& m : monomials_of_degree(*alg, n)) {
            report.count(n);
            const SymElement w = SymElement::monomial(alg, m, Scalar::one(alg->ring()));
            LieElement lhs = field(sym_mul(y_sym, w));
            if (py & pz) lhs = -lhs;
            const LieElement rhs = pairing(m);
            if (!(lhs == rhs))
                report.fail(n, "W=" + m.to_string(*alg), "lhs " + lhs.to_string() + ", rhs " + rhs.to_string());
        }
    return report;
}

CheckReport coalgebra_axioms_check(const AlgebraPtr& algebra, int max_degree) {
    CheckReport report("coalgebra axioms");
    const SuperLieAlgebra& alg = *algebra;
    const SymMap id = SymMap::identity(algebra);
    const SymMap eps = SymMap::counit_map(algebra);
    const SymMap anti = SymMap::antipode_map(algebra);
    const SymMap left_inverse = convolution(anti, id);
    const SymMap right_inverse = convolution(id, anti);
    using Triple = std::tuple<SymMonomial, SymMonomial, SymMonomial>;
    for (int n = 0; n <= max_degree; ++n)
        for (const auto& m : monomials_of_degree(alg, n)) {
            report.count(n);
            const std::string where = "W=" + m.to_string(alg);
            const SymElement w = SymElement::monomial(algebra, m, Scalar::one(alg.ring()));
            const SymTensor delta = coproduct(alg, m);

            std::map<Triple, Scalar> left, right;
            auto add = [](std::map<Triple, Scalar>& into, Triple key, const Scalar& c) {
                auto [it, inserted] = into.emplace(std::move(key), c);
                if (!inserted) it->second += c;
            };
            for (const auto& [k, c] : delta.terms()) {
                const SymTensor left_delta = coproduct(alg, k.first);
                for (const auto& [k2, c2] : left_delta.terms())
                    add(left, {k2.first, k2.second, k.second}, c * c2);
                const SymTensor right_delta = coproduct(alg, k.second);
                for (const auto& [k2, c2] : right_delta.terms())
                    add(right, {k.first, k2.first, k2.second}, c * c2);
            }
            std::erase_if(left, [](const auto& kv) { return kv.second.is_zero(); });
            std::erase_if(right, [](const auto& kv) { return kv.second.is_zero(); });
            if (left != right) report.fail(n, where, "coassociativity");
            if (!(flip(delta) == delta)) report.fail(n, where, "cocommutativity");
            if (!(multiply(tensor_apply(id, eps, delta)) == w) || !(multiply(tensor_apply(eps, id, delta)) == w))
                report.fail(n, where, "counit law");
            const SymElement unit = SymElement::constant(algebra, counit(w));
            if (!(multiply(tensor_apply(id, anti, delta)) == unit) || !(multiply(tensor_apply(anti, id, delta)) == unit))
                report.fail(n, where, "antipode law");
            if (!(left_inverse(m) == unit) || !(right_inverse(m) == unit))
                report.fail(n, where, "antipode convolution");
        }
    return report;
}

CheckReport coderivation_law_check(const Coderivation& cd, int max_degree) {
    CheckReport report("coderivation law");
    const AlgebraPtr& algebra = cd.algebra();
    const SymMap id = SymMap::identity(algebra);
    const SymMap phi = cd.as_map();
    const SymMap recovered = convolution(SymMap::antipode_map(algebra), phi);
    const SymMap field = cd.field().as_map();
    for (int n = 0; n <= max_degree; ++n)
        for (const auto& m : monomials_of_degree(*algebra, n)) {
            report.count(n);
            const SymTensor delta = coproduct(*algebra, m);
            const SymTensor lhs = coproduct(cd(m));
            const SymTensor rhs = tensor_apply(phi, id, delta) + tensor_apply(id, phi, delta);
            if (!(lhs == rhs)) report.fail(n, "W=" + m.to_string(*algebra), "Delta o Phi != (Phi(x)id + id(x)Phi) o Delta");
            if (!(recovered(m) == field(m)))
                report.fail(n, "W=" + m.to_string(*algebra), "delta * Phi = " + recovered(m).to_string());
        }
    return report;
}

}  // namespace pbwk
