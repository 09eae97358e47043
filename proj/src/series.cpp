#include "pbwk/series.hpp"

#include <sstream>
#include <stdexcept>

namespace pbwk {

namespace {

std::string power(const std::string& var, int k) {
    if (k == 0) return "";
    if (k == 1) return var;
    return var + "^" + std::to_string(k);
}

}  // namespace

// ---------------------------------------------------------------- TruncSeries

TruncSeries::TruncSeries(const RingSpec& ring, int cap) : ring_(ring) {
    if (cap < 0) throw std::invalid_argument("series cap must be non-negative");
    coeffs_.assign(static_cast<std::size_t>(cap) + 1, Scalar::zero(ring));
}

TruncSeries::TruncSeries(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("series needs at least one coefficient");
    ring_ = coeffs_.front().ring();
    for (const auto& c : coeffs_)
        if (!(c.ring() == ring_)) throw RingMismatch("series coefficients from different rings");
}

TruncSeries TruncSeries::constant(const Scalar& c, int cap) {
    TruncSeries s(c.ring(), cap);
    s.coeffs_[0] = c;
    return s;
}

TruncSeries TruncSeries::variable(const RingSpec& ring, int cap) {
    TruncSeries s(ring, cap);
    if (cap >= 1) s.coeffs_[1] = Scalar::one(ring);
    return s;
}

Scalar TruncSeries::coeff(int k) const {
    if (k < 0 || k > cap()) return Scalar::zero(ring_);
    return coeffs_[static_cast<std::size_t>(k)];
}

void TruncSeries::set(int k, const Scalar& value) {
    if (!(value.ring() == ring_)) throw RingMismatch("coefficient ring mismatch");
    coeffs_.at(static_cast<std::size_t>(k)) = value;
}

bool TruncSeries::is_zero() const {
    for (const auto& c : coeffs_)
        if (!c.is_zero()) return false;
    return true;
}

TruncSeries TruncSeries::truncated(int new_cap) const {
    if (new_cap > cap()) throw std::invalid_argument("cannot raise the cap of a truncated series");
    TruncSeries r(ring_, new_cap);
    for (int k = 0; k <= new_cap; ++k) r.coeffs_[k] = coeffs_[k];
    return r;
}

TruncSeries TruncSeries::derivative() const {
    if (cap() < 1) throw std::invalid_argument("derivative needs cap >= 1");
    TruncSeries r(ring_, cap() - 1);
    for (int k = 1; k <= cap(); ++k) r.coeffs_[k - 1] = coeffs_[k] * Scalar(ring_, k);
    return r;
}

void TruncSeries::check_compatible(const TruncSeries& other) const {
    if (!(ring_ == other.ring_)) throw RingMismatch("series ring mismatch");
    if (cap() != other.cap())
        throw std::invalid_argument("series cap mismatch: " + std::to_string(cap()) + " vs " +
                                    std::to_string(other.cap()));
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& other) {
    check_compatible(other);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
    return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& other) {
    check_compatible(other);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
    return *this;
}

TruncSeries& TruncSeries::operator*=(const TruncSeries& other) {
    check_compatible(other);
    const int d = cap();
    std::vector<Scalar> out(coeffs_.size(), Scalar::zero(ring_));
    for (int i = 0; i <= d; ++i) {
        if (coeffs_[i].is_zero()) continue;
        for (int j = 0; i + j <= d; ++j) out[i + j] += coeffs_[i] * other.coeffs_[j];
    }
    coeffs_ = std::move(out);
    return *this;
}

TruncSeries& TruncSeries::operator*=(const Scalar& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
}

TruncSeries TruncSeries::operator-() const {
    TruncSeries r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

std::string TruncSeries::to_string(const std::string& var) const {
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k <= cap(); ++k)
        if (!coeffs_[k].is_zero()) append_term(os, first, coeffs_[k], power(var, k));
    if (first) os << "0";
    return os.str();
}

// -------------------------------------------------------------- BiTruncSeries

BiTruncSeries::BiTruncSeries(const RingSpec& ring, int cap) : ring_(ring), cap_(cap) {
    if (cap < 0) throw std::invalid_argument("bivariate cap must be non-negative");
    data_.assign(static_cast<std::size_t>(cap + 1) * (cap + 2) / 2, Scalar::zero(ring));
}

std::size_t BiTruncSeries::index(int i, int j) const {
    const int d = i + j;
    if (i < 0 || j < 0 || d > cap_) throw std::out_of_range("bivariate index beyond cap");
    return static_cast<std::size_t>(d) * (d + 1) / 2 + static_cast<std::size_t>(i);
}

BiTruncSeries BiTruncSeries::in_t(const TruncSeries& q) {
    BiTruncSeries r(q.ring(), q.cap());
    for (int k = 0; k <= q.cap(); ++k) r.set(k, 0, q[k]);
    return r;
}

BiTruncSeries BiTruncSeries::in_u(const TruncSeries& q) {
    BiTruncSeries r(q.ring(), q.cap());
    for (int k = 0; k <= q.cap(); ++k) r.set(0, k, q[k]);
    return r;
}

void BiTruncSeries::add_to(int i, int j, const Scalar& value) { data_.at(index(i, j)) += value; }

bool BiTruncSeries::is_zero() const {
    for (const auto& c : data_)
        if (!c.is_zero()) return false;
    return true;
}

BiTruncSeries BiTruncSeries::truncated(int new_cap) const {
    if (new_cap > cap_) throw std::invalid_argument("cannot raise the cap of a truncated series");
    BiTruncSeries r(ring_, new_cap);
    r.data_.assign(data_.begin(), data_.begin() + static_cast<std::ptrdiff_t>(r.data_.size()));
    return r;
}

BiTruncSeries BiTruncSeries::swapped() const {
    BiTruncSeries r(ring_, cap_);
    for (int d = 0; d <= cap_; ++d)
        for (int i = 0; i <= d; ++i) r.set(d - i, i, coeff(i, d - i));
    return r;
}

void BiTruncSeries::check_compatible(const BiTruncSeries& other) const {
    if (!(ring_ == other.ring_)) throw RingMismatch("series ring mismatch");
    if (cap_ != other.cap_)
        throw std::invalid_argument("series cap mismatch: " + std::to_string(cap_) + " vs " +
                                    std::to_string(other.cap_));
}

BiTruncSeries& BiTruncSeries::operator+=(const BiTruncSeries& other) {
    check_compatible(other);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

BiTruncSeries& BiTruncSeries::operator-=(const BiTruncSeries& other) {
    check_compatible(other);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

BiTruncSeries& BiTruncSeries::operator*=(const Scalar& s) {
    for (auto& c : data_) c *= s;
    return *this;
}

BiTruncSeries operator*(const BiTruncSeries& a, const BiTruncSeries& b) {
    a.check_compatible(b);
    BiTruncSeries r(a.ring_, a.cap_);
    for (int d1 = 0; d1 <= a.cap_; ++d1)
        for (int i1 = 0; i1 <= d1; ++i1) {
            const Scalar& x = a.coeff(i1, d1 - i1);
            if (x.is_zero()) continue;
            for (int d2 = 0; d1 + d2 <= a.cap_; ++d2)
                for (int i2 = 0; i2 <= d2; ++i2) {
                    const Scalar& y = b.coeff(i2, d2 - i2);
                    if (!y.is_zero()) r.add_to(i1 + i2, d1 - i1 + d2 - i2, x * y);
                }
        }
    return r;
}

BiTruncSeries BiTruncSeries::operator-() const {
    BiTruncSeries r = *this;
    for (auto& c : r.data_) c = -c;
    return r;
}

std::string BiTruncSeries::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int d = 0; d <= cap_; ++d)
        for (int i = d; i >= 0; --i) {
            const Scalar& c = coeff(i, d - i);
            if (c.is_zero()) continue;
            std::string mono = power("t", i);
            std::string mu = power("u", d - i);
            if (!mono.empty() && !mu.empty()) mono += "*";
            append_term(os, first, c, mono + mu);
        }
    if (first) os << "0";
    return os.str();
}

// ----------------------------------------------------------------- operations

Scalar binomial(const RingSpec& ring, int n, int k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Scalar(ring, mpq_class(b));
}

BiTruncSeries compose_shift(const TruncSeries& q) {
    BiTruncSeries r(q.ring(), q.cap());
    for (int k = 0; k <= q.cap(); ++k) {
        if (q[k].is_zero()) continue;
        for (int i = 0; i <= k; ++i) r.add_to(i, k - i, q[k] * binomial(q.ring(), k, i));
    }
    return r;
}

BiTruncSeries divided_difference(const TruncSeries& q, Variable by) {
    if (q.cap() < 1) throw std::invalid_argument("divided difference needs cap >= 1");
    BiTruncSeries r(q.ring(), q.cap() - 1);
    for (int k = 1; k <= q.cap(); ++k) {
        if (q[k].is_zero()) continue;
        // (t+u)^k minus the pure power of the other variable, divided once.
        for (int i = 1; i <= k; ++i) {
            Scalar c = q[k] * binomial(q.ring(), k, i);
            if (by == Variable::t)
                r.add_to(i - 1, k - i, c);
            else
                r.add_to(k - i, i - 1, c);
        }
    }
    return r;
}

TruncSeries reciprocal(const TruncSeries& s) {
    const Scalar inv0 = s[0].inv();
    TruncSeries r(s.ring(), s.cap());
    r.set(0, inv0);
    for (int k = 1; k <= s.cap(); ++k) {
        Scalar acc = Scalar::zero(s.ring());
        for (int j = 1; j <= k; ++j) acc += s[j] * r[k - j];
        r.set(k, -acc * inv0);
    }
    return r;
}

std::vector<Scalar> bernoulli_numbers(int n) {
    if (n < 0) throw std::invalid_argument("bernoulli_numbers needs n >= 0");
    const RingSpec q = RingSpec::rationals();
    // (e^z - 1)/z = sum z^k/(k+1)!
    TruncSeries e(q, n);
    mpz_class fact = 1;
    for (int k = 0; k <= n; ++k) {
        fact *= k + 1;
        e.set(k, Scalar(q, mpq_class(1, fact)));
    }
    TruncSeries g = reciprocal(e);
    std::vector<Scalar> b;
    b.reserve(static_cast<std::size_t>(n) + 1);
    mpz_class kfact = 1;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) kfact *= k;
        b.push_back(g[k] * Scalar(q, mpq_class(kfact)));
    }
    return b;
}

TruncSeries phi_c(const Scalar& c, int cap) {
    const RingSpec& ring = c.ring();
    ring.require_invertible(2, cap + 1);
    const Scalar c_inv = c.inv();
    // phi_c = c / E(t/c) with E(s) = (e^s - 1)/s = sum s^k/(k+1)!.
    TruncSeries e(ring, cap);
    Scalar factorial = Scalar::one(ring);
    Scalar scale = Scalar::one(ring);
    for (int k = 0; k <= cap; ++k) {
        factorial *= Scalar(ring, k + 1);
        e.set(k, scale * factorial.inv());
        scale *= c_inv;
    }
    return c * reciprocal(e);
}

TruncSeries phi_0(const RingSpec& ring, int cap) {
    return -TruncSeries::variable(ring, cap);
}

TruncSeries theta_c(const Scalar& c, int cap) {
    const RingSpec& ring = c.ring();
    TruncSeries theta(ring, cap);
    theta.set(0, Scalar::one(ring));
    if (cap < 2) return theta;
    theta.set(2, c * Scalar(ring, 3).inv());
    // With g = theta - 1, the relation -1/2 theta'' = theta'(theta-1)/u - theta(theta-1)/u^2
    // becomes (1 - m(m-1)/2) g_m = sum_{i+j=m} (i-1) g_i g_j; symmetrizing the
    // right-hand side gives g_m = -1/(m+1) sum_{i+j=m} g_i g_j for m >= 3.
    for (int m = 3; m <= cap; ++m) {
        Scalar acc = Scalar::zero(ring);
        for (int i = 2; i <= m - 2; ++i) acc += theta[i] * theta[m - i];
        if (!acc.is_zero()) theta.set(m, -acc * Scalar(ring, m + 1).inv());
    }
    return theta;
}

BiTruncSeries defect_general(const TruncSeries& phi, const TruncSeries& psi,
                             const TruncSeries& rho) {
    if (!(phi.ring() == psi.ring() && psi.ring() == rho.ring()))
        throw RingMismatch("defect_general: ring mismatch");
    if (phi.cap() != psi.cap() || psi.cap() != rho.cap())
        throw std::invalid_argument("defect_general: cap mismatch");
    const int out = phi.cap() - 1;
    BiTruncSeries lhs = BiTruncSeries::in_t(phi.truncated(out)) * divided_difference(psi, Variable::t) +
                        divided_difference(phi, Variable::u) * BiTruncSeries::in_u(psi.truncated(out));
    return lhs - compose_shift(rho.truncated(out));
}

BiTruncSeries defect_rep(const TruncSeries& phi) {
    return -defect_general(phi, phi, -phi);
}

TruncSeries solve_rep(const Scalar& c0, int cap) {
    const RingSpec& ring = c0.ring();
    const Scalar c0_inv = c0.inv();
    TruncSeries phi = TruncSeries::constant(c0, cap);
    // In total degree k the unknown c_{k+1} enters the u^k coefficient of
    // phi(t)(phi(t+u)-phi(u))/t + (phi(t+u)-phi(t))/u phi(u) + phi(t+u)
    // only through (k+2) c_0 c_{k+1}.
    for (int k = 0; k < cap; ++k) {
        if (!ring.invertible(k + 2)) throw NotInvertible(mpz_class(k + 2), ring.to_string());
        TruncSeries partial = phi.truncated(k + 1);
        BiTruncSeries residual = defect_rep(partial);  // = -(...)
        const Scalar rest = -residual.coeff(0, k);
        phi.set(k + 1, -rest * Scalar(ring, k + 2).inv() * c0_inv);
    }
    if (cap >= 1 && !defect_rep(phi).is_zero())
        throw std::domain_error("solve_rep: coefficient system inconsistent over " + ring.to_string());
    return phi;
}

TruncSeries exp_reduction(const TruncSeries& phi) {
    return (phi + TruncSeries::variable(phi.ring(), phi.cap())) * reciprocal(phi);
}

BiTruncSeries exp_defect(const TruncSeries& f) {
    return BiTruncSeries::in_t(f) * BiTruncSeries::in_u(f) - compose_shift(f);
}

BiTruncSeries impl_defect(const LaurentSlot& p, const LaurentSlot& q) {
    const RingSpec& ring = p.regular.ring();
    if (!(q.regular.ring() == ring && p.principal.ring() == ring && q.principal.ring() == ring))
        throw RingMismatch("impl_defect: ring mismatch");
    const int d = p.regular.cap();
    if (q.regular.cap() != d) throw std::invalid_argument("impl_defect: cap mismatch");
    const int out = d + 3;

    auto widen = [&](const TruncSeries& s) {
        TruncSeries w(ring, out);
        for (int k = 0; k <= d; ++k) w.set(k, s[k]);
        return w;
    };
    const TruncSeries P = widen(p.regular);
    const TruncSeries Q = widen(q.regular);

    BiTruncSeries tu(ring, out), t2(ring, out), u2(ring, out), t_plus_u(ring, out);
    tu.set(1, 1, Scalar::one(ring));
    t2.set(2, 0, Scalar::one(ring));
    u2.set(0, 2, Scalar::one(ring));
    t_plus_u.set(1, 0, Scalar::one(ring));
    t_plus_u.set(0, 1, Scalar::one(ring));
    auto constant = [&](const Scalar& s) {
        BiTruncSeries c(ring, out);
        c.set(0, 0, s);
        return c;
    };
    auto derivative_widened = [&](const TruncSeries& s) {
        TruncSeries w(ring, out);
        for (int k = 1; k <= d; ++k) w.set(k - 1, s[k] * Scalar(ring, k));
        return w;
    };

    // t^2 u^2 (t+u) q'(u) {p(t+u) - p(t)} = A * B
    const BiTruncSeries A = constant(-q.principal) + u2 * BiTruncSeries::in_u(derivative_widened(q.regular));
    const BiTruncSeries B = tu * constant(-p.principal) +
                            t2 * t_plus_u * (compose_shift(P) - BiTruncSeries::in_t(P));
    // t^2 u^2 (t+u) p'(t) {q(t+u) - q(u)} = C * E
    const BiTruncSeries C = constant(-p.principal) + t2 * BiTruncSeries::in_t(derivative_widened(p.regular));
    const BiTruncSeries E = tu * constant(-q.principal) +
                            u2 * t_plus_u * (compose_shift(Q) - BiTruncSeries::in_u(Q));
    return A * B - C * E;
}

}  // namespace pbwk
