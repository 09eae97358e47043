#pragma once

// Truncated power series in t and in (t, u), and the functional equations
// whose solutions drive the coderivation representations.

#include <string>
#include <vector>

#include "pbwk/coeff.hpp"

namespace pbwk {

/// c_0 + c_1 t + ... + c_D t^D, everything above the cap D discarded.
/// Dense storage; binary operations require equal rings and equal caps.
class TruncSeries {
public:
    TruncSeries(const RingSpec& ring, int cap);
    explicit TruncSeries(std::vector<Scalar> coeffs);

    static TruncSeries constant(const Scalar& c, int cap);
    /// The series t (zero when cap == 0).
    static TruncSeries variable(const RingSpec& ring, int cap);

    const RingSpec& ring() const noexcept { return ring_; }
    int cap() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const Scalar& operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
    /// Zero for degrees above the cap.
    Scalar coeff(int k) const;
    void set(int k, const Scalar& value);
    const std::vector<Scalar>& coeffs() const noexcept { return coeffs_; }

    bool is_zero() const;
    TruncSeries truncated(int new_cap) const;
    TruncSeries derivative() const;  // cap drops by one

    TruncSeries& operator+=(const TruncSeries& other);
    TruncSeries& operator-=(const TruncSeries& other);
    TruncSeries& operator*=(const TruncSeries& other);
    TruncSeries& operator*=(const Scalar& s);
    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
    friend TruncSeries operator*(TruncSeries a, const TruncSeries& b) { return a *= b; }
    friend TruncSeries operator*(TruncSeries a, const Scalar& s) { return a *= s; }
    friend TruncSeries operator*(const Scalar& s, TruncSeries a) { return a *= s; }
    TruncSeries operator-() const;

    friend bool operator==(const TruncSeries&, const TruncSeries&) = default;

    std::string to_string(const std::string& var = "t") const;

private:
    void check_compatible(const TruncSeries& other) const;

    RingSpec ring_;
    std::vector<Scalar> coeffs_;
};

/// sum c_{i,j} t^i u^j over i + j <= D.
class BiTruncSeries {
public:
    BiTruncSeries(const RingSpec& ring, int cap);

    /// q(t) and q(u) viewed as series in two variables.
    static BiTruncSeries in_t(const TruncSeries& q);
    static BiTruncSeries in_u(const TruncSeries& q);

    const RingSpec& ring() const noexcept { return ring_; }
    int cap() const noexcept { return cap_; }
    const Scalar& coeff(int i, int j) const { return data_.at(index(i, j)); }
    void set(int i, int j, const Scalar& value) { data_.at(index(i, j)) = value; }
    void add_to(int i, int j, const Scalar& value);

    bool is_zero() const;
    BiTruncSeries truncated(int new_cap) const;
    /// Exchanges the roles of t and u.
    BiTruncSeries swapped() const;

    BiTruncSeries& operator+=(const BiTruncSeries& other);
    BiTruncSeries& operator-=(const BiTruncSeries& other);
    BiTruncSeries& operator*=(const Scalar& s);
    friend BiTruncSeries operator+(BiTruncSeries a, const BiTruncSeries& b) { return a += b; }
    friend BiTruncSeries operator-(BiTruncSeries a, const BiTruncSeries& b) { return a -= b; }
    friend BiTruncSeries operator*(const BiTruncSeries& a, const BiTruncSeries& b);
    friend BiTruncSeries operator*(BiTruncSeries a, const Scalar& s) { return a *= s; }
    BiTruncSeries operator-() const;

    friend bool operator==(const BiTruncSeries&, const BiTruncSeries&) = default;

    std::string to_string() const;

private:
    std::size_t index(int i, int j) const;
    void check_compatible(const BiTruncSeries& other) const;

    RingSpec ring_;
    int cap_;
    std::vector<Scalar> data_;  // row-major by total degree
};

/// p_{-1}/t + p_0 + p_1 t + ...; a simple pole at most.
struct LaurentSlot {
    Scalar principal;
    TruncSeries regular;

    static LaurentSlot from_series(const TruncSeries& s) {
        return {Scalar::zero(s.ring()), s};
    }
};

enum class Variable { t, u };

/// Binomial coefficient as a ring element.
Scalar binomial(const RingSpec& ring, int n, int k);

/// q(t + u).
BiTruncSeries compose_shift(const TruncSeries& q);

/// (q(t+u) - q(u))/t for Variable::t, (q(t+u) - q(t))/u for Variable::u.
/// The result carries cap one less than q.
BiTruncSeries divided_difference(const TruncSeries& q, Variable by);

/// 1/s for a series with invertible constant term.
TruncSeries reciprocal(const TruncSeries& s);

/// b_0 .. b_n over Q, from inverting (e^z - 1)/z.
std::vector<Scalar> bernoulli_numbers(int n);

/// t / (e^{t/c} - 1) truncated at `cap`; needs c and 2 .. cap+1 invertible.
TruncSeries phi_c(const Scalar& c, int cap);

/// -t.
TruncSeries phi_0(const RingSpec& ring, int cap);

/// sqrt(c) t coth(sqrt(c) t), generated from its differential recurrence.
TruncSeries theta_c(const Scalar& c, int cap);

/// phi(t) (psi(t+u) - psi(u))/t + (phi(t+u) - phi(t))/u psi(u) - rho(t+u),
/// valid through total degree cap - 1.
BiTruncSeries defect_general(const TruncSeries& phi, const TruncSeries& psi,
                             const TruncSeries& rho);

/// -(phi(t+u) - phi(t))/u phi(u) - phi(t)(phi(t+u) - phi(u))/t - phi(t+u).
/// Zero iff phi induces a representation by coderivations (to this order).
BiTruncSeries defect_rep(const TruncSeries& phi);

/// Solves defect_rep(phi) = 0 degree by degree with phi(0) = c0. Throws
/// NotInvertible naming the first integer k in 2 .. cap+1 that is not a unit.
TruncSeries solve_rep(const Scalar& c0, int cap);

/// f = (phi + t)/phi.
TruncSeries exp_reduction(const TruncSeries& phi);

/// f(t) f(u) - f(t+u).
BiTruncSeries exp_defect(const TruncSeries& f);

/// q'(u){p(t+u) - p(t)} - p'(t){q(t+u) - q(u)} multiplied through by
/// t^2 u^2 (t+u) so that the result is a power series. Valid through total
/// degree D + 3 where D is the common cap of the regular parts.
BiTruncSeries impl_defect(const LaurentSlot& p, const LaurentSlot& q);

}  // namespace pbwk
