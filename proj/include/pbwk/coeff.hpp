#pragma once

// Exact coefficient rings: the rationals, the integers and Z/nZ.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace pbwk {

/// Raised when an element (usually a small integer) has no inverse in the
/// working ring. `blocking()` names the offending integer representative.
class NotInvertible : public std::domain_error {
public:
    explicit NotInvertible(const mpz_class& value, const std::string& ring);

    const mpz_class& blocking() const noexcept { return value_; }

private:
    mpz_class value_;
};

class RingMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed user input (ring designations, expressions, files).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class Unsupported : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct RingSpec {
    enum class Kind { rationals, integers, modular };

    Kind kind = Kind::rationals;
    std::uint64_t modulus = 0;  // only meaningful for Kind::modular, >= 2

    static RingSpec rationals() { return {Kind::rationals, 0}; }
    static RingSpec integers() { return {Kind::integers, 0}; }
    static RingSpec modular(std::uint64_t n);

    /// Accepts "Q", "Z" and "Z/<n>".
    static RingSpec parse(std::string_view designation);

    std::string to_string() const;

    /// True iff the integer k is a unit of the ring.
    bool invertible(const mpz_class& k) const;
    bool invertible(long k) const { return invertible(mpz_class(k)); }

    /// Throws NotInvertible naming the first k in [from, to] that is not a unit.
    void require_invertible(long from, long to) const;

    bool is_field() const;

    friend bool operator==(const RingSpec&, const RingSpec&) = default;
};

/// The ring named by PBWK_DEFAULT_RING, or Q when the variable is unset.
RingSpec default_ring();

inline bool invertible(const RingSpec& ring, long k) { return ring.invertible(k); }

/// An element of a RingSpec. Rationals are kept in lowest terms with a
/// positive denominator, integers with denominator 1, residues in [0, n).
class Scalar {
public:
    Scalar() = default;  // 0 in Q
    Scalar(const RingSpec& ring, long value);
    /// Maps a rational into the ring; the denominator must be a unit there.
    Scalar(const RingSpec& ring, const mpq_class& value);

    static Scalar zero(const RingSpec& ring) { return Scalar(ring, 0L); }
    static Scalar one(const RingSpec& ring) { return Scalar(ring, 1L); }

    const RingSpec& ring() const noexcept { return ring_; }
    const mpq_class& value() const noexcept { return value_; }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_one() const { return value_ == 1; }

    bool is_invertible() const;
    Scalar inv() const;
    Scalar pow(long exponent) const;

    Scalar& operator+=(const Scalar& other);
    Scalar& operator-=(const Scalar& other);
    Scalar& operator*=(const Scalar& other);
    Scalar& operator/=(const Scalar& other) { return *this *= other.inv(); }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    Scalar operator-() const;

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.ring_ == b.ring_ && a.value_ == b.value_;
    }

    /// "3", "-1/2"; residues print their representative in [0, n).
    std::string to_string() const;

private:
    void canonicalize();
    void check_ring(const Scalar& other) const;

    RingSpec ring_;
    mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);
std::ostream& operator<<(std::ostream& os, const RingSpec& r);

/// Parses "p", "-p", "p/q" into the ring.
/// Writes the term c*body into a sum being printed; `first` tracks whether
/// anything was written yet. An empty body prints the bare coefficient.
void append_term(std::ostream& os, bool& first, const Scalar& c, const std::string& body);

Scalar parse_scalar(const RingSpec& ring, std::string_view text);

}  // namespace pbwk
