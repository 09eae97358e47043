#include "pbwk/coeff.hpp"

#include <cstdlib>
#include <charconv>
#include <ostream>

namespace pbwk {

namespace {

mpz_class reduce_mod(const mpz_class& v, std::uint64_t n) {
    mpz_class m(static_cast<unsigned long>(n));
    mpz_class r = v % m;
    if (r < 0) r += m;
    return r;
}

}  // namespace

NotInvertible::NotInvertible(const mpz_class& value, const std::string& ring)
    : std::domain_error(value.get_str() + " not invertible in " + ring), value_(value) {}

RingSpec RingSpec::modular(std::uint64_t n) {
    if (n < 2) throw InputError("modulus must be at least 2");
    return {Kind::modular, n};
}

RingSpec RingSpec::parse(std::string_view s) {
    if (s == "Q") return rationals();
    if (s == "Z") return integers();
    if (s.size() > 2 && s.substr(0, 2) == "Z/") {
        std::uint64_t n = 0;
        auto digits = s.substr(2);
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
        if (ec == std::errc() && ptr == digits.data() + digits.size()) return modular(n);
    }
    throw InputError("bad ring designation '" + std::string(s) + "' (expected Q, Z or Z/<n>)");
}

std::string RingSpec::to_string() const {
    switch (kind) {
        case Kind::rationals: return "Q";
        case Kind::integers: return "Z";
        case Kind::modular: return "Z/" + std::to_string(modulus);
    }
    return "?";
}

bool RingSpec::invertible(const mpz_class& k) const {
    switch (kind) {
        case Kind::rationals: return k != 0;
        case Kind::integers: return k == 1 || k == -1;
        case Kind::modular: {
            mpz_class g;
            mpz_class m(static_cast<unsigned long>(modulus));
            mpz_gcd(g.get_mpz_t(), k.get_mpz_t(), m.get_mpz_t());
            return g == 1;
        }
    }
    return false;
}

void RingSpec::require_invertible(long from, long to) const {
    for (long k = from; k <= to; ++k)
        if (!invertible(k)) throw NotInvertible(mpz_class(k), to_string());
}

bool RingSpec::is_field() const {
    if (kind == Kind::rationals) return true;
    if (kind == Kind::integers) return false;
    mpz_class m(static_cast<unsigned long>(modulus));
    return mpz_probab_prime_p(m.get_mpz_t(), 30) != 0;
}

Scalar::Scalar(const RingSpec& ring, long value) : ring_(ring), value_(value) { canonicalize(); }

Scalar::Scalar(const RingSpec& ring, const mpq_class& value) : ring_(ring), value_(value) {
    value_.canonicalize();
    canonicalize();
}

void Scalar::canonicalize() {
    switch (ring_.kind) {
        case RingSpec::Kind::rationals: return;
        case RingSpec::Kind::integers:
            if (value_.get_den() != 1) throw NotInvertible(value_.get_den(), ring_.to_string());
            return;
        case RingSpec::Kind::modular: {
            mpz_class num = value_.get_num();
            const mpz_class& den = value_.get_den();
            if (den != 1) {
                mpz_class m(static_cast<unsigned long>(ring_.modulus));
                mpz_class inv;
                if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
                    throw NotInvertible(den, ring_.to_string());
                num *= inv;
            }
            value_ = mpq_class(reduce_mod(num, ring_.modulus));
            return;
        }
    }
}

void Scalar::check_ring(const Scalar& other) const {
    if (!(ring_ == other.ring_))
        throw RingMismatch("scalar ring mismatch: " + ring_.to_string() + " vs " +
                           other.ring_.to_string());
}

bool Scalar::is_invertible() const {
    switch (ring_.kind) {
        case RingSpec::Kind::rationals: return !is_zero();
        case RingSpec::Kind::integers:
        case RingSpec::Kind::modular: return ring_.invertible(value_.get_num());
    }
    return false;
}

Scalar Scalar::inv() const {
    if (!is_invertible()) throw NotInvertible(value_.get_num(), ring_.to_string());
    if (ring_.kind == RingSpec::Kind::modular) {
        mpz_class m(static_cast<unsigned long>(ring_.modulus));
        mpz_class r;
        mpz_invert(r.get_mpz_t(), value_.get_num_mpz_t(), m.get_mpz_t());
        return Scalar(ring_, mpq_class(r));
    }
    mpq_class r = 1 / value_;
    r.canonicalize();
    return Scalar(ring_, r);
}

Scalar Scalar::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    Scalar result = one(ring_);
    Scalar base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

Scalar& Scalar::operator+=(const Scalar& other) {
    check_ring(other);
    value_ += other.value_;
    if (ring_.kind == RingSpec::Kind::modular) value_ = mpq_class(reduce_mod(value_.get_num(), ring_.modulus));
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) {
    check_ring(other);
    value_ -= other.value_;
    if (ring_.kind == RingSpec::Kind::modular) value_ = mpq_class(reduce_mod(value_.get_num(), ring_.modulus));
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& other) {
    check_ring(other);
    value_ *= other.value_;
    if (ring_.kind == RingSpec::Kind::modular) value_ = mpq_class(reduce_mod(value_.get_num(), ring_.modulus));
    return *this;
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.value_ = -r.value_;
    if (ring_.kind == RingSpec::Kind::modular) r.value_ = mpq_class(reduce_mod(r.value_.get_num(), ring_.modulus));
    return r;
}

std::string Scalar::to_string() const { return value_.get_str(); }

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }
std::ostream& operator<<(std::ostream& os, const RingSpec& r) { return os << r.to_string(); }

void append_term(std::ostream& os, bool& first, const Scalar& c, const std::string& body) {
    mpq_class v = c.value();
    const bool negative = c.ring().kind != RingSpec::Kind::modular && v < 0;
    if (negative) v = -v;
    if (first)
        os << (negative ? "-" : "");
    else
        os << (negative ? " - " : " + ");
    first = false;
    if (body.empty()) {
        os << v.get_str();
    } else {
        if (v != 1) os << v.get_str() << "*";
        os << body;
    }
}

Scalar parse_scalar(const RingSpec& ring, std::string_view text) {
    std::string s(text);
    auto bad = [&] { return InputError("bad number '" + s + "'"); };
    if (s.empty()) throw bad();
    auto valid_int = [](std::string_view part) {
        std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
        if (i >= part.size()) return false;
        for (; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9') return false;
        return true;
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!num.empty() && num[0] == '+') num.erase(0, 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') throw bad();
    mpz_class d(den);
    if (d == 0) throw bad();
    mpq_class q(mpz_class(num), d);
    q.canonicalize();
    return Scalar(ring, q);
}

RingSpec default_ring() {
    const char* env = std::getenv("PBWK_DEFAULT_RING");
    if (env == nullptr || *env == '\0') return RingSpec::rationals();
    return RingSpec::parse(env);
}

}  // namespace pbwk
