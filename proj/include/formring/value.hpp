#ifndef FORMRING_VALUE_HPP
#define FORMRING_VALUE_HPP

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "formring/poly.hpp"

namespace formring {

class Value;
class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Thrown by exact_div when a = b*q has no solution in the ring.
struct NonDivisibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class RingKind { Integers, IntegersMod, Polynomials, FractionField };

/// Description of an exact base ring: Z, Z/m, Z[vars], or the fraction
/// field of one of the integral kinds. Shared immutably by all values
/// that live in it.
class Ring : public std::enable_shared_from_this<Ring> {
public:
    static RingPtr integers();
    static RingPtr integers_mod(const mpz_class& m);
    static RingPtr polynomials(std::vector<std::string> vars);
    static RingPtr fraction_field(const RingPtr& base);

    RingKind kind() const { return kind_; }
    const mpz_class& modulus() const { return modulus_; }
    const std::vector<std::string>& vars() const;
    const RingPtr& base() const { return base_; }

    bool is_integral() const;
    bool is_field() const;
    bool same(const Ring& o) const;

    Value zero() const;
    Value one() const;
    Value from_int(long v) const;
    Value from_mpz(const mpz_class& v) const;
    Value var(std::size_t i) const;
    Value parse(const std::string& text) const;

    std::string describe() const;

private:
    Ring() = default;
    RingKind kind_ = RingKind::Integers;
    mpz_class modulus_;
    std::vector<std::string> vars_;
    RingPtr base_;
};

/// An element of some Ring. Arithmetic is exact; mixed-ring operations
/// throw. Values are immutable once built (operators return new values).
class Value {
public:
    Value() = default;

    const RingPtr& ring() const { return ring_; }
    bool valid() const { return ring_ != nullptr; }

    bool is_zero() const;
    bool is_one() const;
    /// True when the element has a multiplicative inverse in its ring.
    bool is_unit() const;

    Value operator+(const Value& o) const;
    Value operator-(const Value& o) const;
    Value operator*(const Value& o) const;
    Value operator-() const;
    bool operator==(const Value& o) const;
    bool operator!=(const Value& o) const { return !(*this == o); }

    Value pow(unsigned e) const;
    /// Some q with b*q = a, or throws NonDivisibleError. In Z/m any
    /// solution of the congruence is returned.
    Value exact_div(const Value& b) const;
    std::optional<Value> try_exact_div(const Value& b) const;
    /// Multiplicative inverse of a unit.
    Value inv() const;

    std::string str() const;

    /// Lift to the fraction field of this value's (integral) ring.
    Value to_fraction_field() const;
    /// Inverse of to_fraction_field; throws NonDivisibleError when the
    /// value is not integral.
    Value from_fraction_field() const;

    /// Integer value of an Integers/IntegersMod element.
    const mpz_class& as_mpz() const;
    const Poly& as_poly() const;
    const mpq_class& as_mpq() const;
    const PolyFrac& as_polyfrac() const;

    static Value make(RingPtr ring, mpz_class v);
    static Value make(RingPtr ring, Poly v);
    static Value make(RingPtr ring, mpq_class v);
    static Value make(RingPtr ring, PolyFrac v);

private:
    friend class Ring;
    RingPtr ring_;
    std::variant<mpz_class, mpq_class, Poly, PolyFrac> rep_;
    void canonicalize();
};

struct ContentResult {
    Value content;
    bool is_unit;
};

/// gcd/ideal content of a coefficient vector; supported over Z and Z/m.
ContentResult content(std::span<const Value> values, const RingPtr& ring);

/// A ring homomorphism between contexts: modular reduction, variable
/// specialization, the canonical lift into a fraction field, or a
/// composition of those.
class RingHom {
public:
    static RingHom identity(RingPtr ring);
    /// Z -> Z/m, or Z/m -> Z/m' when m' divides m.
    static RingHom reduce_mod(RingPtr src, const mpz_class& m);
    /// Z[vars] -> dst sending vars[i] to images[i].
    static RingHom specialize(RingPtr src, RingPtr dst, std::vector<Value> images);
    static RingHom into_fraction_field(RingPtr src);

    /// Composition: apply *this first, then next.
    RingHom then(const RingHom& next) const;

    Value operator()(const Value& v) const;
    const RingPtr& src() const { return src_; }
    const RingPtr& dst() const { return dst_; }

private:
    RingHom() = default;
    enum class Kind { Identity, Reduce, Specialize, IntoFrac, Compose };
    Kind kind_ = Kind::Identity;
    RingPtr src_, dst_;
    std::vector<Value> images_;
    std::shared_ptr<const RingHom> first_, second_;
};

}  // namespace formring

#endif
