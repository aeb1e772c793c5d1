#include "formring/value.hpp"

#include <algorithm>

namespace formring {

namespace {

mpz_class mod_reduce(const mpz_class& v, const mpz_class& m) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    return r;
}

[[noreturn]] void bad_ring(const char* what) { throw std::invalid_argument(what); }

}  // namespace

RingPtr Ring::integers() {
    static RingPtr z = [] {
        auto r = std::shared_ptr<Ring>(new Ring());
        r->kind_ = RingKind::Integers;
        return RingPtr(r);
    }();
    return z;
}

RingPtr Ring::integers_mod(const mpz_class& m) {
    if (m <= 0) bad_ring("modulus must be positive");
    auto r = std::shared_ptr<Ring>(new Ring());
    r->kind_ = RingKind::IntegersMod;
    r->modulus_ = m;
    return r;
}

RingPtr Ring::polynomials(std::vector<std::string> vars) {
    if (vars.empty()) bad_ring("polynomial ring needs at least one variable");
    auto r = std::shared_ptr<Ring>(new Ring());
    r->kind_ = RingKind::Polynomials;
    r->vars_ = std::move(vars);
    return r;
}

RingPtr Ring::fraction_field(const RingPtr& base) {
    if (!base || !(base->kind_ == RingKind::Integers || base->kind_ == RingKind::Polynomials))
        bad_ring("fraction field requires an integral base context");
    auto r = std::shared_ptr<Ring>(new Ring());
    r->kind_ = RingKind::FractionField;
    r->base_ = base;
    return r;
}

const std::vector<std::string>& Ring::vars() const {
    if (kind_ == RingKind::Polynomials) return vars_;
    if (kind_ == RingKind::FractionField && base_->kind_ == RingKind::Polynomials)
        return base_->vars_;
    bad_ring("context has no variables");
}

bool Ring::is_integral() const { return kind_ != RingKind::IntegersMod; }
bool Ring::is_field() const { return kind_ == RingKind::FractionField; }

bool Ring::same(const Ring& o) const {
    if (kind_ != o.kind_) return false;
    switch (kind_) {
        case RingKind::Integers: return true;
        case RingKind::IntegersMod: return modulus_ == o.modulus_;
        case RingKind::Polynomials: return vars_ == o.vars_;
        case RingKind::FractionField: return base_->same(*o.base_);
    }
    return false;
}

Value Ring::zero() const { return from_int(0); }
Value Ring::one() const { return from_int(1); }

Value Ring::from_int(long v) const { return from_mpz(mpz_class(v)); }

Value Ring::from_mpz(const mpz_class& v) const {
    auto self = shared_from_this();
    switch (kind_) {
        case RingKind::Integers: return Value::make(self, v);
        case RingKind::IntegersMod: return Value::make(self, mod_reduce(v, modulus_));
        case RingKind::Polynomials:
            return Value::make(self, Poly::constant(v, vars_.size()));
        case RingKind::FractionField:
            if (base_->kind_ == RingKind::Integers) return Value::make(self, mpq_class(v));
            return Value::make(self, PolyFrac(Poly::constant(v, base_->vars_.size()),
                                              Poly::constant(1, base_->vars_.size())));
    }
    bad_ring("unreachable");
}

Value Ring::var(std::size_t i) const {
    auto self = shared_from_this();
    if (kind_ == RingKind::Polynomials)
        return Value::make(self, Poly::variable(i, vars_.size()));
    if (kind_ == RingKind::FractionField && base_->kind_ == RingKind::Polynomials)
        return Value::make(self, PolyFrac(Poly::variable(i, base_->vars_.size()),
                                          Poly::constant(1, base_->vars_.size())));
    bad_ring("context has no variables");
}

Value Ring::parse(const std::string& text) const {
    auto self = shared_from_this();
    switch (kind_) {
        case RingKind::Integers: return Value::make(self, mpz_class(text));
        case RingKind::IntegersMod: return from_mpz(mpz_class(text));
        case RingKind::Polynomials: return Value::make(self, Poly::parse(text, vars_));
        case RingKind::FractionField: {
            auto slash = text.find('/');
            Value num = base_->parse(text.substr(0, slash));
            if (slash == std::string::npos) return num.to_fraction_field();
            Value den = base_->parse(text.substr(slash + 1));
            return num.to_fraction_field() * den.to_fraction_field().inv();
        }
    }
    bad_ring("unreachable");
}

std::string Ring::describe() const {
    switch (kind_) {
        case RingKind::Integers: return "integers";
        case RingKind::IntegersMod: return "integers mod " + modulus_.get_str();
        case RingKind::Polynomials: {
            std::string s = "integer polynomials in ";
            for (std::size_t i = 0; i < vars_.size(); ++i)
                s += (i ? "," : "") + vars_[i];
            return s;
        }
        case RingKind::FractionField: return "fraction field of " + base_->describe();
    }
    return "?";
}

Value Value::make(RingPtr ring, mpz_class v) {
    Value x;
    x.ring_ = std::move(ring);
    x.rep_ = std::move(v);
    return x;
}
Value Value::make(RingPtr ring, Poly v) {
    Value x;
    x.ring_ = std::move(ring);
    x.rep_ = std::move(v);
    return x;
}
Value Value::make(RingPtr ring, mpq_class v) {
    v.canonicalize();
    Value x;
    x.ring_ = std::move(ring);
    x.rep_ = std::move(v);
    return x;
}
Value Value::make(RingPtr ring, PolyFrac v) {
    Value x;
    x.ring_ = std::move(ring);
    x.rep_ = std::move(v);
    return x;
}

const mpz_class& Value::as_mpz() const {
    if (auto* p = std::get_if<mpz_class>(&rep_)) return *p;
    throw std::invalid_argument("value is not an integer");
}
const Poly& Value::as_poly() const {
    if (auto* p = std::get_if<Poly>(&rep_)) return *p;
    throw std::invalid_argument("value is not a polynomial");
}
const mpq_class& Value::as_mpq() const {
    if (auto* p = std::get_if<mpq_class>(&rep_)) return *p;
    throw std::invalid_argument("value is not a rational");
}
const PolyFrac& Value::as_polyfrac() const {
    if (auto* p = std::get_if<PolyFrac>(&rep_)) return *p;
    throw std::invalid_argument("value is not a rational function");
}

bool Value::is_zero() const {
    return std::visit(
        [](const auto& v) -> bool {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, mpz_class>) return v == 0;
            else if constexpr (std::is_same_v<T, mpq_class>) return v == 0;
            else return v.is_zero();
        },
        rep_);
}

bool Value::is_one() const { return *this == ring_->one(); }

bool Value::is_unit() const {
    if (!valid()) return false;
    switch (ring_->kind()) {
        case RingKind::Integers: return as_mpz() == 1 || as_mpz() == -1;
        case RingKind::IntegersMod: {
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), as_mpz().get_mpz_t(), ring_->modulus().get_mpz_t());
            return g == 1;
        }
        case RingKind::Polynomials: {
            const Poly& p = as_poly();
            return p.is_constant() && (p.constant_term() == 1 || p.constant_term() == -1);
        }
        case RingKind::FractionField: return !is_zero();
    }
    return false;
}

namespace {

template <typename Op>
Value binary_op(const Value& a, const Value& b, Op op) {
    if (!a.valid() || !b.valid()) throw std::invalid_argument("uninitialized value");
    if (!a.ring()->same(*b.ring()))
        throw std::invalid_argument("operands belong to different contexts");
    switch (a.ring()->kind()) {
        case RingKind::Integers:
        case RingKind::IntegersMod: {
            mpz_class r = op(a.as_mpz(), b.as_mpz());
            return a.ring()->from_mpz(r);
        }
        case RingKind::Polynomials:
            return Value::make(a.ring(), op(a.as_poly(), b.as_poly()));
        case RingKind::FractionField:
            if (a.ring()->base()->kind() == RingKind::Integers)
                return Value::make(a.ring(), mpq_class(op(a.as_mpq(), b.as_mpq())));
            return Value::make(a.ring(), op(a.as_polyfrac(), b.as_polyfrac()));
    }
    throw std::logic_error("unreachable");
}

}  // namespace

Value Value::operator+(const Value& o) const {
    return binary_op(*this, o, [](const auto& x, const auto& y) { return x + y; });
}
Value Value::operator-(const Value& o) const {
    return binary_op(*this, o, [](const auto& x, const auto& y) { return x - y; });
}
Value Value::operator*(const Value& o) const {
    return binary_op(*this, o, [](const auto& x, const auto& y) { return x * y; });
}

Value Value::operator-() const { return ring_->zero() - *this; }

bool Value::operator==(const Value& o) const {
    if (!valid() || !o.valid()) return valid() == o.valid();
    if (!ring_->same(*o.ring_)) return false;
    switch (ring_->kind()) {
        case RingKind::Integers:
        case RingKind::IntegersMod: return as_mpz() == o.as_mpz();
        case RingKind::Polynomials: return as_poly() == o.as_poly();
        case RingKind::FractionField:
            if (ring_->base()->kind() == RingKind::Integers) return as_mpq() == o.as_mpq();
            return as_polyfrac() == o.as_polyfrac();
    }
    return false;
}

Value Value::pow(unsigned e) const {
    Value r = ring_->one();
    Value b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

std::optional<Value> Value::try_exact_div(const Value& b) const {
    if (!ring_->same(*b.ring_))
        throw std::invalid_argument("operands belong to different contexts");
    switch (ring_->kind()) {
        case RingKind::Integers: {
            if (b.is_zero()) {
                if (is_zero()) return ring_->zero();
                return std::nullopt;
            }
            mpz_class q, r;
            mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), as_mpz().get_mpz_t(),
                        b.as_mpz().get_mpz_t());
            if (r != 0) return std::nullopt;
            return Value::make(ring_, q);
        }
        case RingKind::IntegersMod: {
            // solve b*q = a (mod m); solvable iff gcd(b, m) | a
            const mpz_class& m = ring_->modulus();
            mpz_class g, binv, t;
            mpz_gcdext(g.get_mpz_t(), binv.get_mpz_t(), t.get_mpz_t(),
                       b.as_mpz().get_mpz_t(), m.get_mpz_t());
            mpz_class rem = as_mpz() % g;
            if (rem != 0) return std::nullopt;
            mpz_class q = mod_reduce(binv * (as_mpz() / g), m);
            return Value::make(ring_, q);
        }
        case RingKind::Polynomials: {
            auto q = as_poly().try_exact_div(b.as_poly());
            if (!q) return std::nullopt;
            return Value::make(ring_, *q);
        }
        case RingKind::FractionField: {
            if (b.is_zero()) {
                if (is_zero()) return ring_->zero();
                return std::nullopt;
            }
            return *this * b.inv();
        }
    }
    return std::nullopt;
}

Value Value::exact_div(const Value& b) const {
    auto q = try_exact_div(b);
    if (!q) throw NonDivisibleError("exact division impossible: " + str() + " by " + b.str());
    return *q;
}

Value Value::inv() const {
    if (!ring_->is_field()) {
        if (!is_unit()) throw NonDivisibleError("not a unit: " + str());
        return ring_->one().exact_div(*this);
    }
    if (is_zero()) throw NonDivisibleError("division by zero");
    if (ring_->base()->kind() == RingKind::Integers) {
        mpq_class q = 1 / as_mpq();
        return Value::make(ring_, q);
    }
    return Value::make(ring_, as_polyfrac().inv());
}

std::string Value::str() const {
    if (!valid()) return "<invalid>";
    switch (ring_->kind()) {
        case RingKind::Integers:
        case RingKind::IntegersMod: return as_mpz().get_str();
        case RingKind::Polynomials: return as_poly().str(ring_->vars());
        case RingKind::FractionField:
            if (ring_->base()->kind() == RingKind::Integers) return as_mpq().get_str();
            {
                const PolyFrac& f = as_polyfrac();
                const auto& names = ring_->vars();
                if (f.is_integral()) return f.num.str(names);
                return "(" + f.num.str(names) + ")/(" + f.den.str(names) + ")";
            }
    }
    return "?";
}

Value Value::to_fraction_field() const {
    if (ring_->is_field()) return *this;
    if (!ring_->is_integral())
        throw std::invalid_argument("no fraction field over a non-integral context");
    RingPtr k = Ring::fraction_field(ring_);
    if (ring_->kind() == RingKind::Integers) return Value::make(k, mpq_class(as_mpz()));
    return Value::make(k, PolyFrac(as_poly(), Poly::constant(1, as_poly().nvars())));
}

Value Value::from_fraction_field() const {
    if (!ring_->is_field()) return *this;
    const RingPtr& base = ring_->base();
    if (base->kind() == RingKind::Integers) {
        const mpq_class& q = as_mpq();
        if (q.get_den() != 1)
            throw NonDivisibleError("value is not integral: " + str());
        return Value::make(base, mpz_class(q.get_num()));
    }
    const PolyFrac& f = as_polyfrac();
    if (f.is_integral()) return Value::make(base, f.num);
    // reduction may have been incomplete; a divisibility probe settles it
    if (auto q = f.num.try_exact_div(f.den)) return Value::make(base, *q);
    throw NonDivisibleError("value is not integral: " + str());
}

ContentResult content(std::span<const Value> values, const RingPtr& ring) {
    if (ring->kind() != RingKind::Integers && ring->kind() != RingKind::IntegersMod)
        throw std::invalid_argument("content is supported over integers and integers mod m");
    mpz_class g = 0;
    for (const Value& v : values) {
        if (!v.ring()->same(*ring)) throw std::invalid_argument("mixed contexts in content");
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.as_mpz().get_mpz_t());
    }
    if (ring->kind() == RingKind::IntegersMod)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ring->modulus().get_mpz_t());
    Value c = ring->from_mpz(g);
    return {c, c.is_unit()};
}

RingHom RingHom::identity(RingPtr ring) {
    RingHom h;
    h.kind_ = Kind::Identity;
    h.src_ = ring;
    h.dst_ = ring;
    return h;
}

RingHom RingHom::reduce_mod(RingPtr src, const mpz_class& m) {
    if (src->kind() != RingKind::Integers && src->kind() != RingKind::IntegersMod)
        throw std::invalid_argument("modular reduction needs an integer context");
    if (src->kind() == RingKind::IntegersMod && src->modulus() % m != 0)
        throw std::invalid_argument("target modulus must divide source modulus");
    RingHom h;
    h.kind_ = Kind::Reduce;
    h.src_ = src;
    h.dst_ = Ring::integers_mod(m);
    return h;
}

RingHom RingHom::specialize(RingPtr src, RingPtr dst, std::vector<Value> images) {
    if (src->kind() != RingKind::Polynomials)
        throw std::invalid_argument("specialization needs a polynomial context");
    if (images.size() != src->vars().size())
        throw std::invalid_argument("specialization image count does not match variables");
    for (const Value& v : images)
        if (!v.ring()->same(*dst))
            throw std::invalid_argument("specialization image in wrong context");
    RingHom h;
    h.kind_ = Kind::Specialize;
    h.src_ = src;
    h.dst_ = dst;
    h.images_ = std::move(images);
    return h;
}

RingHom RingHom::into_fraction_field(RingPtr src) {
    RingHom h;
    h.kind_ = Kind::IntoFrac;
    h.src_ = src;
    h.dst_ = Ring::fraction_field(src);
    return h;
}

RingHom RingHom::then(const RingHom& next) const {
    if (!dst_->same(*next.src_))
        throw std::invalid_argument("homomorphism composition mismatch");
    RingHom h;
    h.kind_ = Kind::Compose;
    h.src_ = src_;
    h.dst_ = next.dst_;
    h.first_ = std::make_shared<RingHom>(*this);
    h.second_ = std::make_shared<RingHom>(next);
    return h;
}

Value RingHom::operator()(const Value& v) const {
    if (!v.ring()->same(*src_))
        throw std::invalid_argument("homomorphism applied to value from another context");
    switch (kind_) {
        case Kind::Identity: return v;
        case Kind::Reduce: return dst_->from_mpz(v.as_mpz());
        case Kind::Specialize: {
            const Poly& p = v.as_poly();
            Value acc = dst_->zero();
            for (const auto& [e, c] : p.terms()) {
                Value t = dst_->from_mpz(c);
                for (std::size_t i = 0; i < e.size(); ++i)
                    if (e[i]) t = t * images_[i].pow(e[i]);
                acc = acc + t;
            }
            return acc;
        }
        case Kind::IntoFrac: return v.to_fraction_field();
        case Kind::Compose: return (*second_)((*first_)(v));
    }
    throw std::logic_error("unreachable");
}

}  // namespace formring
