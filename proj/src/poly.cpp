#include "formring/poly.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace formring {

namespace {

void check_same_nvars(const Poly& a, const Poly& b) {
    if (a.nvars() != b.nvars())
        throw std::invalid_argument("polynomial arity mismatch");
}

}  // namespace

Poly Poly::constant(const mpz_class& c, std::size_t nvars) {
    Poly p(nvars);
    if (c != 0) p.terms_[Exponents(nvars, 0)] = c;
    return p;
}

Poly Poly::variable(std::size_t index, std::size_t nvars) {
    if (index >= nvars) throw std::invalid_argument("variable index out of range");
    Poly p(nvars);
    Exponents e(nvars, 0);
    e[index] = 1;
    p.terms_[e] = 1;
    return p;
}

Poly Poly::monomial(const mpz_class& c, const Exponents& e) {
    Poly p(e.size());
    if (c != 0) p.terms_[e] = c;
    return p;
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](std::uint32_t x) { return x == 0; });
}

mpz_class Poly::constant_term() const {
    auto it = terms_.find(Exponents(nvars_, 0));
    return it == terms_.end() ? mpz_class(0) : it->second;
}

std::size_t Poly::total_degree() const {
    std::size_t d = 0;
    for (const auto& [e, c] : terms_) {
        std::size_t t = 0;
        for (auto x : e) t += x;
        d = std::max(d, t);
    }
    return d;
}

std::size_t Poly::degree_in(std::size_t var) const {
    std::size_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max<std::size_t>(d, e[var]);
    return d;
}

std::optional<std::size_t> Poly::single_variable() const {
    std::optional<std::size_t> found;
    for (const auto& [e, c] : terms_) {
        for (std::size_t v = 0; v < e.size(); ++v) {
            if (e[v] == 0) continue;
            if (found && *found != v) return std::nullopt;
            found = v;
        }
    }
    return found ? found : std::optional<std::size_t>(0);
}

Poly Poly::operator+(const Poly& o) const {
    check_same_nvars(*this, o);
    Poly r = *this;
    for (const auto& [e, c] : o.terms_) {
        auto it = r.terms_.find(e);
        if (it == r.terms_.end()) {
            r.terms_[e] = c;
        } else {
            it->second += c;
            if (it->second == 0) r.terms_.erase(it);
        }
    }
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    check_same_nvars(*this, o);
    Poly r(nvars_);
    for (const auto& [e1, c1] : terms_) {
        for (const auto& [e2, c2] : o.terms_) {
            Exponents e(nvars_);
            for (std::size_t i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
            auto it = r.terms_.find(e);
            if (it == r.terms_.end()) {
                mpz_class c = c1 * c2;
                if (c != 0) r.terms_[std::move(e)] = std::move(c);
            } else {
                it->second += c1 * c2;
                if (it->second == 0) r.terms_.erase(it);
            }
        }
    }
    return r;
}

bool Poly::operator<(const Poly& o) const {
    if (nvars_ != o.nvars_) return nvars_ < o.nvars_;
    return std::lexicographical_compare(
        terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end(),
        [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first < b.first;
            return a.second < b.second;
        });
}

Poly Poly::mul_mpz(const mpz_class& c) const {
    Poly r(nvars_);
    if (c == 0) return r;
    for (const auto& [e, k] : terms_) r.terms_[e] = k * c;
    return r;
}

Poly Poly::pow(unsigned e) const {
    Poly r = Poly::constant(1, nvars_);
    Poly b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

mpz_class Poly::content() const {
    mpz_class g = 0;
    for (const auto& [e, c] : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

std::optional<Poly::Exponents> Poly::monomial_content() const {
    if (terms_.empty()) return std::nullopt;
    Exponents m = terms_.begin()->first;
    for (const auto& [e, c] : terms_)
        for (std::size_t i = 0; i < nvars_; ++i) m[i] = std::min(m[i], e[i]);
    return m;
}

Poly Poly::divide_by_mpz_exact(const mpz_class& c) const {
    if (c == 0) throw std::invalid_argument("division by zero");
    Poly r(nvars_);
    for (const auto& [e, k] : terms_) {
        mpz_class q, rem;
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), k.get_mpz_t(), c.get_mpz_t());
        if (rem != 0) throw std::invalid_argument("inexact coefficient division");
        r.terms_[e] = q;
    }
    return r;
}

Poly Poly::divide_by_monomial(const Exponents& e) const {
    Poly r(nvars_);
    for (const auto& [t, c] : terms_) {
        Exponents q(nvars_);
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (t[i] < e[i]) throw std::invalid_argument("inexact monomial division");
            q[i] = t[i] - e[i];
        }
        r.terms_[std::move(q)] = c;
    }
    return r;
}

std::optional<Poly> Poly::try_exact_div(const Poly& d) const {
    check_same_nvars(*this, d);
    if (d.is_zero()) return std::nullopt;
    Poly rem = *this;
    Poly quo(nvars_);
    const auto& dlt = *d.terms_.rbegin();
    while (!rem.terms_.empty()) {
        const auto& rlt = *rem.terms_.rbegin();
        Exponents e(nvars_);
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (rlt.first[i] < dlt.first[i]) return std::nullopt;
            e[i] = rlt.first[i] - dlt.first[i];
        }
        mpz_class q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rlt.second.get_mpz_t(),
                    dlt.second.get_mpz_t());
        if (r != 0) return std::nullopt;
        Poly t = Poly::monomial(q, e);
        quo = quo + t;
        rem = rem - t * d;
    }
    return quo;
}

std::optional<Poly> Poly::univariate_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return std::nullopt;
    auto va = a.single_variable();
    auto vb = b.single_variable();
    if (!va || !vb) return std::nullopt;
    if (!a.is_constant() && !b.is_constant() && *va != *vb) return std::nullopt;
    std::size_t v = a.is_constant() ? *vb : *va;

    auto primitive = [](Poly p) {
        mpz_class c = p.content();
        return c > 1 ? p.divide_by_mpz_exact(c) : p;
    };
    auto lead = [&](const Poly& p) -> std::pair<mpz_class, std::size_t> {
        const auto& lt = *p.terms().rbegin();
        return {lt.second, lt.first[v]};
    };

    mpz_class cg;
    mpz_gcd(cg.get_mpz_t(), a.content().get_mpz_t(), b.content().get_mpz_t());
    Poly p = primitive(a), q = primitive(b);
    if (p.degree_in(v) < q.degree_in(v)) std::swap(p, q);
    while (!q.is_zero()) {
        // pseudo-remainder steps on primitive parts
        auto [lq, dq] = lead(q);
        Poly r = p;
        while (!r.is_zero() && r.degree_in(v) >= dq) {
            auto [lr, dr] = lead(r);
            Poly::Exponents e(a.nvars(), 0);
            e[v] = static_cast<std::uint32_t>(dr - dq);
            r = r.mul_mpz(lq) - q * Poly::monomial(lr, e);
        }
        p = q;
        q = primitive(r);
    }
    Poly g = primitive(p).mul_mpz(cg);
    if (g.terms().rbegin()->second < 0) g = -g;
    return g;
}

void Poly::set_term(const Exponents& e, const mpz_class& c) {
    if (e.size() != nvars_) throw std::invalid_argument("exponent arity mismatch");
    if (c == 0)
        terms_.erase(e);
    else
        terms_[e] = c;
}

mpz_class Poly::coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? mpz_class(0) : it->second;
}

std::string Poly::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    if (names.size() != nvars_) throw std::invalid_argument("variable name count mismatch");
    std::string out;
    // descending monomial order for stable, diffable output
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        mpz_class ac = abs(c);
        if (out.empty())
            out += (c < 0) ? "-" : "";
        else
            out += (c < 0) ? " - " : " + ";
        bool all_zero = std::all_of(e.begin(), e.end(), [](std::uint32_t x) { return x == 0; });
        bool coeff_shown = (ac != 1) || all_zero;
        if (coeff_shown) out += ac.get_str();
        bool first_factor = !coeff_shown;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            if (!first_factor) out += "*";
            first_factor = false;
            out += names[i];
            if (e[i] > 1) out += "^" + std::to_string(e[i]);
        }
    }
    return out;
}

namespace {

struct PolyParser {
    const std::string& s;
    const std::vector<std::string>& names;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("polynomial parse error at position " +
                                    std::to_string(pos) + ": " + what);
    }

    Poly parse() {
        Poly acc(names.size());
        skip_ws();
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        acc = acc + parse_term(neg);
        for (;;) {
            skip_ws();
            if (pos >= s.size()) break;
            if (eat('+'))
                acc = acc + parse_term(false);
            else if (eat('-'))
                acc = acc + parse_term(true);
            else
                fail("expected '+' or '-'");
        }
        return acc;
    }

    Poly parse_term(bool neg) {
        mpz_class c = 1;
        Poly::Exponents e(names.size(), 0);
        bool saw_factor = false;
        for (;;) {
            skip_ws();
            if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                std::size_t start = pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                c *= mpz_class(s.substr(start, pos - start));
                saw_factor = true;
            } else {
                std::size_t var = names.size();
                std::size_t best_len = 0;
                for (std::size_t i = 0; i < names.size(); ++i) {
                    const auto& nm = names[i];
                    if (nm.size() > best_len && s.compare(pos, nm.size(), nm) == 0) {
                        var = i;
                        best_len = nm.size();
                    }
                }
                if (var == names.size()) {
                    if (!saw_factor) fail("expected number or variable");
                    break;
                }
                pos += best_len;
                unsigned exp = 1;
                if (eat('^')) {
                    skip_ws();
                    std::size_t start = pos;
                    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                    if (start == pos) fail("expected exponent");
                    exp = static_cast<unsigned>(std::stoul(s.substr(start, pos - start)));
                }
                e[var] += exp;
                saw_factor = true;
            }
            if (!eat('*')) break;
        }
        if (neg) c = -c;
        return Poly::monomial(c, e);
    }
};

}  // namespace

Poly Poly::parse(const std::string& text, const std::vector<std::string>& names) {
    PolyParser p{text, names};
    return p.parse();
}

PolyFrac::PolyFrac(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw std::invalid_argument("zero denominator");
    reduce();
}

void PolyFrac::reduce() {
    if (num.is_zero()) {
        den = Poly::constant(1, den.nvars());
        return;
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), num.content().get_mpz_t(), den.content().get_mpz_t());
    if (g > 1) {
        num = num.divide_by_mpz_exact(g);
        den = den.divide_by_mpz_exact(g);
    }
    auto mn = num.monomial_content();
    auto md = den.monomial_content();
    if (mn && md) {
        Poly::Exponents common(num.nvars());
        bool any = false;
        for (std::size_t i = 0; i < common.size(); ++i) {
            common[i] = std::min((*mn)[i], (*md)[i]);
            any = any || common[i] > 0;
        }
        if (any) {
            num = num.divide_by_monomial(common);
            den = den.divide_by_monomial(common);
        }
    }
    if (den.terms().rbegin()->second < 0) {
        num = -num;
        den = -den;
    }
    if (den.is_constant() && den.constant_term() == 1) return;
    if (auto q = num.try_exact_div(den)) {
        num = *q;
        den = Poly::constant(1, den.nvars());
        return;
    }
    if (auto g2 = Poly::univariate_gcd(num, den)) {
        if (!g2->is_constant() || g2->constant_term() != 1) {
            num = *num.try_exact_div(*g2);
            den = *den.try_exact_div(*g2);
            if (den.terms().rbegin()->second < 0) {
                num = -num;
                den = -den;
            }
        }
    }
}

PolyFrac PolyFrac::operator+(const PolyFrac& o) const {
    return PolyFrac(num * o.den + o.num * den, den * o.den);
}

PolyFrac PolyFrac::operator-(const PolyFrac& o) const {
    return PolyFrac(num * o.den - o.num * den, den * o.den);
}

PolyFrac PolyFrac::operator*(const PolyFrac& o) const {
    return PolyFrac(num * o.num, den * o.den);
}

PolyFrac PolyFrac::operator-() const {
    PolyFrac r = *this;
    r.num = -r.num;
    return r;
}

PolyFrac PolyFrac::inv() const {
    if (num.is_zero()) throw std::invalid_argument("division by zero");
    return PolyFrac(den, num);
}

bool PolyFrac::operator==(const PolyFrac& o) const {
    return num * o.den == o.num * den;
}

}  // namespace formring
