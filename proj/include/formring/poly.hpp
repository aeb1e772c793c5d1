#ifndef FORMRING_POLY_HPP
#define FORMRING_POLY_HPP

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace formring {

/// Sparse multivariate polynomial over Z.
///
/// Terms are kept in a map from exponent vector to nonzero coefficient;
/// the map's lexicographic key order doubles as the canonical monomial
/// order used for printing, equality and leading-term division.
class Poly {
public:
    using Exponents = std::vector<std::uint32_t>;
    using TermMap = std::map<Exponents, mpz_class>;

    Poly() : nvars_(0) {}
    explicit Poly(std::size_t nvars) : nvars_(nvars) {}

    static Poly constant(const mpz_class& c, std::size_t nvars);
    static Poly variable(std::size_t index, std::size_t nvars);
    static Poly monomial(const mpz_class& c, const Exponents& e);

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant term (coefficient of the all-zero exponent vector).
    mpz_class constant_term() const;
    std::size_t total_degree() const;
    std::size_t degree_in(std::size_t var) const;
    /// Index of the unique variable occurring, if at most one does.
    std::optional<std::size_t> single_variable() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }
    bool operator<(const Poly& o) const;

    Poly mul_mpz(const mpz_class& c) const;
    Poly pow(unsigned e) const;

    /// gcd of all coefficients, nonnegative; 0 for the zero polynomial.
    mpz_class content() const;
    /// Exponent-wise minimum over all terms (the largest monomial dividing
    /// every term); nullopt for the zero polynomial.
    std::optional<Exponents> monomial_content() const;
    Poly divide_by_mpz_exact(const mpz_class& c) const;
    Poly divide_by_monomial(const Exponents& e) const;

    /// Quotient of an exact division, or nullopt when the division has a
    /// remainder. Single-divisor leading-term division in the monomial
    /// order, so success is equivalent to divisibility.
    std::optional<Poly> try_exact_div(const Poly& d) const;

    /// Primitive gcd of two polynomials that involve at most one common
    /// variable (subresultant-free Euclidean steps on primitive parts).
    /// Returns nullopt when either input genuinely involves two or more
    /// variables; callers fall back to unreduced fractions in that case.
    static std::optional<Poly> univariate_gcd(const Poly& a, const Poly& b);

    void set_term(const Exponents& e, const mpz_class& c);
    mpz_class coeff(const Exponents& e) const;

    std::string str(const std::vector<std::string>& names) const;
    /// Parses the output of str(); whitespace-tolerant.
    static Poly parse(const std::string& text, const std::vector<std::string>& names);

private:
    std::size_t nvars_;
    TermMap terms_;
};

/// Fraction of polynomials (an element of the rational function field).
///
/// Reduction cancels integer content, common monomial factors, exact
/// num/den divisibility and one-variable gcds. Multivariate pairs that
/// resist those steps are kept unreduced; equality always goes through
/// cross-multiplication, so correctness does not depend on how far a
/// representative was reduced. The denominators produced by the theta
/// constructions are integer multiples of monomials, which the steps
/// above reduce completely.
struct PolyFrac {
    Poly num;
    Poly den;

    PolyFrac() = default;
    PolyFrac(Poly n, Poly d);

    bool is_zero() const { return num.is_zero(); }
    bool is_integral() const { return den.is_constant() && den.constant_term() == 1; }

    PolyFrac operator+(const PolyFrac& o) const;
    PolyFrac operator-(const PolyFrac& o) const;
    PolyFrac operator*(const PolyFrac& o) const;
    PolyFrac operator-() const;
    PolyFrac inv() const;
    bool operator==(const PolyFrac& o) const;

    void reduce();
};

}  // namespace formring

#endif
