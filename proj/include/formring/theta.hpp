#ifndef FORMRING_THETA_HPP
#define FORMRING_THETA_HPP

#include <optional>
#include <span>
#include <vector>

#include "formring/form.hpp"
#include "formring/matrix.hpp"

namespace formring {

/// Thrown when an element does not lie in the module spanned by a basis
/// with integral coordinates; doubles as the module-membership test.
struct MembershipError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Element of Q_f = K(theta)/(f_0 theta^n + ... + f_n), stored as
/// coordinates (c_0, ..., c_{n-1}) over the fraction field K of the base
/// context, representing c_0 + c_1 theta + ... + c_{n-1} theta^(n-1).
struct ThetaElem {
    std::vector<Value> c;
};

/// Concrete model of Q_f for a form with f_0 != 0 over an integral base.
/// Everything the table constructions claim is re-derivable here by
/// direct fraction-field arithmetic, which is what makes this the oracle.
class ThetaRing {
public:
    explicit ThetaRing(const BinaryForm& f);

    int n() const { return f_.n; }
    const BinaryForm& form() const { return f_; }
    const RingPtr& base() const { return f_.ring; }
    const RingPtr& field() const { return field_; }

    ThetaElem zero() const;
    ThetaElem one() const;
    ThetaElem theta() const;
    ThetaElem from_base(const Value& v) const;
    ThetaElem from_field(const Value& v) const;
    /// theta^e; negative e requires f_n invertible in Q_f.
    ThetaElem theta_pow(int e) const;
    /// zeta_0 = 1 and zeta_i = f_0 theta^i + f_1 theta^(i-1) + ... +
    /// f_{i-1} theta for 1 <= i <= n-1.
    ThetaElem zeta(int i) const;
    /// nu_0 = f_0 and nu_i = zeta_i + f_i.
    ThetaElem nu(int i) const;

    ThetaElem add(const ThetaElem& a, const ThetaElem& b) const;
    ThetaElem sub(const ThetaElem& a, const ThetaElem& b) const;
    ThetaElem neg(const ThetaElem& a) const;
    ThetaElem mul(const ThetaElem& a, const ThetaElem& b) const;
    ThetaElem scale(const ThetaElem& a, const Value& field_scalar) const;
    ThetaElem inverse(const ThetaElem& a) const;
    bool is_zero(const ThetaElem& a) const;
    bool eq(const ThetaElem& a, const ThetaElem& b) const;

    /// The integral rewrite of zeta_i * theta^m, written directly from the
    /// closed-form identity rather than through mul(); mul() agreement is
    /// one of the oracle's self-checks.
    ThetaElem zeta_theta_rewrite(int i, int m) const;

    /// Basis of the module attached to level k, for -1 <= k <= n-1:
    /// {1, theta, ..., theta^k, zeta_{k+1}, ..., zeta_{n-1}} when k >= 0
    /// and {nu_0, ..., nu_{n-1}} when k = -1.
    std::vector<ThetaElem> mixed_basis(int k) const;
    /// {1, ..., theta^k, zeta_{k+1}+f_{k+1}, ..., zeta_{n-1}+f_{n-1}};
    /// coincides with the nu basis at k = -1.
    std::vector<ThetaElem> primed_basis(int k) const;
    /// {1, ..., theta^k, f_0 theta^{k+1}, f_0 theta^{k+2}+f_1 theta^{k+1},
    /// ...}; spans the same module as mixed_basis(k).
    std::vector<ThetaElem> alt_basis(int k) const;

    /// Exact coordinates of a in the given basis, with every coordinate
    /// required to be integral over the base; throws MembershipError
    /// otherwise.
    std::vector<Value> coords_in(std::span<const ThetaElem> basis, const ThetaElem& a) const;
    std::optional<std::vector<Value>> try_coords_in(std::span<const ThetaElem> basis,
                                                    const ThetaElem& a) const;
    std::vector<Value> to_mixed_basis(const ThetaElem& a, int k) const;
    std::optional<std::vector<Value>> try_to_mixed_basis(const ThetaElem& a, int k) const;

    /// Multiplication-by-a matrix in the theta-power basis over K.
    ValueMat mult_matrix(const ThetaElem& a) const;

private:
    BinaryForm f_;
    RingPtr field_;
    std::vector<Value> fc_;  // coefficients lifted into K
    void reduce(std::vector<Value>& c) const;
};

/// Finitely generated Z-span inside Q_f (base context Z), canonicalized by
/// Hermite triangulation of the coordinate lattice.
class QfSpan {
public:
    QfSpan() = default;
    QfSpan(const ThetaRing& t, std::span<const ThetaElem> gens);

    bool contains(const ThetaRing& t, const ThetaElem& e) const;
    bool operator==(const QfSpan& o) const { return lat_ == o.lat_; }
    bool operator!=(const QfSpan& o) const { return !(*this == o); }
    std::size_t rank() const { return lat_.rank(); }
    const RatLattice& lattice() const { return lat_; }
    std::vector<ThetaElem> basis_elements(const ThetaRing& t) const;

private:
    RatLattice lat_;
};

QfSpan ring_span(const ThetaRing& t);
QfSpan module_span(const ThetaRing& t, int k);
/// Span of all pairwise products of the generator lists.
QfSpan ideal_product_span(const ThetaRing& t, std::span<const ThetaElem> a,
                          std::span<const ThetaElem> b);
/// Colon module (A : B) = {x in Q_f : x*B inside A}.
QfSpan colon_span(const ThetaRing& t, const QfSpan& a, std::span<const ThetaElem> bgens);

/// Global sections of the twisted structure sheaf at level k, computed by
/// intersecting the images of the two affine-chart restrictions inside the
/// sections on the overlap (exact integer kernel computation on a degree
/// window, grown until the result stabilizes). Requires f over Z with
/// f_0 != 0 and f_n != 0; returns a canonical basis of the intersection
/// mapped into Q_f.
std::vector<ThetaElem> global_sections(const BinaryForm& f, int k);

/// Specialize an element of the universal Q_f along a coefficient
/// specialization hom (denominators must specialize to nonzero values).
ThetaElem specialize_elem(const ThetaRing& src, const ThetaRing& dst, const RingHom& base_hom,
                          const ThetaElem& e);

/// Probabilistic span equality over the universal base: compare the
/// concrete spans after `trials` random integer specializations with
/// f_0 != 0. Exact span normal forms over multivariate bases are out of
/// scope; symbolic identity checks elsewhere back this up.
bool spans_equal_by_specialization(const ThetaRing& universal,
                                   std::span<const ThetaElem> a,
                                   std::span<const ThetaElem> b, int trials,
                                   unsigned long seed);

}  // namespace formring

#endif
