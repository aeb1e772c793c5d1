#ifndef FORMRING_FORM_HPP
#define FORMRING_FORM_HPP

#include <string>
#include <vector>

#include "formring/matrix.hpp"
#include "formring/value.hpp"

namespace formring {

/// Binary form of degree n: f_0 x^n + f_1 x^(n-1) y + ... + f_n y^n over
/// some context, with a twist tag recording the determinant power picked
/// up under coordinate changes set. The zero form is allowed.
struct BinaryForm {
    int n = 0;
    RingPtr ring;
    std::vector<Value> coeffs;  // f_0 .. f_n
    int twist = -1;

    bool is_zero() const;
    const Value& coeff(int i) const { return coeffs.at(static_cast<std::size_t>(i)); }
    std::string str() const;
};

BinaryForm make_form(int n, RingPtr ring, std::vector<Value> coeffs, int twist = -1);
BinaryForm make_int_form(int n, const std::vector<long>& coeffs, int twist = -1);

/// The form with indeterminate coefficients over Z[f_0..f_n].
BinaryForm universal_form(int n, int twist = -1);
/// Variable names f_0..f_n used by universal_form.
std::vector<std::string> universal_var_names(int n, const std::string& stem = "f");

/// Invertible 2x2 matrix over the form's context (unit determinant).
struct GL2Matrix {
    Value a, b, c, d;
    RingPtr ring;

    Value det() const { return a * d - b * c; }
};

GL2Matrix gl2(const RingPtr& ring, long a, long b, long c, long d);
GL2Matrix gl2_identity(const RingPtr& ring);
GL2Matrix gl2_swap(const RingPtr& ring);
/// The shear with matrix rows (1,0),(1,1).
GL2Matrix gl2_shear(const RingPtr& ring);

/// Substitution action: (x, y) -> (a x + c y, b x + d y), scaled by
/// det^twist. Acting by g1 and then g2 equals acting by compose(g1, g2).
BinaryForm gl2_act(const BinaryForm& f, const GL2Matrix& g);
/// The composite "apply first, then second" under gl2_act.
GL2Matrix gl2_compose(const GL2Matrix& first, const GL2Matrix& second);

/// True when the coefficients generate the unit ideal (content a unit).
bool is_primitive(const BinaryForm& f);

/// Discriminant of the form, normalized so that n=2 gives f_1^2 - 4 f_0 f_2
/// and n=3 the classical 5-term cubic discriminant. Defined through the
/// universal form, so leading zero coefficients need no special casing.
Value disc_form(const BinaryForm& f);

/// Discriminant of the degree-n universal form as a polynomial in f_0..f_n
/// (computed once per degree from the resultant of the dehomogenized form
/// and its derivative, then cached).
const Poly& universal_disc_poly(int n);

/// Specialization homomorphism sending the universal coefficients f_i to
/// the coefficients of f.
RingHom universal_specialization(const BinaryForm& f);

/// A determinant-one change of variables g with gl2_act(f, g) having
/// nonzero f_0 (and nonzero f_n too when both_ends). Throws for the zero
/// form.
GL2Matrix gl2_move_nonzero(const BinaryForm& f, bool both_ends);

}  // namespace formring

#endif
