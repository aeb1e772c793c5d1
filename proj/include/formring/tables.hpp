#ifndef FORMRING_TABLES_HPP
#define FORMRING_TABLES_HPP

#include <string>
#include <vector>

#include "formring/form.hpp"
#include "formring/matrix.hpp"
#include "formring/theta.hpp"

namespace formring {

/// Structure constants of a rank-n algebra with basis 1, zeta_1, ...,
/// zeta_{n-1}: the product zeta_i zeta_j has coordinate vector c[i-1][j-1]
/// (length n, entry 0 the coefficient of 1).
struct MultTable {
    int n = 0;
    RingPtr ring;
    std::vector<std::vector<std::vector<Value>>> c;

    const std::vector<Value>& product(int i, int j) const;
    /// Bilinear product of two coordinate vectors.
    std::vector<Value> mult_coords(std::span<const Value> a, std::span<const Value> b) const;
    /// Matrix of multiplication by the element with the given coordinates.
    ValueMat mult_matrix(std::span<const Value> coords) const;
    ValueMat basis_mult_matrix(int i) const;  // i = 0 gives the identity
    /// Empty when commutativity, associativity and unitality hold; lists
    /// each violated equation otherwise.
    std::vector<std::string> check_axioms() const;
    bool operator==(const MultTable& o) const;
    bool operator!=(const MultTable& o) const { return !(*this == o); }
};

/// Structure constants of a rank-n module over a MultTable algebra with
/// basis b_0..b_{n-1}: zeta_i acts by d[i-1][j] on b_j. `level` records
/// which member of the module family the table presents, `twist` is the
/// bookkeeping tag inherited from the form.
struct ActionTable {
    int n = 0;
    int level = 0;
    int twist = -1;
    RingPtr ring;
    std::vector<std::vector<std::vector<Value>>> d;

    ValueMat action_matrix(int i) const;  // i = 0 gives the identity
    std::vector<Value> act(int i, std::span<const Value> v) const;
    /// Empty when (zeta_i zeta_j) m = zeta_i (zeta_j m) for all basis m.
    std::vector<std::string> check_module_axiom(const MultTable& r) const;
    bool operator==(const ActionTable& o) const;
    bool operator!=(const ActionTable& o) const { return !(*this == o); }
};

/// The ring attached to a binary form, from the closed-form structure
/// constants. Works over every context, including the zero form (where
/// all products of non-identity basis vectors vanish).
MultTable build_ring(const BinaryForm& f);

/// Action table for the level-k module in its standard basis. The
/// constants are integer polynomials in the coefficients, generated once
/// symbolically from the universal form through the theta model and
/// cached per (n, k); concrete tables are specializations.
ActionTable build_module(const BinaryForm& f, int k);

/// Same, for the shifted basis {1, ..., theta^k, zeta_{k+1}+f_{k+1}, ...}.
ActionTable build_primed_module(const BinaryForm& f, int k);

MultTable specialize_table(const MultTable& t, const RingHom& hom);
ActionTable specialize_table(const ActionTable& t, const RingHom& hom);

/// Determinant of the trace-form Gram matrix (Tr(zeta_i zeta_j)).
Value ring_disc(const MultTable& r);

/// Pairing matrix between the shifted level-k basis and the reversed
/// second-form basis of level n-2-k, under the coordinate functional that
/// reads off zeta_{n-1} at level n-2. The two bases are dual, so this is
/// the identity. Computed through the theta model when f_0 is nonzero in
/// an integral context, and by specializing the universal matrix
/// otherwise.
ValueMat dual_pairing_matrix(const BinaryForm& f, int k);

/// Matrix of the map from the shifted level-(n-2) module to Hom(R_f, O),
/// j -> (r -> phi(r j)), in the standard bases. Unimodular and
/// action-intertwining for every form.
ValueMat inverse_different_map(const BinaryForm& f);

/// Whether the module family attached to f is invertible: decided by
/// testing the product span I_f * I_f^sharp against R_f in the theta
/// model. Integral (integer) context, nonzero form.
bool is_invertible_family(const BinaryForm& f);

/// Gorenstein test for n >= 3, via invertibility of the level-(n-2)
/// module (the inverse different's class).
bool is_gorenstein(const BinaryForm& f);

/// Optional experiment: does the k-fold product span of I_f agree with
/// the level-k module span? (Equality is guaranteed for invertible
/// families; nothing is asserted in general.)
bool module_power_matches_level(const BinaryForm& f, int k);

/// Unimodular change-of-basis pair conjugating the tables of f to the
/// tables of gl2_act(f, g), with the ring matrix intertwining the
/// multiplication tables and the module matrix the level-1 action tables.
/// Both are verified exactly before returning.
struct GL2Witness {
    ValueMat ring_change;
    ValueMat module_change;
};
GL2Witness gl2_invariance_witness(const BinaryForm& f, const GL2Matrix& g);

// Basis-change helpers shared with the pair constructions. `F` columns
// hold old-basis coordinates of the new basis vectors.
MultTable change_ring_basis(const MultTable& r, const ValueMat& f_cols);
ActionTable change_module_basis(const ActionTable& a, const ValueMat& e_cols);
ActionTable change_acting_ring_basis(const ActionTable& a, const ValueMat& f_cols);

}  // namespace formring

#endif
