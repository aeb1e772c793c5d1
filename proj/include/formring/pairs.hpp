#ifndef FORMRING_PAIRS_HPP
#define FORMRING_PAIRS_HPP

#include <string>
#include <vector>

#include "formring/tables.hpp"

namespace formring {

/// A rank-n algebra R, a rank-n R-module I with basis split as
/// (k_1, ..., k_{n-2}, x-lift, y-lift), the quotient map I -> Q in that
/// basis (rows give the x and y coordinates), and the unimodular matrix
/// phi identifying the symmetric-power basis sym(x^{n-1-i} y^{i-1}) with
/// the classes of zeta_i.
struct BinaryPair {
    MultTable r;
    ActionTable i;
    ValueMat quot;  // 2 x n
    ValueMat phi;   // (n-1) x (n-1)
    int twist = -1;

    int n() const { return r.n; }
    const RingPtr& ring() const { return r.ring; }
    bool operator==(const BinaryPair& o) const {
        return r == o.r && i == o.i && quot == o.quot && phi == o.phi && twist == o.twist;
    }
};

/// A pair in the normalized bases, together with the n+1 coefficients
/// that determine it completely.
struct BasedPair {
    BinaryPair pair;
    std::vector<Value> a;  // a_0 .. a_n

    bool operator==(const BasedPair& o) const { return pair == o.pair && a == o.a; }
};

struct PairReport {
    bool passed = false;
    bool axioms_ok = false;
    bool zeroes_ones_ok = false;
    bool exact_sequence_ok = false;
    bool exact_sequence_checked = false;  // runs over the integer context
    std::vector<std::string> failures;
};

/// Validation: table axioms, the zeroes-and-ones coordinate criterion,
/// and (over Z) the three-term exact-sequence criterion via Smith normal
/// form. Each failed coordinate equation is listed.
PairReport validate_pair(const BinaryPair& p);

/// Normalized lifts: adjusts the x-lift, the zeta-lifts and the y-lift so
/// that y(zeta_i x) = 0 (i >= 2), x(zeta_i x) = 0 (i >= 1) and
/// y(zeta_i y) = 0 (i >= 2), then reads off the coefficients. The result
/// is independent of the incoming lifts.
BasedPair normalize(const BinaryPair& p);

/// Pair attached to a form: its ring, the level-(n-3) module, the
/// canonical quotient and identification, normalized.
BasedPair form_to_pair(const BinaryForm& f);

/// Form attached to a based pair, evaluated through the degree-n map
/// x -> x wedge phi(x^{n-2}) x with an explicit splitting, and recomputed
/// under a second, seeded random splitting; a mismatch (possible only for
/// invalid input) throws.
BinaryForm pair_to_form(const BasedPair& p, unsigned long splitting_seed = 1);

/// Rebuild the full based pair from its n+1 coefficients alone, through
/// the commutator recurrences on the action matrices; throws when the
/// internal equations disagree.
BasedPair reconstruct_from_coefficients(std::span<const Value> a, int n, const RingPtr& ring);

bool based_invariants_hold(const BasedPair& p, std::vector<std::string>* why = nullptr);

/// For n = 3: the module of a valid pair is free over the ring; returns
/// the verified unimodular matrix of r -> r k_1.
ValueMat cubic_module_witness(const BinaryPair& p);

/// Integer matrix of the inclusion of symmetric tensors
/// Sym_{n-1} Q -> Q (x) Sym_{n-2} Q over a free rank-2 module Q.
IntMat realexact_inclusion_matrix(int n);
/// Integer matrix of q1 (x) q2...q_{n-1} -> q2...q_{n-2} (x) (q_{n-1} ^ q1).
IntMat realexact_wedge_matrix(int n);
/// The pair's right-hand map q (x) s -> (k -> q ^ (phi(s) k)) in the same
/// bases, using the pair's phi, action and quotient.
ValueMat pair_rightmap_matrix(const BinaryPair& p);

}  // namespace formring

#endif
