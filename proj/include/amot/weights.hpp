#pragma once

#include <cstdint>
#include <vector>

#include "amot/motive.hpp"
#include "amot/newton.hpp"

namespace amot {

// Absolute values |alpha_i| = (#k)^{w_i} of the Frobenius eigenvalues,
// normalized by the residue degree d = [k : F_q]. Extracted from the Newton
// polygon of the charpoly at the infinite place; no splitting field is ever
// constructed.
struct WeightVector {
    std::vector<Rat> w;  // ascending, one entry per eigenvalue
    uint32_t d = 1;
};

// Requires a monic charpoly with nonzero constant term (unit Frobenius
// determinant); each eigenvalue of v_infinity-valuation s contributes -s/d.
WeightVector weights_of(const CharPoly& P);

bool has_no_integral_weights(const WeightVector& W);

// deg(ell) * ord_ell(z) for one prime ell of the support of z away from p.
struct SupportTerm {
    Poly prime;
    int64_t ord;
};

// For a uniformizer z at p, the away-from-p support sum
//   S = sum_{ell != p} deg(ell) * ord_ell(z)
// and whether deg(p) divides it. This is the divisibility hypothesis under
// which the z-adic tower behaves like the classical cyclotomic one.
struct UniformizerCondition {
    bool holds = false;
    int64_t sum = 0;
    std::vector<SupportTerm> away;  // factored support of z away from p
};

// Rejects z with ord_p(z) != 1.
UniformizerCondition uniformizer_condition(const RationalFunc& z, const PrimeOfA& p);

// Weight of the rank-one twist Q_p(n) over a residue extension of degree m
// over the residue field at p: closed form -n(1 + S/deg p), cross-checked
// against the Newton polygon of X - z^{-n*m} at residue degree m*deg(p).
// Disagreement is an internal convention error.
Rat weight_of_tate_twist(int64_t n, const PrimeOfA& p, const RationalFunc& z, uint32_t m = 1);

}  // namespace amot
