#pragma once

#include "amot/drinfeld.hpp"
#include "amot/kpoly.hpp"

namespace amot {

// Field handle for rational functions in t over K.
struct KRatFd {
    const AField* K;
    using Elem = KRat;
    Elem zero() const { return KRat::zero(K); }
    Elem one() const { return KRat::one(K); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem inv(const Elem& a) const { return a.inv(); }
    bool is_zero(const Elem& a) const { return a.is_zero(); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
};

// An A-motive presented by the matrix of tau_M on a fixed basis: coordinates
// transform by v -> T * sigma(v). Entries are rational in t over K so that
// duals stay in the same representation.
struct AMotiveMatrix {
    const AField* K = nullptr;
    uint32_t rank = 0;
    Mat<KRat> T;
    KRat det;                 // cached, nonzero
    bool effective = false;   // all entries polynomial in t
    std::optional<int> dim;   // (t - theta)-order of det, recorded when effective
};

// Validates det != 0 and fills the cached fields.
AMotiveMatrix make_motive(const AField* K, Mat<KRat> T);

// Motive of a Drinfeld module on the basis {1, tau, ..., tau^{r-1}}, where
// tau^r is rewritten through phi_t: the last column is
// (g_r^{-1}(t-theta), -g_r^{-1}g_1, ..., -g_r^{-1}g_{r-1}).
AMotiveMatrix motive_of_drinfeld(const DrinfeldModule& G);

AMotiveMatrix unit_motive(const AField* K);
AMotiveMatrix carlitz_motive(const AField* K);

AMotiveMatrix direct_sum(const AMotiveMatrix& M, const AMotiveMatrix& N);
AMotiveMatrix tensor(const AMotiveMatrix& M, const AMotiveMatrix& N);
AMotiveMatrix dual(const AMotiveMatrix& M);
// n < 0 takes tensor powers of the dual; n = 0 gives the unit motive.
AMotiveMatrix tensor_power(const AMotiveMatrix& M, int n);

// Monic characteristic polynomial of the Frobenius with coefficients in
// Q = F_q(t), plus the residue degree it was computed at.
struct CharPoly {
    std::vector<RationalFunc> c;  // low-first, c.back() = 1
    uint32_t d = 1;               // [K : F_q]

    uint32_t degree() const { return uint32_t(c.size()) - 1; }
    RationalFunc eval(const RationalFunc& x) const;
    std::string to_string(const std::string& var = "X") const;
};

// det(X - T sigma(T) ... sigma^{d-1}(T)) over a finite A-field of degree d,
// computed fraction-free and descended to Q; descent failure is an internal
// convention error.
CharPoly frobenius_charpoly(const AMotiveMatrix& M);

// Product of two characteristic polynomials at the same residue degree
// (the charpoly of a direct sum).
CharPoly charpoly_product(const CharPoly& a, const CharPoly& b);

// Reduction of P mod ell: coefficients evaluated at the canonical root of
// ell, as level-deg(ell) elements, low-first and monic. Rejects primes
// dividing a coefficient denominator.
std::vector<FieldElement> charpoly_mod(const CharPoly& P, const PrimeOfA& ell);

// Characteristic polynomial (monic, low-first) of a square matrix over the
// tower level shared by its entries; thin wrapper used for torsion matrices.
std::vector<FieldElement> matrix_charpoly(const FieldTower& tw, const Mat<FieldElement>& M,
                                          uint32_t level);

}  // namespace amot
