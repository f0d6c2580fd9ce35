#pragma once

// Dense polynomials over one level of a field tower, with factorization.
// Level 1 is the coefficient ring A = F_q[t] of the function field F_q(t);
// higher levels appear when splitting additive kernels over extensions.

#include <cstdint>
#include <string>
#include <vector>

#include "amot/fq.hpp"

namespace amot {

struct Poly {
    const FieldTower* tw = nullptr;
    uint32_t level = 1;
    std::vector<FieldElement> c;  // trimmed, low degree first; empty = zero

    Poly() = default;
    Poly(const FieldTower* t, uint32_t lv) : tw(t), level(lv) {}
    Poly(const FieldTower* t, uint32_t lv, std::vector<FieldElement> cs);

    static Poly zero(const FieldTower* t, uint32_t lv = 1) { return Poly(t, lv); }
    static Poly one(const FieldTower* t, uint32_t lv = 1);
    static Poly x(const FieldTower* t, uint32_t lv = 1);
    static Poly constant(const FieldTower* t, FieldElement v);
    // Coefficients as integers mod p, low degree first.
    static Poly from_ints(const FieldTower* t, const std::vector<int64_t>& coeffs, uint32_t lv = 1);

    int deg() const { return int(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    bool is_one() const;
    bool is_monic() const;
    FieldElement lead() const;
    FieldElement coeff(size_t i) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    bool operator==(const Poly& o) const;

    Poly scaled(const FieldElement& s) const;
    Poly monic() const;
    Poly shifted(uint32_t k) const;  // multiply by x^k
    void divrem(const Poly& d, Poly& q, Poly& r) const;
    Poly operator/(const Poly& d) const;
    Poly operator%(const Poly& d) const;
    Poly gcd(const Poly& o) const;
    Poly pow(uint64_t n) const;
    Poly derivative() const;
    // Evaluation at an element whose level is a multiple of the coefficient
    // level (coefficients are embedded first).
    FieldElement eval(const FieldElement& x) const;
    // Coefficients embedded into a higher level.
    Poly lifted(uint32_t to_level) const;
    // Entrywise x -> x^q (acts trivially on level-1 coefficients).
    Poly frob_q() const;

    std::string to_string(const std::string& var = "t") const;
};

// Canonical order: degree first, then leading-coefficient-first encoding order.
bool poly_less(const Poly& a, const Poly& b);

// Monic irreducible of A = F_q[t] (coefficient level 1).
struct PrimeOfA {
    Poly z;
    int degree() const { return z.deg(); }
};

// Validates monic + irreducible + level 1.
PrimeOfA make_prime(const Poly& z);

// Monic irreducible factors with multiplicity, canonically ordered. The unit
// is lead(f). Randomized equal-degree splitting uses the given seed; the
// returned factorization is seed-independent.
std::vector<std::pair<Poly, int>> factor(const Poly& f, uint64_t seed = 0);

bool is_irreducible(const Poly& f);

// All roots of f lying in the coefficient field, in encoding order.
std::vector<FieldElement> roots_in_field(const Poly& f, uint64_t seed = 0);

// Roots of a level-1 polynomial in the degree-m extension.
std::vector<FieldElement> roots_in_extension(const Poly& f, uint32_t m, uint64_t seed = 0);

// Monic minimal polynomial over F_q (level-1 output) of a level-m element.
Poly minimal_polynomial(const FieldTower* tw, const FieldElement& a);

// Smallest root (in encoding order) of a monic irreducible level-1 polynomial
// inside the level equal to its degree; deterministic, used wherever the
// residue field F_q[t]/(f) is realized inside the tower.
FieldElement canonical_root(const Poly& irreducible);

}  // namespace amot
