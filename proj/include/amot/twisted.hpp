#pragma once

#include "amot/afield.hpp"
#include "amot/linalg.hpp"

namespace amot {

// Element of K{tau}: sum c_i tau^i with the commutation rule tau*c = c^q*tau.
// tau acts on points as the q-power map.
class TwistedPoly {
public:
    const AField* K = nullptr;
    std::vector<KElem> c;  // c[i] multiplies tau^i, trimmed

    TwistedPoly() = default;
    explicit TwistedPoly(const AField* k) : K(k) {}
    TwistedPoly(const AField* k, std::vector<KElem> cs);

    static TwistedPoly zero(const AField* k) { return TwistedPoly(k); }
    static TwistedPoly one(const AField* k) { return TwistedPoly(k, {k->one()}); }
    static TwistedPoly tau(const AField* k, uint32_t i = 1);
    static TwistedPoly constant(const AField* k, KElem v) {
        return TwistedPoly(k, {std::move(v)});
    }

    int deg() const { return int(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    KElem coeff(size_t i) const { return i < c.size() ? c[i] : K->zero(); }
    KElem lead() const;

    TwistedPoly operator+(const TwistedPoly& o) const;
    TwistedPoly operator-(const TwistedPoly& o) const;
    // Twisted product: coefficient of tau^k is sum_{i+j=k} a_i * b_j^{q^i}.
    TwistedPoly operator*(const TwistedPoly& o) const;
    TwistedPoly operator-() const;
    TwistedPoly pow(uint64_t n) const;
    bool operator==(const TwistedPoly& o) const;

    std::string to_string() const;  // ascending, tau printed as T
};

// Raises every coefficient to the p-th power; a ring endomorphism of K{tau}.
TwistedPoly coefficient_frobenius(const TwistedPoly& f);

// f(x) = sum c_i x^{q^i} for x in an extension of a finite K inside the tower.
FieldElement evaluate_additive(const TwistedPoly& f, const FieldElement& x);

// Matrix of x -> f(x) as an F_q-linear endomorphism of the tower level L
// (entries level-1). L must be a multiple of [K:F_q].
Mat<FieldElement> additive_matrix(const TwistedPoly& f, uint32_t L);

// F_q-basis of the kernel of f inside F_{q^{d*m}}, d = [K:F_q].
std::vector<FieldElement> additive_kernel(const TwistedPoly& f, uint32_t m);

struct FullKernel {
    std::vector<FieldElement> basis;  // elements of level d*ext_degree
    uint32_t ext_degree;              // minimal m with the full kernel
};

// Finds the minimal extension F_{q^{d*m}} containing the whole kernel of f
// (dimension = deg_tau f minus the inseparability order) and returns its
// basis. The splitting degree is computed exactly by factoring the associated
// additive polynomial; levels beyond level_cap raise a precision error.
FullKernel full_additive_kernel(const TwistedPoly& f, uint32_t level_cap = 256);

}  // namespace amot
