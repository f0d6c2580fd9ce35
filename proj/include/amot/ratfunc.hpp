#pragma once

#include "amot/poly.hpp"

#include <optional>

namespace amot {

// Rational function in one variable over a tower level, kept in lowest terms
// with a monic denominator. The zero function is 0/1.
class RationalFunc {
public:
    Poly num, den;

    RationalFunc() = default;
    explicit RationalFunc(Poly n) : num(std::move(n)), den(Poly::one(num.tw, num.level)) {}
    RationalFunc(Poly n, Poly d);

    static RationalFunc zero(const FieldTower* tw, uint32_t lv = 1) {
        return RationalFunc(Poly::zero(tw, lv));
    }
    static RationalFunc one(const FieldTower* tw, uint32_t lv = 1) {
        return RationalFunc(Poly::one(tw, lv));
    }
    static RationalFunc var(const FieldTower* tw, uint32_t lv = 1) {
        return RationalFunc(Poly::x(tw, lv));
    }
    static RationalFunc constant(const FieldTower* tw, FieldElement v) {
        return RationalFunc(Poly::constant(tw, std::move(v)));
    }

    const FieldTower* tower() const { return num.tw; }
    uint32_t level() const { return num.level; }
    bool is_zero() const { return num.is_zero(); }
    bool is_polynomial() const { return den.is_one(); }

    RationalFunc operator+(const RationalFunc& o) const;
    RationalFunc operator-(const RationalFunc& o) const;
    RationalFunc operator*(const RationalFunc& o) const;
    RationalFunc operator/(const RationalFunc& o) const;
    RationalFunc operator-() const;
    RationalFunc inv() const;
    RationalFunc pow(int64_t n) const;
    bool operator==(const RationalFunc& o) const { return num == o.num && den == o.den; }

    // Valuation at the place of an irreducible polynomial.
    int ord_at(const Poly& prime) const;
    // Valuation at the place at infinity: deg den - deg num.
    int ord_infinity() const;

    // Entrywise q-power Frobenius on coefficients; fixes the variable.
    RationalFunc frob_q() const;
    RationalFunc lifted(uint32_t to_level) const;

    // Evaluation where the denominator does not vanish.
    std::optional<FieldElement> eval(const FieldElement& x) const;

    std::string to_string(const std::string& var = "t") const;

private:
    void reduce();
};

}  // namespace amot
