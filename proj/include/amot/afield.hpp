#pragma once

#include <variant>

#include "amot/poly.hpp"
#include "amot/ratfunc.hpp"

namespace amot {

// Element of an A-field: a finite-field element (finite case) or a rational
// function in theta (generic case). Which alternative applies is fixed by the
// AField the element belongs to.
using KElem = std::variant<FieldElement, RationalFunc>;

// A field K equipped with gamma: F_q[t] -> K, t |-> theta. Finite case:
// K = F_{q^d} inside the shared tower, theta a designated element; the
// kernel of gamma is generated by the minimal polynomial of theta (the
// characteristic prime). Generic case: K = F_q(theta) with gamma injective;
// theta may itself be a prescribed rational function of the field variable.
class AField {
public:
    static AField finite(const FieldTower* tw, FieldElement theta);
    static AField generic(const FieldTower* tw, std::string var_name = "theta");
    static AField generic_with_theta(const FieldTower* tw, RationalFunc theta,
                                     std::string var_name);

    const FieldTower* tower() const { return tw_; }
    bool is_finite() const { return finite_; }
    // [K : F_q] in the finite case.
    uint32_t degree() const;
    const KElem& theta() const { return theta_; }
    const std::string& var_name() const { return var_; }

    // Generator of ker(gamma) in the finite case; throws in the generic case.
    const PrimeOfA& characteristic() const;

    bool same(const AField& o) const;

    KElem zero() const;
    KElem one() const;
    KElem from_int(int64_t k) const;
    // gamma(a) = a(theta) for a in F_q[t] with level-1 coefficients.
    KElem gamma(const Poly& a) const;
    // Constant embedding of c in F_q.
    KElem from_base(const FieldElement& c) const;

    KElem add(const KElem& a, const KElem& b) const;
    KElem sub(const KElem& a, const KElem& b) const;
    KElem mul(const KElem& a, const KElem& b) const;
    KElem neg(const KElem& a) const;
    KElem inv(const KElem& a) const;
    KElem pow(const KElem& a, uint64_t n) const;
    bool is_zero(const KElem& a) const;
    bool eq(const KElem& a, const KElem& b) const;

    // q-power endomorphism of K (an automorphism in the finite case).
    KElem frob_q(const KElem& a, uint32_t times = 1) const;
    // p-power endomorphism.
    KElem frob_p(const KElem& a, uint32_t times = 1) const;

    const FieldElement& as_fe(const KElem& a) const;
    const RationalFunc& as_rat(const KElem& a) const;

    std::string to_string(const KElem& a) const;

private:
    AField() = default;
    void check(const KElem& a) const;

    const FieldTower* tw_ = nullptr;
    bool finite_ = true;
    uint32_t dK_ = 1;
    KElem theta_;
    std::string var_ = "theta";
    std::optional<PrimeOfA> char_;
};

}  // namespace amot
