#include "amot/afield.hpp"

namespace amot {

AField AField::finite(const FieldTower* tw, FieldElement theta) {
    AField K;
    K.tw_ = tw;
    K.finite_ = true;
    K.dK_ = theta.level;
    K.char_ = PrimeOfA{minimal_polynomial(tw, theta)};
    K.theta_ = std::move(theta);
    return K;
}

AField AField::generic(const FieldTower* tw, std::string var_name) {
    return generic_with_theta(tw, RationalFunc::var(tw), std::move(var_name));
}

AField AField::generic_with_theta(const FieldTower* tw, RationalFunc theta,
                                  std::string var_name) {
    if (theta.num.deg() <= 0 && theta.den.deg() <= 0)
        throw InputError("theta must be non-constant so that gamma is injective");
    if (theta.level() != 1) throw InputError("generic theta must live over F_q itself");
    AField K;
    K.tw_ = tw;
    K.finite_ = false;
    K.theta_ = std::move(theta);
    K.var_ = std::move(var_name);
    return K;
}

uint32_t AField::degree() const {
    if (!finite_) throw InputError("generic A-field has infinite degree over F_q");
    return dK_;
}

const PrimeOfA& AField::characteristic() const {
    if (!char_) throw InputError("generic A-field has zero kernel; no characteristic prime");
    return *char_;
}

bool AField::same(const AField& o) const {
    if (tw_ != o.tw_ || finite_ != o.finite_) return false;
    if (finite_) return dK_ == o.dK_ && tw_->eq(std::get<FieldElement>(theta_), std::get<FieldElement>(o.theta_));
    return std::get<RationalFunc>(theta_) == std::get<RationalFunc>(o.theta_);
}

void AField::check(const KElem& a) const {
    if (finite_) {
        if (!std::holds_alternative<FieldElement>(a) || std::get<FieldElement>(a).level != dK_)
            throw InputError("element does not belong to this A-field");
    } else {
        if (!std::holds_alternative<RationalFunc>(a) || std::get<RationalFunc>(a).level() != 1)
            throw InputError("element does not belong to this A-field");
    }
}

KElem AField::zero() const {
    if (finite_) return tw_->zero(dK_);
    return RationalFunc::zero(tw_);
}

KElem AField::one() const {
    if (finite_) return tw_->one(dK_);
    return RationalFunc::one(tw_);
}

KElem AField::from_int(int64_t k) const {
    if (finite_) return tw_->from_int(k, dK_);
    return RationalFunc(Poly::constant(tw_, tw_->from_int(k, 1)));
}

KElem AField::from_base(const FieldElement& c) const {
    if (c.level != 1) throw InputError("from_base expects a level-1 element");
    if (finite_) return tw_->embed(c, dK_);
    return RationalFunc::constant(tw_, c);
}

KElem AField::gamma(const Poly& a) const {
    if (a.level != 1) throw InputError("gamma expects level-1 coefficients");
    if (finite_) return a.eval(std::get<FieldElement>(theta_));
    const RationalFunc& th = std::get<RationalFunc>(theta_);
    RationalFunc r = RationalFunc::zero(tw_);
    for (size_t i = a.c.size(); i-- > 0;)
        r = r * th + RationalFunc::constant(tw_, a.c[i]);
    return r;
}

KElem AField::add(const KElem& a, const KElem& b) const {
    check(a);
    check(b);
    if (finite_) return tw_->add(std::get<FieldElement>(a), std::get<FieldElement>(b));
    return std::get<RationalFunc>(a) + std::get<RationalFunc>(b);
}

KElem AField::sub(const KElem& a, const KElem& b) const {
    check(a);
    check(b);
    if (finite_) return tw_->sub(std::get<FieldElement>(a), std::get<FieldElement>(b));
    return std::get<RationalFunc>(a) - std::get<RationalFunc>(b);
}

KElem AField::mul(const KElem& a, const KElem& b) const {
    check(a);
    check(b);
    if (finite_) return tw_->mul(std::get<FieldElement>(a), std::get<FieldElement>(b));
    return std::get<RationalFunc>(a) * std::get<RationalFunc>(b);
}

KElem AField::neg(const KElem& a) const {
    check(a);
    if (finite_) return tw_->neg(std::get<FieldElement>(a));
    return -std::get<RationalFunc>(a);
}

KElem AField::inv(const KElem& a) const {
    check(a);
    if (finite_) return tw_->inv(std::get<FieldElement>(a));
    return std::get<RationalFunc>(a).inv();
}

KElem AField::pow(const KElem& a, uint64_t n) const {
    check(a);
    if (finite_) return tw_->pow(std::get<FieldElement>(a), n);
    if (n > uint64_t(INT64_MAX)) throw InputError("exponent too large");
    return std::get<RationalFunc>(a).pow(int64_t(n));
}

bool AField::is_zero(const KElem& a) const {
    check(a);
    if (finite_) return tw_->is_zero(std::get<FieldElement>(a));
    return std::get<RationalFunc>(a).is_zero();
}

bool AField::eq(const KElem& a, const KElem& b) const {
    check(a);
    check(b);
    if (finite_) return tw_->eq(std::get<FieldElement>(a), std::get<FieldElement>(b));
    return std::get<RationalFunc>(a) == std::get<RationalFunc>(b);
}

KElem AField::frob_q(const KElem& a, uint32_t times) const {
    check(a);
    if (finite_) return tw_->frob_q(std::get<FieldElement>(a), times);
    KElem r = a;
    for (uint32_t i = 0; i < times; ++i) r = pow(r, tw_->q());
    return r;
}

KElem AField::frob_p(const KElem& a, uint32_t times) const {
    check(a);
    if (finite_) return tw_->frob_p(std::get<FieldElement>(a), times);
    KElem r = a;
    for (uint32_t i = 0; i < times; ++i) r = pow(r, tw_->p());
    return r;
}

const FieldElement& AField::as_fe(const KElem& a) const {
    if (!std::holds_alternative<FieldElement>(a))
        throw InputError("expected a finite A-field element");
    return std::get<FieldElement>(a);
}

const RationalFunc& AField::as_rat(const KElem& a) const {
    if (!std::holds_alternative<RationalFunc>(a))
        throw InputError("expected a generic A-field element");
    return std::get<RationalFunc>(a);
}

std::string AField::to_string(const KElem& a) const {
    if (std::holds_alternative<FieldElement>(a))
        return tw_->to_string(std::get<FieldElement>(a));
    return std::get<RationalFunc>(a).to_string(var_);
}

}  // namespace amot
