#include "amot/ratfunc.hpp"

namespace amot {

RationalFunc::RationalFunc(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw InputError("rational function with zero denominator");
    if (num.tw != den.tw || num.level != den.level)
        throw InputError("rational function parts over different fields");
    reduce();
}

void RationalFunc::reduce() {
    if (num.is_zero()) {
        den = Poly::one(num.tw, num.level);
        return;
    }
    Poly g = num.gcd(den);
    if (g.deg() > 0) {
        num = num / g;
        den = den / g;
    }
    FieldElement lc = den.lead();
    if (!den.tw->eq(lc, den.tw->one(den.level))) {
        FieldElement li = den.tw->inv(lc);
        num = num.scaled(li);
        den = den.scaled(li);
    }
}

RationalFunc RationalFunc::operator+(const RationalFunc& o) const {
    return RationalFunc(num * o.den + o.num * den, den * o.den);
}

RationalFunc RationalFunc::operator-(const RationalFunc& o) const {
    return RationalFunc(num * o.den - o.num * den, den * o.den);
}

RationalFunc RationalFunc::operator*(const RationalFunc& o) const {
    return RationalFunc(num * o.num, den * o.den);
}

RationalFunc RationalFunc::operator/(const RationalFunc& o) const {
    if (o.is_zero()) throw InputError("division by the zero rational function");
    return RationalFunc(num * o.den, den * o.num);
}

RationalFunc RationalFunc::operator-() const {
    RationalFunc r = *this;
    r.num = -r.num;
    return r;
}

RationalFunc RationalFunc::inv() const {
    if (is_zero()) throw InputError("inverse of the zero rational function");
    return RationalFunc(den, num);
}

RationalFunc RationalFunc::pow(int64_t n) const {
    if (n < 0) return inv().pow(-n);
    RationalFunc r = one(tower(), level()), b = *this;
    uint64_t k = uint64_t(n);
    while (k) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

namespace {
int val_at(const Poly& f, const Poly& prime) {
    int v = 0;
    Poly cur = f;
    for (;;) {
        Poly q, r;
        cur.divrem(prime, q, r);
        if (!r.is_zero()) return v;
        ++v;
        cur = q;
    }
}
}  // namespace

int RationalFunc::ord_at(const Poly& prime) const {
    if (is_zero()) throw InputError("valuation of the zero function");
    Poly pr = prime.level == level() ? prime : prime.lifted(level());
    return val_at(num, pr) - val_at(den, pr);
}

int RationalFunc::ord_infinity() const {
    if (is_zero()) throw InputError("valuation of the zero function");
    return den.deg() - num.deg();
}

RationalFunc RationalFunc::frob_q() const {
    if (is_zero()) return *this;
    return RationalFunc(num.frob_q(), den.frob_q());
}

RationalFunc RationalFunc::lifted(uint32_t to_level) const {
    return RationalFunc(num.lifted(to_level), den.lifted(to_level));
}

std::optional<FieldElement> RationalFunc::eval(const FieldElement& x) const {
    FieldElement d = den.eval(x);
    if (num.tw->is_zero(d)) return std::nullopt;
    return num.tw->mul(num.eval(x), num.tw->inv(d));
}

std::string RationalFunc::to_string(const std::string& var) const {
    if (is_polynomial()) return num.to_string(var);
    std::string n = num.to_string(var), d = den.to_string(var);
    auto wrap = [](const std::string& s) {
        return (s.find('+') != std::string::npos || s.find('*') != std::string::npos)
                   ? "(" + s + ")"
                   : s;
    };
    return wrap(n) + "/" + wrap(d);
}

}  // namespace amot
