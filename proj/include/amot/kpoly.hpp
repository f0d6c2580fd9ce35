#pragma once

#include "amot/afield.hpp"

namespace amot {

// Field handle over A-field elements, for the generic polynomial kernels.
struct KFd {
    const AField* K;
    using Elem = KElem;
    Elem zero() const { return K->zero(); }
    Elem one() const { return K->one(); }
    Elem add(const Elem& a, const Elem& b) const { return K->add(a, b); }
    Elem sub(const Elem& a, const Elem& b) const { return K->sub(a, b); }
    Elem mul(const Elem& a, const Elem& b) const { return K->mul(a, b); }
    Elem neg(const Elem& a) const { return K->neg(a); }
    Elem inv(const Elem& a) const { return K->inv(a); }
    bool is_zero(const Elem& a) const { return K->is_zero(a); }
    bool eq(const Elem& a, const Elem& b) const { return K->eq(a, b); }
};

// Polynomial in t with coefficients in an A-field K.
class KPoly {
public:
    const AField* K = nullptr;
    std::vector<KElem> c;  // c[i] multiplies t^i, trimmed

    KPoly() = default;
    explicit KPoly(const AField* k) : K(k) {}
    KPoly(const AField* k, std::vector<KElem> cs);

    static KPoly zero(const AField* k) { return KPoly(k); }
    static KPoly one(const AField* k) { return KPoly(k, {k->one()}); }
    static KPoly t(const AField* k) { return KPoly(k, {k->zero(), k->one()}); }
    static KPoly constant(const AField* k, KElem v) { return KPoly(k, {std::move(v)}); }
    // Lift a level-1 polynomial over F_q into K[t].
    static KPoly from_base(const AField* k, const Poly& a);

    int deg() const { return int(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    bool is_one() const;
    KElem coeff(size_t i) const { return i < c.size() ? c[i] : K->zero(); }
    KElem lead() const;

    KPoly operator+(const KPoly& o) const;
    KPoly operator-(const KPoly& o) const;
    KPoly operator*(const KPoly& o) const;
    KPoly operator-() const;
    bool operator==(const KPoly& o) const;

    KPoly scaled(const KElem& s) const;
    KPoly monic() const;
    void divrem(const KPoly& d, KPoly& q, KPoly& r) const;
    KPoly operator/(const KPoly& d) const;
    KPoly operator%(const KPoly& d) const;
    KPoly gcd(const KPoly& o) const;
    KPoly pow(uint64_t n) const;
    KElem eval(const KElem& x) const;

    // Applies the q-power endomorphism of K to every coefficient; fixes t.
    KPoly sigma() const;

    std::string to_string(const std::string& var = "t") const;
};

// Rational function in t over K, lowest terms, monic denominator.
class KRat {
public:
    KPoly num, den;

    KRat() = default;
    explicit KRat(KPoly n) : num(std::move(n)), den(KPoly::one(num.K)) {}
    KRat(KPoly n, KPoly d);

    static KRat zero(const AField* k) { return KRat(KPoly::zero(k)); }
    static KRat one(const AField* k) { return KRat(KPoly::one(k)); }
    static KRat t(const AField* k) { return KRat(KPoly::t(k)); }
    static KRat constant(const AField* k, KElem v) {
        return KRat(KPoly::constant(k, std::move(v)));
    }

    const AField* field() const { return num.K; }
    bool is_zero() const { return num.is_zero(); }
    bool is_one() const { return num.is_one() && den.is_one(); }
    bool is_polynomial() const { return den.is_one(); }

    KRat operator+(const KRat& o) const;
    KRat operator-(const KRat& o) const;
    KRat operator*(const KRat& o) const;
    KRat operator/(const KRat& o) const;
    KRat operator-() const;
    KRat inv() const;
    bool operator==(const KRat& o) const { return num == o.num && den == o.den; }

    // Order of vanishing at a monic irreducible of K[t].
    int ord_at(const KPoly& prime) const;
    KRat sigma() const;

    std::string to_string(const std::string& var = "t") const;

private:
    void reduce();
};

}  // namespace amot
