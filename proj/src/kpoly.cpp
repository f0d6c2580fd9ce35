#include "amot/kpoly.hpp"

#include "amot/detail/polyops.hpp"

namespace amot {

namespace {
void check_kp(const KPoly& a, const KPoly& b) {
    if (!a.K || !b.K || !a.K->same(*b.K))
        throw InputError("polynomial operands over different A-fields");
}
}  // namespace

KPoly::KPoly(const AField* k, std::vector<KElem> cs) : K(k), c(std::move(cs)) {
    KFd f{K};
    detail::ptrim(f, c);
}

KPoly KPoly::from_base(const AField* k, const Poly& a) {
    if (a.level != 1) throw InputError("from_base expects level-1 coefficients");
    std::vector<KElem> v;
    v.reserve(a.c.size());
    for (const auto& x : a.c) v.push_back(k->from_base(x));
    return KPoly(k, std::move(v));
}

bool KPoly::is_one() const { return c.size() == 1 && K->eq(c[0], K->one()); }

KElem KPoly::lead() const {
    if (c.empty()) throw InputError("zero polynomial has no leading coefficient");
    return c.back();
}

KPoly KPoly::operator+(const KPoly& o) const {
    check_kp(*this, o);
    KFd f{K};
    KPoly r(K);
    r.c = detail::padd(f, c, o.c);
    return r;
}

KPoly KPoly::operator-(const KPoly& o) const {
    check_kp(*this, o);
    KFd f{K};
    KPoly r(K);
    r.c = detail::psub(f, c, o.c);
    return r;
}

KPoly KPoly::operator*(const KPoly& o) const {
    check_kp(*this, o);
    KFd f{K};
    KPoly r(K);
    r.c = detail::pmul(f, c, o.c);
    return r;
}

KPoly KPoly::operator-() const {
    KFd f{K};
    KPoly r(K);
    r.c = detail::pneg(f, c);
    return r;
}

bool KPoly::operator==(const KPoly& o) const {
    if (c.size() != o.c.size()) return false;
    for (size_t i = 0; i < c.size(); ++i)
        if (!K->eq(c[i], o.c[i])) return false;
    return true;
}

KPoly KPoly::scaled(const KElem& s) const {
    KFd f{K};
    KPoly r(K);
    r.c = detail::pscale(f, c, s);
    return r;
}

KPoly KPoly::monic() const {
    if (is_zero()) return *this;
    KFd f{K};
    KPoly r(K);
    r.c = detail::pmonic(f, c);
    return r;
}

void KPoly::divrem(const KPoly& d, KPoly& q, KPoly& r) const {
    check_kp(*this, d);
    KFd f{K};
    detail::PVec<KFd> qq, rr;
    detail::pdivrem(f, c, d.c, qq, rr);
    q = KPoly(K);
    q.c = std::move(qq);
    r = KPoly(K);
    r.c = std::move(rr);
}

KPoly KPoly::operator/(const KPoly& d) const {
    KPoly q, r;
    divrem(d, q, r);
    return q;
}

KPoly KPoly::operator%(const KPoly& d) const {
    KPoly q, r;
    divrem(d, q, r);
    return r;
}

KPoly KPoly::gcd(const KPoly& o) const {
    check_kp(*this, o);
    KFd f{K};
    KPoly r(K);
    r.c = detail::pgcd(f, c, o.c);
    return r;
}

KPoly KPoly::pow(uint64_t n) const {
    KPoly r = one(K), b = *this;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

KElem KPoly::eval(const KElem& x) const {
    KElem r = K->zero();
    for (size_t i = c.size(); i-- > 0;) r = K->add(K->mul(r, x), c[i]);
    return r;
}

KPoly KPoly::sigma() const {
    KPoly r(K);
    r.c.reserve(c.size());
    for (const auto& a : c) r.c.push_back(K->frob_q(a));
    return r;
}

std::string KPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (size_t i = c.size(); i-- > 0;) {
        if (K->is_zero(c[i])) continue;
        std::string cs = K->to_string(c[i]);
        bool atom = cs.find('+') == std::string::npos && cs.find('*') == std::string::npos &&
                    cs.find('/') == std::string::npos && cs.find('^') == std::string::npos;
        std::string term;
        if (i == 0) {
            term = atom ? cs : "(" + cs + ")";
        } else {
            std::string v = var;
            if (i > 1) v += "^" + std::to_string(i);
            if (cs == "1") term = v;
            else term = (atom ? cs : "(" + cs + ")") + "*" + v;
        }
        if (!first) out += "+";
        out += term;
        first = false;
    }
    return out;
}

KRat::KRat(KPoly n, KPoly d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw InputError("rational function with zero denominator");
    check_kp(num, den);
    reduce();
}

void KRat::reduce() {
    const AField* K = num.K;
    if (num.is_zero()) {
        den = KPoly::one(K);
        return;
    }
    KPoly g = num.gcd(den);
    if (g.deg() > 0) {
        num = num / g;
        den = den / g;
    }
    KElem lc = den.lead();
    if (!K->eq(lc, K->one())) {
        KElem li = K->inv(lc);
        num = num.scaled(li);
        den = den.scaled(li);
    }
}

KRat KRat::operator+(const KRat& o) const {
    return KRat(num * o.den + o.num * den, den * o.den);
}

KRat KRat::operator-(const KRat& o) const {
    return KRat(num * o.den - o.num * den, den * o.den);
}

KRat KRat::operator*(const KRat& o) const { return KRat(num * o.num, den * o.den); }

KRat KRat::operator/(const KRat& o) const {
    if (o.is_zero()) throw InputError("division by the zero rational function");
    return KRat(num * o.den, den * o.num);
}

KRat KRat::operator-() const {
    KRat r = *this;
    r.num = -r.num;
    return r;
}

KRat KRat::inv() const {
    if (is_zero()) throw InputError("inverse of the zero rational function");
    return KRat(den, num);
}

namespace {
int kval_at(const KPoly& f, const KPoly& prime) {
    int v = 0;
    KPoly cur = f;
    for (;;) {
        KPoly q, r;
        cur.divrem(prime, q, r);
        if (!r.is_zero()) return v;
        ++v;
        cur = q;
    }
}
}  // namespace

int KRat::ord_at(const KPoly& prime) const {
    if (is_zero()) throw InputError("valuation of the zero function");
    return kval_at(num, prime) - kval_at(den, prime);
}

KRat KRat::sigma() const {
    KRat r;
    r.num = num.sigma();
    r.den = den.sigma();
    return r;
}

std::string KRat::to_string(const std::string& var) const {
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
