#include "amot/poly.hpp"

#include <algorithm>

#include "amot/detail/polyops.hpp"
#include "amot/linalg.hpp"

namespace amot {

namespace {

struct SplitMix {
    uint64_t s;
    uint64_t next() {
        s += 0x9e3779b97f4a7c15ull;
        uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
};

LevelField fld(const Poly& f) { return LevelField{f.tw, f.level}; }

Poly wrap(const FieldTower* tw, uint32_t lv, std::vector<FieldElement> v) {
    Poly p(tw, lv);
    p.c = std::move(v);
    return p;
}

void check_compat(const Poly& a, const Poly& b) {
    if (a.tw != b.tw || a.level != b.level)
        throw InputError("polynomial operands live over different fields");
}

// Field size q^level, guarded.
uint64_t field_size(const FieldTower* tw, uint32_t level) {
    uint64_t s = 1;
    for (uint32_t i = 0; i < level; ++i) {
        if (s > (1ull << 50)) throw PrecisionError("coefficient field too large for factorization");
        s *= tw->q();
    }
    return s;
}

}  // namespace

Poly::Poly(const FieldTower* t, uint32_t lv, std::vector<FieldElement> cs) : tw(t), level(lv), c(std::move(cs)) {
    for (auto& x : c)
        if (x.level != lv) throw InputError("coefficient level mismatch");
    auto f = LevelField{tw, level};
    detail::ptrim(f, c);
}

Poly Poly::one(const FieldTower* t, uint32_t lv) {
    return wrap(t, lv, {t->one(lv)});
}

Poly Poly::x(const FieldTower* t, uint32_t lv) {
    return wrap(t, lv, {t->zero(lv), t->one(lv)});
}

Poly Poly::constant(const FieldTower* t, FieldElement v) {
    return Poly(t, v.level, {std::move(v)});
}

Poly Poly::from_ints(const FieldTower* t, const std::vector<int64_t>& coeffs, uint32_t lv) {
    std::vector<FieldElement> v;
    v.reserve(coeffs.size());
    for (auto k : coeffs) v.push_back(t->from_int(k, lv));
    return Poly(t, lv, std::move(v));
}

bool Poly::is_one() const { return c.size() == 1 && tw->eq(c[0], tw->one(level)); }

bool Poly::is_monic() const { return !c.empty() && tw->eq(c.back(), tw->one(level)); }

FieldElement Poly::lead() const {
    if (c.empty()) throw InputError("zero polynomial has no leading coefficient");
    return c.back();
}

FieldElement Poly::coeff(size_t i) const {
    return i < c.size() ? c[i] : tw->zero(level);
}

Poly Poly::operator+(const Poly& o) const {
    check_compat(*this, o);
    return wrap(tw, level, detail::padd(fld(*this), c, o.c));
}

Poly Poly::operator-(const Poly& o) const {
    check_compat(*this, o);
    return wrap(tw, level, detail::psub(fld(*this), c, o.c));
}

Poly Poly::operator*(const Poly& o) const {
    check_compat(*this, o);
    return wrap(tw, level, detail::pmul(fld(*this), c, o.c));
}

Poly Poly::operator-() const { return wrap(tw, level, detail::pneg(fld(*this), c)); }

bool Poly::operator==(const Poly& o) const {
    if (tw != o.tw || level != o.level || c.size() != o.c.size()) return false;
    for (size_t i = 0; i < c.size(); ++i)
        if (!tw->eq(c[i], o.c[i])) return false;
    return true;
}

Poly Poly::scaled(const FieldElement& s) const {
    return wrap(tw, level, detail::pscale(fld(*this), c, s));
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return wrap(tw, level, detail::pmonic(fld(*this), c));
}

Poly Poly::shifted(uint32_t k) const {
    if (is_zero()) return *this;
    std::vector<FieldElement> v(c.size() + k, tw->zero(level));
    for (size_t i = 0; i < c.size(); ++i) v[i + k] = c[i];
    return wrap(tw, level, std::move(v));
}

void Poly::divrem(const Poly& d, Poly& q, Poly& r) const {
    check_compat(*this, d);
    detail::PVec<LevelField> qq, rr;
    detail::pdivrem(fld(*this), c, d.c, qq, rr);
    q = wrap(tw, level, std::move(qq));
    r = wrap(tw, level, std::move(rr));
}

Poly Poly::operator/(const Poly& d) const {
    Poly q, r;
    divrem(d, q, r);
    return q;
}

Poly Poly::operator%(const Poly& d) const {
    Poly q, r;
    divrem(d, q, r);
    return r;
}

Poly Poly::gcd(const Poly& o) const {
    check_compat(*this, o);
    return wrap(tw, level, detail::pgcd(fld(*this), c, o.c));
}

Poly Poly::pow(uint64_t n) const {
    Poly r = one(tw, level), b = *this;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

Poly Poly::derivative() const {
    return wrap(tw, level, detail::pderiv(fld(*this), c, tw->p()));
}

FieldElement Poly::eval(const FieldElement& x) const {
    if (x.level % level != 0) throw InputError("evaluation point level not a multiple of coefficient level");
    auto r = tw->zero(x.level);
    for (size_t i = c.size(); i-- > 0;) r = tw->add(tw->mul(r, x), tw->embed(c[i], x.level));
    return r;
}

Poly Poly::lifted(uint32_t to_level) const {
    std::vector<FieldElement> v;
    v.reserve(c.size());
    for (const auto& a : c) v.push_back(tw->embed(a, to_level));
    return Poly(tw, to_level, std::move(v));
}

Poly Poly::frob_q() const {
    std::vector<FieldElement> v;
    v.reserve(c.size());
    for (const auto& a : c) v.push_back(tw->frob_q(a));
    return Poly(tw, level, std::move(v));
}

std::string Poly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (size_t i = c.size(); i-- > 0;) {
        if (tw->is_zero(c[i])) continue;
        std::string cs = tw->to_string(c[i]);
        bool atom = cs.find('+') == std::string::npos && cs.find('*') == std::string::npos &&
                    cs.find('^') == std::string::npos;
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

bool poly_less(const Poly& a, const Poly& b) {
    if (a.deg() != b.deg()) return a.deg() < b.deg();
    for (size_t i = a.c.size(); i-- > 0;) {
        if (a.tw->eq(a.c[i], b.c[i])) continue;
        return a.tw->less(a.c[i], b.c[i]);
    }
    return false;
}

PrimeOfA make_prime(const Poly& z) {
    if (z.level != 1) throw InputError("a prime of A must have level-1 coefficients");
    if (!z.is_monic()) throw InputError("a prime of A must be monic");
    if (!is_irreducible(z)) throw InputError("polynomial is not irreducible: " + z.to_string());
    return PrimeOfA{z};
}

bool is_irreducible(const Poly& f) {
    if (f.deg() < 1) return false;
    return detail::pirreducible(fld(f), f.c, field_size(f.tw, f.level));
}

namespace {

Poly pth_root_poly(const Poly& f) {
    uint32_t p = f.tw->p();
    std::vector<FieldElement> v;
    for (size_t i = 0; i < f.c.size(); i += p) v.push_back(f.tw->pth_root(f.c[i]));
    return Poly(f.tw, f.level, std::move(v));
}

// f = prod g_i^i with g_i squarefree and pairwise coprime.
void squarefree_decompose(const Poly& f, int mult, std::vector<std::pair<Poly, int>>& out) {
    uint32_t p = f.tw->p();
    Poly d = f.derivative();
    if (d.is_zero()) {
        squarefree_decompose(pth_root_poly(f), mult * int(p), out);
        return;
    }
    Poly c = f.gcd(d);
    Poly w = f / c;
    int i = 1;
    while (!w.is_one()) {
        Poly y = w.gcd(c);
        Poly z = w / y;
        if (!z.is_one()) out.emplace_back(z.monic(), mult * i);
        w = y;
        c = c / y;
        ++i;
    }
    if (!c.is_one()) squarefree_decompose(pth_root_poly(c), mult * int(p), out);
}

// Equal-degree split of a squarefree product of degree-d irreducibles.
void edf(const Poly& h, int d, SplitMix& rng, uint64_t Q, std::vector<Poly>& out) {
    if (h.deg() == d) {
        out.push_back(h.monic());
        return;
    }
    auto f = fld(h);
    const FieldTower* tw = h.tw;
    std::vector<bool> bits;
    if (tw->p() != 2) bits = detail::half_power_bits(Q, uint32_t(d));
    for (int tries = 0;; ++tries) {
        if (tries > 512) throw InternalError("equal-degree splitting stalled");
        std::vector<FieldElement> rc;
        for (int i = 0; i < h.deg(); ++i) {
            auto x = tw->zero(h.level);
            for (auto& cc : x.c) cc = uint32_t(rng.next() % tw->p());
            rc.push_back(x);
        }
        detail::ptrim(f, rc);
        if (detail::pdeg<LevelField>(rc) < 1) continue;
        detail::PVec<LevelField> s;
        if (tw->p() != 2) {
            s = detail::ppowmod_bits(f, rc, bits, h.c);
            s = detail::psub(f, s, detail::PVec<LevelField>{tw->one(h.level)});
        } else {
            auto t = detail::pmod(f, rc, h.c);
            s = t;
            uint32_t dim = tw->e() * h.level * uint32_t(d);
            for (uint32_t i = 1; i < dim; ++i) {
                t = detail::pmulmod(f, t, t, h.c);
                s = detail::padd(f, s, t);
            }
        }
        auto g = detail::pgcd(f, s, h.c);
        int dg = detail::pdeg<LevelField>(g);
        if (dg > 0 && dg < h.deg()) {
            Poly g1 = wrap(h.tw, h.level, g);
            edf(g1, d, rng, Q, out);
            edf(h / g1, d, rng, Q, out);
            return;
        }
    }
}

}  // namespace

std::vector<std::pair<Poly, int>> factor(const Poly& f, uint64_t seed) {
    if (f.is_zero()) throw InputError("cannot factor the zero polynomial");
    std::vector<std::pair<Poly, int>> result;
    if (f.deg() == 0) return result;
    uint64_t Q = field_size(f.tw, f.level);
    SplitMix rng{seed ^ 0xFAC70Cull};

    std::vector<std::pair<Poly, int>> sqf;
    squarefree_decompose(f.monic(), 1, sqf);
    for (auto& [g, mult] : sqf) {
        // distinct-degree on g, then equal-degree per block
        auto fl = fld(g);
        auto h = detail::pmod(fl, detail::PVec<LevelField>{g.tw->zero(g.level), g.tw->one(g.level)}, g.c);
        Poly rem = g;
        for (int d = 1; rem.deg() >= 2 * d; ++d) {
            h = detail::ppowmod(fl, h, Q, rem.c);
            detail::PVec<LevelField> xv{g.tw->zero(g.level), g.tw->one(g.level)};
            auto gg = detail::pgcd(fl, detail::psub(fl, h, detail::pmod(fl, xv, rem.c)), rem.c);
            if (detail::pdeg<LevelField>(gg) > 0) {
                Poly block = wrap(g.tw, g.level, gg);
                std::vector<Poly> irr;
                edf(block, d, rng, Q, irr);
                for (auto& q : irr) result.emplace_back(q, mult);
                rem = rem / block;
                h = detail::pmod(fl, h, rem.c);
            }
        }
        if (rem.deg() > 0) result.emplace_back(rem.monic(), mult);
    }
    std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) {
        if (!(a.first == b.first)) return poly_less(a.first, b.first);
        return a.second < b.second;
    });
    return result;
}

std::vector<FieldElement> roots_in_field(const Poly& f, uint64_t seed) {
    if (f.is_zero()) throw InputError("zero polynomial has every root");
    auto fl = fld(f);
    uint64_t Q = field_size(f.tw, f.level);
    // gcd(x^Q - x, f) collects the roots in the coefficient field
    detail::PVec<LevelField> xv{f.tw->zero(f.level), f.tw->one(f.level)};
    auto xq = detail::ppowmod(fl, xv, Q, f.c);
    auto lin = detail::pgcd(fl, detail::psub(fl, xq, detail::pmod(fl, xv, f.c)), f.c);
    std::vector<FieldElement> roots;
    if (detail::pdeg<LevelField>(lin) <= 0) return roots;
    Poly linp = wrap(f.tw, f.level, lin);
    SplitMix rng{seed ^ 0x500Dull};
    std::vector<Poly> irr;
    edf(linp, 1, rng, Q, irr);
    for (auto& l : irr) roots.push_back(f.tw->neg(l.coeff(0)));
    std::sort(roots.begin(), roots.end(),
              [&](const FieldElement& a, const FieldElement& b) { return f.tw->less(a, b); });
    return roots;
}

std::vector<FieldElement> roots_in_extension(const Poly& f, uint32_t m, uint64_t seed) {
    if (f.level != 1) throw InputError("roots_in_extension expects level-1 coefficients");
    return roots_in_field(f.lifted(m), seed);
}

Poly minimal_polynomial(const FieldTower* tw, const FieldElement& a) {
    uint32_t m = a.level;
    LevelField f1{tw, 1};
    std::vector<std::vector<FieldElement>> pows{fq_coords(*tw, tw->one(m))};
    FieldElement cur = tw->one(m);
    for (uint32_t k = 1; k <= m; ++k) {
        cur = tw->mul(cur, a);
        pows.push_back(fq_coords(*tw, cur));
        Mat<FieldElement> M(m, k + 1, tw->zero(1));
        for (uint32_t i = 0; i < m; ++i)
            for (uint32_t j = 0; j <= k; ++j) M.at(i, j) = pows[j][i];
        auto ns = nullspace(f1, M);
        if (ns.empty()) continue;
        // first dependence: the relation involves x^k with nonzero coefficient
        for (auto& v : ns) {
            if (tw->is_zero(v[k])) continue;
            std::vector<FieldElement> cs(v.begin(), v.end());
            Poly mp(tw, 1, std::move(cs));
            return mp.monic();
        }
    }
    throw InternalError("minimal polynomial search failed");
}

FieldElement canonical_root(const Poly& irreducible) {
    if (irreducible.level != 1 || irreducible.deg() < 1)
        throw InputError("canonical root needs a level-1 polynomial of positive degree");
    auto rs = roots_in_extension(irreducible, uint32_t(irreducible.deg()), 0);
    if (rs.empty()) throw InputError("polynomial has no root in its degree extension; not irreducible");
    return rs.front();
}

}  // namespace amot
