#pragma once

// Dense univariate polynomial kernels, generic over a field handle F with
// { Elem, zero(), one(), add, sub, mul, neg, inv, is_zero, eq }.
// Polynomials are trimmed coefficient vectors, low degree first; the zero
// polynomial is the empty vector.

#include <cstdint>
#include <vector>

#include "amot/common.hpp"

namespace amot::detail {

template <class F>
using PVec = std::vector<typename F::Elem>;

template <class F>
void ptrim(const F& f, PVec<F>& a) {
    while (!a.empty() && f.is_zero(a.back())) a.pop_back();
}

template <class F>
int pdeg(const PVec<F>& a) {
    return static_cast<int>(a.size()) - 1;
}

template <class F>
PVec<F> padd(const F& f, const PVec<F>& a, const PVec<F>& b) {
    PVec<F> r(std::max(a.size(), b.size()), f.zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = f.add(r[i], b[i]);
    ptrim(f, r);
    return r;
}

template <class F>
PVec<F> psub(const F& f, const PVec<F>& a, const PVec<F>& b) {
    PVec<F> r(std::max(a.size(), b.size()), f.zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = f.sub(r[i], b[i]);
    ptrim(f, r);
    return r;
}

template <class F>
PVec<F> pneg(const F& f, const PVec<F>& a) {
    PVec<F> r = a;
    for (auto& c : r) c = f.neg(c);
    return r;
}

template <class F>
PVec<F> pmul(const F& f, const PVec<F>& a, const PVec<F>& b) {
    if (a.empty() || b.empty()) return {};
    PVec<F> r(a.size() + b.size() - 1, f.zero());
    for (size_t i = 0; i < a.size(); ++i) {
        if (f.is_zero(a[i])) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
    }
    ptrim(f, r);
    return r;
}

template <class F>
PVec<F> pscale(const F& f, const PVec<F>& a, const typename F::Elem& s) {
    if (f.is_zero(s)) return {};
    PVec<F> r = a;
    for (auto& c : r) c = f.mul(c, s);
    return r;
}

// Division with remainder; b must be nonzero.
template <class F>
void pdivrem(const F& f, PVec<F> a, const PVec<F>& b, PVec<F>& q, PVec<F>& r) {
    if (b.empty()) throw InternalError("polyops: division by zero polynomial");
    q.clear();
    if (a.size() < b.size()) {
        r = std::move(a);
        return;
    }
    auto binv = f.inv(b.back());
    q.assign(a.size() - b.size() + 1, f.zero());
    for (size_t k = a.size(); k-- >= b.size();) {
        if (f.is_zero(a[k])) continue;
        auto c = f.mul(a[k], binv);
        q[k - b.size() + 1] = c;
        for (size_t j = 0; j < b.size(); ++j)
            a[k - b.size() + 1 + j] = f.sub(a[k - b.size() + 1 + j], f.mul(c, b[j]));
        if (k + 1 == b.size()) break;
    }
    ptrim(f, q);
    r = std::move(a);
    ptrim(f, r);
}

template <class F>
PVec<F> pmod(const F& f, const PVec<F>& a, const PVec<F>& b) {
    PVec<F> q, r;
    pdivrem(f, a, b, q, r);
    return r;
}

template <class F>
PVec<F> pmonic(const F& f, PVec<F> a) {
    if (a.empty()) return a;
    auto s = f.inv(a.back());
    for (auto& c : a) c = f.mul(c, s);
    return a;
}

// Monic gcd.
template <class F>
PVec<F> pgcd(const F& f, PVec<F> a, PVec<F> b) {
    while (!b.empty()) {
        auto r = pmod(f, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return pmonic(f, std::move(a));
}

template <class F>
PVec<F> pmulmod(const F& f, const PVec<F>& a, const PVec<F>& b, const PVec<F>& m) {
    return pmod(f, pmul(f, a, b), m);
}

template <class F>
PVec<F> ppowmod(const F& f, PVec<F> base, uint64_t n, const PVec<F>& m) {
    PVec<F> r{f.one()};
    r = pmod(f, r, m);
    base = pmod(f, base, m);
    while (n) {
        if (n & 1) r = pmulmod(f, r, base, m);
        n >>= 1;
        if (n) base = pmulmod(f, base, base, m);
    }
    return r;
}

// Exponent supplied as big-endian bits (for exponents beyond 64 bits).
template <class F>
PVec<F> ppowmod_bits(const F& f, const PVec<F>& base, const std::vector<bool>& bits,
                     const PVec<F>& m) {
    PVec<F> r{f.one()};
    r = pmod(f, r, m);
    for (bool bit : bits) {
        r = pmulmod(f, r, r, m);
        if (bit) r = pmulmod(f, r, base, m);
    }
    return r;
}

template <class F>
typename F::Elem peval(const F& f, const PVec<F>& a, const typename F::Elem& x) {
    auto r = f.zero();
    for (size_t i = a.size(); i-- > 0;) r = f.add(f.mul(r, x), a[i]);
    return r;
}

template <class F>
PVec<F> pderiv(const F& f, const PVec<F>& a, uint32_t char_p) {
    PVec<F> r;
    for (size_t i = 1; i < a.size(); ++i) {
        auto k = f.zero();
        auto one = f.one();
        for (uint64_t j = 0; j < i % char_p; ++j) k = f.add(k, one);
        r.push_back(f.mul(a[i], k));
    }
    ptrim(f, r);
    return r;
}

// Big-endian bits of (q^b - 1) / 2 for odd q (exceeds 64 bits at large b).
std::vector<bool> half_power_bits(uint64_t q, uint32_t b);

// Irreducibility over F of a monic polynomial, field of size q_elems
// (Rabin test: x^(q^n) = x mod f and gcd(x^(q^(n/d)) - x, f) = 1 for prime d|n).
template <class F>
bool pirreducible(const F& f, const PVec<F>& poly, uint64_t q_elems) {
    int n = pdeg<F>(poly);
    if (n <= 0) return false;
    if (n == 1) return true;
    std::vector<int> proper;  // n/d for prime divisors d of n
    int nn = n;
    for (int d = 2; d * d <= nn; ++d)
        if (nn % d == 0) {
            proper.push_back(n / d);
            while (nn % d == 0) nn /= d;
        }
    if (nn > 1) proper.push_back(n / nn);

    PVec<F> x{f.zero(), f.one()};
    x = pmod(f, x, poly);
    PVec<F> h = x;
    for (int i = 1; i <= n; ++i) {
        h = ppowmod(f, h, q_elems, poly);
        bool checkpoint = false;
        for (int e : proper) checkpoint |= (e == i);
        if (checkpoint) {
            auto g = pgcd(f, psub(f, h, x), poly);
            if (pdeg<F>(g) != 0) return false;
        }
    }
    return psub(f, h, x).empty();
}

}  // namespace amot::detail
