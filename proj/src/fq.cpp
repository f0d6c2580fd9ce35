#include "amot/fq.hpp"

#include <algorithm>

#include "amot/detail/polyops.hpp"
#include "amot/linalg.hpp"

namespace amot {
namespace {

bool small_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// F_p as a field handle for polyops.
struct PrimeField {
    uint32_t p;
    using Elem = uint32_t;
    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem add(Elem a, Elem b) const { return (a + b) % p; }
    Elem sub(Elem a, Elem b) const { return (a + p - b) % p; }
    Elem neg(Elem a) const { return a ? p - a : 0; }
    Elem mul(Elem a, Elem b) const { return uint32_t((uint64_t(a) * b) % p); }
    Elem inv(Elem a) const {
        if (!a) throw InputError("division by zero in F_p");
        int64_t t = 0, nt = 1, r = p, nr = a;
        while (nr) {
            int64_t q = r / nr;
            int64_t t2 = t - q * nt, r2 = r - q * nr;
            t = nt;
            nt = t2;
            r = nr;
            nr = r2;
        }
        return Elem(t < 0 ? t + p : t);
    }
    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }
};

// Deterministic splitmix64, used only where the outcome is canonicalized
// afterwards (root sets are closed under conjugation, the minimum is taken).
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

}  // namespace

namespace detail {

std::vector<bool> half_power_bits(uint64_t q, uint32_t b) {
    // (q^b - 1) / 2 as big-endian bits, via base-2^32 schoolbook arithmetic.
    std::vector<uint64_t> d{1};
    for (uint32_t i = 0; i < b; ++i) {
        uint64_t carry = 0;
        for (auto& w : d) {
            unsigned __int128 t = (unsigned __int128)w * q + carry;
            w = uint64_t(t & 0xffffffffull);
            carry = uint64_t(t >> 32);
        }
        while (carry) {
            d.push_back(carry & 0xffffffffull);
            carry >>= 32;
        }
    }
    size_t i = 0;  // subtract 1
    while (i < d.size() && d[i] == 0) d[i++] = 0xffffffffull;
    d[i] -= 1;
    uint64_t borrow = 0;  // halve
    for (size_t j = d.size(); j-- > 0;) {
        uint64_t cur = d[j] | (borrow << 32);
        borrow = cur & 1;
        d[j] = cur >> 1;
    }
    std::vector<bool> bits;
    bool seen = false;
    for (size_t j = d.size(); j-- > 0;)
        for (int k = 31; k >= 0; --k) {
            bool bit = (d[j] >> k) & 1;
            if (bit) seen = true;
            if (seen) bits.push_back(bit);
        }
    if (bits.empty()) bits.push_back(false);
    return bits;
}

}  // namespace detail

using detail::pdeg;
using detail::PVec;

FieldTower::FieldTower(uint32_t p, uint32_t e) : p_(p), e_(e) {
    if (!small_prime(p) || p > 1u << 20) throw InputError("field characteristic must be a small prime");
    if (e == 0 || e > 16) throw InputError("base field extension degree out of range");
    q_ = 1;
    for (uint32_t i = 0; i < e; ++i) {
        if (q_ > (1ull << 40)) throw InputError("base field too large");
        q_ *= p;
    }
    // Lowest monic irreducible of degree e over F_p in encoding order.
    PrimeField fp{p};
    uint64_t count = 1;
    for (uint32_t i = 0; i < e; ++i) count *= p;
    for (uint64_t idx = 0;; ++idx) {
        if (idx == count) throw InternalError("no irreducible found over F_p");
        std::vector<uint32_t> cand(e + 1, 0);
        uint64_t k = idx;
        for (uint32_t i = 0; i < e; ++i) {
            cand[i] = uint32_t(k % p);
            k /= p;
        }
        cand[e] = 1;
        if (detail::pirreducible(fp, cand, p)) {
            defpoly_ = cand;
            break;
        }
    }
}

// ---- base field blocks -------------------------------------------------

FieldTower::Blk FieldTower::bzero() const { return Blk(e_, 0); }

bool FieldTower::bis_zero(const Blk& a) const {
    for (auto v : a)
        if (v) return false;
    return true;
}

FieldTower::Blk FieldTower::badd(const Blk& a, const Blk& b) const {
    Blk r(e_);
    for (uint32_t i = 0; i < e_; ++i) r[i] = (a[i] + b[i]) % p_;
    return r;
}

FieldTower::Blk FieldTower::bsub(const Blk& a, const Blk& b) const {
    Blk r(e_);
    for (uint32_t i = 0; i < e_; ++i) r[i] = (a[i] + p_ - b[i]) % p_;
    return r;
}

FieldTower::Blk FieldTower::bneg(const Blk& a) const {
    Blk r(e_);
    for (uint32_t i = 0; i < e_; ++i) r[i] = a[i] ? p_ - a[i] : 0;
    return r;
}

FieldTower::Blk FieldTower::bmul(const Blk& a, const Blk& b) const {
    std::vector<uint64_t> conv(2 * e_ - 1, 0);
    for (uint32_t i = 0; i < e_; ++i) {
        if (!a[i]) continue;
        for (uint32_t j = 0; j < e_; ++j) conv[i + j] += uint64_t(a[i]) * b[j] % p_;
    }
    // reduce mod defpoly_ (monic)
    for (size_t k = conv.size(); k-- > e_;) {
        uint64_t c = conv[k] % p_;
        if (!c) continue;
        for (uint32_t j = 0; j < e_; ++j)
            conv[k - e_ + j] += uint64_t(p_ - defpoly_[j]) % p_ * c;
        conv[k] = 0;
    }
    Blk r(e_);
    for (uint32_t i = 0; i < e_; ++i) r[i] = uint32_t(conv[i] % p_);
    return r;
}

FieldTower::Blk FieldTower::binv(const Blk& a) const {
    if (bis_zero(a)) throw InputError("division by zero in finite field");
    PrimeField fp{p_};
    // extended Euclid in F_p[x] against defpoly_
    PVec<PrimeField> r0(defpoly_.begin(), defpoly_.end()), r1(a.begin(), a.end());
    detail::ptrim(fp, r1);
    PVec<PrimeField> t0, t1{1};
    while (!r1.empty()) {
        PVec<PrimeField> qq, rr;
        detail::pdivrem(fp, r0, r1, qq, rr);
        auto tn = detail::psub(fp, t0, detail::pmul(fp, qq, t1));
        r0 = std::move(r1);
        r1 = std::move(rr);
        t0 = std::move(t1);
        t1 = std::move(tn);
    }
    if (pdeg<PrimeField>(r0) != 0) throw InternalError("binv: defpoly not irreducible");
    auto s = fp.inv(r0[0]);
    Blk out(e_, 0);
    for (size_t i = 0; i < t0.size(); ++i) out[i] = fp.mul(t0[i], s);
    return out;
}

namespace {

// F_q (the base field of a tower) as a field handle over blocks.
struct BaseField {
    const FieldTower* tw;
    uint32_t p, e;
    using Elem = std::vector<uint32_t>;
    struct Access;  // friend bridge below
    Elem zero() const;
    Elem one() const;
    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem inv(const Elem& a) const;
    bool is_zero(const Elem& a) const;
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
};

}  // namespace

// Bridge exposing the private block helpers to the local BaseField handle.
struct TowerOps {
    static FieldTower::Blk bzero(const FieldTower& t) { return t.bzero(); }
    static bool bis_zero(const FieldTower& t, const FieldTower::Blk& a) { return t.bis_zero(a); }
    static FieldTower::Blk badd(const FieldTower& t, const FieldTower::Blk& a, const FieldTower::Blk& b) { return t.badd(a, b); }
    static FieldTower::Blk bsub(const FieldTower& t, const FieldTower::Blk& a, const FieldTower::Blk& b) { return t.bsub(a, b); }
    static FieldTower::Blk bneg(const FieldTower& t, const FieldTower::Blk& a) { return t.bneg(a); }
    static FieldTower::Blk bmul(const FieldTower& t, const FieldTower::Blk& a, const FieldTower::Blk& b) { return t.bmul(a, b); }
    static FieldTower::Blk binv(const FieldTower& t, const FieldTower::Blk& a) { return t.binv(a); }
};

namespace {

BaseField::Elem BaseField::zero() const { return TowerOps::bzero(*tw); }
BaseField::Elem BaseField::one() const {
    auto r = TowerOps::bzero(*tw);
    r[0] = 1;
    return r;
}
BaseField::Elem BaseField::add(const Elem& a, const Elem& b) const { return TowerOps::badd(*tw, a, b); }
BaseField::Elem BaseField::sub(const Elem& a, const Elem& b) const { return TowerOps::bsub(*tw, a, b); }
BaseField::Elem BaseField::mul(const Elem& a, const Elem& b) const { return TowerOps::bmul(*tw, a, b); }
[[maybe_unused]] BaseField::Elem BaseField::neg(const Elem& a) const { return TowerOps::bneg(*tw, a); }
BaseField::Elem BaseField::inv(const Elem& a) const { return TowerOps::binv(*tw, a); }
bool BaseField::is_zero(const Elem& a) const { return TowerOps::bis_zero(*tw, a); }

}  // namespace

// ---- levels ------------------------------------------------------------

const FieldTower::LevelData& FieldTower::level(uint32_t m) const {
    if (m == 0 || uint64_t(m) * e_ > 4096) throw InputError("extension level out of range");
    std::lock_guard<std::mutex> lk(mu_);
    auto it = levels_.find(m);
    if (it != levels_.end()) return it->second;

    // Lowest monic irreducible T_m of degree m over F_q in encoding order.
    BaseField fq{this, p_, e_};
    LevelData ld;
    std::vector<uint64_t> digits(m, 0);
    for (;;) {
        std::vector<Blk> cand(m + 1, bzero());
        for (uint32_t i = 0; i < m; ++i) {
            uint64_t k = digits[i];
            for (uint32_t j = 0; j < e_; ++j) {
                cand[i][j] = uint32_t(k % p_);
                k /= p_;
            }
        }
        cand[m][0] = 1;
        if (detail::pirreducible(fq, cand, q_)) {
            ld.T = std::move(cand);
            break;
        }
        uint32_t i = 0;  // increment multi-digit counter
        while (i < m && ++digits[i] == q_) digits[i++] = 0;
        if (i == m) throw InternalError("no irreducible found over F_q");
    }
    return levels_.emplace(m, std::move(ld)).first->second;
}

std::vector<std::vector<uint32_t>> FieldTower::level_defpoly(uint32_t m) const {
    return level(m).T;
}

void FieldTower::check(const FieldElement& a) const {
    if (a.c.size() != size_t(a.level) * e_) throw InternalError("malformed field element");
}

FieldElement FieldTower::zero(uint32_t lv) const {
    level(lv);
    return FieldElement{lv, std::vector<uint32_t>(size_t(lv) * e_, 0)};
}

FieldElement FieldTower::one(uint32_t lv) const {
    auto r = zero(lv);
    r.c[0] = 1;
    return r;
}

FieldElement FieldTower::from_int(int64_t v, uint32_t lv) const {
    auto r = zero(lv);
    int64_t m = v % int64_t(p_);
    if (m < 0) m += p_;
    r.c[0] = uint32_t(m);
    return r;
}

FieldElement FieldTower::gen(uint32_t lv) const {
    if (lv == 1) return base_gen(1);
    auto r = zero(lv);
    r.c[e_] = 1;  // y
    return r;
}

FieldElement FieldTower::base_gen(uint32_t lv) const {
    if (e_ == 1) throw InputError("prime base field has no proper generator");
    auto r = zero(lv);
    r.c[1] = 1;  // x inside block 0
    return r;
}

bool FieldTower::is_zero(const FieldElement& a) const {
    check(a);
    for (auto v : a.c)
        if (v) return false;
    return true;
}

bool FieldTower::eq(const FieldElement& a, const FieldElement& b) const {
    check(a);
    check(b);
    if (a.level != b.level) throw InputError("field element level mismatch");
    return a.c == b.c;
}

FieldElement FieldTower::add(const FieldElement& a, const FieldElement& b) const {
    check(a);
    check(b);
    if (a.level != b.level) throw InputError("field element level mismatch");
    FieldElement r{a.level, std::vector<uint32_t>(a.c.size())};
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = (a.c[i] + b.c[i]) % p_;
    return r;
}

FieldElement FieldTower::sub(const FieldElement& a, const FieldElement& b) const {
    check(a);
    check(b);
    if (a.level != b.level) throw InputError("field element level mismatch");
    FieldElement r{a.level, std::vector<uint32_t>(a.c.size())};
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = (a.c[i] + p_ - b.c[i]) % p_;
    return r;
}

FieldElement FieldTower::neg(const FieldElement& a) const {
    check(a);
    FieldElement r{a.level, std::vector<uint32_t>(a.c.size())};
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i] ? p_ - a.c[i] : 0;
    return r;
}

FieldElement FieldTower::mul(const FieldElement& a, const FieldElement& b) const {
    check(a);
    check(b);
    if (a.level != b.level) throw InputError("field element level mismatch");
    uint32_t m = a.level;
    if (m == 1) {
        Blk ra(a.c.begin(), a.c.end()), rb(b.c.begin(), b.c.end());
        auto rr = bmul(ra, rb);
        return FieldElement{1, std::vector<uint32_t>(rr.begin(), rr.end())};
    }
    const auto& T = level(m).T;
    std::vector<Blk> conv(2 * m - 1, bzero());
    for (uint32_t i = 0; i < m; ++i) {
        Blk ai(a.c.begin() + i * e_, a.c.begin() + (i + 1) * e_);
        if (bis_zero(ai)) continue;
        for (uint32_t j = 0; j < m; ++j) {
            Blk bj(b.c.begin() + j * e_, b.c.begin() + (j + 1) * e_);
            conv[i + j] = badd(conv[i + j], bmul(ai, bj));
        }
    }
    for (size_t k = conv.size(); k-- > m;) {
        if (bis_zero(conv[k])) continue;
        for (uint32_t j = 0; j < m; ++j)
            conv[k - m + j] = bsub(conv[k - m + j], bmul(conv[k], T[j]));
        conv[k] = bzero();
    }
    FieldElement r = zero(m);
    for (uint32_t i = 0; i < m; ++i)
        for (uint32_t j = 0; j < e_; ++j) r.c[i * e_ + j] = conv[i][j];
    return r;
}

FieldElement FieldTower::inv(const FieldElement& a) const {
    check(a);
    if (is_zero(a)) throw InputError("division by zero in finite field");
    uint32_t m = a.level;
    if (m == 1) {
        Blk ra(a.c.begin(), a.c.end());
        auto rr = binv(ra);
        return FieldElement{1, std::vector<uint32_t>(rr.begin(), rr.end())};
    }
    BaseField fq{this, p_, e_};
    const auto& T = level(m).T;
    PVec<BaseField> r0(T.begin(), T.end());
    PVec<BaseField> r1;
    for (uint32_t i = 0; i < m; ++i) r1.emplace_back(a.c.begin() + i * e_, a.c.begin() + (i + 1) * e_);
    detail::ptrim(fq, r1);
    PVec<BaseField> t0, t1{fq.one()};
    while (!r1.empty()) {
        PVec<BaseField> qq, rr;
        detail::pdivrem(fq, r0, r1, qq, rr);
        auto tn = detail::psub(fq, t0, detail::pmul(fq, qq, t1));
        r0 = std::move(r1);
        r1 = std::move(rr);
        t0 = std::move(t1);
        t1 = std::move(tn);
    }
    auto s = fq.inv(r0[0]);
    FieldElement out = zero(m);
    for (size_t i = 0; i < t0.size(); ++i) {
        auto blk = fq.mul(t0[i], s);
        for (uint32_t j = 0; j < e_; ++j) out.c[i * e_ + j] = blk[j];
    }
    return out;
}

FieldElement FieldTower::pow(const FieldElement& a, uint64_t n) const {
    FieldElement r = one(a.level), b = a;
    while (n) {
        if (n & 1) r = mul(r, b);
        n >>= 1;
        if (n) b = mul(b, b);
    }
    return r;
}

FieldElement FieldTower::frob_p(const FieldElement& a, uint32_t times) const {
    FieldElement r = a;
    for (uint32_t i = 0; i < times; ++i) r = pow(r, p_);
    return r;
}

FieldElement FieldTower::frob_q(const FieldElement& a, uint32_t times) const {
    FieldElement r = a;
    for (uint32_t i = 0; i < times; ++i) r = frob_p(r, e_);
    return r;
}

FieldElement FieldTower::pth_root(const FieldElement& a) const {
    // x -> x^p is a bijection with inverse x -> x^(p^(e*level - 1)).
    uint32_t n = e_ * a.level;
    return frob_p(a, n - 1);
}

uint64_t FieldTower::encode(const FieldElement& a) const {
    check(a);
    uint64_t r = 0;
    for (size_t i = a.c.size(); i-- > 0;) {
        if (r > (UINT64_MAX - a.c[i]) / p_) throw InternalError("element encoding overflow");
        r = r * p_ + a.c[i];
    }
    return r;
}

FieldElement FieldTower::decode(uint64_t idx, uint32_t lv) const {
    auto r = zero(lv);
    for (size_t i = 0; i < r.c.size(); ++i) {
        r.c[i] = uint32_t(idx % p_);
        idx /= p_;
    }
    if (idx) throw InputError("element index out of range");
    return r;
}

bool FieldTower::less(const FieldElement& a, const FieldElement& b) const {
    check(a);
    check(b);
    if (a.level != b.level) throw InputError("field element level mismatch");
    for (size_t i = a.c.size(); i-- > 0;)
        if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
    return false;
}

// ---- embeddings --------------------------------------------------------

FieldElement FieldTower::embed_gen(uint32_t a, uint32_t b) const {
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = embed_cache_.find({a, b});
        if (it != embed_cache_.end()) return it->second;
    }
    // Smallest root of T_a in level b; the root set is the Frobenius orbit of
    // any one root, so the randomized split below cannot change the result.
    const auto& Ta = level(a).T;
    LevelField fb{this, b};
    PVec<LevelField> g;
    for (const auto& blk : Ta) {
        auto c = zero(b);
        for (uint32_t j = 0; j < e_; ++j) c.c[j] = blk[j];
        g.push_back(c);
    }
    detail::ptrim(fb, g);

    SplitMix rng{0xA11CEull ^ (uint64_t(a) << 32) ^ b};
    std::vector<bool> half_bits;
    if (p_ != 2) half_bits = detail::half_power_bits(q_, b);
    // Recursive equal-degree split to one linear factor.
    std::vector<PVec<LevelField>> stack{g};
    FieldElement root = zero(b);
    bool found = false;
    while (!stack.empty() && !found) {
        auto h = stack.back();
        stack.pop_back();
        if (pdeg<LevelField>(h) == 1) {
            root = mul(neg(h[0]), inv(h[1]));
            found = true;
            break;
        }
        for (int tries = 0; tries < 256; ++tries) {
            FieldElement r = zero(b);
            for (auto& cc : r.c) cc = uint32_t(rng.next() % p_);
            PVec<LevelField> s;
            if (p_ != 2) {
                PVec<LevelField> base{r, one(b)};  // x + r
                s = detail::ppowmod_bits(fb, base, half_bits, h);
                s = detail::psub(fb, s, PVec<LevelField>{one(b)});
            } else {
                // trace splitting: sum of (r x)^(2^i) over F_2-dimensions
                PVec<LevelField> t{zero(b), r};
                t = detail::pmod(fb, t, h);
                s = t;
                for (uint32_t i = 1; i < e_ * b; ++i) {
                    t = detail::pmulmod(fb, t, t, h);
                    s = detail::padd(fb, s, t);
                }
            }
            auto d = detail::pgcd(fb, s, h);
            int dd = pdeg<LevelField>(d);
            if (dd > 0 && dd < pdeg<LevelField>(h)) {
                PVec<LevelField> q2, r2;
                detail::pdivrem(fb, h, d, q2, r2);
                stack.push_back(d);
                stack.push_back(q2);
                break;
            }
            if (tries == 255) throw InternalError("embedding root search failed to split");
        }
    }
    if (!found) throw InternalError("embedding root search found no root");
    // Canonical choice: minimum of the Frobenius orbit in encoding order.
    FieldElement best = root, cur = root;
    for (uint32_t i = 1; i < a; ++i) {
        cur = frob_q(cur);
        if (less(cur, best)) best = cur;
    }
    std::lock_guard<std::mutex> lk(mu_);
    return embed_cache_.emplace(std::make_pair(a, b), best).first->second;
}

FieldElement FieldTower::embed(const FieldElement& a, uint32_t to_level) const {
    check(a);
    if (to_level == a.level) return a;
    if (to_level % a.level != 0) throw InputError("embedding requires a divisible level");
    if (a.level == 1) {
        auto r = zero(to_level);
        for (uint32_t j = 0; j < e_; ++j) r.c[j] = a.c[j];
        return r;
    }
    auto img = embed_gen(a.level, to_level);
    auto r = zero(to_level);
    for (uint32_t i = a.level; i-- > 0;) {
        r = mul(r, img);
        auto blk = zero(to_level);
        for (uint32_t j = 0; j < e_; ++j) blk.c[j] = a.c[i * e_ + j];
        r = add(r, blk);
    }
    return r;
}

std::optional<FieldElement> FieldTower::descend(const FieldElement& a, uint32_t to_level) const {
    check(a);
    if (to_level == a.level) return a;
    if (a.level % to_level != 0) throw InputError("descent requires a divisible level");
    if (to_level == 1) {
        for (size_t i = e_; i < a.c.size(); ++i)
            if (a.c[i]) return std::nullopt;
        return FieldElement{1, std::vector<uint32_t>(a.c.begin(), a.c.begin() + e_)};
    }
    // Solve embed(x) = a coordinatewise over F_q.
    LevelField f1{this, 1};
    Mat<FieldElement> E(a.level, to_level, zero(1));
    auto img = embed(gen(to_level), a.level);
    FieldElement col = one(a.level);
    for (uint32_t j = 0; j < to_level; ++j) {
        for (uint32_t i = 0; i < a.level; ++i)
            E.at(i, j) = FieldElement{1, std::vector<uint32_t>(col.c.begin() + i * e_, col.c.begin() + (i + 1) * e_)};
        col = mul(col, img);
    }
    std::vector<FieldElement> rhs;
    for (uint32_t i = 0; i < a.level; ++i)
        rhs.push_back(FieldElement{1, std::vector<uint32_t>(a.c.begin() + i * e_, a.c.begin() + (i + 1) * e_)});
    auto x = solve(f1, E, rhs);
    if (!x) return std::nullopt;
    FieldElement out = zero(to_level);
    for (uint32_t j = 0; j < to_level; ++j)
        for (uint32_t k = 0; k < e_; ++k) out.c[j * e_ + k] = (*x)[j].c[k];
    // embed is injective but solve() ignores non-pivot residuals; verify.
    if (!eq(embed(out, a.level), a)) return std::nullopt;
    return out;
}

std::vector<FieldElement> FieldTower::frobenius_matrix(uint32_t m) const {
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = frob_cache_.find(m);
        if (it != frob_cache_.end()) return it->second;
    }
    std::vector<FieldElement> M(size_t(m) * m, zero(1));
    if (m == 1) {
        // x -> x^q fixes F_q pointwise.
        M[0] = one(1);
        std::lock_guard<std::mutex> lk(mu_);
        return frob_cache_.emplace(1, std::move(M)).first->second;
    }
    FieldElement gq = frob_q(gen(m));
    FieldElement col = one(m);
    for (uint32_t j = 0; j < m; ++j) {
        for (uint32_t i = 0; i < m; ++i)
            M[size_t(i) * m + j] = FieldElement{1, std::vector<uint32_t>(col.c.begin() + i * e_, col.c.begin() + (i + 1) * e_)};
        col = mul(col, gq);
    }
    std::lock_guard<std::mutex> lk(mu_);
    return frob_cache_.emplace(m, std::move(M)).first->second;
}

// ---- printing ----------------------------------------------------------

namespace {

std::string join_terms(std::vector<std::string> terms) {
    if (terms.empty()) return "0";
    std::string out;
    for (size_t i = 0; i < terms.size(); ++i) {
        if (i) out += "+";
        out += terms[i];
    }
    return out;
}

std::string term_str(const std::string& coef, const std::string& var, uint32_t k) {
    if (k == 0) return coef;
    std::string v = var;
    if (k > 1) v += "^" + std::to_string(k);
    if (coef == "1") return v;
    return coef + "*" + v;
}

}  // namespace

std::string FieldTower::to_string(const FieldElement& a) const {
    check(a);
    auto block_str = [&](size_t blk_idx) {
        std::vector<std::string> terms;
        for (size_t j = e_; j-- > 0;) {
            uint32_t v = a.c[blk_idx * e_ + j];
            if (!v) continue;
            terms.push_back(term_str(std::to_string(v), "b", uint32_t(j)));
        }
        return join_terms(std::move(terms));
    };
    if (a.level == 1) return block_str(0);
    std::vector<std::string> terms;
    for (size_t i = a.level; i-- > 0;) {
        auto bs = block_str(i);
        if (bs == "0") continue;
        if (bs.find('+') != std::string::npos && i > 0) bs = "(" + bs + ")";
        terms.push_back(term_str(bs, "g", uint32_t(i)));
    }
    return join_terms(std::move(terms));
}

std::vector<FieldElement> fq_coords(const FieldTower& tw, const FieldElement& a) {
    uint32_t e = tw.e();
    std::vector<FieldElement> v;
    v.reserve(a.level);
    for (uint32_t i = 0; i < a.level; ++i)
        v.push_back(FieldElement{1, std::vector<uint32_t>(a.c.begin() + i * e,
                                                          a.c.begin() + (i + 1) * e)});
    return v;
}

FieldElement from_fq_coords(const FieldTower& tw, const std::vector<FieldElement>& v) {
    uint32_t e = tw.e();
    FieldElement r{uint32_t(v.size()), std::vector<uint32_t>(v.size() * e, 0)};
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i].level != 1) throw InputError("coordinate is not a level-1 element");
        std::copy(v[i].c.begin(), v[i].c.end(), r.c.begin() + i * e);
    }
    return r;
}

}  // namespace amot
