#include "amot/cyclotomic.hpp"

#include <sstream>

namespace amot {

namespace {

// Element of B_n, stored as a dense coefficient tree: a level-n element is a
// vector of level-(n-1) elements, leaves are elements of F.
struct CElem {
    std::vector<CElem> kids;
    KElem leaf;
    bool is_leaf = true;
};

struct CycloRing {
    const AField* F;
    uint64_t qh;
    uint32_t N;

    uint64_t dim(uint32_t n) const { return n == 0 ? qh - 1 : qh; }

    CElem zero(uint32_t n) const {
        CElem e;
        e.is_leaf = false;
        e.kids.assign(dim(n), lower_zero(n));
        return e;
    }
    CElem lower_zero(uint32_t n) const {
        if (n == 0) {
            CElem l;
            l.is_leaf = true;
            l.leaf = F->zero();
            return l;
        }
        return zero(n - 1);
    }
    CElem from_scalar(uint32_t n, const KElem& v) const {
        CElem e = zero(n);
        set_scalar(e, n, v);
        return e;
    }
    void set_scalar(CElem& e, uint32_t n, const KElem& v) const {
        if (n == 0) {
            e.kids[0].leaf = v;
            return;
        }
        set_scalar(e.kids[0], n - 1, v);
    }
    CElem embed(uint32_t from, const CElem& a, uint32_t to) const {
        if (from == to) return a;
        CElem e = zero(to);
        e.kids[0] = embed(from, a, to - 1);
        return e;
    }
    CElem gen(uint32_t n, uint32_t at_level) const {
        // x_n as an element of B_{at_level}, n <= at_level
        if (at_level > n) {
            CElem e = zero(at_level);
            e.kids[0] = gen(n, at_level - 1);
            return e;
        }
        CElem e = zero(n);
        e.kids[1] = lower_one(n);
        return e;
    }
    CElem lower_one(uint32_t n) const {
        if (n == 0) {
            CElem l;
            l.is_leaf = true;
            l.leaf = F->one();
            return l;
        }
        return from_scalar(n - 1, F->one());
    }

    CElem add(uint32_t n, const CElem& a, const CElem& b) const {
        if (a.is_leaf) {
            CElem r;
            r.is_leaf = true;
            r.leaf = F->add(a.leaf, b.leaf);
            return r;
        }
        CElem r = a;
        for (size_t i = 0; i < r.kids.size(); ++i)
            r.kids[i] = add(n == 0 ? 0 : n - 1, r.kids[i], b.kids[i]);
        return r;
    }
    CElem neg(uint32_t n, const CElem& a) const {
        if (a.is_leaf) {
            CElem r;
            r.is_leaf = true;
            r.leaf = F->neg(a.leaf);
            return r;
        }
        CElem r = a;
        for (auto& k : r.kids) k = neg(n == 0 ? 0 : n - 1, k);
        return r;
    }
    CElem sub(uint32_t n, const CElem& a, const CElem& b) const { return add(n, a, neg(n, b)); }
    CElem scale(uint32_t n, const CElem& a, const KElem& v) const {
        if (a.is_leaf) {
            CElem r;
            r.is_leaf = true;
            r.leaf = F->mul(a.leaf, v);
            return r;
        }
        CElem r = a;
        for (auto& k : r.kids) k = scale(n == 0 ? 0 : n - 1, k, v);
        return r;
    }
    bool is_zero(const CElem& a) const {
        if (a.is_leaf) return F->is_zero(a.leaf);
        for (const auto& k : a.kids)
            if (!is_zero(k)) return false;
        return true;
    }
    bool eq(uint32_t n, const CElem& a, const CElem& b) const { return is_zero(sub(n, a, b)); }

    // multiply a level-(n-1) coefficient by x_{n-1}
    CElem mul_lower_gen(uint32_t n, const CElem& a) const {
        return mul(n - 1, a, gen(n - 1, n - 1));
    }

    CElem mul(uint32_t n, const CElem& a, const CElem& b) const {
        if (a.is_leaf) {
            CElem r;
            r.is_leaf = true;
            r.leaf = F->mul(a.leaf, b.leaf);
            return r;
        }
        uint64_t d = dim(n);
        std::vector<CElem> conv(2 * d - 1, lower_zero(n));
        uint32_t m = n == 0 ? 0 : n - 1;
        for (size_t i = 0; i < d; ++i) {
            if (n > 0 ? is_zero(a.kids[i]) : F->is_zero(a.kids[i].leaf)) continue;
            for (size_t j = 0; j < d; ++j)
                conv[i + j] = add(m, conv[i + j], mul(m, a.kids[i], b.kids[j]));
        }
        // reduce top powers: x_0^{q-1} = -zeta; x_n^q = x_{n-1} - zeta x_n
        KElem zeta = F->theta();
        for (size_t k = conv.size(); k-- > d;) {
            if (is_zero(conv[k])) continue;
            if (n == 0) {
                conv[k - d] = add(m, conv[k - d], scale(m, conv[k], F->neg(zeta)));
            } else {
                conv[k - d] = add(m, conv[k - d], mul_lower_gen(n, conv[k]));
                conv[k - d + 1] = add(m, conv[k - d + 1], scale(m, conv[k], F->neg(zeta)));
            }
            conv[k] = lower_zero(n);
        }
        CElem r = zero(n);
        for (size_t i = 0; i < d; ++i) r.kids[i] = conv[i];
        return r;
    }

    CElem pow(uint32_t n, CElem a, uint64_t k) const {
        CElem r = from_scalar(n, F->one());
        while (k) {
            if (k & 1) r = mul(n, r, a);
            a = mul(n, a, a);
            k >>= 1;
        }
        return r;
    }
};

}  // namespace

std::string TowerCheckReport::to_string() const {
    std::ostringstream os;
    os << "tower over F_" << q << "(zeta), levels 0.." << levels << ", degrees";
    for (uint64_t d : layer_degrees) os << " " << d;
    os << "; separable=" << (separable_layers ? "yes" : "no")
       << " recursion=" << (recursion_holds ? "yes" : "no")
       << " sigma-law=" << (sigma_coefficient_law ? "yes" : "no")
       << " action=" << (action_is_character ? "yes" : "no");
    return os.str();
}

TowerCheckReport cyclotomic_tower_check(const FieldTower* tw, uint32_t levels) {
    uint64_t qh = tw->q();
    if (qh < 3) throw InputError("the layered tower needs q >= 3");
    uint64_t total = qh - 1;
    for (uint32_t i = 0; i < levels; ++i) {
        total *= qh;
        if (total > 300)
            throw PrecisionError("tower degree " + std::to_string(total) +
                                 " exceeds the supported bound");
    }
    AField F = AField::generic(tw, "zeta");
    CycloRing R{&F, qh, levels};
    TowerCheckReport rep;
    rep.q = qh;
    rep.levels = levels;
    rep.layer_degrees.push_back(qh - 1);
    for (uint32_t i = 1; i <= levels; ++i) rep.layer_degrees.push_back(qh);

    KElem zeta = F.theta();

    // Separability: layer-0 derivative is a unit iff x_0 is (its (q-1)-th
    // power is -zeta != 0); higher derivatives are the unit zeta itself.
    CElem x0_pow = R.pow(0, R.gen(0, 0), qh - 1);
    bool x0_rel = R.eq(0, x0_pow, R.from_scalar(0, F.neg(zeta)));
    rep.separable_layers = x0_rel && !F.is_zero(zeta);

    // Defining recursion in each layer.
    bool rec = x0_rel;
    for (uint32_t n = 1; n <= levels; ++n) {
        CElem lhs = R.pow(n, R.gen(n, n), qh);
        lhs = R.add(n, lhs, R.scale(n, R.gen(n, n), zeta));
        rec = rec && R.eq(n, lhs, R.gen(n - 1, n));
    }
    rep.recursion_holds = rec;

    // sigma(l)_n = (z - zeta) l coefficientwise at the top level:
    // x_n^q = x_{n-1} - zeta x_n, with x_{-1} = 0.
    bool law = true;
    for (uint32_t n = 0; n <= levels; ++n) {
        CElem lhs = R.pow(levels, R.gen(n, levels), qh);
        CElem rhs = R.scale(levels, R.gen(n, levels), F.neg(zeta));
        if (n > 0) rhs = R.add(levels, rhs, R.gen(n - 1, levels));
        law = law && R.eq(levels, lhs, rhs);
    }
    rep.sigma_coefficient_law = law;

    // Scalar action on layer 0: u * x_0 is a root for every u in the base
    // field's unit group, the composition is multiplicative and faithful.
    bool act = true;
    std::vector<FieldElement> units;
    {
        uint32_t e = tw->e(), p = tw->p();
        std::vector<uint32_t> co(e, 0);
        while (true) {
            FieldElement u{1, co};
            if (!tw->is_zero(u)) units.push_back(u);
            size_t i = 0;
            while (i < e && ++co[i] == p) co[i++] = 0;
            if (i == e) break;
        }
    }
    CElem x0 = R.gen(0, 0);
    CElem mzeta = R.from_scalar(0, F.neg(zeta));
    for (const auto& u : units) {
        CElem ux = R.scale(0, x0, F.from_base(u));
        act = act && R.eq(0, R.pow(0, ux, qh - 1), mzeta);
    }
    for (const auto& u : units)
        for (const auto& v : units) {
            KElem uv = F.mul(F.from_base(u), F.from_base(v));
            CElem lhs = R.scale(0, R.scale(0, x0, F.from_base(v)), F.from_base(u));
            act = act && R.eq(0, lhs, R.scale(0, x0, uv));
        }
    for (size_t i = 0; i < units.size() && act; ++i)
        for (size_t j = i + 1; j < units.size(); ++j)
            if (R.eq(0, R.scale(0, x0, F.from_base(units[i])),
                     R.scale(0, x0, F.from_base(units[j])))) {
                act = false;
                break;
            }
    rep.action_is_character = act;
    return rep;
}

}  // namespace amot
