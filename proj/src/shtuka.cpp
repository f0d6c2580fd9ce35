#include "amot/shtuka.hpp"

#include <algorithm>
#include <sstream>

namespace amot {

namespace {

void check_field(const ZSeries& a, const ZSeries& b) {
    if (!a.K->same(*b.K)) throw InputError("series over different A-fields");
}

}  // namespace

ZSeries ZSeries::zero(const AField* K) { return ZSeries{K, {}, 0, true}; }

ZSeries ZSeries::one(const AField* K) { return ZSeries{K, {K->one()}, 0, true}; }

ZSeries ZSeries::poly(const AField* K, std::vector<KElem> cs) {
    while (!cs.empty() && K->is_zero(cs.back())) cs.pop_back();
    return ZSeries{K, std::move(cs), 0, true};
}

KElem ZSeries::at(size_t i) const {
    if (i < c.size()) return c[i];
    if (!exact && i >= prec) throw InternalError("series coefficient beyond known precision");
    return K->zero();
}

bool ZSeries::known_zero() const {
    if (!exact) return false;
    for (const auto& e : c)
        if (!K->is_zero(e)) return false;
    return true;
}

ZSeries ZSeries::operator+(const ZSeries& o) const {
    check_field(*this, o);
    ZSeries r{K, {}, 0, exact && o.exact};
    size_t n = std::max(c.size(), o.c.size());
    if (!r.exact) {
        r.prec = std::min(known(), o.known());
        n = r.prec;
    }
    r.c.resize(n, K->zero());
    for (size_t i = 0; i < n; ++i) r.c[i] = K->add(at(i), o.at(i));
    if (r.exact)
        while (!r.c.empty() && K->is_zero(r.c.back())) r.c.pop_back();
    return r;
}

ZSeries ZSeries::operator-() const {
    ZSeries r = *this;
    for (auto& e : r.c) e = K->neg(e);
    return r;
}

ZSeries ZSeries::operator-(const ZSeries& o) const { return *this + (-o); }

ZSeries ZSeries::operator*(const ZSeries& o) const {
    check_field(*this, o);
    ZSeries r{K, {}, 0, exact && o.exact};
    if (known_zero() || o.known_zero()) {
        r.exact = true;
        return r;
    }
    size_t n;
    if (r.exact) {
        if (c.empty() || o.c.empty()) return r;
        n = c.size() + o.c.size() - 1;
    } else {
        r.prec = std::min(known(), o.known());
        n = r.prec;
    }
    r.c.resize(n, K->zero());
    for (size_t i = 0; i < c.size() && i < n; ++i) {
        if (K->is_zero(c[i])) continue;
        for (size_t j = 0; j < o.c.size() && i + j < n; ++j)
            r.c[i + j] = K->add(r.c[i + j], K->mul(c[i], o.c[j]));
    }
    if (r.exact)
        while (!r.c.empty() && K->is_zero(r.c.back())) r.c.pop_back();
    return r;
}

ZSeries ZSeries::scaled(const KElem& s) const {
    ZSeries r = *this;
    for (auto& e : r.c) e = K->mul(e, s);
    if (r.exact)
        while (!r.c.empty() && K->is_zero(r.c.back())) r.c.pop_back();
    return r;
}

ZSeries ZSeries::shifted(uint32_t k) const {
    ZSeries r{K, {}, 0, exact};
    if (!exact) {
        r.prec = prec + k;
        r.c.resize(prec + k, K->zero());
        for (size_t i = 0; i < c.size(); ++i) r.c[i + k] = c[i];
        return r;
    }
    if (c.empty()) return r;
    r.c.assign(k, K->zero());
    r.c.insert(r.c.end(), c.begin(), c.end());
    return r;
}

ZSeries ZSeries::divided_by(const ZSeries& o, uint32_t want) const {
    check_field(*this, o);
    if (o.c.empty() || o.K->is_zero(o.c[0]))
        throw InputError("series division needs a unit denominator");
    // constant denominators divide exactly
    if (o.exact && o.c.size() == 1) return scaled(K->inv(o.c[0]));
    ZSeries r{K, {}, std::min({want, known(), o.known()}), false};
    KElem u = K->inv(o.c[0]);
    r.c.resize(r.prec, K->zero());
    for (size_t k = 0; k < r.prec; ++k) {
        KElem acc = at(k);
        for (size_t j = 1; j <= k && j < o.c.size(); ++j)
            acc = K->sub(acc, K->mul(o.c[j], r.c[k - j]));
        r.c[k] = K->mul(acc, u);
    }
    return r;
}

int64_t ZSeries::ord() const {
    for (size_t i = 0; i < c.size(); ++i)
        if (!K->is_zero(c[i])) return int64_t(i);
    if (exact) throw InternalError("order of the zero series");
    throw PrecisionError("series vanishes to working precision " + std::to_string(prec));
}

ZSeries ZSeries::sigma() const {
    ZSeries r = *this;
    for (auto& e : r.c) e = K->frob_q(e);
    return r;
}

ZSeries ZSeries::recentered(const KElem& a) const {
    if (!exact) throw PrecisionError("cannot recenter a truncated series exactly");
    // Horner: p(w + a)
    ZSeries r = zero(K);
    ZSeries lin = poly(K, {a, K->one()});
    for (size_t i = c.size(); i-- > 0;) r = r * lin + poly(K, {c[i]});
    return r;
}

std::string ZSeries::to_string(const std::string& var) const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c.size(); ++i) {
        if (K->is_zero(c[i])) continue;
        if (!first) os << " + ";
        os << "(" << K->to_string(c[i]) << ")";
        if (i > 0) os << "*" << var << (i > 1 ? "^" + std::to_string(i) : "");
        first = false;
    }
    if (first) os << "0";
    if (!exact) os << " + O(" << var << "^" << prec << ")";
    return os.str();
}

namespace {

KElem prime_at_theta(const AField* R, const PrimeOfA& p) {
    KElem acc = R->zero();
    for (size_t i = p.z.c.size(); i-- > 0;)
        acc = R->add(R->mul(acc, R->theta()), R->from_base(p.z.c[i]));
    return acc;
}

ZSeries z_minus_zeta(const AField* R, const KElem& zeta) {
    return ZSeries::poly(R, {R->neg(zeta), R->one()});
}

void check_compatible(const LocalShtuka& a, const LocalShtuka& b) {
    if (!a.R->same(*b.R) || !(a.p.z == b.p.z))
        throw InputError("local shtukas at different places cannot be combined");
}

Mat<ZSeries> series_mat(size_t r, const AField* K) {
    return Mat<ZSeries>(r, r, ZSeries::zero(K));
}

// Cofactor expansion; ranks here stay small.
ZSeries series_det(const Mat<ZSeries>& M) {
    size_t n = M.nr;
    if (n > 8) throw InputError("determinant of rank > 8 series matrix not supported");
    if (n == 1) return M.at(0, 0);
    const AField* K = M.at(0, 0).K;
    ZSeries det = ZSeries::zero(K);
    for (size_t j = 0; j < n; ++j) {
        if (M.at(0, j).known_zero()) continue;
        Mat<ZSeries> sub(n - 1, n - 1, ZSeries::zero(K));
        for (size_t i = 1; i < n; ++i)
            for (size_t k = 0, kk = 0; k < n; ++k) {
                if (k == j) continue;
                sub.at(i - 1, kk++) = M.at(i, k);
            }
        ZSeries term = M.at(0, j) * series_det(sub);
        det = (j % 2 == 0) ? det + term : det - term;
    }
    return det;
}

}  // namespace

LocalShtuka one_twist(const AField* R, const PrimeOfA& p, int64_t n, uint32_t prec) {
    if (prec <= uint64_t(n < 0 ? -n : n))
        throw InputError("twist exponent " + std::to_string(n) + " needs precision > |n|");
    LocalShtuka S;
    S.R = R;
    S.p = p;
    S.rank = 1;
    S.zeta = prime_at_theta(R, p);
    S.prec = prec;
    S.T = series_mat(1, R);
    if (n > 0) {
        S.T.at(0, 0) = ZSeries::one(R);
        S.denom = n;
    } else {
        ZSeries acc = ZSeries::one(R);
        ZSeries lin = z_minus_zeta(R, S.zeta);
        for (int64_t i = 0; i < -n; ++i) acc = acc * lin;
        S.T.at(0, 0) = acc;
        S.denom = 0;
    }
    return S;
}

LocalShtuka tensor(const LocalShtuka& a, const LocalShtuka& b) {
    check_compatible(a, b);
    LocalShtuka S;
    S.R = a.R;
    S.p = a.p;
    S.rank = a.rank * b.rank;
    S.zeta = a.zeta;
    S.prec = std::min(a.prec, b.prec);
    S.denom = a.denom + b.denom;
    S.T = series_mat(S.rank, a.R);
    for (size_t i = 0; i < a.rank; ++i)
        for (size_t j = 0; j < a.rank; ++j)
            for (size_t k = 0; k < b.rank; ++k)
                for (size_t l = 0; l < b.rank; ++l)
                    S.T.at(i * b.rank + k, j * b.rank + l) = a.T.at(i, j) * b.T.at(k, l);
    return S;
}

LocalShtuka direct_sum(const LocalShtuka& a, const LocalShtuka& b) {
    check_compatible(a, b);
    LocalShtuka S;
    S.R = a.R;
    S.p = a.p;
    S.rank = a.rank + b.rank;
    S.zeta = a.zeta;
    S.prec = std::min(a.prec, b.prec);
    S.denom = std::max(a.denom, b.denom);
    S.T = series_mat(S.rank, a.R);
    ZSeries lin = z_minus_zeta(a.R, a.zeta);
    auto scale_pow = [&](int64_t e) {
        ZSeries acc = ZSeries::one(a.R);
        for (int64_t i = 0; i < e; ++i) acc = acc * lin;
        return acc;
    };
    ZSeries fa = scale_pow(S.denom - a.denom), fb = scale_pow(S.denom - b.denom);
    for (size_t i = 0; i < a.rank; ++i)
        for (size_t j = 0; j < a.rank; ++j) S.T.at(i, j) = a.T.at(i, j) * fa;
    for (size_t i = 0; i < b.rank; ++i)
        for (size_t j = 0; j < b.rank; ++j) S.T.at(a.rank + i, a.rank + j) = b.T.at(i, j) * fb;
    return S;
}

LocalShtuka localize_motive(const AMotiveMatrix& M, const PrimeOfA& p, uint32_t prec,
                            bool allow_higher_degree) {
    const AField* K = M.K;
    uint32_t f = uint32_t(p.degree());
    if (f > 1 && !allow_higher_degree)
        throw InputError("localization at a higher-degree place must be requested explicitly");
    if (f > 1 && !K->is_finite())
        throw InputError("higher-degree localization needs a finite base containing the residue field");

    // Pull (t - theta)-poles out as a global denominator exponent.
    KPoly tmth = KPoly::t(K) - KPoly::constant(K, K->theta());
    int64_t h = 0;
    for (const auto& e : M.T.a)
        if (!e.is_zero()) h = std::max(h, int64_t(-e.ord_at(tmth)));
    if (h > 0 && f > 1)
        throw InputError("higher-degree localization needs an effective motive");
    KPoly scale = KPoly::one(K);
    for (int64_t i = 0; i < h; ++i) scale = scale * tmth;

    // The series giving the action of t on the chosen component.
    ZSeries tser{K, {}, 0, true};
    if (f == 1) {
        // p = t - c
        KElem c = K->neg(K->from_base(p.z.c[0]));
        tser = ZSeries::poly(K, {c, K->one()});
    } else {
        if (K->degree() % f != 0)
            throw InputError("base field has no residue embedding for this place");
        FieldElement c0 = K->tower()->embed(canonical_root(p.z), K->degree());
        // Hensel: solve p(t(z)) = z with t(0) = c0 by Newton iteration.
        ZSeries t{K, {KElem(c0)}, prec, false};
        t.c.resize(prec, K->zero());
        Poly dpz = p.z.derivative();
        auto eval_poly = [&](const Poly& g, const ZSeries& x) {
            ZSeries acc = ZSeries::zero(K);
            acc.exact = false;
            acc.prec = prec;
            acc.c.resize(prec, K->zero());
            for (size_t i = g.c.size(); i-- > 0;) {
                acc = acc * x;
                std::vector<KElem> cc{KElem(K->tower()->embed(g.c[i], K->degree()))};
                acc = acc + ZSeries::poly(K, cc);
            }
            return acc;
        };
        ZSeries zz{K, {K->zero(), K->one()}, prec, false};
        zz.c.resize(prec, K->zero());
        zz.c[1] = K->one();
        for (uint32_t it = 0; it < prec + 2; ++it) {
            ZSeries num = eval_poly(p.z, t) - zz;
            bool settled = true;
            for (const auto& ce : num.c)
                if (!K->is_zero(ce)) settled = false;
            if (settled) break;
            t = t - num.divided_by(eval_poly(dpz, t), prec);
        }
        tser = t;
    }

    auto subst = [&](const KPoly& g) {
        ZSeries acc = ZSeries::zero(K);
        for (size_t i = g.c.size(); i-- > 0;)
            acc = acc * tser + ZSeries::poly(K, {g.c[i]});
        return acc;
    };

    auto subst_mat = [&](const Mat<KRat>& E) {
        Mat<ZSeries> out = series_mat(M.rank, K);
        for (size_t i = 0; i < M.rank; ++i)
            for (size_t j = 0; j < M.rank; ++j) {
                const KRat& e = E.at(i, j);
                if (e.num.is_zero()) continue;
                ZSeries num = subst(e.num);
                if (e.den.is_one()) {
                    out.at(i, j) = num;
                    continue;
                }
                ZSeries den = subst(e.den);
                if (den.c.empty() || K->is_zero(den.at(0)))
                    throw InputError("motive is not integral at " + p.z.to_string() +
                                     ": denominator vanishes on the residue component");
                out.at(i, j) = num.divided_by(den, prec);
            }
        return out;
    };

    LocalShtuka S;
    S.R = K;
    S.p = p;
    S.rank = M.rank;
    S.zeta = prime_at_theta(K, p);
    S.prec = prec;
    S.denom = h;
    Mat<KRat> E = M.T;
    for (auto& e : E.a) e = e * KRat(scale);
    Mat<ZSeries> prod = subst_mat(E);
    // tau^f on the chosen component: every factor is evaluated on the same
    // component series, with the coefficients Frobenius-twisted.
    for (uint32_t s = 1; s < f; ++s) {
        for (auto& e : E.a) e = e.sigma();
        Mat<ZSeries> factor = subst_mat(E);
        Mat<ZSeries> next = series_mat(M.rank, K);
        for (size_t i = 0; i < M.rank; ++i)
            for (size_t j = 0; j < M.rank; ++j) {
                ZSeries acc = ZSeries::zero(K);
                for (size_t k = 0; k < M.rank; ++k) acc = acc + prod.at(i, k) * factor.at(k, j);
                next.at(i, j) = acc;
            }
        prod = next;
    }
    S.T = prod;
    return S;
}

namespace {

// z-polynomial over the residue field, low-first, trimmed.
using RedPoly = std::vector<FieldElement>;

struct ResidueMap {
    const AField* R;
    const FieldTower* tw;
    uint32_t klevel;
    FieldElement point;  // image of the field variable
    bool identity;

    RedPoly apply(const ZSeries& s) const {
        RedPoly out;
        for (size_t i = 0; i < s.c.size(); ++i) {
            FieldElement v(0, {});
            if (identity) {
                v = R->as_fe(s.c[i]);
            } else {
                auto ev = R->as_rat(s.c[i]).eval(point);
                if (!ev)
                    throw InputError("shtuka entry is not integral at the residue point");
                v = *ev;
            }
            out.push_back(v);
        }
        while (!out.empty() && tw->is_zero(out.back())) out.pop_back();
        return out;
    }
};

ResidueMap residue_map(const LocalShtuka& S) {
    ResidueMap rm;
    rm.R = S.R;
    rm.tw = S.R->tower();
    if (S.R->is_finite()) {
        if (!(S.p.z == S.R->characteristic().z))
            throw InputError(
                "Hodge data over a finite base is only defined at the characteristic place");
        rm.identity = true;
        rm.klevel = S.R->degree();
        rm.point = rm.tw->zero(1);
        return rm;
    }
    const RationalFunc& th = S.R->as_rat(S.R->theta());
    if (!(th.num == Poly::x(rm.tw, 1)) || !th.den.is_one())
        throw InputError("residue map needs theta to be the field variable");
    rm.identity = false;
    rm.klevel = uint32_t(S.p.degree());
    rm.point = canonical_root(S.p.z);
    return rm;
}

int64_t red_ord(const FieldTower* tw, const RedPoly& g) {
    for (size_t i = 0; i < g.size(); ++i)
        if (!tw->is_zero(g[i])) return int64_t(i);
    return -1;  // identically zero
}

// Orders of the elementary divisors of an exact series matrix over R[[w]],
// ascending. expected = ord of the determinant, used both as the working
// precision bound and as a cross-check.
std::vector<int64_t> snf_orders(Mat<ZSeries> A, int64_t expected) {
    size_t n = A.nr;
    std::vector<int64_t> s;
    size_t k = 0;
    int64_t consumed = 0;
    uint32_t window = uint32_t(expected) + 2;
    while (k < n) {
        int64_t best = -1;
        size_t bi = k, bj = k;
        for (size_t i = k; i < n; ++i)
            for (size_t j = k; j < n; ++j) {
                const ZSeries& e = A.at(i, j);
                if (e.known_zero()) continue;
                int64_t o;
                try {
                    o = e.ord();
                } catch (const PrecisionError&) {
                    continue;
                }
                if (best < 0 || o < best) {
                    best = o;
                    bi = i;
                    bj = j;
                }
            }
        if (best < 0)
            throw InternalError("pivot search exhausted below the determinant order");
        if (best + consumed > expected)
            throw InternalError("elementary divisors exceed the determinant order");
        for (size_t j = 0; j < n; ++j) std::swap(A.a[k * n + j], A.a[bi * n + j]);
        for (size_t i = 0; i < n; ++i) std::swap(A.a[i * n + k], A.a[i * n + bj]);
        // strip w^best from the pivot row, then eliminate
        auto strip = [&](const ZSeries& e) {
            ZSeries r{e.K, {}, 0, e.exact};
            if (!e.exact) {
                if (e.prec <= uint64_t(best)) throw PrecisionError("series too short to strip");
                r.prec = e.prec - uint32_t(best);
            }
            for (size_t i = size_t(best); i < e.c.size(); ++i) r.c.push_back(e.c[i]);
            if (!e.exact) r.c.resize(r.prec, e.K->zero());
            return r;
        };
        ZSeries piv = strip(A.at(k, k));
        for (size_t i = k + 1; i < n; ++i) {
            const ZSeries& e = A.at(i, k);
            if (e.known_zero()) continue;
            ZSeries q = strip(e).divided_by(piv, window);
            for (size_t j = k; j < n; ++j)
                A.at(i, j) = A.at(i, j) - q * A.at(k, j);
        }
        for (size_t j = k + 1; j < n; ++j) {
            const ZSeries& e = A.at(k, j);
            if (e.known_zero()) continue;
            ZSeries q = strip(e).divided_by(piv, window);
            for (size_t i = k; i < n; ++i)
                A.at(i, j) = A.at(i, j) - A.at(i, k) * q;
        }
        s.push_back(best);
        consumed += best;
        ++k;
    }
    if (consumed != expected)
        throw InternalError("elementary divisor orders do not sum to the determinant order");
    return s;
}

struct HodgeCore {
    HodgePinkData hp;
    ResidueMap rm;
    std::vector<RedPoly> red;   // reduced entries of T, row-major
    Mat<ZSeries> W;             // T recentered at w = z - zeta
    int64_t det_ord_w = 0;
};

HodgeCore hodge_core(const LocalShtuka& S) {
    HodgeCore core{HodgePinkData{}, residue_map(S), {}, series_mat(S.rank, S.R), 0};
    uint32_t r = S.rank;

    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) core.red.push_back(core.rm.apply(S.T.at(i, j)));

    // Newton slope from the special fibre.
    ZSeries det = series_det(S.T);
    RedPoly det_red = core.rm.apply(det);
    int64_t o = red_ord(core.rm.tw, det_red);
    if (o < 0) {
        if (!det.exact)
            throw PrecisionError("reduced determinant vanishes to working precision");
        throw InputError("shtuka is degenerate: determinant reduces to zero");
    }
    core.hp.t_N = o - S.denom * int64_t(r);

    // Hodge side: recenter at z = zeta and read off elementary divisors.
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) {
            const ZSeries& e = S.T.at(i, j);
            if (core.rm.identity && S.R->is_zero(S.zeta)) {
                core.W.at(i, j) = e;
            } else {
                core.W.at(i, j) = e.recentered(S.zeta);
            }
        }
    ZSeries detw = series_det(core.W);
    core.det_ord_w = detw.ord();
    std::vector<int64_t> s = snf_orders(core.W, core.det_ord_w);
    for (int64_t si : s) core.hp.mu.push_back(S.denom - si);
    int64_t sum = 0;
    for (int64_t m : core.hp.mu) sum += m;
    core.hp.t_H = -sum;
    return core;
}

// mu of the intersection of q_D with the coordinate line e_idx, for rank 2.
// q_D = w^denom T^{-1} p_D; the generator order falls out of the adjugate.
int64_t line_mu(const LocalShtuka& S, const Mat<ZSeries>& W, size_t idx) {
    auto ord_of = [&](const ZSeries& e) -> int64_t {
        if (e.known_zero()) return -1;
        return e.ord();
    };
    int64_t a, b;
    if (idx == 0) {
        a = ord_of(W.at(1, 0));
        b = ord_of(W.at(0, 0));
    } else {
        a = ord_of(W.at(0, 1));
        b = ord_of(W.at(1, 1));
    }
    if (a < 0 && b < 0) throw InternalError("degenerate column in lattice computation");
    int64_t m = (a < 0) ? b : (b < 0 ? a : std::min(a, b));
    return S.denom - m;
}

bool red_is_zero(const RedPoly& g) { return g.empty(); }

}  // namespace

HodgePinkData hodge_pink(const LocalShtuka& S) {
    HodgeCore core = hodge_core(S);
    std::string why;
    core.hp.weak = weakly_admissible_rank2(S, &why);
    core.hp.note = why;
    return core.hp;
}

Admissibility weakly_admissible_rank2(const LocalShtuka& S, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return Admissibility::NotAdmissible;
    };
    if (S.rank > 2) throw InputError("weak admissibility is only decided for rank <= 2");
    HodgeCore core = hodge_core(S);
    const HodgePinkData& hp = core.hp;
    if (S.rank <= 1) {
        if (hp.t_H != hp.t_N) return fail("t_H != t_N");
        if (why) *why = "";
        return Admissibility::Admissible;
    }
    if (hp.t_H != hp.t_N) return fail("t_H = " + std::to_string(hp.t_H) +
                                      " differs from t_N = " + std::to_string(hp.t_N));

    const FieldTower* tw = core.rm.tw;
    const RedPoly &ra = core.red[0], &rb = core.red[1], &rc = core.red[2], &rd = core.red[3];
    bool upper = red_is_zero(rc), lower = red_is_zero(rb);

    auto line_check = [&](size_t idx, const RedPoly& diag) -> bool {
        // t_H(line) <= t_N(line) for the coordinate line e_idx
        int64_t tn = red_ord(tw, diag) - S.denom;
        int64_t th = -line_mu(S, core.W, idx);
        return th <= tn;
    };

    if (upper && lower) {
        // reduced tau is diagonal; e_1 and e_2 are stable
        if (!line_check(0, ra)) return fail("stable line e1 violates t_H <= t_N");
        if (!line_check(1, rd)) return fail("stable line e2 violates t_H <= t_N");
        // a scalar isocrystal has more stable lines; the worst of them sees
        // the smaller elementary divisor, which the two axis checks already
        // bound on either side
        if (ra == rd && !hp.mu.empty()) {
            int64_t ord_a = red_ord(tw, ra);
            if (-hp.mu.back() > ord_a - S.denom)
                return fail("a stable line sees mu_min and violates t_H <= t_N");
        }
        if (why) *why = "";
        return Admissibility::Admissible;
    }
    if (upper || lower) {
        size_t evident = upper ? 0 : 1;
        const RedPoly& ev_diag = upper ? ra : rd;
        const RedPoly& other_diag = upper ? rd : ra;
        if (!line_check(evident, ev_diag))
            return fail("the evident stable line violates t_H <= t_N");
        // Second stable line: x = b/(d-a) (resp. its mirror) must lie in
        // k[z]; otherwise we cannot certify it exactly.
        Poly pa(tw, core.rm.klevel, ra), pb(tw, core.rm.klevel, upper ? rb : rc);
        Poly pd(tw, core.rm.klevel, other_diag);
        Poly diff = pd - pa;
        if (diff.is_zero()) {
            if (why) *why = "repeated diagonal with nilpotent part: line search undecided";
            return Admissibility::Undecided;
        }
        Poly q, rem;
        pb.divrem(diff, q, rem);
        if (!rem.is_zero()) {
            if (why) *why = "second stable line has non-polynomial coordinates";
            return Admissibility::Undecided;
        }
        // Change basis so the second line becomes a coordinate axis; only the
        // lattice columns move.
        std::vector<KElem> xl;
        for (const auto& ce : q.c) {
            if (core.rm.klevel != 1)
                throw InputError("line certification needs a degree-one place");
            xl.push_back(S.R->from_base(ce));
        }
        ZSeries x = ZSeries::poly(S.R, xl).recentered(S.zeta);
        Mat<ZSeries> WU = core.W;
        if (upper) {
            // columns: col2 += x * col1
            for (size_t i = 0; i < 2; ++i) WU.at(i, 1) = WU.at(i, 1) + x * WU.at(i, 0);
        } else {
            for (size_t i = 0; i < 2; ++i) WU.at(i, 0) = WU.at(i, 0) + x * WU.at(i, 1);
        }
        int64_t tn2 = red_ord(tw, other_diag) - S.denom;
        int64_t th2 = -line_mu(S, WU, upper ? 1 : 0);
        if (th2 > tn2) return fail("second stable line violates t_H <= t_N");
        if (why) *why = "";
        return Admissibility::Admissible;
    }
    if (why) *why = "reduced tau is not triangular: stable-line search undecided";
    return Admissibility::Undecided;
}

Admissibility weakly_admissible_rank2(const RawHodgePink& D, std::string* why) {
    if (D.tau_ord.size() != D.mu.size())
        throw InputError("Newton and Hodge data have different ranks");
    if (D.tau_ord.size() > 2) throw InputError("weak admissibility is only decided for rank <= 2");
    int64_t tN = 0, tH = 0;
    for (int64_t o : D.tau_ord) tN += o;
    for (int64_t m : D.mu) tH -= m;
    if (tH != tN) {
        if (why) *why = "t_H != t_N";
        return Admissibility::NotAdmissible;
    }
    for (size_t i = 0; i < D.tau_ord.size(); ++i)
        if (-D.mu[i] > D.tau_ord[i]) {
            if (why)
                *why = "aligned line " + std::to_string(i + 1) + " violates t_H <= t_N";
            return Admissibility::NotAdmissible;
        }
    if (why) *why = "";
    return Admissibility::Admissible;
}

}  // namespace amot
