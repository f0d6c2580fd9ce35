#include "amot/motive.hpp"

namespace amot {

namespace {

void check_same_field(const AMotiveMatrix& M, const AMotiveMatrix& N) {
    if (!M.K->same(*N.K)) throw InputError("motives over different A-fields");
}

KRat det_of(const AField* K, const Mat<KRat>& T) {
    Mat<KRat> M = T;
    size_t n = M.nr;
    KRat det = KRat::one(K);
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        while (piv < n && M.at(piv, k).is_zero()) ++piv;
        if (piv == n) return KRat::zero(K);
        if (piv != k) {
            for (size_t j = 0; j < n; ++j) std::swap(M.at(k, j), M.at(piv, j));
            det = -det;
        }
        det = det * M.at(k, k);
        KRat inv = M.at(k, k).inv();
        for (size_t i = k + 1; i < n; ++i) {
            if (M.at(i, k).is_zero()) continue;
            KRat c = M.at(i, k) * inv;
            for (size_t j = k; j < n; ++j) M.at(i, j) = M.at(i, j) - c * M.at(k, j);
        }
    }
    return det;
}

}  // namespace

AMotiveMatrix make_motive(const AField* K, Mat<KRat> T) {
    if (T.nr != T.nc || T.nr == 0) throw InputError("motive matrix must be square and nonempty");
    AMotiveMatrix M;
    M.K = K;
    M.rank = uint32_t(T.nr);
    M.det = det_of(K, T);
    if (M.det.is_zero()) throw InputError("motive matrix is singular");
    M.effective = true;
    for (const auto& entry : T.a)
        if (!entry.is_polynomial()) M.effective = false;
    if (M.effective) {
        KPoly tm = KPoly::t(K) - KPoly::constant(K, K->theta());
        M.dim = M.det.ord_at(tm);
    }
    M.T = std::move(T);
    return M;
}

AMotiveMatrix motive_of_drinfeld(const DrinfeldModule& G) {
    const AField* K = G.field();
    uint32_t r = G.rank();
    Mat<KRat> T(r, r, KRat::zero(K));
    for (uint32_t j = 0; j + 1 < r; ++j) T.at(j + 1, j) = KRat::one(K);
    KElem glead_inv = K->inv(G.coefficient(r));
    KPoly tm = KPoly::t(K) - KPoly::constant(K, K->theta());
    T.at(0, r - 1) = KRat(tm.scaled(glead_inv));
    for (uint32_t i = 1; i < r; ++i) {
        KElem gi = G.coefficient(i);
        if (K->is_zero(gi)) continue;
        T.at(i, r - 1) = KRat(KPoly::constant(K, K->neg(K->mul(glead_inv, gi))));
    }
    return make_motive(K, std::move(T));
}

AMotiveMatrix unit_motive(const AField* K) {
    Mat<KRat> T(1, 1, KRat::one(K));
    return make_motive(K, std::move(T));
}

AMotiveMatrix carlitz_motive(const AField* K) {
    KPoly tm = KPoly::t(K) - KPoly::constant(K, K->theta());
    Mat<KRat> T(1, 1, KRat(tm));
    return make_motive(K, std::move(T));
}

AMotiveMatrix direct_sum(const AMotiveMatrix& M, const AMotiveMatrix& N) {
    check_same_field(M, N);
    uint32_t r = M.rank + N.rank;
    Mat<KRat> T(r, r, KRat::zero(M.K));
    for (uint32_t i = 0; i < M.rank; ++i)
        for (uint32_t j = 0; j < M.rank; ++j) T.at(i, j) = M.T.at(i, j);
    for (uint32_t i = 0; i < N.rank; ++i)
        for (uint32_t j = 0; j < N.rank; ++j) T.at(M.rank + i, M.rank + j) = N.T.at(i, j);
    return make_motive(M.K, std::move(T));
}

AMotiveMatrix tensor(const AMotiveMatrix& M, const AMotiveMatrix& N) {
    check_same_field(M, N);
    uint32_t r = M.rank * N.rank;
    Mat<KRat> T(r, r, KRat::zero(M.K));
    for (uint32_t i = 0; i < M.rank; ++i)
        for (uint32_t j = 0; j < M.rank; ++j) {
            if (M.T.at(i, j).is_zero()) continue;
            for (uint32_t k = 0; k < N.rank; ++k)
                for (uint32_t l = 0; l < N.rank; ++l)
                    T.at(i * N.rank + k, j * N.rank + l) = M.T.at(i, j) * N.T.at(k, l);
        }
    return make_motive(M.K, std::move(T));
}

AMotiveMatrix dual(const AMotiveMatrix& M) {
    KRatFd f{M.K};
    auto inv = mat_inverse(f, M.T);
    if (!inv) throw InputError("dual of a singular motive matrix");
    Mat<KRat> T(M.rank, M.rank, KRat::zero(M.K));
    for (uint32_t i = 0; i < M.rank; ++i)
        for (uint32_t j = 0; j < M.rank; ++j) T.at(i, j) = inv->at(j, i);
    return make_motive(M.K, std::move(T));
}

AMotiveMatrix tensor_power(const AMotiveMatrix& M, int n) {
    if (n == 0) return unit_motive(M.K);
    AMotiveMatrix base = n > 0 ? M : dual(M);
    int k = n > 0 ? n : -n;
    AMotiveMatrix acc = base;
    for (int i = 1; i < k; ++i) acc = tensor(acc, base);
    return acc;
}

// ---- characteristic polynomial ------------------------------------------

namespace {

// Polynomials in X over K[t], low-first and trimmed.
using XPoly = std::vector<KPoly>;

void xtrim(XPoly& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

XPoly xsub(const XPoly& a, const XPoly& b) {
    XPoly r = a;
    if (b.size() > r.size()) r.resize(b.size(), KPoly::zero(b[0].K));
    for (size_t i = 0; i < b.size(); ++i) r[i] = r[i] - b[i];
    xtrim(r);
    return r;
}

XPoly xmul(const XPoly& a, const XPoly& b, const AField* K) {
    if (a.empty() || b.empty()) return {};
    XPoly r(a.size() + b.size() - 1, KPoly::zero(K));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    }
    xtrim(r);
    return r;
}

KPoly kp_exact_div(const KPoly& a, const KPoly& b) {
    KPoly q, r;
    a.divrem(b, q, r);
    if (!r.is_zero()) throw InternalError("fraction-free elimination: inexact division");
    return q;
}

// Exact division in K[t][X]; the quotient is known to exist.
XPoly xdiv_exact(XPoly a, const XPoly& b, const AField* K) {
    if (b.empty()) throw InternalError("fraction-free elimination: division by zero");
    if (a.empty()) return {};
    if (a.size() < b.size()) throw InternalError("fraction-free elimination: inexact division");
    XPoly q(a.size() - b.size() + 1, KPoly::zero(K));
    for (size_t shift = q.size(); shift-- > 0;) {
        size_t k = shift + b.size() - 1;
        if (a[k].is_zero()) continue;
        KPoly c = kp_exact_div(a[k], b.back());
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] = a[shift + i] - c * b[i];
    }
    xtrim(a);
    if (!a.empty()) throw InternalError("fraction-free elimination: nonzero remainder");
    return q;
}

// Bareiss determinant of a matrix over K[t][X].
XPoly bareiss_det(std::vector<std::vector<XPoly>> M, const AField* K) {
    size_t n = M.size();
    XPoly prev{KPoly::one(K)};
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (M[k][k].empty()) {
            size_t piv = k + 1;
            while (piv < n && M[piv][k].empty()) ++piv;
            if (piv == n) return {};
            std::swap(M[k], M[piv]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                XPoly num = xsub(xmul(M[k][k], M[i][j], K), xmul(M[i][k], M[k][j], K));
                M[i][j] = xdiv_exact(std::move(num), prev, K);
            }
            M[i][k] = {};
        }
        prev = M[k][k];
    }
    XPoly det = M[n - 1][n - 1];
    if (sign < 0)
        for (auto& c : det) c = -c;
    return det;
}

// F_q constant inside K, as a level-1 element; nullopt when not constant.
std::optional<FieldElement> descend_constant(const AField* K, const KElem& a) {
    if (!K->eq(K->frob_q(a), a)) return std::nullopt;
    const FieldElement& fe = K->as_fe(a);
    auto coords = fq_coords(*K->tower(), fe);
    for (size_t i = 1; i < coords.size(); ++i)
        if (!K->tower()->is_zero(coords[i])) return std::nullopt;
    return coords[0];
}

Poly descend_poly(const AField* K, const KPoly& f) {
    std::vector<FieldElement> cs;
    cs.reserve(f.c.size());
    for (const auto& a : f.c) {
        auto c0 = descend_constant(K, a);
        if (!c0)
            throw InternalError(
                "charpoly coefficient is not Frobenius-invariant; convention bug");
        cs.push_back(*c0);
    }
    return Poly(K->tower(), 1, std::move(cs));
}

}  // namespace

CharPoly frobenius_charpoly(const AMotiveMatrix& M) {
    const AField* K = M.K;
    if (!K->is_finite()) throw InputError("Frobenius characteristic polynomial needs a finite A-field");
    uint32_t d = K->degree();
    uint32_t r = M.rank;
    KRatFd f{K};

    Mat<KRat> prod = M.T;
    Mat<KRat> twisted = M.T;
    for (uint32_t s = 1; s < d; ++s) {
        for (auto& e : twisted.a) e = e.sigma();
        prod = mat_mul(f, prod, twisted);
    }

    // Clear denominators: prod = B / D entrywise with D the lcm.
    KPoly D = KPoly::one(K);
    for (const auto& e : prod.a) {
        KPoly g = D.gcd(e.den);
        D = D * (e.den / g);
    }
    D = D.monic();
    std::vector<std::vector<XPoly>> B(r, std::vector<XPoly>(r));
    for (uint32_t i = 0; i < r; ++i)
        for (uint32_t j = 0; j < r; ++j) {
            const KRat& e = prod.at(i, j);
            XPoly cell;
            if (!e.is_zero()) cell = XPoly{-(e.num * (D / e.den))};
            if (i == j) {
                cell.resize(2, KPoly::zero(K));
                cell[1] = D;  // X * D on the diagonal
            }
            xtrim(cell);
            B[i][j] = std::move(cell);
        }
    XPoly N = bareiss_det(std::move(B), K);
    if (N.size() != size_t(r) + 1)
        throw InternalError("characteristic polynomial has wrong degree");

    KPoly Dr = D.pow(r);
    CharPoly P;
    P.d = d;
    P.c.reserve(r + 1);
    for (auto& Ni : N) {
        KRat coeff(Ni, Dr);
        Poly num = descend_poly(K, coeff.num);
        Poly den = descend_poly(K, coeff.den);
        P.c.push_back(RationalFunc(std::move(num), std::move(den)));
    }
    if (!P.c.back().is_polynomial() || P.c.back().num.deg() != 0 ||
        !K->tower()->eq(P.c.back().num.c[0], K->tower()->one(1)))
        throw InternalError("characteristic polynomial is not monic");
    return P;
}

RationalFunc CharPoly::eval(const RationalFunc& x) const {
    RationalFunc r = RationalFunc::zero(x.tower());
    for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
}

std::string CharPoly::to_string(const std::string& var) const {
    std::string out;
    bool first = true;
    for (size_t i = c.size(); i-- > 0;) {
        if (c[i].is_zero()) continue;
        std::string cs = c[i].to_string();
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
        if (!first) out += " + ";
        out += term;
        first = false;
    }
    return out.empty() ? "0" : out;
}

CharPoly charpoly_product(const CharPoly& a, const CharPoly& b) {
    if (a.d != b.d) throw InputError("characteristic polynomials at different residue degrees");
    const FieldTower* tw = a.c.back().tower();
    CharPoly r;
    r.d = a.d;
    r.c.assign(a.c.size() + b.c.size() - 1, RationalFunc::zero(tw));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].is_zero()) continue;
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
    }
    return r;
}

std::vector<FieldElement> charpoly_mod(const CharPoly& P, const PrimeOfA& ell) {
    FieldElement rho = canonical_root(ell.z);
    std::vector<FieldElement> out;
    out.reserve(P.c.size());
    for (const auto& coeff : P.c) {
        auto v = coeff.eval(rho);
        if (!v) throw InputError("coefficient denominator vanishes at " + ell.z.to_string());
        out.push_back(*v);
    }
    return out;
}

std::vector<FieldElement> matrix_charpoly(const FieldTower& tw, const Mat<FieldElement>& M,
                                          uint32_t level) {
    LevelField f{&tw, level};
    return charpoly(f, M);
}

}  // namespace amot
