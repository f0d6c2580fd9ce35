#include "amot/twisted.hpp"

#include <numeric>

#include "amot/detail/polyops.hpp"
#include "amot/kpoly.hpp"

namespace amot {

namespace {
void check_tp(const TwistedPoly& a, const TwistedPoly& b) {
    if (!a.K || !b.K || !a.K->same(*b.K))
        throw InputError("twisted polynomials over different A-fields");
}
}  // namespace

TwistedPoly::TwistedPoly(const AField* k, std::vector<KElem> cs) : K(k), c(std::move(cs)) {
    KFd f{K};
    detail::ptrim(f, c);
}

TwistedPoly TwistedPoly::tau(const AField* k, uint32_t i) {
    std::vector<KElem> v(i + 1, k->zero());
    v[i] = k->one();
    return TwistedPoly(k, std::move(v));
}

KElem TwistedPoly::lead() const {
    if (c.empty()) throw InputError("zero twisted polynomial has no leading coefficient");
    return c.back();
}

TwistedPoly TwistedPoly::operator+(const TwistedPoly& o) const {
    check_tp(*this, o);
    KFd f{K};
    TwistedPoly r(K);
    r.c = detail::padd(f, c, o.c);
    return r;
}

TwistedPoly TwistedPoly::operator-(const TwistedPoly& o) const {
    check_tp(*this, o);
    KFd f{K};
    TwistedPoly r(K);
    r.c = detail::psub(f, c, o.c);
    return r;
}

TwistedPoly TwistedPoly::operator*(const TwistedPoly& o) const {
    check_tp(*this, o);
    if (is_zero() || o.is_zero()) return zero(K);
    std::vector<KElem> out(c.size() + o.c.size() - 1, K->zero());
    for (size_t i = 0; i < c.size(); ++i) {
        if (K->is_zero(c[i])) continue;
        // b^{q^i} for every coefficient b of o, shifted by i
        for (size_t j = 0; j < o.c.size(); ++j) {
            if (K->is_zero(o.c[j])) continue;
            KElem tw = K->frob_q(o.c[j], uint32_t(i));
            out[i + j] = K->add(out[i + j], K->mul(c[i], tw));
        }
    }
    TwistedPoly r(K);
    r.c = std::move(out);
    KFd f{K};
    detail::ptrim(f, r.c);
    return r;
}

TwistedPoly TwistedPoly::operator-() const {
    KFd f{K};
    TwistedPoly r(K);
    r.c = detail::pneg(f, c);
    return r;
}

TwistedPoly TwistedPoly::pow(uint64_t n) const {
    TwistedPoly r = one(K), b = *this;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

bool TwistedPoly::operator==(const TwistedPoly& o) const {
    if (c.size() != o.c.size()) return false;
    for (size_t i = 0; i < c.size(); ++i)
        if (!K->eq(c[i], o.c[i])) return false;
    return true;
}

std::string TwistedPoly::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (size_t i = 0; i < c.size(); ++i) {
        if (K->is_zero(c[i])) continue;
        std::string cs = K->to_string(c[i]);
        bool atom = cs.find('+') == std::string::npos && cs.find('*') == std::string::npos &&
                    cs.find('/') == std::string::npos && cs.find('^') == std::string::npos;
        std::string term;
        if (i == 0) {
            term = atom ? cs : "(" + cs + ")";
        } else {
            std::string v = "T";
            if (i > 1) v += "^" + std::to_string(i);
            if (cs == "1") term = v;
            else term = (atom ? cs : "(" + cs + ")") + "*" + v;
        }
        if (!first) out += " + ";
        out += term;
        first = false;
    }
    return out;
}

TwistedPoly coefficient_frobenius(const TwistedPoly& f) {
    TwistedPoly r(f.K);
    r.c.reserve(f.c.size());
    for (const auto& a : f.c) r.c.push_back(f.K->frob_p(a));
    return r;
}

FieldElement evaluate_additive(const TwistedPoly& f, const FieldElement& x) {
    if (!f.K->is_finite()) throw InputError("additive evaluation needs a finite A-field");
    const FieldTower* tw = f.K->tower();
    uint32_t d = f.K->degree();
    if (x.level % d != 0)
        throw InputError("evaluation point level is not a multiple of the A-field degree");
    FieldElement acc = tw->zero(x.level);
    FieldElement xi = x;
    for (size_t i = 0; i < f.c.size(); ++i) {
        if (!f.K->is_zero(f.c[i]))
            acc = tw->add(acc, tw->mul(tw->embed(f.K->as_fe(f.c[i]), x.level), xi));
        if (i + 1 < f.c.size()) xi = tw->frob_q(xi);
    }
    return acc;
}

Mat<FieldElement> additive_matrix(const TwistedPoly& f, uint32_t L) {
    if (!f.K->is_finite()) throw InputError("additive matrices need a finite A-field");
    const FieldTower* tw = f.K->tower();
    uint32_t d = f.K->degree();
    if (L % d != 0) throw InputError("level is not a multiple of the A-field degree");
    if (f.is_zero()) return Mat<FieldElement>(L, L, tw->zero(1));

    LevelField f1{tw, 1};
    // Frobenius matrix of x -> x^q on the level in the F_q-basis {1, y, ...}.
    Mat<FieldElement> Phi(L, L, tw->zero(1));
    {
        auto raw = tw->frobenius_matrix(L);
        Phi.a = std::move(raw);
    }
    auto mul_matrix = [&](const FieldElement& cc) {
        Mat<FieldElement> M(L, L, tw->zero(1));
        FieldElement v = cc;
        for (uint32_t j = 0; j < L; ++j) {
            auto col = fq_coords(*tw, v);
            for (uint32_t i = 0; i < L; ++i) M.at(i, j) = col[i];
            if (j + 1 < L) v = tw->mul(v, tw->gen(L));
        }
        return M;
    };

    Mat<FieldElement> acc(L, L, tw->zero(1));
    Mat<FieldElement> P = mat_identity(f1, L);
    for (size_t i = 0; i < f.c.size(); ++i) {
        if (!f.K->is_zero(f.c[i])) {
            FieldElement ci = tw->embed(f.K->as_fe(f.c[i]), L);
            Mat<FieldElement> term = mat_mul(f1, mul_matrix(ci), P);
            for (size_t k = 0; k < acc.a.size(); ++k) acc.a[k] = tw->add(acc.a[k], term.a[k]);
        }
        if (i + 1 < f.c.size()) P = mat_mul(f1, Phi, P);
    }
    return acc;
}

std::vector<FieldElement> additive_kernel(const TwistedPoly& f, uint32_t m) {
    if (f.is_zero()) throw InputError("kernel of the zero map is everything");
    const FieldTower* tw = f.K->tower();
    uint32_t L = f.K->degree() * m;
    auto M = additive_matrix(f, L);
    LevelField f1{tw, 1};
    auto ns = nullspace(f1, M);
    std::vector<FieldElement> basis;
    basis.reserve(ns.size());
    for (auto& v : ns) basis.push_back(from_fq_coords(*tw, v));
    return basis;
}

FullKernel full_additive_kernel(const TwistedPoly& f, uint32_t level_cap) {
    if (f.is_zero()) throw InputError("kernel of the zero map is everything");
    if (!f.K->is_finite()) throw InputError("kernel search needs a finite A-field");
    const FieldTower* tw = f.K->tower();
    uint32_t d = f.K->degree();

    size_t s = 0;
    while (s < f.c.size() && f.K->is_zero(f.c[s])) ++s;
    int sep_dim = f.deg() - int(s);
    if (sep_dim == 0) return FullKernel{{}, 1};

    // Separable part as an ordinary polynomial A(X) = sum c_{i+s} X^{q^i};
    // its irreducible factor degrees over K determine the splitting level.
    uint64_t qq = tw->q();
    uint64_t degA = 1;
    for (int i = 0; i < sep_dim; ++i) {
        if (degA > 20000 / qq) throw PrecisionError("additive polynomial degree too large");
        degA *= qq;
    }
    std::vector<FieldElement> ac(size_t(degA) + 1, tw->zero(d));
    uint64_t qi = 1;
    for (size_t i = s; i < f.c.size(); ++i) {
        ac[size_t(qi)] = f.K->as_fe(f.c[i]);
        qi *= qq;
    }
    Poly A(tw, d, std::move(ac));
    uint32_t M0 = 1;
    for (auto& [g, mult] : factor(A / Poly::x(tw, d))) {
        (void)mult;
        M0 = uint32_t(std::lcm<uint64_t>(M0, uint64_t(g.deg())));
    }
    if (uint64_t(d) * M0 > level_cap)
        throw PrecisionError("kernel needs extension level " + std::to_string(uint64_t(d) * M0) +
                             " above the cap " + std::to_string(level_cap));
    auto basis = additive_kernel(f, M0);
    if (int(basis.size()) != sep_dim)
        throw InternalError("kernel dimension mismatch in the splitting extension");
    return FullKernel{std::move(basis), M0};
}

}  // namespace amot
