#include "amot/drinfeld.hpp"

namespace amot {

DrinfeldModule::DrinfeldModule(const AField* K, TwistedPoly phi_t)
    : K_(K), phi_t_(std::move(phi_t)), cache_(std::make_shared<Cache>()) {
    if (phi_t_.deg() < 1) throw InputError("phi_t must have positive tau-degree");
    if (!K_->eq(phi_t_.coeff(0), K_->theta()))
        throw InputError("constant coefficient of phi_t must equal theta");
    r_ = uint32_t(phi_t_.deg());
}

DrinfeldModule DrinfeldModule::carlitz(const AField* K) {
    return DrinfeldModule(K, TwistedPoly::constant(K, K->theta()) + TwistedPoly::tau(K));
}

TwistedPoly DrinfeldModule::phi_of(const Poly& a) const {
    if (a.level != 1) throw InputError("phi expects level-1 coefficients");
    if (a.is_zero()) return TwistedPoly::zero(K_);
    std::string key = a.to_string();
    {
        std::lock_guard<std::mutex> lk(cache_->mu);
        auto it = cache_->map.find(key);
        if (it != cache_->map.end()) return it->second;
    }
    TwistedPoly r = TwistedPoly::zero(K_);
    for (size_t i = a.c.size(); i-- > 0;) {
        r = r * phi_t_;
        if (!K_->tower()->is_zero(a.c[i]))
            r = r + TwistedPoly::constant(K_, K_->from_base(a.c[i]));
    }
    std::lock_guard<std::mutex> lk(cache_->mu);
    return cache_->map.emplace(std::move(key), std::move(r)).first->second;
}

namespace {

// Coordinates of each vector with respect to the kernel basis, as columns.
Mat<FieldElement> in_basis(const FieldTower* tw, const std::vector<FieldElement>& basis,
                           const std::vector<FieldElement>& vecs) {
    LevelField f1{tw, 1};
    size_t L = basis.empty() ? 0 : fq_coords(*tw, basis[0]).size();
    Mat<FieldElement> B(L, basis.size(), tw->zero(1));
    for (size_t j = 0; j < basis.size(); ++j) {
        auto col = fq_coords(*tw, basis[j]);
        for (size_t i = 0; i < L; ++i) B.at(i, j) = col[i];
    }
    Mat<FieldElement> R(basis.size(), vecs.size(), tw->zero(1));
    for (size_t j = 0; j < vecs.size(); ++j) {
        auto sol = solve(f1, B, fq_coords(*tw, vecs[j]));
        if (!sol) throw InternalError("vector not in the kernel span");
        for (size_t i = 0; i < basis.size(); ++i) R.at(i, j) = (*sol)[i];
    }
    return R;
}

}  // namespace

TorsionModule torsion(const DrinfeldModule& G, const Poly& a, uint32_t level_cap) {
    const AField* K = G.field();
    if (!K->is_finite()) throw InputError("torsion modules need a finite A-field");
    const FieldTower* tw = K->tower();
    if (a.is_zero()) throw InputError("torsion at the zero ideal");
    Poly am = a.monic();
    TorsionModule T;
    T.a = am;
    if (am.deg() == 0) {
        T.phi_t_mat = Mat<FieldElement>(0, 0, tw->zero(1));
        T.frob_mat = T.phi_t_mat;
        return T;
    }
    const Poly& chr = K->characteristic().z;
    if (am.gcd(chr).deg() > 0)
        throw InputError("étale hypothesis violated: " + am.to_string() +
                         " shares a factor with the characteristic " + chr.to_string());

    TwistedPoly f = G.phi_of(am);
    FullKernel full = full_additive_kernel(f, level_cap);
    if (full.basis.size() != size_t(G.rank()) * size_t(am.deg()))
        throw InternalError("torsion kernel has unexpected dimension");
    T.ext_degree = full.ext_degree;
    T.basis = std::move(full.basis);

    uint32_t dK = K->degree();
    std::vector<FieldElement> phi_im, frob_im;
    phi_im.reserve(T.basis.size());
    frob_im.reserve(T.basis.size());
    for (const auto& b : T.basis) {
        phi_im.push_back(evaluate_additive(G.phi_t(), b));
        frob_im.push_back(tw->frob_q(b, dK));
    }
    T.phi_t_mat = in_basis(tw, T.basis, phi_im);
    T.frob_mat = in_basis(tw, T.basis, frob_im);
    return T;
}

TorsionFrobenius frobenius_on_torsion(const DrinfeldModule& G, const PrimeOfA& ell,
                                      uint32_t level_cap) {
    const FieldTower* tw = G.field()->tower();
    TorsionModule T = torsion(G, ell.z, level_cap);
    uint32_t dl = ell.degree();
    size_t n = T.basis.size();
    size_t r = n / dl;
    LevelField f1{tw, 1};
    LevelField fl{tw, dl};

    // Greedy F_ell-basis: each new generator contributes the F_q-columns
    // P^j v, j < deg(ell), where P is the t-action.
    Mat<FieldElement> S(n, 0, tw->zero(1));
    std::vector<size_t> gens;
    size_t have = 0;
    for (size_t cand = 0; cand < n && gens.size() < r; ++cand) {
        Mat<FieldElement> Sx(n, S.nc + 1, tw->zero(1));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < S.nc; ++j) Sx.at(i, j) = S.at(i, j);
        for (size_t i = 0; i < n; ++i) Sx.at(i, S.nc) = (i == cand) ? tw->one(1) : tw->zero(1);
        if (mat_rank(f1, Sx) == have) continue;
        gens.push_back(cand);
        have += dl;
        Mat<FieldElement> S2(n, S.nc + dl, tw->zero(1));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < S.nc; ++j) S2.at(i, j) = S.at(i, j);
        std::vector<FieldElement> v(n, tw->zero(1));
        v[cand] = tw->one(1);
        for (uint32_t j = 0; j < dl; ++j) {
            for (size_t i = 0; i < n; ++i) S2.at(i, S.nc + j) = v[i];
            if (j + 1 < dl) v = mat_vec(f1, T.phi_t_mat, v);
        }
        S = std::move(S2);
        if (mat_rank(f1, S) != have) throw InternalError("torsion is not free over F_ell");
    }
    if (gens.size() != r) throw InternalError("could not span the torsion over F_ell");

    FieldElement rho = canonical_root(ell.z);
    TorsionFrobenius out{ell, rho, Mat<FieldElement>(r, r, tw->zero(dl)),
                         Mat<FieldElement>(r, r, tw->zero(dl))};
    // Precompute powers of the canonical root for reassembling F_ell scalars.
    std::vector<FieldElement> rho_pow{tw->one(dl)};
    for (uint32_t j = 1; j < dl; ++j) rho_pow.push_back(tw->mul(rho_pow.back(), rho));

    for (size_t k = 0; k < r; ++k) {
        std::vector<FieldElement> v(n, tw->zero(1));
        v[gens[k]] = tw->one(1);
        auto w = mat_vec(f1, T.frob_mat, v);
        auto sol = solve(f1, S, w);
        if (!sol) throw InternalError("Frobenius image escapes the torsion span");
        for (size_t m = 0; m < r; ++m) {
            FieldElement entry = tw->zero(dl);
            for (uint32_t j = 0; j < dl; ++j) {
                const FieldElement& alpha = (*sol)[m * dl + j];
                if (!tw->is_zero(alpha))
                    entry = tw->add(entry, tw->mul(tw->embed(alpha, dl), rho_pow[j]));
            }
            out.arithmetic.at(m, k) = entry;
        }
    }
    auto inv = mat_inverse(fl, out.arithmetic);
    if (!inv) throw InternalError("point Frobenius is singular on torsion");
    out.geometric = std::move(*inv);
    return out;
}

ReductionVerdict good_reduction_normalize(const DrinfeldModule& G, const Poly& v) {
    const AField* K = G.field();
    if (K->is_finite()) throw InputError("reduction analysis is for modules over F_q(theta)");
    PrimeOfA place = make_prime(v);
    uint64_t q = K->tower()->q();
    uint32_t r = G.rank();

    RationalFunc lead = K->as_rat(G.coefficient(r));
    int64_t qr1 = 1;
    for (uint32_t i = 0; i < r; ++i) qr1 *= int64_t(q);
    qr1 -= 1;
    Rat e = Rat(-int64_t(lead.ord_at(place.z)), qr1);

    ReductionVerdict verdict{ReductionKind::Good, e, std::nullopt};
    int64_t qi = 1;
    for (uint32_t i = 1; i < r; ++i) {
        qi *= int64_t(q);
        RationalFunc gi = K->as_rat(G.coefficient(i));
        if (gi.is_zero()) continue;
        if (Rat(gi.ord_at(place.z)) + e * Rat(qi - 1) < Rat(0)) {
            verdict.kind = ReductionKind::Bad;
            verdict.witness = i;
            return verdict;
        }
    }
    if (e.denominator() != 1) verdict.kind = ReductionKind::PotentiallyGoodOnly;
    return verdict;
}

FieldElement residue_theta(const DrinfeldModule& G, const Poly& v) {
    const AField* K = G.field();
    if (K->is_finite()) throw InputError("residue fields are for modules over F_q(theta)");
    PrimeOfA place = make_prime(v);
    FieldElement rho = canonical_root(place.z);
    const RationalFunc& th = K->as_rat(K->theta());
    auto val = th.eval(rho);
    if (!val) throw InputError("theta has a pole at this place");
    return *val;
}

DrinfeldModule reduce_at(const DrinfeldModule& G, const Poly& v, const AField* Kv) {
    const AField* K = G.field();
    ReductionVerdict verdict = good_reduction_normalize(G, v);
    if (verdict.kind != ReductionKind::Good)
        throw InputError("no good model at this place (scaling exponent " +
                         to_string(verdict.e) + ")");
    int64_t e = verdict.e.numerator();
    PrimeOfA place = make_prime(v);
    FieldElement rho = canonical_root(place.z);
    if (!Kv->is_finite() || !Kv->tower()->eq(Kv->as_fe(Kv->theta()), residue_theta(G, v)))
        throw InputError("residue A-field does not match residue_theta at this place");

    RationalFunc unif(place.z);
    uint64_t q = K->tower()->q();
    std::vector<KElem> cs;
    int64_t qi = 1;
    for (uint32_t i = 0; i <= G.rank(); ++i) {
        RationalFunc gi = K->as_rat(G.coefficient(i));
        if (!gi.is_zero()) gi = gi * unif.pow(e * (qi - 1));
        auto val = gi.is_zero() ? std::optional<FieldElement>(Kv->tower()->zero(place.degree()))
                                : gi.eval(rho);
        if (!val) throw InternalError("scaled coefficient still has a pole at the place");
        cs.push_back(*val);
        if (qi > int64_t(1) << 50) throw PrecisionError("rank too large for reduction");
        qi *= int64_t(q);
    }
    return DrinfeldModule(Kv, TwistedPoly(Kv, std::move(cs)));
}

}  // namespace amot
