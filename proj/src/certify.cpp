#include "amot/certify.hpp"

#include <algorithm>
#include <future>
#include <numeric>

namespace amot {

namespace {

// Support of P(1) for a charpoly already in hand; `ch` is the
// A-characteristic of the residue field the polynomial was computed over.
PrimeSupport support_from_charpoly(const CharPoly& P, const PrimeOfA& ch, uint64_t seed) {
    WeightVector W = weights_of(P);
    for (const Rat& w : W.w)
        if (w == Rat(0)) throw InputError("prime support needs nonzero weights");
    const FieldTower* tw = P.c[0].tower();
    RationalFunc p1 = P.eval(RationalFunc::one(tw));
    if (p1.is_zero()) throw InputError("unit root present: integral weight 0");
    PrimeSupport S;
    S.p_at_one = p1;
    for (const auto& [f, mult] : factor(p1.num, seed))
        S.primes.push_back({f, mult, f == ch.z});
    if (std::none_of(S.primes.begin(), S.primes.end(),
                     [](const SupportPrime& e) { return e.is_characteristic; }))
        S.primes.push_back({ch.z, p1.ord_at(ch.z), true});
    std::sort(S.primes.begin(), S.primes.end(),
              [](const SupportPrime& a, const SupportPrime& b) {
                  return poly_less(a.prime, b.prime);
              });
    return S;
}

Hypothesis odd_characteristic(const FieldTower* tw) {
    return {"p != 2", tw->p() != 2, true, "characteristic " + std::to_string(tw->p())};
}

Hypothesis rank_two(uint32_t r) {
    return {"rank 2", r == 2, true, "rank " + std::to_string(r)};
}

Hypothesis condition_check(const RationalFunc& z, const PrimeOfA& p, ImaiCertificate& cert) {
    Hypothesis h{"uniformizer condition", false, true, ""};
    try {
        UniformizerCondition uc = uniformizer_condition(z, p);
        h.holds = uc.holds;
        h.detail = "S = " + std::to_string(uc.sum) + ", deg p = " + std::to_string(p.degree());
        cert.cond = std::move(uc);
    } catch (const InputError& e) {
        h.detail = e.what();
    }
    return h;
}

// Weight integrality of the reduction, recording the charpoly on the way.
Hypothesis weight_check(const AMotiveMatrix& M, ImaiCertificate& cert) {
    Hypothesis h{"no integral weights", false, true, ""};
    CharPoly P = frobenius_charpoly(M);
    WeightVector W = weights_of(P);
    h.holds = has_no_integral_weights(W);
    std::string ws;
    for (const Rat& w : W.w) ws += (ws.empty() ? "" : ", ") + to_string(w);
    h.detail = "weights {" + ws + "}";
    cert.charpoly = std::move(P);
    cert.weights = std::move(W);
    return h;
}

void finish(ImaiCertificate& cert, const PrimeOfA& ch, uint64_t seed) {
    cert.applies = std::all_of(cert.checklist.begin(), cert.checklist.end(),
                               [](const Hypothesis& h) { return h.holds; });
    for (const Hypothesis& h : cert.checklist)
        if (!h.holds) {
            cert.failing = h.name;
            break;
        }
    if (cert.applies && cert.charpoly)
        cert.support = support_from_charpoly(*cert.charpoly, ch, seed);
}

}  // namespace

PrimeSupport prime_support(const AMotiveMatrix& M, uint64_t seed) {
    if (!M.K->is_finite()) throw InputError("prime support needs a finite base");
    return support_from_charpoly(frobenius_charpoly(M), M.K->characteristic(), seed);
}

ImaiCertificate imai_check(const DrinfeldModule& G, const Poly& v, const RationalFunc& z,
                           const PrimeOfA& p, uint64_t seed) {
    const AField* K = G.field();
    if (K->is_finite()) throw InputError("the finiteness check expects a module over F_q(theta)");
    const FieldTower* tw = K->tower();

    ImaiCertificate cert;
    cert.checklist.push_back(odd_characteristic(tw));
    cert.checklist.push_back(rank_two(G.rank()));

    cert.reduction = good_reduction_normalize(G, v);
    Hypothesis gr{"good reduction", false, true, ""};
    switch (cert.reduction.kind) {
        case ReductionKind::Good:
            gr.holds = true;
            gr.detail = "good model at v, scaling exponent " + to_string(cert.reduction.e);
            break;
        case ReductionKind::PotentiallyGoodOnly:
            gr.detail = "potentially good only: needs ramification for exponent " +
                        to_string(cert.reduction.e);
            break;
        case ReductionKind::Bad:
            gr.detail = "no potentially good model: coefficient " +
                        std::to_string(*cert.reduction.witness) + " obstructs";
            break;
    }
    cert.checklist.push_back(gr);
    cert.checklist.push_back(condition_check(z, p, cert));

    std::optional<PrimeOfA> residue_char;
    if (cert.reduction.kind == ReductionKind::Good) {
        AField Kv = AField::finite(tw, residue_theta(G, v));
        residue_char = Kv.characteristic();
        cert.place_note =
            residue_char->z == p.z ? "v lies over p" : "v away from p";
        AMotiveMatrix M = motive_of_drinfeld(reduce_at(G, v, &Kv));
        cert.checklist.push_back(weight_check(M, cert));
    } else {
        try {
            Poly m = minimal_polynomial(tw, residue_theta(G, v));
            cert.place_note = m == p.z ? "v lies over p" : "v away from p";
        } catch (const std::exception&) {
            cert.place_note = "residue characteristic undetermined at v";
        }
        cert.checklist.push_back(
            {"no integral weights", false, false, "not evaluated: no good model at v"});
    }

    finish(cert, residue_char ? *residue_char : p, seed);
    return cert;
}

ImaiCertificate imai_check(const AMotiveMatrix& M, const RationalFunc& z, const PrimeOfA& p,
                           uint64_t seed) {
    if (!M.K->is_finite()) throw InputError("the finiteness check on a motive needs a finite base");
    const FieldTower* tw = M.K->tower();

    ImaiCertificate cert;
    cert.checklist.push_back(odd_characteristic(tw));
    cert.checklist.push_back(rank_two(M.rank));
    cert.reduction = {ReductionKind::Good, Rat(0), std::nullopt};
    cert.checklist.push_back(
        {"good reduction", true, true, "module given over the residue field"});
    cert.checklist.push_back(condition_check(z, p, cert));
    cert.place_note =
        M.K->characteristic().z == p.z ? "residue field lies over p" : "residue field away from p";
    cert.checklist.push_back(weight_check(M, cert));
    finish(cert, M.K->characteristic(), seed);
    return cert;
}

std::vector<TwistSupport> ribet_twist_support(const DrinfeldModule& G, const Poly& v,
                                              int64_t n_max, uint64_t seed, uint32_t jobs) {
    if (G.field()->is_finite()) throw InputError("the twist scan expects a module over F_q(theta)");
    if (G.rank() != 2) throw InputError("the twist scan is stated for rank two");
    if (n_max < 0) throw InputError("n_max must be nonnegative");
    ReductionVerdict rv = good_reduction_normalize(G, v);
    if (rv.kind != ReductionKind::Good)
        throw InputError("the twist scan needs good reduction at v");

    const FieldTower* tw = G.field()->tower();
    AField Kv = AField::finite(tw, residue_theta(G, v));
    AMotiveMatrix M0 = dual(motive_of_drinfeld(reduce_at(G, v, &Kv)));
    AMotiveMatrix C = carlitz_motive(&Kv);

    std::vector<TwistSupport> out(size_t(n_max) + 1);
    auto work = [&](int64_t n) {
        AMotiveMatrix M = tensor(M0, tensor_power(C, int(n)));
        CharPoly P = frobenius_charpoly(M);
        WeightVector W = weights_of(P);
        for (const Rat& w : W.w)
            if (w == Rat(0))
                throw InputError("degenerate twist n = " + std::to_string(n) +
                                 ": weight zero");
        TwistSupport& ts = out[size_t(n)];
        ts.n = n;
        ts.twist_weights = W.w;
        ts.support = support_from_charpoly(P, Kv.characteristic(), seed);
    };
    uint64_t nthreads = std::min<uint64_t>(jobs == 0 ? 1 : jobs, uint64_t(n_max) + 1);
    if (nthreads <= 1) {
        for (int64_t n = 0; n <= n_max; ++n) work(n);
        return out;
    }
    // Tower caches are mutex-guarded; everything else each task touches is
    // task-local or read-only.
    std::vector<std::future<void>> parts;
    for (uint64_t w = 0; w < nthreads; ++w)
        parts.push_back(std::async(std::launch::async, [&, w] {
            for (int64_t n = int64_t(w); n <= n_max; n += int64_t(nthreads)) work(n);
        }));
    std::exception_ptr first;
    for (auto& part : parts) {
        try {
            part.get();
        } catch (...) {
            if (!first) first = std::current_exception();
        }
    }
    if (first) std::rethrow_exception(first);
    return out;
}

AMotiveMatrix integral_weight_motive(const AField* K, int64_t m, int64_t n) {
    if (m < -64 || m > 64 || n < -64 || n > 64)
        throw InputError("twist exponents out of range");
    AMotiveMatrix C = carlitz_motive(K);
    return direct_sum(tensor_power(C, int(m)), tensor_power(C, int(n)));
}

AField pth_root_base(const FieldTower* tw) {
    if (tw->e() != 1) throw InputError("the p-th-root construction needs q = p");
    return AField::generic_with_theta(tw, RationalFunc::var(tw).pow(tw->p()), "u");
}

DrinfeldModule carlitz_root_restriction(const AField* K) {
    const FieldTower* tw = K->tower();
    if (K->is_finite() || tw->e() != 1 ||
        !(K->as_rat(K->theta()) == RationalFunc::var(tw).pow(tw->p())))
        throw InputError("base must be pth_root_base(tower)");
    TwistedPoly root_carlitz(K, {KElem(RationalFunc::var(tw)), K->one()});
    return DrinfeldModule(K, root_carlitz.pow(tw->p()));
}

namespace {

// Monic level-1 polynomials of exact degree dg, in coefficient encoding order.
std::vector<Poly> monic_polys(const FieldTower* tw, uint32_t dg) {
    std::vector<Poly> out;
    std::vector<int64_t> c(dg + 1, 0);
    c[dg] = 1;
    uint64_t total = 1;
    for (uint32_t i = 0; i < dg; ++i) total *= tw->p();
    for (uint64_t k = 0; k < total; ++k) {
        uint64_t v = k;
        for (uint32_t i = 0; i < dg; ++i) {
            c[i] = int64_t(v % tw->p());
            v /= tw->p();
        }
        out.push_back(Poly::from_ints(tw, c));
    }
    return out;
}

bool same_coefficients(const TwistedPoly& a, const TwistedPoly& b) {
    if (a.c.size() != b.c.size()) return false;
    for (size_t i = 0; i < a.c.size(); ++i)
        if (!(std::get<RationalFunc>(a.c[i]) == std::get<RationalFunc>(b.c[i])))
            return false;
    return true;
}

// All F_p-combinations of the basis, as elements of the given level.
std::vector<FieldElement> span_set(const FieldTower& tw, const std::vector<FieldElement>& basis,
                                   uint32_t level) {
    std::vector<FieldElement> out;
    std::vector<uint32_t> lam(basis.size(), 0);
    for (;;) {
        FieldElement acc = tw.zero(level);
        for (size_t j = 0; j < basis.size(); ++j)
            if (lam[j]) acc = tw.add(acc, tw.mul(tw.from_int(lam[j], level), basis[j]));
        out.push_back(std::move(acc));
        size_t j = 0;
        while (j < basis.size() && ++lam[j] == tw.p()) lam[j++] = 0;
        if (j == basis.size()) break;
    }
    return out;
}

void sort_elements(std::vector<FieldElement>& v) {
    std::sort(v.begin(), v.end(),
              [](const FieldElement& a, const FieldElement& b) { return a.c < b.c; });
}

}  // namespace

KernelBijectionReport verify_kernel_bijection(uint32_t p, uint32_t deg_bound, uint32_t d_max,
                                              uint64_t seed) {
    (void)seed;
    FieldTower tw(p, 1);
    if (deg_bound > 4 || d_max > 3) throw InputError("kernel enumeration bound too large");

    KernelBijectionReport rep;
    rep.p = p;
    rep.deg_bound = deg_bound;
    rep.d_max = d_max;

    std::vector<Poly> as;
    for (uint32_t dg = 0; dg <= deg_bound; ++dg)
        for (Poly& a : monic_polys(&tw, dg)) as.push_back(std::move(a));

    // Symbolic identity over F_p(u): the coefficient Frobenius carries the
    // Carlitz action of the root variable to the Carlitz action of theta.
    AField Ku = AField::generic(&tw, "u");
    AField K = pth_root_base(&tw);
    DrinfeldModule root_module = DrinfeldModule::carlitz(&Ku);
    DrinfeldModule theta_module = DrinfeldModule::carlitz(&K);
    for (const Poly& a : as) {
        TwistedPoly lhs = coefficient_frobenius(root_module.phi_of(a));
        TwistedPoly rhs = theta_module.phi_of(a);
        if (same_coefficients(lhs, rhs))
            ++rep.identities;
        else
            rep.failures.push_back("identity fails at a = " + a.to_string());
    }

    for (uint32_t d = 1; d <= d_max; ++d) {
        FieldElement u = d == 1 ? tw.from_int(1, 1) : tw.gen(d);
        AField Kud = AField::finite(&tw, u);
        AField Kd = AField::finite(&tw, tw.pow(u, p));
        DrinfeldModule root_d = DrinfeldModule::carlitz(&Kud);
        DrinfeldModule theta_d = DrinfeldModule::carlitz(&Kd);

        // Kernel sets of phi_a for the root module and of Phi_a, compared
        // through the p-power map inside a common extension.
        for (const Poly& a : as) {
            if (a.deg() < 1) continue;
            FullKernel k1 = full_additive_kernel(root_d.phi_of(a));
            FullKernel k2 = full_additive_kernel(theta_d.phi_of(a));
            uint32_t L = std::lcm(d * k1.ext_degree, d * k2.ext_degree);
            std::vector<FieldElement> S1 = span_set(tw, k1.basis, d * k1.ext_degree);
            std::vector<FieldElement> S2 = span_set(tw, k2.basis, d * k2.ext_degree);
            std::vector<FieldElement> image;
            for (const FieldElement& x : S1)
                image.push_back(tw.pow(tw.embed(x, L), p));
            for (FieldElement& y : S2) y = tw.embed(y, L);
            sort_elements(image);
            sort_elements(S2);
            if (image == S2)
                ++rep.kernel_pairs;
            else
                rep.failures.push_back("kernel bijection fails at a = " + a.to_string() +
                                       ", d = " + std::to_string(d));
        }

        // Rank-p mechanism: a t-torsion point of (u + tau)^p found in any
        // small extension has its p-th power killed by Phi_{t^p}.
        TwistedPoly rank_p(&Kd, {KElem(u), Kd.one()});
        TwistedPoly phi_t = rank_p.pow(p);
        TwistedPoly big = theta_d.phi_of(Poly::x(&tw).pow(p));
        for (uint32_t m = 1; m <= 2; ++m) {
            uint32_t L = d * m;
            uint64_t count = 1;
            for (uint32_t i = 0; i < L; ++i) count *= p;
            std::vector<uint32_t> coords(L, 0);
            for (uint64_t k = 0; k < count; ++k) {
                uint64_t v = k;
                for (uint32_t i = 0; i < L; ++i) {
                    coords[i] = uint32_t(v % p);
                    v /= p;
                }
                FieldElement x{L, coords};
                if (!tw.is_zero(evaluate_additive(phi_t, x))) continue;
                ++rep.containments;
                if (!tw.is_zero(evaluate_additive(big, tw.pow(x, p))))
                    rep.failures.push_back("containment fails at d = " + std::to_string(d) +
                                           ", level " + std::to_string(L));
            }
        }
    }

    rep.all_hold = rep.failures.empty();
    return rep;
}

}  // namespace amot
