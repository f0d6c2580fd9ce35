#pragma once

#include "amot/weights.hpp"

namespace amot {

// One prime of the support of P(1; M), with its multiplicity in the
// numerator. The A-characteristic of the base is always a member; its ord is
// whatever the numerator gives (possibly 0).
struct SupportPrime {
    Poly prime;
    int64_t ord = 0;
    bool is_characteristic = false;
};

// Prime divisors of the numerator of P(1; M) together with the
// A-characteristic, canonically ordered. For any prime ell outside this set
// the Frobenius on the ell-torsion has no nonzero fixed vector, so no
// finite-level torsion is rational over the base.
struct PrimeSupport {
    RationalFunc p_at_one;  // P(1; M) in Q
    std::vector<SupportPrime> primes;
};

// Requires a finite base and nonzero weights. P(1; M) = 0 means a unit root
// is present (integral weight 0) and is rejected.
PrimeSupport prime_support(const AMotiveMatrix& M, uint64_t seed = 0);

// One hypothesis of the finiteness criterion, with a stable name used in
// verdicts and a short note on what was computed.
struct Hypothesis {
    std::string name;
    bool holds = false;
    bool evaluated = true;  // false when an earlier failure blocks the check
    std::string detail;
};

// Hypothesis bundle for finiteness of the p-primary torsion in the z-adic
// tower: odd characteristic, rank two, good reduction at v, the uniformizer
// divisibility condition for z at p, and no integral weights for the
// reduction. The certificate asserts the hypotheses plus the computable
// prime-support bound, never the tower-level conclusion itself.
struct ImaiCertificate {
    std::vector<Hypothesis> checklist;
    bool applies = false;
    std::string failing;  // name of the first failed hypothesis, empty if none
    ReductionVerdict reduction{ReductionKind::Bad, Rat(0), std::nullopt};
    std::string place_note;  // whether v lies over p
    std::optional<CharPoly> charpoly;          // of the reduction at v
    std::optional<WeightVector> weights;       // derived from charpoly
    std::optional<UniformizerCondition> cond;  // for z at p
    std::optional<PrimeSupport> support;       // attached iff applies
};

// G over F_q(theta); v a monic irreducible of F_q[theta]; z a uniformizer at
// p. Hypothesis failures are verdicts, not errors: a z that is not a
// uniformizer at p fails the condition check by name instead of throwing.
ImaiCertificate imai_check(const DrinfeldModule& G, const Poly& v, const RationalFunc& z,
                           const PrimeOfA& p, uint64_t seed = 0);

// Same checklist for a motive already given over a finite residue field; the
// reduction step is then a non-issue and is recorded as such.
ImaiCertificate imai_check(const AMotiveMatrix& M, const RationalFunc& z, const PrimeOfA& p,
                           uint64_t seed = 0);

// Support of dual(M(G_v)) tensor C^{otimes n} at the reduction G_v.
struct TwistSupport {
    int64_t n = 0;
    std::vector<Rat> twist_weights;  // ascending, one per eigenvalue
    PrimeSupport support;
};

// Twisted support scan over n = 0..n_max for a rank-two G with good
// reduction at v. The union over n bounds the primes at which the mod-ell
// action could still be trivial or a power of the cyclotomic character.
// Twists hitting weight zero are rejected by name (cannot happen for
// rank-two inputs, where the twist weights are n - 1/2). The twists are
// independent; jobs > 1 computes them on that many threads, results in
// n-order either way.
std::vector<TwistSupport> ribet_twist_support(const DrinfeldModule& G, const Poly& v,
                                              int64_t n_max, uint64_t seed = 0,
                                              uint32_t jobs = 1);

// C^{otimes m} + C^{otimes n} over K: rank two, good reduction, integral
// weights {m, n}. The stock instance rejected by the integrality hypothesis.
AMotiveMatrix integral_weight_motive(const AField* K, int64_t m, int64_t n);

// The generic base for the p-th-root construction: F_p(u) with
// gamma(t) = u^p, so u plays the p-th root of theta. Requires q = p.
AField pth_root_base(const FieldTower* tw);

// phi_t = (u + tau)^p over pth_root_base: the Carlitz module of F_p[s],
// s^p = t, restricted to F_p[t]. Rank p, good reduction, and every z-power
// torsion point is fixed once its p-th power is; the stock instance rejected
// by the rank-two hypothesis. K must come from pth_root_base.
DrinfeldModule carlitz_root_restriction(const AField* K);

// Exhaustive check of the mechanism behind carlitz_root_restriction: for
// every monic a in F_p[t] with deg a <= deg_bound,
//   (i)  coefficient_frobenius(phi_of(a)) = Phi_a symbolically over F_p(u),
//        where phi is the Carlitz module for the root variable u and Phi the
//        one for theta = u^p;
//   (ii) over each specialization u -> gen(F_{p^d}), d <= d_max, the p-power
//        map carries ker(phi_of(a)) bijectively onto ker(Phi_a), both sets
//        enumerated independently in the splitting extension;
//   (iii) every t-torsion point x of the rank-p module found in F_{p^{d m}},
//        m <= 2, satisfies Phi_{t^p}(x^p) = 0.
struct KernelBijectionReport {
    uint32_t p = 0;
    uint32_t deg_bound = 0;
    uint32_t d_max = 0;
    uint64_t identities = 0;    // symbolic identities verified
    uint64_t kernel_pairs = 0;  // kernel set comparisons performed
    uint64_t containments = 0;  // rank-p torsion containment checks
    bool all_hold = false;
    std::vector<std::string> failures;
};

KernelBijectionReport verify_kernel_bijection(uint32_t p, uint32_t deg_bound,
                                              uint32_t d_max = 2, uint64_t seed = 0);

}  // namespace amot
