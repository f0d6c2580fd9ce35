#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "amot/twisted.hpp"

namespace amot {

// A Drinfeld module of rank r, given by phi_t = theta + g_1 tau + ... + g_r tau^r
// with g_r != 0. The action of any a in F_q[t] is recovered by Horner and
// memoized, since the t-image determines the whole homomorphism.
class DrinfeldModule {
public:
    DrinfeldModule(const AField* K, TwistedPoly phi_t);

    static DrinfeldModule carlitz(const AField* K);

    const AField* field() const { return K_; }
    const TwistedPoly& phi_t() const { return phi_t_; }
    uint32_t rank() const { return r_; }
    KElem coefficient(size_t i) const { return phi_t_.coeff(i); }

    TwistedPoly phi_of(const Poly& a) const;

private:
    const AField* K_;
    TwistedPoly phi_t_;
    uint32_t r_;
    struct Cache {
        std::mutex mu;
        std::map<std::string, TwistedPoly> map;
    };
    std::shared_ptr<Cache> cache_;
};

// a-torsion of G inside the minimal extension that contains it, with the
// F_q-linear actions recorded as matrices in the kernel basis.
struct TorsionModule {
    Poly a;                            // monic generator of the torsion ideal
    uint32_t ext_degree = 1;           // kernel lives at tower level dK * ext_degree
    std::vector<FieldElement> basis;   // F_q-basis of the kernel
    Mat<FieldElement> phi_t_mat;       // action of phi_t, entries level 1
    Mat<FieldElement> frob_mat;        // action of x -> x^{q^dK} (the point Frobenius)
};

TorsionModule torsion(const DrinfeldModule& G, const Poly& a, uint32_t level_cap = 256);

// The ell-torsion as a free module over F_ell = F_q[t]/(ell), realized inside
// the tower via the canonical root of ell: both matrices are r x r with
// entries at level deg(ell). `arithmetic` is the q^dK-power point map;
// `geometric` is its inverse, the Galois-side Frobenius whose characteristic
// polynomial matches the dual-motive one.
struct TorsionFrobenius {
    PrimeOfA ell;
    FieldElement t_image;          // canonical root of ell, level deg(ell)
    Mat<FieldElement> arithmetic;
    Mat<FieldElement> geometric;
};

TorsionFrobenius frobenius_on_torsion(const DrinfeldModule& G, const PrimeOfA& ell,
                                      uint32_t level_cap = 256);

enum class ReductionKind { Good, PotentiallyGoodOnly, Bad };

struct ReductionVerdict {
    ReductionKind kind;
    Rat e;                             // scaling exponent; integral iff Good
    std::optional<uint32_t> witness;   // coefficient index that obstructs (Bad)
};

// Reduction analysis of G over F_q(theta) at the finite place v (a monic
// irreducible of F_q[theta]). Conjugating by lambda with v(lambda) = e scales
// g_i by e(q^i - 1); Good needs an integer e making every coefficient
// integral and the leading one a unit.
ReductionVerdict good_reduction_normalize(const DrinfeldModule& G, const Poly& v);

// theta of the residue A-field at v: the image of theta at the canonical root.
FieldElement residue_theta(const DrinfeldModule& G, const Poly& v);

// The reduction of G at a good place v over the supplied residue A-field,
// which must be AField::finite(tw, residue_theta(G, v)).
DrinfeldModule reduce_at(const DrinfeldModule& G, const Poly& v, const AField* Kv);

}  // namespace amot
