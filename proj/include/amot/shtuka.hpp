#pragma once

#include <cstdint>
#include <vector>

#include "amot/motive.hpp"

namespace amot {

// Truncated power series over an A-field. Coefficients c[0..size) are exact;
// `exact` means every higher coefficient is zero (the series is the listed
// polynomial), otherwise coefficients at index >= prec are unknown.
struct ZSeries {
    const AField* K = nullptr;
    std::vector<KElem> c;  // low-first, trimmed only when exact
    uint32_t prec = 0;     // meaningful when !exact
    bool exact = true;

    static ZSeries zero(const AField* K);
    static ZSeries one(const AField* K);
    static ZSeries poly(const AField* K, std::vector<KElem> cs);
    // num/den expanded to `prec` terms; den must be a unit (nonzero constant
    // term). Exact when den is constant.
    static ZSeries from_ratio(const AField* K, const std::vector<KElem>& num,
                              const std::vector<KElem>& den, uint32_t prec);

    // Number of known coefficients; exact series know all of them.
    uint32_t known() const { return exact ? UINT32_MAX : prec; }
    KElem at(size_t i) const;
    bool known_zero() const;  // exact and all coefficients zero

    ZSeries operator+(const ZSeries& o) const;
    ZSeries operator-(const ZSeries& o) const;
    ZSeries operator*(const ZSeries& o) const;
    ZSeries operator-() const;
    ZSeries scaled(const KElem& s) const;
    ZSeries shifted(uint32_t k) const;  // multiply by z^k
    // Quotient to `prec` known terms; o must have unit constant term.
    ZSeries divided_by(const ZSeries& o, uint32_t prec) const;

    // Index of the first nonzero coefficient. Throws PrecisionError when all
    // known coefficients vanish but the tail is unknown.
    int64_t ord() const;

    // Coefficientwise q-power Frobenius.
    ZSeries sigma() const;
    // Exact recentering z -> z + a (only for exact series).
    ZSeries recentered(const KElem& a) const;

    std::string to_string(const std::string& var = "z") const;
};

// Local shtuka at a prime p of A: a free module over R[[z]] with
// tau = T * (z - zeta)^{-denom}, zeta = p(theta) in R. Entries of T are
// series; objects built from effective motives at degree-one primes are
// exact.
struct LocalShtuka {
    const AField* R = nullptr;
    PrimeOfA p;
    uint32_t rank = 0;
    Mat<ZSeries> T;
    int64_t denom = 0;  // >= 0
    KElem zeta;
    uint32_t prec = 16;
};

// Rank-one twist: tau = (z - zeta)^{-n}. Requires prec > |n|.
LocalShtuka one_twist(const AField* R, const PrimeOfA& p, int64_t n, uint32_t prec = 16);

LocalShtuka tensor(const LocalShtuka& a, const LocalShtuka& b);
LocalShtuka direct_sum(const LocalShtuka& a, const LocalShtuka& b);

// Local shtuka of an effective A-motive at p: substitutes t = z + c around
// the canonical root c of p and, for deg p > 1 (finite base only), takes the
// deg-p-fold twisted product on one component of the place decomposition.
// Entries must be p-integral.
LocalShtuka localize_motive(const AMotiveMatrix& M, const PrimeOfA& p, uint32_t prec = 16,
                            bool allow_higher_degree = false);

enum class Admissibility { Admissible, NotAdmissible, Undecided };

// Invariants of the z-isocrystal with Hodge-Pink lattice attached to a local
// shtuka over a generic base: t_N from the special fibre, mu_i from the
// relative position of the tau-preimage lattice at z = zeta.
struct HodgePinkData {
    int64_t t_N = 0;
    int64_t t_H = 0;
    std::vector<int64_t> mu;  // descending, size = rank
    Admissibility weak = Admissibility::Undecided;
    std::string note;  // witness line or reason when not admissible/undecided
};

// Requires a generic base whose theta is the field variable (the residue map
// sends theta to the canonical root of p, hence zeta to 0).
HodgePinkData hodge_pink(const LocalShtuka& S);

// Raw diagonal isocrystal-with-lattice data of rank <= 2: tau_D =
// diag(z^{tau_ord_i}) up to units and the lattice is aligned with the same
// basis, q_D = diag((z-zeta)^{mu_i}). Not every such datum comes from a
// shtuka; this is the shape used to exhibit inadmissible examples.
struct RawHodgePink {
    std::vector<int64_t> tau_ord;
    std::vector<int64_t> mu;
};

Admissibility weakly_admissible_rank2(const LocalShtuka& S, std::string* why = nullptr);
Admissibility weakly_admissible_rank2(const RawHodgePink& D, std::string* why = nullptr);

}  // namespace amot
