#pragma once

// Finite fields F_q, q = p^e, and their extension tower.
//
// The base field is F_p[x]/(f) with f the deterministically chosen lowest
// irreducible of degree e (candidates ordered by their little-endian base-p
// coefficient encoding). Level m of the tower is F_{q^m} = F_q[y]/(T_m) with
// T_m chosen the same way over F_q, so F_q sits inside every level as the
// constant polynomials and embed(1 -> m) is canonical. Embeddings between
// levels a | b send y_a to the smallest root of T_a in level b under the
// element encoding order; they are F_q-algebra maps, so the triangle
// embed(a -> b) . embed(1 -> a) = embed(1 -> b) commutes by construction.

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "amot/common.hpp"

namespace amot {

// Element of some tower level. coeffs has size level*e and stores, block by
// block, the F_q-coordinates (each an F_p-coefficient vector of the base
// field representative). Canonical: no trailing normalization needed, the
// vector length is fixed by the level.
struct FieldElement {
    uint32_t level = 1;
    std::vector<uint32_t> c;

    bool operator==(const FieldElement&) const = default;
};

class FieldTower {
  public:
    // q = p^e; the defining polynomial of the base field is found
    // deterministically, so two towers with equal (p, e) are interchangeable.
    FieldTower(uint32_t p, uint32_t e);

    uint32_t p() const { return p_; }
    uint32_t e() const { return e_; }
    uint64_t q() const { return q_; }
    // Base field defining polynomial over F_p, monic, length e+1.
    const std::vector<uint32_t>& base_defpoly() const { return defpoly_; }
    // Defining polynomial of level m over F_q (blocks of length e), monic.
    std::vector<std::vector<uint32_t>> level_defpoly(uint32_t m) const;

    FieldElement zero(uint32_t level = 1) const;
    FieldElement one(uint32_t level = 1) const;
    FieldElement from_int(int64_t v, uint32_t level = 1) const;
    // Generator of level m over F_q (the class of y); for m = 1 the class of
    // the base generator x.
    FieldElement gen(uint32_t level) const;
    // Base-field generator embedded at the given level.
    FieldElement base_gen(uint32_t level = 1) const;

    bool is_zero(const FieldElement& a) const;
    bool eq(const FieldElement& a, const FieldElement& b) const;
    FieldElement add(const FieldElement& a, const FieldElement& b) const;
    FieldElement sub(const FieldElement& a, const FieldElement& b) const;
    FieldElement neg(const FieldElement& a) const;
    FieldElement mul(const FieldElement& a, const FieldElement& b) const;
    FieldElement inv(const FieldElement& a) const;
    FieldElement pow(const FieldElement& a, uint64_t n) const;
    // x -> x^q, the relative Frobenius over F_q.
    FieldElement frob_q(const FieldElement& a, uint32_t times = 1) const;
    // x -> x^p.
    FieldElement frob_p(const FieldElement& a, uint32_t times = 1) const;
    // Unique p-th root (finite fields are perfect).
    FieldElement pth_root(const FieldElement& a) const;

    // Canonical embedding into a higher level; to_level must be a multiple of
    // a.level. Identity when levels match.
    FieldElement embed(const FieldElement& a, uint32_t to_level) const;
    // Inverse of embed on the image: express a level-dm element as a level-d
    // element if it lies in the embedded subfield. nullopt otherwise.
    std::optional<FieldElement> descend(const FieldElement& a, uint32_t to_level) const;

    // Element <-> index bijection per level (little-endian base-p encoding of
    // the coordinate vector). Used for enumeration and for the canonical
    // "smallest" choice in deterministic searches.
    uint64_t encode(const FieldElement& a) const;
    FieldElement decode(uint64_t idx, uint32_t level) const;
    // True if a precedes b in encoding order.
    bool less(const FieldElement& a, const FieldElement& b) const;

    // Matrix of x -> x^q on level m as an F_q-linear map, row-major m x m with
    // level-1 entries; cached. Column j holds the coordinates of gen^(j*q).
    std::vector<FieldElement> frobenius_matrix(uint32_t m) const;

    std::string to_string(const FieldElement& a) const;

  private:
    struct LevelData {
        // Monic defining polynomial over F_q, blocks of length e, size m+1.
        std::vector<std::vector<uint32_t>> T;
    };

    uint32_t p_, e_;
    uint64_t q_;
    std::vector<uint32_t> defpoly_;

    mutable std::mutex mu_;
    mutable std::map<uint32_t, LevelData> levels_;
    mutable std::map<std::pair<uint32_t, uint32_t>, FieldElement> embed_cache_;
    mutable std::map<uint32_t, std::vector<FieldElement>> frob_cache_;

    const LevelData& level(uint32_t m) const;
    FieldElement embed_gen(uint32_t a, uint32_t b) const;
    void check(const FieldElement& a) const;

    // Base-field block helpers (length-e F_p vectors).
    using Blk = std::vector<uint32_t>;
    Blk bzero() const;
    bool bis_zero(const Blk& a) const;
    Blk badd(const Blk& a, const Blk& b) const;
    Blk bsub(const Blk& a, const Blk& b) const;
    Blk bneg(const Blk& a) const;
    Blk bmul(const Blk& a, const Blk& b) const;
    Blk binv(const Blk& a) const;
    friend struct TowerOps;
};

// Lightweight field handle for generic algorithms over one tower level.
struct LevelField {
    const FieldTower* tw = nullptr;
    uint32_t level = 1;
    using Elem = FieldElement;

    Elem zero() const { return tw->zero(level); }
    Elem one() const { return tw->one(level); }
    Elem add(const Elem& a, const Elem& b) const { return tw->add(a, b); }
    Elem sub(const Elem& a, const Elem& b) const { return tw->sub(a, b); }
    Elem mul(const Elem& a, const Elem& b) const { return tw->mul(a, b); }
    Elem neg(const Elem& a) const { return tw->neg(a); }
    Elem inv(const Elem& a) const { return tw->inv(a); }
    bool is_zero(const Elem& a) const { return tw->is_zero(a); }
    bool eq(const Elem& a, const Elem& b) const { return tw->eq(a, b); }
};

// Coordinates of a level-m element with respect to the F_q-basis
// {1, y, ..., y^{m-1}} of the level, as level-1 elements, and back.
std::vector<FieldElement> fq_coords(const FieldTower& tw, const FieldElement& a);
FieldElement from_fq_coords(const FieldTower& tw, const std::vector<FieldElement>& v);

}  // namespace amot
