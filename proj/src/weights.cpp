#include "amot/weights.hpp"

namespace amot {

WeightVector weights_of(const CharPoly& P) {
    if (P.c.empty() || P.c[0].is_zero())
        throw InputError("weights need a nonzero constant term: the Frobenius must be invertible");
    std::vector<std::pair<int64_t, Rat>> pts;
    for (size_t i = 0; i < P.c.size(); ++i) {
        if (P.c[i].is_zero()) continue;
        pts.emplace_back(int64_t(i), Rat(P.c[i].ord_infinity()));
    }
    NewtonPolygon hull = lower_hull(std::move(pts));
    WeightVector W;
    W.d = P.d;
    for (const Rat& s : hull.slopes_with_multiplicity()) W.w.push_back(s / Rat(P.d));
    return W;
}

bool has_no_integral_weights(const WeightVector& W) {
    for (const Rat& w : W.w)
        if (w.denominator() == 1) return false;
    return true;
}

UniformizerCondition uniformizer_condition(const RationalFunc& z, const PrimeOfA& p) {
    if (z.level() != 1) throw InputError("uniformizer must lie in the rational function field F_q(t)");
    if (z.ord_at(p.z) != 1)
        throw InputError("not a uniformizer: ord_p(z) = " + std::to_string(z.ord_at(p.z)) +
                         " at p = " + p.z.to_string());
    UniformizerCondition out;
    auto tally = [&](const Poly& part, int sign) {
        for (const auto& [q, mult] : factor(part)) {
            if (q == p.z) continue;
            out.away.push_back({q, int64_t(sign) * mult});
            out.sum += int64_t(q.deg()) * sign * mult;
        }
    };
    tally(z.num, 1);
    tally(z.den, -1);
    out.holds = out.sum % int64_t(p.degree()) == 0;
    return out;
}

Rat weight_of_tate_twist(int64_t n, const PrimeOfA& p, const RationalFunc& z, uint32_t m) {
    if (m == 0) throw InputError("residue extension degree must be positive");
    UniformizerCondition uc = uniformizer_condition(z, p);
    Rat closed = Rat(-n) * (Rat(1) + Rat(uc.sum, p.degree()));

    // Independent route: the twist's Frobenius charpoly is X - z^{-n*m} at
    // residue degree m*deg(p).
    CharPoly P;
    P.d = m * uint32_t(p.degree());
    P.c = {-z.pow(-n * int64_t(m)), RationalFunc::one(z.tower(), z.level())};
    WeightVector W = weights_of(P);
    if (W.w.size() != 1 || W.w[0] != closed)
        throw InternalError("twist weight: closed form and Newton polygon disagree");
    return closed;
}

}  // namespace amot
