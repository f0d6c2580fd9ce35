#include "amot/newton.hpp"

#include <algorithm>

namespace amot {

NewtonPolygon lower_hull(std::vector<std::pair<int64_t, Rat>> pts) {
    if (pts.empty()) throw InputError("Newton polygon of an empty point set");
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    // Keep the lowest point per abscissa.
    std::vector<std::pair<int64_t, Rat>> uniq;
    for (auto& p : pts)
        if (uniq.empty() || uniq.back().first != p.first) uniq.push_back(p);

    // Monotone-chain lower hull. Cross product in exact rationals.
    std::vector<std::pair<int64_t, Rat>> hull;
    for (auto& p : uniq) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            // (b-a) x (p-a) <= 0 means b is above or on the chord; drop it.
            Rat cross = Rat(b.first - a.first) * (p.second - a.second) -
                        Rat(p.first - a.first) * (b.second - a.second);
            if (cross <= Rat(0)) hull.pop_back();
            else break;
        }
        hull.push_back(p);
    }
    return NewtonPolygon{std::move(hull)};
}

std::vector<std::pair<Rat, int64_t>> NewtonPolygon::segments() const {
    std::vector<std::pair<Rat, int64_t>> out;
    for (size_t i = 1; i < vertices.size(); ++i) {
        int64_t w = vertices[i].first - vertices[i - 1].first;
        Rat slope = (vertices[i].second - vertices[i - 1].second) / Rat(w);
        out.emplace_back(slope, w);
    }
    return out;
}

std::vector<Rat> NewtonPolygon::slopes_with_multiplicity() const {
    std::vector<Rat> out;
    for (auto& [s, w] : segments())
        for (int64_t i = 0; i < w; ++i) out.push_back(s);
    return out;
}

}  // namespace amot
