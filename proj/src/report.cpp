#include "amot/report.hpp"

#include <ostream>

namespace amot {

Json report_envelope(const std::string& command, uint64_t seed) {
    Json j;
    j["schema"] = kReportSchema;
    j["command"] = command;
    j["seed"] = seed;
    return j;
}

Json to_json(const CharPoly& P) {
    Json j;
    j["rank"] = P.degree();
    j["d"] = P.d;
    Json cs = Json::array();
    for (const RationalFunc& c : P.c) cs.push_back(c.to_string());
    j["coefficients"] = cs;  // low degree first, monic
    j["polynomial"] = P.to_string();
    return j;
}

Json to_json(const WeightVector& W) {
    Json j;
    Json ws = Json::array();
    for (const Rat& w : W.w) ws.push_back(to_string(w));
    j["weights"] = ws;
    j["d"] = W.d;
    j["integral"] = !has_no_integral_weights(W);
    return j;
}

Json to_json(const UniformizerCondition& c) {
    Json j;
    j["sum"] = c.sum;
    j["holds"] = c.holds;
    Json away = Json::array();
    for (const SupportTerm& s : c.away) {
        Json e;
        e["prime"] = s.prime.to_string();
        e["degree"] = s.prime.deg();
        e["ord"] = s.ord;
        away.push_back(std::move(e));
    }
    j["away"] = away;
    return j;
}

Json to_json(const PrimeSupport& S) {
    Json j;
    j["p_at_one"] = S.p_at_one.to_string();
    Json ps = Json::array();
    for (const SupportPrime& e : S.primes) {
        Json p;
        p["prime"] = e.prime.to_string();
        p["degree"] = e.prime.deg();
        p["ord"] = e.ord;
        p["characteristic"] = e.is_characteristic;
        ps.push_back(std::move(p));
    }
    j["primes"] = ps;
    return j;
}

Json to_json(const ReductionVerdict& v) {
    Json j;
    switch (v.kind) {
        case ReductionKind::Good: j["kind"] = "good"; break;
        case ReductionKind::PotentiallyGoodOnly: j["kind"] = "potentially-good-only"; break;
        case ReductionKind::Bad: j["kind"] = "bad"; break;
    }
    j["scaling_exponent"] = to_string(v.e);
    if (v.witness) j["witness_coefficient"] = *v.witness;
    return j;
}

Json to_json(const ImaiCertificate& c) {
    Json j;
    j["verdict"] = c.applies ? "APPLIES" : "DOES-NOT-APPLY";
    if (!c.failing.empty()) j["failing_hypothesis"] = c.failing;
    j["scope"] = "certifies the hypotheses and the finite prime-support bound; "
                 "asserts nothing about infinite extensions";
    Json list = Json::array();
    for (const Hypothesis& h : c.checklist) {
        Json e;
        e["name"] = h.name;
        e["holds"] = h.holds;
        e["evaluated"] = h.evaluated;
        e["detail"] = h.detail;
        list.push_back(std::move(e));
    }
    j["checklist"] = list;
    j["place"] = c.place_note;
    j["reduction"] = to_json(c.reduction);
    if (c.charpoly) j["charpoly"] = to_json(*c.charpoly);
    if (c.weights) j["weights"] = to_json(*c.weights);
    if (c.cond) j["condition"] = to_json(*c.cond);
    if (c.support) j["support"] = to_json(*c.support);
    return j;
}

std::string admissibility_name(Admissibility a) {
    switch (a) {
        case Admissibility::Admissible: return "admissible";
        case Admissibility::NotAdmissible: return "not-admissible";
        case Admissibility::Undecided: return "undecided";
    }
    return "undecided";
}

Json to_json(const HodgePinkData& h) {
    Json j;
    j["t_N"] = h.t_N;
    j["t_H"] = h.t_H;
    j["mu"] = h.mu;
    j["weakly_admissible"] = admissibility_name(h.weak);
    if (!h.note.empty()) j["note"] = h.note;
    return j;
}

Json to_json(const TowerCheckReport& r) {
    Json j;
    j["q"] = r.q;
    j["levels"] = r.levels;
    j["layer_degrees"] = r.layer_degrees;
    j["separable_layers"] = r.separable_layers;
    j["recursion_holds"] = r.recursion_holds;
    j["sigma_coefficient_law"] = r.sigma_coefficient_law;
    j["action_is_character"] = r.action_is_character;
    j["ok"] = r.ok();
    return j;
}

Json to_json(const KernelBijectionReport& r) {
    Json j;
    j["p"] = r.p;
    j["deg_bound"] = r.deg_bound;
    j["d_max"] = r.d_max;
    j["identities"] = r.identities;
    j["kernel_pairs"] = r.kernel_pairs;
    j["containments"] = r.containments;
    j["all_hold"] = r.all_hold;
    j["failures"] = r.failures;
    return j;
}

namespace {

Json matrix_json(const Mat<FieldElement>& M, const FieldTower& tw) {
    Json rows = Json::array();
    for (size_t i = 0; i < M.nr; ++i) {
        Json row = Json::array();
        for (size_t jx = 0; jx < M.nc; ++jx) row.push_back(tw.to_string(M.at(i, jx)));
        rows.push_back(std::move(row));
    }
    return rows;
}

void flatten(const Json& j, const std::string& path, std::ostream& os) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            flatten(v, path.empty() ? k : path + "." + k, os);
        return;
    }
    if (j.is_array()) {
        bool scalars = true;
        for (const auto& v : j)
            if (v.is_object() || v.is_array()) scalars = false;
        if (scalars) {
            os << path << " = " << j.dump() << "\n";
            return;
        }
        size_t i = 0;
        for (const auto& v : j) flatten(v, path + "[" + std::to_string(i++) + "]", os);
        return;
    }
    os << path << " = " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
}

}  // namespace

Json to_json(const TorsionModule& tm, const FieldTower& tw) {
    Json j;
    j["a"] = tm.a.to_string();
    j["ext_degree"] = tm.ext_degree;
    j["dimension"] = tm.basis.size();
    j["phi_t"] = matrix_json(tm.phi_t_mat, tw);
    j["frobenius"] = matrix_json(tm.frob_mat, tw);
    return j;
}

void emit_report(const Json& j, const std::string& format, std::ostream& os) {
    if (format == "table") {
        flatten(j, "", os);
        return;
    }
    os << j.dump(2) << "\n";
}

}  // namespace amot
