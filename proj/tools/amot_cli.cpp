// amot: exact arithmetic for Drinfeld modules, A-motives and torsion
// certificates. JSON reports on stdout, diagnostics on stderr.
//
// Exit codes: 0 verdicts (including DOES-NOT-APPLY), 2 input errors,
// 3 precision or resource exhaustion, 1 internal errors.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "amot/config.hpp"
#include "amot/cyclotomic.hpp"
#include "amot/report.hpp"

using namespace amot;

namespace {

struct Global {
    uint64_t seed = 0;
    uint32_t jobs = 1;
    std::string format = "json";
};

void emit(const Global& g, const Json& j) { emit_report(j, g.format, std::cout); }

void merge_into(Json& j, const Json& extra) {
    for (const auto& [k, v] : extra.items()) j[k] = v;
}

struct ParsedField {
    FieldSpec spec;
    std::unique_ptr<FieldTower> tower;
};

// Coefficient-field towers for the A-level subcommands: the named field is
// the whole coefficient field, so GF(q^d) folds into one tower with q^d
// elements at level d.
ParsedField coefficient_field(const std::string& s) {
    ParsedField f;
    f.spec = parse_field_spec(s);
    if (!f.spec.finite)
        throw InputError("this subcommand works over a finite coefficient field");
    f.tower = std::make_unique<FieldTower>(f.spec.p, f.spec.e);
    return f;
}

RealizedModule load_module(const std::string& path, const std::string& field_override) {
    ModuleFile f = read_module_file(path);
    if (!field_override.empty()) f.field = parse_field_spec(field_override);
    return realize(f);
}

bool is_irreducible(const Poly& f, uint64_t seed) {
    if (f.deg() < 1) return false;
    auto fac = factor(f, seed);
    return fac.size() == 1 && fac[0].second == 1;
}

// --- factor ----------------------------------------------------------------

void run_factor(const Global& g, const std::string& expr, const std::string& field) {
    ParsedField f = coefficient_field(field);
    Poly poly = parse_poly(f.tower.get(), expr, "t", f.spec.d);
    auto fac = factor(poly, g.seed);
    Json j = report_envelope("factor", g.seed);
    j["field"] = f.spec.to_string();
    j["input"] = poly.to_string();
    j["unit"] = f.tower->to_string(poly.lead());
    Json arr = Json::array();
    for (const auto& [prime, mult] : fac) {
        Json e;
        e["prime"] = prime.to_string();
        e["degree"] = prime.deg();
        e["multiplicity"] = mult;
        arr.push_back(std::move(e));
    }
    j["factors"] = arr;
    emit(g, j);
}

// --- ord -------------------------------------------------------------------

void run_ord(const Global& g, const std::string& expr, const std::string& field,
             const std::string& at) {
    ParsedField f = coefficient_field(field);
    RationalFunc r = parse_ratfunc(f.tower.get(), expr, "t", f.spec.d);
    if (r.is_zero()) throw InputError("ord of the zero function is undefined");
    Json j = report_envelope("ord", g.seed);
    j["field"] = f.spec.to_string();
    j["input"] = r.to_string();
    if (!at.empty()) {
        if (at == "infinity" || at == "inf") {
            j["at"] = "infinity";
            j["degree"] = 1;
            j["ord"] = r.ord_infinity();
        } else {
            Poly prime = parse_poly(f.tower.get(), at, "t", f.spec.d).monic();
            if (!is_irreducible(prime, g.seed))
                throw InputError("--at wants an irreducible polynomial or 'infinity'");
            j["at"] = prime.to_string();
            j["degree"] = prime.deg();
            j["ord"] = r.ord_at(prime);
        }
        emit(g, j);
        return;
    }
    // No place given: the full support plus infinity and the product sum,
    // which vanishes by the product formula.
    struct Place {
        Poly prime;
        int ord;
    };
    std::vector<Place> places;
    for (const auto& [prime, mult] : factor(r.num, g.seed)) places.push_back({prime, mult});
    for (const auto& [prime, mult] : factor(r.den, g.seed)) places.push_back({prime, -mult});
    std::sort(places.begin(), places.end(),
              [](const Place& a, const Place& b) { return poly_less(a.prime, b.prime); });
    int64_t total = 0;
    Json arr = Json::array();
    for (const Place& pl : places) {
        Json e;
        e["prime"] = pl.prime.to_string();
        e["degree"] = pl.prime.deg();
        e["ord"] = pl.ord;
        arr.push_back(std::move(e));
        total += int64_t(pl.prime.deg()) * pl.ord;
    }
    j["places"] = arr;
    j["infinity"] = r.ord_infinity();
    total += r.ord_infinity();
    j["product_sum"] = total;
    emit(g, j);
}

// --- module-file subcommands -------------------------------------------------

void run_charpoly(const Global& g, const std::string& path, const std::string& field) {
    RealizedModule rm = load_module(path, field);
    CharPoly P = frobenius_charpoly(rm.motive_or_throw());
    Json j = report_envelope("charpoly", g.seed);
    merge_into(j, to_json(P));
    emit(g, j);
}

void run_weights(const Global& g, const std::string& path, const std::string& field) {
    RealizedModule rm = load_module(path, field);
    CharPoly P = frobenius_charpoly(rm.motive_or_throw());
    Json j = report_envelope("weights", g.seed);
    j["charpoly"] = to_json(P);
    merge_into(j, to_json(weights_of(P)));
    emit(g, j);
}

void run_check_condition(const Global& g, const std::string& zs, const std::string& ps,
                         const std::string& field) {
    ParsedField f = coefficient_field(field);
    RationalFunc z = parse_ratfunc(f.tower.get(), zs);
    PrimeOfA p = parse_prime(f.tower.get(), ps);
    Json j = report_envelope("check-condition", g.seed);
    j["z"] = z.to_string();
    j["p"] = p.z.to_string();
    merge_into(j, to_json(uniformizer_condition(z, p)));
    emit(g, j);
}

void run_torsion(const Global& g, const std::string& path, const std::string& field,
                 const std::string& as) {
    RealizedModule rm = load_module(path, field);
    const DrinfeldModule& G = rm.drinfeld_or_throw();
    Poly a = parse_poly(rm.tower.get(), as);
    TorsionModule tm = torsion(G, a);
    Json j = report_envelope("torsion", g.seed);
    merge_into(j, to_json(tm, *rm.tower));
    emit(g, j);
}

void run_good_reduction(const Global& g, const std::string& path, const std::string& field,
                        const std::string& place) {
    RealizedModule rm = load_module(path, field);
    const DrinfeldModule& G = rm.drinfeld_or_throw();
    if (G.field()->is_finite())
        throw InputError("reduction analysis expects a module over F_q(theta)");
    const std::string& var = G.field()->var_name();
    Poly v = parse_poly(rm.tower.get(), place, var);
    ReductionVerdict rv = good_reduction_normalize(G, v);
    Json j = report_envelope("good-reduction", g.seed);
    j["place"] = v.to_string(var);
    merge_into(j, to_json(rv));
    AField Kv = AField::finite(rm.tower.get(), residue_theta(G, v));
    j["residue_characteristic"] = Kv.characteristic().z.to_string();
    j["residue_degree"] = Kv.degree();
    emit(g, j);
}

void run_support(const Global& g, const std::string& path, const std::string& field) {
    RealizedModule rm = load_module(path, field);
    const AMotiveMatrix& M = rm.motive_or_throw();
    CharPoly P = frobenius_charpoly(M);
    Json j = report_envelope("support", g.seed);
    j["charpoly"] = to_json(P);
    j["weights"] = to_json(weights_of(P));
    j["support"] = to_json(prime_support(M, g.seed));
    emit(g, j);
}

void run_shtuka_hp(const Global& g, const std::string& path, const std::string& field,
                   bool have_twist, int64_t twist, const std::string& ps, uint32_t prec) {
    Json j = report_envelope("shtuka-hp", g.seed);
    LocalShtuka S;
    RealizedModule rm;       // keeps the module's tower alive past localize_motive
    ParsedField f;           // same for the --twist path
    std::optional<AField> R;
    if (!path.empty() && have_twist)
        throw InputError("give a module file or --twist, not both");
    if (!path.empty()) {
        rm = load_module(path, field);
        PrimeOfA p = parse_prime(rm.tower.get(), ps);
        S = localize_motive(rm.motive_or_throw(), p, prec);
        j["source"] = path;
    } else if (have_twist) {
        f = coefficient_field(field.empty() ? "GF(3)" : field);
        R = AField::generic(f.tower.get());
        PrimeOfA p = parse_prime(f.tower.get(), ps);
        S = one_twist(&*R, p, twist, prec);
        j["source"] = "one-twist(" + std::to_string(twist) + ")";
    } else {
        throw InputError("shtuka-hp wants a module file or --twist");
    }
    j["p"] = S.p.z.to_string();
    j["rank"] = S.rank;
    j["denom"] = S.denom;
    merge_into(j, to_json(hodge_pink(S)));
    emit(g, j);
}

void run_tower_check(const Global& g, const std::string& field, uint32_t levels) {
    FieldSpec fs = parse_field_spec(field);
    if (!fs.finite) throw InputError("tower-check works over a finite coefficient field");
    FieldTower tw(fs.p, fs.e * fs.d);
    TowerCheckReport r = cyclotomic_tower_check(&tw, levels);
    Json j = report_envelope("tower-check", g.seed);
    j["field"] = fs.to_string();
    merge_into(j, to_json(r));
    emit(g, j);
}

void run_check_imai(const Global& g, const std::string& path, const std::string& field,
                    const std::string& place, const std::string& zs, const std::string& ps) {
    RealizedModule rm = load_module(path, field);
    RationalFunc z = parse_ratfunc(rm.tower.get(), zs);
    PrimeOfA p = parse_prime(rm.tower.get(), ps);
    Json j = report_envelope("check-imai", g.seed);
    j["z"] = z.to_string();
    j["p"] = p.z.to_string();
    ImaiCertificate cert;
    if (rm.drinfeld && !rm.K->is_finite()) {
        if (place.empty())
            throw InputError("check-imai over F_q(theta) needs --place");
        Poly v = parse_poly(rm.tower.get(), place, rm.K->var_name());
        j["place"] = v.to_string(rm.K->var_name());
        cert = imai_check(*rm.drinfeld, v, z, p, g.seed);
    } else {
        if (!place.empty())
            throw InputError("--place applies to a module over F_q(theta)");
        cert = imai_check(rm.motive_or_throw(), z, p, g.seed);
    }
    merge_into(j, to_json(cert));
    emit(g, j);
}

void run_ribet_scan(const Global& g, const std::string& path, const std::string& field,
                    const std::string& place, int64_t n_max) {
    RealizedModule rm = load_module(path, field);
    const DrinfeldModule& G = rm.drinfeld_or_throw();
    if (G.field()->is_finite())
        throw InputError("the twist scan expects a module over F_q(theta)");
    Poly v = parse_poly(rm.tower.get(), place, G.field()->var_name());
    if (n_max < 0) n_max = int64_t(rm.tower->p());
    auto scan = ribet_twist_support(G, v, n_max, g.seed, g.jobs);
    Json j = report_envelope("ribet-scan", g.seed);
    j["place"] = v.to_string(G.field()->var_name());
    j["n_max"] = n_max;
    Json arr = Json::array();
    for (const TwistSupport& ts : scan) {
        Json e;
        e["n"] = ts.n;
        Json ws = Json::array();
        for (const Rat& w : ts.twist_weights) ws.push_back(to_string(w));
        e["twist_weights"] = ws;
        e["support"] = to_json(ts.support);
        arr.push_back(std::move(e));
    }
    j["twists"] = arr;
    emit(g, j);
}

// --- examples ----------------------------------------------------------------

void list_recipes(const Global& g) {
    Json j = report_envelope("examples", g.seed);
    Json arr = Json::array();
    auto add = [&](const char* id, const char* alias, const char* summary) {
        Json e;
        e["id"] = id;
        e["alias"] = alias;
        e["summary"] = summary;
        arr.push_back(std::move(e));
    };
    add("4.5", "integral-weights",
        "rank-two motive C^m + C^n with integral weights {m, n}; the certificate "
        "fails the integrality hypothesis");
    add("4.6", "kernel-bijection",
        "p-th-root coefficient identities and exhaustive torsion-kernel bijection "
        "under x -> x^p");
    add("4.8", "rank-p",
        "restriction of the root Carlitz module: rank p with good reduction; the "
        "certificate fails the rank-two hypothesis");
    j["recipes"] = arr;
    emit(g, j);
}

void run_examples(const Global& g, std::string id, const std::string& field, int64_t m,
                  int64_t n, uint32_t p, uint32_t deg_bound, uint32_t d_max) {
    if (id.empty()) {
        list_recipes(g);
        return;
    }
    if (id == "integral-weights") id = "4.5";
    if (id == "kernel-bijection") id = "4.6";
    if (id == "rank-p") id = "4.8";

    if (id == "4.5") {
        ParsedField f = coefficient_field(field.empty() ? "GF(3)" : field);
        AField K = AField::finite(f.tower.get(), f.tower->from_int(1, 1));
        AMotiveMatrix M = integral_weight_motive(&K, m, n);
        RationalFunc z = RationalFunc::var(f.tower.get());
        PrimeOfA pr = make_prime(Poly::x(f.tower.get()));
        ImaiCertificate cert = imai_check(M, z, pr, g.seed);
        Json j = report_envelope("examples", g.seed);
        j["id"] = "4.5";
        j["alias"] = "integral-weights";
        Json inst;
        inst["field"] = f.spec.to_string();
        inst["theta"] = "1";
        inst["m"] = m;
        inst["n"] = n;
        inst["z"] = "t";
        inst["p"] = "t";
        j["instance"] = inst;
        merge_into(j, to_json(cert));
        emit(g, j);
        return;
    }
    if (id == "4.6") {
        Json j = report_envelope("examples", g.seed);
        j["id"] = "4.6";
        j["alias"] = "kernel-bijection";
        Json inst;
        inst["p"] = p;
        inst["deg_bound"] = deg_bound;
        inst["d_max"] = d_max;
        j["instance"] = inst;
        if (p == 2) {
            j["verdict"] = "DOES-NOT-APPLY";
            j["failing_hypothesis"] = "p != 2";
            emit(g, j);
            return;
        }
        KernelBijectionReport r = verify_kernel_bijection(p, deg_bound, d_max, g.seed);
        j["verdict"] = r.all_hold ? "HOLDS" : "FAILS";
        merge_into(j, to_json(r));
        emit(g, j);
        return;
    }
    if (id == "4.8") {
        FieldTower tw(p, 1);
        AField K = pth_root_base(&tw);
        DrinfeldModule G = carlitz_root_restriction(&K);
        // Place u - 1: residue theta is 1, a unit, so every coefficient stays
        // visibly integral at desk scale.
        Poly v = Poly::from_ints(&tw, {int64_t(p) - 1, 1});
        RationalFunc z = RationalFunc::var(&tw);
        PrimeOfA pr = make_prime(Poly::x(&tw));
        ImaiCertificate cert = imai_check(G, v, z, pr, g.seed);
        Json j = report_envelope("examples", g.seed);
        j["id"] = "4.8";
        j["alias"] = "rank-p";
        Json inst;
        inst["p"] = p;
        inst["phi_t"] = G.phi_t().to_string();
        inst["place"] = v.to_string("u");
        inst["z"] = "t";
        inst["p_prime"] = "t";
        j["instance"] = inst;
        j["rank"] = G.rank();
        merge_into(j, to_json(cert));
        emit(g, j);
        return;
    }
    throw InputError("unknown recipe '" + id +
                     "'; known: 4.5 (integral-weights), 4.6 (kernel-bijection), "
                     "4.8 (rank-p)");
}

}  // namespace

int main(int argc, char** argv) {
    Global g;
    CLI::App app{"exact arithmetic for Drinfeld modules, A-motives, weights and "
                 "torsion-finiteness certificates"};
    app.require_subcommand(1);
    app.fallthrough();  // inherited: global flags may follow the subcommand
    app.failure_message(CLI::FailureMessage::help);  // bad usage lists the subcommands
    app.add_option("--seed", g.seed, "seed for randomized algorithms (output is seed-stable)")
        ->capture_default_str();
    app.add_option("--jobs", g.jobs, "worker threads for scan subcommands")
        ->capture_default_str();
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();

    // factor
    std::string fa_expr, fa_field = "GF(3)";
    auto* fa = app.add_subcommand("factor", "factor a polynomial in t over F_q");
    fa->add_option("poly", fa_expr, "polynomial in t")->required();
    fa->add_option("--field", fa_field, "coefficient field")->capture_default_str();
    fa->callback([&] { run_factor(g, fa_expr, fa_field); });

    // ord
    std::string od_expr, od_field = "GF(3)", od_at;
    auto* od = app.add_subcommand("ord", "valuations of a rational function in t");
    od->add_option("ratfunc", od_expr, "rational function in t")->required();
    od->add_option("--field", od_field, "coefficient field")->capture_default_str();
    od->add_option("--at", od_at, "place: an irreducible polynomial or 'infinity' "
                                  "(default: every place of the support)");
    od->callback([&] { run_ord(g, od_expr, od_field, od_at); });

    // weights
    std::string wt_path, wt_field;
    auto* wt = app.add_subcommand("weights", "weights of the Frobenius characteristic polynomial");
    wt->add_option("module-file", wt_path, "module description file")->required();
    wt->add_option("--field", wt_field, "override the file's field spec");
    wt->callback([&] { run_weights(g, wt_path, wt_field); });

    // check-condition
    std::string cc_z, cc_p, cc_field = "GF(3)";
    auto* cc = app.add_subcommand("check-condition",
                                  "divisibility condition for a uniformizer z at p");
    cc->add_option("--z", cc_z, "uniformizer, rational in t")->required();
    cc->add_option("--p", cc_p, "prime of F_q[t]")->required();
    cc->add_option("--field", cc_field, "coefficient field")->capture_default_str();
    cc->callback([&] { run_check_condition(g, cc_z, cc_p, cc_field); });

    // charpoly
    std::string cp_path, cp_field;
    auto* cp = app.add_subcommand("charpoly", "Frobenius characteristic polynomial of a motive");
    cp->add_option("module-file", cp_path, "module description file")->required();
    cp->add_option("--field", cp_field, "override the file's field spec");
    cp->callback([&] { run_charpoly(g, cp_path, cp_field); });

    // torsion
    std::string to_path, to_field, to_a;
    auto* to = app.add_subcommand("torsion", "a-torsion of a Drinfeld module over a finite base");
    to->add_option("module-file", to_path, "module description file")->required();
    to->add_option("--a", to_a, "element of F_q[t]")->required();
    to->add_option("--field", to_field, "override the file's field spec");
    to->callback([&] { run_torsion(g, to_path, to_field, to_a); });

    // good-reduction
    std::string gr_path, gr_field, gr_place;
    auto* gr = app.add_subcommand("good-reduction",
                                  "reduction type of a Drinfeld module at a finite place");
    gr->add_option("module-file", gr_path, "module description file")->required();
    gr->add_option("--place", gr_place, "monic irreducible in the base variable")->required();
    gr->add_option("--field", gr_field, "override the file's field spec");
    gr->callback([&] { run_good_reduction(g, gr_path, gr_field, gr_place); });

    // shtuka-hp
    std::string sh_path, sh_field, sh_p;
    int64_t sh_twist = 0;
    uint32_t sh_prec = 16;
    auto* sh = app.add_subcommand("shtuka-hp",
                                  "Hodge-Pink invariants of the local shtuka at a prime");
    sh->add_option("module-file", sh_path, "module description file");
    auto* sh_tw = sh->add_option("--twist", sh_twist, "rank-one twist exponent instead of a file");
    sh->add_option("--p", sh_p, "degree-one prime of F_q[t]")->required();
    sh->add_option("--prec", sh_prec, "series precision")->capture_default_str();
    sh->add_option("--field", sh_field, "field for --twist, or override the file's spec");
    sh->callback([&] { run_shtuka_hp(g, sh_path, sh_field, !sh_tw->empty(), sh_twist, sh_p, sh_prec); });

    // tower-check
    std::string tc_field = "GF(3)";
    uint32_t tc_levels = 1;
    auto* tc = app.add_subcommand("tower-check",
                                  "structural checks of the z-adic cyclotomic tower");
    tc->add_option("--field", tc_field, "coefficient field")->capture_default_str();
    tc->add_option("--levels", tc_levels, "layers above the first")->capture_default_str();
    tc->callback([&] { run_tower_check(g, tc_field, tc_levels); });

    // support
    std::string su_path, su_field;
    auto* su = app.add_subcommand("support", "prime support of P(1; M) with the characteristic");
    su->add_option("module-file", su_path, "module description file")->required();
    su->add_option("--field", su_field, "override the file's field spec");
    su->callback([&] { run_support(g, su_path, su_field); });

    // check-imai
    std::string ci_path, ci_field, ci_place, ci_z, ci_p;
    auto* ci = app.add_subcommand("check-imai",
                                  "finiteness-criterion certificate for torsion in the z-adic tower");
    ci->add_option("module-file", ci_path, "module description file")->required();
    ci->add_option("--place", ci_place, "reduction place (module over F_q(theta) only)");
    ci->add_option("--z", ci_z, "uniformizer at p, rational in t")->required();
    ci->add_option("--p", ci_p, "prime of F_q[t]")->required();
    ci->add_option("--field", ci_field, "override the file's field spec");
    ci->callback([&] { run_check_imai(g, ci_path, ci_field, ci_place, ci_z, ci_p); });

    // ribet-scan
    std::string rs_path, rs_field, rs_place;
    int64_t rs_nmax = -1;
    auto* rs = app.add_subcommand("ribet-scan",
                                  "prime supports of the cyclotomic twists of a reduction");
    rs->add_option("module-file", rs_path, "module description file")->required();
    rs->add_option("--place", rs_place, "good-reduction place")->required();
    rs->add_option("--nmax", rs_nmax, "largest twist exponent (default: the characteristic)");
    rs->add_option("--field", rs_field, "override the file's field spec");
    rs->callback([&] { run_ribet_scan(g, rs_path, rs_field, rs_place, rs_nmax); });

    // examples
    std::string ex_id, ex_field;
    int64_t ex_m = 1, ex_n = 2;
    uint32_t ex_p = 3, ex_deg_bound = 2, ex_d_max = 2;
    auto* ex = app.add_subcommand("examples", "stock instances as named recipes");
    ex->add_option("id", ex_id, "4.5|integral-weights, 4.6|kernel-bijection, 4.8|rank-p "
                                "(none: list recipes)");
    ex->add_option("--m", ex_m, "first twist exponent (4.5)")->capture_default_str();
    ex->add_option("--n", ex_n, "second twist exponent (4.5)")->capture_default_str();
    ex->add_option("--p", ex_p, "characteristic (4.6, 4.8)")->capture_default_str();
    ex->add_option("--deg-bound", ex_deg_bound, "largest deg a checked (4.6)")
        ->capture_default_str();
    ex->add_option("--d-max", ex_d_max, "largest specialization degree (4.6)")
        ->capture_default_str();
    ex->add_option("--field", ex_field, "coefficient field (4.5)");
    ex->callback([&] { run_examples(g, ex_id, ex_field, ex_m, ex_n, ex_p, ex_deg_bound, ex_d_max); });

    try {
        app.parse(argc, argv);
        return 0;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const PrecisionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
