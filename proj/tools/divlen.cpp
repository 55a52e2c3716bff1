#include <divlen/applications.hpp>
#include <divlen/exclusion.hpp>
#include <divlen/fixtures.hpp>
#include <divlen/geometry.hpp>
#include <divlen/lengths.hpp>
#include <divlen/lp.hpp>
#include <divlen/macwilliams.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

using nlohmann::json;
using namespace divlen;

namespace {

json rat_json(const Rat& x) {
    return json::array({boost::multiprecision::numerator(x).str(), boost::multiprecision::denominator(x).str()});
}

json farkas_json(const std::map<std::string, Rat>& mult) {
    json arr = json::array();
    for (const auto& [row, m] : mult)
        if (m != 0) arr.push_back(json{{"constraint", row}, {"multiplier", rat_json(m)}});
    return arr;
}

json cert_json(const excl::ExclusionCertificate& cert) {
    json j;
    j["kind"] = excl::certificate_kind(cert);
    if (auto* c = std::get_if<excl::IntervalCert>(&cert)) {
        j["a"] = c->a;
        j["b"] = c->b;
    } else if (auto* c = std::get_if<excl::ExpansionCert>(&cert)) {
        j["leading"] = c->leading.str();
    } else if (auto* c = std::get_if<excl::LinearCert>(&cert)) {
        j["u"] = c->u.str();
        j["m"] = c->m.str();
    } else if (auto* c = std::get_if<excl::QuadraticCert>(&cert)) {
        j["u"] = c->u.str();
        j["m"] = c->m.str();
        j["tau"] = c->tau.str();
        j["case"] = std::string(1, c->law);
    } else if (auto* c = std::get_if<excl::CubicCert>(&cert)) {
        j["t"] = c->t.str();
        j["h"] = c->h.str();
        j["g2"] = c->g2.str();
    } else if (auto* c = std::get_if<excl::DescentCert>(&cert)) {
        json arr = json::array();
        for (const auto& m : c->residues) arr.push_back(m.str());
        j["residues"] = arr;
    } else if (auto* c = std::get_if<excl::LpCert>(&cert)) {
        j["t"] = c->t;
        j["reason"] = c->reason;
        j["farkas"] = farkas_json(c->farkas);
        if (c->pinned_y) j["pinned_y"] = rat_json(*c->pinned_y);
    } else if (auto* c = std::get_if<excl::SporadicCert>(&cert)) {
        j["citation"] = c->citation;
    }
    return j;
}

json table_json(const std::vector<excl::LengthStatus>& table) {
    json j = json::object();
    for (const auto& st : table) {
        json e;
        switch (st.status) {
            case excl::Status::Realizable:
                e["status"] = "realizable";
                e["witness"] = st.witness;
                break;
            case excl::Status::Excluded:
                e["status"] = "excluded";
                e["certificate"] = cert_json(*st.certificate);
                break;
            case excl::Status::Open:
                e["status"] = "open";
                break;
        }
        j[st.n.str()] = e;
    }
    return j;
}

void emit(const json& payload, const std::string& text, bool as_json) {
    if (as_json)
        std::cout << payload.dump(2) << "\n";
    else
        std::cout << text << "\n";
}

std::map<long, Int> parse_weight_list(const std::string& text) {
    std::map<long, Int> counts;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos) throw CLI::ValidationError("--weights expects w:count pairs");
        counts[std::stol(item.substr(0, colon))] = Int(item.substr(colon + 1));
    }
    return counts;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact calculator for lengths of divisible codes and the bounds derived from them"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");

    int exit_code = 0;

    // expand
    auto* cmd_expand = app.add_subcommand("expand", "S_q(r)-adic expansion of n");
    std::string arg_n;
    long arg_q = 2, arg_r = 1;
    cmd_expand->add_option("n", arg_n)->required();
    cmd_expand->add_option("--q", arg_q)->required();
    cmd_expand->add_option("--r", arg_r)->required();
    cmd_expand->callback([&] {
        auto e = lengths::sqr_expand(Int(arg_n), arg_q, arg_r);
        json digits = json::array();
        for (int d : e.digits) digits.push_back(d);
        json j{{"command", "expand"},
               {"n", e.n.str()},
               {"q", e.q},
               {"r", e.r},
               {"digits", digits},
               {"leading", e.leading.str()},
               {"feasible", e.feasible()}};
        std::ostringstream txt;
        txt << "digits (a_0..a_{r-1}):";
        for (int d : e.digits) txt << " " << d;
        txt << "; leading a_r = " << e.leading.str() << (e.feasible() ? "  [realizable]" : "  [excluded]");
        emit(j, txt.str(), as_json);
    });

    // feasible
    auto* cmd_feasible = app.add_subcommand("feasible", "existence of a q^r-divisible multiset/set of size n");
    std::string f_n;
    long f_q = 2, f_r = 1, f_lambda = 0;
    cmd_feasible->add_option("n", f_n)->required();
    cmd_feasible->add_option("--q", f_q)->required();
    cmd_feasible->add_option("--r", f_r)->required();
    cmd_feasible->add_option("--lambda", f_lambda, "maximum point multiplicity (default unbounded)");
    cmd_feasible->callback([&] {
        Int n(f_n);
        std::string verdict;
        json cert;
        if (f_lambda == 0) {
            verdict = lengths::multiset_feasible(n, f_q, f_r) ? "Realizable" : "Excluded";
        } else if (f_lambda == 1) {
            auto c = excl::shared_classifier(f_q).certificate(f_r, n);
            if (c) {
                verdict = "Excluded";
                cert = cert_json(*c);
            } else {
                auto table = excl::classify_projective(f_q, f_r, n);
                verdict = (table.back().status == excl::Status::Realizable) ? "Realizable" : "Open";
            }
        } else {
            auto table = excl::classify_multiset_lambda(f_q, f_r, f_lambda, n);
            const auto& st = table.back();
            verdict = st.status == excl::Status::Realizable ? "Realizable"
                      : st.status == excl::Status::Excluded ? "Excluded"
                                                            : "Open";
            if (st.certificate) cert = cert_json(*st.certificate);
        }
        json j{{"command", "feasible"}, {"n", n.str()}, {"q", f_q}, {"r", f_r}, {"lambda", f_lambda},
               {"verdict", verdict}};
        if (!cert.is_null()) j["certificate"] = cert;
        emit(j, verdict, as_json);
        if (verdict == "Excluded") exit_code = 2;
    });

    // frobenius
    auto* cmd_frob = app.add_subcommand("frobenius", "largest non-realizable cardinality");
    long fr_q = 2, fr_r = 1;
    cmd_frob->add_option("--q", fr_q)->required();
    cmd_frob->add_option("--r", fr_r)->required();
    cmd_frob->callback([&] {
        Int f = lengths::frobenius(fr_q, fr_r);
        emit(json{{"command", "frobenius"}, {"q", fr_q}, {"r", fr_r}, {"value", f.str()}}, f.str(), as_json);
    });

    // round floor|ceil a b
    auto* cmd_round = app.add_subcommand("round", "sharpened rounding brackets");
    std::string round_mode, round_a, round_b;
    long ro_q = 2, ro_r = 1, ro_lambda = 0;
    cmd_round->add_option("mode", round_mode)->required()->check(CLI::IsMember({"floor", "ceil"}));
    cmd_round->add_option("a", round_a)->required();
    cmd_round->add_option("b", round_b)->required();
    cmd_round->add_option("--q", ro_q)->required();
    cmd_round->add_option("--r", ro_r)->required();
    cmd_round->add_option("--lambda", ro_lambda);
    cmd_round->callback([&] {
        Int a(round_a), b(round_b);
        std::optional<Int> value;
        if (ro_lambda == 0) {
            value = (round_mode == "floor") ? lengths::floor_qr(a, b, ro_q, ro_r)
                                            : lengths::ceil_qr(a, b, ro_q, ro_r);
        } else if (ro_lambda == 1 && round_mode == "floor") {
            auto& cl = excl::shared_classifier(ro_q);
            value = lengths::floor_qr_lambda(a, b, ro_q, ro_r,
                                             [&](const Int& len) { return cl.excluded(ro_r, len); },
                                             lengths::projective_realizable_above(ro_q, ro_r));
        } else {
            throw CLI::ValidationError("--lambda is supported for floor with lambda = 1");
        }
        std::string s = value ? value->str() : "-inf";
        emit(json{{"command", "round"}, {"mode", round_mode}, {"value", s}}, s, as_json);
    });

    // classify
    auto* cmd_classify = app.add_subcommand("classify", "three-way length table for projective q^r-divisible sets");
    long cl_q = 2, cl_r = 1, cl_lambda = 1;
    std::string cl_max;
    bool cl_no_lp = false;
    cmd_classify->add_option("--q", cl_q)->required();
    cmd_classify->add_option("--r", cl_r)->required();
    cmd_classify->add_option("--max-n", cl_max)->required();
    cmd_classify->add_option("--lambda", cl_lambda, "1 = projective (default), 0 = unbounded multiplicity");
    cmd_classify->add_flag("--no-lp", cl_no_lp, "skip the LP criterion");
    cmd_classify->callback([&] {
        std::vector<excl::LengthStatus> table;
        if (cl_lambda == 1) {
            auto cfg = excl::default_config();
            cfg.lp_enabled = !cl_no_lp;
            table = excl::classify_projective(cl_q, cl_r, Int(cl_max), cfg,
                                              excl::default_base_examples(cl_q, cl_r));
        } else {
            table = excl::classify_multiset_lambda(cl_q, cl_r, cl_lambda, Int(cl_max));
        }
        std::ostringstream txt;
        txt << "realizable " << excl::render_status_set(table, excl::Status::Realizable) << "\n"
            << "excluded   " << excl::render_status_set(table, excl::Status::Excluded) << "\n"
            << "open       " << excl::render_status_set(table, excl::Status::Open);
        emit(json{{"command", "classify"},
                  {"q", cl_q},
                  {"r", cl_r},
                  {"lambda", cl_lambda},
                  {"table", table_json(table)}},
             txt.str(), as_json);
    });

    // macwilliams transform / enumerate
    auto* cmd_mw = app.add_subcommand("macwilliams", "weight-distribution calculators");
    auto* mw_transform = cmd_mw->add_subcommand("transform", "dual weight distribution");
    long mt_q = 2, mt_n = 0, mt_k = 0;
    std::string mt_weights;
    mw_transform->add_option("--q", mt_q)->required();
    mw_transform->add_option("--n", mt_n)->required();
    mw_transform->add_option("--k", mt_k)->required();
    mw_transform->add_option("--weights", mt_weights, "non-zero weights as w:count,...")->required();
    mw_transform->callback([&] {
        mw::WeightDistribution w;
        w.q = mt_q;
        w.n = mt_n;
        w.k = mt_k;
        w.A.assign(mt_n + 1, 0);
        w.A[0] = 1;
        for (const auto& [weight, count] : parse_weight_list(mt_weights)) w.A[weight] = count;
        auto dual = mw::macwilliams_transform(w);
        json arr = json::array();
        std::ostringstream txt;
        for (long i = 0; i <= dual.n; ++i) {
            arr.push_back(dual.A[i].str());
            if (dual.A[i] != 0) txt << "B_" << i << " = " << dual.A[i].str() << "  ";
        }
        emit(json{{"command", "macwilliams-transform"}, {"B", arr}}, txt.str(), as_json);
    });
    auto* mw_enum = cmd_mw->add_subcommand("enumerate", "integral solutions of the MacWilliams system");
    long me_q = 2, me_kmin = 1, me_kmax = 0, me_t = 4;
    std::string me_delta, me_n;
    bool me_projective = false;
    mw_enum->add_option("--q", me_q)->required();
    mw_enum->add_option("--delta", me_delta)->required();
    mw_enum->add_option("--n", me_n)->required();
    mw_enum->add_option("--kmin", me_kmin);
    mw_enum->add_option("--kmax", me_kmax)->required();
    mw_enum->add_option("--t", me_t);
    mw_enum->add_flag("--projective", me_projective);
    mw_enum->callback([&] {
        auto sols = mw::enumerate_divisible_distributions(me_q, Int(me_delta), Int(me_n), me_kmin, me_kmax,
                                                          me_projective, me_t);
        json arr = json::array();
        std::ostringstream txt;
        txt << sols.size() << " solution(s)";
        for (const auto& s : sols) {
            json e{{"k", s.k}};
            json weights = json::object();
            for (long i = 1; i <= s.dist.n; ++i)
                if (s.dist.A[i] != 0) weights[std::to_string(i)] = s.dist.A[i].str();
            e["A"] = weights;
            arr.push_back(e);
            txt << "\nk=" << s.k << ":";
            for (long i = 1; i <= s.dist.n; ++i)
                if (s.dist.A[i] != 0) txt << " A_" << i << "=" << s.dist.A[i].str();
        }
        emit(json{{"command", "macwilliams-enumerate"}, {"solutions", arr}}, txt.str(), as_json);
        if (sols.empty()) exit_code = 2;
    });

    // lp feasible
    auto* cmd_lp = app.add_subcommand("lp", "linear programming relaxations");
    auto* lp_feas = cmd_lp->add_subcommand("feasible", "first-t-MacWilliams feasibility");
    long lf_q = 2, lf_t = 4;
    std::string lf_delta, lf_n;
    long lf_k = -1;
    bool lf_not_projective = false, lf_power = false, lf_tighten = false;
    lp_feas->add_option("--q", lf_q)->required();
    lp_feas->add_option("--delta", lf_delta)->required();
    lp_feas->add_option("--n", lf_n)->required();
    lp_feas->add_option("--k", lf_k, "fixed dimension (omit for dimension-free)");
    lp_feas->add_option("--t", lf_t);
    lp_feas->add_flag("--not-projective", lf_not_projective);
    lp_feas->add_flag("--power-check", lf_power);
    lp_feas->add_flag("--tighten", lf_tighten);
    lp_feas->callback([&] {
        lp::DivisibleQuery query;
        query.q = lf_q;
        query.delta = Int(lf_delta);
        query.n = Int(lf_n);
        if (lf_k >= 0) query.k = lf_k;
        query.projective = !lf_not_projective;
        query.t = lf_t;
        query.power_check = lf_power;
        query.tighten = lf_tighten;
        auto out = lp::divisible_feasible(query);
        json j{{"command", "lp-feasible"}, {"verdict", out.feasible ? "Feasible" : "Infeasible"}};
        std::ostringstream txt;
        if (out.feasible) {
            txt << "Feasible";
            json model = json::object();
            for (const auto& [var, val] : out.model) model[var] = rat_json(val);
            j["model"] = model;
        } else {
            txt << "Infeasible (" << out.reason << ")";
            j["reason"] = out.reason;
            j["certificate"] = farkas_json(out.farkas);
            if (out.pinned_y) j["pinned_y"] = rat_json(*out.pinned_y);
            exit_code = 2;
        }
        emit(j, txt.str(), as_json);
    });

    // spread-bound
    auto* cmd_spread = app.add_subcommand("spread-bound", "partial spread bounds A_q(v, 2t; t)");
    long sb_q = 2, sb_v = 0, sb_t = 1;
    cmd_spread->add_option("--q", sb_q)->required();
    cmd_spread->add_option("--v", sb_v)->required();
    cmd_spread->add_option("--t", sb_t)->required();
    cmd_spread->callback([&] {
        auto rep = apps::spread_bound_report(sb_q, sb_v, sb_t);
        json uppers = json::array();
        std::ostringstream txt;
        txt << rep.lower.str() << " <= A_" << sb_q << "(" << sb_v << "," << 2 * sb_t << ";" << sb_t
            << ") <= " << rep.best_upper.str() << "  [" << rep.best_method << "]";
        for (const auto& u : rep.uppers) {
            uppers.push_back(json{{"method", u.method}, {"value", u.value.str()}, {"params", u.params}});
            txt << "\n  " << u.method << ": " << u.value.str()
                << (u.params.empty() ? "" : "  (" + u.params + ")");
        }
        emit(json{{"command", "spread-bound"},
                  {"lower", rep.lower.str()},
                  {"best_upper", rep.best_upper.str()},
                  {"best_method", rep.best_method},
                  {"uppers", uppers}},
             txt.str(), as_json);
    });

    // vsp-check
    auto* cmd_vsp = app.add_subcommand("vsp-check", "vector space partition feasibility");
    long vc_q = 2, vc_v = 0;
    std::string vc_type;
    cmd_vsp->add_option("--q", vc_q)->required();
    cmd_vsp->add_option("--v", vc_v)->required();
    cmd_vsp->add_option("--type", vc_type)->required();
    cmd_vsp->callback([&] {
        auto type = apps::VspType::parse(vc_q, vc_v, vc_type);
        auto verdict = apps::vsp_feasible(type);
        json j{{"command", "vsp-check"},
               {"type", type.str()},
               {"verdict", verdict.pass ? "Pass" : "Fail"},
               {"reason", verdict.reason}};
        emit(j, verdict.pass ? "Pass" : "Fail: " + verdict.reason, as_json);
        if (!verdict.pass) exit_code = 2;
    });

    // verify
    auto* cmd_verify = app.add_subcommand("verify", "re-check a stored fixture or matrix file");
    std::string vf_what;
    cmd_verify->add_option("fixture", vf_what, "fixture id or path to a matrix file")->required();
    cmd_verify->callback([&] {
        fixtures::FixtureReport rep;
        bool known = true;
        try {
            fixtures::info(vf_what);
        } catch (const std::invalid_argument&) {
            known = false;
        }
        if (known) {
            rep = fixtures::verify_fixture(vf_what);
        } else {
            auto g = fixtures::load_matrix(vf_what);
            rep.id = vf_what;
            rep.n = g.n();
            rep.effective_n = g.effective_length();
            auto m = geom::multiset_from_matrix(g);
            rep.rank = geom::dim_span(m);
            rep.max_multiplicity = m.max_multiplicity();
            auto w = geom::weight_distribution_bruteforce(g);
            for (long i = 1; i <= w.n; ++i)
                if (w.A[i] != 0) rep.enumerator[i] = w.A[i];
            rep.max_divisibility = 0;
            for (const auto& [weight, cnt] : rep.enumerator) {
                (void)cnt;
                rep.max_divisibility = boost::multiprecision::gcd(rep.max_divisibility, Int(weight));
            }
            rep.ok = true;
        }
        json weights = json::object();
        for (const auto& [w, c] : rep.enumerator) weights[std::to_string(w)] = c.str();
        json j{{"command", "verify"},
               {"id", rep.id},
               {"ok", rep.ok},
               {"n", rep.n},
               {"effective_n", rep.effective_n},
               {"rank", rep.rank},
               {"max_multiplicity", rep.max_multiplicity},
               {"enumerator", weights}};
        std::ostringstream txt;
        txt << rep.id << ": " << (rep.ok ? "OK" : "MISMATCH") << "  n=" << rep.n << " n_eff=" << rep.effective_n
            << " k=" << rep.rank << " gamma_0=" << rep.max_multiplicity;
        txt << "  W(x) = 1";
        for (const auto& [w, c] : rep.enumerator) txt << " + " << c.str() << "x^" << w;
        emit(j, txt.str(), as_json);
        if (!rep.ok) exit_code = 2;
    });

    // incidence-rank
    auto* cmd_rank = app.add_subcommand("incidence-rank", "rank and kernel of the point/k-space incidence matrix");
    long ir_v = 3, ir_q = 2, ir_k = 2;
    std::string ir_mod = "2";
    cmd_rank->add_option("--v", ir_v)->required();
    cmd_rank->add_option("--q", ir_q)->required();
    cmd_rank->add_option("--k", ir_k)->required();
    cmd_rank->add_option("--mod", ir_mod)->required();
    cmd_rank->callback([&] {
        auto inc = geom::incidence_matrix(ir_v, ir_q, ir_k);
        std::vector<std::vector<Int>> a(inc.a.size());
        for (std::size_t i = 0; i < inc.a.size(); ++i) a[i].assign(inc.a[i].begin(), inc.a[i].end());
        auto rp = geom::rank_mod(a, Int(ir_mod));
        json diag = json::array();
        for (const auto& d : rp.diag) diag.push_back(d.str());
        std::ostringstream txt;
        txt << "rank " << rp.rank << ", kernel dimension " << rp.kernel_dim << " (mod " << ir_mod << ")";
        emit(json{{"command", "incidence-rank"},
                  {"rank", rp.rank},
                  {"kernel_dim", rp.kernel_dim},
                  {"diag", diag}},
             txt.str(), as_json);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
