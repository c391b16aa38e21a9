#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hct/bounds.hpp"
#include "hct/enumerate.hpp"
#include "hct/parse.hpp"
#include "hct/reduction.hpp"
#include "hct/weierstrass.hpp"

using namespace hct;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "hct 0.1.0";

struct Settings {
    mpfr_prec_t precision = 128;
    unsigned long max_candidates = 400000000ul;
    double sunit_max_bound = 40.0;
};

Settings load_settings(const std::string& config_path) {
    Settings s;
    auto apply = [&](const std::string& key, const std::string& val) {
        if (key == "precision") s.precision = std::stol(val);
        if (key == "max_candidates") s.max_candidates = std::stoul(val);
        if (key == "sunit_max_bound") s.sunit_max_bound = std::stod(val);
    };
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw parse_error("cannot open config file " + config_path);
        std::string line;
        while (std::getline(in, line)) {
            auto eq = line.find('=');
            if (eq == std::string::npos || line.empty() || line[0] == '#') continue;
            apply(line.substr(0, eq), line.substr(eq + 1));
        }
    }
    if (const char* p = std::getenv("HCT_PRECISION")) s.precision = std::atol(p);
    if (const char* p = std::getenv("HCT_MAX_CANDIDATES"))
        s.max_candidates = std::strtoul(p, nullptr, 10);
    if (const char* p = std::getenv("HCT_SUNIT_MAX_BOUND"))
        s.sunit_max_bound = std::atof(p);
    return s;
}

ordered_json interval_json(const CertLog& v) {
    ordered_json j;
    j["lo"] = v.lo_str();
    j["hi"] = v.hi_str();
    return j;
}

ordered_json certlog_json(const std::string& formula, const CertLog& v,
                          const ordered_json& inputs, bool certified,
                          const std::vector<std::string>& notes = {}) {
    ordered_json j;
    j["formula"] = formula;
    j["log10"] = interval_json(v.to_log10());
    j["log2"] = interval_json(v.to_log2());
    j["ln"] = interval_json(v);
    j["inputs"] = inputs;
    j["certified"] = certified;
    if (!notes.empty()) {
        ordered_json ns = ordered_json::array();
        for (const auto& n : notes) ns.push_back(n);
        j["notes"] = ns;
    }
    return j;
}

void emit(const ordered_json& j, bool pretty) {
    if (pretty)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << j.dump() << "\n";
}

std::string place_str(const PrimeIdeal& v) { return v.to_string(); }

int run(int argc, char** argv) {
    CLI::App app{"hyperelliptic curve toolkit"};
    app.set_version_flag("--version", kVersion);
    app.fallthrough();
    bool pretty = false;
    std::string config_path;
    app.add_flag("--pretty", pretty, "indent JSON output");
    app.add_option("--config", config_path, "key=value config file");

    // ---- bounds ----
    auto* cb = app.add_subcommand("bounds", "evaluate the explicit bounds");
    std::string b_field = "Q", b_S, b_part = "i";
    unsigned b_genus = 1;
    long b_precision = 0;
    std::string b_c6, b_c7, b_kappa;
    bool b_illustrative = false;
    cb->add_option("--field", b_field);
    cb->add_option("--S", b_S);
    cb->add_option("--genus", b_genus);
    cb->add_option("--part", b_part,
                   "i | ii | corollary | wp-count | faltings");
    cb->add_option("--precision", b_precision);
    cb->add_option("--c6", b_c6);
    cb->add_option("--c7", b_c7);
    cb->add_option("--kappa", b_kappa);
    cb->add_flag("--illustrative-constants", b_illustrative,
                 "c6=3, c7=1, kappa=1; output watermarked as non-certified");

    // ---- extend-pid ----
    auto* ce = app.add_subcommand("extend-pid", "extend S until O_T is a PID");
    std::string e_field = "Q", e_S;
    ce->add_option("--field", e_field);
    ce->add_option("--S", e_S);

    // ---- disc ----
    auto* cd = app.add_subcommand("disc", "model discriminant");
    std::string d_poly, d_f2;
    unsigned d_genus = 1;
    cd->add_option("--poly", d_poly)->required();
    cd->add_option("--f2", d_f2);
    cd->add_option("--genus", d_genus);

    // ---- reduce ----
    auto* cr = app.add_subcommand("reduce", "unipotent or covariant reduction");
    std::string r_poly, r_form, r_S;
    cr->add_option("--poly", r_poly);
    cr->add_option("--form", r_form);
    cr->add_option("--S", r_S);

    // ---- sunit ----
    auto* cs = app.add_subcommand("sunit", "solve x + y = 1 in T-units");
    std::string s_S;
    double s_bound = 1.0;
    cs->add_option("--S", s_S);
    cs->add_option("--height-bound", s_bound)->required();

    // ---- enumerate ----
    auto* cn = app.add_subcommand("enumerate", "catalog search over Q");
    unsigned n_genus = 1;
    std::string n_S, n_degrees, n_out, n_journal;
    long n_box = 10;
    unsigned n_jobs = 1;
    bool n_no_timestamp = false;
    cn->add_option("--genus", n_genus);
    cn->add_option("--S", n_S);
    cn->add_option("--box", n_box);
    cn->add_option("--degrees", n_degrees, "comma-separated, e.g. 3 or 3,4");
    cn->add_option("--out", n_out)->required();
    cn->add_option("--jobs", n_jobs);
    cn->add_option("--journal", n_journal, "append-only journal for resume");
    cn->add_flag("--no-timestamp", n_no_timestamp);

    // ---- verify-laws ----
    auto* cv = app.add_subcommand("verify-laws", "randomized exact law checks");
    unsigned long v_trials = 1000;
    unsigned long v_seed = 42;
    cv->add_option("--trials", v_trials);
    cv->add_option("--seed", v_seed);

    // ---- catalog ----
    auto* cc = app.add_subcommand("catalog", "query a catalog file");
    std::string c_in, c_tier, c_wp;
    bool c_count = false;
    int c_genus = -1;
    cc->add_option("--in", c_in)->required();
    cc->add_flag("--count", c_count);
    cc->add_option("--genus", c_genus);
    cc->add_option("--tier", c_tier);
    cc->add_option("--wp", c_wp);

    app.require_subcommand(1);
    CLI11_PARSE(app, argc, argv);
    Settings settings = load_settings(config_path);

    if (cb->parsed()) {
        NumberField K = parse_field(b_field);
        PlaceSet S = parse_place_set(K, b_S);
        if (b_genus < 1) throw parse_error("genus must be >= 1");
        BoundInputs in = BoundInputs::from(K, S, b_genus);
        bool certified = true;
        std::vector<std::string> notes;
        if (b_illustrative) {
            in.c6 = 3;
            in.c7 = 1;
            in.kappa = 1;
            certified = false;
            notes.push_back("illustrative constants c6=3, c7=1, kappa=1 (c6 >= 3, c7 >= 1)");
        }
        if (!b_c6.empty()) in.c6 = parse_rational(b_c6);
        if (!b_c7.empty()) in.c7 = parse_rational(b_c7);
        if (!b_kappa.empty()) in.kappa = parse_rational(b_kappa);
        if (in.p == 1 && (b_part == "ii" || b_part == "corollary"))
            notes.push_back("empty S: p-term uses the p = 1 convention and contributes 0");
        mpfr_prec_t prec = b_precision > 0 ? b_precision : settings.precision;
        ordered_json inputs;
        inputs["field"] = K.to_string();
        inputs["S"] = S.to_string();
        inputs["genus"] = b_genus;
        inputs["nu"] = in.nu().get_str();
        inputs["precision"] = (long)prec;

        CertLog val(prec);
        std::string formula;
        if (b_part == "i") {
            formula = "theorem-i";
            val = theorem_bound_i(in, prec);
        } else if (b_part == "ii") {
            formula = "theorem-ii";
            val = theorem_bound_ii(in, prec);
        } else if (b_part == "corollary") {
            formula = "corollary-count";
            val = corollary_count_bound(in, prec);
        } else if (b_part == "wp-count") {
            formula = "wp-count";
            val = wp_count_bound(in, prec);
        } else if (b_part == "faltings") {
            formula = "faltings";
            val = faltings_bound(in, prec);
        } else {
            throw parse_error("unknown part '" + b_part + "'");
        }
        emit(certlog_json(formula, val, inputs, certified, notes), pretty);
        return 0;
    }

    if (ce->parsed()) {
        NumberField K = parse_field(e_field);
        PlaceSet S = parse_place_set(K, e_S);
        PlaceSet T = extend_to_pid(K, S);
        ordered_json j;
        j["field"] = K.to_string();
        ordered_json sj = ordered_json::array(), tj = ordered_json::array(),
                     aj = ordered_json::array();
        for (const auto& v : S.places()) sj.push_back(place_str(v));
        for (const auto& v : T.places()) {
            tj.push_back(place_str(v));
            if (!S.contains(v)) aj.push_back(place_str(v));
        }
        j["S"] = sj;
        j["T"] = tj;
        j["added"] = aj;
        j["h_K"] = (long)class_group(K).h_K;
        j["h_S"] = (long)s_class_number(K, S);
        j["h_T"] = (long)s_class_number(K, T);
        // bounds satisfied by T after closing under residue characteristics
        // and 2, as in the statements the extension feeds into
        PlaceSet closed = close_under_char_and_two(T);
        BoundInputs bin = BoundInputs::from(K, S, 1);
        TGuarantees tg = t_guarantees(bin, settings.precision);
        ordered_json gj;
        ordered_json cj = ordered_json::array();
        for (const auto& v : closed.places()) cj.push_back(place_str(v));
        gj["T_closed"] = cj;
        gj["t_bound_hi"] = tg.t_bound.hi_str();
        gj["N_T_bound_hi"] = tg.N_T_bound.hi_str();
        gj["p_T_bound_hi"] = tg.p_T_bound.hi_str();
        gj["satisfied"] = t_satisfies(tg, closed);
        j["guarantees"] = gj;
        emit(j, pretty);
        return 0;
    }

    if (cd->parsed()) {
        Poly f = parse_poly(d_poly);
        Poly f2 = d_f2.empty() ? Poly(NumberField::rationals()) : parse_poly(d_f2);
        FieldElement disc = model_discriminant(f, f2, d_genus);
        ordered_json j;
        j["genus"] = d_genus;
        j["model"] = equation_string(f, f2);
        j["f"] = f.to_string();
        if (!f2.is_zero()) j["f2"] = f2.to_string();
        j["delta"] = q_to_string(disc.a());
        if (!disc.is_zero()) {
            mpq_class dq = disc.a();
            j["delta_sign"] = dq < 0 ? -1 : 1;
            ordered_json fj = ordered_json::array();
            for (auto& [p, e] : factor_z(dq.get_num()))
                fj.push_back(ordered_json::array({p.get_str(), (long)e}));
            j["delta_factors"] = fj;
            if (dq.get_den() != 1) {
                ordered_json dj = ordered_json::array();
                for (auto& [p, e] : factor_z(dq.get_den()))
                    dj.push_back(ordered_json::array({p.get_str(), (long)e}));
                j["delta_denominator_factors"] = dj;
            }
            j["separable"] = true;
        } else {
            j["separable"] = false;
        }
        emit(j, pretty);
        return 0;
    }

    if (cr->parsed()) {
        NumberField Q = NumberField::rationals();
        PlaceSet S = parse_place_set(Q, r_S);
        ordered_json j;
        if (!r_poly.empty()) {
            Poly f = parse_poly(r_poly);
            auto red = unipotent_reduce(f, S);
            j["kind"] = "unipotent";
            j["tau"] = red.tau.to_string();
            j["input"] = f.to_string();
            j["reduced"] = red.f.to_string();
        } else if (!r_form.empty()) {
            BinaryForm F = parse_form(r_form);
            auto red = sl2_reduce_form(F);
            j["kind"] = "sl2";
            j["phi"] = red.phi.to_string();
            j["input"] = F.to_string();
            j["reduced"] = red.reduced.to_string();
        } else {
            throw parse_error("reduce needs --poly or --form");
        }
        emit(j, pretty);
        return 0;
    }

    if (cs->parsed()) {
        NumberField Q = NumberField::rationals();
        PlaceSet T = parse_place_set(Q, s_S);
        if (s_bound > settings.sunit_max_bound)
            throw resource_limit("height bound above the configured ceiling");
        auto sols = solve_sunit_equation(T, s_bound);
        ordered_json j;
        j["T"] = T.to_string();
        j["height_bound"] = s_bound;
        ordered_json arr = ordered_json::array();
        for (const auto& s : sols) {
            ordered_json e;
            e["x"] = q_to_string(s.x);
            e["y"] = q_to_string(s.y);
            ordered_json ex = ordered_json::array(), ey = ordered_json::array();
            for (long v : s.exp_x) ex.push_back(v);
            for (long v : s.exp_y) ey.push_back(v);
            e["exp_x"] = ex;
            e["exp_y"] = ey;
            e["sign_x"] = s.sign_x;
            e["sign_y"] = s.sign_y;
            arr.push_back(e);
        }
        j["count"] = (long)sols.size();
        j["solutions"] = arr;
        emit(j, pretty);
        return 0;
    }

    if (cn->parsed()) {
        SearchSpec spec;
        spec.genus = n_genus;
        NumberField Q = NumberField::rationals();
        PlaceSet S_parsed = parse_place_set(Q, n_S);
        for (const auto& v : S_parsed.places()) spec.S_primes.push_back(v.ell);
        spec.box = n_box;
        spec.jobs = n_jobs;
        spec.max_candidates = settings.max_candidates;
        if (!n_degrees.empty()) {
            std::stringstream ss(n_degrees);
            std::string tok;
            while (std::getline(ss, tok, ','))
                if (!tok.empty()) spec.degrees.push_back((unsigned)std::stoul(tok));
        }
        Catalog cat = enumerate_curves(spec, n_journal);
        cat.generated_at = n_no_timestamp ? "" : [] {
            char buf[64];
            std::time_t t = std::time(nullptr);
            std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
            return std::string(buf);
        }();
        std::ofstream out(n_out);
        if (!out) throw parse_error("cannot open output file " + n_out);
        out << cat.dump_jsonl(!n_no_timestamp);
        ordered_json j;
        j["records"] = (long)cat.records.size();
        j["out"] = n_out;
        emit(j, pretty);
        return 0;
    }

    if (cv->parsed()) {
        std::mt19937_64 rng(v_seed);
        auto rnd_int = [&](long lo, long hi) {
            return (long)(lo + (long)(rng() % (unsigned long)(hi - lo + 1)));
        };
        auto rnd_q = [&]() {
            long num = rnd_int(-99, 99);
            long den = rnd_int(1, 99);
            mpq_class q(num, den);
            q.canonicalize();
            return q;
        };
        unsigned long violations = 0, pull = 0, scal = 0, homog = 0, cov = 0;
        for (unsigned long t = 0; t < v_trials; ++t) {
            unsigned n = (unsigned)rnd_int(2, 6);
            std::vector<mpq_class> bc(n + 1);
            bool all0 = true;
            for (auto& c : bc) {
                c = mpq_class(rnd_int(-99, 99));
                if (c != 0) all0 = false;
            }
            if (all0) bc[0] = 1;
            BinaryForm G = BinaryForm::from_q(n, bc);
            // pullback law
            GL2Matrix psi = GL2Matrix::from_z(rnd_int(-9, 9), rnd_int(-9, 9),
                                              rnd_int(-9, 9), rnd_int(-9, 9));
            if (!psi.det().is_zero()) {
                ++pull;
                if (!disc_transform_check(psi, G)) ++violations;
            }
            // scaling law
            mpq_class alpha = rnd_q();
            if (alpha != 0) {
                ++scal;
                if (!disc_scaling_check(FieldElement(alpha), G)) ++violations;
            }
            // homogenization: disc(F) = disc(f)
            std::vector<mpq_class> pc(4);
            for (auto& c : pc) c = mpq_class(rnd_int(-20, 20));
            pc[3] = mpq_class(std::max(1l, rnd_int(1, 20)));
            Poly f = Poly::from_q(pc);
            ++homog;
            if (!(disc_form(homogenize(f, 3)) == disc_poly(f))) ++violations;
            // coordinate-change law on a genus-1 model
            std::vector<mpq_class> mc{mpq_class(rnd_int(-20, 20)),
                                      mpq_class(rnd_int(-20, 20)),
                                      mpq_class(rnd_int(-20, 20)), 1};
            Poly fm = Poly::from_q(mc);
            if (separable(fm)) {
                WeierstrassModel m(1, fm, BaseRing::integers(NumberField::rationals()));
                GL2Matrix phi = GL2Matrix::from_z(rnd_int(-5, 5), rnd_int(-5, 5),
                                                  rnd_int(-5, 5), rnd_int(-5, 5));
                mpq_class lam = rnd_q();
                if (!phi.det().is_zero() && lam != 0) {
                    ++cov;
                    try {
                        change_variables(m, phi, FieldElement(lam));
                    } catch (const std::domain_error&) {
                        --cov;  // degenerate transform, not a law check
                    } catch (const std::logic_error&) {
                        ++violations;
                    }
                }
            }
        }
        ordered_json j;
        j["trials"] = (long)v_trials;
        j["seed"] = (long)v_seed;
        ordered_json ch;
        ch["pullback_disc_law"] = (long)pull;
        ch["scaling_law"] = (long)scal;
        ch["homogenization_disc"] = (long)homog;
        ch["change_of_variables_law"] = (long)cov;
        j["checks"] = ch;
        j["violations"] = (long)violations;
        emit(j, pretty);
        return violations == 0 ? 0 : 1;
    }

    if (cc->parsed()) {
        std::ifstream in(c_in);
        if (!in) throw parse_error("cannot open catalog " + c_in);
        Catalog cat = Catalog::parse_jsonl(in);
        catalog_verify(cat);
        std::vector<const CurveRecord*> sel;
        for (const auto& r : cat.records) {
            if (c_genus >= 0 && (int)r.genus != c_genus) continue;
            if (!c_tier.empty() && r.tier != c_tier) continue;
            if (!c_wp.empty() && (c_wp == "yes") != r.wp_yes) continue;
            sel.push_back(&r);
        }
        ordered_json j;
        j["catalog"] = c_in;
        j["total"] = (long)cat.records.size();
        j["selected"] = (long)sel.size();
        if (!c_count) {
            ordered_json arr = ordered_json::array();
            for (const auto* r : sel) {
                ordered_json e;
                ordered_json fc = ordered_json::array();
                for (const auto& c : r->f) fc.push_back(q_to_string(c));
                e["genus"] = r->genus;
                e["f"] = fc;
                e["tier"] = r->tier;
                e["wp"] = r->wp_yes ? "yes" : "unknown";
                arr.push_back(e);
            }
            j["records"] = arr;
        }
        emit(j, pretty);
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const unsupported_field& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const resource_limit& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
