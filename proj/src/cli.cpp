#include "singmod/cli.hpp"

#include <fstream>
#include <mutex>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "singmod/casecheck.hpp"
#include "singmod/isogeny.hpp"
#include "singmod/jfun.hpp"
#include "singmod/quadforms.hpp"
#include "singmod/relations.hpp"
#include "singmod/searches.hpp"

namespace singmod::cli {

using nlohmann::json;

namespace {

std::vector<Int> parse_int_list(const std::string& s) {
    std::vector<Int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.emplace_back(item);
    }
    return out;
}

std::vector<std::int64_t> parse_i64_list(const std::string& s) {
    std::vector<std::int64_t> out;
    for (const Int& v : parse_int_list(s)) out.push_back(v.get_si());
    return out;
}

json discriminant_json(const qf::Discriminant& d) {
    return json{{"delta", std::to_string(d.delta)},
                {"d", std::to_string(d.fundamental)},
                {"f", std::to_string(d.conductor)}};
}

json form_json(const qf::ReducedForm& f) {
    return json::array({f.a, f.b, f.c});
}

void emit(std::ostream& out, const json& j, const std::string& format) {
    if (format == "json")
        out << j.dump(2) << "\n";
    else
        out << j.dump(2) << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"singular-moduli toolkit: class groups, rigorous j-values, relation bounds, case checks"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    std::string format = "json";
    app.add_option("--format", format, "json|csv|human")->check(CLI::IsMember({"json", "csv", "human"}));
    int threads = 0;
    app.add_option("--threads", threads, "worker count (0 = hardware)");

    // classnum
    auto* classnum = app.add_subcommand("classnum", "class number of a discriminant");
    std::int64_t delta = 0;
    classnum->add_option("--delta", delta, "negative discriminant")->required();

    // forms
    auto* forms = app.add_subcommand("forms", "reduced forms T_delta");
    std::int64_t forms_delta = 0;
    forms->add_option("--delta", forms_delta)->required();

    // psi
    auto* psi_cmd = app.add_subcommand("psi", "Psi(ell, delta)");
    std::int64_t psi_delta = 0, psi_ell = 1;
    psi_cmd->add_option("--delta", psi_delta)->required();
    psi_cmd->add_option("--ell", psi_ell)->required();

    // denominators
    auto* denoms = app.add_subcommand("denominators", "denominator statistics / membership");
    std::int64_t den_A = 0, den_delta = 0, den_a = 0;
    denoms->add_option("--A", den_A, "report S(A) and the s(a) row");
    denoms->add_option("--delta", den_delta);
    denoms->add_option("--a", den_a);

    // isogeny
    auto* iso_cmd = app.add_subcommand("isogeny", "Q(n) sets, isogeny predicates and degrees");
    std::int64_t iso_qset = 0, iso_n = 0, iso_delta = 0;
    std::string iso_z, iso_w, iso_x, iso_y;
    std::int64_t iso_dx = 0, iso_dy = 0;
    iso_cmd->add_option("--qset", iso_qset, "print Q(n)");
    iso_cmd->add_option("--n", iso_n, "isogeny degree to test");
    iso_cmd->add_option("--delta", iso_delta, "shared discriminant for --z/--w");
    iso_cmd->add_option("--z", iso_z, "source point b,a");
    iso_cmd->add_option("--w", iso_w, "target point b,a");
    iso_cmd->add_option("--x", iso_x, "form a,b,c (constructive degree)");
    iso_cmd->add_option("--dx", iso_dx);
    iso_cmd->add_option("--y", iso_y, "form a,b,c");
    iso_cmd->add_option("--dy", iso_dy);

    // jeval
    auto* jeval = app.add_subcommand("jeval", "rigorous j-evaluation");
    std::string jeval_form;
    std::int64_t jeval_delta = 0;
    long prec_bits = 128;
    int jeval_coeffs = -1;
    std::string tau_re, tau_im;
    jeval->add_option("--form", jeval_form, "reduced form a,b,c");
    jeval->add_option("--delta", jeval_delta);
    jeval->add_option("--tau-re", tau_re, "decimal real part");
    jeval->add_option("--tau-im", tau_im, "decimal imaginary part");
    jeval->add_option("--prec-bits", prec_bits);
    jeval->add_option("--coeffs", jeval_coeffs, "print c_-1..c_n instead");

    // verify-constants
    auto* vconst = app.add_subcommand("verify-constants", "certify the expansion constants");
    long vconst_prec = 256;
    vconst->add_option("--prec-bits", vconst_prec);

    // masser-bound
    auto* masser = app.add_subcommand("masser-bound", "relation-lattice basis norm bound");
    int mb_k = 1, mb_ell = 1;
    std::string mb_x = "1";
    bool mb_sigma = false;
    masser->add_option("--k", mb_k)->required();
    masser->add_option("--x", mb_x)->required();
    masser->add_option("--ell", mb_ell);
    masser->add_flag("--sigma", mb_sigma, "ratio variant (height 8 X^(1/2))");

    // check-hypothesis
    auto* hyp = app.add_subcommand("check-hypothesis", "(erootofy) / (eassumpdelta) predicates");
    int hy_k = 1;
    std::int64_t hy_X = 1, hy_Y = 1, hy_A = 1, hy_core = 0;
    std::string hy_eps;
    hyp->add_option("--k", hy_k)->required();
    hyp->add_option("--x", hy_X)->required();
    hyp->add_option("--y", hy_Y);
    hyp->add_option("--core", hy_core, "|delta| of the gcd-conductor core");
    hyp->add_option("--A", hy_A)->required();
    hyp->add_option("--eps", hy_eps, "rational like 16/1000 (switches to eassumpdelta)");

    // solve-cases
    auto* cases_cmd = app.add_subcommand("solve-cases", "exact kernels of the builtin case systems");
    std::string table = "all";
    bool strict = false;
    cases_cmd->add_option("--table", table)->check(CLI::IsMember({"t2", "t3", "t4", "t5", "all"}));
    cases_cmd->add_flag("--strict", strict, "fail on any nontrivial kernel, even excluded ones");

    // search-watkins
    auto* watkins = app.add_subcommand("search-watkins", "class-number sieve searches");
    std::int64_t wb_bound = 1000000, wb_maxh = 64;
    bool wb_full = false, wb_formula = false;
    std::string checkpoint_path;
    watkins->add_option("--bound", wb_bound);
    watkins->add_option("--max-h", wb_maxh);
    watkins->add_flag("--full", wb_full, "run the full 28753200 confirmation");
    watkins->add_flag("--formula", wb_formula, "only evaluate the conductor-formula stage");
    watkins->add_option("--checkpoint", checkpoint_path, "progress file: lines 'a_start a_end done'");

    // search-2elem
    auto* twoelem = app.add_subcommand("search-2elem", "(almost-)2-elementary discriminants");
    bool te_almost = false, te_band = false;
    twoelem->add_flag("--almost", te_almost);
    twoelem->add_flag("--band-check", te_band, "also scan the omega in [7,11] bands");

    // verify-relation
    auto* vrel = app.add_subcommand("verify-relation", "exact multiplicative relation check");
    std::string vr_values, vr_exps;
    vrel->add_option("--values", vr_values)->required();
    vrel->add_option("--exps", vr_exps)->required();

    // lattice-bruteforce
    auto* latt = app.add_subcommand("lattice-bruteforce", "relation lattice basis inside a norm box");
    std::string lb_values;
    std::int64_t lb_cap = 10;
    latt->add_option("--values", lb_values)->required();
    latt->add_option("--cap", lb_cap)->required();

    std::vector<std::string> argv_copy(args);
    std::vector<char*> argv;
    argv.reserve(argv_copy.size() + 1);
    static char prog[] = "singmod";
    argv.push_back(prog);
    for (auto& a : argv_copy) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (*classnum) {
            auto d = qf::split_discriminant(delta);
            json j = discriminant_json(d);
            j["h"] = std::to_string(qf::class_number(d));
            emit(out, j, format);
            return 0;
        }
        if (*forms) {
            auto d = qf::split_discriminant(forms_delta);
            auto fs = qf::reduced_forms(d);
            if (format == "csv") {
                out << "a,b,c\n";
                for (const auto& f : fs) out << f.a << "," << f.b << "," << f.c << "\n";
            } else {
                json j;
                j["discriminant"] = discriminant_json(d);
                j["forms"] = json::array();
                for (const auto& f : fs) j["forms"].push_back(form_json(f));
                emit(out, j, format);
            }
            return 0;
        }
        if (*psi_cmd) {
            auto d = qf::split_discriminant(psi_delta);
            json j{{"delta", std::to_string(psi_delta)},
                   {"ell", std::to_string(psi_ell)},
                   {"psi", qf::psi(psi_ell, d).get_str()}};
            emit(out, j, format);
            return 0;
        }
        if (*denoms) {
            json j;
            if (den_A >= 2) {
                j["A"] = std::to_string(den_A);
                j["S"] = std::to_string(qf::denominator_count_bounds(den_A));
                json row = json::array();
                for (std::int64_t a = 1; a < den_A; ++a) row.push_back(qf::s_of_a(a));
                j["s"] = row;
            }
            if (den_delta < 0 && den_a >= 1) {
                auto d = qf::split_discriminant(den_delta);
                j["delta"] = std::to_string(den_delta);
                j["a"] = std::to_string(den_a);
                j["admits"] = qf::admits_denominator(d, den_a);
                j["multiplicity"] = std::to_string(qf::denominator_multiplicity(d, den_a));
            }
            if (j.empty()) {
                err << "denominators: provide --A or (--delta, --a)\n";
                return 2;
            }
            emit(out, j, format);
            return 0;
        }
        if (*iso_cmd) {
            json j;
            if (iso_qset >= 1) {
                json arr = json::array();
                for (const auto& r : iso::q_set(iso_qset).ratios) arr.push_back(r.get_str());
                j["qset"] = arr;
                j["n"] = std::to_string(iso_qset);
            }
            if (!iso_z.empty() && !iso_w.empty()) {
                auto z = parse_i64_list(iso_z), w = parse_i64_list(iso_w);
                if (z.size() != 2 || w.size() != 2 || iso_delta >= 0 || iso_n < 1) {
                    err << "isogeny: --z b,a --w b,a --delta <neg> --n <pos>\n";
                    return 2;
                }
                bool res = iso::isogenous_upper_triangular({z[0], z[1], iso_delta}, {w[0], w[1], iso_delta},
                                                           iso_n);
                j["isogenous"] = res;
            }
            if (!iso_x.empty() && !iso_y.empty()) {
                auto xf = parse_i64_list(iso_x), yf = parse_i64_list(iso_y);
                if (xf.size() != 3 || yf.size() != 3) {
                    err << "isogeny: --x a,b,c --y a,b,c with --dx --dy\n";
                    return 2;
                }
                auto deg = iso::construct_isogeny_degree(
                    {qf::ReducedForm{xf[0], xf[1], xf[2]}, qf::split_discriminant(iso_dx)},
                    {qf::ReducedForm{yf[0], yf[1], yf[2]}, qf::split_discriminant(iso_dy)});
                if (deg)
                    j["constructive_degree"] = std::to_string(*deg);
                else
                    j["constructive_degree"] = nullptr;
            }
            if (j.empty()) {
                err << "isogeny: nothing to do\n";
                return 2;
            }
            emit(out, j, format);
            return 0;
        }
        if (*jeval) {
            if (jeval_coeffs >= 0) {
                auto c = jfun::j_coefficients(jeval_coeffs);
                json arr = json::array();
                for (int k = -1; k <= c.max_index(); ++k) arr.push_back(c.at(k).get_str());
                json j{{"coefficients", arr}};
                emit(out, j, format);
                return 0;
            }
            ball::BallComplex value(static_cast<mpfr_prec_t>(prec_bits));
            if (!jeval_form.empty()) {
                auto f = parse_i64_list(jeval_form);
                if (f.size() != 3 || jeval_delta >= 0) {
                    err << "jeval: --form a,b,c --delta <neg>\n";
                    return 2;
                }
                value = jfun::singular_modulus(qf::ReducedForm{f[0], f[1], f[2]},
                                               qf::split_discriminant(jeval_delta),
                                               static_cast<mpfr_prec_t>(prec_bits));
            } else if (!tau_im.empty()) {
                mpfr_prec_t p = static_cast<mpfr_prec_t>(prec_bits) + 64;
                ball::BallReal re(p), im(p);
                auto set_decimal = [p](ball::BallReal& b, const std::string& s) {
                    int t = mpfr_strtofr(b.mid_.get(), s.c_str(), nullptr, 10, MPFR_RNDN);
                    if (t != 0 && !mpfr_zero_p(b.mid_.get())) {
                        // one ulp covers the decimal-to-binary rounding
                        mpfr_set_ui_2exp(b.rad_.get(), 1, mpfr_get_exp(b.mid_.get()) - p + 1, MPFR_RNDU);
                    }
                };
                if (!tau_re.empty()) set_decimal(re, tau_re);
                set_decimal(im, tau_im);
                value = jfun::eval_j(ball::BallComplex(re, im), static_cast<mpfr_prec_t>(prec_bits));
            } else {
                err << "jeval: provide --form/--delta or --tau-im\n";
                return 2;
            }
            json j{{"value", value.to_string(static_cast<int>(prec_bits / 3))}};
            Int certified;
            ball::Mpfr imab(ball::kRadPrec);
            mpfr_abs(imab.get(), value.im(), MPFR_RNDU);
            if (mpfr_cmp(imab.get(), value.rad()) <= 0 && value.real_part().certified_integer(certified))
                j["certified_integer"] = certified.get_str();
            emit(out, j, format);
            return 0;
        }
        if (*vconst) {
            auto rep = jfun::verify_expansion_constants(static_cast<mpfr_prec_t>(vconst_prec));
            json j;
            j["checks"] = json::array();
            for (const auto& c : rep.checks)
                j["checks"].push_back(
                    json{{"label", c.label}, {"computed", c.computed}, {"limit", c.limit}, {"ok", c.ok}});
            j["all_ok"] = rep.all_ok;
            emit(out, j, format);
            return rep.all_ok ? 0 : 1;
        }
        if (*masser) {
            Int X(mb_x);
            Int bound = mb_sigma ? rel::masser_sigma_bound(mb_k, X, mb_ell)
                                 : rel::masser_basis_bound(mb_k, X, mb_ell);
            json j{{"k", mb_k}, {"x", X.get_str()}, {"ell", mb_ell}, {"bound", bound.get_str()}};
            emit(out, j, format);
            return 0;
        }
        if (*hyp) {
            json j;
            bool verdict;
            mpfr_prec_t p = 128;
            auto render = [](const ball::BallReal& v) { return v.to_string(20); };
            if (!hy_eps.empty()) {
                Rat eps(hy_eps);
                eps.canonicalize();
                std::int64_t core = hy_core > 0 ? hy_core : hy_Y;
                verdict = rel::eassumpdelta_holds(hy_k, hy_X, core, hy_A, eps);
                j["predicate"] = "eassumpdelta";
                j["eps"] = eps.get_str();
                ball::BallReal lhs = ball::BallReal::exact_i64(core, p).sqrt();
                Rat keps = Rat(hy_k) / eps;
                ball::BallReal r1 =
                    ball::BallReal::from_rational(keps, p).mul(ball::BallReal::exact_i64(hy_X, p).log());
                ball::BallReal r2 = ball::BallReal::from_rational(keps, p)
                                        .log()
                                        .add(ball::BallReal::exact_i64(4, p))
                                        .mul_i64(hy_A)
                                        .div(ball::BallReal::exact_i64(3, p));
                j["lhs"] = render(lhs);
                j["rhs"] = render(r1.certainly_less(r2) ? r2 : r1);
            } else {
                verdict = rel::erootofy_holds(hy_k, hy_X, hy_Y, hy_A);
                j["predicate"] = "erootofy";
                ball::BallReal lhs = ball::BallReal::exact_i64(hy_Y, p).sqrt();
                ball::BallReal rhs = ball::BallReal::exact_i64(hy_X, p)
                                         .log()
                                         .add(ball::BallReal::exact_i64(hy_A, p).log())
                                         .add(ball::BallReal::exact_i64(hy_k, p).log())
                                         .add(ball::BallReal::exact_i64(20, p))
                                         .mul_i64(hy_A)
                                         .mul_i64(hy_k)
                                         .div(ball::BallReal::exact_i64(3, p));
                j["lhs"] = render(lhs);
                j["rhs"] = render(rhs);
            }
            j["hypothesis"] = verdict;
            j["verdict"] = verdict ? "holds" : "fails";
            emit(out, j, format);
            return 0;
        }
        if (*cases_cmd) {
            if (table == "t2") {
                json j;
                j["configurations"] = json::array();
                for (const auto& c : cases::builtin_discriminant_configs())
                    j["configurations"].push_back(json{{"e_x", c.e_x},
                                                       {"deg_x", c.deg_x},
                                                       {"e_y", c.e_y},
                                                       {"deg_y", c.deg_y},
                                                       {"e_z", c.e_z},
                                                       {"deg_z", c.deg_z},
                                                       {"congruence", c.congruence},
                                                       {"remark", c.remark}});
                emit(out, j, format);
                return 0;
            }
            auto rep = cases::check_all_cases();
            json j;
            j["rows"] = json::array();
            std::string prefix = table == "all" ? "" : table;
            int shown_total = 0;
            for (const auto& rr : rep.rows) {
                if (!prefix.empty() && rr.case_id.rfind(prefix, 0) != 0) continue;
                shown_total += rr.systems;
                j["rows"].push_back(json{{"case", rr.case_id},
                                         {"systems", rr.systems},
                                         {"trivial", rr.trivial},
                                         {"vacuous", rr.vacuous},
                                         {"infeasible", rr.infeasible},
                                         {"failed", rr.failed}});
            }
            j["exceptions"] = json::array();
            for (const auto& ex : rep.exceptions) {
                if (!prefix.empty() && ex.provenance.rfind(prefix, 0) != 0) continue;
                json kj = json::array();
                for (const auto& v : ex.kernel.basis) {
                    json vec = json::array();
                    for (const auto& c : v) vec.push_back(c.get_str());
                    kj.push_back(vec);
                }
                const char* verdict = ex.verdict == cases::SystemVerdict::VacuousConfiguration ? "vacuous"
                                      : ex.verdict == cases::SystemVerdict::InfeasibleKernel  ? "infeasible"
                                                                                              : "FAILED";
                j["exceptions"].push_back(
                    json{{"system", ex.provenance}, {"verdict", verdict}, {"kernel", kj}, {"note", ex.note}});
            }
            j["total_systems"] = rep.total_systems;
            j["table3_core_systems"] = rep.table3_core_systems;
            j["counts_match"] = rep.counts_match;
            j["pass"] = rep.pass;
            j["strict_pass"] = rep.strict_pass;
            if (table == "all")
                j["totals_line"] = "390+8+2+6+6+9+3";
            emit(out, j, format);
            bool ok = strict ? rep.strict_pass : rep.pass;
            return ok ? 0 : 1;
        }
        if (*watkins) {
            if (wb_formula) {
                std::int64_t f = 0;
                std::int64_t bound = searches::watkins_extension_bound(&f);
                json j{{"formula_bound", std::to_string(bound)}, {"attained_at_f", std::to_string(f)}};
                emit(out, j, format);
                return 0;
            }
            std::int64_t bound = wb_full ? 28753200 : wb_bound;
            std::ofstream ck;
            auto ck_mutex = std::make_shared<std::mutex>();
            std::function<void(std::int64_t, std::int64_t)> cb;
            bool progress = bound >= 5000000;
            if (!checkpoint_path.empty() || progress) {
                if (!checkpoint_path.empty()) ck.open(checkpoint_path);
                cb = [&ck, &err, progress, ck_mutex](std::int64_t lo, std::int64_t hi) {
                    std::lock_guard<std::mutex> lock(*ck_mutex);
                    if (ck.is_open()) ck << lo << " " << hi << " done\n" << std::flush;
                    if (progress) err << "sieve: a range [" << lo << ", " << hi << ") done\n";
                };
            }
            if (format == "csv") {
                auto counts = searches::sieve_class_numbers(bound, threads, 0, cb);
                out << "delta,h\n";
                for (std::int64_t d = 3; d <= bound; ++d) {
                    if (d % 4 != 0 && d % 4 != 3) continue;
                    auto h = static_cast<std::int64_t>(counts[static_cast<std::size_t>(d)]);
                    if (h >= 1 && h <= wb_maxh) out << -d << "," << h << "\n";
                }
                return 0;
            }
            auto rep = searches::sieve_report(bound, wb_maxh, threads);
            json j{{"bound", std::to_string(rep.bound)},
                   {"h_threshold", std::to_string(rep.h_threshold)},
                   {"max_abs_delta", std::to_string(rep.max_abs_delta_found)},
                   {"count_qualifying", std::to_string(rep.count_qualifying)}};
            j["elapsed_seconds"] = rep.elapsed_seconds;
            emit(out, j, format);
            return 0;
        }
        if (*twoelem) {
            auto rep = searches::enumerate_two_elementary(te_almost, threads);
            if (format == "csv") {
                out << "delta,h,almost\n";
                for (const auto& e : rep.discriminants)
                    out << e.delta << "," << e.h << "," << (te_almost ? 1 : 0) << "\n";
                return 0;
            }
            json j{{"almost", rep.almost},
                   {"count", std::to_string(rep.count)},
                   {"max_abs_delta", std::to_string(rep.max_abs)},
                   {"max_h", std::to_string(rep.max_h)},
                   {"exceptional_discriminant_caveat",
                    "valid outside one unknown fundamental discriminant of class number >= 128"}};
            bool band_ok = true;
            if (te_band) {
                std::vector<std::int64_t> cand;
                band_ok = searches::high_omega_band_check(threads, &cand);
                j["bands_empty"] = band_ok;
                json cj = json::array();
                for (auto c : cand) cj.push_back(std::to_string(c));
                j["band_candidates"] = cj;
            }
            emit(out, j, format);
            return band_ok ? 0 : 1;
        }
        if (*vrel) {
            auto values = parse_int_list(vr_values);
            auto exps = parse_int_list(vr_exps);
            bool ok = rel::verify_relation_exact(values, exps);
            json j{{"verified", ok}, {"verdict", ok ? "verified" : "fails"}};
            emit(out, j, format);
            return ok ? 0 : 1;
        }
        if (*latt) {
            auto values = parse_int_list(lb_values);
            auto basis = rel::relation_lattice_bruteforce(values, lb_cap);
            json j;
            j["basis"] = json::array();
            for (const auto& v : basis) {
                json vec = json::array();
                for (const auto& c : v) vec.push_back(c.get_str());
                j["basis"].push_back(vec);
            }
            emit(out, j, format);
            return 0;
        }
    } catch (const domain_error& e) {
        err << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const resource_error& e) {
        err << "resource error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "no subcommand\n";
    return 2;
}

}  // namespace singmod::cli
