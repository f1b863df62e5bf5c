// Command-line surface for the order-process library: algebra on OPZ files,
// canonicalization, hereditary covers, sampling, estimation and the
// statistical checks.  Exit codes: 0 pass/success, 1 a check failed,
// 2 usage or format error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <opz/opz.hpp>

namespace fs = std::filesystem;
using namespace opz;

namespace {

std::string show(double v) { return format_double(v); }

std::string pair_str(Pair p) {
    return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

void emit_process(const OrderProcess& z, const std::string& out) {
    if (out.empty())
        std::cout << to_opz_string(z);
    else
        save_opz(z, out);
}

// The evaluator behind every check subcommand: closed form when requested or
// available, otherwise a seeded Monte Carlo stream shared across all
// evaluations of the run.
struct EvalOpts {
    bool exact = false;
    bool mc = false;
    std::size_t n = 100000;
    std::uint64_t seed = 1;

    void attach(CLI::App* cmd) {
        cmd->add_flag("--exact", exact, "use the closed-form evaluator");
        cmd->add_flag("--mc", mc, "force Monte Carlo even when a closed form exists");
        cmd->add_option("--n", n, "Monte Carlo sample count")->default_val(100000);
        cmd->add_option("--seed", seed, "Monte Carlo seed")->default_val(1);
    }

    ProbFn make(const MeasureModel& m) const {
        if (exact && mc) throw PreconditionViolation("--exact and --mc are exclusive");
        if (exact || (m.exact_available() && !mc)) return exact_evaluator(m);
        return mc_evaluator(m, n, seed);
    }
};

std::vector<std::pair<OrderProcess, OrderProcess>> consecutive_pairs(
    const std::vector<std::string>& files, LoadMode mode = LoadMode::strict) {
    if (files.size() < 2 || files.size() % 2 != 0)
        throw PreconditionViolation("expected an even number of process files");
    std::vector<std::pair<OrderProcess, OrderProcess>> out;
    for (std::size_t i = 0; i < files.size(); i += 2)
        out.emplace_back(load_opz(files[i], mode), load_opz(files[i + 1], mode));
    return out;
}

std::vector<OrderProcess> load_all(const std::vector<std::string>& files) {
    std::vector<OrderProcess> out;
    out.reserve(files.size());
    for (const auto& f : files) out.push_back(load_opz(f, LoadMode::strict));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"opz - algebra and statistics of finite-support order processes"};
    app.require_subcommand(1);

    // --- validate ---------------------------------------------------------
    auto* c_validate = app.add_subcommand("validate", "check an OPZ file against the max-triangle constraint");
    std::string v_file;
    c_validate->add_option("file", v_file, "OPZ file")->required();

    // --- eval -------------------------------------------------------------
    auto* c_eval = app.add_subcommand("eval", "print the relation at an instant");
    std::string e_file;
    double e_t = 0;
    c_eval->add_option("file", e_file)->required();
    c_eval->add_option("--t", e_t, "instant")->required();

    // --- join -------------------------------------------------------------
    auto* c_join = app.add_subcommand("join", "pointwise join of two processes");
    std::string j_a, j_b, j_out;
    c_join->add_option("a", j_a)->required();
    c_join->add_option("b", j_b)->required();
    c_join->add_option("-o,--out", j_out, "write result here instead of stdout");

    // --- leq --------------------------------------------------------------
    auto* c_leq = app.add_subcommand("leq", "is the first process below the second?");
    std::string l_a, l_b;
    c_leq->add_option("a", l_a)->required();
    c_leq->add_option("b", l_b)->required();

    // --- canon ------------------------------------------------------------
    auto* c_canon = app.add_subcommand("canon", "canonical representative of the relabeling class");
    std::string n_file, n_out;
    std::size_t n_limit = canon_support_limit;
    c_canon->add_option("file", n_file)->required();
    c_canon->add_option("-o,--out", n_out);
    c_canon->add_option("--limit", n_limit, "support-size cap for canonicalization");

    // --- add --------------------------------------------------------------
    auto* c_add = app.add_subcommand("add", "class addition (join of disjoint representatives)");
    std::string a_a, a_b, a_out;
    std::size_t a_limit = canon_support_limit;
    c_add->add_option("a", a_a)->required();
    c_add->add_option("b", a_b)->required();
    c_add->add_option("-o,--out", a_out);
    c_add->add_option("--limit", a_limit);

    // --- witnesses --------------------------------------------------------
    auto* c_wit = app.add_subcommand("witnesses", "finite covering witnesses within a hereditary family");
    std::string w_file, w_prefix;
    std::vector<std::string> w_family;
    double w_eps = 0;
    c_wit->add_option("file", w_file)->required();
    c_wit->add_option("--family", w_family, "generator OPZ files")->required()->expected(-1);
    c_wit->add_option("--eps", w_eps)->required();
    c_wit->add_option("--out-prefix", w_prefix, "write witnesses as <prefix><i>.opz");

    // --- sample -----------------------------------------------------------
    auto* c_sample = app.add_subcommand("sample", "draw processes from a model");
    std::string s_model, s_prefix;
    std::size_t s_count = 1;
    std::uint64_t s_seed = 1;
    c_sample->add_option("--model", s_model)->required();
    c_sample->add_option("--count", s_count)->default_val(1);
    c_sample->add_option("--seed", s_seed)->default_val(1);
    c_sample->add_option("--out-prefix", s_prefix, "write samples as <prefix><i>.opz");

    // --- estimate ---------------------------------------------------------
    auto* c_est = app.add_subcommand("estimate", "dominance probability of a test process");
    std::string t_model, t_z;
    std::size_t t_n = 100000;
    std::uint64_t t_seed = 1;
    bool t_exact = false;
    c_est->add_option("--model", t_model)->required();
    c_est->add_option("--z", t_z)->required();
    c_est->add_option("--n", t_n)->default_val(100000);
    c_est->add_option("--seed", t_seed)->default_val(1);
    c_est->add_flag("--exact", t_exact, "use the closed form instead of Monte Carlo");

    // --- simulate-jobs ----------------------------------------------------
    auto* c_jobs = app.add_subcommand("simulate-jobs", "sample completed-order processes of a job network");
    std::string sj_dag, sj_model, sj_prefix;
    std::size_t sj_count = 1;
    std::uint64_t sj_seed = 1;
    c_jobs->add_option("--dag", sj_dag, "precedence list; overrides the model's base relation");
    c_jobs->add_option("--model", sj_model)->required();
    c_jobs->add_option("--count", sj_count)->default_val(1);
    c_jobs->add_option("--seed", sj_seed)->default_val(1);
    c_jobs->add_option("--out-prefix", sj_prefix)->required();

    // --- check ------------------------------------------------------------
    auto* c_check = app.add_subcommand("check", "statistical checks against a model");
    c_check->require_subcommand(1);

    auto* k_pd = c_check->add_subcommand("pd", "positive definiteness of the join kernel");
    std::string pd_model;
    std::vector<std::string> pd_zs;
    double pd_tol = 1e-9;
    EvalOpts pd_eval;
    k_pd->add_option("--model", pd_model)->required();
    k_pd->add_option("--zs", pd_zs, "test processes")->required()->expected(-1);
    k_pd->add_option("--tol", pd_tol)->default_val(1e-9);
    pd_eval.attach(k_pd);

    auto* k_exch = c_check->add_subcommand("exch", "label invariance (exchangeability)");
    std::string x_model;
    std::vector<std::string> x_zs;
    std::size_t x_perms = 20;
    std::uint64_t x_perm_seed = 1;
    std::vector<std::vector<std::uint32_t>> x_transpose;
    EvalOpts x_eval;
    k_exch->add_option("--model", x_model)->required();
    k_exch->add_option("--zs", x_zs)->required()->expected(-1);
    k_exch->add_option("--perms", x_perms, "number of random window permutations")->default_val(20);
    k_exch->add_option("--perm-seed", x_perm_seed)->default_val(1);
    k_exch->add_option("--transpose", x_transpose, "explicit transposition a b")->expected(2);
    x_eval.attach(k_exch);

    auto* k_indep = c_check->add_subcommand("indep", "product rule on disjoint supports");
    std::string i_model;
    std::vector<std::string> i_zs;
    EvalOpts i_eval;
    k_indep->add_option("--model", i_model)->required();
    k_indep->add_option("--zs", i_zs, "process files, consecutive pairs")->required()->expected(-1);
    i_eval.attach(k_indep);

    auto* k_mono = c_check->add_subcommand("monotone", "dominance probability decreases along the order");
    std::string m_model;
    std::vector<std::string> m_zs;
    EvalOpts m_eval;
    k_mono->add_option("--model", m_model)->required();
    k_mono->add_option("--zs", m_zs, "process files, consecutive (below, above) pairs")->required()->expected(-1);
    m_eval.attach(k_mono);

    auto* k_cont = c_check->add_subcommand("cont", "continuity from below along delayed copies");
    std::string ct_model, ct_z;
    std::vector<double> ct_eps;
    double ct_bound = -1;
    EvalOpts ct_eval;
    k_cont->add_option("--model", ct_model)->required();
    k_cont->add_option("--z", ct_z)->required();
    k_cont->add_option("--eps", ct_eps, "strictly decreasing delays")->required()->expected(-1);
    k_cont->add_option("--bound", ct_bound, "override the final-gap bound");
    ct_eval.attach(k_cont);

    auto* k_conv = c_check->add_subcommand("converge", "sup-gap diagnostic against a limit model");
    std::vector<std::string> cv_models;
    std::string cv_limit;
    std::vector<std::string> cv_zs;
    double cv_tol = 1e-2;
    EvalOpts cv_eval;
    k_conv->add_option("--models", cv_models, "model sequence")->required()->expected(-1);
    k_conv->add_option("--limit", cv_limit)->required();
    k_conv->add_option("--zs", cv_zs)->required()->expected(-1);
    k_conv->add_option("--tol", cv_tol)->default_val(1e-2);
    cv_eval.attach(k_conv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*c_validate) {
            try {
                const OrderProcess z = load_opz(v_file, LoadMode::strict);
                std::cout << "PASS valid " << z.pair_count() << " edges\n";
                return 0;
            } catch (const ConstraintViolation& e) {
                std::cout << "FAIL " << e.what() << "\n";
                return 1;
            }
        }
        if (*c_eval) {
            const OrderProcess z = load_opz(e_file, LoadMode::strict);
            const PartialOrder v = z.at(e_t);
            for (auto [a, b] : v.pairs()) std::cout << "p " << a << " " << b << "\n";
            return 0;
        }
        if (*c_join) {
            emit_process(join(load_opz(j_a), load_opz(j_b)), j_out);
            return 0;
        }
        if (*c_leq) {
            const OrderProcess a = load_opz(l_a), b = load_opz(l_b);
            if (leq(a, b)) {
                std::cout << "true\n";
                return 0;
            }
            for (const auto& [p, t] : a.entries())
                if (!(b.time_of(p) <= t)) {
                    std::cout << "false\n"
                              << "FAIL leq: pair " << pair_str(p) << " switches at " << show(t)
                              << " but at " << show(b.time_of(p)) << " in the right process\n";
                    break;
                }
            return 1;
        }
        if (*c_canon) {
            emit_process(iso_class(load_opz(n_file), n_limit).rep(), n_out);
            return 0;
        }
        if (*c_add) {
            const IsoClass sum =
                add(iso_class(load_opz(a_a), a_limit), iso_class(load_opz(a_b), a_limit), a_limit);
            emit_process(sum.rep(), a_out);
            return 0;
        }
        if (*c_wit) {
            const OrderProcess z = load_opz(w_file);
            const HereditaryFamily fam(load_all(w_family));
            std::vector<OrderProcess> ws;
            try {
                ws = cover_witnesses(z, fam, w_eps);
            } catch (const NotAMember&) {
                std::cout << "FAIL not a member of the family\n";
                return 1;
            }
            std::cout << "PASS member\n";
            for (std::size_t i = 0; i < ws.size(); ++i) {
                if (!w_prefix.empty()) {
                    char name[32];
                    std::snprintf(name, sizeof name, "%03zu.opz", i);
                    const std::string path = w_prefix + name;
                    save_opz(ws[i], path);
                    std::cout << "WROTE " << path << "\n";
                }
                if (!fam.contains(ws[i])) {
                    std::cout << "FAIL witness " << i << " is not a member\n";
                    return 1;
                }
            }
            std::cout << "PASS witnesses-member " << ws.size() << "\n";
            const CoveringCheck cc = verify_covering(z, fam, ws, w_eps);
            if (!cc.pass) {
                std::cout << "FAIL covering at t=" << show(cc.failed_at) << "\n";
                return 1;
            }
            std::cout << "PASS covering\n";
            return 0;
        }
        if (*c_sample) {
            const MeasureModel model = load_model(s_model);
            for (std::size_t i = 0; i < s_count; ++i) {
                const OrderProcess z = sample(model, derive_seed(s_seed, i));
                if (s_prefix.empty()) {
                    std::cout << to_opz_string(z);
                } else {
                    char name[32];
                    std::snprintf(name, sizeof name, "%03zu.opz", i);
                    const std::string path = s_prefix + name;
                    save_opz(z, path);
                    std::cout << "WROTE " << path << "\n";
                }
            }
            return 0;
        }
        if (*c_est) {
            const MeasureModel model = load_model(t_model);
            const OrderProcess z = load_opz(t_z);
            const ProbEstimate e =
                t_exact ? exact_prob(model, z) : estimate_prob(model, z, t_n, t_seed);
            std::cout << "VALUE " << show(e.value) << " stderr " << show(e.se) << " n " << e.n
                      << (e.exact ? " exact" : "") << "\n";
            return 0;
        }
        if (*c_jobs) {
            MeasureModel model = load_model(sj_model);
            if (model.kind != ModelKind::completion)
                throw InvalidModel("simulate-jobs needs a completion model");
            if (!sj_dag.empty()) {
                model.base = load_dag(sj_dag);
                model.validate();
            }
            for (std::size_t i = 0; i < sj_count; ++i) {
                char name[32];
                std::snprintf(name, sizeof name, "%03zu.opz", i);
                const std::string path = sj_prefix + name;
                save_opz(sample(model, derive_seed(sj_seed, i)), path);
                std::cout << "WROTE " << path << "\n";
            }
            return 0;
        }
        if (*k_pd) {
            const MeasureModel model = load_model(pd_model);
            const PsdReport r = check_positive_definite(pd_eval.make(model), load_all(pd_zs), pd_tol);
            std::cout << (r.pass ? "PASS" : "FAIL") << " pd size " << r.size << " min-eigenvalue "
                      << show(r.min_eigenvalue) << " tol " << show(r.tol)
                      << (r.symmetric ? "" : " asymmetric") << "\n";
            return r.pass ? 0 : 1;
        }
        if (*k_exch) {
            const MeasureModel model = load_model(x_model);
            std::vector<Permutation> perms;
            Rng prng(x_perm_seed);
            for (std::size_t i = 0; i < x_perms; ++i)
                perms.push_back(Permutation::shuffled(model.effective_window(), prng));
            for (const auto& t : x_transpose)
                perms.push_back(Permutation::transposition(t[0], t[1]));
            const InvarianceReport r =
                check_label_invariance(x_eval.make(model), load_all(x_zs), perms);
            for (const auto& c : r.cases)
                if (!c.pass)
                    std::cout << "FAIL exch sample " << c.sample_index << " perm " << c.perm_index
                              << " base " << show(c.base) << " relabeled " << show(c.relabeled)
                              << " gap " << show(c.gap) << " tol " << show(c.tol) << "\n";
            std::cout << (r.pass ? "PASS" : "FAIL") << " exch cases " << r.cases.size() << "\n";
            return r.pass ? 0 : 1;
        }
        if (*k_indep) {
            const MeasureModel model = load_model(i_model);
            const IndependenceReport r =
                check_independent(i_eval.make(model), consecutive_pairs(i_zs));
            for (std::size_t i = 0; i < r.cases.size(); ++i) {
                const auto& c = r.cases[i];
                std::cout << (c.pass ? "PASS" : "FAIL") << " indep pair " << i << " joint "
                          << show(c.joint) << " product " << show(c.left * c.right) << " gap "
                          << show(c.gap) << " tol " << show(c.tol) << "\n";
            }
            std::cout << (r.pass ? "PASS" : "FAIL") << " indep pairs " << r.cases.size() << "\n";
            return r.pass ? 0 : 1;
        }
        if (*k_mono) {
            const MeasureModel model = load_model(m_model);
            const MonotoneReport r = check_monotone(m_eval.make(model), consecutive_pairs(m_zs));
            for (std::size_t i = 0; i < r.cases.size(); ++i) {
                const auto& c = r.cases[i];
                std::cout << (c.pass ? "PASS" : "FAIL") << " monotone pair " << i << " below "
                          << show(c.value_below) << " above " << show(c.value_above) << " tol "
                          << show(c.tol) << "\n";
            }
            std::cout << (r.pass ? "PASS" : "FAIL") << " monotone pairs " << r.cases.size() << "\n";
            return r.pass ? 0 : 1;
        }
        if (*k_cont) {
            const MeasureModel model = load_model(ct_model);
            const OrderProcess z = load_opz(ct_z);
            const double bound =
                ct_bound >= 0 ? ct_bound : continuity_bound(model, z, ct_eps.back());
            const ContinuityReport r =
                check_below_continuity(ct_eval.make(model), z, ct_eps, bound);
            for (std::size_t i = 0; i < r.eps.size(); ++i)
                std::cout << "VALUE cont eps " << show(r.eps[i]) << " value " << show(r.values[i])
                          << "\n";
            std::cout << (r.pass ? "PASS" : "FAIL") << " cont limit " << show(r.limit_value)
                      << " final-gap " << show(r.final_gap) << " bound " << show(r.bound)
                      << (r.monotone ? "" : " non-monotone") << "\n";
            return r.pass ? 0 : 1;
        }
        if (*k_conv) {
            const MeasureModel limit = load_model(cv_limit);
            std::vector<ProbFn> fns;
            for (const auto& f : cv_models) fns.push_back(cv_eval.make(load_model(f)));
            const ConvergenceReport r =
                check_convergence(fns, cv_eval.make(limit), load_all(cv_zs), cv_tol);
            for (std::size_t i = 0; i < r.sup_gaps.size(); ++i)
                std::cout << "VALUE converge step " << i << " sup-gap " << show(r.sup_gaps[i])
                          << "\n";
            std::cout << (r.pass ? "PASS" : "FAIL") << " converge tol " << show(r.tol)
                      << (r.monotone ? "" : " non-monotone") << "\n";
            return r.pass ? 0 : 1;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
