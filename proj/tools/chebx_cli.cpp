// Command-line surface: recompute and certify the envelope, reproduce the
// zero-count table, evaluate the density bounds, query quadratic-field
// counting functions, and run the verification suites.
//
// Exit codes: 0 = success / all checks pass, 1 = a verification failed,
// 2 = usage or configuration error.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "chebx/bounds.hpp"
#include "chebx/envelope.hpp"
#include "chebx/quadfield.hpp"
#include "chebx/verifier.hpp"
#include "chebx/zerocount.hpp"

using namespace chebx;

namespace {

struct Config {
    long working_bits = 192;
    long max_bits = 4096;
    long sieve_cap = 100000000;
    int threads = 0;
    std::string out_path;

    PrecisionContext ctx() const { return PrecisionContext(working_bits, max_bits); }
};

void load_config_file(Config& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string key, eq, value;
        if (!(ss >> key)) continue;
        auto pos = key.find('=');
        if (pos != std::string::npos) {
            value = key.substr(pos + 1);
            key = key.substr(0, pos);
        } else if (!(ss >> value)) {
            continue;
        }
        if (key == "working_bits") cfg.working_bits = std::stol(value);
        else if (key == "max_bits") cfg.max_bits = std::stol(value);
        else if (key == "sieve_cap") cfg.sieve_cap = std::stol(value);
        else if (key == "threads") cfg.threads = std::stoi(value);
        else throw CLI::ValidationError("--config", "unknown key " + key);
    }
}

void apply_env(Config& cfg) {
    if (const char* e = std::getenv("CHEBX_BITS")) cfg.working_bits = std::strtol(e, nullptr, 10);
}

// all numeric output is emitted as certified decimal endpoints
std::string lo_str(const Ball& b, int digits = 17) { return b.decimal(MPFR_RNDD, digits); }
std::string hi_str(const Ball& b, int digits = 17) { return b.decimal(MPFR_RNDU, digits); }

struct Out {
    std::ofstream file;
    std::ostream* os = &std::cout;
    explicit Out(const std::string& path) {
        if (!path.empty()) {
            file.open(path);
            os = &file;
        }
    }
    template <typename T> Out& operator<<(const T& v) {
        (*os) << v;
        return *this;
    }
};

int cmd_tables_a2(const Config& cfg) {
    auto sol = envelope::solve_and_round(cfg.ctx());
    auto ref = envelope::reference_numerators();
    Out out(cfg.out_path);
    out << "j,a_j_times_1e7_solved,a_j_times_1e7_reference,match\n";
    for (int j = 0; j < envelope::kTerms; ++j) {
        bool match = sol.rounded[(std::size_t)j] == ref[(std::size_t)j];
        out << (j + 1) << "," << sol.rounded[(std::size_t)j].get_str() << ","
            << ref[(std::size_t)j].get_str() << "," << (match ? "yes" : "no") << "\n";
    }
    std::cerr << "exact matches: " << sol.exact_matches << "/49 (solved at " << sol.bits_used
              << " bits)\n";
    return sol.exact_matches == envelope::kTerms ? 0 : 1;
}

int cmd_tables_a1(const Config& cfg, const std::string& t0) {
    using namespace zerocount;
    std::vector<T0Choice> choices;
    if (t0 == "1") choices = {T0Choice::One};
    else if (t0 == "2pi") choices = {T0Choice::TwoPi};
    else if (t0 == "10") choices = {T0Choice::Ten};
    else if (t0 == "all") choices = {T0Choice::One, T0Choice::TwoPi, T0Choice::Ten};
    else throw CLI::ValidationError("--t0", "expected 1, 2pi, 10 or all");
    Out out(cfg.out_path);
    out << "d1,t0,p,eta_lo,eta_hi,d2prime_lo,d2prime_hi,d3prime_lo,d3prime_hi,table_d2,table_d3,within_tolerance\n";
    bool ok = true;
    auto all = (choices.size() == 3) ? reproduce_table(cfg.ctx(), cfg.threads)
                                     : std::vector<TableEntryResult>{};
    if (choices.size() != 3)
        for (auto c : choices)
            for (int row = 0; row < 12; ++row) all.push_back(reproduce_entry(row, c, cfg.ctx()));
    for (auto& e : all) {
        bool row_ok = e.d2_ok && e.d3_ok && e.dominates;
        ok = ok && row_ok;
        out << e.d1 << "," << e.t0 << "," << lo_str(e.p, 7) << "," << lo_str(e.eta, 9) << ","
            << hi_str(e.eta, 9) << "," << lo_str(e.d2, 9) << "," << hi_str(e.d2, 9) << ","
            << lo_str(e.d3, 9) << "," << hi_str(e.d3, 9) << "," << e.d2_table << ","
            << e.d3_table << "," << (row_ok ? "yes" : "no") << "\n";
    }
    return ok ? 0 : 1;
}

int cmd_envelope_solve(const Config& cfg) { return cmd_tables_a2(cfg); }

int cmd_envelope_certify(const Config& cfg, const std::string& fault) {
    auto a = envelope::reference_coefficients();
    if (!fault.empty()) {
        mpq_class delta(fault);
        a[0] -= delta;
        std::cerr << "fault injection: a_1 -= " << delta.get_str() << "\n";
    }
    auto cert = envelope::certify_envelope(a);
    Out out(cfg.out_path);
    out << cert.to_text();
    return cert.certified ? 0 : 1;
}

int cmd_envelope_epsilon(const Config& cfg, unsigned n) {
    auto a = envelope::reference_coefficients();
    Ball e = envelope::compute_epsilon(n, a, cfg.ctx());
    double lb = e.lower_d();
    Out out(cfg.out_path);
    out << "{\"n\": " << n << ", \"value_lo\": \"" << lo_str(e) << "\", \"value_hi\": \""
        << hi_str(e) << "\", \"guaranteed_lower_bound\": \"" << (lb > 0 ? lb : 0.0) << "\"}\n";
    return 0;
}

int cmd_envelope_sums(const Config& cfg) {
    auto a = envelope::reference_coefficients();
    auto s = envelope::compute_constant_sums(a, cfg.ctx());
    Out out(cfg.out_path);
    auto emit = [&](const char* name, const Ball& b) {
        out << name << "," << lo_str(b) << "," << hi_str(b) << "\n";
    };
    out << "sum,value_lo,value_hi\n";
    emit("sum_a", s.sum_a);
    emit("sum_a_rational", s.sum_rational);
    emit("sum_a_digamma_half", s.sum_digamma_half);
    emit("sum_a_digamma_next", s.sum_digamma_next);
    return 0;
}

int cmd_zerocount_window(const Config& cfg, double logq, int ne, int achi, int bchi, double t) {
    using namespace zerocount;
    if (achi + bchi != ne) throw CLI::ValidationError("--achi", "a_chi + b_chi must equal n_E");
    auto ctx = cfg.ctx();
    auto k = canonical_constants(ctx);
    CharacterProfile prof{ne, achi, bchi, logq, 0};
    auto w = ntchi_window(Ball::exact_d(t, ctx.working_bits), prof, k, ctx);
    Out out(cfg.out_path);
    out << "{\"main_lo\": \"" << lo_str(w.main) << "\", \"main_hi\": \"" << hi_str(w.main)
        << "\", \"radius_hi\": \"" << hi_str(w.radius) << "\", \"window_lo\": \""
        << lo_str(w.main - w.radius) << "\", \"window_hi\": \"" << hi_str(w.main + w.radius)
        << "\"}\n";
    return 0;
}

int cmd_bounds_eval(const Config& cfg, const std::string& formula, double x, double t, int nl,
                    double ldl, const std::string& cls, int r1, int gorder, int sg, double eps) {
    auto ctx = cfg.ctx();
    mpfr_prec_t wp = ctx.working_bits;
    Ball xb = Ball::exact_d(x, wp);
    Ball lc = Ball::exact_d(ldl, wp);
    int dc = cls == "trivial" ? 1 : 0;
    if (sg < 0) sg = dc ? (r1 + (nl - r1) / 2) : 0;
    if (eps < 0) eps = bounds::epsilon_policy(nl);
    bounds::ClassProfile cp{dc, dc ? 1 : 2, sg, eps};
    Ball eb = Ball::exact_d(eps, wp);
    auto height = [&] { return t > 0 ? Ball::exact_d(t, wp) : bounds::T_of_x(xb); };
    Ball v(wp);
    if (formula == "main") v = bounds::main_bound(xb, lc, nl, ctx);
    else if (formula == "corollary") v = bounds::corollary_bound(xb, lc, nl, ctx);
    else if (formula == "la") v = bounds::parametric_bound_terms(xb, height(), nl, lc, cp, r1, eb, ctx).la;
    else if (formula == "ba") v = bounds::Ba(xb, height(), nl, lc, cp, r1, eb, ctx);
    else if (formula == "bb") v = bounds::Bb(xb, height(), nl, lc, cp, r1, eb, gorder, ctx);
    else throw CLI::ValidationError("--formula", "expected main|corollary|la|ba|bb");
    Out out(cfg.out_path);
    out << "{\"value_lo\": \"" << lo_str(v) << "\", \"value_hi\": \"" << hi_str(v) << "\"}\n";
    return 0;
}

int cmd_field_psi(const Config& cfg, long d, const std::string& cls, double x, bool trace) {
    field::QuadraticField F(d);
    field::ConjClass c = cls == "trivial" ? field::ConjClass::Trivial : field::ConjClass::Nontrivial;
    Sieve sieve = sieve_to((std::uint64_t)std::max(2.0, x) + 1);
    Out out(cfg.out_path);
    out << "x,psi_C,psi_C_full,bound\n";
    auto emit_at = [&](double xx) {
        auto v = field::psi_functions(F, c, xx, sieve);
        double lx = xx >= 1 ? std::log(xx) : 0;
        double B = std::sqrt(xx) * ((lx / (2 * M_PI) + 2) * F.ldl() + 2 * (lx * lx / (8 * M_PI) + 2));
        char buf[160];
        std::snprintf(buf, sizeof buf, "%.0f,%.12g,%.12g,%.12g\n", xx, v.psi_c.value(),
                      v.psi_full.value(), B);
        out << buf;
    };
    if (trace) {
        for (std::uint64_t pp : prime_powers((std::uint64_t)x, sieve.primes)) emit_at((double)pp);
    }
    emit_at(x);
    return 0;
}

int cmd_verify_quadratic(const Config& cfg, long dmax, long xmax, bool exhaustive) {
    auto rep = verify::verify_quadratic(dmax, (std::uint64_t)xmax, exhaustive, cfg.threads);
    Out out(cfg.out_path);
    out << "d,x1,pass,violations,near_miss_escalations,min_margin,argmin_x\n";
    for (auto& f : rep.fields) {
        char buf[200];
        std::snprintf(buf, sizeof buf, "%ld,%ld,%s,%ld,%ld,%.9g,%ld\n", f.d, f.x1,
                      f.pass ? "yes" : "no", f.violations, f.near_miss_escalations, f.min_margin,
                      f.argmin_x);
        out << buf;
        if (!f.pass) std::cerr << "violation: " << f.first_violation << "\n";
    }
    std::cerr << (rep.all_pass ? "all fields pass" : "VIOLATIONS FOUND") << "; fields="
              << rep.fields.size() << " max_x1=" << rep.max_x1
              << " escalations=" << rep.total_escalations << "\n";
    return rep.all_pass ? 0 : 1;
}

int emit_checkpoint_report(const Config& cfg, const verify::CheckpointReport& rep) {
    Out out(cfg.out_path);
    out << "check,margin,pass\n";
    for (auto& c : rep.checks) {
        char buf[64];
        std::snprintf(buf, sizeof buf, ",%.9g,", c.margin);
        out << "\"" << c.name << "\"" << buf << (c.pass ? "yes" : "no") << "\n";
    }
    return rep.all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"explicit Chebotarev density bounds: constants, certificates, verification"};
    app.require_subcommand(1);
    app.fallthrough(); // global options may appear after the subcommand
    Config cfg;
    apply_env(cfg);
    std::string config_path;
    app.add_option("--config", config_path, "key=value config file");
    app.add_option("--bits", cfg.working_bits, "working precision in bits");
    app.add_option("--max-bits", cfg.max_bits, "precision-escalation ceiling");
    app.add_option("--threads", cfg.threads, "worker threads (0 = auto)");
    app.add_option("--out", cfg.out_path, "write output to file instead of stdout");

    auto* env = app.add_subcommand("envelope", "the 49-term kernel majorant");
    auto* env_solve = env->add_subcommand("solve", "solve the constraint system, compare to the reference table");
    auto* env_cert = env->add_subcommand("certify", "exact Sturm certification of the majorant");
    std::string fault;
    env_cert->add_option("--fault-a1-minus", fault, "subtract an exact rational from a_1 first");
    auto* env_eps = env->add_subcommand("epsilon", "the epsilon_n constant");
    unsigned eps_n = 1;
    env_eps->add_option("--n", eps_n, "degree")->required();
    auto* env_sums = env->add_subcommand("sums", "the four coefficient sums");

    auto* zc = app.add_subcommand("zerocount", "zero-counting constants");
    auto* zc_table = zc->add_subcommand("table-a1", "reproduce the constants table");
    std::string t0 = "all";
    zc_table->add_option("--t0", t0, "1|2pi|10|all");
    auto* zc_search = zc->add_subcommand(
        "search-p", "non-canonical: scan the strip parameter p for one table row");
    std::string s_d1 = "0.460", s_t0 = "2pi";
    double s_step = 1e-3;
    zc_search->add_option("--d1", s_d1, "first-column constant");
    zc_search->add_option("--t0", s_t0, "1|2pi|10");
    zc_search->add_option("--step", s_step, "scan step over [-1/2, 0)");
    auto* zc_win = zc->add_subcommand("window", "certified zero-count window");
    double w_logq = 0, w_t = 0;
    int w_ne = 1, w_achi = 1, w_bchi = 0;
    zc_win->add_option("--logq", w_logq)->required();
    zc_win->add_option("--ne", w_ne)->required();
    zc_win->add_option("--achi", w_achi)->required();
    zc_win->add_option("--bchi", w_bchi)->required();
    zc_win->add_option("--t", w_t)->required();

    auto* bd = app.add_subcommand("bounds", "density bound formulas");
    auto* bd_eval = bd->add_subcommand("eval", "evaluate one formula");
    std::string formula = "main", cls = "nontrivial";
    double b_x = 0, b_t = -1, b_ldl = 0, b_eps = -1;
    int b_nl = 2, b_r1 = 0, b_g = 1, b_sg = -1;
    bd_eval->add_option("--formula", formula, "main|corollary|la|ba|bb")->required();
    bd_eval->add_option("--x", b_x)->required();
    bd_eval->add_option("--t", b_t, "defaults to T(x) = 5.2 sqrt(x)/log(x)");
    bd_eval->add_option("--nl", b_nl);
    bd_eval->add_option("--ldl", b_ldl);
    bd_eval->add_option("--class", cls, "trivial|nontrivial");
    bd_eval->add_option("--r1", b_r1);
    bd_eval->add_option("--gorder", b_g);
    bd_eval->add_option("--sg", b_sg, "override S_g (default: worst case for the class)");
    bd_eval->add_option("--eps", b_eps, "override epsilon_n (default: policy value)");

    auto* fd = app.add_subcommand("field", "quadratic field counting functions");
    auto* fd_psi = fd->add_subcommand("psi", "psi_C and psi(C;.) at x");
    long f_d = 5;
    double f_x = 100;
    std::string f_cls = "nontrivial";
    bool f_trace = false;
    fd_psi->add_option("--d", f_d, "fundamental discriminant")->required();
    fd_psi->add_option("--class", f_cls, "trivial|nontrivial");
    fd_psi->add_option("--x", f_x)->required();
    fd_psi->add_flag("--trace", f_trace, "emit one row per prime-power jump");

    auto* vf = app.add_subcommand("verify", "verification suites");
    auto* vf_quad = vf->add_subcommand("quadratic", "sweep all fundamental |d| < dmax");
    long v_dmax = 300, v_xmax = 100000;
    bool v_exhaustive = false;
    vf_quad->add_option("--dmax", v_dmax);
    vf_quad->add_option("--xmax", v_xmax);
    vf_quad->add_flag("--exhaustive", v_exhaustive, "check every integer x (default: jump points)");
    auto* vf_cp = vf->add_subcommand("checkpoints", "the discrete sign checkpoints");
    auto* vf_cor = vf->add_subcommand("corollary", "the corollary constant checks");

    auto* tb = app.add_subcommand("tables", "reproduce published tables");
    auto* tb_a2 = tb->add_subcommand("a2", "the 49 envelope coefficients");
    auto* tb_a1 = tb->add_subcommand("a1", "the zero-count constants");
    std::string t0b = "all";
    tb_a1->add_option("--t0", t0b, "1|2pi|10|all");

    try {
        app.parse(argc, argv);
        if (!config_path.empty()) load_config_file(cfg, config_path);
        if (cfg.working_bits < 64 || cfg.working_bits > cfg.max_bits)
            throw CLI::ValidationError("--bits", "need 64 <= bits <= max-bits");

        if (env_solve->parsed()) return cmd_envelope_solve(cfg);
        if (env_cert->parsed()) return cmd_envelope_certify(cfg, fault);
        if (env_eps->parsed()) return cmd_envelope_epsilon(cfg, eps_n);
        if (env_sums->parsed()) return cmd_envelope_sums(cfg);
        if (zc_table->parsed()) return cmd_tables_a1(cfg, t0);
        if (zc_search->parsed()) {
            using namespace zerocount;
            T0Choice c = s_t0 == "1" ? T0Choice::One : s_t0 == "10" ? T0Choice::Ten : T0Choice::TwoPi;
            auto r = search_p_strip(Ball::from_str(s_d1, cfg.working_bits), c, cfg.ctx(), s_step);
            Out out(cfg.out_path);
            out << "{\"non_canonical\": true, \"best_p\": " << r.best_p << ", \"d2prime_hi\": \""
                << hi_str(r.best_d2) << "\", \"d3prime_hi\": \"" << hi_str(r.best_d3) << "\"}\n";
            return 0;
        }
        if (zc_win->parsed()) return cmd_zerocount_window(cfg, w_logq, w_ne, w_achi, w_bchi, w_t);
        if (bd_eval->parsed())
            return cmd_bounds_eval(cfg, formula, b_x, b_t, b_nl, b_ldl, cls, b_r1, b_g, b_sg, b_eps);
        if (fd_psi->parsed()) return cmd_field_psi(cfg, f_d, f_cls, f_x, f_trace);
        if (vf_quad->parsed()) return cmd_verify_quadratic(cfg, v_dmax, v_xmax, v_exhaustive);
        if (vf_cp->parsed()) return emit_checkpoint_report(cfg, verify::run_checkpoints(cfg.ctx()));
        if (vf_cor->parsed())
            return emit_checkpoint_report(cfg, verify::corollary_constants_check(cfg.ctx()).checks);
        if (tb_a2->parsed()) return cmd_tables_a2(cfg);
        if (tb_a1->parsed()) return cmd_tables_a1(cfg, t0b);
        std::cerr << app.help() << "\n";
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
