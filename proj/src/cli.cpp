#include "jll/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "jll/errors.hpp"
#include "jll/geometry.hpp"
#include "jll/verify.hpp"
#include "jll/zeros.hpp"

namespace jll::cli {

namespace {

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct CommonOpts {
    double tmax = 1.5e5;
    std::string cache;
    std::string out;
    std::string format = "json";
    int threads = 1;
    double a_param = 7.0;
    double epsilon = 0.01;
    double tol = 1e-8;
};

void add_common(CLI::App* app, CommonOpts& o) {
    app->add_option("--tmax", o.tmax, "fine sample-grid roof");
    app->add_option("--cache", o.cache, "sample cache file (env JLL_CACHE)");
    app->add_option("--out", o.out, "write output to a file instead of stdout");
    app->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--threads", o.threads, "panel-build threads (env JLL_THREADS)");
    app->add_option("--a", o.a_param, "ladder mu-multiplier in [7,8]");
    app->add_option("--epsilon", o.epsilon, "window-exponent epsilon");
    app->add_option("--tol", o.tol, "solver residual tolerance");
}

void apply_env(CommonOpts& o, const CLI::App& app) {
    // precedence: flags > environment > defaults
    if (!app.count("--cache"))
        if (const char* e = std::getenv("JLL_CACHE"))
            o.cache = e;
    if (!app.count("--threads"))
        if (const char* e = std::getenv("JLL_THREADS"))
            o.threads = std::atoi(e);
}

Lab make_lab(const CommonOpts& o) {
    LabConfig cfg;
    cfg.grid.fine_max = o.tmax;
    cfg.ladder.a_param = o.a_param;
    cfg.ladder.epsilon = o.epsilon;
    cfg.ladder.tol_residual = o.tol;
    cfg.cache_path = o.cache;
    cfg.threads = o.threads;
    return Lab(cfg);
}

void emit(const std::string& text, const CommonOpts& o) {
    if (o.out.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream f(o.out, std::ios::trunc);
        f << text << "\n";
    }
}

std::string render(const std::vector<VerificationReport>& rs, const std::string& format) {
    std::ostringstream os;
    if (format == "csv") {
        os << report_csv_header();
        for (const auto& r : rs)
            os << "\n" << report_csv(r);
    } else if (rs.size() == 1) {
        os << report_json(rs[0]);
    } else {
        os << "[";
        for (std::size_t i = 0; i < rs.size(); ++i)
            os << (i ? "," : "") << "\n " << report_json(rs[i]);
        os << "\n]";
    }
    return os.str();
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(std::stod(item));
    return out;
}

VerificationReport dispatch(Lab& lab, const std::string& name, double T, double U,
                            double N, double M, int n, int k, const std::string& fname,
                            bool image, bool exact) {
    if (name == "thm1")
        return verify_theorem1(lab, T, U > 0 ? U : T / std::log(T));
    if (name == "fundamental")
        return verify_fundamental(lab, T);
    if (name == "meanvalue") {
        double U0 = lab.ladder().window_u0(T);
        double NN = N > 0 ? N : T + 0.2 * U0;
        double MM = M > 0 ? M : T + 0.8 * U0;
        return verify_mean_value(lab, NN, MM, T);
    }
    if (name == "thm2")
        return verify_theorem2(lab, T);
    if (name == "prediction")
        return point_prediction(lab, T);
    if (name == "cheb")
        return verify_chebyshev(lab, n, T);
    if (name == "selberg")
        return verify_selberg_moment(lab, k, T);
    if (name == "subst") {
        SubstFn f = SubstFn::one;
        if (fname == "linear")
            f = SubstFn::linear;
        else if (fname == "cheb")
            f = SubstFn::chebyshev;
        else if (fname == "pi")
            f = SubstFn::prime_pi;
        else if (fname == "selberg")
            f = SubstFn::selberg_pow;
        else if (fname != "one")
            throw domain_error("unknown --f (one|linear|cheb|pi|selberg)");
        return verify_substitution(lab, f, n, T, U > 0 ? U : T / std::log(T), image,
                                   exact);
    }
    throw domain_error("unknown verification: " + name);
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"jll: numerical laboratory for Jacob's ladders of the Riemann "
                 "zeta function"};
    app.require_subcommand(1);
    CommonOpts o;

    // cache
    auto* cache = app.add_subcommand("cache", "sample-grid cache maintenance");
    cache->require_subcommand(1);
    auto* cbuild = cache->add_subcommand("build", "build (or extend) the sample grid");
    double tail_to = 0.0;
    double oversample = 30.0;
    std::string csv_export;
    add_common(cbuild, o);
    cbuild->add_option("--oversample", oversample, "fine-tier oversampling (info only)");
    cbuild->add_option("--tail", tail_to, "extend the far tail to this ordinate");
    cbuild->add_option("--export-csv", csv_export, "also export fine nodes as CSV");
    auto* cinfo = cache->add_subcommand("info", "print cache summary");
    add_common(cinfo, o);

    // ladder
    auto* lad = app.add_subcommand("ladder", "solve the ladder equation at one T");
    double T = 0.0, U = 0.0, N = 0.0, M = 0.0;
    add_common(lad, o);
    lad->add_option("--T", T, "ordinate")->required();

    // zeros
    auto* zer = app.add_subcommand("zeros", "zeros of Z on [lo, hi] as CSV");
    double zlo = 10.0, zhi = 100.0;
    add_common(zer, o);
    zer->add_option("--lo", zlo)->required();
    zer->add_option("--hi", zhi)->required();

    // profile dump
    auto* prof = app.add_subcommand("profile", "dump a phi1 profile as t,phi1 CSV");
    double pT = 0.0, pU = 0.0;
    add_common(prof, o);
    prof->add_option("--T", pT)->required();
    prof->add_option("--U", pU)->required();

    // verify
    auto* ver = app.add_subcommand("verify", "run one verification");
    std::string vname, fname = "one";
    int vn = 1, vk = 1;
    bool image = false, exact = false;
    add_common(ver, o);
    ver->add_option("name", vname,
                    "thm1|fundamental|meanvalue|thm2|subst|cheb|selberg|gaplaw|prediction")
        ->required();
    ver->add_option("--T", T);
    ver->add_option("--U", U);
    ver->add_option("--N", N);
    ver->add_option("--M", M);
    ver->add_option("--n", vn, "polynomial degree for cheb/subst");
    ver->add_option("--k", vk, "moment order for selberg");
    ver->add_option("--f", fname, "substitution integrand");
    ver->add_flag("--image", image, "use the phi1^-1 window form");
    ver->add_flag("--exact", exact, "exact-transport weight Z~^2");
    std::string tlist;
    ver->add_option("--T-list", tlist, "comma list (gaplaw)");

    // sweep
    auto* sw = app.add_subcommand("sweep", "run one verification across T values");
    std::string sname, slist;
    add_common(sw, o);
    sw->add_option("--name", sname)->required();
    sw->add_option("--T-list", slist)->required();
    sw->add_option("--U", U);
    sw->add_option("--n", vn);
    sw->add_option("--k", vk);
    sw->add_option("--f", fname);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (cbuild->parsed()) {
            apply_env(o, *cbuild);
            Lab lab = make_lab(o);
            lab.grid().build_fine();
            if (tail_to > 0.0)
                lab.grid().extend_tail(tail_to);
            lab.save_cache();
            if (!csv_export.empty())
                lab.grid().export_csv(csv_export);
            std::cout << "fine_max=" << fmt12(lab.grid().fine_max())
                      << " tail_max=" << fmt12(lab.grid().tail_max())
                      << " evaluations=" << lab.grid().build_evaluations() << "\n";
            return 0;
        }
        if (cinfo->parsed()) {
            apply_env(o, *cinfo);
            Lab lab = make_lab(o);
            if (!lab.grid().built()) {
                std::cout << "no cache\n";
                return 0;
            }
            std::cout << "fine_max=" << fmt12(lab.grid().fine_max())
                      << " tail_max=" << fmt12(lab.grid().tail_max())
                      << " fine_panels=" << lab.grid().fine_panel_count() << "\n";
            return 0;
        }
        if (lad->parsed()) {
            apply_env(o, *lad);
            Lab lab = make_lab(o);
            auto pt = lab.ladder().solve(T);
            lab.save_cache();
            emit("T,phi,residual,a\n" + fmt12(pt.T) + "," + fmt12(pt.phi) + "," +
                     fmt12(pt.residual) + "," + fmt12(pt.a_param),
                 o);
            return 0;
        }
        if (zer->parsed()) {
            apply_env(o, *zer);
            auto pairs = find_zeros(zlo, zhi);
            std::ostringstream os;
            os << "gamma,gamma_prime";
            for (const auto& p : pairs)
                os << "\n" << fmt12(p.gamma) << "," << fmt12(p.gamma_prime);
            emit(os.str(), o);
            return 0;
        }
        if (prof->parsed()) {
            apply_env(o, *prof);
            Lab lab = make_lab(o);
            auto pr = lab.ladder().profile(pT, pU);
            lab.save_cache();
            std::ostringstream os;
            os << "t,phi1";
            for (std::size_t p = 0; p < pr.panel_count(); ++p) {
                double t = lab.grid().fine_panel_lo(pr.first_panel() + p);
                os << "\n" << fmt12(t) << "," << fmt12(pr.panel_phi1_start(p));
            }
            os << "\n" << fmt12(pr.t_end()) << ","
               << fmt12(pr.panel_phi1_start(pr.panel_count()));
            emit(os.str(), o);
            return 0;
        }
        if (ver->parsed()) {
            apply_env(o, *ver);
            Lab lab = make_lab(o);
            VerificationReport r;
            if (vname == "gaplaw") {
                auto ts = parse_list(tlist.empty() ? "1e3,1e4" : tlist);
                r = verify_gap_law(lab, ts);
            } else {
                if (T <= 0.0)
                    throw domain_error("verify: --T required");
                r = dispatch(lab, vname, T, U, N, M, vn, vk, fname, image, exact);
            }
            lab.save_cache();
            emit(render({r}, o.format), o);
            return (r.pass || !r.assertable) ? 0 : 1;
        }
        if (sw->parsed()) {
            apply_env(o, *sw);
            Lab lab = make_lab(o);
            std::vector<VerificationReport> rs;
            int fails = 0;
            for (double t : parse_list(slist)) {
                auto r = dispatch(lab, sname, t, U, 0, 0, vn, vk, fname, false, false);
                if (r.assertable && !r.pass)
                    ++fails;
                rs.push_back(std::move(r));
            }
            lab.save_cache();
            emit(render(rs, o.format), o);
            return std::min(fails, 100);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace jll::cli
