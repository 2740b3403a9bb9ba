#pragma once

/**
 * @file cli.hpp
 * @brief Command-line front end. One subcommand per pipeline stage plus a batch verifier.
 *
 * Exit codes: 0 success, 1 usage, domain or internal error, 2 a count exceeded its bound.
 */

#include "bounds.hpp"
#include "curve.hpp"
#include "errors.hpp"
#include "pell.hpp"
#include "quadratic_ring.hpp"
#include "quartic.hpp"
#include "reduction.hpp"
#include "report.hpp"
#include "thue.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <exception>
#include <optional>
#include <ostream>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace thue1728::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kViolation = 2 };

struct RunConfig {
    unsigned precision_bits = 256;
    double tolerance = 1e-9;
    mpz_class box = 10000;
    mpz_class y_max = 10000;
    mpz_class X_max = 1000000;
    unsigned jobs = 1;
    std::string output = "json";
    bool at_most = false;
    bool solve = false;

    [[nodiscard]] Precision precision() const { return Precision{precision_bits}; }
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline mpz_class parse_integer(const std::string& s, const char* what) {
    static const std::regex re("^[+-]?[0-9]+$");
    if (!std::regex_match(s, re)) throw UsageError(std::string("malformed integer for ") + what + ": '" + s + "'");
    return mpz_class(s[0] == '+' ? s.substr(1) : s);
}

inline quartic::QuarticForm parse_form(const std::string& s) {
    quartic::QuarticForm F;
    std::stringstream ss(s);
    std::string part;
    std::size_t i = 0;
    while (std::getline(ss, part, ',')) {
        if (i == 5) throw UsageError("a form needs exactly five coefficients a0,a1,a2,a3,a4");
        F.a[i++] = parse_integer(part, "form coefficient");
    }
    if (i != 5) throw UsageError("a form needs exactly five coefficients a0,a1,a2,a3,a4");
    return F;
}

namespace detail {

inline void emit(std::ostream& out, const report::Json& j) { out << j.dump(2) << '\n'; }

inline void require_json(const RunConfig& cfg, const char* command) {
    if (cfg.output == "csv") throw UsageError(std::string("--output csv is not available for ") + command);
}

inline int cmd_unit(const RunConfig& cfg, const std::vector<std::string>& args, std::ostream& out) {
    if (args.size() != 1) throw UsageError("usage: unit D");
    const auto eps = quadratic::fundamental_unit(parse_integer(args[0], "D"));
    if (cfg.output == "text") {
        out << "eps = " << eps.T << " + " << eps.U << "*sqrt(" << eps.D << "), norm " << eps.norm << '\n';
    } else {
        require_json(cfg, "unit");
        emit(out, report::unit(eps));
    }
    return kOk;
}

inline int cmd_pell(const RunConfig& cfg, const std::vector<std::string>& args, std::ostream& out) {
    if (args.size() != 2) throw UsageError("usage: pell D k");
    require_json(cfg, "pell");
    const mpz_class D = parse_integer(args[0], "D"), k = parse_integer(args[1], "k");
    quadratic::require_nonsquare(D);
    emit(out, report::pell_solutions(D, k, cfg.y_max, pell::enumerate_pell(D, k, cfg.y_max)));
    return kOk;
}

inline int cmd_orbits(const RunConfig& cfg, const std::vector<std::string>& args, std::ostream& out) {
    if (args.size() != 2) throw UsageError("usage: orbits D k");
    require_json(cfg, "orbits");
    const mpz_class D = parse_integer(args[0], "D"), k = parse_integer(args[1], "k");
    emit(out, report::orbits(D, k, pell::orbits(D, k)));
    return kOk;
}

/// (X, Y) with X, Y > 0 reached from the Thue solutions of every target inside the box.
inline std::vector<std::pair<mpz_class, mpz_class>> recover_points(const reduction::ThueInstance& inst,
                                                                   const RunConfig& cfg) {
    std::vector<mpz_class> hs;
    for (const auto& t : inst.targets) hs.push_back(t.h);
    std::set<std::pair<mpz_class, mpz_class>> found;
    const auto eqs = thue::enumerate_thue_targets(inst.form, hs, cfg.box, cfg.precision());
    for (std::size_t i = 0; i < eqs.size(); ++i) {
        const auto& tg = inst.targets[i];
        for (const auto& s : eqs[i].solutions) {
            for (int sign : {1, -1}) {
                const auto r = reduction::uv_to_XY(inst, s.u * sign, s.v * sign, tg.P, tg.Q);
                if (r.XY && r.XY->first != 0 && r.XY->second != 0) {
                    found.emplace(abs(r.XY->first), abs(r.XY->second));
                }
            }
        }
    }
    return {found.begin(), found.end()};
}

inline int cmd_reduce(const RunConfig& cfg, const std::vector<std::string>& args, std::ostream& out) {
    if (args.size() != 2) throw UsageError("usage: reduce D k");
    require_json(cfg, "reduce");
    const mpz_class D = parse_integer(args[0], "D"), k = parse_integer(args[1], "k");
    const auto outcomes = reduction::reduce(D, k);
    report::Json branches = report::Json::array();
    for (const auto& o : outcomes) {
        report::Json b = {{"parity", reduction::to_string(o.branch.parity)},
                          {"s", report::integer(o.branch.s)},
                          {"t", report::integer(o.branch.t)},
                          {"status", reduction::to_string(o.status)},
                          {"note", o.note}};
        if (o.instance) {
            b["instance"] = report::instance(*o.instance);
            if (cfg.solve) {
                report::Json pts = report::Json::array();
                for (const auto& [X, Y] : recover_points(*o.instance, cfg)) pts.push_back(report::pair(X, Y));
                b["recovered"] = pts;
            }
        }
        branches.push_back(b);
    }
    emit(out, {{"D", report::integer(D)}, {"k", report::integer(k)}, {"branches", branches}});
    return kOk;
}

inline int cmd_thue_solve(const RunConfig& cfg, const std::vector<std::string>& args, std::ostream& out) {
    if (args.size() != 2) throw UsageError("usage: thue-solve a0,a1,a2,a3,a4 h");
    const auto F = parse_form(args[0]);
    const mpz_class h = parse_integer(args[1], "h");
    const thue::Mode mode = cfg.at_most ? thue::Mode::at_most : thue::Mode::exact;
    auto e = thue::enumerate_thue(F, h, cfg.box, mode, cfg.precision());

    const auto inv = quartic::invariants(F);
    const bool totally_real_j0 = inv.J == 0 && inv.I > 0 && F.a[0] != 0 && quartic::real_root_count(F) == 4;
    std::optional<thue::Diagnostics> diag;
    if (totally_real_j0 && !e.solutions.empty()) {
        const auto res = thue::classify_solutions(e, cfg.precision(), cfg.tolerance);
        diag = thue::gap_chain_report(e, res, cfg.precision(), cfg.tolerance);
    }
    std::optional<int> ineq;
    if (mode == thue::Mode::at_most && inv.J == 0 && inv.I > 0) {
        if (auto eps = thue::thm4_epsilon(inv.I, h, cfg.precision())) ineq = thue::thm4_count_bound(*eps);
    }
    if (cfg.output == "text") {
        out << "F = " << F.str() << ", h = " << h << ", " << thue::to_string(mode) << ", box " << e.box << '\n';
        for (const auto& s : e.solutions) out << "  (" << s.u << ", " << s.v << ") -> " << s.value << '\n';
        out << e.solutions.size() << " primitive solutions\n";
    } else {
        require_json(cfg, "thue-solve");
        report::Json j = report::enumeration(e, diag.has_value(), ineq);
        j["diagnostics"] = diag ? report::diagnostics(*diag) : report::Json(nullptr);
        emit(out, j);
    }
    return kOk;
}

inline int cmd_bounds(const RunConfig& cfg, const std::string& kind, const std::vector<std::string>& args,
                      std::ostream& out) {
    require_json(cfg, "bounds");
    const Precision p = cfg.precision();
    if (kind == "missproof") {
        if (args.size() != 1) throw UsageError("usage: bounds missproof N");
        emit(out, report::bound(bounds::thm_missproof_bound(parse_integer(args[0], "N"), p)));
        return kOk;
    }
    if (args.size() != 2) throw UsageError("usage: bounds " + kind + " D k");
    const mpz_class D = parse_integer(args[0], "D"), k = parse_integer(args[1], "k");
    if (kind == "main") {
        emit(out, report::bound(bounds::thm_main_bound(D, k, p)));
    } else if (kind == "mainqe") {
        emit(out, report::bound(bounds::thm_mainqe(D, k, p)));
    } else {
        emit(out, report::walsh(bounds::walsh_comparison(D, k, p)));
    }
    return kOk;
}

inline int cmd_curve(const RunConfig& cfg, const std::vector<std::string>& args, std::ostream& out) {
    if (args.size() != 1) throw UsageError("usage: curve N");
    const mpz_class N = parse_integer(args[0], "N");
    const auto pts = curve::enumerate_curve_points(N, cfg.X_max);
    if (cfg.output == "csv") {
        out << "X,Y,signs,kind\n";
        for (const auto& pt : pts) out << pt.X << ',' << pt.Y << ',' << pt.sign_count() << ',' << curve::to_string(pt.kind) << '\n';
    } else if (cfg.output == "text") {
        for (const auto& pt : pts) {
            out << "(" << pt.X << ", " << (pt.Y == 0 ? "" : "+-") << pt.Y << ") " << curve::to_string(pt.kind) << '\n';
        }
    } else {
        emit(out, report::curve_points(N, cfg.X_max, pts));
    }
    return kOk;
}

inline int cmd_verify(const RunConfig& cfg, const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    if (args.size() != 2) throw UsageError("usage: verify N_start N_end");
    const mpz_class lo = parse_integer(args[0], "N_start"), hi = parse_integer(args[1], "N_end");
    if (lo < 1 || hi < lo) throw UsageError("verify needs 1 <= N_start <= N_end");
    std::vector<mpz_class> Ns;
    for (mpz_class N = lo; N <= hi; ++N) {
        if (arith::is_squarefree(N)) {
            Ns.push_back(N);
        } else {
            err << "skipping N=" << N << " (not square-free)\n";
        }
    }
    curve::VerifyConfig vc;
    vc.X_max = cfg.X_max;
    vc.y_max = cfg.y_max;
    vc.box = cfg.box;
    vc.precision = cfg.precision();

    std::vector<std::optional<curve::CurveVerification>> results(Ns.size());
    std::vector<std::string> errors(Ns.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < Ns.size(); i = next++) {
            try {
                results[i] = curve::verify_theorems(Ns[i], vc);
            } catch (const std::exception& ex) {
                errors[i] = ex.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < cfg.jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    bool violation = false, failure = false;
    for (std::size_t i = 0; i < Ns.size(); ++i) {
        if (!errors[i].empty()) {
            failure = true;
            err << "N=" << Ns[i] << ": " << errors[i] << '\n';
            continue;
        }
        const auto& v = *results[i];
        violation = violation || v.bound_violation();
        for (const auto& s : v.violations) err << "bound violation: " << s << '\n';
        for (const auto& s : v.failures) {
            failure = true;
            err << "failure: " << s << '\n';
        }
    }

    if (cfg.output == "csv") {
        out << curve::csv_header() << '\n';
        for (const auto& r : results) {
            if (r) out << curve::csv_rows(*r);
        }
    } else if (cfg.output == "text") {
        for (const auto& r : results) {
            if (!r) continue;
            std::size_t quartic_points = 0, misses = 0;
            for (const auto& q : r->quartics) {
                quartic_points += q.points.size();
                misses += q.box_misses;
            }
            out << "N=" << r->N << " points=" << r->points.size() << " generic_signed=" << r->generic_signed
                << " bound=" << r->curve_bound.value.str(8) << " quartic_points=" << quartic_points
                << " box_misses=" << misses << (r->ok() ? " ok" : " FAIL") << '\n';
        }
    } else {
        report::Json list = report::Json::array();
        for (const auto& r : results) {
            if (r) list.push_back(report::verification(*r));
        }
        emit(out, {{"N_start", report::integer(lo)}, {"N_end", report::integer(hi)}, {"results", list}});
    }
    if (violation) return kViolation;
    return failure ? kUsage : kOk;
}

}  // namespace detail

inline constexpr const char* kFooter =
    "CSV columns for verify: N,D,k,count,bound1,bound2_applicable,bound2,bound3_share\n"
    "  count         positive solutions of x^2 - D y^4 = k with y <= --ymax\n"
    "  bound1        384 2^omega(k) eps^(3/2) sqrt(|k|/2D)\n"
    "  bound2        40 2^omega(k), present when |k| reaches its threshold\n"
    "  bound3_share  this D's term of the bound on integral points of Y^2 = X^3 - N X\n"
    "Exit codes: 0 success, 1 usage or domain error, 2 a count exceeded its bound.";

/// Parses argv and runs one subcommand; argv[0] is the program name.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Counting tools for X^2 - D Y^4 = k and Y^2 = X^3 - N X", "thue1728"};
    app.footer(kFooter);
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    std::string box = cfg.box.get_str(), ymax = cfg.y_max.get_str(), xmax = cfg.X_max.get_str();
    app.add_option("--box", box, "Thue search box and box-miss threshold")->capture_default_str();
    app.add_option("--ymax", ymax, "y limit for quartic and Pell scans")->capture_default_str();
    app.add_option("--xmax", xmax, "X limit for curve scans")->capture_default_str();
    app.add_option("--precision", cfg.precision_bits, "MPFR precision in bits")
        ->check(CLI::Range(64U, 1U << 20))
        ->capture_default_str();
    app.add_option("--tol", cfg.tolerance, "relative tolerance for numerical identities")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--jobs", cfg.jobs, "worker threads for verify")->check(CLI::Range(1U, 1024U))->capture_default_str();
    app.add_option("--output", cfg.output, "json, csv (verify, curve) or text (unit, thue-solve, curve, verify; JSON elsewhere)")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();

    std::vector<std::string> args;
    std::string kind;
    auto add = [&](const char* name, const char* help, const char* arg_help) {
        auto* sc = app.add_subcommand(name, help);
        sc->add_option("args", args, arg_help)->allow_extra_args();
        return sc;
    };
    auto* unit = add("unit", "fundamental unit of Z[sqrt D]", "D");
    auto* pell = add("pell", "solutions of x^2 - D y^2 = k with y <= --ymax", "D k");
    auto* orbits = add("orbits", "classes of x^2 - D y^2 = k and their fundamental solutions", "D k");
    auto* reduce = add("reduce", "Thue instances for X^2 - D Y^4 = k", "D k");
    reduce->add_flag("--solve", cfg.solve, "solve each instance inside --box and map the solutions back");
    auto* solve = add("thue-solve", "primitive solutions of F(u, v) = +-h inside --box", "a0,a1,a2,a3,a4 h");
    solve->add_flag("--at-most", cfg.at_most, "solve |F(u, v)| <= h instead");
    auto* bnd = app.add_subcommand("bounds", "count bounds: main D k | mainqe D k | missproof N | walsh D k");
    bnd->add_option("kind", kind, "main, mainqe, missproof or walsh")
        ->required()
        ->check(CLI::IsMember({"main", "mainqe", "missproof", "walsh"}));
    bnd->add_option("args", args, "arguments");
    auto* crv = add("curve", "integral points of Y^2 = X^3 - N X with X <= --xmax", "N");
    auto* ver = add("verify", "check every count bound for square-free N in a range", "N_start N_end");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        cfg.box = parse_integer(box, "--box");
        cfg.y_max = parse_integer(ymax, "--ymax");
        cfg.X_max = parse_integer(xmax, "--xmax");
        if (cfg.box < 1 || cfg.y_max < 1 || cfg.X_max < 1) throw UsageError("--box, --ymax and --xmax must be positive");
        if (unit->parsed()) return detail::cmd_unit(cfg, args, out);
        if (pell->parsed()) return detail::cmd_pell(cfg, args, out);
        if (orbits->parsed()) return detail::cmd_orbits(cfg, args, out);
        if (reduce->parsed()) return detail::cmd_reduce(cfg, args, out);
        if (solve->parsed()) return detail::cmd_thue_solve(cfg, args, out);
        if (bnd->parsed()) return detail::cmd_bounds(cfg, kind, args, out);
        if (crv->parsed()) return detail::cmd_curve(cfg, args, out);
        if (ver->parsed()) return detail::cmd_verify(cfg, args, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kUsage;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return kUsage;
    } catch (const NotFoundError& e) {
        err << "not found: " << e.what() << '\n';
        return kUsage;
    } catch (const IdentityFailure& e) {
        err << "internal consistency failure: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace thue1728::cli
