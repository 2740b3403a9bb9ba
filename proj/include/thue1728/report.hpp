#pragma once

/**
 * @file report.hpp
 * @brief JSON serialization of every report type. Integers below 2^53 in magnitude are JSON numbers,
 * larger ones decimal strings; reals are decimal strings. Key order is fixed, so output is byte-stable.
 */

#include "bounds.hpp"
#include "curve.hpp"
#include "pell.hpp"
#include "quadratic_ring.hpp"
#include "quartic.hpp"
#include "reduction.hpp"
#include "thue.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace thue1728::report {

using Json = nlohmann::ordered_json;

inline constexpr int kDigits = 20;

inline Json integer(const mpz_class& n) {
    static const mpz_class limit = mpz_class(1) << 53;
    if (abs(n) < limit) return Json(n.get_si());
    return Json(n.get_str());
}

inline Json real(const Real& x, int digits = kDigits) { return Json(x.str(digits)); }

inline Json real(const std::optional<Real>& x, int digits = kDigits) { return x ? real(*x, digits) : Json(nullptr); }

inline Json pair(const mpz_class& a, const mpz_class& b) { return Json::array({integer(a), integer(b)}); }

inline Json form(const quartic::QuarticForm& F) {
    Json j = Json::array();
    for (const auto& c : F.a) j.push_back(integer(c));
    return j;
}

inline Json unit(const quadratic::FundamentalUnit& e) {
    return {{"T", integer(e.T)}, {"U", integer(e.U)}, {"D", integer(e.D)}, {"norm", e.norm}};
}

inline Json pell_solutions(const mpz_class& D, const mpz_class& k, const mpz_class& y_max,
                           const std::vector<pell::PellSolution>& sols) {
    Json list = Json::array();
    for (const auto& s : sols) list.push_back(pair(s.x, s.y));
    return {{"D", integer(D)}, {"k", integer(k)}, {"y_max", integer(y_max)}, {"solutions", list}};
}

inline Json orbits(const mpz_class& D, const mpz_class& k, const std::vector<pell::PellOrbit>& orbs) {
    Json list = Json::array();
    for (const auto& o : orbs) {
        Json members = Json::array();
        for (const auto& m : o.members) members.push_back(pair(m.x, m.y));
        list.push_back({{"fundamental", pair(o.fundamental.x, o.fundamental.y)},
                        {"members", members},
                        {"coprime", o.coprime},
                        {"within_nagell", o.within_nagell}});
    }
    // the fundamental-solution bounds use the norm +1 unit, eps^2 when N(eps) = -1
    const auto eps = quadratic::fundamental_unit(D);
    return {{"D", integer(D)},
            {"k", integer(k)},
            {"orbits", list},
            {"bound", integer(pell::orbit_count_bound(k))},
            {"bounds_unit", unit(quadratic::plus_one_unit(eps))},
            {"bounds_unit_is_square", eps.norm == -1}};
}

inline Json instance(const reduction::ThueInstance& inst) {
    Json targets = Json::array();
    for (const auto& t : inst.targets) targets.push_back({{"h", integer(t.h)}, {"P", integer(t.P)}, {"Q", integer(t.Q)}});
    const auto& pv = inst.provenance;
    const auto& pm = inst.param;
    auto triple = [](const std::array<mpz_class, 3>& a) {
        return Json::array({integer(a[0]), integer(a[1]), integer(a[2])});
    };
    return {{"form", form(inst.form)},
            {"targets", targets},
            {"provenance",
             {{"N", pv.N ? integer(*pv.N) : Json(nullptr)},
              {"D", integer(pv.D)},
              {"k", integer(pv.k)},
              {"s", integer(pv.s)},
              {"t", integer(pv.t)},
              {"parity", reduction::to_string(pv.parity)}}},
            {"param",
             {{"a", integer(pm.a)},
              {"b", integer(pm.b)},
              {"c", integer(pm.c)},
              {"R1", integer(pm.R1)},
              {"S1", integer(pm.S1)},
              {"T1", integer(pm.T1)},
              {"R2", integer(pm.R2)},
              {"S2", integer(pm.S2)},
              {"T2", integer(pm.T2)},
              {"z1", integer(pm.z1)},
              {"delta", integer(pm.delta)},
              {"base", Json::array({integer(pm.base.x), integer(pm.base.y), integer(pm.base.z)})}}},
            {"A1", triple(inst.A1)},
            {"A2", triple(inst.A2)},
            {"invariants",
             {{"I", integer(inst.invariant.I)},
              {"closed_form", integer(inst.invariant.closed_form)},
              {"product_form", integer(inst.invariant.product_form)},
              {"product_form_applicable", inst.invariant.product_form_applicable}}},
            {"notes", inst.notes}};
}

inline Json diagnostics(const thue::Diagnostics& d) {
    Json pairs = Json::array();
    for (const auto& g : d.gap_pairs) {
        pairs.push_back({{"first", pair(g.u1, g.v1)},
                         {"second", pair(g.u2, g.v2)},
                         {"root", g.root},
                         {"ratio", real(g.ratio, 12)},
                         {"holds", g.holds},
                         {"degenerate", g.degenerate}});
    }
    return {{"gap_constant", real(d.gap_constant, 12)},
            {"gap_pairs", pairs},
            {"best_gap_ratio", real(d.best_gap_ratio, 12)},
            {"covariant_product_max_deviation", real(d.c62_max_deviation, 6)},
            {"wronskian_min_ratio", real(d.lb2_min_ratio, 12)},
            {"covariant_m_min_ratio", real(d.mtheta_min_ratio, 12)},
            {"hessian_min_ratio", real(d.red2_min_ratio, 12)},
            {"form_reduced", d.red2_applicable},
            {"unit_circle_ok", d.unit_circle_ok},
            {"z_below_two", d.z_below_two},
            {"resolvent_residual", real(d.resolvent_residual, 6)},
            {"resolvent_ok", d.resolvent_ok}};
}

/// equation_count applies to exact mode; inequality_count to at_most mode when its hypothesis on h holds.
inline Json enumeration(const thue::Enumeration& e, bool classified, const std::optional<int>& thm4) {
    Json sols = Json::array();
    for (const auto& s : e.solutions) {
        Json js = {{"u", integer(s.u)}, {"v", integer(s.v)}, {"value", integer(s.value)}};
        if (classified) {
            js["root"] = s.related_root;
            js["class"] = thue::to_string(s.size_class);
            js["xi_abs"] = real(s.xi_abs, 12);
            js["one_minus_z_abs"] = real(s.one_minus_z_abs, 12);
        }
        sols.push_back(js);
    }
    return {{"form", form(e.form)},
            {"h", integer(e.h)},
            {"mode", thue::to_string(e.mode)},
            {"box", integer(e.box)},
            {"solutions", sols},
            {"bounds",
             {{"equation_count", integer(thue::equation_count_bound(e.h))},
              {"inequality_count", thm4 ? Json(*thm4) : Json(nullptr)}}}};
}

inline Json bound(const bounds::BoundReport& r) {
    Json inputs = Json::object();
    for (const auto& [k, v] : r.inputs) inputs[k] = v;
    const Precision p = r.value.precision();
    const Real log10v = r.log_value / log(Real(10L, p));
    return {{"name", r.name},
            {"inputs", inputs},
            {"value", real(r.value)},
            {"log10", real(log10v, 12)},
            {"applicable", r.applicable},
            {"note", r.note}};
}

inline Json walsh(const bounds::WalshComparison& c) {
    return {{"walsh_count", bound(c.walsh_count)},
            {"walsh_y_threshold", bound(c.walsh_y_threshold)},
            {"quartic_count", bound(c.main)},
            {"quartic_count_large_k", bound(c.mainqe)},
            {"log_ratio_quartic_count", real(c.log_ratio_main, 12)},
            {"log_ratio_large_k", real(c.log_ratio_mainqe, 12)}};
}

inline Json curve_point(const curve::CurvePoint& p) {
    Json j = {{"X", integer(p.X)}, {"Y", integer(p.Y)}, {"signs", p.sign_count()}, {"kind", curve::to_string(p.kind)}};
    if (auto q = curve::decompose_point(p)) {
        j["quartic"] = {{"D", integer(q->D)}, {"k", integer(q->k)}, {"x", integer(q->x)}, {"y", integer(q->y)}};
    }
    return j;
}

inline Json curve_points(const mpz_class& N, const mpz_class& X_max, const std::vector<curve::CurvePoint>& pts) {
    Json list = Json::array();
    for (const auto& p : pts) list.push_back(curve_point(p));
    return {{"N", integer(N)}, {"X_max", integer(X_max)}, {"points", list}};
}

inline Json verification(const curve::CurveVerification& v) {
    Json quartics = Json::array();
    for (const auto& q : v.quartics) {
        Json pts = Json::array();
        for (const auto& p : q.points) pts.push_back(pair(p.x, p.y));
        Json rts = Json::array();
        for (const auto& r : q.round_trips) {
            Json jr = {{"point", pair(r.point.x, r.point.y)}, {"ok", r.ok}};
            if (r.ok) {
                jr["u"] = integer(r.u);
                jr["v"] = integer(r.v);
                jr["P"] = integer(r.P);
                jr["Q"] = integer(r.Q);
                jr["F"] = integer(r.F_value);
                jr["box_miss"] = r.box_miss;
                jr["delta_extended"] = r.delta_extended;
            } else {
                jr["failure"] = r.failure;
            }
            rts.push_back(jr);
        }
        quartics.push_back({{"D", integer(q.D)},
                            {"k", integer(q.k)},
                            {"count", q.points.size()},
                            {"points", pts},
                            {"quartic_count", bound(q.main)},
                            {"quartic_count_large_k", bound(q.mainqe)},
                            {"curve_share", real(q.share, 12)},
                            {"within_quartic_count", q.within_main},
                            {"within_large_k", q.within_mainqe},
                            {"branches", q.branch_notes},
                            {"round_trips", rts},
                            {"box_misses", q.box_misses}});
    }
    return {{"N", integer(v.N)},
            {"X_max", integer(v.config.X_max)},
            {"y_max", integer(v.config.y_max)},
            {"points", v.points.size()},
            {"generic_signed", v.generic_signed},
            {"total_signed", v.total_signed},
            {"curve_count", bound(v.curve_bound)},
            {"within_curve_count", v.within_curve},
            {"quartics", quartics},
            {"violations", v.violations},
            {"failures", v.failures}};
}

}  // namespace thue1728::report
