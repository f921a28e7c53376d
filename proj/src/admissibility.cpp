#include "ascal/admissibility.hpp"

#include "ascal/fields.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace ascal {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBoundaryEps = 1e-12;

double d_over_r(double d, double r) { return std::isinf(r) ? 0.0 : d / r; }
double d_frac(double d, double r) { return std::isinf(r) ? d : d * (r - 1.0) / r; }

std::string fmt(const char* pattern, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

struct Cmp {
    bool holds;
    bool boundary;
};

Cmp cmp_lt(double lhs, double rhs) {
    const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    return {lhs < rhs, std::abs(lhs - rhs) <= kBoundaryEps * scale};
}
Cmp cmp_le(double lhs, double rhs) {
    const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    return {lhs <= rhs, std::abs(lhs - rhs) <= kBoundaryEps * scale};
}

Condition make_cond(std::string name, std::string text, Cmp c) {
    Condition cond;
    cond.name = std::move(name);
    cond.inequality = std::move(text);
    cond.holds = c.holds;
    cond.boundary = c.boundary;
    return cond;
}

// Admissible x = d/p interval (A, B) of an existential condition; p ranges
// over (1, r), so x ranges over (d/r, d).
struct XInterval {
    double lo, hi;  // A, B
    bool empty() const { return !(lo < hi); }
};

XInterval x_interval(ExistentialCondition c, const AdmissibilityQuery& q) {
    const double d = q.d;
    const double dor = d_over_r(d, q.r);
    double x_lo = -kInf, x_hi = kInf;
    switch (c) {
        case ExistentialCondition::lwp2d: {
            const double sig_s = *q.sigma * q.s;
            x_lo = d + 1 - q.gamma - sig_s;
            x_hi = dor + sig_s;
            break;
        }
        case ExistentialCondition::u2b: {
            const double t = (*q.kappa + 2.0 / q.r) * q.s;
            x_lo = d - t;
            x_hi = dor + q.gamma + 2 * q.s - 2;
            break;
        }
        case ExistentialCondition::u2c: {
            const double t = (*q.kappa + 2.0 / q.r) * q.s;
            x_lo = d + 1 - 2 * q.s;
            x_hi = t + q.gamma - 1 + dor;
            break;
        }
    }
    return {std::max(dor, x_lo), std::min(d, x_hi)};
}

bool raw_existential(ExistentialCondition c, const AdmissibilityQuery& q, double p) {
    const double d = q.d, r = q.r, s = q.s, gamma = q.gamma;
    switch (c) {
        case ExistentialCondition::lwp2d: {
            const double sig_s = *q.sigma * s;
            return d * (r - p) / (r * p) < sig_s && 1 - gamma + d * (p - 1) / p < sig_s;
        }
        case ExistentialCondition::u2b: {
            const double t = (*q.kappa + 2.0 / r) * s;
            return d * (p - 1) / p < t &&
                   (*q.kappa - 2 * (r - 1) / r) * s + 2 - gamma + d * (r - p) / (r * p) < t;
        }
        case ExistentialCondition::u2c: {
            const double t = (*q.kappa + 2.0 / r) * s;
            return (*q.kappa - 2 * (r - 1) / r) * s + 1 + d * (p - 1) / p < t &&
                   1 - gamma + d * (r - p) / (r * p) < t;
        }
    }
    return false;
}

double raw_forall_lhs(ForAllAlternative a, const AdmissibilityQuery& q, double p) {
    const double d = q.d, r = q.r, s = q.s, gamma = q.gamma, kappa = *q.kappa;
    switch (a) {
        case ForAllAlternative::l2a_alt1:
            return d * (p - 1) / p;
        case ForAllAlternative::l2a_alt2:
            return (kappa - 2 * (r - 1) / r) * s + 2 - gamma + d * (r - p) / (r * p);
        case ForAllAlternative::l2b_alt1:
            return (kappa - 2 * (r - 1) / r) * s + 1 + d * (p - 1) / p;
        case ForAllAlternative::l2b_alt2:
            return 1 - gamma + d * (r - p) / (r * p);
    }
    return 0;
}

}  // namespace

void AdmissibilityQuery::validate() const {
    if (d < 1) throw ContractViolation("query: d must be a positive integer");
    if (!(gamma > 0.0 && gamma < d + 1.0))
        throw ContractViolation("query: gamma must lie in (0, d+1)");
    if (!(s > 0.0 && s <= 1.0)) throw ContractViolation("query: s must lie in (0, 1]");
    if (!(r >= 1.0)) throw ContractViolation("query: r must be >= 1");
}

PGrid PGrid::canonical(double r) {
    if (std::isinf(r)) throw ContractViolation("p-grid: finite r required");
    PGrid g;
    g.r = r;
    g.i_max = static_cast<std::int64_t>(std::floor((r - 1.0) * 1000.0));
    while (g.i_max >= 1 && !(g.p(g.i_max) < r)) --g.i_max;
    if (g.i_max < 0) g.i_max = 0;
    return g;
}

bool exists_p_closed_form(ExistentialCondition c, const AdmissibilityQuery& q, const PGrid& grid,
                          double* witness) {
    const XInterval x = x_interval(c, q);
    if (x.empty()) return false;
    const double d = q.d;
    const double p_lo = d / x.hi;                         // exclusive
    const double p_hi = x.lo > 0 ? d / x.lo : kInf;       // exclusive
    std::int64_t i_lo = static_cast<std::int64_t>(std::floor((p_lo - 1.0) * 1000.0)) - 1;
    if (i_lo < 1) i_lo = 1;
    while (i_lo <= grid.i_max && !(grid.p(i_lo) > p_lo)) ++i_lo;
    std::int64_t i_hi = grid.i_max;
    if (std::isfinite(p_hi)) {
        const auto cap = static_cast<std::int64_t>(std::ceil((p_hi - 1.0) * 1000.0)) + 1;
        if (cap < i_hi) i_hi = cap;
        while (i_hi >= i_lo && !(grid.p(i_hi) < p_hi)) --i_hi;
    }
    if (i_lo > i_hi || i_lo > grid.i_max) return false;
    if (witness) *witness = grid.p(i_lo);
    return true;
}

bool exists_p_brute_force(ExistentialCondition c, const AdmissibilityQuery& q, const PGrid& grid,
                          double* witness) {
    for (std::int64_t i = 1; i <= grid.i_max; ++i) {
        if (raw_existential(c, q, grid.p(i))) {
            if (witness) *witness = grid.p(i);
            return true;
        }
    }
    return false;
}

bool forall_p_closed_form(ForAllAlternative a, const AdmissibilityQuery& q, const PGrid& grid) {
    if (grid.i_max < 1) return true;  // vacuous
    const double kappa_s = *q.kappa * q.s;
    // alt1 variants increase in p (binding at the top of the grid), alt2
    // variants decrease (binding at the bottom)
    const bool increasing = a == ForAllAlternative::l2a_alt1 || a == ForAllAlternative::l2b_alt1;
    const double p_bind = increasing ? grid.p(grid.i_max) : grid.p(1);
    return raw_forall_lhs(a, q, p_bind) < kappa_s;
}

bool forall_p_brute_force(ForAllAlternative a, const AdmissibilityQuery& q, const PGrid& grid) {
    const double kappa_s = *q.kappa * q.s;
    for (std::int64_t i = 1; i <= grid.i_max; ++i)
        if (!(raw_forall_lhs(a, q, grid.p(i)) < kappa_s)) return false;
    return true;
}

ConditionReport check_lwp(const AdmissibilityQuery& q) {
    q.validate();
    if (!q.sigma) throw ContractViolation("check_lwp: sigma required");
    ConditionReport rep;
    const double d = q.d, s = q.s, r = q.r, gamma = q.gamma;
    const double sig_s = *q.sigma * s;
    const double dor = d_over_r(d, r);

    auto& cs = rep.conditions;
    cs.push_back(make_cond("LWP1", fmt("0 < s = %g <= 1", s, 0), {s > 0 && s <= 1, false}));

    bool branch = false;
    if (r == 1.0) {
        const Cmp c = cmp_le(1 - gamma, sig_s);
        cs.push_back(make_cond(
            "LWP2a", fmt("1-gamma = %g <= sigma*s = %g", 1 - gamma, sig_s), c));
        branch = c.holds;
        rep.min_sigma_s = 1 - gamma;
    } else {
        const Cmp b1 = cmp_lt(d_frac(d, r), sig_s);
        const Cmp b2 = cmp_le(1 - gamma, sig_s);
        Condition c2b = make_cond(
            "LWP2b",
            fmt("d(r-1)/r = %g < sigma*s and 1-gamma <= sigma*s = %g", d_frac(d, r), sig_s),
            {b1.holds && b2.holds, b1.boundary || b2.boundary});
        cs.push_back(c2b);

        const Cmp c3 = cmp_lt(1 - gamma + d_frac(d, r), sig_s);
        cs.push_back(make_cond(
            "LWP2c",
            fmt("1-gamma+d(r-1)/r = %g < sigma*s = %g", 1 - gamma + d_frac(d, r), sig_s), c3));

        Condition c2d;
        c2d.name = "LWP2d";
        const XInterval x = x_interval(ExistentialCondition::lwp2d, q);
        c2d.holds = !x.empty();
        c2d.inequality = fmt("exists p in (1,r): admissible d/p interval (%g, %g)", x.lo, x.hi);
        if (c2d.holds) {
            if (std::isinf(r)) {
                c2d.witness_p = d / (0.5 * (x.lo + x.hi));
            } else {
                double w;
                if (exists_p_closed_form(ExistentialCondition::lwp2d, q, PGrid::canonical(r), &w))
                    c2d.witness_p = w;
            }
        }
        cs.push_back(c2d);
        branch = c2b.holds || c3.holds || c2d.holds;

        const double lb_b = std::max(d_frac(d, r), 1 - gamma);
        const double lb_c = 1 - gamma + d_frac(d, r);
        const double lb_d = std::max(0.0, (d + 1 - gamma - dor) / 2);
        rep.min_sigma_s = std::min({lb_b, lb_c, lb_d});
    }

    const Cmp lwp3 = cmp_lt((sig_s + 1) / (2 * s), 1.0);
    cs.push_back(
        make_cond("LWP3", fmt("(sigma*s+1)/(2s) = %g < 1", (sig_s + 1) / (2 * s), 0), lwp3));
    rep.max_sigma_s = 2 * s - 1;

    bool q_ok = true;
    if (gamma > 1.0) {
        const Cmp l36 = cmp_lt(d + 1 - gamma, sig_s + dor);
        cs.push_back(make_cond(
            "L3.6", fmt("d+1-gamma = %g < sigma*s + d/r = %g", d + 1 - gamma, sig_s + dor),
            l36));
        q_ok = l36.holds;
        const double q_cap = d / (gamma - 1.0);
        if (q.q) {
            const Cmp lo = cmp_lt(1.0, *q.q);
            const Cmp hi = cmp_lt(*q.q, q_cap);
            cs.push_back(make_cond("q-range",
                                   fmt("1 < q = %g < d/(gamma-1) = %g", *q.q, q_cap),
                                   {lo.holds && hi.holds, lo.boundary || hi.boundary}));
            q_ok = q_ok && lo.holds && hi.holds;
        } else {
            cs.push_back(make_cond("q-exists",
                                   fmt("q interval (1, d/(gamma-1)) = (1, %g) nonempty", q_cap, 0),
                                   {q_cap > 1.0, false}));
            rep.notes.push_back(fmt("any q in (1, %g) works; witness q = %g", q_cap,
                                    0.5 * (1.0 + q_cap)));
            q_ok = q_ok && q_cap > 1.0;
        }
        if (gamma > 1.0 && rep.min_sigma_s)
            rep.min_sigma_s = std::max(*rep.min_sigma_s, d + 1 - gamma - dor);
    }

    // r0 bound set of the branch reductions (informational)
    auto r0_note = [&](const char* tag, double denom) {
        if (denom > 0)
            rep.notes.push_back(fmt((std::string(tag) + ": r < %g").c_str(), d / denom, 0));
        else
            rep.notes.push_back(std::string(tag) + ": unbounded in r");
    };
    r0_note("r0 bound (LWP2b)", d + 1 - 2 * s);
    r0_note("r0 bound (LWP2c)", d + 2 - gamma - 2 * s);
    r0_note("r0 bound (LWP2d)", d + 3 - gamma - 4 * s);

    rep.admissible = cs[0].holds && branch && lwp3.holds && (gamma <= 1.0 || q_ok);
    return rep;
}

ConditionReport check_monotonicity(const AdmissibilityQuery& q) {
    q.validate();
    if (!q.kappa) throw ContractViolation("check_monotonicity: kappa required");
    ConditionReport rep;
    const double d = q.d, s = q.s, r = q.r, gamma = q.gamma;
    const double kap_s = *q.kappa * s;
    const double dor = d_over_r(d, r);
    auto& cs = rep.conditions;

    bool all = true;
    auto push = [&](Condition c) {
        all = all && c.holds;
        cs.push_back(std::move(c));
    };

    if (r == 1.0) {
        push(make_cond("U1a", fmt("(2-gamma)/2 = %g <= s = %g", (2 - gamma) / 2, s),
                       cmp_le((2 - gamma) / 2, s)));
        {
            const Cmp a = cmp_le(0.5, s);
            const Cmp b = cmp_le(1 - gamma - 2 * s, kap_s);
            push(make_cond("U1b",
                           fmt("1/2 <= s and 1-gamma-2s = %g <= kappa*s = %g",
                               1 - gamma - 2 * s, kap_s),
                           {a.holds && b.holds, a.boundary || b.boundary}));
        }
        push(make_cond("U1c",
                       fmt("2-gamma-4s = %g <= kappa*s = %g", 2 - gamma - 4 * s, kap_s),
                       cmp_le(2 - gamma - 4 * s, kap_s)));
        push(make_cond("L1a", fmt("1-gamma = %g <= kappa*s = %g", 1 - gamma, kap_s),
                       cmp_le(1 - gamma, kap_s)));
        push(make_cond("L1b", fmt("2-gamma = %g <= kappa*s = %g", 2 - gamma, kap_s),
                       cmp_le(2 - gamma, kap_s)));
    } else {
        push(make_cond("U2a", fmt("1/2 <= s = %g", s, 0), cmp_le(0.5, s)));

        auto existential = [&](const char* name, ExistentialCondition ec) {
            Condition c;
            c.name = name;
            const XInterval x = x_interval(ec, q);
            c.holds = !x.empty();
            c.inequality = fmt("exists p in (1,r): admissible d/p interval (%g, %g)", x.lo, x.hi);
            if (c.holds) {
                if (std::isinf(r)) {
                    c.witness_p = d / (0.5 * (x.lo + x.hi));
                } else {
                    double w;
                    if (exists_p_closed_form(ec, q, PGrid::canonical(r), &w)) c.witness_p = w;
                }
            }
            push(std::move(c));
        };
        existential("U2b", ExistentialCondition::u2b);
        existential("U2c", ExistentialCondition::u2c);

        const double u2d_lhs = d + 2 - gamma - 2 * s - (d + 2 * s) / r;
        push(make_cond("U2d",
                       fmt("d+2-gamma-2s-(d+2s)/r = %g < kappa*s = %g", u2d_lhs, kap_s),
                       cmp_lt(u2d_lhs, kap_s)));

        {
            const double alt2 = 2 - 2 * s - gamma + d + (2 * s - d) / r;
            const Cmp a1 = cmp_lt(d_frac(d, r), kap_s);
            const Cmp a2 = cmp_lt(alt2, 0.0);
            push(make_cond("L2a",
                           fmt("d(r-1)/r = %g < kappa*s or 2-2s-gamma+d+(2s-d)/r = %g < 0",
                               d_frac(d, r), alt2),
                           {a1.holds || a2.holds, a1.boundary || a2.boundary}));
        }
        {
            const double alt1 = d + 1 - 2 * s + (2 * s - d) / r;
            const double alt2 = 1 - gamma + d - dor;
            const Cmp a1 = cmp_lt(alt1, 0.0);
            const Cmp a2 = cmp_lt(alt2, kap_s);
            push(make_cond("L2b",
                           fmt("d+1-2s+(2s-d)/r = %g < 0 or 1-gamma+d-d/r = %g < kappa*s",
                               alt1, alt2),
                           {a1.holds || a2.holds, a1.boundary || a2.boundary}));
        }
        {
            const double lhs = d + 2 - gamma - 2 * s + (2 * s - d) / r;
            push(make_cond("L2c",
                           fmt("d+2-gamma-2s+(2s-d)/r = %g < kappa*s = %g", lhs, kap_s),
                           cmp_lt(lhs, kap_s)));
        }
    }

    rep.admissible = all;
    const double k0 = kappa_threshold(q.d, gamma, s, r);
    rep.kappa_threshold = k0;
    rep.min_kappa_s = k0 * s;
    return rep;
}

double kappa_threshold(int d_int, double gamma, double s, double r) {
    const double d = d_int;
    if (r == 1.0) {
        if ((2 - gamma) / 2 > s || s < 0.5) return kInf;
        const double bound =
            std::max({1 - gamma - 2 * s, 2 - gamma - 4 * s, 1 - gamma, 2 - gamma});
        return bound / s;
    }
    // kappa-free requirements of the r>1 branch
    if (0.5 > s) return kInf;                    // U2a
    if (!((2 - gamma) / 2 < s)) return kInf;     // U2b interval needs gamma+2s-2 > 0
    if (!(s > 0.5)) return kInf;                 // U2c interval needs d+1-2s < d
    const double dor = d_over_r(d, r);
    const double two_s_over_r = std::isinf(r) ? 0.0 : 2 * s / r;
    double bound = -kInf;
    auto up = [&](double v) { bound = std::max(bound, v); };
    up(-two_s_over_r);                                   // U2b: (kappa+2/r)s > 0
    up(d + 2 - gamma - 2 * s - (dor + two_s_over_r));    // U2b/U2d reduction
    up(1 - gamma - two_s_over_r);                        // U2c: bound2 > d/r
    up(d + 2 - 2 * s - (two_s_over_r + dor) - gamma);    // U2c reduction
    if (!(2 - 2 * s - gamma + d + two_s_over_r - dor < 0))  // L2a alt2
        up(d_frac(d, r));
    if (!(d + 1 - 2 * s + two_s_over_r - dor < 0))          // L2b alt1
        up(1 - gamma + d - dor);
    up(d + 2 - gamma - 2 * s + two_s_over_r - dor);      // L2c
    return bound / s;
}

ScanResult scan_region(const AdmissibilityQuery& base, const ScanAxis& a1, const ScanAxis& a2,
                       bool use_monotonicity_checker) {
    ScanResult res;
    res.axis1 = a1;
    res.axis2 = a2;
    res.checker = use_monotonicity_checker ? "monotonicity" : "lwp";
    auto values = [](const ScanAxis& ax) {
        std::vector<double> v;
        for (int i = 0; i < ax.count; ++i)
            v.push_back(ax.count == 1 ? ax.lo
                                      : ax.lo + (ax.hi - ax.lo) * i / (ax.count - 1));
        return v;
    };
    res.values1 = values(a1);
    res.values2 = values(a2);

    auto assign = [](AdmissibilityQuery& q, const std::string& name, double v) {
        if (name == "gamma")
            q.gamma = v;
        else if (name == "s")
            q.s = v;
        else if (name == "r")
            q.r = v;
        else if (name == "sigma")
            q.sigma = v;
        else if (name == "kappa")
            q.kappa = v;
        else
            throw ContractViolation("scan: unknown axis parameter " + name);
    };

    for (double v1 : res.values1) {
        for (double v2 : res.values2) {
            AdmissibilityQuery q = base;
            assign(q, a1.param, v1);
            assign(q, a2.param, v2);
            int ok = 0;
            try {
                const ConditionReport rep =
                    use_monotonicity_checker ? check_monotonicity(q) : check_lwp(q);
                ok = rep.admissible ? 1 : 0;
            } catch (const ContractViolation&) {
                ok = 0;
            }
            res.admissible.push_back(ok);
        }
    }
    return res;
}

}  // namespace ascal
