#ifndef ASCAL_ADMISSIBILITY_HPP
#define ASCAL_ADMISSIBILITY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ascal {

struct AdmissibilityQuery {
    int d = 2;
    double gamma = 1.0;
    double s = 1.0;
    double r = 1.0;  // may be +inf
    std::optional<double> sigma;
    std::optional<double> kappa;
    std::optional<double> q;  // used when gamma > 1

    void validate() const;
};

struct Condition {
    std::string name;
    std::string inequality;  // evaluated text, numbers substituted
    bool holds = false;
    bool boundary = false;   // decided within 1e-12 of an equality
    std::optional<double> witness_p;
};

struct ConditionReport {
    bool admissible = false;
    std::vector<Condition> conditions;
    std::optional<double> min_sigma_s;   // binding lower bound over branches
    std::optional<double> max_sigma_s;   // LWP3 cap
    std::optional<double> min_kappa_s;   // kappa_threshold * s
    std::optional<double> kappa_threshold;
    std::vector<std::string> notes;
};

// (LWP1)-(LWP3) plus the gamma>1 auxiliary-space condition. sigma required.
ConditionReport check_lwp(const AdmissibilityQuery& q);

// (U1)/(U2) and (L1)/(L2) for the query's r-branch. kappa required.
ConditionReport check_monotonicity(const AdmissibilityQuery& q);

// Supremum of the closed-form kappa lower bounds; +inf when a kappa-free
// condition already fails. Every kappa above the returned value passes
// check_monotonicity.
double kappa_threshold(int d, double gamma, double s, double r);

// Canonical witness grid p in {1 + i/1000 : i >= 1, p < r} for the
// existential conditions; the brute-force oracle and the closed-form
// reductions are compared point-for-point on it.
struct PGrid {
    double r = 2.0;
    std::int64_t i_max = 0;

    static PGrid canonical(double r);
    double p(std::int64_t i) const { return 1.0 + static_cast<double>(i) * 1e-3; }
};

enum class ExistentialCondition { lwp2d, u2b, u2c };
enum class ForAllAlternative { l2a_alt1, l2a_alt2, l2b_alt1, l2b_alt2 };

// Closed form: admissible p-interval from the paper's reduction, resolved to
// grid indices by endpoint arithmetic (no scan).
bool exists_p_closed_form(ExistentialCondition c, const AdmissibilityQuery& q, const PGrid& grid,
                          double* witness = nullptr);
// Oracle: evaluates the raw inequalities at every grid point.
bool exists_p_brute_force(ExistentialCondition c, const AdmissibilityQuery& q, const PGrid& grid,
                          double* witness = nullptr);

// The (L2a)/(L2b) alternatives hold for all p; binding endpoint vs full scan.
bool forall_p_closed_form(ForAllAlternative a, const AdmissibilityQuery& q, const PGrid& grid);
bool forall_p_brute_force(ForAllAlternative a, const AdmissibilityQuery& q, const PGrid& grid);

struct ScanAxis {
    std::string param;  // one of gamma, s, r, sigma, kappa
    double lo = 0;
    double hi = 1;
    int count = 0;
};

struct ScanResult {
    ScanAxis axis1, axis2;
    std::vector<double> values1, values2;
    std::vector<int> admissible;  // row-major values1 x values2
    std::string checker;          // "lwp" or "monotonicity"
};

ScanResult scan_region(const AdmissibilityQuery& base, const ScanAxis& a1, const ScanAxis& a2,
                       bool use_monotonicity_checker);

}  // namespace ascal

#endif
