#pragma once

#include <optional>

#include "shrinkrisk/linmodel.hpp"

namespace shrinkrisk {

// Limit regime: p/n -> t in [0,1), beta'Sigma beta -> delta2 in [0, inf].
// delta2 = infinity is represented by std::numeric_limits<double>::infinity().
struct AsymptoticRegime {
    double t = 0.0;
    double delta2 = 0.0;
    double c = 0.0;
};

enum class PhaseRegion { worst_case_fails, worst_case_holds };

struct PhaseVerdict {
    PhaseRegion region = PhaseRegion::worst_case_holds;
    double sup_risk = 0.0;                 // sup over delta2 of the worst-case limit
    double arg_delta2 = 0.0;               // maximizer (may be infinity)
    double ml_limit = 0.0;                 // t/(1-t)
    double gap = 0.0;                      // sup_risk - ml_limit
    std::optional<double> epsilon;         // gap/2 when the gap is positive
    bool pointwise_safe = false;           // c <= 2: no fixed beta is asymptotically hurt
};

// Limit of the conditional out-of-sample risk:
//   r = t/(1-t) (1 - c t/(t+delta2))^2 + c^2 t^2 delta2 / (t+delta2)^2,
// with r(inf, c, t) = t/(1-t) and t/(t+delta2) read as 0 when t = delta2 = 0.
double r_limit(double delta2, double c, double t);

// Worst-case counterpart: last term divided by (1-sqrt(t))^2.
double R_limit(double delta2, double c, double t);

struct SupResult {
    double value = 0.0;
    double arg_delta2 = 0.0;  // infinity when the sup is approached at the boundary
};

// sup over delta2 in [0, inf] of R_limit, via the u = delta2/(1+delta2)
// reparametrization: 1025-point grid seed plus golden-section refinement
// to 1e-10 in u.
SupResult sup_worst_case(double c, double t);

struct PlugInResult {
    double delta_hat = 0.0;
    double risk = 0.0;  // r_limit(delta_hat, c, p/n)
};

// delta_hat = max{Y'Y/n - 1, 0} and the plug-in risk estimate.
PlugInResult delta_hat_plug_in(const ResponseVector& y, double c, int n, int p);

// Finite-sample worst-case risk over beta of the conditional risk, given the
// spectrum of V'V:
//   R*(d^2) = trace((V'V)^{-1}) [1 - 2cp M1 + (c^2+4c/p) p^2 M2]
//             + (c^2+4c/p)/lambda_min(V'V/n) p^2 d^2 M4,
// inverse moments at noncentrality n d^2; maximized over d^2 >= 0.
SupResult finite_sup_risk(double c, const VectorXd& v_spectrum, int n, int p);

// Evaluates R*(d^2) at a single point (exposed for convergence studies).
double finite_worst_case_at(double c, double d2, const VectorXd& v_spectrum, int n, int p);

// Closed-form classification of a (c, t) point. The failure region is
// {0 < c <= 2, t > ((c-2)/(c+2))^2} union {c > 2, t > 0}; boundary points
// classify as worst_case_holds. Throws std::logic_error if the analytic
// region contradicts the numeric supremum beyond a 1e-9 gap.
PhaseVerdict phase_classify(double c, double t);

}  // namespace shrinkrisk
