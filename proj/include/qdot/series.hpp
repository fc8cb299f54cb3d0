#pragma once

// Power-series machinery behind the explicit (p_phi, u) representation of the
// symmetric family. The boundary equation G_M = 1 reduces to inverting
//
//   F_a(y) = y (1 - y)^a,   a = -(M+2)/4,   y = v*^2 / (1+u^2),
//
// and the principal inverse G^-_a has the Pochhammer-form expansion
//
//   G^-_a(x) = x + a * sum_{k>=2} (t)_{k-2} / (k-1)! * (-x)^k,  t = 2 - k(a+1)
//
// (t is recomputed per term). Reversion of arbitrary series is done with a
// partition-sum recurrence; closed elementary forms exist for M = 2, 6, 10.

#include <vector>

namespace qdot {

struct SeriesCoeffs {
    std::vector<double> coeffs; // a_1, a_2, ..., a_n; a_1 != 0 for inversion
};

/// F_a(y) = y (1 - y)^a. Domain error at y = 1 for a < 0; y must lie in [0,1]
/// for a > 0 and in (-inf, 1) for a < 0.
double f_a(double a, double y);

/// Prefactor of the boundary equation: b_M(u) = (1+u^2)^{(M-2)/(2(M+2))}.
double b_m(double u, double M);

/// Taylor coefficients of F_a at 0: a_k = (-1)^{k-1} C(a, k-1), k = 1..n.
std::vector<double> f_a_taylor(double a, int n);

/// d_{[c],l,k}: coefficient of x^k in (sum_m c_m x^m)^l, computed as the
/// partition sum l! * sum_{parts of k, first part = l} prod c_i^{dk_i}/dk_i!.
/// Requires 1 <= l <= k and a coefficient list long enough for the partitions
/// encountered (length >= k - l + 1).
double partition_d_coeff(const std::vector<double>& c, int l, int k);

/// Series reversion: returns a* with sum_k a*_k (sum_m a_m y^m)^k = y up to
/// the truncation order. Requires a_1 != 0.
std::vector<double> invert_series(const std::vector<double>& a);

struct SeriesEval {
    double value;
    double last_term; // last partial-sum increment, signed
    bool diverging;   // term magnitudes were growing at truncation
};

/// Partial sum of G^-_a(x) through k = n_terms (n_terms >= 2).
SeriesEval g_minus_series(double a, double x, int n_terms);

/// Closed forms of G_{M,-}(x) for M = 2, 6, 10; not_implemented_error for the
/// remaining M = 2 + 4k family (only hypergeometric representations exist).
double g_closed(double M, double x);

/// Branch conjugation: phi(g)_a(x) = 1 - g_{1/a}(x^{1/a}); phi is an
/// involution and swaps the two inverse branches of F.
template <class G>
double phi_conjugate(G&& g, double a, double x);

enum class VstarBranch { Far, Near };

/// Series evaluation of v*(p_phi, u, M).
///   Far  — expansion in x = (p/b_M)^{2a}, accurate for p/b_M large.
///   Near — conjugated expansion in (p/b_M)^2, accurate for p/b_M small.
/// Outside the validated truncation region throws series_domain_error; use
/// bisection there.
double vstar_series(double p_phi, double u, double M, VstarBranch branch, int n_terms = 16);

/// Try the branch suggested by p/b_M, then the other; throws
/// series_domain_error when neither truncation validates.
double vstar_series_auto(double p_phi, double u, double M, int n_terms = 16);

// --- implementation of the template ---------------------------------------

double detail_phi_power(double x, double inv_a);

template <class G>
double phi_conjugate(G&& g, double a, double x) {
    const double inv_a = 1.0 / a;
    return 1.0 - g(inv_a, detail_phi_power(x, inv_a));
}

} // namespace qdot
