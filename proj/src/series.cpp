#include "qdot/series.hpp"

#include <cmath>
#include <stdexcept>

#include "qdot/errors.hpp"
#include "qdot/units.hpp"

namespace qdot {

double f_a(double a, double y) {
    if (a < 0.0) {
        if (!(y < 1.0))
            throw std::domain_error("f_a: y must be < 1 for a < 0");
    } else if (a > 0.0) {
        if (y < 0.0 || y > 1.0)
            throw std::domain_error("f_a: y must be in [0,1] for a > 0");
    }
    return y * std::pow(1.0 - y, a);
}

double b_m(double u, double M) {
    if (u < 0.0)
        throw std::domain_error("b_m: u must be >= 0");
    return std::pow(1.0 + u * u, (M - 2.0) / (2.0 * (M + 2.0)));
}

std::vector<double> f_a_taylor(double a, int n) {
    if (n < 1)
        throw std::invalid_argument("f_a_taylor: n must be >= 1");
    std::vector<double> c(static_cast<size_t>(n));
    double binom = 1.0; // C(a, 0)
    for (int k = 1; k <= n; ++k) {
        c[static_cast<size_t>(k - 1)] = ((k - 1) % 2 == 0 ? 1.0 : -1.0) * binom;
        binom *= (a - (k - 1)) / k; // C(a, k)
    }
    return c;
}

namespace {

// Enumerate nonincreasing partitions of k whose first (largest) part is l.
template <class Fn>
void partitions_first_part(int k, int l, std::vector<int>& parts, Fn&& fn) {
    const int remaining = k - l;
    parts.clear();
    parts.push_back(l);
    // recursive lambda over the tail
    auto rec = [&](auto&& self, int rem, int max_part) -> void {
        if (rem == 0) {
            fn(parts);
            return;
        }
        for (int next = std::min(rem, max_part); next >= 1; --next) {
            parts.push_back(next);
            self(self, rem - next, next);
            parts.pop_back();
        }
    };
    rec(rec, remaining, l);
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i)
        f *= i;
    return f;
}

} // namespace

double partition_d_coeff(const std::vector<double>& c, int l, int k) {
    if (l < 1 || k < l)
        throw std::out_of_range("partition_d_coeff: need 1 <= l <= k");

    double sum = 0.0;
    std::vector<int> parts;
    partitions_first_part(k, l, parts, [&](const std::vector<int>& lambda) {
        // the increments dk_i sum to l, so l!/prod(dk_i!) is a multinomial
        // coefficient; building it from binomials keeps integer inputs exact
        double term = 1.0;
        int rem = l;
        for (size_t i = 0; i < lambda.size(); ++i) {
            const int next = (i + 1 < lambda.size()) ? lambda[i + 1] : 0;
            const int dk = lambda[i] - next;
            if (dk == 0)
                continue;
            if (i >= c.size())
                throw std::out_of_range("partition_d_coeff: coefficient list too short");
            double binom = 1.0;
            for (int j = 0; j < dk; ++j)
                binom = binom * (rem - j) / (j + 1);
            rem -= dk;
            double cpow = 1.0;
            for (int j = 0; j < dk; ++j)
                cpow *= c[i];
            term *= binom * cpow;
        }
        sum += term;
    });
    return sum;
}

std::vector<double> invert_series(const std::vector<double>& a) {
    if (a.empty() || a[0] == 0.0)
        throw std::domain_error("invert_series: leading coefficient must be nonzero");

    const size_t n = a.size();
    std::vector<double> inv(n);
    inv[0] = 1.0 / a[0];
    for (size_t i = 1; i < n; ++i) {
        // a*_{i+1} = -a_1^{-(i+1)} sum_{m <= i} a*_m d_{[a],m,i+1}
        double s = 0.0;
        for (size_t m = 1; m <= i; ++m)
            s += inv[m - 1] * partition_d_coeff(a, static_cast<int>(m), static_cast<int>(i + 1));
        inv[i] = -s * std::pow(a[0], -static_cast<double>(i + 1));
    }
    return inv;
}

SeriesEval g_minus_series(double a, double x, int n_terms) {
    if (n_terms < 2)
        throw std::invalid_argument("g_minus_series: n_terms must be >= 2");
    if (x == 0.0)
        return SeriesEval{0.0, 0.0, false};

    double sum = x;
    double term = x;
    double prev_mag = std::fabs(x);
    bool growing = false;
    for (int k = 2; k <= n_terms; ++k) {
        const double t = 2.0 - k * (a + 1.0);
        double poch = 1.0;
        for (int j = 0; j < k - 2; ++j)
            poch *= t + j;
        term = a * poch / factorial(k - 1) * std::pow(-x, k);
        sum += term;
        const double mag = std::fabs(term);
        growing = (k > 2) && (mag > prev_mag) && (mag > 1e-14);
        prev_mag = mag;
    }
    return SeriesEval{sum, term, growing};
}

double g_closed(double M, double x) {
    if (x < 0.0)
        throw std::domain_error("g_closed: x must be >= 0");
    if (M == 2.0)
        return x / (1.0 + x);
    if (M == 6.0)
        // (2x)^-1 (1 + 2x - sqrt(1+4x)), rationalized to avoid the small-x
        // cancellation; exact at x = 0
        return 2.0 * x / (1.0 + 2.0 * x + std::sqrt(1.0 + 4.0 * x));
    if (M == 10.0) {
        if (x == 0.0)
            return 0.0;
        return 1.0 - 2.0 / std::sqrt(3.0 * x) *
                         std::sinh(std::asinh(std::sqrt(27.0 * x) / 2.0) / 3.0);
    }
    // remaining members of the M = 2 + 4k family have only hypergeometric
    // representations; the series + bisection routes cover them
    const double k = (M - 2.0) / 4.0;
    if (k > 0.0 && std::floor(k) == k)
        throw not_implemented_error("g_closed: no elementary form for this M; use the series");
    throw std::domain_error("g_closed: closed forms exist for M in {2, 6, 10}");
}

double detail_phi_power(double x, double inv_a) {
    if (x < 0.0)
        throw std::domain_error("phi_conjugate: negative base under fractional power");
    return std::pow(x, inv_a);
}

namespace {

// Propagate the last-term magnitude through v* = sqrt(A * Y) (far) or
// v* = sqrt(A * (1 - w)) (near) and accept only well-converged truncations.
void require_converged(const SeriesEval& ev, double dv_dvalue) {
    if (ev.diverging)
        throw series_domain_error("vstar_series: truncated series is diverging here");
    if (std::fabs(ev.last_term) * std::fabs(dv_dvalue) > 1e-9)
        throw series_domain_error("vstar_series: truncation error above tolerance here");
}

// Certify the candidate against the defining equation G_M(p, u, v*) = 1; the
// term-decay guard alone can accept a plausible-looking partial sum of a
// divergent tail. G_M is monotone in v*, so the residual bounds the error.
void require_certified(double v_star, double ap, double u, double M) {
    const double h8 = power_scale(M, 8.0, v_star);
    const double g = h8 * ap * ap - u * u + v_star * v_star;
    const double dg = (8.0 / (M + 2.0)) * h8 / v_star * ap * ap + 2.0 * v_star;
    if (std::fabs(g - 1.0) / dg > 5e-9)
        throw series_domain_error("vstar_series: residual check failed here");
}

} // namespace

double vstar_series(double p_phi, double u, double M, VstarBranch branch, int n_terms) {
    if (u < 0.0)
        throw std::domain_error("vstar_series: u must be >= 0");
    if (!(M > 0.0))
        throw std::domain_error("vstar_series: M must be positive");

    const double A = 1.0 + u * u;
    const double sqrtA = std::sqrt(A);
    const double ap = std::fabs(p_phi);
    if (ap == 0.0)
        return sqrtA; // exact for either branch

    const double a = -(M + 2.0) / 4.0;
    const double z = ap / b_m(u, M);

    if (branch == VstarBranch::Far) {
        const double x = std::pow(z, 2.0 * a);
        const SeriesEval ev = g_minus_series(a, x, n_terms);
        const double Y = ev.value;
        if (!(Y > 0.0) || Y > 1.0 + 1e-9)
            throw series_domain_error("vstar_series: far branch out of range");
        require_converged(ev, sqrtA / (2.0 * std::sqrt(Y)));
        const double v_star = sqrtA * std::sqrt(std::min(Y, 1.0));
        require_certified(v_star, ap, u, M);
        return v_star;
    }

    const double xbar = z * z;
    const SeriesEval ev = g_minus_series(1.0 / a, xbar, n_terms);
    const double w = ev.value;
    if (w < 0.0 || !(w < 1.0))
        throw series_domain_error("vstar_series: near branch out of range");
    require_converged(ev, sqrtA / (2.0 * std::sqrt(1.0 - w)));
    const double v_star = sqrtA * std::sqrt(1.0 - w);
    require_certified(v_star, ap, u, M);
    return v_star;
}

double vstar_series_auto(double p_phi, double u, double M, int n_terms) {
    const double z = std::fabs(p_phi) / b_m(u, M);
    const VstarBranch first = (z >= 1.0) ? VstarBranch::Far : VstarBranch::Near;
    const VstarBranch second = (z >= 1.0) ? VstarBranch::Near : VstarBranch::Far;
    try {
        return vstar_series(p_phi, u, M, first, n_terms);
    } catch (const series_domain_error&) {
        return vstar_series(p_phi, u, M, second, n_terms);
    }
}

} // namespace qdot
