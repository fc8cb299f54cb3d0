// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Numbers in the output are the measured worst cases.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qdot/config_io.hpp"
#include "qdot/equilibria.hpp"
#include "qdot/errors.hpp"
#include "qdot/modes.hpp"
#include "qdot/oracle.hpp"
#include "qdot/scaling_groups.hpp"
#include "qdot/series.hpp"
#include "qdot/spectra.hpp"
#include "qdot/units.hpp"

using namespace qdot;

namespace {

int g_failures = 0;

void report(int idx, bool pass, const std::string& what) {
    std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", idx, what.c_str());
    if (!pass)
        ++g_failures;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

const MaterialSpec kGaas{0.067, 12.0, 0.3};
const TrapSpec kFig4b{2.0, 8.0, 1.0, std::nullopt};

double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- criterion 1
void criterion_scales() {
    const auto t0 = std::chrono::steady_clock::now();

    const ScaleSet s2 = scales_from_physical(kGaas, kFig4b);
    const ScaleSet s1 = scales_from_physical(kGaas, TrapSpec{1.0, 4.0, 1.0, std::nullopt});

    const double q = s2.q_dia;
    const double L = s1.L_dia_over_hbar;
    const double prefactor =
        s1.q_dia * s1.B_dia_tesla / std::pow(0.067 * 12.0, 2.0 / 3.0); // hw = 1 meV
    const double dt = elapsed_s(t0);

    const bool pass = std::fabs(q - 0.68) <= 0.01 && std::fabs(L - 1.85) <= 0.01 &&
                      std::fabs(prefactor - 0.724) <= 0.005 && dt < 1.0;
    report(1, pass,
           "scale constants: q_dia=" + fmt(q) + " (0.68+-0.01), L/hbar=" + fmt(L) +
               " (1.85+-0.01), staircase prefactor=" + fmt(prefactor) +
               " (0.724+-0.005), runtime " + fmt(dt) + "s (<1s)");
}

// ---------------------------------------------------------------- criterion 2
oracle::VerifyReport criterion_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    const oracle::VerifyReport rep = oracle::run_verification(20240915, 200);
    const double dt = elapsed_s(t0);

    double de = 0, dpos = 0, grad = 0;
    bool pass_eq = true;
    for (const auto& r : rep.rows) {
        if (r.name.find("energy") != std::string::npos) {
            de = r.worst;
            pass_eq = pass_eq && r.pass;
        }
        if (r.name.find("position") != std::string::npos) {
            dpos = r.worst;
            pass_eq = pass_eq && r.pass;
        }
        if (r.name.find("gradient") != std::string::npos) {
            grad = r.worst;
            pass_eq = pass_eq && r.pass;
        }
    }
    pass_eq = pass_eq && dt < 60.0;
    report(2, pass_eq,
           "oracle equivalence over 200 seeded tuples: |dE|=" + fmt(de) +
               " (<=1e-8), |dx|=" + fmt(dpos) + " (<=1e-6), grad=" + fmt(grad) +
               " (<=1e-6), runtime " + fmt(dt) + "s (<60s)");
    return rep;
}

// ---------------------------------------------------------------- criterion 3
void criterion_modes(const oracle::VerifyReport& rep) {
    double mode_worst = 0, cm_worst = 0;
    bool mode_pass = true;
    for (const auto& r : rep.rows) {
        if (r.name.find("normal modes") != std::string::npos) {
            mode_worst = r.worst;
            mode_pass = mode_pass && r.pass;
        }
        if (r.name.find("CM modes") != std::string::npos) {
            cm_worst = r.worst;
            mode_pass = mode_pass && r.pass;
        }
    }

    // boundary behaviour: the soft mode vanishes and (rho, E, Omega_rho)
    // continue into the symmetric family
    double soft_worst = 0, cont_worst = 0;
    const std::pair<double, double> pts[] = {{6.0, 2.75}, {3.0, 1.5}, {8.0, 4.2}};
    for (double M : {0.5, 1.0, 2.0, 3.0, 6.0})
        for (auto [u, v] : pts) {
            const double pm = p_max(u, v, M);
            const ModeSet a = a_modes(u, v, pm * (1.0 - 1e-14), M);
            soft_worst = std::max(soft_worst, a.omega_lo);
            const ModeSet s = s_modes(u, v, pm, M);
            const AsymmetricState ast = asymmetric_state(u, v, pm * (1.0 - 1e-14), M);
            const SymmetricState sst = symmetric_state(pm, u, M);
            cont_worst = std::max({cont_worst, std::fabs(ast.rho - sst.rho),
                                   std::fabs(ast.energy - sst.energy),
                                   std::fabs(a.omega_hi - s.omega_hi)});
        }

    const bool pass = mode_pass && soft_worst <= 1e-6 && cont_worst <= 1e-8;
    report(3, pass,
           "mode equivalence: FD mismatch=" + fmt(mode_worst) + " (<=1e-5), CM=" +
               fmt(cm_worst) + ", soft mode at boundary=" + fmt(soft_worst) +
               " (<=1e-6), boundary continuity=" + fmt(cont_worst) + " (<=1e-8)");
}

// ---------------------------------------------------------------- criterion 4
void criterion_vstar() {
    double closed_worst = 0;
    for (int i = 0; i <= 50; ++i)
        for (int j = 0; j <= 50; ++j) {
            const double p = 5.0 * i / 50.0, u = 10.0 * j / 50.0;
            closed_worst =
                std::max(closed_worst, std::fabs(vstar(p, u, 1.0, VstarMethod::ClosedM1) -
                                                 vstar(p, u, 1.0)));
        }

    double series_worst = 0;
    int accepted = 0;
    for (double M : {1.0, 2.0, 3.0, 6.0})
        for (int i = 1; i <= 30; ++i)
            for (int j = 0; j <= 10; ++j) {
                const double p = 0.2 * i, u = j;
                const double ref = vstar(p, u, M);
                for (VstarBranch b : {VstarBranch::Far, VstarBranch::Near}) {
                    try {
                        const double vs = vstar_series(p, u, M, b);
                        series_worst = std::max(series_worst, std::fabs(vs - ref));
                        ++accepted;
                    } catch (const series_domain_error&) {
                    }
                }
            }

    double closed_vs_series = 0;
    for (double M : {2.0, 6.0, 10.0}) {
        const double a = -(M + 2.0) / 4.0;
        for (int i = 0; i <= 20; ++i) {
            const double x = 0.1 * i / 20.0;
            closed_vs_series = std::max(
                closed_vs_series, std::fabs(g_minus_series(a, x, 80).value - g_closed(M, x)));
        }
    }

    const bool pass = closed_worst <= 1e-10 && series_worst <= 1e-8 && accepted > 500 &&
                      closed_vs_series <= 1e-10;
    report(4, pass,
           "v* cross-validation: closed-vs-bisect=" + fmt(closed_worst) +
               " (<=1e-10), series-vs-bisect=" + fmt(series_worst) + " (<=1e-8, " +
               std::to_string(accepted) + " pts), closed-vs-Pochhammer=" +
               fmt(closed_vs_series) + " (<=1e-10)");
}

// ---------------------------------------------------------------- criterion 5
void criterion_reversion() {
    std::mt19937_64 rng(11);
    auto unif = [&](double lo, double hi) {
        return lo + (hi - lo) * ((rng() >> 11) * 0x1.0p-53);
    };

    double comp_worst = 0; // scaled by the largest inverse coefficient
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 3 + static_cast<int>(unif(0.0, 8.0));
        std::vector<double> a(static_cast<size_t>(n));
        a[0] = unif(0.5, 2.0);
        for (int i = 1; i < n; ++i)
            a[static_cast<size_t>(i)] = unif(-2.0, 2.0);
        const auto inv = invert_series(a);
        double scale = 1.0;
        for (double x : inv)
            scale = std::max(scale, std::fabs(x));
        for (int p = 1; p <= n; ++p) {
            double coef = 0.0;
            for (int k = 1; k <= p; ++k)
                coef += inv[static_cast<size_t>(k - 1)] * partition_d_coeff(a, k, p);
            const double target = (p == 1) ? 1.0 : 0.0;
            comp_worst = std::max(comp_worst, std::fabs(coef - target) / scale);
        }
    }

    bool exact = true;
    const std::vector<double> ci{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    for (int k = 1; k <= 10 && exact; ++k)
        for (int l = 1; l <= k && exact; ++l) {
            std::vector<double> acc{1.0};
            for (int rep = 0; rep < l; ++rep) {
                std::vector<double> nxt(std::min<size_t>(acc.size() + ci.size(),
                                                         static_cast<size_t>(k) + 1),
                                        0.0);
                for (size_t i = 0; i < acc.size(); ++i)
                    for (size_t j = 0; j < ci.size(); ++j)
                        if (i + j + 1 <= static_cast<size_t>(k))
                            nxt[i + j + 1] += acc[i] * ci[j];
                acc = std::move(nxt);
            }
            const double brute = (static_cast<size_t>(k) < acc.size()) ? acc[k] : 0.0;
            exact = exact && (partition_d_coeff(ci, l, k) == brute);
        }

    const bool pass = comp_worst <= 1e-10 && exact;
    report(5, pass,
           std::string("reversion: composition defect=") + fmt(comp_worst) +
               " (<=1e-10 scaled), partition coefficients integer-exact vs brute force: " +
               (exact ? "yes" : "NO"));
}

// ---------------------------------------------------------------- criterion 6
void criterion_minimal_band() {
    bool exact_ok = true;
    for (double u : {0.0, 2.0, 7.0})
        for (double v : {1.5, 4.0, 5.5}) {
            const MinimalState ms = minimal_state(u, v, 1.0);
            exact_ok = exact_ok && ms.energy == 1.5 && ms.p_phi == u && ms.rho_sq == 1.0 &&
                       ms.family == Family::S;
        }
    const double e_band = symmetric_state(3.0, 3.0, 1.0).energy;
    exact_ok = exact_ok && std::fabs(e_band - 1.5) <= 1e-12;

    double dia_worst = 0.0;
    for (double v : {0.5, 4.0}) {
        const double h = 1e-4;
        dia_worst = std::max(dia_worst, std::fabs(minimal_state(3.0 + h, v, 1.0).energy -
                                                  minimal_state(3.0 - h, v, 1.0).energy) /
                                            (2.0 * h));
    }

    double cont_worst = 0.0;
    for (double M : {0.5, 1.0, 3.0}) {
        const double below = 0.5 * (1.0 + 2.0 / M) * power_scale(M, 2.0 * M, 1.0);
        const double above = 0.5 * (1.0 + 2.0 / M);
        cont_worst = std::max(cont_worst, std::fabs(below - above));
    }

    const bool pass = exact_ok && dia_worst <= 1e-8 && cont_worst <= 1e-12;
    report(6, pass,
           std::string("minimal band: E=3/2, p=u, rho^2=1 ") +
               (exact_ok ? "exact" : "BROKEN") + ", diamagnetism |dE/du|=" +
               fmt(dia_worst) + " (<=1e-8), A/S continuity at v=1: " + fmt(cont_worst) +
               " (<=1e-12)");
}

// ---------------------------------------------------------------- criterion 7
void criterion_staircase() {
    const ScaleSet s = scales_from_physical(kGaas, kFig4b);
    const double v = 4.0, M = 1.0;
    auto opt = [&](double u) { return ground_state_at(u, v, s.q_dia, M, s.E_S); };

    bool ms_rule = true;
    bool nondecreasing = true;
    double first_violation_B = -1.0;

    struct Transition {
        double u;
        int from, to;
    };
    std::vector<Transition> trans;

    int m_prev = opt(0.0).m;
    double u_prev = 0.0;
    // march until the argmin has passed m = 30
    for (double u = 0.02; u <= 26.0; u += 0.02) {
        const GroundPoint gp = opt(u);
        ms_rule = ms_rule && gp.M_S == -(gp.m % 2);
        if (gp.m < m_prev && first_violation_B < 0.0) {
            nondecreasing = false;
            first_violation_B = u * s.B_dia_tesla;
        }
        if (gp.m != m_prev) {
            double a = u_prev, b = u;
            for (int it = 0; it < 40; ++it) {
                const double mid = 0.5 * (a + b);
                (opt(mid).m == m_prev ? a : b) = mid;
            }
            trans.push_back({0.5 * (a + b), m_prev, opt(b).m});
            m_prev = gp.m;
        }
        u_prev = u;
        if (m_prev >= 31)
            break;
    }

    // mean field increment per unit m between consecutive upward transitions
    // with departure m in [24, 30]
    const double b_bul = s.q_dia * s.B_dia_tesla;
    double spacing_dev = -1.0;
    {
        std::vector<double> spacings;
        for (size_t i = 1; i < trans.size(); ++i) {
            const int dm = trans[i].from - trans[i - 1].from;
            const int step_prev = trans[i - 1].to - trans[i - 1].from;
            const int step_here = trans[i].to - trans[i].from;
            // only clean staircase pairs; breakdown seams (large drops and
            // recoveries) are not staircase steps
            if (trans[i].from >= 24 && trans[i].from <= 30 && dm >= 1 && dm <= 2 &&
                step_prev >= 1 && step_prev <= 2 && step_here >= 1 && step_here <= 2 &&
                trans[i - 1].to == trans[i].from)
                spacings.push_back((trans[i].u - trans[i - 1].u) * s.B_dia_tesla / dm);
        }
        if (!spacings.empty()) {
            double mean = 0;
            for (double x : spacings)
                mean += x;
            mean /= static_cast<double>(spacings.size());
            spacing_dev = std::fabs(mean / b_bul - 1.0);
        }
    }

    const bool spacing_ok = spacing_dev >= 0.0 && spacing_dev <= 0.10;
    const bool pass = nondecreasing && ms_rule && spacing_ok;
    std::string msg = "staircase: M_S rule " + std::string(ms_rule ? "holds" : "BROKEN") +
                      "; m nondecreasing: ";
    if (nondecreasing)
        msg += "yes";
    else
        msg += "violated from B=" + fmt(first_violation_B) +
               " T (near-critical soft branches undercut the band)";
    msg += "; spacing vs B_bullet: " +
           (spacing_dev >= 0.0 ? fmt(100.0 * spacing_dev) + "%" : std::string("n/a")) +
           " (<=10%)";
    report(7, pass, msg);
}

// ---------------------------------------------------------------- criterion 8
void criterion_lambda() {
    const double v = 4.0, p = 1.0, M = 1.0, del = 1e-4;
    const double ub = u_crit(v, p, M);
    const double a_side = a_modes(ub + del, v, p, M).omega_lo;
    const double s_side = std::sqrt(s_modes(ub - del, v, p, M).soft_sq);
    const double ratio = a_side / s_side;
    const double dev = std::fabs(ratio / std::sqrt(2.0) - 1.0);
    report(8, dev <= 0.01,
           "lambda profile: Omega_z(+d)/Omega_z(-d) = " + fmt(ratio) + ", off sqrt(2) by " +
               fmt(100.0 * dev) + "% (<=1%)");
}

// ---------------------------------------------------------------- criterion 9
void criterion_groups() {
    // bit-identity at a power-of-two parameter (where floating-point scalings
    // commute with rounding exactly); generic parameters at 1e-12
    const TrapSpec trap2{2.0, 8.0, 2.0, 6.0811271411e-4};
    const double B = 3.0;

    const ScaleSet s0 = scales_from_physical(kGaas, trap2);
    const double u0 = field_to_u(B, s0);
    LevelIndex idx;
    idx.m = 3;
    idx.M_S = -1;
    const double e0 = additional_energy(idx, ModelPoint{u0, 4.0, 2.0, s0.q_dia}, s0.E_S);

    const G4Result g = g4_action(2.0, kGaas, trap2, B);
    const ScaleSet s1 = scales_from_physical(g.material, g.trap);
    const double u1 = field_to_u(g.b_tesla, s1);
    const double e1 = additional_energy(idx, ModelPoint{u1, 4.0, 2.0, s1.q_dia}, s1.E_S);

    const bool bit_identical = std::memcmp(&e0, &e1, sizeof e0) == 0 &&
                               std::memcmp(&u0, &u1, sizeof u0) == 0 &&
                               g.b_tesla == 4.0 * B;

    const G4Result h = g4_action(1.7, kGaas, kFig4b, B);
    const ScaleSet sh = scales_from_physical(h.material, h.trap);
    const ScaleSet sf = scales_from_physical(kGaas, kFig4b);
    const double generic_dev =
        std::max(std::fabs(field_to_u(h.b_tesla, sh) - field_to_u(B, sf)),
                 std::fabs(sh.q_dia - sf.q_dia));

    const double beta0 = resolve_beta(kGaas, kFig4b);
    const TrapSpec fwd = g7_map(3.0, kGaas, kFig4b);
    const TrapSpec back = g7_map(1.0, kGaas, fwd);
    const double beta_dev = std::fabs(*back.beta_override - beta0);
    const double q_dev = std::fabs(scales_from_physical(kGaas, fwd).q_dia - sf.q_dia);

    const bool pass =
        bit_identical && generic_dev <= 1e-12 && beta_dev <= 1e-10 && q_dev <= 1e-12;
    report(9, pass,
           std::string("group actions: g4 bit-identity at a=2 ") +
               (bit_identical ? "holds" : "BROKEN") + ", generic-a deviation=" +
               fmt(generic_dev) + " (<=1e-12), g7 round-trip beta=" + fmt(beta_dev) +
               " (<=1e-10), q_dia drift=" + fmt(q_dev) + " (<=1e-12)");
}

// --------------------------------------------------------------- criterion 10
void criterion_cross_m() {
    // dimensionless comparison point (no material attached, hence no Zeeman)
    double g1 = 0, g3 = 0, g6 = 0;
    for (double M : {1.0, 3.0, 6.0}) {
        const GroundPoint gp = ground_state_at(20.0, 4.0, 0.5, M, 0.0);
        const double val = classical_limit_factor(M) * gp.e_add;
        if (M == 1.0)
            g1 = val;
        else if (M == 3.0)
            g3 = val;
        else
            g6 = val;
    }
    const bool low_ok = std::fabs(g1 - 1.5) <= 0.075 && std::fabs(g3 - 1.5) <= 0.075;
    const bool m6_ok = g6 > 1.6;
    report(10, low_ok && m6_ok,
           "cross-M asymptote at u=20: g*E_add = " + fmt(g1) + " (M=1), " + fmt(g3) +
               " (M=3) [within 5% of 1.5: " + (low_ok ? "yes" : "NO") + "]; M=6: " +
               fmt(g6) + " (> 1.6: " + (m6_ok ? "yes" : "NO") + ")");
}

} // namespace

int main() {
    std::printf("acceptance suite\n----------------\n");
    criterion_scales();
    const oracle::VerifyReport rep = criterion_oracle();
    criterion_modes(rep);
    criterion_vstar();
    criterion_reversion();
    criterion_minimal_band();
    criterion_staircase();
    criterion_lambda();
    criterion_groups();
    criterion_cross_m();
    std::printf("----------------\n%d of 10 criteria failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
