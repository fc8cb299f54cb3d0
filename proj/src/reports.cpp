#include "qdot/reports.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "qdot/equilibria.hpp"
#include "qdot/errors.hpp"
#include "qdot/modes.hpp"
#include "qdot/oracle.hpp"
#include "qdot/scaling_groups.hpp"
#include "qdot/series.hpp"
#include "qdot/spectra.hpp"

namespace qdot::reports {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double to_double(const std::string& s, const char* what) {
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw std::invalid_argument(std::string("cannot parse ") + what + " `" + s + "`");
    return x;
}

double range_at(const Range& r, int i) {
    if (r.n == 1)
        return r.lo;
    return r.lo + (r.hi - r.lo) * i / (r.n - 1.0);
}

const char* tag_name(StabilityTag t) {
    switch (t) {
    case StabilityTag::A: return "A";
    case StabilityTag::S_plus: return "S_plus";
    case StabilityTag::S_zero: return "S_zero";
    case StabilityTag::S_minus: return "S_minus";
    }
    return "?";
}

} // namespace

Range parse_range(const std::string& s) {
    const auto p = split(s, ':');
    if (p.size() != 3)
        throw std::invalid_argument("range must be lo:hi:n, got `" + s + "`");
    Range r{to_double(p[0], "range lo"), to_double(p[1], "range hi"),
            static_cast<int>(to_double(p[2], "range n"))};
    if (r.n < 1)
        throw std::invalid_argument("range needs n >= 1");
    return r;
}

StepRange parse_step_range(const std::string& s) {
    const auto p = split(s, ':');
    if (p.size() != 3)
        throw std::invalid_argument("range must be lo:hi:step, got `" + s + "`");
    StepRange r{to_double(p[0], "range lo"), to_double(p[1], "range hi"),
                to_double(p[2], "range step")};
    if (!(r.step > 0.0) || r.hi < r.lo)
        throw std::invalid_argument("range needs hi >= lo and step > 0");
    return r;
}

SurfaceGrid parse_grid(const std::string& s) {
    const auto halves = split(s, ',');
    if (halves.size() != 2)
        throw std::invalid_argument("grid must be rho:lo:hi:n,z:lo:hi:n");
    SurfaceGrid g{};
    bool have_rho = false, have_z = false;
    for (const auto& h : halves) {
        const auto p = split(h, ':');
        if (p.size() != 4)
            throw std::invalid_argument("grid axis must be name:lo:hi:n, got `" + h + "`");
        const Range r{to_double(p[1], "grid lo"), to_double(p[2], "grid hi"),
                      static_cast<int>(to_double(p[3], "grid n"))};
        if (r.n < 1)
            throw std::invalid_argument("grid needs n >= 1");
        if (p[0] == "rho") {
            g.rho = r;
            have_rho = true;
        } else if (p[0] == "z") {
            g.z = r;
            have_z = true;
        } else {
            throw std::invalid_argument("unknown grid axis `" + p[0] + "`");
        }
    }
    if (!have_rho || !have_z)
        throw std::invalid_argument("grid must name both rho and z axes");
    return g;
}

std::string convert_json(const PhysicalConfig& cfg, std::optional<double> g4_a,
                         std::optional<double> map_M) {
    MaterialSpec mat = cfg.material;
    TrapSpec trap = cfg.trap;
    if (map_M)
        trap = g7_map(*map_M, mat, trap);
    if (g4_a) {
        const G4Result g4 = g4_action(*g4_a, mat, trap, 0.0);
        mat = g4.material;
        trap = g4.trap;
    }

    const ScaleSet s = scales_from_physical(mat, trap);
    std::ostringstream os;
    os << "{\n";
    os << "  \"M\": " << fmt_g12(trap.M) << ",\n";
    os << "  \"v\": " << fmt_g12(trap.hw_z_mev / trap.hw_rho_mev) << ",\n";
    os << "  \"beta\": " << fmt_g12(s.beta) << ",\n";
    os << "  \"gamma\": " << fmt_g12(s.gamma) << ",\n";
    os << "  \"L_dia_over_hbar\": " << fmt_g12(s.L_dia_over_hbar) << ",\n";
    os << "  \"q_dia\": " << fmt_g12(s.q_dia) << ",\n";
    os << "  \"E_dia_mev\": " << fmt_g12(s.E_dia_mev) << ",\n";
    os << "  \"B_dia_tesla\": " << fmt_g12(s.B_dia_tesla) << ",\n";
    os << "  \"B_bullet_tesla\": " << fmt_g12(s.q_dia * s.B_dia_tesla) << ",\n";
    os << "  \"E_S\": " << fmt_g12(s.E_S) << "\n";
    os << "}\n";
    return os.str();
}

std::string surface_csv(double u, double v, double p_phi, double M, const SurfaceGrid& g) {
    std::ostringstream os;
    os << "rho,z,E_Edia\n";
    for (int i = 0; i < g.rho.n; ++i) {
        const double rho = range_at(g.rho, i);
        for (int j = 0; j < g.z.n; ++j) {
            const double z = range_at(g.z, j);
            os << fmt_g12(rho) << ',' << fmt_g12(z) << ','
               << fmt_g12(reduced_potential(rho, z, p_phi, u, v, M)) << '\n';
        }
    }
    return os.str();
}

std::string surface_section_csv(double u, double v_star, double M, const Range& v_range,
                                const Range& z_range) {
    const double rho = power_scale(M, -2.0, v_star);
    const double p = p_max(u, v_star, M);
    std::ostringstream os;
    os << "v,z,E_Edia\n";
    for (int i = 0; i < v_range.n; ++i) {
        const double v = range_at(v_range, i);
        for (int j = 0; j < z_range.n; ++j) {
            const double z = range_at(z_range, j);
            os << fmt_g12(v) << ',' << fmt_g12(z) << ','
               << fmt_g12(reduced_potential(rho, z, p, u, v, M)) << '\n';
        }
    }
    return os.str();
}

std::string phase_diagram_csv(const Range& u_range, const Range& p_range, double M,
                              const std::vector<double>& vstar_contours) {
    std::ostringstream os;
    os << "u,p_phi,E_S_Edia\n";
    for (int i = 0; i < u_range.n; ++i) {
        const double u = range_at(u_range, i);
        for (int j = 0; j < p_range.n; ++j) {
            const double p = range_at(p_range, j);
            os << fmt_g12(u) << ',' << fmt_g12(p) << ','
               << fmt_g12(symmetric_state(p, u, M).energy) << '\n';
        }
    }

    os << "\nkind,v_star,u,p_phi\n";
    for (int i = 0; i < u_range.n; ++i) {
        const double u = range_at(u_range, i);
        os << "minimal_band," << fmt_g12(1.0) << ',' << fmt_g12(u) << ',' << fmt_g12(u)
           << '\n';
    }
    for (double vs : vstar_contours) {
        for (int i = 0; i < u_range.n; ++i) {
            const double u = range_at(u_range, i);
            if (1.0 + u * u <= vs * vs)
                continue; // contour absent below its critical field
            os << "contour," << fmt_g12(vs) << ',' << fmt_g12(u) << ','
               << fmt_g12(p_max(u, vs, M)) << '\n';
        }
    }
    return os.str();
}

std::string eadd_csv(const PhysicalConfig& cfg, const StepRange& b_range,
                     const std::vector<double>& map_M) {
    std::vector<double> exponents = map_M;
    if (exponents.empty())
        exponents.push_back(cfg.trap.M);

    std::ostringstream os;
    os << "B_tesla,u,M,m_opt,M_S,E_add_mev,E_add_Edia,E_add_norm\n";
    for (double M : exponents) {
        const TrapSpec trap =
            (M == cfg.trap.M) ? cfg.trap : g7_map(M, cfg.material, cfg.trap);
        const ScaleSet s = scales_from_physical(cfg.material, trap);
        const double v = trap.hw_z_mev / trap.hw_rho_mev;
        const double norm = classical_limit_factor(M);

        const int n_steps = static_cast<int>(std::floor((b_range.hi - b_range.lo) /
                                                            b_range.step +
                                                        1e-9));
        for (int i = 0; i <= n_steps; ++i) {
            const double B = b_range.lo + i * b_range.step;
            const double u = field_to_u(B, s);
            const GroundPoint gp = ground_state_at(u, v, s.q_dia, M, s.E_S);
            os << fmt_g12(B) << ',' << fmt_g12(u) << ',' << fmt_g12(M) << ',' << gp.m << ','
               << gp.M_S << ',' << fmt_g12(gp.e_add * s.E_dia_mev) << ','
               << fmt_g12(gp.e_add) << ',' << fmt_g12(norm * gp.e_add) << '\n';
        }
    }
    return os.str();
}

std::string spectrum_csv(const PhysicalConfig& cfg, const StepRange& b_range, int m_max) {
    const ScaleSet s = scales_from_physical(cfg.material, cfg.trap);
    const double v = cfg.trap.hw_z_mev / cfg.trap.hw_rho_mev;
    const double M = cfg.trap.M;

    std::ostringstream os;
    os << "B_tesla,u,m,M_S,family,E_add_Edia,E_add_mev,near_critical\n";
    const int n_steps =
        static_cast<int>(std::floor((b_range.hi - b_range.lo) / b_range.step + 1e-9));
    for (int i = 0; i <= n_steps; ++i) {
        const double B = b_range.lo + i * b_range.step;
        const double u = field_to_u(B, s);
        const ModelPoint pt{u, v, M, s.q_dia};
        for (int m = 0; m <= m_max; ++m) {
            LevelIndex idx;
            idx.m = m;
            idx.M_S = -(m % 2);
            double e;
            Family fam;
            try {
                const RelLevel rel = relative_level_energy(idx, pt);
                e = -cm_level_energy(LevelIndex{}, u, v, s.q_dia) + rel.energy +
                    u * s.E_S * idx.M_S;
                fam = rel.family;
            } catch (const unstable_state_error&) {
                continue; // saddle branch: no level here
            }
            bool near_crit = false;
            try {
                near_crit = std::fabs(u - u_crit(v, m * s.q_dia, M)) < 0.05;
            } catch (const std::domain_error&) {
            }
            os << fmt_g12(B) << ',' << fmt_g12(u) << ',' << m << ',' << idx.M_S << ','
               << (fam == Family::A ? 'A' : 'S') << ',' << fmt_g12(e) << ','
               << fmt_g12(e * s.E_dia_mev) << ',' << (near_crit ? 1 : 0) << '\n';
        }
    }
    return os.str();
}

std::string vstar_json(double p_phi, double u, double M, const std::string& method,
                       bool compare) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"p_phi\": " << fmt_g12(p_phi) << ",\n";
    os << "  \"u\": " << fmt_g12(u) << ",\n";
    os << "  \"M\": " << fmt_g12(M) << ",\n";

    const double bis = vstar(p_phi, u, M, VstarMethod::Bisect);
    if (compare) {
        os << "  \"bisect\": " << fmt_g12(bis) << ",\n";
        if (M == 1.0) {
            const double cl = vstar(p_phi, u, M, VstarMethod::ClosedM1);
            os << "  \"closed\": " << fmt_g12(cl) << ",\n";
            os << "  \"closed_minus_bisect\": " << fmt_g12(cl - bis) << ",\n";
        }
        bool series_ok = true;
        double se = bis;
        try {
            se = vstar_series_auto(p_phi, u, M);
        } catch (const series_domain_error&) {
            series_ok = false;
        }
        if (series_ok) {
            os << "  \"series\": " << fmt_g12(se) << ",\n";
            os << "  \"series_minus_bisect\": " << fmt_g12(se - bis) << ",\n";
        } else {
            os << "  \"series\": null,\n";
        }
        os << "  \"v_star\": " << fmt_g12(bis) << "\n";
    } else {
        VstarMethod m = VstarMethod::Bisect;
        if (method == "closed")
            m = VstarMethod::ClosedM1;
        else if (method == "series")
            m = VstarMethod::Series;
        else if (method != "bisect")
            throw std::invalid_argument("unknown vstar method `" + method + "`");
        os << "  \"method\": \"" << method << "\",\n";
        os << "  \"v_star\": " << fmt_g12(vstar(p_phi, u, M, m)) << "\n";
    }
    os << "}\n";
    return os.str();
}

std::string modes_json(double u, double v, double p_phi, double M) {
    const StabilityTag tag = classify_state(u, v, p_phi, M);
    const ModeSet ms = (tag == StabilityTag::A) ? a_modes(u, v, p_phi, M)
                                                : s_modes(u, v, p_phi, M);
    const auto [cm_rho, cm_z] = cm_modes(u, v);

    std::ostringstream os;
    os << "{\n";
    os << "  \"family\": \"" << (tag == StabilityTag::A ? "A" : "S") << "\",\n";
    os << "  \"stability\": \"" << tag_name(tag) << "\",\n";
    os << "  \"omega_hi\": " << fmt_g12(ms.omega_hi) << ",\n";
    os << "  \"omega_lo\": " << fmt_g12(ms.omega_lo) << ",\n";
    os << "  \"soft_mode_sq\": " << fmt_g12(ms.soft_sq) << ",\n";
    os << "  \"mixing_angle\": " << fmt_g12(ms.mixing_angle) << ",\n";
    os << "  \"cm_omega_rho\": " << fmt_g12(cm_rho) << ",\n";
    os << "  \"cm_omega_z\": " << fmt_g12(cm_z) << "\n";
    os << "}\n";
    return os.str();
}

namespace {

// Exact rational arithmetic for integral coefficient lists; throws
// overflow_error when 64-bit headroom runs out and the caller falls back to
// decimals.
struct Rat {
    long long num = 0, den = 1;

    static long long checked(__int128 v) {
        if (v > static_cast<__int128>(9123372036854775807LL) ||
            v < -static_cast<__int128>(9123372036854775807LL))
            throw std::overflow_error("rational overflow");
        return static_cast<long long>(v);
    }

    static Rat make(__int128 n, __int128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const __int128 a = n < 0 ? -n : n;
        __int128 g = 1;
        {
            __int128 x = a, y = d;
            while (y != 0) {
                const __int128 t = x % y;
                x = y;
                y = t;
            }
            g = (x == 0) ? 1 : x;
        }
        return Rat{checked(n / g), checked(d / g)};
    }

    Rat operator+(const Rat& o) const {
        return make(static_cast<__int128>(num) * o.den + static_cast<__int128>(o.num) * den,
                    static_cast<__int128>(den) * o.den);
    }
    Rat operator*(const Rat& o) const {
        return make(static_cast<__int128>(num) * o.num, static_cast<__int128>(den) * o.den);
    }
    Rat operator-() const { return Rat{-num, den}; }
};

bool integral_list(const std::vector<double>& c) {
    for (double x : c)
        if (std::fabs(x - std::llround(x)) > 1e-12 || std::fabs(x) > 1e15)
            return false;
    return true;
}

Rat rat_partition_d(const std::vector<long long>& c, int l, int k);

// Mirrors partition_d_coeff / invert_series in exact arithmetic.
template <class Fn>
void rat_partitions(int k, int l, std::vector<int>& parts, Fn&& fn) {
    parts.clear();
    parts.push_back(l);
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
    rec(rec, k - l, l);
}

long long ll_factorial(int n) {
    long long f = 1;
    for (int i = 2; i <= n; ++i)
        f = Rat::checked(static_cast<__int128>(f) * i);
    return f;
}

Rat rat_partition_d(const std::vector<long long>& c, int l, int k) {
    Rat sum{0, 1};
    std::vector<int> parts;
    rat_partitions(k, l, parts, [&](const std::vector<int>& lambda) {
        Rat prod{1, 1};
        for (size_t i = 0; i < lambda.size(); ++i) {
            const int next = (i + 1 < lambda.size()) ? lambda[i + 1] : 0;
            const int dk = lambda[i] - next;
            if (dk == 0)
                continue;
            if (i >= c.size())
                throw std::overflow_error("coefficient list too short");
            __int128 p = 1;
            for (int t = 0; t < dk; ++t)
                p = static_cast<__int128>(Rat::checked(p * c[i]));
            prod = prod * Rat::make(p, ll_factorial(dk));
        }
        sum = sum + prod;
    });
    return sum * Rat{ll_factorial(l), 1};
}

std::vector<Rat> rat_invert(const std::vector<long long>& a) {
    std::vector<Rat> inv(a.size());
    inv[0] = Rat::make(1, a[0]);
    for (size_t i = 1; i < a.size(); ++i) {
        Rat s{0, 1};
        for (size_t m = 1; m <= i; ++m)
            s = s + inv[m - 1] * rat_partition_d(a, static_cast<int>(m),
                                                 static_cast<int>(i + 1));
        __int128 apow = 1;
        for (size_t t = 0; t <= i; ++t)
            apow = static_cast<__int128>(Rat::checked(apow * a[0]));
        inv[i] = -(s * Rat::make(1, apow));
    }
    return inv;
}

std::string coefficient_rows(const std::vector<double>& forward) {
    std::ostringstream os;
    os << "k,coefficient\n";
    if (integral_list(forward)) {
        try {
            std::vector<long long> ai(forward.size());
            for (size_t i = 0; i < forward.size(); ++i)
                ai[i] = std::llround(forward[i]);
            if (ai[0] == 0)
                throw std::overflow_error("zero leading coefficient");
            const auto inv = rat_invert(ai);
            for (size_t k = 0; k < inv.size(); ++k) {
                os << (k + 1) << ',' << inv[k].num;
                if (inv[k].den != 1)
                    os << '/' << inv[k].den;
                os << '\n';
            }
            return os.str();
        } catch (const std::overflow_error&) {
            os.str("");
            os << "k,coefficient\n"; // fall back to decimals below
        }
    }
    const auto inv = invert_series(forward);
    for (size_t k = 0; k < inv.size(); ++k)
        os << (k + 1) << ',' << fmt_g12(inv[k]) << '\n';
    return os.str();
}

} // namespace

std::string series_table(double M, int terms) {
    if (terms < 1)
        throw std::invalid_argument("series_table: terms must be >= 1");
    const double a = -(M + 2.0) / 4.0;
    return coefficient_rows(f_a_taylor(a, terms));
}

std::string series_table_coeffs(const std::vector<double>& coeffs) {
    if (coeffs.empty())
        throw std::invalid_argument("series_table: empty coefficient list");
    return coefficient_rows(coeffs);
}

int run_verify(std::ostream& os, std::uint64_t seed, int n_samples) {
    const oracle::VerifyReport rep = oracle::run_verification(seed, n_samples);
    os << "check,worst,tolerance,status\n";
    for (const auto& r : rep.rows)
        os << r.name << ',' << fmt_g12(r.worst) << ',' << fmt_g12(r.tolerance) << ','
           << (r.pass ? "PASS" : "FAIL") << '\n';
    os << (rep.all_pass ? "all checks passed\n" : "VERIFICATION FAILED\n");
    return rep.all_pass ? 0 : 4;
}

} // namespace qdot::reports
