#include "casfilm/reflection.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "casfilm/errors.hpp"
#include "casfilm/units.hpp"

namespace casfilm {

namespace {

void check_point(double xi_ev, double k_nm) {
    if (!std::isfinite(xi_ev) || xi_ev < 0.0)
        throw std::domain_error("reflection: xi_ev must be finite and >= 0");
    if (!std::isfinite(k_nm) || k_nm < 0.0)
        throw std::domain_error("reflection: k_nm must be finite and >= 0");
    if (xi_ev == 0.0 && k_nm == 0.0)
        throw std::domain_error("reflection: xi_ev and k_nm cannot both vanish");
}

// Net slab amplitude from the front-interface amplitude and the round-trip
// decay e^{-2 kappa d}; decay2 = 0 recovers the half-space limit.
double airy_slab(double r01, double decay2) {
    return r01 * (1.0 - decay2) / (1.0 - r01 * r01 * decay2);
}

double round_trip_decay(const Film& film, double kappa_inside) {
    if (film.is_half_space()) return 0.0;
    return std::exp(-2.0 * kappa_inside * *film.thickness_nm);
}

// In-medium mode propagating as e^{s z} with in-plane field direction w.
struct Mode {
    double kappa = 0.0;
    double wx = 0.0;
    double wy = 0.0;
};

using Psi = std::array<double, 4>;

// Tangential field 4-vector (Ex, Ey, -Hx, -Hy) of a mode, up to the common
// e^{s z} factor. f = lam^2 + k^2 / eps_zz of the medium the mode lives in.
Psi mode_psi(const Mode& m, double sign, double lam, double f) {
    const double s = sign * m.kappa;
    return {m.wx, m.wy, s * m.wy / lam, -s * lam * m.wx / f};
}

// Gauss-Jordan with partial pivoting on an N x (N + M) augmented system;
// the M trailing columns are replaced by the solutions.
template <std::size_t N, std::size_t M>
void solve_augmented(std::array<std::array<double, N + M>, N>& a) {
    for (std::size_t c = 0; c < N; ++c) {
        std::size_t pivot = c;
        for (std::size_t r = c + 1; r < N; ++r)
            if (std::abs(a[r][c]) > std::abs(a[pivot][c])) pivot = r;
        if (a[pivot][c] == 0.0)
            throw NumericalError("reflection: singular boundary-matching system");
        if (pivot != c) std::swap(a[c], a[pivot]);
        for (std::size_t r = 0; r < N; ++r) {
            if (r == c) continue;
            const double fac = a[r][c] / a[c][c];
            if (fac == 0.0) continue;
            for (std::size_t j = c; j < N + M; ++j) a[r][j] -= fac * a[c][j];
        }
    }
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t j = N; j < N + M; ++j) a[r][j] /= a[r][r];
}

int class_rank(TensorClass c) {
    switch (c) {
        case TensorClass::isotropic: return 0;
        case TensorClass::uniaxial: return 1;
        case TensorClass::biaxial: return 2;
    }
    return 2;
}

ReflectionMatrix embed_diagonal(const FresnelPair& fp) {
    ReflectionMatrix m;
    m.ss = fp.r_te;
    m.pp = fp.r_tm;
    return m;
}

}  // namespace

Film::Film(DielectricTensorModel t, std::optional<double> d_nm,
           double orient_rad)
    : tensor(std::move(t)),
      thickness_nm(d_nm),
      orientation_rad(orient_rad) {
    if (thickness_nm &&
        !(std::isfinite(*thickness_nm) && *thickness_nm > 0.0))
        throw ValidationError("film thickness must be positive");
    if (!std::isfinite(orientation_rad))
        throw ValidationError("film orientation must be finite");
    orientation_rad = std::fmod(orientation_rad, 2.0 * pi);
    if (orientation_rad < 0.0) orientation_rad += 2.0 * pi;
}

double ReflectionMatrix::spectral_radius() const {
    const double t = ss * ss + sp * sp + ps * ps + pp * pp;
    const double d = det();
    const double disc = std::max(t * t - 4.0 * d * d, 0.0);
    return std::sqrt(0.5 * (t + std::sqrt(disc)));
}

FresnelPair slab_reflection_isotropic(const Film& film, double xi_ev,
                                      double k_nm) {
    check_point(xi_ev, k_nm);
    if (film.tensor.classification() != TensorClass::isotropic)
        throw ValidationError(
            "isotropic reflection path requires an isotropic tensor");

    const TensorComponents eps = film.tensor.evaluate(xi_ev);
    const double lam = xi_ev / hbar_c_ev_nm;
    const double l2 = lam * lam;
    const double k2 = k_nm * k_nm;
    const double kap = std::sqrt(k2 + l2);
    const double kap_m = std::sqrt(k2 + eps.xx * l2);

    const double r_te = (kap - kap_m) / (kap + kap_m);
    const double r_tm = (eps.xx * kap - kap_m) / (eps.xx * kap + kap_m);
    const double decay = round_trip_decay(film, kap_m);
    return {airy_slab(r_te, decay), airy_slab(r_tm, decay)};
}

FresnelPair slab_reflection_uniaxial(const Film& film, double xi_ev,
                                     double k_nm) {
    check_point(xi_ev, k_nm);
    if (film.tensor.classification() == TensorClass::biaxial)
        throw ValidationError(
            "axially symmetric reflection path requires equal in-plane "
            "components");

    const TensorComponents eps = film.tensor.evaluate(xi_ev);
    const double lam = xi_ev / hbar_c_ev_nm;
    const double l2 = lam * lam;
    const double k2 = k_nm * k_nm;
    const double kap = std::sqrt(k2 + l2);
    const double kap_o = std::sqrt(k2 + eps.xx * l2);
    const double kap_e = std::sqrt((eps.xx / eps.zz) * k2 + eps.xx * l2);

    const double r_te = (kap - kap_o) / (kap + kap_o);
    const double r_tm = (eps.xx * kap - kap_e) / (eps.xx * kap + kap_e);
    return {airy_slab(r_te, round_trip_decay(film, kap_o)),
            airy_slab(r_tm, round_trip_decay(film, kap_e))};
}

ReflectionMatrix slab_reflection_biaxial(const Film& film, double xi_ev,
                                         double k_nm, double theta_rad) {
    check_point(xi_ev, k_nm);
    if (xi_ev == 0.0)
        throw std::domain_error(
            "anisotropic reflection path requires xi_ev > 0");
    if (!std::isfinite(theta_rad))
        throw std::domain_error("reflection: theta_rad must be finite");

    const TensorComponents eps = film.tensor.evaluate(xi_ev);

    // In-plane tensor components in the incidence frame (k along x).
    const double a = theta_rad - film.orientation_rad;
    const double ca = std::cos(a);
    const double sa = std::sin(a);
    const double exx = eps.xx * ca * ca + eps.yy * sa * sa;
    const double eyy = eps.xx * sa * sa + eps.yy * ca * ca;
    const double exy = (eps.yy - eps.xx) * sa * ca;

    const double lam = xi_ev / hbar_c_ev_nm;
    const double l2 = lam * lam;
    const double k2 = k_nm * k_nm;
    const double kap = std::sqrt(k2 + l2);
    const double f = l2 + k2 / eps.zz;

    // Second-order system E'' = AB E for the in-plane field components.
    const double ab11 = exx * f;
    const double ab12 = exy * f;
    const double ab21 = l2 * exy;
    const double ab22 = l2 * eyy + k2;

    const double mean = 0.5 * (ab11 + ab22);
    const double half_gap = 0.5 * (ab11 - ab22);
    // ab12 * ab21 >= 0, so the eigenvalues are always real.
    const double disc = half_gap * half_gap + ab12 * ab21;
    const double root = std::sqrt(std::max(disc, 0.0));
    const double t1 = mean + root;
    const double det_ab = ab11 * ab22 - ab12 * ab21;
    const double t2 = (root > 0.0) ? det_ab / t1 : t1;
    if (!(t1 > 0.0) || !(t2 > 0.0))
        throw NumericalError(
            "reflection: film mode fails to decay (passivity violated)");

    Mode m1{std::sqrt(t1), 0.0, 0.0};
    Mode m2{std::sqrt(t2), 0.0, 0.0};

    const double scale =
        std::abs(ab11) + std::abs(ab22) + std::abs(ab12) + std::abs(ab21);
    if (root > 1e-14 * scale) {
        auto assign = [&](double t, Mode& m) {
            const double ux = ab12, uy = t - ab11;
            const double vx = t - ab22, vy = ab21;
            const double nu = ux * ux + uy * uy;
            const double nv = vx * vx + vy * vy;
            const double inv = 1.0 / std::sqrt(std::max(nu, nv));
            if (nu >= nv) {
                m.wx = ux * inv;
                m.wy = uy * inv;
            } else {
                m.wx = vx * inv;
                m.wy = vy * inv;
            }
        };
        assign(t1, m1);
        assign(t2, m2);
    } else {
        // Degenerate and decoupled: any independent in-plane basis spans
        // the eigenspace, so keep the vacuum TM/TE directions.
        const bool t1_along_x = std::abs(t1 - ab11) <= std::abs(t1 - ab22);
        m1.wx = t1_along_x ? 1.0 : 0.0;
        m1.wy = t1_along_x ? 0.0 : 1.0;
        m2.wx = 1.0 - m1.wx;
        m2.wy = 1.0 - m1.wy;
    }

    // Projections killing, respectively, the upward modes at z = 0 (g) and
    // the downward modes at z = d (f), leaving 4 equations for the 4
    // in-film amplitudes.
    auto g1 = [&](const Psi& p) { return kap * p[1] - lam * p[2]; };
    auto g2 = [&](const Psi& p) { return lam * p[0] + kap * p[3]; };
    auto f1 = [&](const Psi& p) { return kap * p[1] + lam * p[2]; };
    auto f2 = [&](const Psi& p) { return lam * p[0] - kap * p[3]; };

    const Psi p1d = mode_psi(m1, -1.0, lam, f);
    const Psi p2d = mode_psi(m2, -1.0, lam, f);

    Psi psi0_te{};
    Psi psi0_tm{};

    if (film.is_half_space()) {
        std::array<std::array<double, 4>, 2> sys = {{
            {g1(p1d), g1(p2d), 2.0 * kap, 0.0},
            {g2(p1d), g2(p2d), 0.0, 2.0 * kap},
        }};
        solve_augmented<2, 2>(sys);
        for (int i = 0; i < 4; ++i) {
            psi0_te[i] = sys[0][2] * p1d[i] + sys[1][2] * p2d[i];
            psi0_tm[i] = sys[0][3] * p1d[i] + sys[1][3] * p2d[i];
        }
    } else {
        const double d = *film.thickness_nm;
        // Growing modes are referenced from z = d so only decaying
        // exponentials appear.
        const double e1 = std::exp(-m1.kappa * d);
        const double e2 = std::exp(-m2.kappa * d);
        const Psi p1g = mode_psi(m1, 1.0, lam, f);
        const Psi p2g = mode_psi(m2, 1.0, lam, f);

        std::array<std::array<double, 6>, 4> sys = {{
            {g1(p1d), g1(p2d), e1 * g1(p1g), e2 * g1(p2g), 2.0 * kap, 0.0},
            {g2(p1d), g2(p2d), e1 * g2(p1g), e2 * g2(p2g), 0.0, 2.0 * kap},
            {e1 * f1(p1d), e2 * f1(p2d), f1(p1g), f1(p2g), 0.0, 0.0},
            {e1 * f2(p1d), e2 * f2(p2d), f2(p1g), f2(p2g), 0.0, 0.0},
        }};
        solve_augmented<4, 2>(sys);
        for (int i = 0; i < 4; ++i) {
            psi0_te[i] = sys[0][4] * p1d[i] + sys[1][4] * p2d[i] +
                         sys[2][4] * e1 * p1g[i] + sys[3][4] * e2 * p2g[i];
            psi0_tm[i] = sys[0][5] * p1d[i] + sys[1][5] * p2d[i] +
                         sys[2][5] * e1 * p1g[i] + sys[3][5] * e2 * p2g[i];
        }
    }

    ReflectionMatrix r;
    r.ss = f1(psi0_te) / (2.0 * kap);
    r.ps = -f2(psi0_te) / (2.0 * kap);
    r.sp = f1(psi0_tm) / (2.0 * kap);
    r.pp = -f2(psi0_tm) / (2.0 * kap);
    return r;
}

ReflectionMatrix reflection(const Film& film, double xi_ev, double k_nm,
                            double theta_rad) {
    return reflection_via(film.tensor.classification(), film, xi_ev, k_nm,
                          theta_rad);
}

ReflectionMatrix reflection_via(TensorClass path, const Film& film,
                                double xi_ev, double k_nm,
                                double theta_rad) {
    if (class_rank(path) < class_rank(film.tensor.classification()))
        throw ValidationError(
            "reflection path cannot be narrower than the tensor class");
    switch (path) {
        case TensorClass::isotropic:
            return embed_diagonal(slab_reflection_isotropic(film, xi_ev, k_nm));
        case TensorClass::uniaxial:
            return embed_diagonal(slab_reflection_uniaxial(film, xi_ev, k_nm));
        case TensorClass::biaxial:
            return slab_reflection_biaxial(film, xi_ev, k_nm, theta_rad);
    }
    throw ValidationError("unknown reflection path");
}

}  // namespace casfilm
