#include "casfilm/lifshitz.hpp"

#include <atomic>
#include <cmath>
#include <thread>
#include <utility>

#include "casfilm/errors.hpp"
#include "casfilm/units.hpp"

namespace casfilm {

namespace {

// D = R1 R2 decay; only its two invariants enter the kernels.
struct CouplingInvariants {
    double tr;
    double det;
};

CouplingInvariants coupling(const ReflectionMatrix& r1,
                            const ReflectionMatrix& r2, double decay) {
    const double m11 = r1.ss * r2.ss + r1.sp * r2.ps;
    const double m22 = r1.ps * r2.sp + r1.pp * r2.pp;
    return {(m11 + m22) * decay, r1.det() * r2.det() * decay * decay};
}

double guarded_denominator(const CouplingInvariants& d) {
    const double q = 1.0 + (d.det - d.tr);
    if (!(q > 0.0))
        throw NumericalError(
            "cavity coupling leaves the passive regime (det(I - R1 R2 e) <= "
            "0)");
    return q;
}

}  // namespace

double coupling_log_det(const ReflectionMatrix& r1, const ReflectionMatrix& r2,
                        double decay) {
    const CouplingInvariants d = coupling(r1, r2, decay);
    guarded_denominator(d);
    return std::log1p(d.det - d.tr);
}

double coupling_trace_term(const ReflectionMatrix& r1,
                           const ReflectionMatrix& r2, double decay) {
    const CouplingInvariants d = coupling(r1, r2, decay);
    return (d.tr - 2.0 * d.det) / guarded_denominator(d);
}

CavitySides material_cavity(const Film& film1, const Film& film2,
                            std::optional<TensorClass> force_path) {
    const TensorClass c1 =
        force_path.value_or(film1.tensor.classification());
    const TensorClass c2 =
        force_path.value_or(film2.tensor.classification());

    auto provider = [](Film film, TensorClass path) -> ReflectionProvider {
        return [film = std::move(film), path](double xi, double k,
                                              double theta) {
            return reflection_via(path, film, xi, k, theta);
        };
    };

    AzimuthalSymmetry sym = AzimuthalSymmetry::axial;
    if (c1 == TensorClass::biaxial || c2 == TensorClass::biaxial) {
        auto aligned = [](const Film& f) {
            const double r = std::remainder(f.orientation_rad, 0.5 * pi);
            return std::abs(r) <= 1e-12;
        };
        sym = (aligned(film1) && aligned(film2))
                  ? AzimuthalSymmetry::quarter_turn
                  : AzimuthalSymmetry::half_turn;
    }

    return {provider(film1, c1), provider(film2, c2), sym};
}

CavitySides ideal_mirror_cavity() {
    ReflectionMatrix perfect;
    perfect.ss = -1.0;
    perfect.pp = 1.0;
    auto provider = [perfect](double, double, double) { return perfect; };
    return {provider, provider, AzimuthalSymmetry::axial};
}

double ideal_mirror_energy_j_m2(double gap_nm) {
    return -pi * pi * hbar_c_ev_nm / (720.0 * gap_nm * gap_nm * gap_nm) *
           ev_nm2_to_j_m2;
}

double ideal_mirror_pressure_pa(double gap_nm) {
    const double l4 = gap_nm * gap_nm * gap_nm * gap_nm;
    return -pi * pi * hbar_c_ev_nm / (240.0 * l4) * ev_nm3_to_pa;
}

namespace {

// Dimensionless triple integral over (u, theta, y) with u = 2 L xi / hbar c
// and y = 2 L kappa. The gap enters only through the node mapping back to
// physical (xi, k).
struct CoreResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
    std::size_t evaluations = 0;
};

CoreResult triple_integral(const CavitySides& cavity, double gap_nm,
                           bool pressure_kernel, const QuadratureConfig& cfg) {
    cfg.validate();
    if (!std::isfinite(gap_nm) || !(gap_nm > 0.0))
        throw ValidationError("gap must be a positive length");
    if (!cavity.side1 || !cavity.side2)
        throw ValidationError("cavity is missing a reflection provider");

    const bool axial = cavity.symmetry == AzimuthalSymmetry::axial;
    const QuadratureConfig mid_cfg = cfg.inner();
    const QuadratureConfig inner_cfg = axial ? cfg.inner() : cfg.inner().inner();

    std::size_t evaluations = 0;

    auto y_integral = [&](double u, double theta) {
        const double xi_ev = 0.5 * hbar_c_ev_nm * u / gap_nm;
        auto kernel = [&](double y) {
            ++evaluations;
            const double k_nm = std::sqrt((y - u) * (y + u)) / (2.0 * gap_nm);
            const ReflectionMatrix r1 = cavity.side1(xi_ev, k_nm, theta);
            const ReflectionMatrix r2 = cavity.side2(xi_ev, k_nm, theta);
            const double decay = std::exp(-y);
            if (pressure_kernel)
                return y * y * coupling_trace_term(r1, r2, decay);
            return y * coupling_log_det(r1, r2, decay);
        };
        const QuadratureResult res =
            integrate_semi_infinite(kernel, u, inner_cfg);
        if (!res.converged)
            throw NumericalError(
                "transverse integral failed to converge at xi = " +
                std::to_string(xi_ev) + " eV");
        return res.value;
    };

    auto folded_theta = [&](double u) {
        switch (cavity.symmetry) {
            case AzimuthalSymmetry::axial:
                return 2.0 * pi * y_integral(u, 0.0);
            case AzimuthalSymmetry::quarter_turn:
            case AzimuthalSymmetry::half_turn: {
                const double span =
                    cavity.symmetry == AzimuthalSymmetry::quarter_turn
                        ? 0.5 * pi
                        : pi;
                const QuadratureResult res = integrate_finite(
                    [&](double theta) { return y_integral(u, theta); }, 0.0,
                    span, mid_cfg);
                if (!res.converged)
                    throw NumericalError(
                        "azimuthal integral failed to converge at u = " +
                        std::to_string(u));
                return (2.0 * pi / span) * res.value;
            }
        }
        throw ValidationError("unknown azimuthal symmetry");
    };

    const QuadratureResult outer = integrate_semi_infinite(folded_theta, 0.0, cfg);
    return {outer.value, outer.error, outer.converged, evaluations};
}

LifshitzResult finish(const CoreResult& core, double prefactor,
                      const char* label) {
    LifshitzResult out;
    out.value = prefactor * core.value;
    const double floor = 1e-300;
    out.rel_error =
        core.error / std::max(std::abs(core.value), floor);
    out.evaluations = core.evaluations;
    if (!core.converged)
        throw NonConvergenceError(
            std::string(label) + " integral missed the requested tolerance",
            out.value, out.rel_error);
    return out;
}

}  // namespace

LifshitzResult energy_per_area(const CavitySides& cavity, double gap_nm,
                               const QuadratureConfig& cfg) {
    const CoreResult core = triple_integral(cavity, gap_nm, false, cfg);
    const double l3 = gap_nm * gap_nm * gap_nm;
    const double pref =
        hbar_c_ev_nm / (64.0 * pi * pi * pi * l3) * ev_nm2_to_j_m2;
    return finish(core, pref, "energy");
}

LifshitzResult pressure(const CavitySides& cavity, double gap_nm,
                        const QuadratureConfig& cfg) {
    const CoreResult core = triple_integral(cavity, gap_nm, true, cfg);
    const double l4 = gap_nm * gap_nm * gap_nm * gap_nm;
    const double pref =
        -hbar_c_ev_nm / (64.0 * pi * pi * pi * l4) * ev_nm3_to_pa;
    return finish(core, pref, "pressure");
}

namespace {

template <typename Point, typename Eval>
std::vector<Point> parallel_points(const std::vector<double>& gaps_nm,
                                   const Eval& eval) {
    for (double gap : gaps_nm)
        if (!std::isfinite(gap) || !(gap > 0.0))
            throw ValidationError("gap grid must contain positive lengths");

    std::vector<Point> out(gaps_nm.size());
    const unsigned workers = std::max(
        1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                               static_cast<unsigned>(gaps_nm.size())));
    std::atomic<std::size_t> next{0};
    auto run = [&]() {
        for (std::size_t i; (i = next.fetch_add(1)) < gaps_nm.size();)
            out[i] = eval(gaps_nm[i]);
    };
    if (workers == 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
        for (std::thread& t : pool) t.join();
    }
    return out;
}

}  // namespace

std::vector<ForcePoint> sweep_curve(const CavitySides& cavity,
                                    const std::vector<double>& gaps_nm,
                                    const QuadratureConfig& cfg) {
    return parallel_points<ForcePoint>(gaps_nm, [&](double gap) {
        ForcePoint p;
        p.gap_nm = gap;
        try {
            const LifshitzResult e = energy_per_area(cavity, gap, cfg);
            const LifshitzResult f = pressure(cavity, gap, cfg);
            p.energy_j_m2 = e.value;
            p.pressure_pa = f.value;
            p.rel_error = std::max(e.rel_error, f.rel_error);
            p.ok = true;
        } catch (const std::exception& ex) {
            p.ok = false;
            p.message = ex.what();
        }
        return p;
    });
}

std::vector<RatioPoint> force_ratio_curve(const CavitySides& cavity,
                                          const CavitySides& baseline,
                                          const std::vector<double>& gaps_nm,
                                          const QuadratureConfig& cfg) {
    return parallel_points<RatioPoint>(gaps_nm, [&](double gap) {
        RatioPoint p;
        p.gap_nm = gap;
        try {
            const LifshitzResult e = energy_per_area(cavity, gap, cfg);
            const LifshitzResult f = pressure(cavity, gap, cfg);
            const LifshitzResult b = pressure(baseline, gap, cfg);
            p.energy_j_m2 = e.value;
            p.pressure_pa = f.value;
            p.baseline_pa = b.value;
            if (std::abs(b.value) < 1e-250)
                throw NumericalError(
                    "baseline pressure vanishes; ratio undefined");
            p.ratio = f.value / b.value;
            p.rel_error =
                std::max(e.rel_error, f.rel_error + b.rel_error);
            p.ok = true;
        } catch (const std::exception& ex) {
            p.ok = false;
            p.message = ex.what();
        }
        return p;
    });
}

}  // namespace casfilm
