#include "casfilm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include "casfilm/errors.hpp"

namespace casfilm {
namespace {

// Nested Gauss-Kronrod pairs (QUADPACK abscissae/weights).
// Positive half of the symmetric rule; last entry is the centre node.
// Gauss nodes sit at the odd indices.

constexpr double k15_xgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr double k15_wgk[8] = {
    0.02293532201052922, 0.06309209262997855, 0.10479001032225018,
    0.14065325971552592, 0.16900472663926790, 0.19035057806478540,
    0.20443294007529889, 0.20948214108472782};
constexpr double k15_wg[4] = {
    0.12948496616886969, 0.27970539148927664, 0.38183005050511894,
    0.41795918367346938};

constexpr double k21_xgk[11] = {
    0.9956571630258081, 0.9739065285171717, 0.9301574913557082,
    0.8650633666889845, 0.7808177265864169, 0.6794095682990244,
    0.5627571346686047, 0.4333953941292472, 0.2943928627014602,
    0.1488743389816312, 0.0};
constexpr double k21_wgk[11] = {
    0.011694638867371874, 0.032558162307964727, 0.054755896574351996,
    0.075039674810919952, 0.093125454583697606, 0.109387158802297642,
    0.123491976262065851, 0.134709217311473326, 0.142775938577060081,
    0.147739104901338491, 0.149445554002916906};
constexpr double k21_wg[5] = {
    0.066671344308688138, 0.149451349150580593, 0.219086362515982044,
    0.269266719309996355, 0.295524224714752870};

struct Rule {
  const double* xgk;
  const double* wgk;
  const double* wg;
  int half;  // number of entries in xgk/wgk (centre included)
};

Rule select_rule(int points) {
  if (points == 21) return {k21_xgk, k21_wgk, k21_wg, 11};
  return {k15_xgk, k15_wgk, k15_wg, 8};
}

struct Panel {
  double a, b;
  double value;
  double error;
  int depth;
};

// worst error first, then lower interval
struct PanelOrder {
  bool operator()(const Panel& p, const Panel& q) const {
    if (p.error != q.error) return p.error > q.error;
    if (p.a != q.a) return p.a < q.a;
    return p.b < q.b;
  }
};

Panel evaluate_panel(const std::function<double(double)>& f, double a,
                     double b, int depth, const Rule& rule, long& evals) {
  const double centre = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);
  const int c = rule.half - 1;  // index of the centre node

  double fv1[10], fv2[10];
  const double fc = f(centre);
  double resk = rule.wgk[c] * fc;
  double resg = (c % 2 == 1) ? rule.wg[c / 2] * fc : 0.0;
  double resabs = rule.wgk[c] * std::abs(fc);

  for (int j = 0; j < c; ++j) {
    const double dx = hlgth * rule.xgk[j];
    const double f1 = f(centre - dx);
    const double f2 = f(centre + dx);
    fv1[j] = f1;
    fv2[j] = f2;
    const double fsum = f1 + f2;
    resk += rule.wgk[j] * fsum;
    if (j % 2 == 1) resg += rule.wg[j / 2] * fsum;
    resabs += rule.wgk[j] * (std::abs(f1) + std::abs(f2));
  }
  evals += 2 * c + 1;

  const double reskh = resk * 0.5;
  double resasc = rule.wgk[c] * std::abs(fc - reskh);
  for (int j = 0; j < c; ++j) {
    resasc += rule.wgk[j] *
              (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  }

  const double value = resk * hlgth;
  resabs *= hlgth;
  resasc *= hlgth;

  double err = std::abs((resk - resg) * hlgth);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  const double uflow = std::numeric_limits<double>::min();
  const double epmach = std::numeric_limits<double>::epsilon();
  if (resabs > uflow / (50.0 * epmach)) {
    err = std::max(epmach * 50.0 * resabs, err);
  }
  return {a, b, value, err, depth};
}

constexpr long kMaxEvaluations = 4'000'000;

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    const QuadratureConfig& cfg) {
  cfg.validate();
  QuadratureResult res;
  if (a == b) {
    res.converged = true;
    return res;
  }
  if (a > b) throw ValidationError("integration bounds must satisfy a <= b");

  const Rule rule = select_rule(cfg.rule_points);
  long evals = 0;

  std::multiset<Panel, PanelOrder> open;
  std::vector<Panel> frozen;  // panels at max depth, no longer splittable
  open.insert(evaluate_panel(f, a, b, 0, rule, evals));

  double total_value = open.begin()->value;
  double total_error = open.begin()->error;

  bool converged = false;
  while (true) {
    const double target =
        std::max(cfg.rel_tol_outer * std::abs(total_value), cfg.abs_floor);
    if (total_error <= target) {
      converged = true;
      break;
    }
    if (open.empty() || evals >= kMaxEvaluations) break;

    const Panel worst = *open.begin();
    open.erase(open.begin());
    if (worst.depth >= cfg.max_depth) {
      frozen.push_back(worst);
      continue;
    }

    const double mid = worst.a + 0.5 * (worst.b - worst.a);
    if (mid <= worst.a || mid >= worst.b) {  // interval at fp resolution
      frozen.push_back(worst);
      continue;
    }
    const Panel left =
        evaluate_panel(f, worst.a, mid, worst.depth + 1, rule, evals);
    const Panel right =
        evaluate_panel(f, mid, worst.b, worst.depth + 1, rule, evals);
    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    open.insert(left);
    open.insert(right);
  }

  // final sums in a fixed (left to right) order for reproducibility
  std::vector<Panel> all(open.begin(), open.end());
  all.insert(all.end(), frozen.begin(), frozen.end());
  std::sort(all.begin(), all.end(),
            [](const Panel& p, const Panel& q) { return p.a < q.a; });
  double value = 0.0, error = 0.0;
  for (const Panel& p : all) {
    value += p.value;
    error += p.error;
  }
  res.value = value;
  res.error = error;
  res.converged = converged;
  res.evaluations = evals;
  return res;
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol_outer >= 1e-13 && rel_tol_outer < 1.0))
    throw ValidationError("rel_tol_outer must lie in [1e-13, 1)");
  if (!(rel_tol_inner >= 1e-13 && rel_tol_inner < 1.0))
    throw ValidationError("rel_tol_inner must lie in [1e-13, 1)");
  if (!(abs_floor > 0.0))
    throw ValidationError("abs_floor must be positive");
  if (max_depth < 1 || max_depth > 60)
    throw ValidationError("max_depth must lie in [1, 60]");
  if (rule_points != 15 && rule_points != 21)
    throw ValidationError("rule_points must be 15 or 21");
}

QuadratureConfig QuadratureConfig::inner() const {
  QuadratureConfig c = *this;
  c.rel_tol_outer = rel_tol_inner;
  c.rel_tol_inner = std::max(rel_tol_inner / 10.0, 1e-13);
  return c;
}

QuadratureResult integrate_finite(const std::function<double(double)>& f,
                                  double a, double b,
                                  const QuadratureConfig& cfg) {
  return integrate_adaptive(f, a, b, cfg);
}

QuadratureResult integrate_semi_infinite(
    const std::function<double(double)>& f, double a,
    const QuadratureConfig& cfg) {
  auto g = [&f, a](double s) {
    const double om = 1.0 - s;
    const double t = a + s / om;
    return f(t) / (om * om);
  };
  return integrate_adaptive(g, 0.0, 1.0, cfg);
}

}  // namespace casfilm
