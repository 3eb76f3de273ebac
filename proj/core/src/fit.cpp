#include "aokr/fit.hpp"

#include <fmt/format.h>

#include <cmath>
#include <map>
#include <ostream>

#if defined(__GNUC__)
#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wpedantic"
#pragma GCC diagnostic ignored "-Wunused-parameter"
#endif
#include <Eigen/Core>
#include <unsupported/Eigen/NonLinearOptimization>
#if defined(__GNUC__)
#pragma GCC diagnostic pop
#endif

#include "aokr/units.hpp"

namespace aokr {

namespace {

const double kSqrtTwoPi = std::sqrt(2.0 * kPi);

struct Window {
  std::vector<double> p;
  std::vector<double> density;
  double mass = 0.0;
};

// Fixed-centre Gaussian, parameters (amplitude, width).
struct GaussianResidual {
  using Scalar = double;
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

  const Window* window;
  double center;

  int inputs() const { return 2; }
  int values() const { return static_cast<int>(window->p.size()); }

  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
    for (int i = 0; i < values(); ++i) {
      const double d = window->p[i] - center;
      f[i] = x[0] * std::exp(-d * d / (2.0 * x[1] * x[1])) - window->density[i];
    }
    return 0;
  }

  int df(const Eigen::VectorXd& x, Eigen::MatrixXd& jac) const {
    const double s2 = x[1] * x[1];
    for (int i = 0; i < values(); ++i) {
      const double d = window->p[i] - center;
      const double g = std::exp(-d * d / (2.0 * s2));
      jac(i, 0) = g;
      jac(i, 1) = x[0] * g * d * d / (s2 * x[1]);
    }
    return 0;
  }
};

bool lm_converged(Eigen::LevenbergMarquardtSpace::Status status) {
  using namespace Eigen::LevenbergMarquardtSpace;
  switch (status) {
    case RelativeReductionTooSmall:
    case RelativeErrorTooSmall:
    case RelativeErrorAndReductionTooSmall:
    case CosinusTooSmall:
    case FtolTooSmall:
    case XtolTooSmall:
    case GtolTooSmall:
      return true;
    default:
      return false;
  }
}

}  // namespace

FitReport fit_orders(const MomentumDistribution& dist, double beta) {
  const auto p = dist.momenta();
  const auto w = dist.probability();
  const double bin = p.size() > 1 ? dist.bin_width() : 1.0;

  std::map<int, Window> windows;
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto& win = windows[diffraction_order(p[i], beta)];
    win.p.push_back(p[i]);
    win.density.push_back(w[i] / bin);
    win.mass += w[i];
  }

  FitReport report;
  double residual2 = 0.0;
  for (const auto& [order, win] : windows) {
    if (win.mass <= kFitMinWindowMass) continue;
    OrderFit fit;
    fit.order = order;
    fit.center = 2.0 * order + 2.0 * beta;

    double second = 0.0;
    double peak = 0.0;
    for (std::size_t i = 0; i < win.p.size(); ++i) {
      const double d = win.p[i] - fit.center;
      second += win.density[i] * bin * d * d;
      peak = std::max(peak, win.density[i]);
    }
    const double moment_width = std::sqrt(second / win.mass);

    bool ok = false;
    if (win.p.size() >= 3 && moment_width > 0.0) {
      GaussianResidual functor{&win, fit.center};
      Eigen::VectorXd x(2);
      x << peak, moment_width;
      Eigen::LevenbergMarquardt<GaussianResidual> lm(functor);
      const auto status = lm.minimize(x);
      const double width = std::abs(x[1]);
      if (lm_converged(status) && std::isfinite(x[0]) && std::isfinite(width) && x[0] >= 0.0 &&
          width > 0.0) {
        fit.amplitude = x[0];
        fit.width = width;
        fit.weight = x[0] * width * kSqrtTwoPi;
        Eigen::VectorXd r(functor.values());
        functor(x, r);
        residual2 += r.squaredNorm();
        ok = true;
      }
    }
    if (!ok) {
      fit.converged = false;
      fit.weight = win.mass;
      fit.width = moment_width;
      fit.amplitude = moment_width > 0.0 ? win.mass / (moment_width * kSqrtTwoPi) : peak;
    }
    report.energy += fit.weight * (fit.center * fit.center + fit.width * fit.width);
    report.orders.push_back(fit);
  }
  report.residual_norm = std::sqrt(residual2);
  return report;
}

void write_fit_report_csv(std::ostream& out, const FitReport& report) {
  out << "order,center_prec,amplitude,width_prec,weight\n";
  for (const auto& f : report.orders) {
    out << fmt::format("{},{:.12g},{:.12e},{:.12e},{:.12e}\n", f.order, f.center, f.amplitude,
                       f.width, f.weight);
  }
}

}  // namespace aokr
