#include "sdist/inverse.hpp"

#include <algorithm>
#include <array>
#include <optional>

namespace sdist {

namespace {

constexpr double kIterateGap = 1e-9;
constexpr int kMaxHalvings = 30;
constexpr int kPolishSteps = 3;

// Tail sums T_r = 1 - (K_1 + ... + K_r) = K_{r+1} + ... + K_s, r = 1..s-1.
Eigen::VectorXd tail_sums(const Eigen::VectorXd& k) {
  Eigen::VectorXd tails(k.size());
  double partial = 0;
  for (Index r = 0; r < k.size(); ++r) {
    partial += k(r);
    tails(r) = 1.0 - partial;
  }
  return tails;
}

// On D the tail sums alternate, sign(T_r) = (-1)^r, and in the coordinates
// log|T_r| damped Newton converges from the default start far more reliably
// than in log|K_i|, whose level sets run off into the faces of D.
bool tails_alternate(const Eigen::VectorXd& tails) {
  for (Index r = 0; r < tails.size(); ++r)
    if (!((r % 2 == 0 ? -tails(r) : tails(r)) > 0)) return false;
  return true;
}

// Residual and Jacobian of the equations being solved, both in logarithmic
// coordinates: log|T_r(t)| - log|T_r(k)| or log|K_i(t)| - log|k_i|.
struct Chart {
  bool tails = true;
  Eigen::VectorXd log_target;

  Eigen::VectorXd values(const Eigen::VectorXd& t) const {
    const Eigen::VectorXd k = forward_K(t);
    return tails ? tail_sums(k) : k;
  }
  Eigen::VectorXd residual(const Eigen::VectorXd& t) const {
    return (values(t).array().abs().log() - log_target.array()).matrix();
  }
  Eigen::MatrixXd jacobian_at(const Eigen::VectorXd& t) const {
    const Eigen::VectorXd k = forward_K(t);
    Eigen::MatrixXd jac = jacobian(t);
    if (!tails) return k.cwiseInverse().asDiagonal() * jac;
    // dT_r/dt = -(dK_1/dt + ... + dK_r/dt)
    for (Index r = 1; r < jac.rows(); ++r) jac.row(r) += jac.row(r - 1);
    return (-tail_sums(k)).cwiseInverse().asDiagonal() * jac;
  }
};

InversionResult newton_from(Eigen::VectorXd t, const Eigen::VectorXd& k_target, const Chart& chart,
                            const InverseOptions& options) {
  InversionResult out;
  Eigen::VectorXd r = chart.residual(t);
  double norm = r.norm();
  auto finish = [&](bool converged) {
    out.converged = converged;
    out.t = t;
    out.residual = scaled_residual(t, k_target);
    return out;
  };

  for (int iter = 0; iter < options.max_iter; ++iter) {
    out.iterations = iter;
    if (scaled_residual(t, k_target) <= options.tol_res) {
      for (int p = 0; p < kPolishSteps; ++p) {
        const Eigen::VectorXd step = chart.jacobian_at(t).partialPivLu().solve(-r);
        const Eigen::VectorXd trial = t + step;
        if (!step.allFinite() || !in_domain(trial, kIterateGap)) break;
        const Eigen::VectorXd r_trial = chart.residual(trial);
        if (!(r_trial.norm() <= norm)) break;
        t = trial;
        r = r_trial;
        norm = r.norm();
      }
      return finish(true);
    }
    const Eigen::VectorXd step = chart.jacobian_at(t).partialPivLu().solve(-r);
    if (!step.allFinite()) return finish(false);
    double lambda = 1.0;
    bool accepted = false;
    for (int h = 0; h <= kMaxHalvings; ++h, lambda *= 0.5) {
      const Eigen::VectorXd trial = t + lambda * step;
      if (!in_domain(trial, kIterateGap)) continue;
      const Eigen::VectorXd r_trial = chart.residual(trial);
      if (r_trial.allFinite() && r_trial.norm() < norm) {
        t = trial;
        r = r_trial;
        norm = r.norm();
        accepted = true;
        break;
      }
    }
    if (!accepted) return finish(scaled_residual(t, k_target) <= options.tol_res);
  }
  return finish(scaled_residual(t, k_target) <= options.tol_res);
}

}  // namespace

double scaled_residual(const Eigen::VectorXd& t, const Eigen::VectorXd& k_target) {
  const Eigen::VectorXd k = forward_K(t);
  return ((k - k_target).array().abs() / k_target.array().abs().max(1.0)).maxCoeff();
}

void require_sign_pattern(const Eigen::VectorXd& k_target) {
  for (Index i = 0; i < k_target.size(); ++i) {
    const double expected = i % 2 == 0 ? 1.0 : -1.0;
    if (!(k_target(i) * expected > 0))
      throw Error(ErrorKind::invalid_sign, "k_" + std::to_string(i + 1) + " must have sign (-1)^" + std::to_string(i));
  }
}

std::vector<Eigen::VectorXd> newton_starts(Index s) {
  std::vector<Eigen::VectorXd> starts;
  const Index m = s - 1;
  Eigen::VectorXd uniform(m);
  for (Index i = 0; i < m; ++i) uniform(i) = double(i + 1) / double(s);
  starts.push_back(uniform);
  for (double ratio : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    Eigen::VectorXd geometric(m);
    for (Index i = 0; i < m; ++i) geometric(i) = std::pow(ratio, double(m - i));
    starts.push_back(geometric);
  }
  return starts;
}

InversionResult invert_K(const Eigen::VectorXd& k_target, const InverseOptions& options) {
  if (k_target.size() < 1) throw Error(ErrorKind::parameter, "need at least one ratio (s >= 2)");
  if (!k_target.allFinite()) throw Error(ErrorKind::parameter, "ratios must be finite");
  require_sign_pattern(k_target);
  Chart chart;
  const Eigen::VectorXd tails = tail_sums(k_target);
  chart.tails = tails_alternate(tails);
  chart.log_target = (chart.tails ? tails : k_target).array().abs().log().matrix();
  const auto starts = newton_starts(k_target.size() + 1);
  InversionResult best;
  for (std::size_t idx = 0; idx < starts.size(); ++idx) {
    if (!in_domain(starts[idx], kIterateGap)) continue;
    InversionResult attempt = newton_from(starts[idx], k_target, chart, options);
    attempt.start_index = int(idx);
    if (attempt.converged) return attempt;
    if (best.start_index < 0 || attempt.residual < best.residual) best = attempt;
    if (!options.multistart) break;
  }
  return best;
}

ClosedFormResult invert_s3_closed(double k1, double k2) {
  if (!(k1 > 0) || !(k2 < 0)) throw Error(ErrorKind::invalid_sign, "closed form needs k1 > 0 and k2 < 0");
  const double sum = k1 + k2;
  if (std::abs(sum) < 1e-12) throw Error(ErrorKind::singular, "k1 + k2 = 0; use the Newton inversion");
  const double s = sum - 1.0;
  const double disc = k1 * k2 * s;
  if (disc < 0) throw Error(ErrorKind::no_solution, "k1 k2 (k1 + k2 - 1) < 0");
  const double root = std::sqrt(disc);
  const Eigen::Vector2d target(k1, k2);

  std::optional<ClosedFormResult> best;
  for (char b1 : {'+', '-'})
    for (char b2 : {'+', '-'}) {
      const double t1 = (k1 * s + (b1 == '+' ? root : -root)) / (k1 * sum);
      const double t2 = (k2 * s + (b2 == '+' ? root : -root)) / (k2 * sum);
      const Eigen::Vector2d t(t1, t2);
      if (!in_domain(t)) continue;
      const double res = scaled_residual(t, target);
      if (res > 1e-9) continue;
      if (!best || res < best->residual) best = ClosedFormResult{t, b1, b2, res};
    }
  if (!best) throw Error(ErrorKind::no_solution, "no branch combination lands in D and round-trips");
  return *best;
}

}  // namespace sdist
