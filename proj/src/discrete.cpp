#include "csl/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace csl {

namespace {

void check_hermitian(const Eigen::MatrixXcd& M, const char* what) {
  if ((M - M.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument(std::string(what) + ": matrix is not Hermitian");
}

double logsumexp(const Eigen::VectorXd& v) {
  const double m = v.maxCoeff();
  double s = 0.0;
  for (int i = 0; i < v.size(); ++i) s += std::exp(v[i] - m);
  return m + std::log(s);
}

Eigen::MatrixXcd lindblad_rhs(const Eigen::MatrixXcd& rho,
                              const Eigen::MatrixXcd& H,
                              const std::vector<Eigen::MatrixXcd>& A_ops,
                              double lambda) {
  const std::complex<double> I(0.0, 1.0);
  Eigen::MatrixXcd d = -I * (H * rho - rho * H);
  for (const auto& A : A_ops) {
    const Eigen::MatrixXcd c1 = A * rho - rho * A;
    d -= 0.5 * lambda * (A * c1 - c1 * A);
  }
  return d;
}

}  // namespace

void DiscreteSuperposition::validate() const {
  if (eigenvalues.size() == 0)
    throw std::invalid_argument("DiscreteSuperposition: eigenvalues empty");
  if (eigenvalues.size() != amplitudes.size())
    throw std::invalid_argument(
        "DiscreteSuperposition: eigenvalues/amplitudes length mismatch");
  if (lambda <= 0.0)
    throw std::invalid_argument("DiscreteSuperposition: lambda must be > 0");
  if (std::fabs(amplitudes.squaredNorm() - 1.0) > 1e-12)
    throw std::invalid_argument(
        "DiscreteSuperposition: amplitudes not normalized");
}

Eigen::VectorXcd evolve_closed_form(const DiscreteSuperposition& sup, double B,
                                    double t) {
  sup.validate();
  if (t <= 0.0) throw std::invalid_argument("evolve_closed_form: t must be > 0");
  const double lt = sup.lambda * t;
  Eigen::VectorXcd phi(sup.size());
  for (int n = 0; n < sup.size(); ++n) {
    const double d = B - 2.0 * lt * sup.eigenvalues[n];
    phi[n] = sup.amplitudes[n] * std::exp(-d * d / (4.0 * lt));
  }
  return phi;
}

double final_B_density(const DiscreteSuperposition& sup, double t, double B) {
  sup.validate();
  if (t <= 0.0) throw std::invalid_argument("final_B_density: t must be > 0");
  const double lt = sup.lambda * t;
  double p = 0.0;
  for (int n = 0; n < sup.size(); ++n) {
    const double d = B - 2.0 * lt * sup.eigenvalues[n];
    p += std::norm(sup.amplitudes[n]) * std::exp(-d * d / (2.0 * lt));
  }
  return p / std::sqrt(2.0 * std::numbers::pi * lt);
}

TrajectoryResult run_trajectory(const DiscreteSuperposition& sup, double T,
                                double dt, RngStream stream) {
  sup.validate();
  if (dt <= 0.0 || dt >= T)
    throw std::invalid_argument("run_trajectory: need 0 < dt < T");
  const int n = sup.size();
  const double lambda = sup.lambda;
  const auto& a = sup.eigenvalues;

  // log magnitudes of the positive real multipliers; phases never change
  Eigen::VectorXd log_mag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd log_c2(n);
  for (int i = 0; i < n; ++i)
    log_c2[i] = std::log(std::max(std::norm(sup.amplitudes[i]), 1e-300));

  Eigen::VectorXd x(n);
  auto refresh_x = [&]() {
    Eigen::VectorXd lw = log_c2 + 2.0 * log_mag;
    const double m = lw.maxCoeff();
    double z = 0.0;
    for (int i = 0; i < n; ++i) {
      x[i] = std::exp(lw[i] - m);
      z += x[i];
    }
    x /= z;
  };
  refresh_x();

  const long n_steps = std::lround(T / dt);
  const double sigma = std::sqrt(lambda * dt);
  double B = 0.0;
  for (long k = 0; k < n_steps; ++k) {
    // component pick with weights x, then Gaussian about its drifted mean
    const double u = stream.uniform();
    int comp = n - 1;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      acc += x[i];
      if (u <= acc) {
        comp = i;
        break;
      }
    }
    const double dB = 2.0 * lambda * dt * a[comp] + sigma * stream.normal();
    B += dB;
    for (int i = 0; i < n; ++i)
      log_mag[i] += a[i] * dB - a[i] * a[i] * lambda * dt;
    refresh_x();
  }

  TrajectoryResult res;
  res.B_final = B;
  res.x_final = x;
  res.state.resize(n);
  {
    Eigen::VectorXd lw = log_c2 + 2.0 * log_mag;
    const double lz = logsumexp(lw);
    for (int i = 0; i < n; ++i) {
      const double mag = std::exp(0.5 * (lw[i] - lz));
      const std::complex<double> c = sup.amplitudes[i];
      const double ac = std::abs(c);
      res.state[i] = ac > 0.0 ? c / ac * mag : std::complex<double>(0.0);
    }
    res.weight_log = logsumexp(Eigen::VectorXd(log_c2 + 2.0 * log_mag));
  }
  int best = 0;
  for (int i = 1; i < n; ++i)
    if (x[i] > x[best]) best = i;
  res.outcome = best;
  return res;
}

BornEnsemble born_ensemble(const DiscreteSuperposition& sup, double T,
                           double dt, std::size_t n_traj,
                           std::uint64_t master_seed, int n_threads) {
  sup.validate();
  if (n_traj < 1) throw std::invalid_argument("born_ensemble: n_traj must be >= 1");
  const int n = sup.size();
  std::vector<TrajectoryResult> results(n_traj);

  auto worker = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i)
      results[i] = run_trajectory(sup, T, dt, RngStream(master_seed, i));
  };
  if (n_threads <= 1) {
    worker(0, n_traj);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n_traj + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
      const std::size_t lo = std::min<std::size_t>(t * chunk, n_traj);
      const std::size_t hi = std::min<std::size_t>(lo + chunk, n_traj);
      if (lo < hi) pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  BornEnsemble ens;
  ens.frequencies = Eigen::VectorXd::Zero(n);
  ens.mean_x = Eigen::VectorXd::Zero(n);
  ens.mean_projector = Eigen::MatrixXcd::Zero(n, n);
  ens.B_finals.resize(n_traj);
  // fixed-order aggregation: identical totals for any thread count
  for (std::size_t i = 0; i < n_traj; ++i) {
    const auto& r = results[i];
    ens.frequencies[r.outcome] += 1.0;
    ens.mean_x += r.x_final;
    ens.mean_projector += r.state * r.state.adjoint();
    ens.B_finals[i] = r.B_final;
  }
  const double inv = 1.0 / static_cast<double>(n_traj);
  ens.frequencies *= inv;
  ens.mean_x *= inv;
  ens.mean_projector *= inv;
  return ens;
}

Eigen::VectorXd born_statistics(const DiscreteSuperposition& sup, double T,
                                double dt, std::size_t n_traj,
                                std::uint64_t master_seed, int n_threads) {
  return born_ensemble(sup, T, dt, n_traj, master_seed, n_threads).frequencies;
}

Eigen::MatrixXcd analytic_rho(const DiscreteSuperposition& sup, double t) {
  sup.validate();
  if (t < 0.0) throw std::invalid_argument("analytic_rho: t must be >= 0");
  const int n = sup.size();
  Eigen::MatrixXcd rho(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double d = sup.eigenvalues[i] - sup.eigenvalues[j];
      rho(i, j) = sup.amplitudes[i] * std::conj(sup.amplitudes[j]) *
                  std::exp(-0.5 * sup.lambda * t * d * d);
    }
  return rho;
}

Eigen::MatrixXcd lindblad_evolve(const Eigen::MatrixXcd& rho0,
                                 const Eigen::MatrixXcd& H,
                                 const std::vector<Eigen::MatrixXcd>& A_ops,
                                 double lambda, double t, double dt) {
  if (dt <= 0.0 || t < 0.0)
    throw std::invalid_argument("lindblad_evolve: need dt > 0, t >= 0");
  check_hermitian(rho0, "lindblad_evolve rho0");
  check_hermitian(H, "lindblad_evolve H");
  for (const auto& A : A_ops) check_hermitian(A, "lindblad_evolve A_op");
  for (std::size_t i = 0; i < A_ops.size(); ++i)
    for (std::size_t j = i + 1; j < A_ops.size(); ++j)
      if ((A_ops[i] * A_ops[j] - A_ops[j] * A_ops[i]).cwiseAbs().maxCoeff() >
          1e-10)
        throw std::invalid_argument("lindblad_evolve: A_ops do not commute");
  double scale = H.norm();
  for (const auto& A : A_ops) scale += lambda * A.norm() * A.norm();
  if (dt * scale >= 0.1)
    throw std::invalid_argument("lindblad_evolve: dt too large for this system");

  const long n_steps = std::max(1L, std::lround(t / dt));
  const double h = t / static_cast<double>(n_steps);
  Eigen::MatrixXcd rho = rho0;
  for (long k = 0; k < n_steps; ++k) {
    const Eigen::MatrixXcd k1 = lindblad_rhs(rho, H, A_ops, lambda);
    const Eigen::MatrixXcd k2 = lindblad_rhs(rho + 0.5 * h * k1, H, A_ops, lambda);
    const Eigen::MatrixXcd k3 = lindblad_rhs(rho + 0.5 * h * k2, H, A_ops, lambda);
    const Eigen::MatrixXcd k4 = lindblad_rhs(rho + h * k3, H, A_ops, lambda);
    rho += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    rho = 0.5 * (rho + rho.adjoint().eval());  // control roundoff drift
  }
  return rho;
}

double ensemble_rate(const Eigen::MatrixXcd& O, const Eigen::MatrixXcd& rho,
                     const Eigen::MatrixXcd& H,
                     const std::vector<Eigen::MatrixXcd>& A_ops, double lambda) {
  check_hermitian(O, "ensemble_rate O");
  check_hermitian(rho, "ensemble_rate rho");
  check_hermitian(H, "ensemble_rate H");
  const std::complex<double> I(0.0, 1.0);
  std::complex<double> r = -I * ((O * H - H * O) * rho).trace();
  for (const auto& A : A_ops) {
    const Eigen::MatrixXcd c1 = A * O - O * A;
    r -= 0.5 * lambda * ((A * c1 - c1 * A) * rho).trace();
  }
  return r.real();
}

RuinResult gamblers_ruin(int x1_start, int total, RngStream stream) {
  if (x1_start <= 0 || x1_start >= total)
    throw std::invalid_argument("gamblers_ruin: need 0 < x1_start < total");
  int x = x1_start;
  RuinResult res;
  while (x > 0 && x < total) {
    x += (stream.next_u64() & 1u) ? 1 : -1;
    ++res.steps;
  }
  res.winner = (x == total) ? 0 : 1;
  return res;
}

Eigen::VectorXd fair_game_defect(const Eigen::MatrixXd& R,
                                 const Eigen::MatrixXd& V,
                                 const Eigen::MatrixXcd& rho, double lambda) {
  if ((R - R.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("fair_game_defect: R is not symmetric");
  if ((V - V.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("fair_game_defect: V is not symmetric");
  check_hermitian(rho, "fair_game_defect rho");
  const int n = static_cast<int>(R.rows());
  const Eigen::MatrixXcd Rc = R.cast<std::complex<double>>();
  const Eigen::MatrixXcd Vc = V.cast<std::complex<double>>();
  const double mean_V = (Vc * rho).trace().real();
  const double mean_R = (Rc * rho).trace().real();
  const double mean_R2 = (Rc * Rc * rho).trace().real();
  const Eigen::MatrixXcd VR = Vc * rho + rho * Vc;
  const Eigen::MatrixXcd RrR = Rc * rho * Rc;
  const Eigen::MatrixXcd Rr = Rc * rho + rho * Rc;
  Eigen::VectorXd defect(n);
  for (int i = 0; i < n; ++i) {
    const double rnn = rho(i, i).real();
    defect[i] = VR(i, i).real() - 2.0 * rnn * mean_V +
                lambda * (RrR(i, i).real() - rnn * mean_R2 -
                          2.0 * mean_R * (Rr(i, i).real() - 2.0 * rnn * mean_R));
  }
  return defect;
}

}  // namespace csl
