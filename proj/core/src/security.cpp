#include "ndstc/security.hpp"

#include <bit>
#include <cmath>

#include "ndstc/errors.hpp"
#include "ndstc/parallel.hpp"
#include "ndstc/random_matrix.hpp"

namespace ndstc {
namespace {

constexpr std::uint64_t kStreamProjection = 0x6b65792d70726f6aull;  // "key-proj"

bool is_pow2(std::size_t x) { return x >= 1 && (x & (x - 1)) == 0; }

cplx corner_phase(std::size_t psk_order) {
  const double a = 2.0 * M_PI / static_cast<double>(psk_order);
  return {std::cos(a), std::sin(a)};
}

// out = M^n * a (rows rotate down by n, corner phase on the first n rows).
CMatrix shift_rows_down(const CMatrix& a, std::size_t n, cplx u) {
  const std::size_t m = a.rows(), cols = a.cols();
  CMatrix out(m, cols);
  for (std::size_t r = 0; r < m; ++r) {
    const cplx coef = (r < n) ? u : cplx(1.0, 0.0);
    const std::size_t src = (r + m - n) % m;
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = coef * a(src, c);
  }
  return out;
}

// out = (M^n)^H * a.
CMatrix shift_rows_up(const CMatrix& a, std::size_t n, cplx u) {
  const std::size_t m = a.rows(), cols = a.cols();
  CMatrix out(m, cols);
  for (std::size_t r = 0; r < m; ++r) {
    const cplx coef = (r + n >= m) ? std::conj(u) : cplx(1.0, 0.0);
    const std::size_t src = (r + n) % m;
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = coef * a(src, c);
  }
  return out;
}


}  // namespace

ProjectionSecret derive_projection(std::uint64_t key, const KeySchedule& ks,
                                   unsigned threads) {
  if (ks.nb < 2 || ks.nb > ks.dim || ks.dim % ks.nb != 0 ||
      !is_pow2(ks.dim / ks.nb))
    throw ParamError("derive_projection: dim must be nb * 2^k");
  if (ks.t_cols == 0 || ks.t_cols > ks.dim / ks.nb)
    throw ParamError("derive_projection: need t_cols <= dim / nb");

  RngStream rng(key, kStreamProjection);
  const DesignResult res =
      optimize_projection(ks.nb, ks.psk_order, ks.opts, rng, threads);

  ProjectionSecret out;
  out.theta = res.theta;
  out.f_nb = res.f;
  out.e1 = expand_sparse(e1_from_theta(res.theta), ks.dim);
  out.basis = expand_time(out.e1, ks.t_cols, ks.nb);
  return out;
}

EveObjective::EveObjective(const std::vector<EveObservation>* obs,
                           std::size_t dim, std::size_t t_cols,
                           std::size_t psk_order, double reg_weight)
    : obs_(obs),
      dim_(dim),
      t_cols_(t_cols),
      corner_(corner_phase(psk_order)),
      reg_(reg_weight) {
  if (dim < 2) throw ParamError("EveObjective: dim must be >= 2");
  if (t_cols == 0 || t_cols > dim) throw ParamError("EveObjective: bad t_cols");
}

CMatrix EveObjective::basis(const std::vector<double>& theta) const {
  if (theta.size() != dim_) throw ParamError("EveObjective: theta size");
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim_));
  CMatrix e(dim_, t_cols_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t t = 0; t < t_cols_; ++t) {
      const double a = theta[(r + dim_ - t % dim_) % dim_];
      e(r, t) = cplx(std::cos(a), std::sin(a)) * scale;
    }
  return e;
}

double EveObjective::value(const std::vector<double>& theta) const {
  const CMatrix e = basis(theta);
  double j = 0.0;
  for (const EveObservation& o : *obs_) {
    const CMatrix ge = mul(o.g, e);
    for (std::size_t r = 0; r < ge.rows(); ++r)
      for (std::size_t c = 0; c < ge.cols(); ++c)
        j += std::norm(ge(r, c) - o.y(r, c));
  }
  if (reg_ > 0.0) {
    for (std::size_t n = 1; n <= dim_ / 2; ++n) {
      const CMatrix mne = shift_rows_down(e, n, corner_);
      const CMatrix w = mul(e.adjoint(), mne);
      j += reg_ * std::sqrt(fro_norm_sq(w));
    }
  }
  return j;
}

double EveObjective::value_grad(const std::vector<double>& theta,
                                std::vector<double>& grad) const {
  const CMatrix e = basis(theta);
  grad.assign(dim_, 0.0);
  std::vector<cplx> acc(dim_, cplx(0.0, 0.0));
  double j = 0.0;

  // Data term: dJ = 2 Re tr(D^H G dE), D = G E - Y, collected per angle as
  // acc[m] = sum over entries with (r - t) mod M = m of conj(G^H D) .* E.
  for (const EveObservation& o : *obs_) {
    CMatrix d = mul(o.g, e);
    d -= o.y;
    j += fro_norm_sq(d);
    const CMatrix b = mul(o.g.adjoint(), d);
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t t = 0; t < t_cols_; ++t)
        acc[(r + dim_ - t % dim_) % dim_] +=
            2.0 * std::conj(b(r, t)) * e(r, t);
  }

  // Regularizer: d||W_n||_F = Re tr(W^H dW)/||W||_F with
  // P_n = M^n E W^H + (M^n)^H E W playing the role of G^H D above.
  if (reg_ > 0.0) {
    for (std::size_t n = 1; n <= dim_ / 2; ++n) {
      const CMatrix mne = shift_rows_down(e, n, corner_);
      const CMatrix w = mul(e.adjoint(), mne);
      const double rn = std::sqrt(fro_norm_sq(w));
      j += reg_ * rn;
      if (rn < 1e-12) continue;
      CMatrix p = mul_adj(mne, w);
      p += shift_rows_up(mul(e, w), n, corner_);
      const double scale = reg_ / rn;
      for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t t = 0; t < t_cols_; ++t)
          acc[(r + dim_ - t % dim_) % dim_] +=
              scale * std::conj(p(r, t)) * e(r, t);
    }
  }

  // Re{j * z} = -Im{z}; gauge pins theta0.
  for (std::size_t m = 0; m < dim_; ++m) grad[m] = -acc[m].imag();
  grad[0] = 0.0;
  return j;
}

EveAttackResult eve_estimate_projection(const std::vector<EveObservation>& obs,
                                        std::size_t dim, std::size_t t_cols,
                                        std::size_t psk_order,
                                        const EveAttackOptions& opts,
                                        RngStream& rng, unsigned threads) {
  if (obs.empty()) throw ParamError("eve_estimate_projection: no observations");
  if (opts.restarts == 0) throw ParamError("eve_estimate_projection: restarts");
  for (const EveObservation& o : obs)
    if (o.g.cols() != dim || o.y.cols() != t_cols || o.g.rows() != o.y.rows())
      throw ParamError("eve_estimate_projection: observation shape");

  const EveObjective obj(&obs, dim, t_cols, psk_order, opts.reg_weight);
  const GradFn fn = [&obj](const std::vector<double>& t,
                           std::vector<double>* g) {
    if (g) return obj.value_grad(t, *g);
    return obj.value(t);
  };

  struct Candidate {
    std::vector<double> theta;
    double f = 0.0;
  };
  std::vector<Candidate> cands(opts.restarts);
  parallel_for(opts.restarts, threads, [&](std::size_t r) {
    RngStream local = rng.derive(r);
    std::vector<double> theta(dim, 0.0);
    for (std::size_t k = 1; k < dim; ++k)
      theta[k] = 2.0 * M_PI * local.next_double();
    const double f =
        armijo_descent(fn, theta, opts.max_iters, opts.tol, opts.init_step);
    cands[r] = {std::move(theta), f};
  });

  std::size_t win = 0;
  for (std::size_t r = 1; r < cands.size(); ++r)
    if (cands[r].f < cands[win].f) win = r;

  EveAttackResult out;
  out.theta = std::move(cands[win].theta);
  out.objective = cands[win].f;
  out.basis = obj.basis(out.theta);
  return out;
}

LeakageTrial run_leakage_trial(const LeakageParams& params, RngStream rng,
                               unsigned threads) {
  KeySchedule ks = params.alice;
  ks.dim = params.dim;
  ks.nb = params.nb;
  ks.t_cols = params.t_cols;
  ks.psk_order = params.psk_order;

  const std::uint64_t key = rng.derive(0).next_u64();
  const ProjectionSecret secret = derive_projection(key, ks, threads);
  const Codebook cb = Codebook::adsm(params.dim, params.psk_order);

  RngStream h_rng = rng.derive(1);
  RngStream pilot_bits = rng.derive(2);
  RngStream pilot_noise = rng.derive(3);
  RngStream attack_rng = rng.derive(4);
  RngStream data_bits = rng.derive(5);
  RngStream data_noise = rng.derive(6);

  const CMatrix h_eve = gaussian_matrix(h_rng, params.n_eve, params.dim);
  const double nvar = std::pow(10.0, -params.eve_snr_db / 10.0);
  const std::size_t pilots = params.pilot_blocks;
  if (pilots == 0) throw ParamError("run_leakage_trial: pilot_blocks >= 1");

  // Genie-aided observations along a live differential chain.
  std::vector<EveObservation> obs(pilots);
  CodewordToken s = cb.identity_token();
  for (std::size_t k = 0; k < pilots; ++k) {
    s = cb.mul(s, cb.token_from_bits(pilot_bits.next_below(cb.size())));
    CMatrix g = h_eve;
    cb.apply_right(g, s);
    CMatrix y = mul(g, secret.basis);
    for (std::size_t r = 0; r < y.rows(); ++r)
      for (std::size_t c = 0; c < y.cols(); ++c)
        y(r, c) += pilot_noise.next_cgaussian(nvar);
    obs[k] = {std::move(g), std::move(y)};
  }

  const EveAttackResult attack = eve_estimate_projection(
      obs, params.dim, params.t_cols, params.psk_order, params.attack,
      attack_rng, threads);

  // Coherent detection of the accumulated codeword with the estimate, then
  // the differential quotient recovers each block word.
  LeakageTrial out;
  out.attack_objective = attack.objective;
  std::uint64_t bits = 0, errs = 0;
  s = cb.identity_token();
  CodewordToken prev_hat = cb.identity_token();
  for (std::size_t i = 0; i < params.data_blocks; ++i) {
    const std::uint64_t word = data_bits.next_below(cb.size());
    const CodewordToken x = cb.token_from_bits(word);
    s = cb.mul(s, x);
    CMatrix g = h_eve;
    cb.apply_right(g, s);
    CMatrix y = mul(g, secret.basis);
    for (std::size_t r = 0; r < y.rows(); ++r)
      for (std::size_t c = 0; c < y.cols(); ++c)
        y(r, c) += data_noise.next_cgaussian(nvar);

    const DetectionResult det = detect_block(cb, h_eve, y, attack.basis);
    const CodewordToken x_hat = cb.mul(cb.inverse(prev_hat), det.token);
    prev_hat = det.token;
    bits += cb.bits_per_block();
    errs += std::popcount(word ^ cb.bits_from_token(x_hat));
  }
  out.ber_eve = bits ? static_cast<double>(errs) / static_cast<double>(bits)
                     : 0.0;
  out.leakage = std::max(0.0, 1.0 - 2.0 * out.ber_eve);
  return out;
}

LeakageSummary run_leakage(const LeakageParams& params, std::size_t trials,
                           RngStream rng, unsigned threads) {
  if (trials < 2) throw ParamError("run_leakage: need at least 2 trials");
  std::vector<LeakageTrial> all(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    all[t] = run_leakage_trial(params, rng.derive(t), 1);
  });
  LeakageSummary out;
  out.trials = trials;
  double mean = 0.0, mean_ber = 0.0;
  for (const LeakageTrial& t : all) {
    mean += t.leakage;
    mean_ber += t.ber_eve;
  }
  mean /= static_cast<double>(trials);
  mean_ber /= static_cast<double>(trials);
  double var = 0.0;
  for (const LeakageTrial& t : all)
    var += (t.leakage - mean) * (t.leakage - mean);
  var /= static_cast<double>(trials - 1);
  out.mean_leakage = mean;
  out.mean_ber_eve = mean_ber;
  out.stderr_leakage = std::sqrt(var / static_cast<double>(trials));
  return out;
}

SecrecyPoint run_secrecy_point(const SecrecyParams& params, RngStream rng,
                               unsigned threads) {
  if (params.outer_trials < 2)
    throw ParamError("run_secrecy_point: need at least 2 outer trials");
  KeySchedule ks = params.alice;
  ks.dim = params.dim;
  ks.nb = params.nb;
  ks.t_cols = params.t_cols;
  ks.psk_order = params.psk_order;
  const Codebook cb = Codebook::adsm(params.dim, params.psk_order);
  const std::size_t pilots = params.pilot_blocks;
  if (pilots == 0) throw ParamError("run_secrecy_point: pilot_blocks >= 1");
  const double pilot_nvar = std::pow(10.0, -params.eve_snr_db / 10.0);
  const std::size_t bob_per_outer =
      std::max<std::size_t>(2, params.bob_samples / params.outer_trials);

  struct Outer {
    double i_bob = 0.0;
    double i_eve = 0.0;
  };
  std::vector<Outer> outer(params.outer_trials);
  parallel_for(params.outer_trials, threads, [&](std::size_t o) {
    RngStream trial = rng.derive(o);
    const std::uint64_t key = trial.derive(0).next_u64();
    const ProjectionSecret secret = derive_projection(key, ks, 1);

    RngStream h_rng = trial.derive(1);
    RngStream pilot_bits = trial.derive(2);
    RngStream pilot_noise = trial.derive(3);
    RngStream attack_rng = trial.derive(4);
    RngStream eve_ami_rng = trial.derive(5);
    RngStream bob_ami_rng = trial.derive(6);

    const CMatrix h_eve = gaussian_matrix(h_rng, params.n_eve, params.dim);
    std::vector<EveObservation> obs(pilots);
    CodewordToken s = cb.identity_token();
    for (std::size_t k = 0; k < pilots; ++k) {
      s = cb.mul(s, cb.token_from_bits(pilot_bits.next_below(cb.size())));
      CMatrix g = h_eve;
      cb.apply_right(g, s);
      CMatrix y = mul(g, secret.basis);
      for (std::size_t r = 0; r < y.rows(); ++r)
        for (std::size_t c = 0; c < y.cols(); ++c)
          y(r, c) += pilot_noise.next_cgaussian(pilot_nvar);
      obs[k] = {std::move(g), std::move(y)};
    }
    const EveAttackResult attack = eve_estimate_projection(
        obs, params.dim, params.t_cols, params.psk_order, params.attack,
        attack_rng, 1);

    outer[o].i_eve =
        ami_mismatched(cb, secret.basis, attack.basis, h_eve, params.snr_db,
                       params.inner_samples, eve_ami_rng,
                       params.independent_noise_terms)
            .mean;
    outer[o].i_bob = ami_bob(cb, secret.basis, params.n_bob, params.snr_db,
                             bob_per_outer, bob_ami_rng, 1)
                         .mean;
  });

  const auto summarize = [&](auto pick) {
    MeanStderr m;
    m.samples = outer.size();
    double mean = 0.0;
    for (const Outer& t : outer) mean += pick(t);
    mean /= static_cast<double>(outer.size());
    double var = 0.0;
    for (const Outer& t : outer)
      var += (pick(t) - mean) * (pick(t) - mean);
    var /= static_cast<double>(outer.size() - 1);
    m.mean = mean;
    m.stderr_ = std::sqrt(var / static_cast<double>(outer.size()));
    return m;
  };

  SecrecyPoint out;
  out.i_bob = summarize([](const Outer& t) { return t.i_bob; });
  out.i_eve = summarize([](const Outer& t) { return t.i_eve; });
  out.c_secrecy = std::max(0.0, out.i_bob.mean - out.i_eve.mean);
  return out;
}

}  // namespace ndstc
