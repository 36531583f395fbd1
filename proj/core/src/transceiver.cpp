#include "ndstc/transceiver.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

#include "ndstc/errors.hpp"
#include "ndstc/parallel.hpp"
#include "ndstc/random_matrix.hpp"

namespace ndstc {
namespace {

double noise_var_from_snr(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

CMatrix noise_matrix(RngStream& rng, std::size_t rows, std::size_t cols,
                     double variance) {
  CMatrix v(rows, cols);
  if (variance <= 0.0) return v;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) v(r, c) = rng.next_cgaussian(variance);
  return v;
}

}  // namespace

ChannelMode channel_mode_from_string(const std::string& s) {
  if (s == "block_iid") return ChannelMode::kBlockIid;
  if (s == "static_per_frame") return ChannelMode::kStaticPerFrame;
  if (s == "ar1") return ChannelMode::kAr1;
  throw ParamError("unknown channel mode: " + s);
}

const char* to_string(ChannelMode mode) {
  switch (mode) {
    case ChannelMode::kBlockIid: return "block_iid";
    case ChannelMode::kStaticPerFrame: return "static_per_frame";
    case ChannelMode::kAr1: return "ar1";
  }
  return "?";
}

ChannelProcess::ChannelProcess(std::size_t n_rx, std::size_t dim,
                               ChannelParams params, RngStream rng)
    : params_(params), rng_(rng), h_(n_rx, dim) {
  if (params_.mode == ChannelMode::kAr1 &&
      (params_.ar1_rho < 0.0 || params_.ar1_rho > 1.0))
    throw ParamError("ar1_rho must be in [0, 1]");
}

const CMatrix& ChannelProcess::advance() {
  const std::size_t n = h_.rows(), m = h_.cols();
  switch (params_.mode) {
    case ChannelMode::kBlockIid:
      h_ = gaussian_matrix(rng_, n, m);
      break;
    case ChannelMode::kStaticPerFrame:
      if (!started_) h_ = gaussian_matrix(rng_, n, m);
      break;
    case ChannelMode::kAr1: {
      if (!started_) {
        h_ = gaussian_matrix(rng_, n, m);
        break;
      }
      const double rho = params_.ar1_rho;
      const double nu = std::sqrt(1.0 - rho * rho);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < m; ++c)
          h_(r, c) = rho * h_(r, c) + nu * rng_.next_cgaussian(1.0);
      break;
    }
  }
  started_ = true;
  return h_;
}

DetectionResult detect_block(const Codebook& cb, const CMatrix& yhat,
                             const CMatrix& y, const CMatrix& e1) {
  const std::size_t m = cb.dim();
  const std::size_t n = yhat.rows();
  const std::size_t t = e1.cols();
  if (yhat.cols() != m || e1.rows() != m || y.rows() != n || y.cols() != t)
    throw ParamError("detect_block: shape mismatch");

  DetectionResult best;
  best.metric = std::numeric_limits<double>::infinity();
  CMatrix r(n, t);  // (yhat M^shift) E1, shared across PSK symbols

  if (cb.scheme() == CodebookScheme::kAdsm) {
    const std::size_t l = cb.psk_order();
    const double ua = 2.0 * M_PI / static_cast<double>(l);
    const cplx u(std::cos(ua), std::sin(ua));  // ADSM corner phase
    // Candidates scan in ascending bits order (shift-major), so strict "<"
    // keeps the smallest word on ties.
    for (std::size_t shift = 0; shift < m; ++shift) {
      // r = (yhat M^shift) E1 without materializing the rotation:
      // (yhat M^shift)[:, c] = u^{[c+shift >= m]} yhat[:, (c+shift) mod m].
      for (std::size_t nu = 0; nu < n; ++nu)
        for (std::size_t tau = 0; tau < t; ++tau) {
          cplx acc = 0.0;
          for (std::size_t c = 0; c < m; ++c) {
            cplx term = yhat(nu, (c + shift) % m) * e1(c, tau);
            if (c + shift >= m) term *= u;
            acc += term;
          }
          r(nu, tau) = acc;
        }
      for (std::size_t si = 0; si < l; ++si) {
        const double ang = 2.0 * M_PI * static_cast<double>(si) /
                           static_cast<double>(l);
        const cplx s(std::cos(ang), std::sin(ang));
        double metric = 0.0;
        for (std::size_t nu = 0; nu < n; ++nu)
          for (std::size_t tau = 0; tau < t; ++tau)
            metric += std::norm(y(nu, tau) - s * r(nu, tau));
        if (metric < best.metric) {
          best.metric = metric;
          best.token = {static_cast<std::uint32_t>(si),
                        static_cast<std::uint32_t>(shift)};
        }
      }
    }
    return best;
  }

  // DUC: diagonal candidates, ascending exponent word.
  CMatrix z(n, m);
  for (std::size_t w = 0; w < cb.size(); ++w) {
    const CodewordToken tok = cb.token_from_bits(w);
    z = yhat;
    cb.apply_right(z, tok);
    mul_into(z, e1, r);
    double metric = 0.0;
    for (std::size_t nu = 0; nu < n; ++nu)
      for (std::size_t tau = 0; tau < t; ++tau)
        metric += std::norm(y(nu, tau) - r(nu, tau));
    if (metric < best.metric) {
      best.metric = metric;
      best.token = tok;
    }
  }
  return best;
}

double update_reference(const Codebook& cb, CMatrix& yhat, const CMatrix& y,
                        CodewordToken detected, const CMatrix& e1,
                        double noise_var) {
  const std::size_t n = yhat.rows();
  const std::size_t t = e1.cols();
  CMatrix z = yhat;
  cb.apply_right(z, detected);
  const CMatrix ze1 = mul(z, e1);
  double d2 = 0.0;
  for (std::size_t nu = 0; nu < n; ++nu)
    for (std::size_t tau = 0; tau < t; ++tau)
      d2 += std::norm(y(nu, tau) - ze1(nu, tau));

  double alpha;
  if (d2 < 1e-300) {
    alpha = 0.99;  // perfect fit; the update below degenerates to yhat = z
  } else {
    const double av =
        static_cast<double>(n) * static_cast<double>(t) * noise_var / d2;
    alpha = std::min(std::max(av, 0.01), 0.99);
  }

  // yhat <- z + (1 - alpha) (y - z E1) E1^H.
  CMatrix d(n, t);
  for (std::size_t nu = 0; nu < n; ++nu)
    for (std::size_t tau = 0; tau < t; ++tau)
      d(nu, tau) = y(nu, tau) - ze1(nu, tau);
  const CMatrix corr = mul_adj(d, e1);
  const double w = 1.0 - alpha;
  for (std::size_t nu = 0; nu < n; ++nu)
    for (std::size_t c = 0; c < yhat.cols(); ++c)
      yhat(nu, c) = z(nu, c) + w * corr(nu, c);
  return alpha;
}

LinkStats& LinkStats::operator+=(const LinkStats& o) {
  bits += o.bits;
  bit_errors += o.bit_errors;
  blocks += o.blocks;
  block_errors += o.block_errors;
  return *this;
}

LinkStats simulate_frame(const Codebook& cb, const CMatrix& e1,
                         const std::vector<CMatrix>* conv_bases,
                         const FrameConfig& cfg, RngStream rng) {
  const std::size_t m = cb.dim();
  const std::size_t t = e1.cols();
  if (e1.rows() != m) throw ParamError("simulate_frame: e1 rows != dim");
  if (t == 0 || m % t != 0) throw ParamError("simulate_frame: t must divide m");
  if (cfg.pilot_overhead <= 0.0 || cfg.pilot_overhead > 1.0)
    throw ParamError("simulate_frame: pilot_overhead out of (0, 1]");
  const std::size_t preamble = m / t;
  const std::size_t total = static_cast<std::size_t>(
      std::llround(static_cast<double>(preamble) / cfg.pilot_overhead));
  if (total <= preamble)
    throw ParamError("simulate_frame: overhead leaves no data blocks");
  const std::size_t data_blocks = total - preamble;
  const double nvar = noise_var_from_snr(cfg.snr_db);

  RngStream ch_rng = rng.derive(0);
  RngStream noise_rng = rng.derive(1);
  RngStream bits_rng = rng.derive(2);
  RngStream pre_rng = rng.derive(3);

  ChannelProcess chan(cfg.n_rx, m, cfg.channel, ch_rng);

  // Preamble: known projection slices; the receiver folds them into the
  // initial reference sum_k Y_k P_k^H (= H when sum_k P_k P_k^H = I).
  CMatrix u_pre;
  if (cfg.style == BasisStyle::kProposed) {
    u_pre = random_unitary_columns(pre_rng, m, m);
  } else {
    if (!conv_bases || conv_bases->size() != preamble)
      throw ParamError("simulate_frame: conventional bases missing");
  }
  CMatrix yhat(cfg.n_rx, m);
  CMatrix pk(m, t);
  for (std::size_t k = 0; k < preamble; ++k) {
    if (cfg.style == BasisStyle::kProposed) {
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < t; ++c) pk(r, c) = u_pre(r, k * t + c);
    } else {
      pk = (*conv_bases)[k];
    }
    const CMatrix& h = chan.advance();
    CMatrix yk = mul(h, pk);
    yk += noise_matrix(noise_rng, cfg.n_rx, t, nvar);
    yhat += mul_adj(yk, pk);
  }

  LinkStats stats;
  CodewordToken s = cb.identity_token();
  const std::uint64_t q = cb.size();
  CMatrix tx(m, t);
  for (std::size_t i = 0; i < data_blocks; ++i) {
    const std::uint64_t word = bits_rng.next_below(q);
    const CodewordToken x = cb.token_from_bits(word);
    s = cb.mul(s, x);
    tx = e1;
    cb.apply_left(tx, s);
    const CMatrix& h = chan.advance();
    CMatrix y = mul(h, tx);
    y += noise_matrix(noise_rng, cfg.n_rx, t, nvar);

    const DetectionResult det = detect_block(cb, yhat, y, e1);
    const std::uint64_t got = cb.bits_from_token(det.token);
    stats.bits += cb.bits_per_block();
    stats.bit_errors += std::popcount(word ^ got);
    stats.blocks += 1;
    stats.block_errors += (got != word) ? 1 : 0;
    update_reference(cb, yhat, y, det.token, e1, nvar);
  }
  return stats;
}

LinkStats run_link(const Codebook& cb, const CMatrix& e1,
                   const std::vector<CMatrix>* conv_bases,
                   const FrameConfig& cfg, std::size_t frames, RngStream rng,
                   unsigned threads) {
  std::vector<LinkStats> per_frame(frames);
  parallel_for(frames, threads, [&](std::size_t f) {
    per_frame[f] = simulate_frame(cb, e1, conv_bases, cfg, rng.derive(f));
  });
  LinkStats total;
  for (const LinkStats& s : per_frame) total += s;
  return total;
}

namespace {

// Per-sample AMI in bits/use given precomputed candidate images and noise:
// i = (1/T) (B - 2^-B sum_p log2 sum_q exp(eta_pq)).
double ami_sample(const std::vector<CMatrix>& tx_img,
                  const std::vector<CMatrix>& rx_img, const CMatrix& v,
                  const CMatrix& v2, double noise_var, std::size_t bits,
                  std::size_t t_cols) {
  const std::size_t q = tx_img.size();
  const std::size_t n = v.rows(), t = v.cols();
  std::vector<double> eta(q);
  double acc = 0.0;
  for (std::size_t p = 0; p < q; ++p) {
    double self = 0.0;
    for (std::size_t nu = 0; nu < n; ++nu)
      for (std::size_t tau = 0; tau < t; ++tau)
        self += std::norm(tx_img[p](nu, tau) - rx_img[p](nu, tau) + v2(nu, tau));
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < q; ++k) {
      double cross = 0.0;
      for (std::size_t nu = 0; nu < n; ++nu)
        for (std::size_t tau = 0; tau < t; ++tau)
          cross +=
              std::norm(tx_img[p](nu, tau) - rx_img[k](nu, tau) + v(nu, tau));
      eta[k] = (self - cross) / noise_var;
      peak = std::max(peak, eta[k]);
    }
    double lse = 0.0;
    for (std::size_t k = 0; k < q; ++k) lse += std::exp(eta[k] - peak);
    acc += (peak + std::log(lse)) / std::numbers::ln2;
  }
  return (static_cast<double>(bits) - acc / static_cast<double>(q)) /
         static_cast<double>(t_cols);
}

}  // namespace

MeanStderr ami_bob(const Codebook& cb, const CMatrix& e1, std::size_t n_rx,
                   double snr_db, std::size_t samples, RngStream rng,
                   unsigned threads) {
  if (samples < 2) throw ParamError("ami_bob: need at least 2 samples");
  const std::size_t m = cb.dim();
  const std::size_t t = e1.cols();
  const std::size_t q = cb.size();
  const double nvar = noise_var_from_snr(snr_db);

  std::vector<double> vals(samples);
  parallel_for(samples, threads, [&](std::size_t s) {
    RngStream local = rng.derive(s);
    const CMatrix h = gaussian_matrix(local, n_rx, m);
    const CMatrix v = noise_matrix(local, n_rx, t, nvar);
    std::vector<CMatrix> img(q);
    CMatrix hx(n_rx, m);
    for (std::size_t w = 0; w < q; ++w) {
      hx = h;
      cb.apply_right(hx, cb.token_from_bits(w));
      img[w] = mul(hx, e1);
    }
    vals[s] = ami_sample(img, img, v, v, nvar, cb.bits_per_block(), t);
  });

  MeanStderr out;
  out.samples = samples;
  double mean = 0.0;
  for (double x : vals) mean += x;
  mean /= static_cast<double>(samples);
  double var = 0.0;
  for (double x : vals) var += (x - mean) * (x - mean);
  var /= static_cast<double>(samples - 1);
  out.stderr_ = std::sqrt(var / static_cast<double>(samples));
  const double cap = static_cast<double>(cb.bits_per_block()) /
                     static_cast<double>(t);
  out.mean = std::min(std::max(mean, 0.0), cap);
  return out;
}

MeanStderr ami_mismatched(const Codebook& cb, const CMatrix& e1_tx,
                          const CMatrix& e1_rx, const CMatrix& h,
                          double snr_db, std::size_t samples, RngStream rng,
                          bool independent_noise_terms) {
  if (samples < 2) throw ParamError("ami_mismatched: need at least 2 samples");
  const std::size_t t = e1_tx.cols();
  if (e1_rx.rows() != e1_tx.rows() || e1_rx.cols() != t)
    throw ParamError("ami_mismatched: basis shape mismatch");
  const std::size_t q = cb.size();
  const std::size_t n = h.rows();
  const double nvar = noise_var_from_snr(snr_db);

  std::vector<CMatrix> tx_img(q), rx_img(q);
  CMatrix hx(n, cb.dim());
  for (std::size_t w = 0; w < q; ++w) {
    hx = h;
    cb.apply_right(hx, cb.token_from_bits(w));
    tx_img[w] = mul(hx, e1_tx);
    rx_img[w] = mul(hx, e1_rx);
  }

  std::vector<double> vals(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    RngStream local = rng.derive(s);
    const CMatrix v = noise_matrix(local, n, t, nvar);
    const CMatrix v2 =
        independent_noise_terms ? noise_matrix(local, n, t, nvar) : v;
    vals[s] = ami_sample(tx_img, rx_img, v, v2, nvar, cb.bits_per_block(), t);
  }

  MeanStderr out;
  out.samples = samples;
  double mean = 0.0;
  for (double x : vals) mean += x;
  mean /= static_cast<double>(samples);
  double var = 0.0;
  for (double x : vals) var += (x - mean) * (x - mean);
  var /= static_cast<double>(samples - 1);
  out.stderr_ = std::sqrt(var / static_cast<double>(samples));
  const double cap = static_cast<double>(cb.bits_per_block()) /
                     static_cast<double>(t);
  out.mean = std::min(std::max(mean, 0.0), cap);
  return out;
}

}  // namespace ndstc
