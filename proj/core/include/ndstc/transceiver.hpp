#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ndstc/cmatrix.hpp"
#include "ndstc/codebooks.hpp"
#include "ndstc/rng.hpp"

namespace ndstc {

enum class ChannelMode { kBlockIid, kStaticPerFrame, kAr1 };

ChannelMode channel_mode_from_string(const std::string& s);
const char* to_string(ChannelMode mode);

struct ChannelParams {
  ChannelMode mode = ChannelMode::kStaticPerFrame;
  double ar1_rho = 0.99;
};

/// Rayleigh block-fading process: entries CN(0,1), evolving per mode.
/// advance() yields the matrix for the next block.
class ChannelProcess {
 public:
  ChannelProcess(std::size_t n_rx, std::size_t dim, ChannelParams params,
                 RngStream rng);

  const CMatrix& advance();

 private:
  ChannelParams params_;
  RngStream rng_;
  CMatrix h_;
  bool started_ = false;
};

struct DetectionResult {
  CodewordToken token;
  double metric = 0.0;
};

/// Noncoherent ML over the whole codebook:
/// argmin_X || y - yhat X E1 ||_F^2, ties toward the smaller bits word.
DetectionResult detect_block(const Codebook& cb, const CMatrix& yhat,
                             const CMatrix& y, const CMatrix& e1);

/// Adaptive forgetting update of the reception reference:
///   yhat <- (1-a) y E1^H + Z - (1-a) (Z E1) E1^H,  Z = yhat X_hat,
/// a = clamp(N T sigma^2 / ||y - Z E1||_F^2, 0.01, 0.99). Returns a.
double update_reference(const Codebook& cb, CMatrix& yhat, const CMatrix& y,
                        CodewordToken detected, const CMatrix& e1,
                        double noise_var);

/// Preamble style: the proposed scheme sends slices of a fresh random
/// unitary each frame; the conventional scheme sends its basis set.
enum class BasisStyle { kProposed, kConventional };

struct FrameConfig {
  std::size_t n_rx = 2;
  double snr_db = 10.0;
  double pilot_overhead = 0.05;  // preamble fraction; W = (M/T)/overhead
  ChannelParams channel;
  BasisStyle style = BasisStyle::kProposed;
};

struct LinkStats {
  std::uint64_t bits = 0;
  std::uint64_t bit_errors = 0;
  std::uint64_t blocks = 0;
  std::uint64_t block_errors = 0;

  double ber() const {
    return bits ? static_cast<double>(bit_errors) / static_cast<double>(bits)
                : 0.0;
  }
  LinkStats& operator+=(const LinkStats& o);
};

/// One frame end to end: preamble, differential data blocks, detection and
/// reference tracking at the receiver. `e1` is the data projection (M x T);
/// `conv_bases` must be the conventional basis set when style is
/// kConventional and is ignored otherwise.
LinkStats simulate_frame(const Codebook& cb, const CMatrix& e1,
                         const std::vector<CMatrix>* conv_bases,
                         const FrameConfig& cfg, RngStream rng);

/// Frames are seeded by index from `rng`, so the tally is independent of
/// `threads` and of scheduling.
LinkStats run_link(const Codebook& cb, const CMatrix& e1,
                   const std::vector<CMatrix>* conv_bases,
                   const FrameConfig& cfg, std::size_t frames, RngStream rng,
                   unsigned threads = 1);

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::size_t samples = 0;
};

/// Monte-Carlo AMI of the legitimate link, in bits per channel use:
///   I = (1/T) (B - 2^-B sum_p E[ log2 sum_q exp(eta_pq) ]),
///   eta_pq = (-||H (X_p - X_q) E1 + V||^2 + ||V||^2) / sigma^2.
/// The estimate is clamped to [0, B/T].
MeanStderr ami_bob(const Codebook& cb, const CMatrix& e1, std::size_t n_rx,
                   double snr_db, std::size_t samples, RngStream rng,
                   unsigned threads = 1);

/// Same estimator with a mismatched receiver basis (e1_rx != e1_tx):
///   eta_pq = (-||H(X_p E1 - X_q E1rx) + V||^2 + ||H X_p (E1 - E1rx) + V||^2)
///            / sigma^2,
/// with V shared between both terms unless independent_noise_terms.
MeanStderr ami_mismatched(const Codebook& cb, const CMatrix& e1_tx,
                          const CMatrix& e1_rx, const CMatrix& h,
                          double snr_db, std::size_t samples, RngStream rng,
                          bool independent_noise_terms = false);

}  // namespace ndstc
