#pragma once

#include <cstdint>
#include <vector>

#include "ndstc/cmatrix.hpp"
#include "ndstc/codebooks.hpp"
#include "ndstc/projection.hpp"
#include "ndstc/transceiver.hpp"

namespace ndstc {

/// Key schedule: the shared secret z seeds every random choice on the path
/// key -> starting angles -> local optimum at size nb -> sparse expansion to
/// dim -> time expansion to t_cols. Identical (z, params) give bit-identical
/// projections on both ends of the link.
struct KeySchedule {
  std::size_t dim = 16;       // M
  std::size_t nb = 2;         // optimized size (number of nonzeros)
  std::size_t t_cols = 1;     // T
  std::size_t psk_order = 4;  // L
  DescentOptions opts;
};

struct ProjectionSecret {
  std::vector<double> theta;  // optimized angles at size nb
  double f_nb = 0.0;          // objective value at size nb
  std::vector<cplx> e1;       // expanded to dim
  CMatrix basis;              // dim x t_cols
};

ProjectionSecret derive_projection(std::uint64_t key, const KeySchedule& ks,
                                   unsigned threads = 1);

/// One eavesdropper observation: y = g E1 + noise with g = H_eve S known to
/// the attacker (worst case: pilot blocks with genie-known data).
struct EveObservation {
  CMatrix g;  // n_eve x dim
  CMatrix y;  // n_eve x t_cols
};

struct EveAttackOptions {
  // Multi-start budget. The attack recovers the basis once the observations
  // alone determine it (n_eve * t_cols >= dim); below that threshold the
  // regularized landscape keeps descent away from the secret for moderate
  // budgets, which is the operating regime the security results quantify.
  std::size_t restarts = 8;
  std::size_t max_iters = 300;
  double tol = 1e-10;
  double init_step = 0.25;
  double reg_weight = 1.0;
};

struct EveAttackResult {
  std::vector<double> theta;  // dense angles, theta[0] = 0
  CMatrix basis;              // dim x t_cols estimate
  double objective = 0.0;
};

/// Attack objective over dense unit-modulus angles theta (gauge theta0 = 0):
///   J = sum_k ||y_k - g_k E(theta)||_F^2
///       + reg * sum_{n=1}^{M/2} ||E^H M^n E||_F,
/// with E(theta) the time expansion of exp(j theta)/sqrt(M). Exposed for
/// tests; eve_estimate_projection drives the multi-start descent on it.
class EveObjective {
 public:
  EveObjective(const std::vector<EveObservation>* obs, std::size_t dim,
               std::size_t t_cols, std::size_t psk_order, double reg_weight);

  double value(const std::vector<double>& theta) const;
  double value_grad(const std::vector<double>& theta,
                    std::vector<double>& grad) const;
  CMatrix basis(const std::vector<double>& theta) const;

 private:
  const std::vector<EveObservation>* obs_;
  std::size_t dim_, t_cols_;
  cplx corner_;
  double reg_;
};

EveAttackResult eve_estimate_projection(const std::vector<EveObservation>& obs,
                                        std::size_t dim, std::size_t t_cols,
                                        std::size_t psk_order,
                                        const EveAttackOptions& opts,
                                        RngStream& rng, unsigned threads = 1);

/// End-to-end leakage probe. One trial: Alice derives E1 from a fresh key,
/// Eve records `pilot_blocks` genie-aided observations at `eve_snr_db`,
/// runs the attack, then coherently detects `data_blocks` fresh blocks with
/// her estimate. leakage = max(0, 1 - 2 BER_eve).
struct LeakageParams {
  std::size_t dim = 16;
  std::size_t nb = 16;   // leakage probes use dense designs by default
  std::size_t t_cols = 1;
  std::size_t psk_order = 4;
  std::size_t n_eve = 2;
  double eve_snr_db = 30.0;
  // Known-plaintext budget. Each genie block hands Eve 2*n_eve*t_cols real
  // equations against dim-1 unknown angles, so this is the security knob:
  // one block keeps her underdetermined once dim outgrows ~2*n_eve*t_cols.
  std::size_t pilot_blocks = 1;
  std::size_t data_blocks = 200;
  KeySchedule alice;             // dim/nb/t_cols/psk_order overwritten
  EveAttackOptions attack;
};

struct LeakageTrial {
  double ber_eve = 0.0;
  double leakage = 0.0;
  double attack_objective = 0.0;
};

LeakageTrial run_leakage_trial(const LeakageParams& params, RngStream rng,
                               unsigned threads = 1);

struct LeakageSummary {
  std::size_t trials = 0;
  double mean_leakage = 0.0;
  double stderr_leakage = 0.0;
  double mean_ber_eve = 0.0;
};

/// Trials are seeded by index, deterministic for any thread count.
LeakageSummary run_leakage(const LeakageParams& params, std::size_t trials,
                           RngStream rng, unsigned threads = 1);

/// Secrecy probe at one operating point: I_bob by Monte Carlo over (H, V);
/// I_eve by a two-level loop (outer: fresh key, H_eve and attack; inner:
/// noise draws through the mismatched-basis AMI). C = max(0, I_bob - I_eve).
struct SecrecyParams {
  std::size_t dim = 16;
  std::size_t nb = 16;
  std::size_t t_cols = 1;
  std::size_t psk_order = 4;
  std::size_t n_bob = 2;
  std::size_t n_eve = 4;
  double snr_db = 20.0;
  double eve_snr_db = 30.0;      // pilot quality for the attack
  std::size_t pilot_blocks = 1;  // see LeakageParams
  std::size_t bob_samples = 400;
  std::size_t outer_trials = 16;
  std::size_t inner_samples = 32;
  bool independent_noise_terms = false;
  KeySchedule alice;
  EveAttackOptions attack;
};

struct SecrecyPoint {
  MeanStderr i_bob;
  MeanStderr i_eve;
  double c_secrecy = 0.0;
};

SecrecyPoint run_secrecy_point(const SecrecyParams& params, RngStream rng,
                               unsigned threads = 1);

}  // namespace ndstc
