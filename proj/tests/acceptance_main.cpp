// Acceptance gate for the ndstc library and CLI. Each numbered criterion
// prints exactly one [PASS]/[FAIL] line; the process exits nonzero if any
// criterion fails. Tolerances and budgets are pinned as named constants
// below, next to the criterion that uses them.
//
// argv[1] must be the path to the ndstc CLI binary (used by criterion 12).

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "ndstc/cmatrix.hpp"
#include "ndstc/codebooks.hpp"
#include "ndstc/errors.hpp"
#include "ndstc/experiment.hpp"
#include "ndstc/projection.hpp"
#include "ndstc/rng.hpp"
#include "ndstc/security.hpp"
#include "ndstc/transceiver.hpp"

using namespace ndstc;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 0xacce97;  // master seed for every criterion
constexpr double kSqrt2 = 1.4142135623730951;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

CMatrix column(const std::vector<cplx>& v) {
  CMatrix m(v.size(), 1);
  for (std::size_t r = 0; r < v.size(); ++r) m(r, 0) = v[r];
  return m;
}

std::vector<double> random_theta(RngStream& rng, std::size_t dim) {
  std::vector<double> theta(dim, 0.0);
  for (std::size_t i = 1; i < dim; ++i)
    theta[i] = 2.0 * std::numbers::pi * rng.next_double();
  return theta;
}

// Definitional coding gain: enumerate every ordered codeword pair.
double brute_gain(const Codebook& cb, const CMatrix& e1) {
  double best = 1e300;
  for (std::uint64_t a = 0; a < cb.size(); ++a) {
    for (std::uint64_t b = 0; b < cb.size(); ++b) {
      if (a == b) continue;
      const CMatrix diff = cb.matrix(cb.token_from_bits(a)) -
                           cb.matrix(cb.token_from_bits(b));
      best = std::min(best, fro_norm_sq(mul(diff, e1)));
    }
  }
  return std::sqrt(std::max(best, 0.0));
}

// Monte Carlo BER estimate with its standard error taken across frames.
// Frames are the independent replicates here; bits inside one frame share a
// channel draw and a reference trajectory, so a binomial (per-bit) error bar
// would be far too small.
struct BerEstimate {
  double ber = 0.0;
  double se = 0.0;
  std::uint64_t bits = 0;
};

double combined_sigmas(const BerEstimate& a, const BerEstimate& b) {
  const double se = std::hypot(a.se, b.se);
  if (se > 0.0) return std::abs(a.ber - b.ber) / se;
  return a.ber == b.ber ? 0.0 : 1e300;
}

struct Gate {
  int failures = 0;

  void report(int idx, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", idx,
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. The M=2 design problem is solved to optimality, quickly.
constexpr double kC1MaxF = 1e-9;
constexpr double kC1GainTol = 1e-6;
constexpr double kC1MaxSeconds = 1.0;

void criterion_1(Gate& gate) {
  const auto t0 = std::chrono::steady_clock::now();
  DescentOptions opts;
  RngStream rng(kSeed, 0x0c01);
  const DesignResult res = optimize_projection(2, 4, opts, rng);
  const double gain = coding_gain(expand_time(e1_from_theta(res.theta), 1, 2), 4);
  const double secs = seconds_since(t0);
  const bool ok = res.f <= kC1MaxF && std::abs(gain - kSqrt2) <= kC1GainTol &&
                  secs < kC1MaxSeconds;
  gate.report(1, ok,
              fmt("M=2 design: f=%.3g (<=1e-9), gain=%.9f (sqrt2 +/- 1e-6), "
                  "%.2f s (<1 s)",
                  res.f, gain, secs));
}

// ---------------------------------------------------------------------------
// 2. At M=64 every restart lands in a narrow high-gain band.
constexpr double kC2GainLow = 1.26;    // exclusive lower edge for every start
constexpr double kC2GainHigh = kSqrt2 + 1e-9;
constexpr double kC2BestMin = 1.40;    // the best start must reach this
constexpr int kC2Restarts = 16;
constexpr double kC2MaxSeconds = 120.0;

void criterion_2(Gate& gate) {
  const auto t0 = std::chrono::steady_clock::now();
  DescentOptions opts;
  opts.restarts = 1;
  RngStream rng(kSeed, 0x0c02);
  double lo = 1e300, hi = -1e300;
  bool in_band = true;
  for (int r = 0; r < kC2Restarts; ++r) {
    RngStream sub = rng.derive(static_cast<std::uint64_t>(r));
    const DesignResult res = optimize_projection(64, 4, opts, sub);
    const double gain =
        coding_gain(expand_time(e1_from_theta(res.theta), 1, 64), 4);
    lo = std::min(lo, gain);
    hi = std::max(hi, gain);
    in_band = in_band && gain > kC2GainLow && gain <= kC2GainHigh;
  }
  const double secs = seconds_since(t0);
  const bool ok = in_band && hi >= kC2BestMin && secs < kC2MaxSeconds;
  gate.report(2, ok,
              fmt("M=64 x%d restarts: gains in [%.5f, %.5f] "
                  "(need (1.26, sqrt2], best >= 1.40), %.1f s (<120 s)",
                  kC2Restarts, lo, hi, secs));
}

// ---------------------------------------------------------------------------
// 3. The closed-form coding gain equals the brute-force pair minimum.
constexpr double kC3Tol = 1e-9;
constexpr int kC3VectorsPerDim = 50;  // 100 total over M in {2, 4}

void criterion_3(Gate& gate) {
  RngStream rng(kSeed, 0x0c03);
  double worst = 0.0;
  for (std::size_t dim : {std::size_t{2}, std::size_t{4}}) {
    const Codebook cb = Codebook::adsm(dim, 4);
    for (int rep = 0; rep < kC3VectorsPerDim; ++rep) {
      RngStream sub = rng.derive(dim * 1000 + static_cast<std::uint64_t>(rep));
      const CMatrix e1 = column(e1_from_theta(random_theta(sub, dim)));
      worst = std::max(worst,
                       std::abs(coding_gain(e1, 4) - brute_gain(cb, e1)));
    }
  }
  gate.report(3, worst <= kC3Tol,
              fmt("closed-form vs exhaustive gain on %d random bases "
                  "(M in {2,4}): max |diff| = %.3g (<= 1e-9)",
                  2 * kC3VectorsPerDim, worst));
}

// ---------------------------------------------------------------------------
// 4. Sparse expansion preserves both the objective f and the coding gain.
constexpr double kC4FTol = 1e-12;
constexpr double kC4GainTol = 1e-9;

double objective_of_vector(const std::vector<cplx>& e) {
  double f = 0.0;
  for (const cplx& w : shift_inner_products(e, cplx(0.0, 1.0)))  // L = 4
    f += std::abs(w);
  return f;
}

void criterion_4(Gate& gate) {
  RngStream rng(kSeed, 0x0c04);
  DescentOptions opts;
  opts.restarts = 4;
  double worst_f = 0.0, worst_g = 0.0;
  for (auto [nb, m] : std::vector<std::pair<std::size_t, std::size_t>>{
           {2, 8}, {4, 16}, {8, 32}}) {
    RngStream sub = rng.derive(m);
    const DesignResult res = optimize_projection(nb, 4, opts, sub);
    const auto base = e1_from_theta(res.theta);
    const auto wide = expand_sparse(base, m);
    worst_f = std::max(worst_f,
                       std::abs(objective_of_vector(wide) -
                                objective_of_vector(base)));
    worst_g = std::max(worst_g, std::abs(coding_gain(column(wide), 4) -
                                         coding_gain(column(base), 4)));
  }
  gate.report(4, worst_f <= kC4FTol && worst_g <= kC4GainTol,
              fmt("expansion invariance over (Nb,M) in {(2,8),(4,16),(8,32)}: "
                  "max |f diff| = %.3g (<= 1e-12), max |gain diff| = %.3g "
                  "(<= 1e-9)",
                  worst_f, worst_g));
}

// ---------------------------------------------------------------------------
// 5. BER does not depend on the sparsity of the projection basis.
constexpr double kC5MinBits = 1e6;     // per SNR point and basis
constexpr double kC5SigmaBand = 2.0;   // |ber2 - ber16| <= 2 combined stderr
const std::vector<double> kC5SnrGrid = {0, 4, 8, 12, 16, 20, 24};

BerEstimate ber_point(const Codebook& cb, const CMatrix& basis, double snr_db,
                      std::size_t frames, RngStream rng) {
  FrameConfig fc;
  fc.n_rx = 2;
  fc.snr_db = snr_db;
  std::vector<double> per(frames);
  BerEstimate out;
  double mean = 0.0;
  for (std::size_t f = 0; f < frames; ++f) {
    const LinkStats st = simulate_frame(cb, basis, nullptr, fc, rng.derive(f));
    per[f] = st.ber();  // frames are equal sized, so the frame mean is the
    mean += per[f];     // aggregate BER
    out.bits += st.bits;
  }
  mean /= static_cast<double>(frames);
  double var = 0.0;
  for (double p : per) var += (p - mean) * (p - mean);
  var /= static_cast<double>(frames - 1) * static_cast<double>(frames);
  out.ber = mean;
  out.se = std::sqrt(var);
  return out;
}

void criterion_5(Gate& gate) {
  const auto t0 = std::chrono::steady_clock::now();
  const Codebook cb = Codebook::adsm(16, 4);  // B = 6

  KeySchedule sparse;
  sparse.dim = 16;
  sparse.nb = 2;
  sparse.opts.restarts = 8;
  KeySchedule dense = sparse;
  dense.nb = 16;
  dense.opts.restarts = 32;  // the dense landscape needs more starts to
                             // reach the same (maximal) gain
  const CMatrix b2 = derive_projection(kSeed, sparse).basis;
  const CMatrix b16 = derive_projection(kSeed, dense).basis;

  // 1824 data bits per frame: (16/0.05 - 16) blocks * 6 bits, so ~4.0e6
  // data bits per point. Enough frames that the frame-BER mean is well into
  // its CLT regime despite bursty per-frame error counts.
  const std::size_t frames = 2196;
  RngStream rng(kSeed, 0x0c05);
  bool ok = true;
  double worst_sigma = 0.0;
  for (std::size_t i = 0; i < kC5SnrGrid.size(); ++i) {
    const BerEstimate s2 = ber_point(cb, b2, kC5SnrGrid[i], frames,
                                     rng.derive(2 * i));
    const BerEstimate s16 = ber_point(cb, b16, kC5SnrGrid[i], frames,
                                      rng.derive(2 * i + 1));
    ok = ok && double(s2.bits) >= kC5MinBits && double(s16.bits) >= kC5MinBits;
    const double sigmas = combined_sigmas(s2, s16);
    worst_sigma = std::max(worst_sigma, sigmas);
    ok = ok && sigmas <= kC5SigmaBand;
  }
  gate.report(5, ok,
              fmt("sparsity-independent BER (M=16, Nb=2 vs 16, %zu snr "
                  "points, >=1e6 bits each): max gap %.2f sigma (<= 2), "
                  "%.0f s",
                  kC5SnrGrid.size(), worst_sigma, seconds_since(t0)));
}

// ---------------------------------------------------------------------------
// 6. Doubling T trades rate for a strictly better BER.
constexpr double kC6SigmaBand = 2.0;   // improvement must exceed 2 sigma
constexpr double kC6MinBer = 1e-4;     // only compare where T=1 still errs
const std::vector<double> kC6SnrGrid = {6, 10, 14, 18};

void criterion_6(Gate& gate) {
  const auto t0 = std::chrono::steady_clock::now();
  const Codebook cb = Codebook::adsm(16, 4);
  KeySchedule ks;
  ks.dim = 16;
  ks.nb = 8;
  ks.opts.restarts = 8;
  ks.t_cols = 1;
  const CMatrix b_t1 = derive_projection(kSeed, ks).basis;
  ks.t_cols = 2;
  const CMatrix b_t2 = derive_projection(kSeed, ks).basis;

  RngStream rng(kSeed, 0x0c06);
  bool ok = true;
  int compared = 0;
  double worst_margin = 1e300;
  for (std::size_t i = 0; i < kC6SnrGrid.size(); ++i) {
    const BerEstimate s1 = ber_point(cb, b_t1, kC6SnrGrid[i], 549,
                                     rng.derive(2 * i));
    const BerEstimate s2 = ber_point(cb, b_t2, kC6SnrGrid[i], 1097,
                                     rng.derive(2 * i + 1));
    if (s1.ber <= kC6MinBer) continue;
    ++compared;
    const double se = std::max(std::hypot(s1.se, s2.se), 1e-300);
    const double margin = (s1.ber - s2.ber) / se;
    worst_margin = std::min(worst_margin, margin);
    ok = ok && margin >= kC6SigmaBand;
  }
  ok = ok && compared > 0;
  gate.report(6, ok,
              fmt("T=2 beats T=1 (M=16, Nb=8) at %d/%zu points with "
                  "BER > 1e-4: min improvement %.1f sigma (>= 2), %.0f s",
                  compared, kC6SnrGrid.size(), worst_margin,
                  seconds_since(t0)));
}

// ---------------------------------------------------------------------------
// 7. Noiseless links are exactly error free, both preamble styles.
void criterion_7(Gate& gate) {
  RngStream rng(kSeed, 0x0c07);
  std::uint64_t bits = 0, errors = 0;
  for (auto [m, t] : std::vector<std::pair<std::size_t, std::size_t>>{
           {4, 1}, {8, 2}}) {
    const Codebook cb = Codebook::adsm(m, 4);
    KeySchedule ks;
    ks.dim = m;
    ks.nb = m / 2;
    ks.t_cols = t;
    ks.opts.restarts = 4;
    const CMatrix basis = derive_projection(kSeed + m, ks).basis;
    const auto conv = conventional_bases(m, ks.nb, t);
    FrameConfig fc;
    fc.n_rx = 2;
    fc.snr_db = std::numeric_limits<double>::infinity();
    for (BasisStyle style : {BasisStyle::kProposed, BasisStyle::kConventional}) {
      fc.style = style;
      const LinkStats st = run_link(cb, style == BasisStyle::kProposed
                                            ? basis
                                            : conv[0],
                                    &conv, fc, 8, rng.derive(m * 10 + t));
      bits += st.bits;
      errors += st.bit_errors;
    }
  }
  gate.report(7, bits > 0 && errors == 0,
              fmt("noiseless exactness ((M,T) in {(4,1),(8,2)}, both "
                  "preamble styles): %llu/%llu bit errors",
                  static_cast<unsigned long long>(errors),
                  static_cast<unsigned long long>(bits)));
}

// ---------------------------------------------------------------------------
// 8. The design gradient matches central finite differences.
constexpr double kC8RelTol = 1e-6;
constexpr double kC8Step = 1e-6;
constexpr int kC8Points = 50;

void criterion_8(Gate& gate) {
  RngStream rng(kSeed, 0x0c08);
  const std::size_t dims[] = {4, 8, 16};
  double worst = 0.0;
  for (int p = 0; p < kC8Points; ++p) {
    const std::size_t dim = dims[p % 3];
    const DesignObjective obj(dim, 4);
    RngStream sub = rng.derive(static_cast<std::uint64_t>(p));
    auto theta = random_theta(sub, dim);
    std::vector<double> grad;
    obj.value_grad(theta, grad);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 1; k < dim; ++k) {
      const double save = theta[k];
      theta[k] = save + kC8Step;
      const double fp = obj.value(theta);
      theta[k] = save - kC8Step;
      const double fm = obj.value(theta);
      theta[k] = save;
      const double fd = (fp - fm) / (2.0 * kC8Step);
      num += (grad[k] - fd) * (grad[k] - fd);
      den += fd * fd;
    }
    worst = std::max(worst, std::sqrt(num / std::max(den, 1e-300)));
  }
  gate.report(8, worst <= kC8RelTol,
              fmt("design gradient vs central differences (%d random points, "
                  "M in {4,8,16}): max rel err %.3g (<= 1e-6)",
                  kC8Points, worst));
}

// ---------------------------------------------------------------------------
// 9. Leakage collapses as the array outgrows Eve's equations.
constexpr std::size_t kC9Trials = 200;
constexpr double kC9LeakSmallMin = 0.9;  // M=2 must leak nearly everything
constexpr double kC9LeakLargeMax = 0.1;  // M=32 must leak nearly nothing
constexpr double kC9MonotoneSigma = 2.0; // slack on monotonicity, in combined
                                         // standard errors of adjacent points

void criterion_9(Gate& gate) {
  const auto t0 = std::chrono::steady_clock::now();
  LeakageParams params;
  params.n_eve = 2;
  RngStream rng(kSeed, 0x0c09);
  std::vector<double> leaks, ses;
  for (std::size_t i = 0; i < 5; ++i) {
    const std::size_t m = std::size_t{2} << i;  // 2, 4, 8, 16, 32
    params.dim = m;
    params.nb = m;
    const LeakageSummary s = run_leakage(params, kC9Trials, rng.derive(i));
    leaks.push_back(s.mean_leakage);
    ses.push_back(s.stderr_leakage);
  }
  bool monotone = true;
  for (std::size_t i = 1; i < leaks.size(); ++i) {
    const double slack = kC9MonotoneSigma * std::hypot(ses[i], ses[i - 1]);
    monotone = monotone && leaks[i] <= leaks[i - 1] + slack;
  }
  const bool ok = leaks.front() > kC9LeakSmallMin &&
                  leaks.back() < kC9LeakLargeMax && monotone;
  gate.report(
      9, ok,
      fmt("leakage vs M (N_eve=2, %zu trials): %.3f, %.3f, %.3f, %.3f, %.3f "
          "(first > 0.9, last < 0.1, non-increasing within 2 se), %.0f s",
          kC9Trials, leaks[0], leaks[1], leaks[2], leaks[3], leaks[4],
          seconds_since(t0)));
}

// ---------------------------------------------------------------------------
// 10. Bob's AMI saturates at high SNR and collapses at low SNR.
constexpr double kC10HighMin = 5.9;   // of B/T = 6 at 20 dB
constexpr double kC10LowMax = 0.5;    // at -10 dB
constexpr double kC10MaxStderr = 0.05;
constexpr std::size_t kC10Samples = 400;

void criterion_10(Gate& gate) {
  const Codebook cb = Codebook::adsm(16, 4);
  KeySchedule ks;
  ks.dim = 16;
  ks.nb = 16;
  ks.opts.restarts = 8;
  const CMatrix basis = derive_projection(kSeed, ks).basis;
  RngStream rng(kSeed, 0x0c0a);
  const MeanStderr hi = ami_bob(cb, basis, 2, 20.0, kC10Samples,
                                rng.derive(0));
  const MeanStderr lo = ami_bob(cb, basis, 2, -10.0, kC10Samples,
                                rng.derive(1));
  const bool ok = hi.mean >= kC10HighMin && hi.stderr_ < kC10MaxStderr &&
                  lo.mean <= kC10LowMax && lo.stderr_ < kC10MaxStderr;
  gate.report(10, ok,
              fmt("AMI (M=16, N=2): %.3f +/- %.3f b/cu at 20 dB (>= 5.9), "
                  "%.3f +/- %.3f at -10 dB (<= 0.5), stderr < 0.05",
                  hi.mean, hi.stderr_, lo.mean, lo.stderr_));
}

// ---------------------------------------------------------------------------
// 11. Secrecy holds while Eve is underdetermined and falls once she is not.
constexpr double kC11TargetRate = 6.0;   // B/T at M=16, L=4, T=1
constexpr double kC11Band = 0.3;         // |C - 6| at N_eve=4
constexpr double kC11BrokenMax = 3.0;    // C at N_eve=16
constexpr std::size_t kC11Outer = 12;

void criterion_11(Gate& gate) {
  const auto t0 = std::chrono::steady_clock::now();
  SecrecyParams params;
  params.outer_trials = kC11Outer;
  RngStream rng(kSeed, 0x0c0b);
  params.n_eve = 4;
  const SecrecyPoint guarded = run_secrecy_point(params, rng.derive(0));
  params.n_eve = 16;
  const SecrecyPoint broken = run_secrecy_point(params, rng.derive(1));
  const bool ok =
      std::abs(guarded.c_secrecy - kC11TargetRate) <= kC11Band &&
      broken.c_secrecy <= kC11BrokenMax;
  gate.report(11, ok,
              fmt("secrecy (M=16, 20 dB): C=%.3f at N_eve=4 (within 0.3 of "
                  "6), C=%.3f at N_eve=16 (<= 3), %.0f s",
                  guarded.c_secrecy, broken.c_secrecy, seconds_since(t0)));
}

// ---------------------------------------------------------------------------
// 12. CLI outputs are byte-identical across reruns and thread counts.
struct CliCase {
  std::string name;     // subcommand
  std::string cfg;      // config file body
  std::string csv;      // produced file name
  std::string extra;    // extra flags
};

int run_cli(const std::string& cmdline) {
  const int status = std::system(cmdline.c_str());
  if (status == -1) return -1;
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return "<unreadable:" + p.string() + ">";
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_12(Gate& gate, const std::string& cli) {
  const auto t0 = std::chrono::steady_clock::now();
  const fs::path root = fs::temp_directory_path() / "ndstc_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);

  const std::vector<CliCase> cases = {
      {"basis", "m = 4\nnb = 2\nkey = 9\ndesign_restarts = 2\n",
       "basis.csv", ""},
      {"gain-sweep", "m_list = 2, 4\ndesign_restarts = 2\n",
       "gain_sweep.csv", ""},
      {"ber",
       "m = 4\nnb = 2\nt = 1\nsnr_db_list = 0, 8\nframes = 6\n",
       "ber.csv", ""},
      {"leakage",
       "m_list = 2, 4\nn_eve = 2\ndata_blocks = 40\ntrials = 3\n"
       "design_restarts = 2\nattack_restarts = 6\nattack_max_iters = 120\n",
       "leakage.csv", ""},
      {"secrecy",
       "m = 8\nnb = 8\nn_eve_list = 2\nbob_samples = 60\nouter_trials = 3\n"
       "inner_samples = 8\ndesign_restarts = 2\nattack_restarts = 6\n"
       "attack_max_iters = 120\n",
       "secrecy.csv", ""},
      {"landscape", "m = 4\ndesign_max_iters = 400\n", "landscape.csv",
       " --trials 6"},
  };

  bool ok = true;
  std::string why = "all byte-identical";
  for (std::size_t i = 0; i < cases.size() && ok; ++i) {
    const CliCase& c = cases[i];
    const fs::path cfg = root / (c.name + ".cfg");
    std::ofstream(cfg) << c.cfg;
    std::string reference;
    // Run 0 and 1: same seed/threads; run 2: three worker threads.
    for (int run = 0; run < 3 && ok; ++run) {
      const fs::path out = root / (c.name + "_" + std::to_string(run));
      const std::string cmd = "'" + cli + "' " + c.name + " --config '" +
                              cfg.string() + "' --out '" + out.string() +
                              "' --seed 7 --threads " +
                              (run == 2 ? "3" : "1") + c.extra +
                              " > /dev/null 2>&1";
      const int rc = run_cli(cmd);
      if (rc != 0) {
        ok = false;
        why = c.name + ": exit code " + std::to_string(rc);
        break;
      }
      const std::string bytes = slurp(out / c.csv);
      if (run == 0) {
        reference = bytes;
        if (reference.empty() || reference[0] != '#') {
          ok = false;
          why = c.name + ": missing or malformed " + c.csv;
        }
      } else if (bytes != reference) {
        ok = false;
        why = c.name + ": run " + std::to_string(run) + " differs (" +
              (run == 2 ? "threads 3 vs 1" : "identical rerun") + ")";
      }
    }
  }
  fs::remove_all(root);
  gate.report(12, ok,
              fmt("CLI determinism across reruns and thread counts "
                  "(6 subcommands x 3 runs): %s, %.0f s",
                  why.c_str(), seconds_since(t0)));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <path-to-ndstc-cli>\n", argv[0]);
    return 2;
  }
  Gate gate;
  criterion_1(gate);
  criterion_2(gate);
  criterion_3(gate);
  criterion_4(gate);
  criterion_5(gate);
  criterion_6(gate);
  criterion_7(gate);
  criterion_8(gate);
  criterion_9(gate);
  criterion_10(gate);
  criterion_11(gate);
  criterion_12(gate, argv[1]);
  std::printf("acceptance: %d/12 criteria passed\n", 12 - gate.failures);
  return gate.failures == 0 ? 0 : 1;
}
