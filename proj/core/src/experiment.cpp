#include "ndstc/experiment.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ndstc/errors.hpp"
#include "ndstc/parallel.hpp"
#include "ndstc/projection.hpp"
#include "ndstc/security.hpp"
#include "ndstc/transceiver.hpp"
#include "ndstc/version.hpp"

namespace ndstc {
namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParamError("cannot read config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str());
}

Config Config::from_string(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line.erase(hash_pos);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ParamError("config line " + std::to_string(lineno) +
                       ": expected key = value");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty())
      throw ParamError("config line " + std::to_string(lineno) + ": empty key");
    cfg.kv_[key] = value;
  }
  return cfg;
}

bool Config::has(const std::string& key) const { return kv_.count(key) > 0; }

void Config::set(const std::string& key, const std::string& value) {
  kv_[key] = value;
}

std::string Config::get_str(const std::string& key,
                            const std::string& dflt) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? dflt : it->second;
}

std::int64_t Config::get_int(const std::string& key, std::int64_t dflt) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return dflt;
  try {
    std::size_t pos = 0;
    const std::int64_t v = std::stoll(it->second, &pos, 0);
    if (pos != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw ParamError("config key '" + key + "': not an integer: " + it->second);
  }
}

std::uint64_t Config::get_u64(const std::string& key,
                              std::uint64_t dflt) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return dflt;
  try {
    std::size_t pos = 0;
    const std::uint64_t v = std::stoull(it->second, &pos, 0);
    if (pos != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw ParamError("config key '" + key + "': not an integer: " + it->second);
  }
}

double Config::get_double(const std::string& key, double dflt) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return dflt;
  try {
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw ParamError("config key '" + key + "': not a number: " + it->second);
  }
}

bool Config::get_bool(const std::string& key, bool dflt) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return dflt;
  const std::string& v = it->second;
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ParamError("config key '" + key + "': not a boolean: " + v);
}

std::vector<std::int64_t> Config::get_int_list(
    const std::string& key, const std::vector<std::int64_t>& dflt) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return dflt;
  std::vector<std::int64_t> out;
  std::istringstream in(it->second);
  std::string item;
  while (std::getline(in, item, ',')) {
    const std::string t = trim(item);
    if (t.empty())
      throw ParamError("config key '" + key + "': empty list item");
    try {
      std::size_t pos = 0;
      out.push_back(std::stoll(t, &pos, 0));
      if (pos != t.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw ParamError("config key '" + key + "': bad list item: " + t);
    }
  }
  if (out.empty()) throw ParamError("config key '" + key + "': empty list");
  return out;
}

std::vector<double> Config::get_double_list(
    const std::string& key, const std::vector<double>& dflt) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return dflt;
  std::vector<double> out;
  std::istringstream in(it->second);
  std::string item;
  while (std::getline(in, item, ',')) {
    const std::string t = trim(item);
    if (t.empty())
      throw ParamError("config key '" + key + "': empty list item");
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(t, &pos));
      if (pos != t.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw ParamError("config key '" + key + "': bad list item: " + t);
    }
  }
  if (out.empty()) throw ParamError("config key '" + key + "': empty list");
  return out;
}

std::uint64_t Config::hash() const {
  std::uint64_t h = 14695981039346656037ull;
  const auto feed = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  for (const auto& [k, v] : kv_) {
    feed(k);
    feed("=");
    feed(v);
    feed("\n");
  }
  return h;
}

struct CsvWriter::Impl {
  std::ofstream out;
  bool header_done = false;
};

CsvWriter::CsvWriter(const std::string& path) : impl_(new Impl) {
  impl_->out.open(path, std::ios::binary);  // \n only, on every platform
  if (!impl_->out) {
    delete impl_;
    throw ParamError("cannot open output file: " + path);
  }
}

CsvWriter::~CsvWriter() { delete impl_; }

void CsvWriter::meta(const std::string& key, const std::string& value) {
  if (impl_->header_done)
    throw StateError("csv: metadata must precede the header");
  impl_->out << "# " << key << " = " << value << "\n";
}

void CsvWriter::header(const std::vector<std::string>& cols) {
  if (impl_->header_done) throw StateError("csv: duplicate header");
  impl_->header_done = true;
  for (std::size_t i = 0; i < cols.size(); ++i)
    impl_->out << (i ? "," : "") << cols[i];
  impl_->out << "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (!impl_->header_done) throw StateError("csv: row before header");
  for (std::size_t i = 0; i < cells.size(); ++i)
    impl_->out << (i ? "," : "") << cells[i];
  impl_->out << "\n";
}

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt_u(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(v));
  return buf;
}

std::string fmt_i(std::int64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(v));
  return buf;
}

namespace {

// Per-command master-stream identifiers: results must not depend on the
// thread count, only on (seed, command).
constexpr std::uint64_t kStreamGainSweep = 0x6761696e73777030ull;
constexpr std::uint64_t kStreamBer = 0x6265722d73696d30ull;
constexpr std::uint64_t kStreamLeakage = 0x6c65616b2d657630ull;
constexpr std::uint64_t kStreamSecrecy = 0x736563726563792dull;
constexpr std::uint64_t kStreamLandscape = 0x6c616e6473636170ull;

std::string out_path(const RunContext& ctx, const std::string& name) {
  std::filesystem::create_directories(ctx.out_dir);
  return (std::filesystem::path(ctx.out_dir) / name).string();
}

void common_meta(CsvWriter& csv, const RunContext& ctx,
                 const std::string& command) {
  csv.meta("tool", "ndstc");
  csv.meta("version", kVersion);
  csv.meta("command", command);
  csv.meta("rng", RngStream::algorithm_id());
  csv.meta("seed", fmt_u(ctx.seed));
  csv.meta("config_hash", fmt_u(ctx.cfg.hash()));
  for (const auto& [k, v] : ctx.cfg.entries()) csv.meta("cfg." + k, v);
}

DescentOptions descent_from_cfg(const Config& cfg, const std::string& prefix,
                                std::size_t default_restarts) {
  DescentOptions opts;
  opts.restarts = static_cast<std::size_t>(cfg.get_int(
      prefix + "restarts", static_cast<std::int64_t>(default_restarts)));
  opts.max_iters = static_cast<std::size_t>(
      cfg.get_int(prefix + "max_iters",
                  static_cast<std::int64_t>(opts.max_iters)));
  opts.tol = cfg.get_double(prefix + "tol", opts.tol);
  opts.init_step = cfg.get_double(prefix + "init_step", opts.init_step);
  return opts;
}

EveAttackOptions attack_from_cfg(const Config& cfg) {
  EveAttackOptions a;
  a.restarts = static_cast<std::size_t>(
      cfg.get_int("attack_restarts", static_cast<std::int64_t>(a.restarts)));
  a.max_iters = static_cast<std::size_t>(
      cfg.get_int("attack_max_iters", static_cast<std::int64_t>(a.max_iters)));
  a.tol = cfg.get_double("attack_tol", a.tol);
  a.init_step = cfg.get_double("attack_init_step", a.init_step);
  a.reg_weight = cfg.get_double("attack_reg_weight", a.reg_weight);
  return a;
}

KeySchedule schedule_from_cfg(const Config& cfg) {
  KeySchedule ks;
  ks.dim = static_cast<std::size_t>(cfg.get_int("m", 16));
  ks.nb = static_cast<std::size_t>(
      cfg.get_int("nb", static_cast<std::int64_t>(ks.dim)));
  ks.t_cols = static_cast<std::size_t>(cfg.get_int("t", 1));
  ks.psk_order = static_cast<std::size_t>(cfg.get_int("psk_order", 4));
  ks.opts = descent_from_cfg(cfg, "design_", 16);
  return ks;
}

Codebook codebook_from_cfg(const Config& cfg, std::size_t dim) {
  const std::string scheme = cfg.get_str("scheme", "adsm");
  if (scheme == "adsm")
    return Codebook::adsm(
        dim, static_cast<std::size_t>(cfg.get_int("psk_order", 4)));
  if (scheme == "duc")
    return Codebook::duc(
        dim, static_cast<std::size_t>(cfg.get_int("duc_bits", 4)));
  throw ParamError("unknown scheme: " + scheme);
}

std::vector<double> snr_grid(const Config& cfg) {
  if (cfg.has("snr_db_list")) return cfg.get_double_list("snr_db_list", {});
  const double lo = cfg.get_double("snr_db_min", 0.0);
  const double hi = cfg.get_double("snr_db_max", 24.0);
  const double step = cfg.get_double("snr_db_step", 2.0);
  if (step <= 0.0 || hi < lo) throw ParamError("bad snr grid");
  std::vector<double> out;
  for (double s = lo; s <= hi + 1e-9; s += step) out.push_back(s);
  return out;
}

}  // namespace

int cmd_basis(const RunContext& ctx) {
  const KeySchedule ks = schedule_from_cfg(ctx.cfg);
  const std::uint64_t key = ctx.cfg.get_u64("key", 0xa11ce);
  const ProjectionSecret secret = derive_projection(key, ks, ctx.threads);
  const double gain = coding_gain(secret.basis, ks.psk_order);

  CsvWriter csv(out_path(ctx, "basis.csv"));
  common_meta(csv, ctx, "basis");
  csv.meta("f_nb", fmt_g(secret.f_nb));
  csv.meta("gain", fmt_g(gain));
  csv.header({"row", "col", "re", "im"});
  for (std::size_t r = 0; r < secret.basis.rows(); ++r)
    for (std::size_t c = 0; c < secret.basis.cols(); ++c)
      csv.row({fmt_u(r), fmt_u(c), fmt_g(secret.basis(r, c).real()),
               fmt_g(secret.basis(r, c).imag())});

  std::cout << "basis: m=" << ks.dim << " nb=" << ks.nb << " t=" << ks.t_cols
            << " f=" << fmt_g(secret.f_nb) << " gain=" << fmt_g(gain) << "\n";
  return 0;
}

int cmd_gain_sweep(const RunContext& ctx) {
  const std::vector<std::int64_t> ms =
      ctx.cfg.get_int_list("m_list", {2, 4, 8, 16, 32, 64});
  const std::size_t psk =
      static_cast<std::size_t>(ctx.cfg.get_int("psk_order", 4));
  const DescentOptions opts = descent_from_cfg(ctx.cfg, "design_", 16);

  CsvWriter csv(out_path(ctx, "gain_sweep.csv"));
  common_meta(csv, ctx, "gain-sweep");
  csv.header({"m", "f", "gain", "best_restart", "iterations"});
  RngStream rng(ctx.seed, kStreamGainSweep);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const std::size_t m = static_cast<std::size_t>(ms[i]);
    RngStream sub = rng.derive(i);
    const DesignResult res = optimize_projection(m, psk, opts, sub, ctx.threads);
    const CMatrix basis = expand_time(e1_from_theta(res.theta), 1, m);
    const double gain = coding_gain(basis, psk);
    csv.row({fmt_u(m), fmt_g(res.f), fmt_g(gain), fmt_u(res.restart),
             fmt_u(res.iterations)});
    std::cout << "m=" << m << " f=" << fmt_g(res.f) << " gain=" << fmt_g(gain)
              << "\n";
  }
  return 0;
}

int cmd_ber(const RunContext& ctx) {
  const Config& cfg = ctx.cfg;
  const KeySchedule ks = schedule_from_cfg(cfg);
  const Codebook cb = codebook_from_cfg(cfg, ks.dim);

  FrameConfig fc;
  fc.n_rx = static_cast<std::size_t>(cfg.get_int("n_rx", 2));
  fc.pilot_overhead = cfg.get_double("pilot_overhead", 0.05);
  fc.channel.mode =
      channel_mode_from_string(cfg.get_str("channel_mode", "static_per_frame"));
  fc.channel.ar1_rho = cfg.get_double("ar1_rho", 0.99);
  const std::string style = cfg.get_str("basis_style", "proposed");
  if (style == "proposed")
    fc.style = BasisStyle::kProposed;
  else if (style == "conventional")
    fc.style = BasisStyle::kConventional;
  else
    throw ParamError("unknown basis_style: " + style);

  CMatrix basis;
  std::vector<CMatrix> conv;
  if (fc.style == BasisStyle::kProposed) {
    const std::uint64_t key = cfg.get_u64("key", 0xa11ce);
    basis = derive_projection(key, ks, ctx.threads).basis;
  } else {
    conv = conventional_bases(ks.dim, ks.nb, ks.t_cols);
    basis = conv[0];
  }

  const std::size_t frames =
      ctx.trials_override
          ? static_cast<std::size_t>(ctx.trials_override)
          : static_cast<std::size_t>(cfg.get_int("frames", 200));
  const std::vector<double> snrs = snr_grid(cfg);

  CsvWriter csv(out_path(ctx, "ber.csv"));
  common_meta(csv, ctx, "ber");
  csv.header({"snr_db", "frames", "blocks", "bits", "bit_errors", "ber"});
  RngStream rng(ctx.seed, kStreamBer);
  for (std::size_t i = 0; i < snrs.size(); ++i) {
    fc.snr_db = snrs[i];
    const LinkStats st =
        run_link(cb, basis, fc.style == BasisStyle::kConventional ? &conv
                                                                  : nullptr,
                 fc, frames, rng.derive(i), ctx.threads);
    csv.row({fmt_g(fc.snr_db), fmt_u(frames), fmt_u(st.blocks),
             fmt_u(st.bits), fmt_u(st.bit_errors), fmt_g(st.ber())});
    std::cout << "snr=" << fmt_g(fc.snr_db) << " dB  ber=" << fmt_g(st.ber())
              << " (" << st.bit_errors << "/" << st.bits << ")\n";
  }
  return 0;
}

int cmd_leakage(const RunContext& ctx) {
  const Config& cfg = ctx.cfg;
  const std::vector<std::int64_t> ms =
      cfg.get_int_list("m_list", {2, 4, 8, 16, 32});
  LeakageParams params;
  params.t_cols = static_cast<std::size_t>(cfg.get_int("t", 1));
  params.psk_order = static_cast<std::size_t>(cfg.get_int("psk_order", 4));
  params.n_eve = static_cast<std::size_t>(cfg.get_int("n_eve", 2));
  params.eve_snr_db = cfg.get_double("eve_snr_db", 30.0);
  params.pilot_blocks =
      static_cast<std::size_t>(cfg.get_int("pilot_blocks", 1));
  params.data_blocks =
      static_cast<std::size_t>(cfg.get_int("data_blocks", 200));
  params.alice.opts = descent_from_cfg(cfg, "design_", 8);
  params.attack = attack_from_cfg(cfg);
  const std::size_t trials =
      ctx.trials_override ? static_cast<std::size_t>(ctx.trials_override)
                          : static_cast<std::size_t>(cfg.get_int("trials", 200));

  CsvWriter csv(out_path(ctx, "leakage.csv"));
  common_meta(csv, ctx, "leakage");
  csv.header(
      {"m", "trials", "mean_leakage", "stderr_leakage", "mean_ber_eve"});
  RngStream rng(ctx.seed, kStreamLeakage);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    params.dim = static_cast<std::size_t>(ms[i]);
    params.nb = params.dim;  // dense designs: the hardest case for Eve's
                             // parameterization to get right by chance
    const LeakageSummary s =
        run_leakage(params, trials, rng.derive(i), ctx.threads);
    csv.row({fmt_u(params.dim), fmt_u(s.trials), fmt_g(s.mean_leakage),
             fmt_g(s.stderr_leakage), fmt_g(s.mean_ber_eve)});
    std::cout << "m=" << params.dim << " leakage=" << fmt_g(s.mean_leakage)
              << " +/- " << fmt_g(s.stderr_leakage) << "\n";
  }
  return 0;
}

int cmd_secrecy(const RunContext& ctx) {
  const Config& cfg = ctx.cfg;
  SecrecyParams params;
  params.dim = static_cast<std::size_t>(cfg.get_int("m", 16));
  params.nb = static_cast<std::size_t>(
      cfg.get_int("nb", static_cast<std::int64_t>(params.dim)));
  params.t_cols = static_cast<std::size_t>(cfg.get_int("t", 1));
  params.psk_order = static_cast<std::size_t>(cfg.get_int("psk_order", 4));
  params.n_bob = static_cast<std::size_t>(cfg.get_int("n_bob", 2));
  params.snr_db = cfg.get_double("snr_db", 20.0);
  params.eve_snr_db = cfg.get_double("eve_snr_db", 30.0);
  params.pilot_blocks =
      static_cast<std::size_t>(cfg.get_int("pilot_blocks", 1));
  params.bob_samples =
      static_cast<std::size_t>(cfg.get_int("bob_samples", 400));
  params.inner_samples =
      static_cast<std::size_t>(cfg.get_int("inner_samples", 32));
  params.outer_trials =
      ctx.trials_override
          ? static_cast<std::size_t>(ctx.trials_override)
          : static_cast<std::size_t>(cfg.get_int("outer_trials", 16));
  params.independent_noise_terms =
      cfg.get_bool("independent_noise_terms", false);
  params.alice.opts = descent_from_cfg(cfg, "design_", 8);
  params.attack = attack_from_cfg(cfg);
  const std::vector<std::int64_t> n_eves =
      cfg.get_int_list("n_eve_list", {2, 4, 8, 16});

  CsvWriter csv(out_path(ctx, "secrecy.csv"));
  common_meta(csv, ctx, "secrecy");
  csv.header({"n_eve", "snr_db", "i_bob", "i_bob_stderr", "i_eve",
              "i_eve_stderr", "c_secrecy"});
  RngStream rng(ctx.seed, kStreamSecrecy);
  for (std::size_t i = 0; i < n_eves.size(); ++i) {
    params.n_eve = static_cast<std::size_t>(n_eves[i]);
    const SecrecyPoint p = run_secrecy_point(params, rng.derive(i), ctx.threads);
    csv.row({fmt_u(params.n_eve), fmt_g(params.snr_db), fmt_g(p.i_bob.mean),
             fmt_g(p.i_bob.stderr_), fmt_g(p.i_eve.mean),
             fmt_g(p.i_eve.stderr_), fmt_g(p.c_secrecy)});
    std::cout << "n_eve=" << params.n_eve << " I_bob=" << fmt_g(p.i_bob.mean)
              << " I_eve=" << fmt_g(p.i_eve.mean)
              << " C=" << fmt_g(p.c_secrecy) << "\n";
  }
  return 0;
}

int cmd_landscape(const RunContext& ctx) {
  const Config& cfg = ctx.cfg;
  const std::size_t m = static_cast<std::size_t>(cfg.get_int("m", 16));
  const std::size_t psk =
      static_cast<std::size_t>(cfg.get_int("psk_order", 4));
  DescentOptions opts = descent_from_cfg(cfg, "design_", 16);
  const std::size_t starts =
      ctx.trials_override ? static_cast<std::size_t>(ctx.trials_override)
                          : static_cast<std::size_t>(cfg.get_int("starts", 256));

  CsvWriter csv(out_path(ctx, "landscape.csv"));
  common_meta(csv, ctx, "landscape");
  csv.header({"start", "f", "gain", "iterations"});
  RngStream rng(ctx.seed, kStreamLandscape);

  // One descent per start, reported individually: the spread of converged
  // values is the point of this command.
  opts.restarts = 1;
  struct Entry {
    double f = 0.0, gain = 0.0;
    std::uint64_t iters = 0;
  };
  std::vector<Entry> entries(starts);
  parallel_for(starts, ctx.threads, [&](std::size_t s) {
    RngStream sub = rng.derive(s);
    const DesignResult res = optimize_projection(m, psk, opts, sub, 1);
    const CMatrix basis = expand_time(e1_from_theta(res.theta), 1, m);
    entries[s] = {res.f, coding_gain(basis, psk), res.iterations};
  });
  double best = -1.0;
  for (std::size_t s = 0; s < starts; ++s) {
    csv.row({fmt_u(s), fmt_g(entries[s].f), fmt_g(entries[s].gain),
             fmt_u(entries[s].iters)});
    if (best < 0.0 || entries[s].f < best) best = entries[s].f;
  }
  std::cout << "landscape: m=" << m << " starts=" << starts
            << " best_f=" << fmt_g(best) << "\n";
  return 0;
}

}  // namespace ndstc
