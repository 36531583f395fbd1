#pragma once

#include <cstdint>
#include <vector>

#include "ndstc/cmatrix.hpp"

namespace ndstc {

enum class CodebookScheme { kAdsm, kDuc };

/// Exact integer handle for a unitary codeword; the group operation never
/// touches floating point, so long differential products stay exact.
///
/// ADSM: X = exp(j*2*pi*phase/L) * M^shift, where M is the cyclic-shift
/// matrix whose wrapped entries carry the phase exp(j*2*pi/L). DUC:
/// X = diag(exp(j*2*pi*phase*u_m/2^B)), shift unused.
struct CodewordToken {
  std::uint32_t phase = 0;
  std::uint32_t shift = 0;

  friend bool operator==(const CodewordToken&, const CodewordToken&) = default;
};

class Codebook {
 public:
  /// Amplitude-phase-shift ADSM codebook: A = {I, M, ..., M^(dim-1)} times an
  /// L-PSK symbol; dim and L must be powers of two, B = log2(dim) + log2(L).
  static Codebook adsm(std::size_t dim, std::size_t psk_order);

  /// Diagonal unitary cyclic codebook with 2^bits codewords; exhaustively
  /// searches the exponent vector u maximizing the diversity product.
  /// Throws BudgetError if the candidate count exceeds 1e7.
  static Codebook duc(std::size_t dim, std::size_t bits);

  /// DUC with a caller-supplied exponent vector (validated, not searched).
  static Codebook duc_from_u(std::size_t dim, std::size_t bits,
                             std::vector<std::uint32_t> u);

  CodebookScheme scheme() const { return scheme_; }
  std::size_t dim() const { return dim_; }
  std::size_t bits_per_block() const { return bits_; }
  std::size_t size() const { return std::size_t{1} << bits_; }
  std::size_t psk_order() const { return psk_order_; }

  /// DUC exponents u_1..u_M; empty for ADSM.
  const std::vector<std::uint32_t>& duc_u() const { return duc_u_; }

  CodewordToken identity_token() const { return {}; }
  CodewordToken mul(CodewordToken a, CodewordToken b) const;

  /// Big-endian split of a B-bit word: for ADSM the high log2(dim) bits pick
  /// the shift, the low log2(L) bits the PSK symbol; for DUC the word is the
  /// diagonal exponent.
  CodewordToken token_from_bits(std::uint64_t bits) const;
  std::uint64_t bits_from_token(CodewordToken t) const;

  CMatrix matrix(CodewordToken t) const;

  /// y <- y * X(t), in place; O(rows(y) * dim) for either scheme.
  void apply_right(CMatrix& y, CodewordToken t) const;

  /// a <- X(t) * a, in place; O(dim * cols(a)).
  void apply_left(CMatrix& a, CodewordToken t) const;

  CodewordToken inverse(CodewordToken t) const;

 private:
  Codebook() = default;

  CodebookScheme scheme_ = CodebookScheme::kAdsm;
  std::size_t dim_ = 0;
  std::size_t bits_ = 0;
  std::size_t psk_order_ = 0;            // ADSM only
  std::vector<std::uint32_t> duc_u_;     // DUC only
};

/// min over b != 0 of |prod_m sin(pi*b*u_m/2^B)|^(1/M).
double duc_diversity_product(std::size_t dim, std::size_t bits,
                             const std::vector<std::uint32_t>& u);

/// Number of nondecreasing exponent vectors the exhaustive search visits:
/// C(2^(bits-1) + dim - 1, dim).
double duc_search_budget(std::size_t dim, std::size_t bits);

}  // namespace ndstc
