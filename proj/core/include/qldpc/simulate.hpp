#pragma once

// Monte Carlo word-error-rate estimation under the depolarizing channel.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "qldpc/construction.hpp"
#include "qldpc/osd.hpp"
#include "qldpc/pauli.hpp"

namespace qldpc {

/// Residual tests against the stabilizer row spaces of a CSS code.
class Adjudicator {
 public:
  explicit Adjudicator(const CssCode& code);
  /// True iff e * c is a stabilizer. Throws SyndromeMismatch when c and e
  /// have different syndromes.
  bool success(const PauliVector& e, const PauliVector& c) const;
  /// True iff the residual is a stabilizer; no syndrome check.
  bool is_stabilizer(const PauliVector& r) const;

 private:
  const CssCode* code_;
  RowSpaceBasis x_rows_;
  RowSpaceBasis z_rows_;
};

bool adjudicate(const CssCode& code, const PauliVector& e, const PauliVector& c);

struct SimConfig {
  std::vector<double> p_values;
  DecoderConfig decoder;
  std::size_t max_trials = 10000;
  std::size_t target_failures = 100;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  /// Trials are handed out in batches of this size; batch boundaries are
  /// where stopping is decided, so the result does not depend on `workers`.
  std::size_t batch_size = 200;

  void validate() const;
  /// Canonical one-line description used for the digest.
  std::string describe() const;
};

struct WerRecord {
  double p = 0;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double wer = 0;
  double stderr_wer = 0;
  std::size_t converged_bp = 0;
  std::size_t osd_calls = 0;
  double seconds = 0;
};

struct TrialOutcome {
  bool converged = false;
  bool logical_error = false;
  bool osd_invoked = false;
  std::size_t iterations = 0;
};

/// Runs trial `index` at error rate p: sample, decode, adjudicate. The error
/// stream depends only on (seed, p, index), so decoder variants see the same
/// errors.
TrialOutcome run_trial(const CssCode& code, const Adjudicator& judge, Decoder& decoder,
                       double p, std::uint64_t seed, std::uint64_t index);

PauliVector trial_error(std::size_t n, double p, std::uint64_t seed, std::uint64_t index);

using ProgressFn = std::function<void(const WerRecord&)>;

std::vector<WerRecord> run_wer(const CssCode& code, const SimConfig& cfg, const ProgressFn& progress = {});

/// FNV-1a 64-bit.
std::uint64_t fnv1a64(std::string_view text) noexcept;
std::string digest_hex(std::string_view text);

void write_wer_csv(std::ostream& out, const std::vector<WerRecord>& records, const std::string& config_line);
/// Reads rows written by write_wer_csv; comment lines are skipped.
std::vector<WerRecord> read_wer_csv(std::istream& in);

/// "a:b:log" / "a:b:lin" with optional ":count" (default 7), or a comma list.
std::vector<double> parse_p_list(const std::string& text);

}  // namespace qldpc
