#include "qldpc/simulate.hpp"

#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "qldpc/error.hpp"

namespace qldpc {

Adjudicator::Adjudicator(const CssCode& code) : code_(&code), x_rows_(code.hx), z_rows_(code.hz) {}

bool Adjudicator::is_stabilizer(const PauliVector& r) const {
  return x_rows_.contains(r.x_bits()) && z_rows_.contains(r.z_bits());
}

bool Adjudicator::success(const PauliVector& e, const PauliVector& c) const {
  if (e.size() != code_->n() || c.size() != code_->n()) {
    throw Error(ErrorKind::SizeMismatch, "Pauli vector length differs from code length");
  }
  const PauliVector r = e * c;
  if (css_syndrome(*code_, r).any()) throw Error(ErrorKind::SyndromeMismatch, "correction and error have different syndromes");
  return is_stabilizer(r);
}

bool adjudicate(const CssCode& code, const PauliVector& e, const PauliVector& c) {
  return Adjudicator(code).success(e, c);
}

void SimConfig::validate() const {
  if (p_values.empty()) throw Error(ErrorKind::InvalidArgument, "no error rates given");
  for (double p : p_values) {
    if (!(p > 0.0 && p < 1.0)) throw Error(ErrorKind::InvalidArgument, "error rates must lie in (0, 1)");
  }
  if (max_trials == 0 || target_failures == 0) throw Error(ErrorKind::InvalidArgument, "trial and failure targets must be positive");
  if (workers == 0 || batch_size == 0) throw Error(ErrorKind::InvalidArgument, "workers and batch size must be positive");
  decoder.validate();
}

std::string SimConfig::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "p=";
  for (std::size_t i = 0; i < p_values.size(); ++i) os << (i ? "," : "") << p_values[i];
  const auto& d = decoder;
  os << " iters=" << d.bp.max_iterations << " nms=" << d.bp.nms_factor
     << " schedule=" << (d.bp.schedule == Schedule::Layered ? "layered" : "flooding")
     << " variant=" << (d.bp.variant == BpVariant::Quaternary ? "quaternary" : "binary-css")
     << " postproc=" << (d.post == PostProcessor::None ? "none" : "osd") << " osd-order=" << d.osd_order
     << " osd-kind=" << (d.osd_kind == OsdKind::Quaternary ? "q" : "css");
  if (d.retry) {
    const char* m = d.retry->method == RetryMethod::Perturbation ? "pert"
                    : d.retry->method == RetryMethod::EnhancedFeedback ? "efb" : "aug";
    os << " retry=" << m << " attempts=" << d.retry->attempts << " pert-var=" << d.retry->perturbation_variance
       << " aug-density=" << d.retry->augmentation_density;
  }
  os << " max-trials=" << max_trials << " target-failures=" << target_failures << " seed=" << seed
     << " workers=" << workers << " batch=" << batch_size;
  return os.str();
}

PauliVector trial_error(std::size_t n, double p, std::uint64_t seed, std::uint64_t index) {
  Rng rng(derive_seed(seed, std::bit_cast<std::uint64_t>(p), index));
  return sample_depolarizing(n, ChannelModel{p}, rng);
}

TrialOutcome run_trial(const CssCode& code, const Adjudicator& judge, Decoder& decoder,
                       double p, std::uint64_t seed, std::uint64_t index) {
  // The same engine keeps running into the decoder, after the error draws.
  Rng rng(derive_seed(seed, std::bit_cast<std::uint64_t>(p), index));
  const PauliVector e = sample_depolarizing(code.n(), ChannelModel{p}, rng);
  const BitVector s = css_syndrome(code, e);
  thread_local std::vector<Llr3> prior;
  thread_local double prior_p = -1;
  thread_local std::size_t prior_n = 0;
  if (prior_p != p || prior_n != code.n()) {
    prior = depolarizing_prior(code.n(), p);
    prior_p = p;
    prior_n = code.n();
  }
  const DecodeOutcome d = decoder.decode(s, prior, rng);
  TrialOutcome t;
  t.converged = d.converged_bp;
  t.osd_invoked = d.osd_invoked;
  t.iterations = d.iterations;
  if (css_syndrome(code, d.correction) != s) {
    t.logical_error = true;
  } else {
    t.logical_error = !judge.success(e, d.correction);
  }
  return t;
}

namespace {

struct BatchResult {
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::size_t converged = 0;
  std::size_t osd_calls = 0;
};

WerRecord run_point(const CssCode& code, const Adjudicator& judge, const SimConfig& cfg, double p) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n_batches = (cfg.max_trials + cfg.batch_size - 1) / cfg.batch_size;

  std::mutex mu;
  std::map<std::size_t, BatchResult> done;
  std::size_t next_consume = 0;
  WerRecord rec;
  rec.p = p;
  std::atomic<bool> stop{false};
  std::atomic<std::size_t> next_batch{0};

  // Consumes finished batches in index order; stopping is decided only here.
  auto absorb = [&] {
    while (!stop.load()) {
      auto it = done.find(next_consume);
      if (it == done.end()) break;
      rec.trials += it->second.trials;
      rec.failures += it->second.failures;
      rec.converged_bp += it->second.converged;
      rec.osd_calls += it->second.osd_calls;
      done.erase(it);
      ++next_consume;
      if (rec.failures >= cfg.target_failures || next_consume == n_batches) stop.store(true);
    }
  };

  auto worker = [&] {
    Decoder decoder(code, cfg.decoder);
    while (!stop.load()) {
      const std::size_t b = next_batch.fetch_add(1);
      if (b >= n_batches) break;
      BatchResult br;
      const std::size_t lo = b * cfg.batch_size;
      const std::size_t hi = std::min(cfg.max_trials, lo + cfg.batch_size);
      for (std::size_t i = lo; i < hi; ++i) {
        const TrialOutcome t = run_trial(code, judge, decoder, p, cfg.seed, i);
        ++br.trials;
        br.failures += t.logical_error;
        br.converged += t.converged;
        br.osd_calls += t.osd_invoked;
      }
      std::lock_guard lock(mu);
      done.emplace(b, br);
      absorb();
    }
  };

  if (cfg.workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < cfg.workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  rec.wer = rec.trials ? static_cast<double>(rec.failures) / static_cast<double>(rec.trials) : 0.0;
  rec.stderr_wer = rec.trials ? std::sqrt(rec.wer * (1 - rec.wer) / static_cast<double>(rec.trials)) : 0.0;
  rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

}  // namespace

std::vector<WerRecord> run_wer(const CssCode& code, const SimConfig& cfg, const ProgressFn& progress) {
  cfg.validate();
  const Adjudicator judge(code);
  std::vector<WerRecord> out;
  for (double p : cfg.p_values) {
    out.push_back(run_point(code, judge, cfg, p));
    if (progress) progress(out.back());
  }
  return out;
}

std::uint64_t fnv1a64(std::string_view text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string digest_hex(std::string_view text) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(text)));
  return buf;
}

void write_wer_csv(std::ostream& out, const std::vector<WerRecord>& records, const std::string& config_line) {
  out << "# config=" << config_line << "\n";
  out << "# digest=" << digest_hex(config_line) << "\n";
  out << "p,trials,failures,wer,stderr,converged_bp,osd_calls,seconds\n";
  char buf[256];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, "%.6g,%zu,%zu,%.6e,%.6e,%zu,%zu,%.3f\n", r.p, r.trials, r.failures, r.wer,
                  r.stderr_wer, r.converged_bp, r.osd_calls, r.seconds);
    out << buf;
  }
}

std::vector<WerRecord> read_wer_csv(std::istream& in) {
  std::vector<WerRecord> out;
  std::string line;
  std::size_t ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    if (line.empty() || line[0] == '#' || line.rfind("p,", 0) == 0) continue;
    WerRecord r;
    std::istringstream is(line);
    char c1, c2, c3, c4, c5, c6, c7;
    if (!(is >> r.p >> c1 >> r.trials >> c2 >> r.failures >> c3 >> r.wer >> c4 >> r.stderr_wer >> c5 >>
          r.converged_bp >> c6 >> r.osd_calls >> c7 >> r.seconds)) {
      throw Error(ErrorKind::Parse, "bad CSV row at line " + std::to_string(ln));
    }
    out.push_back(r);
  }
  return out;
}

std::vector<double> parse_p_list(const std::string& text) {
  std::vector<double> out;
  auto number = [&](const std::string& s) {
    std::size_t pos = 0;
    double v = 0;
    try {
      v = std::stod(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != s.size() || s.empty()) throw Error(ErrorKind::Parse, "bad number '" + s + "'");
    return v;
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.size() < 3 || parts.size() > 4) throw Error(ErrorKind::Parse, "range must be a:b:log|lin[:count]");
    const double a = number(parts[0]);
    const double b = number(parts[1]);
    const std::size_t count = parts.size() == 4 ? static_cast<std::size_t>(number(parts[3])) : 7;
    if (count == 0) throw Error(ErrorKind::Parse, "range needs at least one point");
    const bool log_scale = parts[2] == "log";
    if (!log_scale && parts[2] != "lin") throw Error(ErrorKind::Parse, "range scale must be log or lin");
    if (log_scale && (a <= 0 || b <= 0)) throw Error(ErrorKind::Parse, "log range needs positive bounds");
    for (std::size_t i = 0; i < count; ++i) {
      const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
      out.push_back(log_scale ? std::exp(std::log(a) + t * (std::log(b) - std::log(a))) : a + t * (b - a));
    }
    return out;
  }
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(number(part));
  if (out.empty()) throw Error(ErrorKind::Parse, "empty error-rate list");
  return out;
}

}  // namespace qldpc
